//! Exact arithmetic: arbitrary-precision rationals and cyclotomic numbers.

mod cyclo;
pub mod linalg;
mod rat;

pub use cyclo::{cyclotomic_poly, euler_phi, CycNum};
pub use linalg::Field;
pub use rat::{format_rat, kth_root_rational, parse_rat, rat, rat_int, Rat};
