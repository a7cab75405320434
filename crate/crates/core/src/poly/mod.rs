//! Sparse multivariate polynomials with nonnegative rational exponents.

mod monomial;
pub mod parse;
mod puiseux;
pub mod series;
mod vars;
mod zpoly;

pub use monomial::{exp, exp_int, format_exp, Exp, Monomial};
pub use parse::{infer_vars, parse_poly, parse_poly_infer};
pub use puiseux::{Order, PuiseuxPoly};
pub use vars::{Role, VarTable};
pub use zpoly::ZPoly;
