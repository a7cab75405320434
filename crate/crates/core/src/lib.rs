//! Exact symbolic toolkit for circulant singularities: cyclotomic arithmetic,
//! Puiseux polynomials, circulant normal forms, blow-up charts, splitting
//! procedures and normal-crossings detection.

pub mod arith;
pub mod blowup;
pub mod circulant;
pub mod error;
pub mod ncdetect;
pub mod par;
pub mod poly;
pub mod scenario;
pub mod split;

pub use error::{Error, Result};
