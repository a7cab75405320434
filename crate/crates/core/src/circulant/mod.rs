//! Circulant determinants, circulant point singularities and the catalog of
//! minimal singularities.

mod catalog;
mod classify;
mod form;
mod zk;

use std::sync::Arc;

pub use catalog::{catalog, Catalog, CatalogEntry};
pub use classify::{absorb_units, classify_form, classify_named, signature, BlockSig, Signature};
pub use form::{circulant_det_oracle, eigen_transform, Direction, FactoredCirculant, ProductForm};
pub use zk::{rotate, zk_extract, ZkComponent};

use crate::error::{Error, Result};
use crate::poly::{Exp, PuiseuxPoly, VarTable};

/// The normal form `Δ_k(x_0, w^{1/k} x_1, …, w^{(k−1)/k} x_{k−1})` of `cp(k)`
/// over the variables `vars`; `names` lists `w, x_0, …, x_{k−1}`.
pub fn make_cp_in(k: usize, vars: &Arc<VarTable>, names: &[&str]) -> Result<ProductForm> {
    if k == 0 || names.len() != k + 1 {
        return Err(Error::invalid(format!(
            "cp({k}) needs {} variable names, got {}",
            k + 1,
            names.len()
        )));
    }
    let w = vars.idx(names[0])?;
    let mut args = Vec::with_capacity(k);
    for (i, name) in names[1..].iter().enumerate() {
        let x = PuiseuxPoly::var(vars, name)?;
        let wp = PuiseuxPoly::var_idx(vars, w, Exp::new(i as i64, k as i64));
        args.push(&wp * &x);
    }
    ProductForm::from_blocks(vars, vec![FactoredCirculant::new(args)?])
}

/// `cp(k)` over a fresh table with the given names (`w, x_0, …, x_{k−1}`).
pub fn make_cp(k: usize, names: &[&str]) -> Result<ProductForm> {
    let vars = VarTable::new(names)?;
    make_cp_in(k, &vars, names)
}
