//! Cyclic covers `w_i = v_i^{q_i}` of the exceptional variables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Exp, PuiseuxPoly, VarTable, ZPoly};

/// The cover `w_i = v_i^{q_i}`. Variable indices are shared between the base
/// table and the cover table; only the names of the covered variables change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    base: Arc<VarTable>,
    table: Arc<VarTable>,
    vars: Vec<usize>,
    q: Vec<u32>,
}

impl Cover {
    pub fn new(base: &Arc<VarTable>, vars: &[usize], q: &[u32]) -> Result<Self> {
        if vars.len() != q.len() {
            return Err(Error::Dimension(format!(
                "{} covered variables but {} exponents",
                vars.len(),
                q.len()
            )));
        }
        if q.contains(&0) {
            return Err(Error::invalid("cover exponents must be positive"));
        }
        let mut table = base.clone();
        for &v in vars {
            if v >= base.len() {
                return Err(Error::invalid(format!("variable index {v} out of range")));
            }
            let name = base.name(v);
            let mut new = match name.strip_prefix('w') {
                Some(rest) => format!("v{rest}"),
                None => format!("v{name}"),
            };
            while table.index_of(&new).is_some() {
                new.insert(0, 'v');
            }
            table = table.renamed(v, &new)?;
        }
        Ok(Cover {
            base: base.clone(),
            table,
            vars: vars.to_vec(),
            q: q.to_vec(),
        })
    }

    pub fn base(&self) -> &Arc<VarTable> {
        &self.base
    }

    /// Table of the cover, with the covered variables renamed.
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn exponents(&self) -> &[u32] {
        &self.q
    }

    /// Renders as `w=v^2, w1=v1^3`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(&self.q)
            .map(|(&v, q)| format!("{}={}^{q}", self.base.name(v), self.table.name(v)))
            .collect();
        parts.join(", ")
    }
}

/// Pulls `f` back along the cover.
pub fn apply_cover_poly(f: &PuiseuxPoly, cover: &Cover) -> Result<PuiseuxPoly> {
    if f.vars().len() != cover.base.len() {
        return Err(Error::VarTableMismatch);
    }
    let g = f.map_monomials(|m| {
        let mut m = m.clone();
        for (&v, &q) in cover.vars.iter().zip(&cover.q) {
            m.set(v, m.get(v) * Exp::from_integer(q as i64));
        }
        m
    });
    g.with_table(&cover.table)
}

/// Pulls a monic polynomial back along the cover.
pub fn apply_cover_zpoly(f: &ZPoly, cover: &Cover) -> Result<ZPoly> {
    if cover.vars.contains(&f.z()) {
        return Err(Error::invalid(
            "the cover may not involve the main variable",
        ));
    }
    f.map_coeffs(|a| apply_cover_poly(a, cover))
}
