//! Extraction of the circulant coordinates `X_ℓ` from a `Z_k` root system.

use std::sync::Arc;

use super::form::{eigen_transform, Direction};
use crate::arith::CycNum;
use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, PuiseuxPoly, VarTable};

/// One circulant coordinate written as `w^{m + ℓ/k} · ζ` with `ζ` not
/// divisible by `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkComponent {
    pub l: usize,
    /// `None` when `X_ℓ` vanishes to the working order.
    pub m: Option<i64>,
    pub zeta: PuiseuxPoly,
    /// `X_ℓ` itself, over the `w` table.
    pub x: PuiseuxPoly,
}

/// Image of `r(v)` under `v ↦ ζ_k^j v`.
pub fn rotate(r: &PuiseuxPoly, v: usize, k: usize, j: usize) -> Result<PuiseuxPoly> {
    let mut terms = Vec::with_capacity(r.num_terms());
    for (m, c) in r.terms() {
        let e = m.get(v);
        if !e.is_integer() {
            return Err(Error::FractionalExponent(r.vars().name(v).to_string()));
        }
        let z = CycNum::zeta(k as u32, *e.numer() * j as i64);
        terms.push((m.clone(), c * &z));
    }
    Ok(PuiseuxPoly::from_terms(r.vars(), terms))
}

/// Given the `k` series `b(ε^j v, x)`, computes `X_ℓ` by the inverse eigen
/// transform, checks that `v^{k−ℓ} X_ℓ` is invariant under `v ↦ εv`,
/// rewrites in `w = v^k` (the variable `v` is renamed `w_name`) and extracts
/// the maximal power of `w`. Entry 0 of the result is `X_0`.
pub fn zk_extract(
    roots: &[PuiseuxPoly],
    v: usize,
    w_name: &str,
    trunc: Exp,
) -> Result<Vec<ZkComponent>> {
    let k = roots.len();
    if k == 0 {
        return Err(Error::invalid("empty root list"));
    }
    let vars = roots[0].vars().clone();
    let all = vars.all();
    for (j, r) in roots.iter().enumerate().skip(1) {
        let expect = rotate(&roots[0], v, k, j)?.truncate(trunc, &all);
        if expect != r.truncate(trunc, &all) {
            return Err(Error::NotRootSystem(format!(
                "root {j} is not the image of root 0 under v -> e^{j} v"
            )));
        }
    }
    let xs = eigen_transform(roots, Direction::Inverse);
    let wvars: Arc<VarTable> = if vars.name(v) == w_name {
        vars.clone()
    } else {
        vars.renamed(v, w_name)?
    };
    let kk = Exp::from_integer(k as i64);
    let mut out = Vec::with_capacity(k);
    for (l, x) in xs.into_iter().enumerate() {
        let x = x.truncate(trunc, &all);
        for (m, _) in x.terms() {
            let e = m.get(v);
            if !e.is_integer() || (*e.numer() - l as i64).rem_euclid(k as i64) != 0 {
                return Err(Error::NotRootSystem(format!(
                    "X_{l} has a term in v^{e}, not of the form v^(k*m + {l})"
                )));
            }
        }
        let xw = x
            .map_monomials(|m| {
                let mut m = m.clone();
                m.set(v, m.get(v) / kk);
                m
            })
            .with_table(&wvars)?;
        if xw.is_zero() {
            out.push(ZkComponent {
                l,
                m: None,
                zeta: xw.clone(),
                x: xw,
            });
            continue;
        }
        let (mono, zeta) = xw.monomial_part(&[v])?;
        let mu = mono.get(v);
        let m = (mu - Exp::new(l as i64, k as i64)).to_integer();
        debug_assert_eq!(
            Monomial::var(wvars.len(), v, mu),
            mono,
            "monomial part is a pure w power"
        );
        out.push(ZkComponent {
            l,
            m: Some(m),
            zeta,
            x: xw,
        });
    }
    Ok(out)
}
