//! Classification of product forms against the catalog.
//!
//! A form is reduced to a signature: the number of smooth normal-crossing
//! factors, and for every ramified variable `t` the list of blocks ramified
//! in `t`. A block `Δ_k` ramified in `t` is normalized so that slot `i`
//! carries `t^{i/k}`, using a cyclic rotation and a Galois reordering
//! `i ↦ j·i mod k`; its signature is the exponent pattern of what remains in
//! each slot.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::catalog::{catalog, CatalogEntry};
use super::form::{FactoredCirculant, ProductForm};
use crate::arith::CycNum;
use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, Order, PuiseuxPoly};

/// Normalized exponent pattern of one ramified block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSig {
    pub k: usize,
    /// Sorted residual exponents per normalized slot.
    pub slots: Vec<Vec<i64>>,
}

/// Invariant used to match a form against catalog entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub smooth: usize,
    /// Blocks grouped by their ramified variable, each group sorted.
    pub groups: Vec<Vec<BlockSig>>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "smooth={}", self.smooth)?;
        for g in &self.groups {
            f.write_str(" [")?;
            for (i, b) in g.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "k{}:{:?}", b.k, b.slots)?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

fn unclassified(p: &ProductForm, why: &str) -> Error {
    Error::Unclassified(format!("{p} ({why})"))
}

/// Signature of a form whose block arguments are single terms.
pub fn signature(p: &ProductForm) -> Result<Signature> {
    let n = p.vars().len();
    let mut uses = vec![0usize; n];
    let mut smooth = 0;
    for (v, e) in p.prefactor().0.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if !e.is_one() {
            return Err(unclassified(p, "prefactor is not reduced"));
        }
        smooth += 1;
        uses[v] += 1;
    }
    let mut groups: BTreeMap<usize, Vec<BlockSig>> = BTreeMap::new();
    for b in p.blocks() {
        let mut monos = Vec::with_capacity(b.k());
        for a in b.args() {
            let (m, _) = a
                .as_term()
                .ok_or_else(|| unclassified(p, "argument is not a monomial times a unit"))?;
            monos.push(m.clone());
        }
        let ramified: Vec<usize> = (0..n)
            .filter(|&v| monos.iter().any(|m| !m.get(v).is_integer()))
            .collect();
        match ramified.as_slice() {
            [] => {
                if monos.iter().any(Monomial::is_one) {
                    continue;
                }
                if b.k() == 1 {
                    for (v, e) in monos[0].0.iter().enumerate() {
                        if e.is_zero() {
                            continue;
                        }
                        if !e.is_one() {
                            return Err(unclassified(p, "non-reduced smooth factor"));
                        }
                        smooth += 1;
                        uses[v] += 1;
                    }
                } else {
                    for m in &monos {
                        let s = m.support();
                        if s.len() != 1 || !m.get(s[0]).is_one() {
                            return Err(unclassified(
                                p,
                                "unramified block with non-linear argument",
                            ));
                        }
                        uses[s[0]] += 1;
                    }
                    smooth += b.k();
                }
            }
            [t] => {
                let Some(sig) = ramified_block(&monos, *t, &mut uses) else {
                    return Err(unclassified(
                        p,
                        "ramified block not in circulant normal form",
                    ));
                };
                if let Some(sig) = sig {
                    groups.entry(*t).or_default().push(sig);
                }
            }
            _ => return Err(unclassified(p, "block ramified in several variables")),
        }
    }
    for t in groups.keys() {
        if uses[*t] > 0 {
            return Err(unclassified(p, "ramified variable also occurs unramified"));
        }
    }
    if uses.iter().any(|&u| u > 1) {
        return Err(unclassified(p, "variables shared between factors"));
    }
    let mut groups: Vec<Vec<BlockSig>> = groups
        .into_values()
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    groups.sort();
    Ok(Signature { smooth, groups })
}

/// Normalizes one block ramified in `t`. Returns `None` when the block does
/// not fit, `Some(None)` for a unit block.
fn ramified_block(monos: &[Monomial], t: usize, uses: &mut [usize]) -> Option<Option<BlockSig>> {
    let k = monos.len();
    let kk = k as i64;
    let mut c = Vec::with_capacity(k);
    for m in monos {
        let e = m.get(t);
        if e.floor() != Exp::zero() {
            return None;
        }
        let s = e * Exp::from_integer(kk);
        if !s.is_integer() {
            return None;
        }
        c.push(*s.numer());
    }
    let s0 = c.iter().position(|&x| x == 0)?;
    let rot: Vec<usize> = (0..k).map(|i| (s0 + i) % k).collect();
    let j = c[rot[1 % k]];
    if j.gcd(&kk) != 1 {
        return None;
    }
    let mut slots = vec![Vec::new(); k];
    let mut residual_vars = Vec::new();
    for (i, &src) in rot.iter().enumerate() {
        if c[src] != (j * i as i64).rem_euclid(kk) {
            return None;
        }
        let target = (j * i as i64).rem_euclid(kk) as usize;
        let mut exps = Vec::new();
        for (v, e) in monos[src].0.iter().enumerate() {
            if v == t || e.is_zero() {
                continue;
            }
            if !e.is_integer() {
                return None;
            }
            exps.push(*e.numer());
            residual_vars.push(v);
        }
        exps.sort_unstable();
        slots[target] = exps;
    }
    if slots[0].is_empty() {
        return Some(None);
    }
    for v in residual_vars {
        uses[v] += 1;
    }
    Some(Some(BlockSig { k, slots }))
}

/// Replaces every argument by its monomial part when the cofactor is a unit.
pub fn absorb_units(p: &ProductForm) -> Result<ProductForm> {
    let all = p.vars().all();
    let mut blocks = Vec::with_capacity(p.blocks().len());
    for b in p.blocks() {
        let mut args = Vec::with_capacity(b.k());
        for a in b.args() {
            if a.is_zero() {
                return Err(unclassified(p, "vanishing argument"));
            }
            let (m, r) = a.monomial_part(&all)?;
            if r.constant_term().is_zero() {
                return Err(unclassified(p, "argument is not a monomial times a unit"));
            }
            args.push(PuiseuxPoly::monomial(p.vars(), m));
        }
        blocks.push(FactoredCirculant::new(args)?);
    }
    p.with_parts(CycNum::one(), p.prefactor().clone(), blocks)
}

/// Classifies a form at a point where the listed variables are nonzero.
pub fn classify_form(p: &ProductForm, nonzero: &[usize]) -> Result<&'static CatalogEntry> {
    let cat = catalog();
    let bindings: BTreeMap<usize, PuiseuxPoly> = nonzero
        .iter()
        .map(|&v| (v, PuiseuxPoly::one(p.vars())))
        .collect();
    let q = absorb_units(&p.substitute(&bindings)?)?;
    let order = q.expand()?.total_order();
    match order {
        Order::Finite(o) if o.is_zero() => {
            return Err(unclassified(
                &q,
                "unit: the point is not on the hypersurface",
            ))
        }
        Order::Finite(o) if o.is_one() => {
            return Ok(cat.get("smooth").expect("catalog has smooth"));
        }
        Order::Infinite => return Err(unclassified(&q, "zero form")),
        _ => {}
    }
    let sig = signature(&q)?;
    cat.lookup(&sig)
        .ok_or_else(|| unclassified(&q, &format!("no catalog entry with signature {sig}")))
}

/// Classification by variable names.
pub fn classify_named(p: &ProductForm, nonzero: &[&str]) -> Result<&'static CatalogEntry> {
    let idx = p.vars().indices(nonzero)?;
    classify_form(p, &idx)
}
