//! Degree-by-degree lifting of a factorization of the initial form into
//! linearly independent linear forms.

use std::collections::BTreeMap;

use num_traits::One;

use super::cone::linear_row;
use crate::arith::linalg::{rank, solve};
use crate::arith::CycNum;
use crate::error::{Error, Result};
use crate::poly::series::exact_div;
use crate::poly::{Exp, Monomial, PuiseuxPoly};

/// Result of a lifting attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenselOutcome {
    /// Factors whose product agrees with `f` through total degree `N`.
    Lifted(Vec<PuiseuxPoly>),
    /// The first total degree at which no correction exists.
    Obstructed(usize),
}

/// Lifts `forms` to factors `g_j` with `in(g_j) = forms[j]` and
/// `∏ g_j ≡ f` through total degree `n`. The forms must be linearly
/// independent linear forms; a nonzero residual in the degree of the initial
/// form is reported as an obstruction in that degree.
pub fn hensel_lift(f: &PuiseuxPoly, forms: &[PuiseuxPoly], n: usize) -> Result<HenselOutcome> {
    let table = f.vars().clone();
    let nv = table.len();
    let all = table.all();
    if !f.is_integral() {
        return Err(Error::FractionalExponent(f.to_string()));
    }
    if forms.is_empty() {
        return Err(Error::invalid("no initial factors to lift"));
    }
    let k = forms.len();
    for l in forms {
        if l.is_zero() || l.terms().any(|(m, _)| m.total_degree() != Exp::one()) {
            return Err(Error::invalid(format!("{l} is not a linear form")));
        }
    }
    let rows: Vec<Vec<CycNum>> = forms.iter().map(|l| linear_row(l, &all)).collect();
    if rank(&rows) < k {
        return Err(Error::invalid("initial factors are linearly dependent"));
    }
    let mut basis = rows.clone();
    for v in 0..nv {
        if basis.len() == nv {
            break;
        }
        let mut e = vec![CycNum::zero(); nv];
        e[v] = CycNum::one();
        basis.push(e);
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    let y_of_x: Vec<PuiseuxPoly> = basis
        .iter()
        .map(|row| {
            let terms = row
                .iter()
                .enumerate()
                .map(|(v, c)| (Monomial::var(nv, v, Exp::one()), c.clone()));
            PuiseuxPoly::from_terms(&table, terms)
        })
        .collect();
    let mut x_of_y: BTreeMap<usize, PuiseuxPoly> =
        (0..nv).map(|j| (j, PuiseuxPoly::zero(&table))).collect();
    for i in 0..nv {
        let mut e = vec![CycNum::zero(); nv];
        e[i] = CycNum::one();
        let col = solve(&basis, &e).ok_or_else(|| Error::Internal("singular basis".into()))?;
        let yi = PuiseuxPoly::var_idx(&table, i, Exp::one());
        for (j, c) in col.iter().enumerate() {
            let x = x_of_y.get_mut(&j).expect("all coordinates present");
            *x = &*x + &yi.scale(c);
        }
    }
    let big_f = f.substitute(&x_of_y)?;
    let m = big_f.total_order().finite().ok_or(Error::ZeroPolynomial)?;
    let mono_y: PuiseuxPoly = (0..k).fold(PuiseuxPoly::one(&table), |acc, j| {
        &acc * &PuiseuxPoly::var_idx(&table, j, Exp::one())
    });
    let init = big_f.homogeneous_part(&all, m);
    let scale = match exact_div(&init, &mono_y) {
        Ok(c) if c.is_constant() && m == Exp::from_integer(k as i64) => c.constant_term(),
        _ => return Ok(HenselOutcome::Obstructed(m.to_integer() as usize)),
    };
    let target = big_f
        .scale(&scale.inverse()?)
        .truncate(Exp::from_integer(n as i64), &all);
    let mut g: Vec<PuiseuxPoly> = (0..k)
        .map(|j| PuiseuxPoly::var_idx(&table, j, Exp::one()))
        .collect();
    for d in (k + 1)..=n {
        let de = Exp::from_integer(d as i64);
        let prod = g
            .iter()
            .skip(1)
            .fold(g[0].clone(), |acc, h| acc.mul_trunc(h, &all, de));
        let residual = (&target - &prod).homogeneous_part(&all, de);
        for (mono, c) in residual.terms() {
            let j = (0..k).find(|&j| (0..k).all(|i| i == j || mono.get(i) >= Exp::one()));
            let Some(j) = j else {
                return Ok(HenselOutcome::Obstructed(d));
            };
            let mut q = mono.clone();
            for i in (0..k).filter(|&i| i != j) {
                q.set(i, q.get(i) - Exp::one());
            }
            g[j] = &g[j] + &PuiseuxPoly::term(&table, q, c.clone());
        }
    }
    g[0] = g[0].scale(&scale);
    let back: BTreeMap<usize, PuiseuxPoly> = y_of_x.into_iter().enumerate().collect();
    let lifted = g
        .iter()
        .map(|h| h.substitute(&back))
        .collect::<Result<Vec<_>>>()?;
    Ok(HenselOutcome::Lifted(lifted))
}
