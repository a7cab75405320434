//! Factorization of homogeneous forms into linear forms over cyclotomic
//! fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{CycNum, Rat};
use crate::poly::series::{exact_div, poly_kth_root};
use crate::poly::{Exp, Monomial, PuiseuxPoly};

/// Largest number of candidate linear forms tried per deflation step.
const CANDIDATE_CAP: usize = 4096;

/// Largest absolute value whose divisors are enumerated in the rational root
/// search.
const DIVISOR_CAP: i64 = 1_000_000;

/// Factors a form homogeneous in `vars` into linear forms whose product is
/// exactly `g`. Returns `None` when no complete split is found.
pub(super) fn split_form(g: &PuiseuxPoly, vars: &[usize]) -> Option<Vec<PuiseuxPoly>> {
    let mut factors = Vec::new();
    if !split_into(g, vars, &mut factors, 0) {
        return None;
    }
    let mut prod = PuiseuxPoly::one(g.vars());
    for f in &factors {
        prod = &prod * f;
    }
    let c = exact_div(g, &prod).ok()?;
    if !c.is_constant() {
        return None;
    }
    {
        let first = factors.first_mut()?;
        *first = first.scale(&c.constant_term())
    }
    Some(factors)
}

fn split_into(g: &PuiseuxPoly, vars: &[usize], out: &mut Vec<PuiseuxPoly>, depth: usize) -> bool {
    if depth > 64 {
        return false;
    }
    let Ok((m, r)) = g.monomial_part(vars) else {
        return false;
    };
    for &v in vars {
        let e = m.get(v);
        if !e.is_integer() {
            return false;
        }
        for _ in 0..e.to_integer() {
            out.push(PuiseuxPoly::var_idx(g.vars(), v, Exp::one()));
        }
    }
    let Some(d) = r.order(vars).finite() else {
        return false;
    };
    if !d.is_integer() {
        return false;
    }
    let d = d.to_integer();
    if d == 0 {
        return true;
    }
    if d == 1 {
        out.push(r);
        return true;
    }
    for j in (2..=d).rev().filter(|j| d % j == 0) {
        if let Ok(root) = poly_kth_root(&r, j as u32) {
            let mut inner = Vec::new();
            if !split_into(&root, vars, &mut inner, depth + 1) {
                return false;
            }
            for _ in 0..j {
                out.extend(inner.iter().cloned());
            }
            return true;
        }
    }
    let n = g.vars().len();
    let pure = |p: &PuiseuxPoly, y: usize| {
        !p.coeff(&Monomial::var(n, y, Exp::from_integer(d)))
            .is_zero()
    };
    if let Some(y) = vars.iter().copied().find(|&y| pure(&r, y)) {
        return match find_linear_factor(&r, y, vars, d) {
            Some(l) => {
                let q = exact_div(&r, &l).expect("candidate was checked to divide");
                out.push(l);
                split_into(&q, vars, out, depth + 1)
            }
            None => false,
        };
    }
    for &y in vars.iter().filter(|&&y| r.involves(y)) {
        for &x in vars.iter().filter(|&&x| x != y && r.involves(x)) {
            let yv = PuiseuxPoly::var_idx(g.vars(), y, Exp::one());
            let xv = PuiseuxPoly::var_idx(g.vars(), x, Exp::one());
            let fwd = BTreeMap::from([(y, &yv + &xv)]);
            let back = BTreeMap::from([(y, &yv - &xv)]);
            let Ok(moved) = r.substitute(&fwd) else {
                continue;
            };
            if !pure(&moved, y) {
                continue;
            }
            let mut inner = Vec::new();
            if !split_into(&moved, vars, &mut inner, depth + 1) {
                return false;
            }
            for f in inner {
                match f.substitute(&back) {
                    Ok(f) => out.push(f),
                    Err(_) => return false,
                }
            }
            return true;
        }
    }
    false
}

/// Finds a linear factor `y − Σ a_i x_i` of `r` by combining roots of the
/// binary restrictions of `r` to the planes `(y, x_i)`.
fn find_linear_factor(r: &PuiseuxPoly, y: usize, vars: &[usize], d: i64) -> Option<PuiseuxPoly> {
    let table = r.vars();
    let others: Vec<usize> = vars
        .iter()
        .copied()
        .filter(|&v| v != y && r.involves(v))
        .collect();
    let mut choices: Vec<Vec<CycNum>> = Vec::with_capacity(others.len());
    for &x in &others {
        let mut coeffs = vec![CycNum::zero(); d as usize + 1];
        for (m, c) in r.terms() {
            if m.support().iter().any(|&v| v != y && v != x) {
                continue;
            }
            let e = m.get(y).to_integer() as usize;
            coeffs[e] = &coeffs[e] + c;
        }
        let mut roots = univariate_roots(coeffs);
        roots.dedup();
        if roots.is_empty() {
            return None;
        }
        choices.push(roots);
    }
    let total: usize = choices.iter().map(Vec::len).product();
    if total > CANDIDATE_CAP {
        return None;
    }
    let yv = PuiseuxPoly::var_idx(table, y, Exp::one());
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut l = yv.clone();
        for (i, &x) in others.iter().enumerate() {
            let a = &choices[i][idx[i]];
            l = &l - &PuiseuxPoly::var_idx(table, x, Exp::one()).scale(a);
        }
        if exact_div(r, &l).is_ok() {
            return Some(l);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return None;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Roots of `Σ c_i t^i` found by the zero, linear, quadratic, binomial and
/// rational-root rules with deflation; possibly incomplete.
pub fn univariate_roots(mut p: Vec<CycNum>) -> Vec<CycNum> {
    let mut roots = Vec::new();
    trim(&mut p);
    loop {
        if p.len() <= 1 {
            return roots;
        }
        if p[0].is_zero() {
            roots.push(CycNum::zero());
            p.remove(0);
            continue;
        }
        let deg = p.len() - 1;
        let lead = p[deg].clone();
        let Ok(lead_inv) = lead.inverse() else {
            return roots;
        };
        if deg == 1 {
            roots.push(-(&p[0] * &lead_inv));
            return roots;
        }
        if deg == 2 {
            let disc = &(&p[1] * &p[1]) - &(&CycNum::from_int(4) * &(&p[0] * &p[2]));
            if let Some(s) = disc.kth_root(2) {
                let half = (&CycNum::from_int(2) * &p[2]).inverse().expect("nonzero");
                roots.push(&(&-&p[1] + &s) * &half);
                roots.push(&(&-&p[1] - &s) * &half);
            }
            return roots;
        }
        if p[1..deg].iter().all(CycNum::is_zero) {
            let rhs = -(&p[0] * &lead_inv);
            if let Some(base) = rhs.kth_root(deg as u32) {
                for j in 0..deg {
                    roots.push(&base * &CycNum::zeta(deg as u32, j as i64));
                }
            }
            return roots;
        }
        match rational_root(&p) {
            Some(r) => {
                p = deflate(&p, &r);
                roots.push(r);
            }
            None => return roots,
        }
    }
}

fn trim(p: &mut Vec<CycNum>) {
    while p.len() > 1 && p.last().is_some_and(CycNum::is_zero) {
        p.pop();
    }
}

/// Synthetic division by `t − r`.
fn deflate(p: &[CycNum], r: &CycNum) -> Vec<CycNum> {
    let deg = p.len() - 1;
    let mut q = vec![CycNum::zero(); deg];
    let mut acc = CycNum::zero();
    for i in (1..=deg).rev() {
        acc = &(&acc * r) + &p[i];
        q[i - 1] = acc.clone();
    }
    q
}

fn eval(p: &[CycNum], t: &CycNum) -> CycNum {
    p.iter()
        .rev()
        .fold(CycNum::zero(), |acc, c| &(&acc * t) + c)
}

/// A rational root by the rational root theorem, for rational coefficients.
fn rational_root(p: &[CycNum]) -> Option<CycNum> {
    let rats: Vec<Rat> = p.iter().map(CycNum::to_rat).collect::<Option<_>>()?;
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let a0 = ints[0].abs().to_i64()?;
    let an = ints.last()?.abs().to_i64()?;
    if a0 > DIVISOR_CAP || an > DIVISOR_CAP {
        return None;
    }
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1, -1] {
                let cand = CycNum::from_rat(Rat::new(BigInt::from(s * num), BigInt::from(den)));
                if eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Coefficient row of a linear form over `vars`.
pub(super) fn linear_row(l: &PuiseuxPoly, vars: &[usize]) -> Vec<CycNum> {
    let n = l.vars().len();
    vars.iter()
        .map(|&v| l.coeff(&Monomial::var(n, v, Exp::one())))
        .collect()
}

/// Whether two linear forms are proportional.
pub(super) fn proportional(a: &PuiseuxPoly, b: &PuiseuxPoly, vars: &[usize]) -> bool {
    crate::arith::linalg::rank(&[linear_row(a, vars), linear_row(b, vars)]) < 2
}
