//! Exact division, exact polynomial roots and truncated series roots.

use num_traits::{One, Zero};

use super::monomial::{Exp, Monomial};
use super::puiseux::PuiseuxPoly;
use crate::arith::{CycNum, Rat};
use crate::error::{Error, Result};

const STEP_CAP: usize = 100_000;

/// Exact quotient `f / g`, failing when `g` does not divide `f`.
pub fn exact_div(f: &PuiseuxPoly, g: &PuiseuxPoly) -> Result<PuiseuxPoly> {
    let (gm, gc) = g.leading_term().ok_or(Error::DivisionByZero)?;
    let (gm, gc_inv) = (gm.clone(), gc.inverse()?);
    let mut r = f.clone();
    let mut q = PuiseuxPoly::zero(f.vars());
    let mut steps = 0;
    while let Some((rm, rc)) = r.leading_term() {
        steps += 1;
        if steps > STEP_CAP {
            return Err(Error::Internal("exact division did not terminate".into()));
        }
        let m = rm.div(&gm).ok_or_else(|| not_divisible(f, g))?;
        let c = rc * &gc_inv;
        let t = PuiseuxPoly::term(f.vars(), m, c);
        r = &r - &(&t * g);
        q = &q + &t;
    }
    Ok(q)
}

fn not_divisible(f: &PuiseuxPoly, g: &PuiseuxPoly) -> Error {
    Error::Contract(format!("{g} does not divide {f}"))
}

/// Whether `g` divides `f` exactly.
pub fn divides(g: &PuiseuxPoly, f: &PuiseuxPoly) -> bool {
    exact_div(f, g).is_ok()
}

/// Exact `k`-th root of a polynomial that is a perfect `k`-th power.
pub fn poly_kth_root(h: &PuiseuxPoly, k: u32) -> Result<PuiseuxPoly> {
    if k == 1 {
        return Ok(h.clone());
    }
    let Some((lm, lc)) = h.leading_term() else {
        return Ok(h.clone());
    };
    let e = Exp::new(1, k as i64);
    let c = lc
        .kth_root(k)
        .ok_or_else(|| Error::RootNotInField(format!("{k}-th root of {lc}")))?;
    let mut s = PuiseuxPoly::term(h.vars(), lm.pow(e), c);
    let (sm, sc) = s
        .leading_term()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("nonzero");
    let denom_m = sm.pow(Exp::from_integer(k as i64 - 1));
    let denom_c_inv = sc
        .pow(k - 1)
        .scale(&Rat::from_integer(k.into()))
        .inverse()?;
    let mut last = sm.clone();
    for _ in 0..STEP_CAP {
        let err = h - &s.pow(k);
        let Some((em, ec)) = err.leading_term() else {
            return Ok(s);
        };
        let m = em
            .div(&denom_m)
            .ok_or_else(|| Error::NotAPower(format!("{h} is not a {k}-th power")))?;
        if m >= last {
            return Err(Error::NotAPower(format!("{h} is not a {k}-th power")));
        }
        last = m.clone();
        s = &s + &PuiseuxPoly::term(h.vars(), m, ec * &denom_c_inv);
    }
    Err(Error::NotAPower(format!("{h} is not a {k}-th power")))
}

/// `f^k` with every term of vars-degree above `n` dropped.
pub fn pow_trunc(f: &PuiseuxPoly, k: u32, vars: &[usize], n: Exp) -> PuiseuxPoly {
    let mut acc = PuiseuxPoly::one(f.vars());
    for _ in 0..k {
        acc = acc.mul_trunc(f, vars, n);
    }
    acc
}

/// Truncated `k`-th root: returns `h` with `h^k ≡ g` modulo vars-degree
/// above `n`. The initial form of `g` must be an exact `k`-th power; higher
/// corrections are solved degree by degree.
pub fn series_kth_root(g: &PuiseuxPoly, k: u32, vars: &[usize], n: Exp) -> Result<PuiseuxPoly> {
    if g.is_zero() {
        return Ok(g.clone());
    }
    if k == 1 {
        return Ok(g.truncate(n, vars));
    }
    let init = g.initial_form(vars)?;
    let h0 = poly_kth_root(&init, k).map_err(|e| match e {
        Error::NotAPower(_) => {
            Error::NotAPower(format!("initial form {init} is not a {k}-th power"))
        }
        other => other,
    })?;
    let d0 = h0.order(vars).finite().expect("nonzero root");
    let shift = d0 * Exp::from_integer(k as i64 - 1);
    let denom = h0.pow(k - 1).scale(&CycNum::from_int(k as i64));
    let gt = g.truncate(n, vars);
    let mut h = h0;
    let mut last = Exp::zero() - Exp::one();
    for _ in 0..STEP_CAP {
        let err = &gt - &pow_trunc(&h, k, vars, n);
        let Some(d) = err.order(vars).finite() else {
            return Ok(h);
        };
        if d <= last {
            return Err(Error::Internal("series root correction stalled".into()));
        }
        last = d;
        let part = err.homogeneous_part(vars, d);
        let corr = exact_div(&part, &denom).map_err(|_| {
            Error::NotAPower(format!("{g} has no {k}-th root: obstruction in degree {d}"))
        })?;
        debug_assert_eq!(corr.order(vars).finite(), Some(d - shift));
        h = &h + &corr;
    }
    Err(Error::Internal("series root did not converge".into()))
}

/// Truncated inverse of a series with invertible constant term.
pub fn series_inverse(g: &PuiseuxPoly, vars: &[usize], n: Exp) -> Result<PuiseuxPoly> {
    let c0 = g.coeff(&Monomial::one(g.vars().len()));
    if c0.is_zero() || !g.homogeneous_part(vars, Exp::zero()).is_constant() {
        return Err(Error::invalid(format!("{g} is not a unit")));
    }
    let inv0 = c0.inverse()?;
    let one = PuiseuxPoly::one(g.vars());
    let t = &one - &g.scale(&inv0);
    let mut acc = one.clone();
    let mut power = one;
    loop {
        power = power.mul_trunc(&t, vars, n);
        if power.is_zero() {
            break;
        }
        acc = &acc + &power;
    }
    Ok(acc.scale(&inv0))
}
