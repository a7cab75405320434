//! Monic polynomials in a distinguished variable `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::Exp;
use super::puiseux::PuiseuxPoly;
use super::vars::VarTable;
use crate::arith::{rat, CycNum};
use crate::error::{Error, Result};

/// `z^k + a_1 z^(k-1) + ... + a_k` with coefficients free of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    z: usize,
    coeffs: Vec<PuiseuxPoly>,
}

impl ZPoly {
    /// Builds from coefficients `a_1 .. a_k`.
    pub fn new(z: usize, coeffs: Vec<PuiseuxPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid(
                "monic polynomial must have degree at least 1",
            ));
        }
        for a in &coeffs {
            if a.involves(z) {
                return Err(Error::invalid(
                    "coefficient involves the distinguished variable",
                ));
            }
        }
        Ok(ZPoly { z, coeffs })
    }

    /// Reads a monic polynomial in `z` out of an expanded polynomial.
    pub fn from_poly(f: &PuiseuxPoly, z: usize) -> Result<Self> {
        let parts = f.coefficients_in(z)?;
        let k = parts.len().saturating_sub(1);
        if k == 0 || !parts[k].is_one() {
            return Err(Error::invalid(format!(
                "not monic in {}: {f}",
                f.vars().name(z)
            )));
        }
        let coeffs = (1..=k).map(|i| parts[k - i].clone()).collect();
        Ok(ZPoly { z, coeffs })
    }

    pub fn from_named(f: &PuiseuxPoly, z: &str) -> Result<Self> {
        Self::from_poly(f, f.vars().idx(z)?)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.coeffs[0].vars()
    }

    /// Coefficient `a_i` for `1 ≤ i ≤ k`; `a_0` is 1.
    pub fn coeff(&self, i: usize) -> PuiseuxPoly {
        if i == 0 {
            PuiseuxPoly::one(self.vars())
        } else {
            self.coeffs[i - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[PuiseuxPoly] {
        &self.coeffs
    }

    /// The expanded polynomial.
    pub fn to_poly(&self) -> PuiseuxPoly {
        let vars = self.vars().clone();
        let k = self.degree();
        let mut acc = PuiseuxPoly::var_idx(&vars, self.z, Exp::from_integer(k as i64));
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = (k - i - 1) as i64;
            let zp = PuiseuxPoly::var_idx(&vars, self.z, Exp::from_integer(e));
            acc = &acc + &(a * &zp);
        }
        acc
    }

    /// Applies the same transformation to every coefficient.
    pub fn map_coeffs<F: Fn(&PuiseuxPoly) -> Result<PuiseuxPoly>>(&self, f: F) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        ZPoly::new(self.z, coeffs)
    }

    /// Substitutes into the coefficients only (`z` must not be bound).
    pub fn substitute(&self, bindings: &BTreeMap<usize, PuiseuxPoly>) -> Result<Self> {
        if bindings.contains_key(&self.z) {
            return Err(Error::invalid(
                "cannot substitute the distinguished variable",
            ));
        }
        self.map_coeffs(|a| a.substitute(bindings))
    }

    /// Shift `z → z − a_1/k`, returning the depressed polynomial and the shift
    /// `a_1/k` (so the original is recovered by `z → z + shift`).
    pub fn tschirnhausen(&self) -> Result<(ZPoly, PuiseuxPoly)> {
        let k = self.degree();
        let shift = self.coeffs[0].scale(&CycNum::from_rat(rat(1, k as i64)));
        if shift.is_zero() {
            return Ok((self.clone(), shift));
        }
        let g = self.shifted(&-&shift)?;
        debug_assert!(g.coeffs[0].is_zero());
        Ok((g, shift))
    }

    /// `f(z + s)` as a monic polynomial in `z`.
    pub fn shifted(&self, s: &PuiseuxPoly) -> Result<ZPoly> {
        let vars = self.vars().clone();
        let zs = &PuiseuxPoly::var_idx(&vars, self.z, Exp::from_integer(1)) + s;
        let mut b = BTreeMap::new();
        b.insert(self.z, zs);
        let f = self.to_poly().substitute(&b)?;
        ZPoly::from_poly(&f, self.z)
    }

    /// Evaluates the polynomial at `z = r`.
    pub fn eval(&self, r: &PuiseuxPoly) -> PuiseuxPoly {
        let mut acc = PuiseuxPoly::one(self.vars());
        for a in &self.coeffs {
            acc = &(&acc * r) + a;
        }
        acc
    }

    /// `∂f/∂z`.
    pub fn derivative(&self) -> PuiseuxPoly {
        self.to_poly()
            .derivative(self.z)
            .expect("z exponents are integral")
    }

    /// Whether every coefficient is free of fractional exponents.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(PuiseuxPoly::is_integral)
    }

    /// Coefficients truncated at vars-degree `n`.
    pub fn truncate(&self, n: Exp, vars: &[usize]) -> ZPoly {
        ZPoly {
            z: self.z,
            coeffs: self.coeffs.iter().map(|a| a.truncate(n, vars)).collect(),
        }
    }

    /// Whether the coefficient `a_1` vanishes.
    pub fn is_depressed(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
