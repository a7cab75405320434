//! Puiseux monomials: exponent vectors of nonnegative rationals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::VarTable;

/// Exponent of a Puiseux monomial.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

pub fn exp_int(n: i64) -> Exp {
    Ratio::from_integer(n)
}

/// Renders an exponent the way the polynomial grammar expects: bare integers,
/// parenthesized fractions.
pub fn format_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// Exponent vector indexed by a [`VarTable`]; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<Exp>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![Exp::zero(); n])
    }

    pub fn var(n: usize, i: usize, e: Exp) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn get(&self, i: usize) -> Exp {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: Exp) {
        self.0[i] = e;
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Quotient when every exponent stays nonnegative.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let v: Vec<Exp> = self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect();
        v.iter().all(|e| !e.is_negative()).then_some(Monomial(v))
    }

    pub fn pow(&self, e: Exp) -> Self {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// Componentwise minimum.
    pub fn gcd(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Sum of exponents over the listed variables.
    pub fn degree(&self, vars: &[usize]) -> Exp {
        vars.iter().map(|&i| self.0[i]).sum()
    }

    pub fn total_degree(&self) -> Exp {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Ratio::is_integer)
    }

    /// Restriction to the listed variables (others set to zero).
    pub fn restrict(&self, vars: &[usize]) -> Self {
        let mut m = Self::one(self.len());
        for &i in vars {
            m.0[i] = self.0[i];
        }
        m
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Renders `x1^2*w^(1/4)`-style text; the unit monomial renders as "1".
    pub fn render(&self, vars: &VarTable) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| {
                if e.is_one() {
                    vars.name(i).to_string()
                } else {
                    format!("{}^{}", vars.name(i), format_exp(e))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}
