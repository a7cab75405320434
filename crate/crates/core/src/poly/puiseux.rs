//! Sparse Puiseux polynomials over cyclotomic coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Exp, Monomial};
use super::vars::{same_table, VarTable};
use crate::arith::{format_rat, CycNum, Rat};
use crate::error::{Error, Result};

/// Order of a polynomial along a set of variables; the zero polynomial has
/// infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(Exp),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<Exp> {
        match self {
            Order::Finite(e) => Some(e),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) if e.is_integer() => write!(f, "{}", e.numer()),
            Order::Finite(e) => write!(f, "{}/{}", e.numer(), e.denom()),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Canonical sparse polynomial: nonzero coefficients only, terms keyed by
/// exponent vector in lexicographic order.
#[derive(Clone, Debug)]
pub struct PuiseuxPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl PartialEq for PuiseuxPoly {
    fn eq(&self, o: &Self) -> bool {
        same_table(&self.vars, &o.vars) && self.terms == o.terms
    }
}

impl Eq for PuiseuxPoly {}

impl PuiseuxPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        PuiseuxPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: CycNum) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, CycNum::one())
    }

    pub fn from_rat(vars: &Arc<VarTable>, r: Rat) -> Self {
        Self::constant(vars, CycNum::from_rat(r))
    }

    pub fn from_int(vars: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(vars, CycNum::from_int(n))
    }

    pub fn term(vars: &Arc<VarTable>, m: Monomial, c: CycNum) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial length must match the table");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PuiseuxPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial) -> Self {
        Self::term(vars, m, CycNum::one())
    }

    /// The variable `name` to the first power.
    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        let i = vars.idx(name)?;
        Ok(Self::var_idx(vars, i, Exp::one()))
    }

    pub fn var_idx(vars: &Arc<VarTable>, i: usize, e: Exp) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i, e))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, CycNum)>>(
        vars: &Arc<VarTable>,
        it: I,
    ) -> Self {
        let mut acc: HashMap<Monomial, CycNum> = HashMap::new();
        for (m, c) in it {
            match acc.get_mut(&m) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        PuiseuxPoly {
            vars: vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, CycNum> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn constant_term(&self) -> CycNum {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The single term of a one-term polynomial.
    pub fn as_term(&self) -> Option<(&Monomial, &CycNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn has_rational_coeffs(&self) -> bool {
        self.terms.values().all(CycNum::is_rational)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(Monomial::is_integral)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same_table(&self.vars, &o.vars) {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_ref(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_ref(&-o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_ref(o))
    }

    fn add_ref(&self, o: &Self) -> Self {
        assert!(same_table(&self.vars, &o.vars), "variable table mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    let s = &*x + c;
                    if s.is_zero() {
                        terms.remove(m);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        assert!(same_table(&self.vars, &o.vars), "variable table mismatch");
        let mut acc: HashMap<Monomial, CycNum> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Product with every term of vars-degree above `n` dropped.
    pub fn mul_trunc(&self, o: &Self, vars: &[usize], n: Exp) -> Self {
        assert!(same_table(&self.vars, &o.vars), "variable table mismatch");
        let mut acc: HashMap<Monomial, CycNum> = HashMap::new();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree(vars);
            if d1 > n {
                continue;
            }
            for (m2, c2) in &o.terms {
                if d1 + m2.degree(vars) > n {
                    continue;
                }
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&CycNum::from_rat(r.clone()))
    }

    /// Multiplication by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a monomial, failing when an exponent would go negative.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let q = k.div(m).ok_or_else(|| {
                Error::NegativeExponent(format!(
                    "{} / {}",
                    k.render(&self.vars),
                    m.render(&self.vars)
                ))
            })?;
            terms.insert(q, c.clone());
        }
        Ok(PuiseuxPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Rational power of a one-term polynomial (the coefficient must have the
    /// required root in a cyclotomic field).
    pub fn monomial_pow(&self, e: Exp) -> Result<Self> {
        if e.is_integer() && !e.is_negative() {
            return Ok(self.pow(*e.numer() as u32));
        }
        let (m, c) = self.as_term().ok_or(Error::NonMonomialSubstitution)?;
        if e.is_negative() {
            return Err(Error::NegativeExponent(format!("power {e}")));
        }
        let c = c
            .pow(*e.numer() as u32)
            .kth_root(*e.denom() as u32)
            .ok_or_else(|| Error::RootNotInField(format!("({c})^({e})")))?;
        Ok(Self::term(&self.vars, m.pow(e), c))
    }

    /// Applies `f` to every monomial (the map must be injective on the
    /// support or coefficients are merged).
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (f(m), c.clone())),
        )
    }

    pub fn map_coeffs<F: Fn(&CycNum) -> CycNum>(&self, f: F) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// The same polynomial over another table with identical length (used
    /// after renaming a variable).
    pub fn with_table(&self, vars: &Arc<VarTable>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::VarTableMismatch);
        }
        Ok(PuiseuxPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Transports the polynomial to `target`, mapping variables by name.
    pub fn transport(&self, target: &Arc<VarTable>) -> Result<Self> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = (0..self.vars.len())
            .map(|i| target.index_of(self.vars.name(i)))
            .collect();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let mut out = Monomial::one(target.len());
            for (i, e) in m.0.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars.name(i).into()))?;
                out.set(j, *e);
            }
            terms.push((out, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Substitutes polynomials for variables. Integer powers of any binding
    /// are allowed; fractional powers require a one-term binding.
    pub fn substitute(&self, bindings: &BTreeMap<usize, PuiseuxPoly>) -> Result<Self> {
        for b in bindings.values() {
            self.check(b)?;
        }
        let n = self.vars.len();
        let mut cache: HashMap<(usize, Exp), PuiseuxPoly> = HashMap::new();
        let mut acc: HashMap<Monomial, CycNum> = HashMap::new();
        for (m, c) in &self.terms {
            let mut free = m.clone();
            let mut prod = PuiseuxPoly::constant(&self.vars, c.clone());
            for (&i, b) in bindings {
                let e = m.get(i);
                if e.is_zero() {
                    continue;
                }
                free.set(i, Exp::zero());
                let p = match cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = b.monomial_pow(e)?;
                        cache.insert((i, e), p.clone());
                        p
                    }
                };
                prod = prod.mul_ref(&p);
            }
            debug_assert_eq!(free.len(), n);
            for (pm, pc) in prod.terms {
                let mm = pm.mul(&free);
                match acc.get_mut(&mm) {
                    Some(x) => *x = &*x + &pc,
                    None => {
                        acc.insert(mm, pc);
                    }
                }
            }
        }
        Ok(PuiseuxPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Substitution by variable name.
    pub fn substitute_named(&self, bindings: &[(&str, PuiseuxPoly)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, p) in bindings {
            map.insert(self.vars.idx(name)?, p.clone());
        }
        self.substitute(&map)
    }

    /// Minimum over terms of the vars-degree.
    pub fn order(&self, vars: &[usize]) -> Order {
        self.terms
            .keys()
            .map(|m| m.degree(vars))
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    pub fn total_order(&self) -> Order {
        self.order(&self.vars.all())
    }

    /// Maximum over terms of the vars-degree (zero for the zero polynomial).
    pub fn max_degree(&self, vars: &[usize]) -> Exp {
        self.terms
            .keys()
            .map(|m| m.degree(vars))
            .max()
            .unwrap_or_else(Exp::zero)
    }

    /// Factors `f = m · r` with `m` the componentwise-minimum monomial in the
    /// listed variables.
    pub fn monomial_part(&self, exc: &[usize]) -> Result<(Monomial, PuiseuxPoly)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?.restrict(exc);
        let m = it.fold(first, |acc, k| acc.gcd(&k.restrict(exc)));
        let r = self.div_monomial(&m)?;
        Ok((m, r))
    }

    /// Sum of the terms of minimal vars-degree.
    pub fn initial_form(&self, vars: &[usize]) -> Result<Self> {
        let d = self.order(vars).finite().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(vars, d))
    }

    /// Terms of vars-degree exactly `d`.
    pub fn homogeneous_part(&self, vars: &[usize], d: Exp) -> Self {
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(vars) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of vars-degree above `n`.
    pub fn truncate(&self, n: Exp, vars: &[usize]) -> Self {
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(vars) <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative in an integer-exponent variable.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e.is_zero() {
                continue;
            }
            if !e.is_integer() {
                return Err(Error::FractionalExponent(self.vars.name(i).to_string()));
            }
            let mut k = m.clone();
            k.set(i, e - Exp::one());
            terms.push((k, c.scale(&Rat::from_integer((*e.numer()).into()))));
        }
        Ok(Self::from_terms(&self.vars, terms))
    }

    /// Groups the polynomial by powers of variable `i` (integer exponents);
    /// entry `j` holds the coefficient of `x_i^j`.
    pub fn coefficients_in(&self, i: usize) -> Result<Vec<PuiseuxPoly>> {
        let mut out: Vec<PuiseuxPoly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if !e.is_integer() {
                return Err(Error::FractionalExponent(self.vars.name(i).to_string()));
            }
            let j = *e.numer() as usize;
            while out.len() <= j {
                out.push(PuiseuxPoly::zero(&self.vars));
            }
            let mut k = m.clone();
            k.set(i, Exp::zero());
            out[j].terms.insert(k, c.clone());
        }
        Ok(out)
    }

    /// Whether any term involves variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| !m.get(i).is_zero())
    }

    /// Variables occurring in at least one term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.involves(i)).collect()
    }

    /// Canonical text form in the polynomial grammar.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn render_coeff_term(c: &CycNum, m: &Monomial, vars: &VarTable, first: bool, out: &mut String) {
    let mono = m.render(vars);
    let unit = m.is_one();
    match c.to_rat() {
        Some(r) => {
            let neg = r.is_negative();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = r.abs();
            if unit {
                out.push_str(&format_rat(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rat(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        None => {
            if !first {
                out.push_str(" + ");
            }
            out.push('[');
            out.push_str(&c.to_string());
            out.push(']');
            if !unit {
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            render_coeff_term(c, m, &self.vars, i == 0, &mut out);
        }
        f.write_str(&out)
    }
}

impl Add<&PuiseuxPoly> for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.add_ref(o)
    }
}

impl Add for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: PuiseuxPoly) -> PuiseuxPoly {
        self.add_ref(&o)
    }
}

impl Sub<&PuiseuxPoly> for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.add_ref(&-o)
    }
}

impl Sub for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: PuiseuxPoly) -> PuiseuxPoly {
        self.add_ref(&-&o)
    }
}

impl Mul<&PuiseuxPoly> for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        self.mul_ref(o)
    }
}

impl Mul for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: PuiseuxPoly) -> PuiseuxPoly {
        self.mul_ref(&o)
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}
