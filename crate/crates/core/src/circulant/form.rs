//! Circulant blocks, product forms and their text grammar.
//!
//! ```text
//! form  := item {* item}
//! item  := Delta[k]( expr {; expr} ) | factor
//! ```
//!
//! Plain factors multiply into the monomial prefactor and must stay a single
//! term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{format_rat, CycNum, Rat};
use crate::error::{Error, Result};
use crate::poly::parse::{Cursor, PolyParser};
use crate::poly::{infer_vars, Exp, Monomial, PuiseuxPoly, VarTable};

/// `Δ_k(a_0, …, a_{k−1})` with `k` the number of arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCirculant {
    args: Vec<PuiseuxPoly>,
}

impl FactoredCirculant {
    pub fn new(args: Vec<PuiseuxPoly>) -> Result<Self> {
        let first = args
            .first()
            .ok_or_else(|| Error::invalid("circulant block needs at least one argument"))?;
        for a in &args[1..] {
            if a.vars() != first.vars() {
                return Err(Error::VarTableMismatch);
            }
        }
        Ok(FactoredCirculant { args })
    }

    pub fn k(&self) -> usize {
        self.args.len()
    }

    pub fn args(&self) -> &[PuiseuxPoly] {
        &self.args
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.args[0].vars()
    }

    /// The eigen-forms `Σ_j ε^{jℓ} a_j` for `ℓ = 0..k`.
    pub fn eigen_forms(&self) -> Vec<PuiseuxPoly> {
        eigen_transform(&self.args, Direction::Forward)
    }

    /// Product of the eigen-forms. With rational arguments every coefficient
    /// of the result is rational; anything else is an arithmetic fault.
    pub fn expand(&self) -> Result<PuiseuxPoly> {
        let forms = self.eigen_forms();
        let mut acc = PuiseuxPoly::one(self.vars());
        for f in &forms {
            acc = &acc * f;
        }
        if self.args.iter().all(PuiseuxPoly::has_rational_coeffs) && !acc.has_rational_coeffs() {
            return Err(Error::Internal(format!(
                "circulant expansion left irrational coefficients: {acc}"
            )));
        }
        Ok(acc)
    }

    pub fn map_args<F: Fn(&PuiseuxPoly) -> Result<PuiseuxPoly>>(&self, f: F) -> Result<Self> {
        Self::new(self.args.iter().map(f).collect::<Result<Vec<_>>>()?)
    }
}

impl fmt::Display for FactoredCirculant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Delta{}(", self.k())?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Direction of the roots-of-unity coordinate change.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Y_ℓ = Σ_j ε^{jℓ} X_j`.
    Forward,
    /// `X_j = (1/k) Σ_ℓ ε^{−jℓ} Y_ℓ`.
    Inverse,
}

/// Applies the Vandermonde matrix of `k`-th roots of unity or its inverse.
pub fn eigen_transform(values: &[PuiseuxPoly], dir: Direction) -> Vec<PuiseuxPoly> {
    let k = values.len();
    if k == 0 {
        return Vec::new();
    }
    let vars = values[0].vars().clone();
    let kk = k as i64;
    (0..k)
        .map(|l| {
            let mut acc = PuiseuxPoly::zero(&vars);
            for (j, v) in values.iter().enumerate() {
                let e = (j * l) as i64;
                let c = match dir {
                    Direction::Forward => CycNum::zeta(k as u32, e),
                    Direction::Inverse => CycNum::zeta(k as u32, -e),
                };
                acc = &acc + &v.scale(&c);
            }
            match dir {
                Direction::Forward => acc,
                Direction::Inverse => acc.scale_rat(&Rat::new(1.into(), kk.into())),
            }
        })
        .collect()
}

/// Determinant of the circulant matrix with first row `args`, by cofactor
/// expansion along the first row.
pub fn circulant_det_oracle(args: &[PuiseuxPoly]) -> Result<PuiseuxPoly> {
    let k = args.len();
    if k == 0 || k > 6 {
        return Err(Error::invalid("cofactor oracle supports 1 ≤ k ≤ 6"));
    }
    let m: Vec<Vec<PuiseuxPoly>> = (0..k)
        .map(|i| (0..k).map(|j| args[(j + k - i) % k].clone()).collect())
        .collect();
    Ok(cofactor_det(&m))
}

fn cofactor_det(m: &[Vec<PuiseuxPoly>]) -> PuiseuxPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let vars = m[0][0].vars().clone();
    let mut acc = PuiseuxPoly::zero(&vars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<PuiseuxPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = &m[0][c] * &cofactor_det(&minor);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// A coefficient times a monomial prefactor times circulant blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductForm {
    vars: Arc<VarTable>,
    coeff: CycNum,
    prefactor: Monomial,
    blocks: Vec<FactoredCirculant>,
}

impl ProductForm {
    pub fn new(
        vars: &Arc<VarTable>,
        coeff: CycNum,
        prefactor: Monomial,
        blocks: Vec<FactoredCirculant>,
    ) -> Result<Self> {
        if prefactor.len() != vars.len() || blocks.iter().any(|b| b.vars() != vars) {
            return Err(Error::VarTableMismatch);
        }
        if coeff.is_zero() {
            return Err(Error::invalid("product form coefficient must be nonzero"));
        }
        Ok(ProductForm {
            vars: vars.clone(),
            coeff,
            prefactor,
            blocks,
        })
    }

    pub fn from_blocks(vars: &Arc<VarTable>, blocks: Vec<FactoredCirculant>) -> Result<Self> {
        Self::new(vars, CycNum::one(), Monomial::one(vars.len()), blocks)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn coeff(&self) -> &CycNum {
        &self.coeff
    }

    pub fn prefactor(&self) -> &Monomial {
        &self.prefactor
    }

    pub fn blocks(&self) -> &[FactoredCirculant] {
        &self.blocks
    }

    /// Total degree of the product in `z`-like slot-0 arguments.
    pub fn total_k(&self) -> usize {
        self.blocks.iter().map(FactoredCirculant::k).sum()
    }

    pub fn expand(&self) -> Result<PuiseuxPoly> {
        let mut acc = PuiseuxPoly::term(&self.vars, self.prefactor.clone(), self.coeff.clone());
        for b in &self.blocks {
            acc = &acc * &b.expand()?;
        }
        Ok(acc)
    }

    /// Applies a substitution to the prefactor and every argument; the
    /// prefactor image must be a single term.
    pub fn substitute(&self, bindings: &BTreeMap<usize, PuiseuxPoly>) -> Result<Self> {
        let pre = PuiseuxPoly::term(&self.vars, self.prefactor.clone(), self.coeff.clone())
            .substitute(bindings)?;
        let (m, c) = pre
            .as_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| {
                Error::Representation(format!("prefactor image {pre} is not a monomial"))
            })?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.map_args(|a| a.substitute(bindings)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.vars, c, m, blocks)
    }

    /// Rebuilds with new parts over the same table.
    pub fn with_parts(
        &self,
        coeff: CycNum,
        prefactor: Monomial,
        blocks: Vec<FactoredCirculant>,
    ) -> Result<Self> {
        Self::new(&self.vars, coeff, prefactor, blocks)
    }

    /// Same form over a table of equal length (after relabeling).
    pub fn with_table(&self, vars: &Arc<VarTable>) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.map_args(|a| a.with_table(vars)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, self.coeff.clone(), self.prefactor.clone(), blocks)
    }

    pub fn parse(src: &str, vars: &Arc<VarTable>) -> Result<Self> {
        let mut cur = Cursor::new(src);
        let mut coeff = CycNum::one();
        let mut prefactor = Monomial::one(vars.len());
        let mut blocks = Vec::new();
        loop {
            let at = cur.pos;
            match cur.peek_ident().filter(|id| is_block_keyword(id)) {
                Some(id) => {
                    cur.ident();
                    let declared: Option<usize> = id[5..].parse().ok();
                    cur.expect('(')?;
                    let mut args = Vec::new();
                    loop {
                        args.push(
                            PolyParser {
                                cur: &mut cur,
                                vars,
                            }
                            .expr()?,
                        );
                        if cur.eat(';') {
                            continue;
                        }
                        cur.expect(')')?;
                        break;
                    }
                    if declared.is_some_and(|k| k != args.len()) {
                        return Err(Error::parse(
                            at,
                            format!("{id} expects {} arguments, got {}", &id[5..], args.len()),
                        ));
                    }
                    blocks.push(FactoredCirculant::new(args)?);
                }
                None => {
                    let f = PolyParser {
                        cur: &mut cur,
                        vars,
                    }
                    .factor()?;
                    let (m, c) = f
                        .as_term()
                        .ok_or_else(|| Error::parse(at, "prefactor must be a single term"))?;
                    coeff = &coeff * c;
                    prefactor = prefactor.mul(m);
                }
            }
            if cur.eat('*') {
                continue;
            }
            if !cur.at_end() {
                return Err(cur.error("expected `*` or end of input"));
            }
            break;
        }
        Self::new(vars, coeff, prefactor, blocks)
    }

    /// Parses with a table inferred from first appearance.
    pub fn parse_infer(src: &str) -> Result<Self> {
        let vars = VarTable::new(&infer_vars(src))?;
        Self::parse(src, &vars)
    }

    /// Exponent of `v` in the prefactor.
    pub fn prefactor_exp(&self, v: usize) -> Exp {
        self.prefactor.get(v)
    }
}

fn is_block_keyword(id: &str) -> bool {
    id.strip_prefix("Delta")
        .is_some_and(|r| r.chars().all(|c| c.is_ascii_digit()))
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.coeff.is_one() {
            parts.push(match self.coeff.to_rat() {
                Some(r) if r >= Rat::from_integer(0.into()) => format_rat(&r),
                Some(r) => format!("({})", format_rat(&r)),
                None => format!("[{}]", self.coeff),
            });
        }
        if !self.prefactor.is_one() {
            parts.push(self.prefactor.render(&self.vars));
        }
        parts.extend(self.blocks.iter().map(ToString::to_string));
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("*"))
    }
}
