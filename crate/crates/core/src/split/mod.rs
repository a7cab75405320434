//! Discriminants, splitting of monic polynomials over cyclic covers of the
//! exceptional variables and the deck-group action on the roots.

mod cover;
mod disc;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

pub use cover::{apply_cover_poly, apply_cover_zpoly, Cover};
pub use disc::{
    bareiss_det, discriminant, make_disc_square, resultant, verify_phi_psi, DiscSquare, PhiPsi,
};

use crate::arith::{CycNum, Rat};
use crate::circulant::rotate;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::series::series_kth_root;
use crate::poly::{Exp, Monomial, PuiseuxPoly, VarTable, ZPoly};

/// Roots of a monic polynomial as power series on a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub cover: Cover,
    /// Roots over the cover table, truncated at degree `trunc` in the
    /// variables other than `z`.
    pub roots: Vec<PuiseuxPoly>,
    pub trunc: usize,
}

impl SplitWitness {
    pub fn exponents(&self) -> &[u32] {
        self.cover.exponents()
    }
}

impl fmt::Display for SplitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cover: {}", self.cover.render())?;
        for (i, r) in self.roots.iter().enumerate() {
            writeln!(f, "root {}: {r}", i + 1)?;
        }
        write!(f, "truncation: {}", self.trunc)
    }
}

/// Outcome of checking a witness against the polynomial it should split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub passed: bool,
    /// Lowest degree at which `∏(z − r_j)` and `f` disagree.
    pub failing_degree: Option<String>,
    pub reason: String,
}

fn non_z(table: &Arc<VarTable>, z: usize) -> Vec<usize> {
    table.all().into_iter().filter(|&v| v != z).collect()
}

fn exp_n(n: usize) -> Exp {
    Exp::from_integer(n as i64)
}

fn not_split(n: usize) -> Error {
    Error::DoesNotSplit(n.to_string())
}

/// Computes the roots of `f` on the cover `w_i = v_i^{q_i}` through degree
/// `n`, for degree at most 3. The roots must be power series in the cover
/// variables; otherwise the result is `DoesNotSplit`.
pub fn split_roots(f: &ZPoly, w_vars: &[usize], q: &[u32], n: usize) -> Result<SplitWitness> {
    let cover = Cover::new(f.vars(), w_vars, q)?;
    let g = apply_cover_zpoly(f, &cover)?;
    let vars = non_z(cover.table(), f.z());
    let ne = exp_n(n);
    let (dep, shift) = g.tschirnhausen()?;
    let roots = match g.degree() {
        1 => vec![-&g.coeff(1)],
        2 => {
            let r = series_kth_root(&-&dep.coeff(2), 2, &vars, ne).map_err(|_| not_split(n))?;
            vec![&r - &shift, &(-&r) - &shift]
        }
        3 => {
            let b = dep.coeff(2).scale_rat(&Rat::new((-1).into(), 3.into()));
            let c = dep.coeff(3);
            let disc = &(&c * &c) - &b.pow(3).scale_rat(&Rat::from_integer(4.into()));
            let nw = working_precision(n, &disc, &vars);
            let a = series_kth_root(&disc, 2, &vars, exp_n(nw)).map_err(|_| not_split(n))?;
            cubic_roots(&b, &c, &a, &vars, n, nw)?
                .into_iter()
                .map(|r| &r - &shift)
                .collect()
        }
        k => {
            return Err(Error::DoesNotSplit(format!(
                "{n} (degree {k} is above the supported degree 3)"
            )))
        }
    };
    if roots.iter().any(|r| !r.is_integral()) {
        return Err(not_split(n));
    }
    Ok(SplitWitness {
        cover,
        roots: roots.into_iter().map(|r| r.truncate(ne, &vars)).collect(),
        trunc: n,
    })
}

/// Degree through which intermediate series are computed so that products
/// of roots stay exact through degree `n`.
fn working_precision(n: usize, disc: &PuiseuxPoly, vars: &[usize]) -> usize {
    let d = disc
        .order(vars)
        .finite()
        .map_or(0, |d| d.ceil().to_integer() as usize);
    2 * n + d
}

/// Cardano roots `−(ε^i η₁ + ε^{2i} η₂)` of `z³ − 3Bz + C` given `A` with
/// `A² = C² − 4B³`, computed through degree `nw` and truncated at `n`.
fn cubic_roots(
    b: &PuiseuxPoly,
    c: &PuiseuxPoly,
    a: &PuiseuxPoly,
    vars: &[usize],
    n: usize,
    nw: usize,
) -> Result<Vec<PuiseuxPoly>> {
    let ne = exp_n(n);
    let nwe = exp_n(nw);
    let half = Rat::new(1.into(), 2.into());
    let u1 = (c + a).scale_rat(&half);
    let u2 = (c - a).scale_rat(&half);
    let (u1, u2) = if u1.is_zero() { (u2, u1) } else { (u1, u2) };
    let eta1 = series_kth_root(&u1, 3, vars, nwe).map_err(|_| not_split(n))?;
    let eta2 = series_kth_root(&u2, 3, vars, nwe).map_err(|_| not_split(n))?;
    let bt = b.truncate(ne, vars);
    let eta2 = (0..3)
        .map(|j| eta2.scale(&CycNum::zeta(3, j)))
        .find(|e2| eta1.mul_trunc(e2, vars, ne) == bt)
        .ok_or_else(|| not_split(n))?;
    Ok((0..3i64)
        .map(|i| {
            let s = &eta1.scale(&CycNum::zeta(3, i)) + &eta2.scale(&CycNum::zeta(3, 2 * i));
            (-s).truncate(ne, vars)
        })
        .collect())
}

/// Splits a depressed cubic `z³ − 3Bz + C` whose discriminant is the square
/// `A² = C² − 4B³`, taking cube roots on the cover `w_i = v_i³`.
pub fn cubic_split_from_square_disc(
    f: &ZPoly,
    a: &PuiseuxPoly,
    w_vars: &[usize],
    n: usize,
) -> Result<SplitWitness> {
    if f.degree() != 3 || !f.is_depressed() {
        return Err(Error::Contract("expected a depressed cubic".into()));
    }
    let vars = non_z(f.vars(), f.z());
    let ne = exp_n(n);
    let b = f.coeff(2).scale_rat(&Rat::new((-1).into(), 3.into()));
    let c = f.coeff(3);
    let disc = &(&c * &c) - &b.pow(3).scale_rat(&Rat::from_integer(4.into()));
    if a.mul_trunc(a, &vars, ne) != disc.truncate(ne, &vars) {
        return Err(Error::Contract("A squared is not C^2 - 4B^3".into()));
    }
    let cover = Cover::new(f.vars(), w_vars, &vec![3; w_vars.len()])?;
    let cv = |p: &PuiseuxPoly| apply_cover_poly(p, &cover);
    let nw = working_precision(n, &disc, &vars);
    let roots = cubic_roots(&cv(&b)?, &cv(&c)?, &cv(a)?, &vars, n, nw)?;
    if roots.iter().any(|r| !r.is_integral()) {
        return Err(not_split(n));
    }
    Ok(SplitWitness {
        cover,
        roots: roots.into_iter().map(|r| r.truncate(ne, &vars)).collect(),
        trunc: n,
    })
}

/// Splits a cubic after `make_disc_square`: the transformed polynomial is
/// pulled back to the double cover and depressed, and `√−27·A` serves as the
/// square root of `C² − 4B³` for the cube roots. Returns the depressed cubic
/// with its witness.
pub fn cubic_split_after_square(ds: &DiscSquare) -> Result<(ZPoly, SplitWitness)> {
    if ds.f.degree() != 3 {
        return Err(Error::Contract(format!(
            "expected a cubic, got degree {}",
            ds.f.degree()
        )));
    }
    let g = apply_cover_zpoly(&ds.f, &ds.cover)?;
    let (dep, _) = g.tschirnhausen()?;
    let s = CycNum::from_int(-27)
        .kth_root(2)
        .ok_or_else(|| Error::RootNotInField("sqrt(-27)".into()))?;
    let a = ds.a.scale(&s);
    let w = cubic_split_from_square_disc(&dep, &a, ds.cover.vars(), ds.trunc)?;
    Ok((dep, w))
}

/// Checks `∏(z − r_j) ≡ f` on the cover through the witness degree, and,
/// when `x_ideal` is given, that every root lies in the ideal of those
/// variables.
pub fn verify_split(f: &ZPoly, w: &SplitWitness, x_ideal: Option<&[usize]>) -> Result<SplitCheck> {
    let g = apply_cover_zpoly(f, &w.cover)?;
    let table = w.cover.table();
    let vars = non_z(table, f.z());
    let ne = exp_n(w.trunc);
    let zv = PuiseuxPoly::var_idx(table, f.z(), Exp::one());
    if w.roots.len() != f.degree() {
        return Ok(SplitCheck {
            passed: false,
            failing_degree: None,
            reason: format!(
                "{} roots for a polynomial of degree {}",
                w.roots.len(),
                f.degree()
            ),
        });
    }
    let mut prod = PuiseuxPoly::one(table);
    for r in &w.roots {
        let r = r.with_table(table)?;
        prod = prod.mul_trunc(&(&zv - &r), &vars, ne);
    }
    let diff = &g.to_poly().truncate(ne, &vars) - &prod;
    if let Some(d) = diff.order(&vars).finite() {
        return Ok(SplitCheck {
            passed: false,
            failing_degree: Some(crate::poly::format_exp(&d)),
            reason: format!("product of z minus the roots differs from f in degree {d}"),
        });
    }
    if let Some(xs) = x_ideal {
        for r in &w.roots {
            if r.terms()
                .any(|(m, _)| xs.iter().all(|&x| m.get(x).is_zero()))
            {
                return Ok(SplitCheck {
                    passed: false,
                    failing_degree: None,
                    reason: format!("root {r} is not in the ideal of the x variables"),
                });
            }
        }
    }
    Ok(SplitCheck {
        passed: true,
        failing_degree: None,
        reason: format!("verified through degree {}", w.trunc),
    })
}

/// Permutation of the roots induced by `v_i ↦ ζ_{q_i} v_i`: entry `j` is the
/// index of the image of root `j`.
pub fn root_action(w: &SplitWitness, i: usize) -> Result<Vec<usize>> {
    let v = *w
        .cover
        .vars()
        .get(i)
        .ok_or_else(|| Error::invalid(format!("no covered variable {i}")))?;
    let q = w.cover.exponents()[i] as usize;
    let mut perm = Vec::with_capacity(w.roots.len());
    for r in &w.roots {
        let img = rotate(r, v, q, 1)?;
        let j = w
            .roots
            .iter()
            .position(|s| *s == img)
            .ok_or(Error::NotClosedUnderDeck)?;
        perm.push(j);
    }
    Ok(perm)
}

/// All exponent vectors in `{1..bound}^r` in lexicographic order.
pub fn cover_candidates(r: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=bound).map(move |e| {
                    let mut p = p.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

/// Attempts to split over one cover and verify the result.
pub fn try_split(f: &ZPoly, w_vars: &[usize], q: &[u32], n: usize) -> Option<SplitWitness> {
    let w = split_roots(f, w_vars, q, n).ok()?;
    verify_split(f, &w, None).ok()?.passed.then_some(w)
}

/// The lexicographically first exponent vector in `{1..bound}^r` over which
/// `f` splits through degree `n`, with its witness.
pub fn min_split_exponents(
    f: &ZPoly,
    w_vars: &[usize],
    bound: u32,
    n: usize,
) -> Option<SplitWitness> {
    let candidates = cover_candidates(w_vars.len(), bound);
    par::map(&candidates, |q| try_split(f, w_vars, q, n))
        .into_iter()
        .flatten()
        .next()
}

/// One attempted single-variable cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverAttempt {
    pub exponents: Vec<u32>,
    pub splits: bool,
}

/// Tries every cover that ramifies a single `w` variable to order `deg f`.
pub fn single_variable_covers(f: &ZPoly, w_vars: &[usize], n: usize) -> Vec<CoverAttempt> {
    let k = f.degree() as u32;
    let candidates: Vec<Vec<u32>> = (0..w_vars.len())
        .map(|i| {
            (0..w_vars.len())
                .map(|j| if i == j { k } else { 1 })
                .collect()
        })
        .collect();
    let results = par::map(&candidates, |q| try_split(f, w_vars, q, n).is_some());
    candidates
        .into_iter()
        .zip(results)
        .map(|(exponents, splits)| CoverAttempt { exponents, splits })
        .collect()
}

/// Upper unitriangular matrix with nonnegative integer entries, acting on
/// exponent vectors of the `w` variables by `β_j = Σ_i α_i A_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexMatrix {
    rows: Vec<Vec<i64>>,
}

impl LexMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != r {
                return Err(Error::Dimension("matrix is not square".into()));
            }
            for (j, &a) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => a == 1,
                    std::cmp::Ordering::Greater => a == 0,
                    std::cmp::Ordering::Less => a >= 0,
                };
                if !ok {
                    return Err(Error::invalid(format!(
                        "entry ({i}, {j}) = {a} breaks upper unitriangularity"
                    )));
                }
            }
        }
        Ok(LexMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Image of an exponent vector.
    pub fn apply(&self, alpha: &[Exp]) -> Vec<Exp> {
        (0..self.dim())
            .map(|j| {
                alpha
                    .iter()
                    .zip(&self.rows)
                    .fold(Exp::zero(), |acc, (a, row)| {
                        acc + a * Exp::from_integer(row[j])
                    })
            })
            .collect()
    }
}

/// `ψ_A`: the monomial map `w^α ↦ w^{αA}` on the variables `w_vars`.
pub fn psi_a(f: &PuiseuxPoly, a: &LexMatrix, w_vars: &[usize]) -> Result<PuiseuxPoly> {
    if a.dim() != w_vars.len() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for {} variables",
            a.dim(),
            a.dim(),
            w_vars.len()
        )));
    }
    Ok(f.map_monomials(|m| {
        let alpha: Vec<Exp> = w_vars.iter().map(|&v| m.get(v)).collect();
        let beta = a.apply(&alpha);
        let mut out = m.clone();
        for (&v, e) in w_vars.iter().zip(beta) {
            out.set(v, e);
        }
        out
    }))
}

/// Clears the denominator of the root `numer / w^a` by the substitution
/// `x ↦ w^μ x` for the `x` variables, returning `b(w, w^μ x)`. Every term
/// `w^e x^d` must satisfy `a − e ≤ μ·|d|`.
pub fn clear_denominators(
    numer: &PuiseuxPoly,
    a: Exp,
    w: usize,
    x_vars: &[usize],
    mu: Exp,
) -> Result<PuiseuxPoly> {
    for (m, _) in numer.terms() {
        let d = x_vars.iter().fold(Exp::zero(), |acc, &x| acc + m.get(x));
        if a - m.get(w) > mu * d {
            return Err(Error::DenominatorGrowth);
        }
    }
    let moved = numer.map_monomials(|m| {
        let d = x_vars.iter().fold(Exp::zero(), |acc, &x| acc + m.get(x));
        let mut out = m.clone();
        out.set(w, m.get(w) + mu * d);
        out
    });
    moved.div_monomial(&Monomial::var(numer.vars().len(), w, a))
}
