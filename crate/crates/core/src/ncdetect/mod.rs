//! Point classification: tangent-cone factorization, Hensel lifting,
//! normal-crossings verdicts and the `inv` tuples of normal crossings.

mod cone;
mod hensel;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use cone::univariate_roots;
pub use hensel::{hensel_lift, HenselOutcome};

use crate::arith::{format_rat, CycNum, Rat};
use crate::circulant::{classify_form, FactoredCirculant, ProductForm};
use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, Order, PuiseuxPoly, ZPoly};

/// Default truncation degree for lifting.
pub const DEFAULT_TRUNC: usize = 12;

/// Outcome of classifying the germ of `f = 0` at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    /// `f` does not vanish at the point.
    Unit,
    Smooth,
    /// `k` transverse smooth branches; `snc` when every factor is defined
    /// over the rationals.
    Nc {
        k: usize,
        snc: bool,
    },
    /// Order `k` and provably not normal crossings.
    NonNc {
        k: usize,
    },
    /// The tangent cone did not split into linear forms.
    Unresolved {
        order: usize,
        trunc: usize,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unit => f.write_str("unit"),
            Verdict::Smooth => f.write_str("smooth"),
            Verdict::Nc { k, snc: true } => write!(f, "snc({k})"),
            Verdict::Nc { k, snc: false } => write!(f, "nc({k})"),
            Verdict::NonNc { k } => write!(f, "order_{k}_non_nc"),
            Verdict::Unresolved { trunc, .. } => write!(f, "unresolved_at_order_{trunc}"),
        }
    }
}

/// Smallest cyclotomic field containing the data of a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldNote {
    Rational,
    NeedsExtension(u32),
}

impl FieldNote {
    fn of<'a>(polys: impl IntoIterator<Item = &'a PuiseuxPoly>) -> Self {
        let n = polys
            .into_iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.order()))
            .fold(1u32, |acc, o| acc.lcm(&o));
        if n <= 2 {
            FieldNote::Rational
        } else {
            FieldNote::NeedsExtension(n)
        }
    }
}

impl fmt::Display for FieldNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldNote::Rational => f.write_str("rational"),
            FieldNote::NeedsExtension(n) => write!(f, "needs zeta{n}"),
        }
    }
}

/// Full classification record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Order of `f` at the point.
    pub k: usize,
    pub field_note: FieldNote,
    /// Tangent-cone factors when the cone split.
    pub cone: Vec<PuiseuxPoly>,
    /// Lifted factors for an nc verdict.
    pub witness: Vec<PuiseuxPoly>,
    /// First obstructed degree when lifting failed.
    pub obstruction: Option<usize>,
    pub reason: String,
}

impl Classification {
    fn simple(verdict: Verdict, k: usize, reason: &str) -> Self {
        Classification {
            verdict,
            k,
            field_note: FieldNote::Rational,
            cone: Vec::new(),
            witness: Vec::new(),
            obstruction: None,
            reason: reason.to_string(),
        }
    }

    pub fn is_nc(&self) -> bool {
        matches!(self.verdict, Verdict::Nc { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "order: {}", self.k)?;
        writeln!(f, "field: {}", self.field_note)?;
        if !self.cone.is_empty() {
            let parts: Vec<String> = self.cone.iter().map(|c| format!("({c})")).collect();
            writeln!(f, "tangent cone: {}", parts.join("*"))?;
        }
        for (i, w) in self.witness.iter().enumerate() {
            writeln!(f, "branch {}: {w}", i + 1)?;
        }
        if let Some(d) = self.obstruction {
            writeln!(f, "obstruction degree: {d}")?;
        }
        write!(f, "reason: {}", self.reason)
    }
}

/// Factors the initial form of `f` in `vars` into linear forms, with
/// multiplicity. `None` when the initial form does not split or involves
/// variables outside `vars`.
pub fn tangent_cone_factors(f: &PuiseuxPoly, vars: &[usize]) -> Result<Option<Vec<PuiseuxPoly>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_integral() {
        return Err(Error::FractionalExponent(f.to_string()));
    }
    let g = f.initial_form(vars)?;
    if g.support_vars().iter().any(|v| !vars.contains(v)) {
        return Ok(None);
    }
    Ok(cone::split_form(&g, vars))
}

/// Classifies the germ of `f = 0` at the origin, lifting through total degree
/// `trunc`.
pub fn classify_point(f: &PuiseuxPoly, trunc: usize) -> Result<Classification> {
    let all = f.vars().all();
    let k = match f.total_order() {
        Order::Infinite => return Err(Error::ZeroPolynomial),
        Order::Finite(o) if !o.is_integer() => {
            return Err(Error::FractionalExponent(f.to_string()))
        }
        Order::Finite(o) => o.to_integer() as usize,
    };
    if !f.is_integral() {
        return Err(Error::FractionalExponent(f.to_string()));
    }
    if k == 0 {
        return Ok(Classification::simple(
            Verdict::Unit,
            0,
            "nonzero constant term",
        ));
    }
    if k == 1 {
        return Ok(Classification::simple(
            Verdict::Smooth,
            1,
            "nonzero linear part",
        ));
    }
    let Some(cone) = tangent_cone_factors(f, &all)? else {
        return Ok(Classification::simple(
            Verdict::Unresolved { order: k, trunc },
            k,
            "tangent cone does not split into linear forms",
        ));
    };
    let mut c = Classification::simple(Verdict::NonNc { k }, k, "");
    c.field_note = FieldNote::of(&cone);
    c.cone = cone;
    for i in 0..k {
        for j in (i + 1)..k {
            if cone::proportional(&c.cone[i], &c.cone[j], &all) {
                c.reason = "repeated tangent-cone factor".into();
                return Ok(c);
            }
        }
    }
    let rows: Vec<Vec<CycNum>> = c.cone.iter().map(|l| cone::linear_row(l, &all)).collect();
    if crate::arith::linalg::rank(&rows) < k {
        c.reason = "tangent-cone factors are linearly dependent".into();
        return Ok(c);
    }
    match hensel_lift(f, &c.cone, trunc.max(k))? {
        HenselOutcome::Lifted(w) => {
            let note = FieldNote::of(c.cone.iter().chain(&w));
            c.field_note = note;
            c.verdict = Verdict::Nc {
                k,
                snc: note == FieldNote::Rational,
            };
            c.witness = w;
            c.reason = format!("lift verified through degree {}", trunc.max(k));
        }
        HenselOutcome::Obstructed(d) => {
            c.obstruction = Some(d);
            c.reason = format!("lifting obstructed in degree {d}");
        }
    }
    Ok(c)
}

/// Short label of the germ at the origin: a catalog id when one applies,
/// otherwise the verdict.
pub fn point_label(f: &PuiseuxPoly) -> String {
    match classify_point(f, DEFAULT_TRUNC) {
        Ok(c) => match c.verdict {
            Verdict::Nc { k, .. } => format!("nc{k}"),
            Verdict::Unit | Verdict::Smooth => c.verdict.to_string(),
            _ => quadratic_label(f).unwrap_or_else(|| c.verdict.to_string()),
        },
        Err(e) => format!("error: {e}"),
    }
}

/// Recognizes `z² − m·u` with `m` a monomial and `u` a unit as the circulant
/// form `Δ₂(z, m^{1/2})`.
fn quadratic_label(f: &PuiseuxPoly) -> Option<String> {
    let n = f.vars().len();
    for z in 0..n {
        let lead = f.coeff(&Monomial::var(n, z, Exp::from_integer(2)));
        if lead.is_zero() || f.max_degree(&[z]) != Exp::from_integer(2) {
            continue;
        }
        let Ok(lead_inv) = lead.inverse() else {
            continue;
        };
        let Ok(monic) = ZPoly::from_poly(&f.scale(&lead_inv), z) else {
            continue;
        };
        let Ok((depressed, _)) = monic.tschirnhausen() else {
            continue;
        };
        let b = depressed.coeff(2);
        if b.is_zero() {
            continue;
        }
        let all = f.vars().all();
        let Ok((m, u)) = (-&b).monomial_part(&all) else {
            continue;
        };
        if u.constant_term().is_zero() {
            continue;
        }
        let zv = PuiseuxPoly::var_idx(f.vars(), z, Exp::one());
        let root = PuiseuxPoly::monomial(f.vars(), m.pow(Exp::new(1, 2)));
        let block = FactoredCirculant::new(vec![zv, root]).ok()?;
        let form = ProductForm::from_blocks(f.vars(), vec![block]).ok()?;
        if let Ok(e) = classify_form(&form, &[]) {
            return Some(e.id.clone());
        }
    }
    None
}

/// One entry of an `inv` tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvEntry {
    Num(Rat),
    Infinity,
}

/// Alternating tuple `(ν₁, s₁, …, ν_t, s_t, tail)` compared
/// lexicographically with infinity greatest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvTuple {
    pub entries: Vec<InvEntry>,
}

impl InvTuple {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Ord for InvTuple {
    fn cmp(&self, o: &Self) -> Ordering {
        self.entries.cmp(&o.entries)
    }
}

impl PartialOrd for InvTuple {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for InvTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                InvEntry::Num(r) => format_rat(r),
                InvEntry::Infinity => "inf".to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `inv` of normal crossings of `p` branches with `r` exceptional
/// components: `(p, r, 1, 0, …, 1, 0, ∞)` with `p + r` pairs.
pub fn inv_nc(p: usize, r: usize) -> Result<InvTuple> {
    if p == 0 {
        return Err(Error::invalid("inv_nc needs p >= 1"));
    }
    let num = |n: usize| InvEntry::Num(Rat::from_integer((n as i64).into()));
    let mut entries = vec![num(p), num(r)];
    for _ in 1..(p + r) {
        entries.push(InvEntry::Num(Rat::one()));
        entries.push(InvEntry::Num(Rat::zero()));
    }
    entries.push(InvEntry::Infinity);
    Ok(InvTuple { entries })
}

/// Lexicographic comparison of `inv` tuples.
pub fn lex_compare(a: &InvTuple, b: &InvTuple) -> Ordering {
    a.cmp(b)
}
