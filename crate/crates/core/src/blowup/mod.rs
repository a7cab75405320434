//! Blow-ups of coordinate-subspace centres: chart maps, total and strict
//! transforms of expanded and factored hypersurfaces, and exceptional-divisor
//! bookkeeping.

mod trace;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

pub use trace::{
    run_sequence, BlowupTrace, ChartReport, ChartSpec, Check, PointSpec, StepSpec, Strict,
    TraceReport,
};

use crate::arith::CycNum;
use crate::circulant::{FactoredCirculant, ProductForm};
use crate::error::{Error, Result};
use crate::poly::{Exp, Monomial, PuiseuxPoly, Role, VarTable};

/// The coordinate subspace `{v = 0 : v ∈ vars}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Centre {
    vars: Vec<usize>,
}

impl Centre {
    /// A centre of codimension at least 2 over a table of `n` variables.
    pub fn new(mut vars: Vec<usize>, n: usize) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.len() < 2 {
            return Err(Error::CentreTooSmall(vars.len()));
        }
        if let Some(&v) = vars.iter().find(|&&v| v >= n) {
            return Err(Error::invalid(format!(
                "centre variable index {v} out of range"
            )));
        }
        Ok(Centre { vars })
    }

    pub fn named<S: AsRef<str>>(table: &VarTable, names: &[S]) -> Result<Self> {
        Self::new(table.indices(names)?, table.len())
    }

    /// The whole coordinate origin.
    pub fn origin(table: &VarTable) -> Result<Self> {
        Self::new(table.all(), table.len())
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn render(&self, table: &VarTable) -> String {
        let names: Vec<&str> = self.vars.iter().map(|&v| table.name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Exceptional-divisor labels carried by coordinate hyperplanes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorState {
    labels: BTreeMap<usize, String>,
    next: usize,
}

impl DivisorState {
    /// No labelled divisors; the first fresh label is `D1`.
    pub fn new() -> Self {
        DivisorState {
            labels: BTreeMap::new(),
            next: 1,
        }
    }

    /// Labels taken from the exceptional roles of a table.
    pub fn from_roles(table: &VarTable) -> Self {
        let mut d = Self::new();
        for (i, r) in table.roles().iter().enumerate() {
            if let Role::Exceptional(l) = r {
                d.labels.insert(i, l.clone());
            }
        }
        d
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// The variable whose hyperplane carries `label`.
    pub fn var_of(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
    }

    /// The label the next blow-up will introduce.
    pub fn fresh_label(&self) -> String {
        format!("D{}", self.next)
    }

    /// Assigns `label` to the hyperplane of `v`; the previous divisor on `v`
    /// (and any other carrier of `label`) no longer meets the chart.
    pub fn assign(&mut self, v: usize, label: &str) {
        self.labels.retain(|_, l| l != label);
        self.labels.insert(v, label.to_string());
    }

    /// Sets the counter so that the next fresh label is `D{n}`.
    pub fn set_next(&mut self, n: usize) {
        self.next = n;
    }

    pub fn next_index(&self) -> usize {
        self.next
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &str)> {
        self.labels.iter().map(|(&v, l)| (v, l.as_str()))
    }

    pub fn render(&self, table: &VarTable) -> String {
        let mut items: Vec<(String, &str)> = self
            .labels
            .iter()
            .map(|(&v, l)| (l.clone(), table.name(v)))
            .collect();
        items.sort();
        let parts: Vec<String> = items
            .iter()
            .map(|(l, v)| format!("{l}={{{v}=0}}"))
            .collect();
        parts.join(", ")
    }
}

/// One coordinate chart of a blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub chart_var: usize,
    /// Image of every centre variable; the chart variable maps to itself.
    pub substitution: BTreeMap<usize, PuiseuxPoly>,
    pub divisors: DivisorState,
    pub path: String,
}

impl Chart {
    /// The standard chart map for `chart_var`: every other centre variable
    /// `v` becomes `chart_var · v`. The chart variable takes `label`.
    pub fn new(
        vars: &Arc<VarTable>,
        centre: &Centre,
        chart_var: usize,
        divisors: &DivisorState,
        label: &str,
        parent_path: &str,
    ) -> Result<Self> {
        if !centre.contains(chart_var) {
            return Err(Error::invalid(format!(
                "chart variable {} is not in the centre {}",
                vars.name(chart_var),
                centre.render(vars)
            )));
        }
        let t = PuiseuxPoly::var_idx(vars, chart_var, Exp::from_integer(1));
        let mut substitution = BTreeMap::new();
        for &v in centre.vars() {
            let img = if v == chart_var {
                t.clone()
            } else {
                &t * &PuiseuxPoly::var_idx(vars, v, Exp::from_integer(1))
            };
            substitution.insert(v, img);
        }
        let mut divisors = divisors.clone();
        divisors.assign(chart_var, label);
        if label == divisors.fresh_label() {
            divisors.next += 1;
        }
        Ok(Chart {
            chart_var,
            substitution,
            divisors,
            path: format!("{parent_path}{}", vars.name(chart_var)),
        })
    }
}

/// Total and strict transform of an expanded hypersurface in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTransform {
    pub chart: Chart,
    /// Power of the chart variable factored from the total transform.
    pub multiplicity: Exp,
    pub total: PuiseuxPoly,
    pub strict: PuiseuxPoly,
}

/// Strict transform of a product form in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredChart {
    pub chart: Chart,
    pub multiplicity: Exp,
    pub strict: ProductForm,
}

impl fmt::Display for ChartTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-chart: {}", self.chart.path, self.strict)
    }
}

/// Order of `f` along the centre.
pub fn order_along(f: &PuiseuxPoly, c: &Centre) -> Result<Exp> {
    f.order(c.vars()).finite().ok_or(Error::ZeroPolynomial)
}

/// Transform of `f` in the chart of `chart_var`.
pub fn blow_up_chart(f: &PuiseuxPoly, chart: Chart, c: &Centre) -> Result<ChartTransform> {
    let m = order_along(f, c)?;
    let total = f.substitute(&chart.substitution)?;
    let strict = total
        .div_monomial(&Monomial::var(f.vars().len(), chart.chart_var, m))
        .map_err(|e| Error::Internal(format!("strict transform: {e}")))?;
    Ok(ChartTransform {
        chart,
        multiplicity: m,
        total,
        strict,
    })
}

/// Blows up `c`, returning one chart per centre variable. The chart variable
/// takes `label`, or the next fresh label when `label` is `None`.
pub fn blow_up(
    f: &PuiseuxPoly,
    c: &Centre,
    d: &DivisorState,
    label: Option<&str>,
) -> Result<Vec<ChartTransform>> {
    let label = label.map_or_else(|| d.fresh_label(), str::to_string);
    c.vars()
        .iter()
        .map(|&v| blow_up_chart(f, Chart::new(f.vars(), c, v, d, &label, "")?, c))
        .collect()
}

/// Factored strict transform in one chart: each block's arguments are divided
/// by their common power of the chart variable and the prefactor loses its
/// chart-variable power. The expansion is checked against the expanded strict
/// transform.
pub fn blow_up_factored_chart(p: &ProductForm, chart: Chart, c: &Centre) -> Result<FactoredChart> {
    let vars = p.vars();
    let t = chart.chart_var;
    let n = vars.len();
    let moved = p.substitute(&chart.substitution)?;
    let mut total_power = moved.prefactor().get(t);
    let mut prefactor = moved.prefactor().clone();
    prefactor.set(t, Exp::zero());
    let mut coeff = moved.coeff().clone();
    let mut blocks = Vec::with_capacity(moved.blocks().len());
    for b in moved.blocks() {
        let mu = b
            .args()
            .iter()
            .filter(|a| !a.is_zero())
            .filter_map(|a| a.order(&[t]).finite())
            .min()
            .unwrap_or_else(Exp::zero);
        let divisor = Monomial::var(n, t, mu);
        let args = b
            .args()
            .iter()
            .map(|a| a.div_monomial(&divisor))
            .collect::<Result<Vec<_>>>()?;
        total_power += mu * Exp::from_integer(b.k() as i64);
        if b.k() == 1 && args[0].is_constant() {
            coeff = &coeff * &args[0].constant_term();
            continue;
        }
        blocks.push(FactoredCirculant::new(args)?);
    }
    if coeff.is_zero() {
        return Err(Error::Representation("strict transform vanishes".into()));
    }
    let strict = ProductForm::new(vars, coeff, prefactor, blocks)?;
    let expanded = blow_up_chart(&p.expand()?, chart.clone(), c)?;
    if !expanded.multiplicity.is_integer() {
        return Err(Error::Internal(format!(
            "expanded multiplicity {} is not an integer",
            expanded.multiplicity
        )));
    }
    if total_power != expanded.multiplicity {
        return Err(Error::Representation(format!(
            "factored division removes {}/{} powers of {} but the expanded order is {}",
            total_power.numer(),
            total_power.denom(),
            vars.name(t),
            expanded.multiplicity
        )));
    }
    if strict.expand()? != expanded.strict {
        return Err(Error::Internal(format!(
            "factored strict transform {strict} does not expand to {}",
            expanded.strict
        )));
    }
    Ok(FactoredChart {
        chart,
        multiplicity: total_power,
        strict,
    })
}

/// Factored blow-up of `c`, one chart per centre variable.
pub fn blow_up_factored(
    p: &ProductForm,
    c: &Centre,
    d: &DivisorState,
    label: Option<&str>,
) -> Result<Vec<FactoredChart>> {
    let label = label.map_or_else(|| d.fresh_label(), str::to_string);
    c.vars()
        .iter()
        .map(|&v| blow_up_factored_chart(p, Chart::new(p.vars(), c, v, d, &label, "")?, c))
        .collect()
}

/// The common weighted degree of all terms, if there is one.
pub fn is_weighted_homogeneous(f: &PuiseuxPoly, weights: &[Exp]) -> Option<Exp> {
    if weights.len() != f.vars().len() {
        return None;
    }
    let mut deg = None;
    for (m, _) in f.terms() {
        let d: Exp =
            m.0.iter()
                .zip(weights)
                .fold(Exp::zero(), |acc, (e, w)| acc + e * w);
        match deg {
            None => deg = Some(d),
            Some(x) if x != d => return None,
            _ => {}
        }
    }
    deg
}

/// Product form with a unit coefficient, used when comparing chart formulas.
pub fn normalized_coeff(p: &ProductForm) -> Result<ProductForm> {
    p.with_parts(CycNum::one(), p.prefactor().clone(), p.blocks().to_vec())
}
