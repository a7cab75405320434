//! Scripted blow-up sequences: chart selection by path, expected-form checks
//! and per-chart reports.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{blow_up_chart, blow_up_factored_chart, Centre, Chart, DivisorState};
use crate::circulant::{classify_form, ProductForm};
use crate::error::{Error, Result};
use crate::ncdetect::point_label;
use crate::par;
use crate::poly::series::exact_div;
use crate::poly::{parse_poly, Exp, PuiseuxPoly, Role, VarTable};

/// A scripted blow-up sequence as stored in trace files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupTrace {
    pub vars: Vec<String>,
    /// Exceptional labels carried by variables of the initial chart.
    #[serde(default)]
    pub roles: BTreeMap<String, String>,
    /// A polynomial or, when it contains `Delta` blocks, a product form.
    pub initial_form: String,
    #[serde(default)]
    pub steps: Vec<StepSpec>,
}

/// One blow-up applied to every listed chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    /// Variable names or divisor labels, resolved in each parent chart.
    pub centre: Vec<String>,
    /// Label of the new divisor; `D{step}` by default.
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub anchor: Option<String>,
    pub charts: Vec<ChartSpec>,
}

/// A chart to compute, named by its path, with optional expectations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub path: String,
    #[serde(default)]
    pub expect_strict: Option<String>,
    /// Compare the strict transform with `expect_strict` up to a unit factor.
    #[serde(default)]
    pub modulo_units: bool,
    /// Divisor label to carrying variable; `null` for a divisor that no
    /// longer meets the chart.
    #[serde(default)]
    pub expect_divisors: Option<BTreeMap<String, Option<String>>>,
    #[serde(default)]
    pub expect_order: Option<i64>,
    #[serde(default)]
    pub expect_class: Option<String>,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub anchor: Option<String>,
}

/// Classification expected at the generic point where `nonzero` do not vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub nonzero: Vec<String>,
    pub class: String,
}

/// Strict transform in either representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strict {
    Expanded(PuiseuxPoly),
    Factored(ProductForm),
}

impl Strict {
    /// Parses a product form when the text contains a `Delta` block.
    pub fn parse(src: &str, vars: &Arc<VarTable>) -> Result<Self> {
        if src.contains("Delta") {
            Ok(Strict::Factored(ProductForm::parse(src, vars)?))
        } else {
            Ok(Strict::Expanded(parse_poly(src, vars)?))
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        match self {
            Strict::Expanded(p) => p.vars(),
            Strict::Factored(p) => p.vars(),
        }
    }

    pub fn expand(&self) -> Result<PuiseuxPoly> {
        match self {
            Strict::Expanded(p) => Ok(p.clone()),
            Strict::Factored(p) => p.expand(),
        }
    }

    /// Class label at the point where `nonzero` are nonzero and every other
    /// variable vanishes.
    pub fn class_at(&self, nonzero: &[usize]) -> Result<String> {
        if let Strict::Factored(p) = self {
            if let Ok(e) = classify_form(p, nonzero) {
                return Ok(e.id.clone());
            }
        }
        let f = self.expand()?;
        let shift: BTreeMap<usize, PuiseuxPoly> = nonzero
            .iter()
            .map(|&v| {
                let x = PuiseuxPoly::var_idx(f.vars(), v, Exp::from_integer(1));
                (v, &x + &PuiseuxPoly::one(f.vars()))
            })
            .collect();
        Ok(point_label(&f.substitute(&shift)?))
    }
}

impl fmt::Display for Strict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strict::Expanded(p) => write!(f, "{p}"),
            Strict::Factored(p) => write!(f, "{p}"),
        }
    }
}

/// Outcome of one expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub anchor: Option<String>,
    pub path: String,
    pub what: String,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

/// Computed data of one chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub step: usize,
    pub path: String,
    pub centre: String,
    pub multiplicity: String,
    pub strict: String,
    pub divisors: String,
}

/// Result of replaying a trace.
#[derive(Clone, Debug, Default)]
pub struct TraceReport {
    pub charts: Vec<ChartReport>,
    pub checks: Vec<Check>,
    states: BTreeMap<String, (Strict, DivisorState)>,
}

impl TraceReport {
    /// Strict transform recorded for a chart path (`""` is the initial chart).
    pub fn strict(&self, path: &str) -> Option<&Strict> {
        self.states.get(path).map(|(s, _)| s)
    }

    pub fn divisors(&self, path: &str) -> Option<&DivisorState> {
        self.states.get(path).map(|(_, d)| d)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

impl BlowupTrace {
    /// Parses a trace from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Load {
            file: "trace".into(),
            message: format!("line {}: {e}", e.line()),
        })
    }

    /// The variable table with roles from `roles`.
    pub fn table(&self) -> Result<Arc<VarTable>> {
        for v in self.roles.keys() {
            if !self.vars.contains(v) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        let roles = self
            .vars
            .iter()
            .map(|v| match self.roles.get(v) {
                Some(l) => Role::Exceptional(l.clone()),
                None => Role::Ambient,
            })
            .collect();
        VarTable::with_roles(&self.vars, roles)
    }
}

fn resolve_centre(tokens: &[String], vars: &VarTable, d: &DivisorState) -> Result<Centre> {
    let mut idx = Vec::with_capacity(tokens.len());
    for t in tokens {
        match d.var_of(t).or_else(|| vars.index_of(t)) {
            Some(v) => idx.push(v),
            None => {
                return Err(Error::invalid(format!(
                    "centre token `{t}` is neither a variable nor a divisor of this chart"
                )))
            }
        }
    }
    Centre::new(idx, vars.len())
}

fn parent_of<'a>(
    path: &'a str,
    states: &BTreeMap<String, (Strict, DivisorState)>,
    vars: &VarTable,
) -> Option<(&'a str, usize)> {
    (0..path.len())
        .rev()
        .filter(|&i| path.is_char_boundary(i))
        .filter(|&i| states.contains_key(&path[..i]))
        .find_map(|i| vars.index_of(&path[i..]).map(|v| (&path[..i], v)))
}

fn transform(s: &Strict, chart: Chart, centre: &Centre) -> Result<(Strict, Exp)> {
    match s {
        Strict::Factored(p) => {
            let c = blow_up_factored_chart(p, chart, centre)?;
            Ok((Strict::Factored(c.strict), c.multiplicity))
        }
        Strict::Expanded(f) => {
            let c = blow_up_chart(f, chart, centre)?;
            Ok((Strict::Expanded(c.strict), c.multiplicity))
        }
    }
}

fn same_up_to_unit(got: &PuiseuxPoly, expected: &PuiseuxPoly) -> bool {
    match exact_div(got, expected) {
        Ok(q) => !q.constant_term().is_zero(),
        Err(_) => false,
    }
}

fn check_chart(
    spec: &ChartSpec,
    strict: &Strict,
    d: &DivisorState,
    out: &mut Vec<Check>,
) -> Result<()> {
    let vars = strict.vars();
    let mut push = |what: String, passed: bool, expected: String, got: String| {
        out.push(Check {
            anchor: spec.anchor.clone(),
            path: spec.path.clone(),
            what,
            passed,
            expected,
            got,
        })
    };
    if let Some(src) = &spec.expect_strict {
        let expected = Strict::parse(src, vars)?;
        let (g, e) = (strict.expand()?, expected.expand()?);
        let passed = if spec.modulo_units {
            same_up_to_unit(&g, &e)
        } else {
            g == e
        };
        let what = if spec.modulo_units {
            "strict transform up to a unit"
        } else {
            "strict transform"
        };
        push(
            what.into(),
            passed,
            expected.to_string(),
            strict.to_string(),
        );
    }
    if let Some(map) = &spec.expect_divisors {
        for (label, var) in map {
            let got = d.var_of(label).map(|v| vars.name(v).to_string());
            let passed = match var {
                Some(name) => {
                    vars.index_of(name).is_some() && got.as_deref() == Some(name.as_str())
                }
                None => got.is_none(),
            };
            let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "none".into());
            push(format!("divisor {label}"), passed, show(var), show(&got));
        }
    }
    if let Some(o) = spec.expect_order {
        let got = strict.expand()?.total_order();
        let passed = got.finite() == Some(Exp::from_integer(o));
        push(
            "order at origin".into(),
            passed,
            o.to_string(),
            got.to_string(),
        );
    }
    if let Some(class) = &spec.expect_class {
        let got = strict.class_at(&[])?;
        push("class at origin".into(), &got == class, class.clone(), got);
    }
    for p in &spec.points {
        let nz = vars.indices(&p.nonzero)?;
        let got = strict.class_at(&nz)?;
        push(
            format!("class where {} nonzero", p.nonzero.join(", ")),
            got == p.class,
            p.class.clone(),
            got,
        );
    }
    Ok(())
}

/// Replays a trace. Every step computes its listed charts from their parents
/// (the longest already computed path prefix followed by a variable name),
/// independent charts of one step in parallel, and evaluates every
/// expectation without stopping at failures.
pub fn run_sequence(trace: &BlowupTrace) -> Result<TraceReport> {
    let vars = trace.table()?;
    let initial = Strict::parse(&trace.initial_form, &vars)?;
    let mut report = TraceReport::default();
    report
        .states
        .insert(String::new(), (initial, DivisorState::from_roles(&vars)));
    for (i, step) in trace.steps.iter().enumerate() {
        let step_no = i + 1;
        let label = step.label.clone().unwrap_or_else(|| format!("D{step_no}"));
        let mut jobs = Vec::with_capacity(step.charts.len());
        for spec in &step.charts {
            if report.states.contains_key(&spec.path)
                || jobs
                    .iter()
                    .any(|(s, _, _): &(&ChartSpec, _, _)| s.path == spec.path)
            {
                return Err(Error::invalid(format!(
                    "duplicate chart path `{}`",
                    spec.path
                )));
            }
            let (parent, v) = parent_of(&spec.path, &report.states, &vars).ok_or_else(|| {
                Error::invalid(format!("chart path `{}` has no computed parent", spec.path))
            })?;
            jobs.push((spec, parent.to_string(), v));
        }
        let results = par::map(&jobs, |(spec, parent, v)| {
            let (strict, divisors) = &report.states[parent];
            let run = || -> Result<(Strict, DivisorState, ChartReport, Vec<Check>)> {
                let centre = resolve_centre(&step.centre, &vars, divisors)?;
                let mut chart = Chart::new(&vars, &centre, *v, divisors, &label, parent)?;
                chart.divisors.set_next(step_no + 1);
                let d = chart.divisors.clone();
                let (s, m) = transform(strict, chart, &centre)?;
                let mut checks = Vec::new();
                check_chart(spec, &s, &d, &mut checks)?;
                let rep = ChartReport {
                    step: step_no,
                    path: spec.path.clone(),
                    centre: centre.render(&vars),
                    multiplicity: crate::poly::format_exp(&m),
                    strict: s.to_string(),
                    divisors: d.render(&vars),
                };
                Ok((s, d, rep, checks))
            };
            run().map_err(|e| Error::at_chart(&spec.path, e))
        });
        for r in results {
            let (s, d, rep, checks) = r?;
            report.states.insert(rep.path.clone(), (s, d));
            report.charts.push(rep);
            report.checks.extend(checks);
        }
    }
    Ok(report)
}
