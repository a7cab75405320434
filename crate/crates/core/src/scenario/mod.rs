//! Scripted scenarios: a built-in corpus of blow-up sequences, splitting and
//! classification checks, and a runner producing per-assertion reports.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::blowup::{run_sequence, BlowupTrace, Strict, TraceReport};
use crate::circulant::ProductForm;
use crate::error::{Error, Result};
use crate::ncdetect::DEFAULT_TRUNC;
use crate::par;
use crate::poly::{parse_poly, PuiseuxPoly, VarTable, ZPoly};
use crate::split;

const CORPUS: &[(&str, &str)] = &[
    (
        "cp4-neighbors.json",
        include_str!("../../corpus/cp4-neighbors.json"),
    ),
    (
        "smooth-cp3.json",
        include_str!("../../corpus/smooth-cp3.json"),
    ),
    ("cp2cp2.json", include_str!("../../corpus/cp2cp2.json")),
    (
        "exc-r-cp2.json",
        include_str!("../../corpus/exc-r-cp2.json"),
    ),
    ("whitney.json", include_str!("../../corpus/whitney.json")),
    (
        "example-1-9.json",
        include_str!("../../corpus/example-1-9.json"),
    ),
    ("irred2pt.json", include_str!("../../corpus/irred2pt.json")),
    (
        "prop-lim3.json",
        include_str!("../../corpus/prop-lim3.json"),
    ),
    (
        "minprecirc.json",
        include_str!("../../corpus/minprecirc.json"),
    ),
    ("cubics.json", include_str!("../../corpus/cubics.json")),
];

/// A polynomial given inline or taken from a chart of the most recent trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Text(String),
    Chart { chart: String },
}

/// One scripted operation with its expectations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Op {
    /// Replays a blow-up sequence and checks every chart expectation.
    Trace { anchor: String, trace: BlowupTrace },
    /// Expands a product form and compares with a polynomial.
    Expand {
        anchor: String,
        form: String,
        expect: String,
    },
    /// Class label at the point where `nonzero` do not vanish.
    Classify {
        anchor: String,
        poly: Source,
        #[serde(default)]
        nonzero: Vec<String>,
        expect: String,
    },
    Disc {
        anchor: String,
        poly: Source,
        z: String,
        expect: String,
    },
    Tschirnhausen {
        anchor: String,
        poly: Source,
        z: String,
        expect: String,
    },
    /// Splits over the cover `w_i = v_i^{q_i}`; optionally checks the same
    /// witness against another polynomial.
    Split {
        anchor: String,
        poly: Source,
        z: String,
        w: Vec<String>,
        q: Vec<u32>,
        expect: bool,
        #[serde(default)]
        x_ideal: Option<Vec<String>>,
        #[serde(default)]
        verify_on: Option<Source>,
        #[serde(default)]
        expect_on: Option<bool>,
    },
    MinSplit {
        anchor: String,
        poly: Source,
        z: String,
        w: Vec<String>,
        #[serde(default)]
        bound: Option<u32>,
        #[serde(default)]
        expect: Option<Vec<u32>>,
        /// Every returned exponent must be one of these.
        #[serde(default)]
        expect_within: Option<Vec<u32>>,
    },
    /// Order of the deck action of each covered variable on the roots.
    RootAction {
        anchor: String,
        poly: Source,
        z: String,
        w: Vec<String>,
        q: Vec<u32>,
        expect_orders: Vec<usize>,
    },
    /// Whether each single-variable cover of order `deg f` splits.
    Normality {
        anchor: String,
        poly: Source,
        z: String,
        w: Vec<String>,
        expect: Vec<bool>,
    },
    /// Blow-ups making the discriminant a square on a double cover; for
    /// cubics optionally followed by the splitting from the square root.
    MakeDiscSquare {
        anchor: String,
        poly: Source,
        z: String,
        phi: String,
        x: Vec<String>,
        w: Vec<String>,
        #[serde(default)]
        expect_steps: Option<usize>,
        #[serde(default)]
        cubic_split: bool,
    },
}

/// A scenario as stored in a corpus file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub description: String,
    /// Variables of inline polynomials; inferred from the text when absent.
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    #[serde(default)]
    pub trunc: Option<usize>,
    pub ops: Vec<Op>,
}

impl Scenario {
    /// Parses a scenario, reporting `file` and the line on failure.
    pub fn from_json(file: &str, text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Load {
            file: file.to_string(),
            message: format!("line {}: {e}", e.line()),
        })
    }
}

/// The built-in corpus, in a fixed order with unique ids.
pub fn corpus() -> Result<Vec<Scenario>> {
    let mut out: Vec<Scenario> = Vec::with_capacity(CORPUS.len());
    for (file, text) in CORPUS {
        let s = Scenario::from_json(file, text)?;
        if out.iter().any(|o| o.id == s.id) {
            return Err(Error::Load {
                file: file.to_string(),
                message: format!("duplicate scenario id {}", s.id),
            });
        }
        out.push(s);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub got: String,
}

/// Outcome of running one scenario.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub assertions: Vec<Assertion>,
    pub trunc: usize,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn passed(&self) -> usize {
        self.assertions
            .iter()
            .filter(|a| a.status == Status::Pass)
            .count()
    }

    pub fn failed(&self) -> usize {
        self.assertions.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scenario {}: {} passed, {} failed (N = {}, {:.1} ms)",
            self.scenario,
            self.passed(),
            self.failed(),
            self.trunc,
            self.wall_time_ms
        )?;
        for a in self.assertions.iter().filter(|a| a.status != Status::Pass) {
            writeln!(f, "  {} [{}]", a.status, a.anchor)?;
            writeln!(f, "    expected: {}", a.expected)?;
            writeln!(f, "    got:      {}", a.got)?;
        }
        Ok(())
    }
}

/// Runtime state of one scenario run.
struct Run<'a> {
    scenario: &'a Scenario,
    trunc: usize,
    last_trace: Option<TraceReport>,
    out: Vec<Assertion>,
}

impl Run<'_> {
    fn push(
        &mut self,
        anchor: &str,
        passed: bool,
        expected: impl Into<String>,
        got: impl Into<String>,
    ) {
        self.out.push(Assertion {
            anchor: anchor.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            expected: expected.into(),
            got: got.into(),
        });
    }

    fn error(&mut self, anchor: &str, expected: impl Into<String>, e: &Error) {
        self.out.push(Assertion {
            anchor: anchor.to_string(),
            status: Status::Error,
            expected: expected.into(),
            got: e.to_string(),
        });
    }

    fn text_table(&self, text: &str) -> Result<Arc<VarTable>> {
        match &self.scenario.vars {
            Some(v) => VarTable::new(v),
            None => VarTable::new(&crate::poly::infer_vars(text)),
        }
    }

    fn strict(&self, src: &Source) -> Result<Strict> {
        match src {
            Source::Text(t) => Strict::parse(t, &self.text_table(t)?),
            Source::Chart { chart } => self
                .last_trace
                .as_ref()
                .and_then(|r| r.strict(chart))
                .cloned()
                .ok_or_else(|| Error::invalid(format!("no computed chart `{chart}`"))),
        }
    }

    fn poly(&self, src: &Source) -> Result<PuiseuxPoly> {
        self.strict(src)?.expand()
    }

    fn zpoly(&self, src: &Source, z: &str) -> Result<ZPoly> {
        ZPoly::from_named(&self.poly(src)?, z)
    }

    fn op(&mut self, op: &Op) {
        match op {
            Op::Trace { anchor, trace } => match run_sequence(trace) {
                Ok(rep) => {
                    for c in &rep.checks {
                        let a = format!("{}: {}", c.anchor.as_deref().unwrap_or(anchor), c.what);
                        self.push(&a, c.passed, c.expected.clone(), c.got.clone());
                    }
                    self.last_trace = Some(rep);
                }
                Err(e) => {
                    self.error(anchor, "trace replays", &e);
                    self.last_trace = None;
                }
            },
            Op::Expand {
                anchor,
                form,
                expect,
            } => {
                let r = (|| -> Result<(PuiseuxPoly, PuiseuxPoly)> {
                    let t = self.text_table(form)?;
                    let got = ProductForm::parse(form, &t)?.expand()?;
                    Ok((got, parse_poly(expect, &t)?))
                })();
                match r {
                    Ok((got, want)) => {
                        self.push(anchor, got == want, want.to_string(), got.to_string())
                    }
                    Err(e) => self.error(anchor, expect.clone(), &e),
                }
            }
            Op::Classify {
                anchor,
                poly,
                nonzero,
                expect,
            } => {
                let r = self
                    .strict(poly)
                    .and_then(|s| s.class_at(&s.vars().indices(nonzero)?));
                match r {
                    Ok(got) => self.push(anchor, &got == expect, expect.clone(), got),
                    Err(e) => self.error(anchor, expect.clone(), &e),
                }
            }
            Op::Disc {
                anchor,
                poly,
                z,
                expect,
            } => {
                let r = self.zpoly(poly, z).and_then(|f| {
                    let d = split::discriminant(&f)?;
                    Ok((parse_poly(expect, f.vars())?, d))
                });
                match r {
                    Ok((want, got)) => {
                        self.push(anchor, got == want, want.to_string(), got.to_string())
                    }
                    Err(e) => self.error(anchor, expect.clone(), &e),
                }
            }
            Op::Tschirnhausen {
                anchor,
                poly,
                z,
                expect,
            } => {
                let r = self.zpoly(poly, z).and_then(|f| {
                    let (g, _) = f.tschirnhausen()?;
                    Ok((parse_poly(expect, f.vars())?, g.to_poly()))
                });
                match r {
                    Ok((want, got)) => {
                        self.push(anchor, got == want, want.to_string(), got.to_string())
                    }
                    Err(e) => self.error(anchor, expect.clone(), &e),
                }
            }
            Op::Split {
                anchor,
                poly,
                z,
                w,
                q,
                expect,
                x_ideal,
                verify_on,
                expect_on,
            } => self.split(
                anchor,
                poly,
                z,
                w,
                q,
                *expect,
                x_ideal.as_deref(),
                verify_on.as_ref(),
                *expect_on,
            ),
            Op::MinSplit {
                anchor,
                poly,
                z,
                w,
                bound,
                expect,
                expect_within,
            } => {
                let r = self.zpoly(poly, z).and_then(|f| {
                    let wv = f.vars().indices(w)?;
                    let bound = bound.unwrap_or(f.degree() as u32);
                    Ok(split::min_split_exponents(&f, &wv, bound, self.trunc)
                        .map(|s| s.exponents().to_vec()))
                });
                let show = |q: &Option<Vec<u32>>| match q {
                    Some(q) => format!("{q:?}"),
                    None => "none".to_string(),
                };
                match r {
                    Ok(got) => {
                        if let Some(e) = expect {
                            self.push(
                                anchor,
                                got.as_ref() == Some(e),
                                format!("{e:?}"),
                                show(&got),
                            );
                        }
                        if let Some(allowed) = expect_within {
                            let ok = got
                                .as_ref()
                                .is_some_and(|q| q.iter().all(|x| allowed.contains(x)));
                            let a = format!("{anchor}: exponents in {allowed:?}");
                            self.push(&a, ok, format!("each in {allowed:?}"), show(&got));
                        }
                    }
                    Err(e) => self.error(anchor, "a split cover", &e),
                }
            }
            Op::RootAction {
                anchor,
                poly,
                z,
                w,
                q,
                expect_orders,
            } => {
                let r = self.zpoly(poly, z).and_then(|f| {
                    let wv = f.vars().indices(w)?;
                    let wit = split::split_roots(&f, &wv, q, self.trunc)?;
                    (0..wv.len())
                        .map(|i| split::root_action(&wit, i).map(|p| permutation_order(&p)))
                        .collect::<Result<Vec<_>>>()
                });
                match r {
                    Ok(got) => self.push(
                        anchor,
                        &got == expect_orders,
                        format!("{expect_orders:?}"),
                        format!("{got:?}"),
                    ),
                    Err(e) => self.error(anchor, format!("{expect_orders:?}"), &e),
                }
            }
            Op::Normality {
                anchor,
                poly,
                z,
                w,
                expect,
            } => {
                let r = self.zpoly(poly, z).and_then(|f| {
                    let wv = f.vars().indices(w)?;
                    Ok(split::single_variable_covers(&f, &wv, self.trunc))
                });
                match r {
                    Ok(got) => {
                        let got: Vec<bool> = got.iter().map(|a| a.splits).collect();
                        self.push(
                            anchor,
                            &got == expect,
                            format!("{expect:?}"),
                            format!("{got:?}"),
                        )
                    }
                    Err(e) => self.error(anchor, format!("{expect:?}"), &e),
                }
            }
            Op::MakeDiscSquare {
                anchor,
                poly,
                z,
                phi,
                x,
                w,
                expect_steps,
                cubic_split,
            } => self.disc_square(anchor, poly, z, phi, x, w, *expect_steps, *cubic_split),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        anchor: &str,
        poly: &Source,
        z: &str,
        w: &[String],
        q: &[u32],
        expect: bool,
        x_ideal: Option<&[String]>,
        verify_on: Option<&Source>,
        expect_on: Option<bool>,
    ) {
        let f = match self.zpoly(poly, z) {
            Ok(f) => f,
            Err(e) => return self.error(anchor, expect.to_string(), &e),
        };
        let wv = match f.vars().indices(w) {
            Ok(v) => v,
            Err(e) => return self.error(anchor, expect.to_string(), &e),
        };
        let xs = match x_ideal.map(|x| f.vars().indices(x)).transpose() {
            Ok(x) => x,
            Err(e) => return self.error(anchor, expect.to_string(), &e),
        };
        let witness = split::split_roots(&f, &wv, q, self.trunc);
        let verdict = witness
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|wit| split::verify_split(&f, wit, xs.as_deref()));
        let got = match &verdict {
            Ok(c) if c.passed => "splits, witness verified".to_string(),
            Ok(c) => format!("witness rejected: {}", c.reason),
            Err(e) => e.to_string(),
        };
        let passed = verdict.as_ref().map(|c| c.passed).unwrap_or(false);
        self.push(
            anchor,
            passed == expect,
            if expect { "splits" } else { "does not split" },
            got,
        );
        if let (Some(other), Ok(wit)) = (verify_on, witness) {
            let want = expect_on.unwrap_or(false);
            let a = format!("{anchor}: witness checked on another polynomial");
            let r = self
                .zpoly(other, z)
                .and_then(|g| split::verify_split(&g, &wit, None));
            match r {
                Ok(c) => {
                    let got = match &c.failing_degree {
                        Some(d) => format!("rejected in degree {d}"),
                        None if c.passed => "accepted".to_string(),
                        None => format!("rejected: {}", c.reason),
                    };
                    self.push(
                        &a,
                        c.passed == want,
                        if want { "accepted" } else { "rejected" },
                        got,
                    )
                }
                Err(e) => self.error(&a, want.to_string(), &e),
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn disc_square(
        &mut self,
        anchor: &str,
        poly: &Source,
        z: &str,
        phi: &str,
        x: &[String],
        w: &[String],
        expect_steps: Option<usize>,
        cubic: bool,
    ) {
        let r = self.zpoly(poly, z).and_then(|f| {
            let vars = f.vars().clone();
            let phi = parse_poly(phi, &vars)?;
            let ds = split::make_disc_square(
                &f,
                &phi,
                &vars.indices(x)?,
                &vars.indices(w)?,
                self.trunc,
            )?;
            Ok(ds)
        });
        let ds = match r {
            Ok(ds) => ds,
            Err(e) => return self.error(anchor, "discriminant square on the double cover", &e),
        };
        self.push(
            anchor,
            true,
            "discriminant square on the double cover",
            "square root verified",
        );
        if let Some(n) = expect_steps {
            let a = format!("{anchor}: number of blow-ups");
            let got = ds.trace.steps.len();
            self.push(&a, got == n, n.to_string(), got.to_string());
        }
        let a = format!("{anchor}: trace replays to the same transform");
        match run_sequence(&ds.trace).and_then(|rep| {
            rep.strict(&ds.path)
                .ok_or_else(|| Error::Internal("final chart missing".into()))?
                .expand()
        }) {
            Ok(g) => {
                let ok = g == ds.f.to_poly();
                self.push(&a, ok, ds.f.to_poly().to_string(), g.to_string())
            }
            Err(e) => self.error(&a, ds.f.to_poly().to_string(), &e),
        }
        if cubic {
            let a = format!("{anchor}: cubic split from the square discriminant");
            match split::cubic_split_after_square(&ds) {
                Ok((g, wit)) => match split::verify_split(&g, &wit, None) {
                    Ok(c) => self.push(&a, c.passed, "verified split", c.reason),
                    Err(e) => self.error(&a, "verified split", &e),
                },
                Err(e) => self.error(&a, "verified split", &e),
            }
        }
    }
}

fn permutation_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut n = 1;
    while cur != id {
        cur = cur.iter().map(|&i| p[i]).collect();
        n += 1;
    }
    n
}

/// Runs options shared by all scenarios of one invocation.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the truncation degree of every scenario.
    pub trunc: Option<usize>,
}

/// Runs a scenario, evaluating every assertion even after failures.
pub fn run(s: &Scenario, opts: RunOptions) -> RunReport {
    let start = Instant::now();
    let trunc = opts.trunc.or(s.trunc).unwrap_or(DEFAULT_TRUNC);
    let mut r = Run {
        scenario: s,
        trunc,
        last_trace: None,
        out: Vec::new(),
    };
    for op in &s.ops {
        r.op(op);
    }
    RunReport {
        scenario: s.id.clone(),
        assertions: r.out,
        trunc,
        wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Runs scenarios concurrently on `jobs` threads (0 for the default pool);
/// reports come back in input order.
pub fn run_all(scenarios: &[Scenario], opts: RunOptions, jobs: usize) -> Vec<RunReport> {
    par::with_jobs(jobs, || par::map(scenarios, |s| run(s, opts)))
}

/// Assertions of several reports keyed by scenario id, without timings.
pub fn outcomes(reports: &[RunReport]) -> BTreeMap<String, Vec<Assertion>> {
    reports
        .iter()
        .map(|r| (r.scenario.clone(), r.assertions.clone()))
        .collect()
}
