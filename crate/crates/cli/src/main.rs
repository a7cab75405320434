//! Command-line front end: product-form expansion, blow-up traces, point
//! classification, discriminants, splitting and the scenario corpus.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use circulant_core::blowup::{run_sequence, BlowupTrace, Strict};
use circulant_core::circulant::{catalog, classify_form, ProductForm};
use circulant_core::ncdetect::{classify_point, point_label, DEFAULT_TRUNC};
use circulant_core::poly::{parse_poly_infer, ZPoly};
use circulant_core::scenario::{corpus, run_all, RunOptions, Scenario};
use circulant_core::split::{discriminant, split_roots, verify_split};
use circulant_core::{par, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "circulant",
    version,
    about = "Exact computations with circulant singularities"
)]
struct Cli {
    /// Truncation degree for series computations.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel work (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expands a product of circulant blocks, e.g. "Delta2(z; w^(1/2)*x)".
    Expand { form: String },
    /// Replays a blow-up trace file and checks its expectations.
    Blowup { trace_file: String },
    /// Classifies the germ of a hypersurface at the origin.
    Classify {
        poly: String,
        /// Variables assumed nonzero at the point.
        #[arg(long, value_delimiter = ',')]
        nonzero: Vec<String>,
    },
    /// Discriminant of a monic polynomial in the main variable.
    Disc {
        zpoly: String,
        #[arg(long, default_value = "z")]
        z: String,
    },
    /// Splits a monic polynomial over the cover w_i = v_i^(q_i).
    Split {
        zpoly: String,
        /// Cover exponents q_1,...,q_r.
        #[arg(long, value_delimiter = ',', required = true)]
        cover: Vec<u32>,
        /// Covered variables; defaults to every variable whose name starts with w.
        #[arg(long, value_delimiter = ',')]
        w: Vec<String>,
        #[arg(long, default_value = "z")]
        z: String,
    },
    /// Lists the catalog of minimal singularities.
    Catalog {
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Runs or lists the built-in scenario corpus.
    Scenario {
        #[command(subcommand)]
        action: ScenarioCommand,
    },
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// Runs one scenario by id, or every scenario with --all.
    Run {
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
    List,
}

/// Result of a command: its rendering and whether every check passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            passed: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let format = cli.format;
    match par::with_jobs(jobs, || execute(&cli)) {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text.trim_end().to_string(),
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json value"),
            };
            // A closed pipe (e.g. `| head`) is not an error of the command.
            let _ = writeln!(io::stdout().lock(), "{body}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({ "error": e.to_string() })),
            }
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let trunc = cli.trunc.unwrap_or(DEFAULT_TRUNC);
    match &cli.command {
        Command::Expand { form } => {
            let p = ProductForm::parse_infer(form)?;
            let e = p.expand()?;
            Ok(Outcome::ok(
                e.to_string(),
                json!({ "form": p.to_string(), "expanded": e.to_string() }),
            ))
        }
        Command::Blowup { trace_file } => blowup(trace_file),
        Command::Classify { poly, nonzero } => classify(poly, nonzero, trunc),
        Command::Disc { zpoly, z } => {
            let f = ZPoly::from_named(&parse_poly_infer(zpoly)?, z)?;
            let d = discriminant(&f)?;
            Ok(Outcome::ok(
                d.to_string(),
                json!({ "poly": zpoly, "discriminant": d.to_string() }),
            ))
        }
        Command::Split { zpoly, cover, w, z } => split(zpoly, cover, w, z, trunc),
        Command::Catalog { dim } => {
            let entries: Vec<_> = catalog()
                .entries()
                .iter()
                .filter(|e| dim.is_none_or(|d| e.dim == d))
                .collect();
            let text = entries
                .iter()
                .map(|e| {
                    format!(
                        "{:<14} dim {}  {}  neighbours: [{}]",
                        e.id,
                        e.dim,
                        e.form,
                        e.neighbors.join(", ")
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(
                text,
                serde_json::to_value(&entries).expect("catalog serializes"),
            ))
        }
        Command::Scenario { action } => scenario(action, cli),
    }
}

fn blowup(path: &str) -> Result<Outcome, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Load {
        file: path.to_string(),
        message: e.to_string(),
    })?;
    let trace = BlowupTrace::from_json(&text).map_err(|e| Error::Load {
        file: path.to_string(),
        message: e.to_string(),
    })?;
    let r = run_sequence(&trace)?;
    let mut lines = Vec::new();
    for c in &r.charts {
        lines.push(format!(
            "step {} centre {} {}-chart: m = {}, strict = {}, divisors {}",
            c.step, c.centre, c.path, c.multiplicity, c.strict, c.divisors
        ));
    }
    for c in r.checks.iter().filter(|c| !c.passed) {
        lines.push(format!(
            "fail {} {}: expected {}, got {}",
            c.path, c.what, c.expected, c.got
        ));
    }
    lines.push(format!(
        "{} checks passed, {} failed",
        r.passed(),
        r.failed()
    ));
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({ "charts": r.charts, "checks": r.checks }),
        passed: r.failed() == 0,
    })
}

fn classify(src: &str, nonzero: &[String], trunc: usize) -> Result<Outcome, Error> {
    if src.contains("Delta") {
        let p = ProductForm::parse_infer(src)?;
        let idx = p.vars().indices(nonzero)?;
        let label = Strict::Factored(p.clone()).class_at(&idx)?;
        let catalog_id = classify_form(&p, &idx).ok().map(|e| e.id.clone());
        return Ok(Outcome::ok(
            format!("class: {label}"),
            json!({ "poly": src, "class": label, "catalog": catalog_id }),
        ));
    }
    let f = parse_poly_infer(src)?;
    if !nonzero.is_empty() {
        let idx = f.vars().indices(nonzero)?;
        let label = Strict::Expanded(f).class_at(&idx)?;
        return Ok(Outcome::ok(
            format!("class: {label}"),
            json!({ "poly": src, "class": label }),
        ));
    }
    let c = classify_point(&f, trunc)?;
    let label = point_label(&f);
    Ok(Outcome::ok(
        format!("class: {label}\n{c}"),
        json!({
            "poly": src,
            "class": label,
            "verdict": c.verdict.to_string(),
            "order": c.k,
            "field": c.field_note.to_string(),
            "cone": c.cone.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "branches": c.witness.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "obstruction": c.obstruction,
            "reason": c.reason,
        }),
    ))
}

fn split(src: &str, cover: &[u32], w: &[String], z: &str, trunc: usize) -> Result<Outcome, Error> {
    let f = ZPoly::from_named(&parse_poly_infer(src)?, z)?;
    let vars = f.vars().clone();
    let w_idx = if w.is_empty() {
        (0..vars.len())
            .filter(|&i| vars.name(i).starts_with('w'))
            .collect()
    } else {
        vars.indices(w)?
    };
    match split_roots(&f, &w_idx, cover, trunc) {
        Ok(wit) => {
            let check = verify_split(&f, &wit, None)?;
            Ok(Outcome {
                text: format!("splits: {}\n{wit}", check.passed),
                json: json!({
                    "splits": check.passed,
                    "cover": wit.cover.render(),
                    "roots": wit.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "trunc": wit.trunc,
                    "failing_degree": check.failing_degree,
                }),
                passed: check.passed,
            })
        }
        Err(Error::DoesNotSplit(d)) => Ok(Outcome::ok(
            format!("splits: false\nno split over the cover through degree {d}"),
            json!({ "splits": false, "failing_degree": d }),
        )),
        Err(e) => Err(e),
    }
}

fn scenario(action: &ScenarioCommand, cli: &Cli) -> Result<Outcome, Error> {
    let all = corpus()?;
    match action {
        ScenarioCommand::List => {
            let text = all
                .iter()
                .map(|s| format!("{:<16} {}", s.id, s.description))
                .collect::<Vec<_>>()
                .join("\n");
            let json = all
                .iter()
                .map(|s| json!({ "id": s.id, "description": s.description, "ops": s.ops.len() }))
                .collect();
            Ok(Outcome::ok(text, Value::Array(json)))
        }
        ScenarioCommand::Run { id, all: run_every } => {
            let selected: Vec<Scenario> = match (id, run_every) {
                (Some(id), false) => vec![all
                    .iter()
                    .find(|s| &s.id == id)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("unknown scenario {id}")))?],
                (None, true) => all,
                _ => return Err(Error::invalid("give a scenario id or --all")),
            };
            let reports = run_all(&selected, RunOptions { trunc: cli.trunc }, cli.jobs);
            let passed = reports.iter().all(|r| r.all_passed());
            let text = reports.iter().map(|r| r.to_string()).collect::<String>();
            let json = reports
                .iter()
                .map(|r| json!({ "scenario": r.scenario, "assertions": r.assertions }))
                .collect();
            Ok(Outcome {
                text,
                json: Value::Array(json),
                passed,
            })
        }
    }
}
