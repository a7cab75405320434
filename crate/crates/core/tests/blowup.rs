use std::sync::Arc;

use circulant_core::arith::{rat, CycNum};
use circulant_core::blowup::*;
use circulant_core::circulant::ProductForm;
use circulant_core::error::Error;
use circulant_core::poly::{parse_poly, Exp, Monomial, PuiseuxPoly, VarTable};
use circulant_core::scenario::{corpus, Op};
use proptest::prelude::*;

fn table(names: &[&str]) -> Arc<VarTable> {
    VarTable::new(names).unwrap()
}

fn corpus_traces() -> Vec<(String, BlowupTrace)> {
    corpus()
        .unwrap()
        .into_iter()
        .flat_map(|s| {
            s.ops.into_iter().filter_map(move |op| match op {
                Op::Trace { anchor, trace } => Some((anchor, trace)),
                _ => None,
            })
        })
        .collect()
}

fn cp4_trace() -> BlowupTrace {
    corpus_traces()
        .into_iter()
        .find(|(a, _)| a.starts_with("cp(4)"))
        .expect("cp(4) trace in corpus")
        .1
}

#[test]
fn cp4_neighbour_derivation_replays_exactly() {
    let r = run_sequence(&cp4_trace()).unwrap();
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            format!(
                "{} {}: expected {} got {}",
                c.path, c.what, c.expected, c.got
            )
        })
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    assert!(r.checks.len() >= 20, "only {} checks", r.checks.len());
    let vars = r.strict("").unwrap().vars().clone();
    let neighbour =
        Strict::parse("Delta4(z; x2^(1/4)*x1; x2^(2/4); w*x2^(3/4)*x3)", &vars).unwrap();
    let got = r.strict("x2www").expect("x2www chart computed");
    assert_eq!(got.expand().unwrap(), neighbour.expand().unwrap());
}

#[test]
fn every_corpus_trace_replays_without_failures() {
    for (anchor, t) in corpus_traces() {
        let r = run_sequence(&t).unwrap();
        assert_eq!(r.failed(), 0, "{anchor}");
        assert!(r.passed() > 0, "{anchor}");
    }
}

#[test]
fn pinch_point_origin_blow_up() {
    let t = table(&["w", "x", "z"]);
    let f = parse_poly("z^2 - w*x^2", &t).unwrap();
    let charts = blow_up(&f, &Centre::origin(&t).unwrap(), &DivisorState::new(), None).unwrap();
    let strict: Vec<String> = charts.iter().map(|c| c.strict.to_string()).collect();
    assert_eq!(
        charts.iter().map(|c| c.multiplicity).collect::<Vec<_>>(),
        vec![Exp::from_integer(2); 3]
    );
    assert_eq!(
        charts[0].strict,
        parse_poly("z^2 - w*x^2", &t).unwrap(),
        "{strict:?}"
    );
    assert_eq!(charts[1].strict, parse_poly("z^2 - w*x", &t).unwrap());
    assert_eq!(charts[2].strict, parse_poly("1 - w*x^2*z", &t).unwrap());
}

#[test]
fn chart_rejects_variables_outside_the_centre() {
    let t = table(&["w", "x", "z"]);
    let c = Centre::new(vec![0, 2], 3).unwrap();
    assert!(Chart::new(&t, &c, 1, &DivisorState::new(), "D1", "").is_err());
}

#[test]
fn malformed_trace_json_is_rejected() {
    assert!(BlowupTrace::from_json("{\"vars\": [\"x\"]}").is_err());
    assert!(BlowupTrace::from_json("not json").is_err());
}

/// Every factored strict transform recorded while replaying the corpus.
fn factored_states() -> Vec<(String, ProductForm)> {
    let mut out = Vec::new();
    for (anchor, t) in corpus_traces() {
        let r = run_sequence(&t).unwrap();
        let mut paths: Vec<String> = r.charts.iter().map(|c| c.path.clone()).collect();
        paths.push(String::new());
        for p in paths {
            if let Some(Strict::Factored(f)) = r.strict(&p) {
                out.push((format!("{anchor} / {p}"), f.clone()));
            }
        }
    }
    out
}

fn rand_poly(vars: Arc<VarTable>) -> impl Strategy<Value = PuiseuxPoly> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0i64..4, n), -5i64..=5, 1i64..=3),
        1..5,
    )
    .prop_map(move |terms| {
        PuiseuxPoly::from_terms(
            &vars,
            terms.into_iter().map(|(e, a, b)| {
                (
                    Monomial(e.into_iter().map(Exp::from_integer).collect()),
                    CycNum::from_rat(rat(a, b)),
                )
            }),
        )
    })
    .prop_filter("nonzero", |f| !f.is_zero())
}

/// A centre of at least two variables and a chart variable in it.
fn centre_and_chart(n: usize) -> impl Strategy<Value = (Vec<usize>, usize)> {
    prop::collection::vec(any::<bool>(), n)
        .prop_filter("centre of codimension at least two", |m| {
            m.iter().filter(|&&b| b).count() >= 2
        })
        .prop_flat_map(|mask| {
            let vs: Vec<usize> = mask
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect();
            let k = vs.len();
            (Just(vs), 0..k)
        })
        .prop_map(|(vs, i)| {
            let c = vs[i];
            (vs, c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factored_and_expanded_blow_ups_commute(
        pick in any::<prop::sample::Index>(),
        seed in prop::collection::vec(any::<bool>(), 6),
        chart_pick in any::<prop::sample::Index>(),
    ) {
        let states = factored_states_cached();
        let (label, form) = &states[pick.index(states.len())];
        let vars = form.vars().clone();
        let n = vars.len();
        let mut cv: Vec<usize> = (0..n).filter(|&i| seed[i % seed.len()]).collect();
        if cv.len() < 2 {
            cv = (0..n).collect();
        }
        let chart_var = cv[chart_pick.index(cv.len())];
        let centre = Centre::new(cv, n).unwrap();
        let chart = Chart::new(&vars, &centre, chart_var, &DivisorState::from_roles(&vars), "D9", "").unwrap();
        let expanded = blow_up_chart(&form.expand().unwrap(), chart.clone(), &centre).unwrap();
        match blow_up_factored_chart(form, chart, &centre) {
            Ok(fc) => {
                prop_assert_eq!(fc.multiplicity, expanded.multiplicity, "{}", label);
                prop_assert_eq!(fc.strict.expand().unwrap(), expanded.strict, "{}", label);
            }
            Err(e) => prop_assert!(matches!(e, Error::Representation(_)), "{}: {}", label, e),
        }
    }

    #[test]
    fn total_is_chart_power_times_strict(
        f in rand_poly(table(&["w", "x", "y", "z"])),
        (cv, chart_var) in centre_and_chart(4),
    ) {
        let vars = f.vars().clone();
        let centre = Centre::new(cv.clone(), 4).unwrap();
        let chart = Chart::new(&vars, &centre, chart_var, &DivisorState::new(), "D1", "").unwrap();
        let t = blow_up_chart(&f, chart, &centre).unwrap();
        let tm = PuiseuxPoly::var_idx(&vars, chart_var, t.multiplicity);
        prop_assert_eq!(&tm * &t.strict, t.total.clone());
        prop_assert_eq!(t.strict.order(&[chart_var]).finite(), Some(Exp::from_integer(0)));
        // Independent total transform: substitute term by term.
        let mut total = PuiseuxPoly::zero(&vars);
        for (m, c) in f.terms() {
            let mut img = PuiseuxPoly::from_terms(&vars, [(Monomial::one(4), c.clone())]);
            for v in 0..4 {
                let e = m.get(v);
                let base = PuiseuxPoly::var_idx(&vars, v, e);
                img = &img * &base;
                if v != chart_var && cv.contains(&v) {
                    img = &img * &PuiseuxPoly::var_idx(&vars, chart_var, e);
                }
            }
            total = &total + &img;
        }
        prop_assert_eq!(total, t.total);
    }
}

fn factored_states_cached() -> &'static [(String, ProductForm)] {
    static STATES: std::sync::OnceLock<Vec<(String, ProductForm)>> = std::sync::OnceLock::new();
    STATES.get_or_init(factored_states)
}
