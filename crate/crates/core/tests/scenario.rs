use circulant_core::scenario::{corpus, outcomes, run, run_all, RunOptions, Scenario, Status};
use proptest::prelude::*;

fn scenarios() -> Vec<Scenario> {
    corpus().expect("corpus loads")
}

#[test]
fn every_corpus_scenario_passes() {
    let reports = run_all(&scenarios(), RunOptions::default(), 0);
    let mut failures = Vec::new();
    for r in &reports {
        if !r.all_passed() {
            failures.push(r.to_string());
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn corpus_ids_are_unique_and_nonempty() {
    let s = scenarios();
    assert!(s.len() >= 10);
    assert!(s.iter().all(|s| !s.ops.is_empty()));
}

#[test]
fn runs_are_deterministic_across_job_counts() {
    let s = scenarios();
    let one = outcomes(&run_all(&s, RunOptions::default(), 1));
    for jobs in [2, 8] {
        assert_eq!(
            outcomes(&run_all(&s, RunOptions::default(), jobs)),
            one,
            "jobs = {jobs}"
        );
    }
}

#[test]
fn a_wrong_expectation_is_reported_as_a_failure() {
    let text = r#"{"id": "bad", "description": "wrong class", "ops": [
        {"op": "classify", "anchor": "pinch point", "poly": "z^2 - w*x^2", "expect": "nc2"}]}"#;
    let s = Scenario::from_json("bad.json", text).unwrap();
    let r = run(&s, RunOptions::default());
    assert_eq!(r.assertions.len(), 1);
    assert_eq!(r.assertions[0].status, Status::Fail);
}

#[test]
fn malformed_scenarios_report_the_line() {
    let text = "{\n  \"id\": \"x\",\n  \"description\": \"d\",\n  \"ops\": [{\"op\": \"nope\"}]\n}";
    let e = Scenario::from_json("x.json", text).unwrap_err().to_string();
    assert!(e.contains("x.json") && e.contains("line 4"), "{e}");
}

const POLYS: &[&str] = &[
    "z^2 - w*x^2",
    "z^2 - w^2*x^2",
    "y^2 - x^2 - x^3",
    "x1*x2*(x1 + x2)",
    "Delta3(z; w^(1/3)*y; w^(2/3)*x)",
    "Delta2(z; w^(1/2)*x)*Delta2(u; w^(1/2)*y)",
    "z^3 - 3*w*x1*x2*z + w*x1^3 + w^2*x2^3",
];
const CLASSES: &[&str] = &["cp2", "nc2", "cp3", "smooth", "order_3_non_nc"];

fn op_json(kind: usize, poly: &str, class: &str) -> String {
    match kind {
        0 => {
            format!(r#"{{"op": "classify", "anchor": "c", "poly": "{poly}", "expect": "{class}"}}"#)
        }
        1 if poly.contains('z') && !poly.contains("Delta") => {
            format!(
                r#"{{"op": "disc", "anchor": "d", "poly": "{poly}", "z": "z", "expect": "w*x^2"}}"#
            )
        }
        _ => format!(
            r#"{{"op": "expand", "anchor": "e", "form": "Delta2(z; w^(1/2)*x)", "expect": "{poly}"}}"#
        ),
    }
}

fn random_scenarios() -> impl Strategy<Value = Vec<Scenario>> {
    prop::collection::vec(
        prop::collection::vec((0usize..3, 0..POLYS.len(), 0..CLASSES.len()), 1..4),
        1..6,
    )
    .prop_map(|specs| {
        specs
            .into_iter()
            .enumerate()
            .map(|(i, ops)| {
                let ops: Vec<String> = ops
                    .into_iter()
                    .map(|(k, p, c)| op_json(k, POLYS[p], CLASSES[c]))
                    .collect();
                let text = format!(
                    r#"{{"id": "s{i}", "description": "random", "ops": [{}]}}"#,
                    ops.join(",")
                );
                Scenario::from_json("random.json", &text).unwrap()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reports_do_not_depend_on_the_job_count(s in random_scenarios()) {
        let one = outcomes(&run_all(&s, RunOptions::default(), 1));
        let eight = outcomes(&run_all(&s, RunOptions::default(), 8));
        prop_assert_eq!(one, eight);
    }
}
