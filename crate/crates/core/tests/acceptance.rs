//! Acceptance summary: one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use circulant_core::arith::{rat, CycNum, Rat};
use circulant_core::blowup::*;
use circulant_core::circulant::{
    eigen_transform, make_cp, Direction, FactoredCirculant, ProductForm,
};
use circulant_core::ncdetect::*;
use circulant_core::poly::{parse_poly, Exp, Monomial, PuiseuxPoly, VarTable, ZPoly};
use circulant_core::scenario::{corpus, outcomes, run_all, Op, RunOptions, Scenario, Source};
use circulant_core::split::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table(names: &[&str]) -> Arc<VarTable> {
    VarTable::new(names).unwrap()
}

fn p(t: &Arc<VarTable>, s: &str) -> PuiseuxPoly {
    parse_poly(s, t).unwrap()
}

fn zp(t: &Arc<VarTable>, s: &str) -> ZPoly {
    ZPoly::from_named(&p(t, s), "z").unwrap()
}

fn n12() -> Exp {
    Exp::from_integer(12)
}

/// Determinant by Laplace expansion along the first row.
fn laplace_det(m: &[Vec<PuiseuxPoly>]) -> PuiseuxPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let vars = m[0][0].vars().clone();
    let mut det = PuiseuxPoly::zero(&vars);
    for j in 0..n {
        let minor: Vec<Vec<PuiseuxPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &laplace_det(&minor);
        det = if j % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let t = table(&["w", "x", "y", "z"]);
    let e2 = ProductForm::parse("Delta2(z; w^(1/2)*x)", &t)
        .map_err(|e| e.to_string())?
        .expand()
        .unwrap();
    ensure(
        e2 == p(&t, "z^2 - w*x^2"),
        format!("Delta2 expanded to {e2}"),
    )?;
    let e3 = ProductForm::parse("Delta3(z; w^(1/3)*y; w^(2/3)*x)", &t)
        .unwrap()
        .expand()
        .unwrap();
    ensure(
        e3 == p(&t, "z^3 + w*y^3 + w^2*x^3 - 3*w*x*y*z"),
        format!("Delta3 expanded to {e3}"),
    )?;
    for k in 1..=6 {
        let names: Vec<String> = (0..k).map(|i| format!("X{i}")).collect();
        let vars = VarTable::new(&names).unwrap();
        let a: Vec<PuiseuxPoly> = names
            .iter()
            .map(|n| PuiseuxPoly::var(&vars, n).unwrap())
            .collect();
        let circ: Vec<Vec<PuiseuxPoly>> = (0..k)
            .map(|i| (0..k).map(|j| a[(j + k - i) % k].clone()).collect())
            .collect();
        let got = FactoredCirculant::new(a).unwrap().expand().unwrap();
        ensure(
            got == laplace_det(&circ),
            format!("Delta{k} differs from the cofactor expansion"),
        )?;
    }
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, format!("took {ms} ms"))?;
    Ok(format!(
        "Delta2, Delta3 exact; Delta1..Delta6 match cofactor expansion; {ms} ms"
    ))
}

fn corpus_trace(prefix: &str) -> BlowupTrace {
    corpus()
        .unwrap()
        .into_iter()
        .flat_map(|s| s.ops)
        .find_map(|op| match op {
            Op::Trace { anchor, trace } if anchor.starts_with(prefix) => Some(trace),
            _ => None,
        })
        .unwrap_or_else(|| panic!("no trace {prefix}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let r = run_sequence(&corpus_trace("cp(4)")).map_err(|e| e.to_string())?;
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} {}", c.path, c.what))
        .collect();
    ensure(failed.is_empty(), format!("failed: {}", failed.join(", ")))?;
    ensure(
        r.checks.len() >= 20,
        format!("only {} assertions", r.checks.len()),
    )?;
    let got = r.strict("x2www").ok_or("x2www chart not computed")?;
    let want = Strict::parse(
        "Delta4(z; x2^(1/4)*x1; x2^(2/4); w*x2^(3/4)*x3)",
        got.vars(),
    )
    .unwrap();
    ensure(
        got.expand().unwrap() == want.expand().unwrap(),
        format!("x2www chart is {got}"),
    )?;
    let ms = start.elapsed().as_millis();
    ensure(ms < 10_000, format!("took {ms} ms"))?;
    Ok(format!(
        "{} chart assertions, neighbour (2') in x2www-chart; {ms} ms",
        r.checks.len()
    ))
}

fn criterion_3() -> Check {
    let t = table(&["w", "x", "z"]);
    let centre = Centre::new(vec![0, 2], 3).unwrap();
    for k in 2..=6 {
        let mut f = p(&t, &format!("z^2 - w^{k}*x^2"));
        for _ in 0..k / 2 {
            let chart = Chart::new(&t, &centre, 0, &DivisorState::new(), "D", "").unwrap();
            f = blow_up_chart(&f, chart, &centre)
                .map_err(|e| e.to_string())?
                .strict;
        }
        let (want, class) = if k % 2 == 0 {
            ("z^2 - x^2", "nc2")
        } else {
            ("z^2 - w*x^2", "cp2")
        };
        ensure(f == p(&t, want), format!("k = {k}: got {f}"))?;
        let got = point_label(&f);
        ensure(got == class, format!("k = {k}: classified {got}"))?;
    }
    Ok("k = 2..6 reach z^2 - x^2 (nc2) or z^2 - w*x^2 (cp2)".into())
}

fn criterion_4() -> Check {
    let t = table(&["w", "x", "z"]);
    let origin = Centre::origin(&t).unwrap();
    let mut f = p(&t, "z^2 + (w^3 + x)*x^2");
    for _ in 0..3 {
        let chart = Chart::new(&t, &origin, 0, &DivisorState::new(), "D", "").unwrap();
        f = blow_up_chart(&f, chart, &origin)
            .map_err(|e| e.to_string())?
            .strict;
    }
    ensure(
        f == p(&t, "z^2 + w^3*(1 + x)*x^2"),
        format!("after three blow-ups: {f}"),
    )?;
    let g = ZPoly::from_named(&f, "z").unwrap();
    let wit = split_roots(&g, &[0], &[2], 12).map_err(|e| e.to_string())?;
    ensure(
        verify_split(&g, &wit, None).unwrap().passed,
        "witness rejected",
    )?;
    let ct = wit.cover.table().clone();
    let pulled = p(&ct, "v^6*(1 + x)*x^2");
    for r in &wit.roots {
        let res = &r.mul_trunc(r, &[0, 1], n12()) + &pulled.truncate(n12(), &[0, 1]);
        ensure(res.is_zero(), format!("root {r} leaves {res}"))?;
    }
    let zw = Centre::new(vec![0, 2], 3).unwrap();
    let chart = Chart::new(&t, &zw, 0, &DivisorState::new(), "D", "").unwrap();
    let last = blow_up_chart(&f, chart, &zw).unwrap().strict;
    let class = point_label(&last);
    ensure(
        class == "cp2",
        format!("final chart {last} classified {class}"),
    )?;
    Ok("z^2 + w^3*(1+x)*x^2 splits over w = v^2 to N = 12; final chart is a pinch point".into())
}

/// Sylvester resultant of two univariate polynomials with rational
/// coefficients (highest degree first) by Gaussian elimination.
fn rat_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let n = df + dg;
    let mut m = vec![vec![Rat::zero(); n]; n];
    for r in 0..dg {
        for (j, c) in f.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..df {
        for (j, c) in g.iter().enumerate() {
            m[dg + r][r + j] = c.clone();
        }
    }
    let mut det = Rat::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k].clone();
        let pivot = m[k].clone();
        for row in &mut m[k + 1..] {
            let factor = &row[k] / &pivot[k];
            for (x, pv) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= &factor * pv;
            }
        }
    }
    det
}

fn criterion_5() -> Check {
    let t = table(&["b", "c", "z"]);
    let d = discriminant(&zp(&t, "z^3 - 3*b*z + c")).map_err(|e| e.to_string())?;
    ensure(
        d == p(&t, "-1/27*c^2 + 4/27*b^3"),
        format!("symbolic discriminant {d}"),
    )?;
    let tz = table(&["z"]);
    let mut runner = runner(100);
    let r = runner.run(
        &((-20i64..=20, 1i64..=5), (-20i64..=20, 1i64..=5)),
        |((bn, bd), (cn, cd))| {
            let (b, c) = (rat(bn, bd), rat(cn, cd));
            let f = [Rat::one(), Rat::zero(), -rat(3, 1) * &b, c.clone()];
            let df = [rat(3, 1), Rat::zero(), -rat(3, 1) * &b];
            // ∏((r_i − r_j)/3)² = −res(f, f') / 3^6 for a monic cubic.
            let oracle = -rat_resultant(&f, &df) / rat(729, 1);
            let poly = PuiseuxPoly::from_terms(
                &tz,
                [
                    (Monomial(vec![Exp::from_integer(3)]), CycNum::one()),
                    (
                        Monomial(vec![Exp::from_integer(1)]),
                        CycNum::from_rat(-rat(3, 1) * &b),
                    ),
                    (Monomial(vec![Exp::from_integer(0)]), CycNum::from_rat(c)),
                ],
            );
            let got = discriminant(&ZPoly::from_poly(&poly, 0).unwrap()).unwrap();
            prop_assert_eq!(got, PuiseuxPoly::from_rat(&tz, oracle));
            Ok(())
        },
    );
    r.map_err(|e| format!("random (B, C): {e}"))?;
    let mut cubics = 0;
    for s in corpus().unwrap() {
        for op in s.ops {
            if let Op::MakeDiscSquare {
                poly: Source::Text(src),
                phi,
                x,
                w,
                cubic_split: true,
                ..
            } = op
            {
                let t = VarTable::new(&circulant_core::poly::infer_vars(&src)).unwrap();
                let f = zp(&t, &src);
                let ds = make_disc_square(
                    &f,
                    &p(&t, &phi),
                    &t.indices(&x).unwrap(),
                    &t.indices(&w).unwrap(),
                    12,
                )
                .map_err(|e| format!("{src}: {e}"))?;
                let (g, wit) = cubic_split_after_square(&ds).map_err(|e| format!("{src}: {e}"))?;
                ensure(
                    verify_split(&g, &wit, None).unwrap().passed,
                    format!("{src}: split rejected"),
                )?;
                cubics += 1;
            }
        }
    }
    ensure(cubics >= 3, format!("only {cubics} corpus cubics"))?;
    Ok(format!("normalized discriminant; 100 random (B, C) match the resultant; {cubics} corpus cubics split"))
}

fn criterion_6() -> Check {
    let t = table(&["w1", "w2", "x", "z"]);
    let w =
        min_split_exponents(&zp(&t, "z^2 - w1*w2*x^2"), &[0, 1], 2, 12).ok_or("no split found")?;
    ensure(
        w.exponents() == [2, 2],
        format!("exponents {:?}", w.exponents()),
    )?;
    let mut n = 0;
    for s in corpus().unwrap() {
        for op in s.ops {
            if let Op::MinSplit {
                poly: Source::Text(src),
                w,
                ..
            } = op
            {
                let t = VarTable::new(&circulant_core::poly::infer_vars(&src)).unwrap();
                let f = zp(&t, &src);
                if f.degree() != 3 {
                    continue;
                }
                let wit = min_split_exponents(&f, &t.indices(&w).unwrap(), 3, 12)
                    .ok_or(format!("{src}: no split"))?;
                ensure(
                    wit.exponents().iter().all(|q| *q == 1 || *q == 3),
                    format!("{src}: exponents {:?}", wit.exponents()),
                )?;
                n += 1;
            }
        }
    }
    ensure(n >= 3, format!("only {n} cubic instances"))?;
    Ok(format!(
        "(2, 2) for z^2 - w1*w2*x^2; {n} cubic instances use exponents in {{1, 3}}"
    ))
}

fn criterion_7() -> Check {
    let mut checks = 0;
    for prefix in ["pre-circulant, one", "pre-circulant, two"] {
        let trace = corpus_trace(prefix);
        let r = run_sequence(&trace).map_err(|e| e.to_string())?;
        ensure(r.failed() == 0, format!("{prefix}: {} failed", r.failed()))?;
        checks += r.checks.len();
        let finals: Vec<&str> = if prefix.ends_with("one") {
            vec!["w1w1"]
        } else {
            vec!["w1w1w1", "w1w1w2", "w2w2w1", "w2w2w2"]
        };
        for path in finals {
            let s = r.strict(path).ok_or(format!("{path} not computed"))?;
            let class = s.class_at(&[]).unwrap();
            ensure(class == "cp3", format!("{path} classified {class}"))?;
        }
    }
    let r = run_sequence(&corpus_trace("pre-circulant, two")).unwrap();
    let got = r.strict("w1").ok_or("w1 chart not computed")?;
    let want = Strict::parse(
        "Delta3(z; w1^(2/3)*w2^(1/3)*y1; w1^(4/3)*w2^(2/3)*y2)",
        got.vars(),
    )
    .unwrap();
    ensure(
        got.expand().unwrap() == want.expand().unwrap(),
        format!("w1-chart is {got}"),
    )?;
    Ok(format!(
        "both pre-circulant cases reach cp3; intermediate w1-chart matched; {checks} assertions"
    ))
}

fn criterion_8() -> Check {
    let cls =
        |names: &[&str], s: &str| classify_point(&p(&table(names), s), DEFAULT_TRUNC).unwrap();
    let c = cls(&["x", "y"], "y^2 - x^2 - x^3");
    ensure(
        matches!(c.verdict, Verdict::Nc { k: 2, .. }),
        format!("nodal curve: {}", c.verdict),
    )?;
    let c = cls(&["x", "y"], "y^2 + x^2");
    ensure(
        matches!(c.verdict, Verdict::Nc { k: 2, .. }),
        format!("y^2 + x^2: {}", c.verdict),
    )?;
    ensure(
        c.field_note == FieldNote::NeedsExtension(4),
        format!("field note {}", c.field_note),
    )?;
    let c = cls(&["w", "x", "z"], "z^2 - (1 + w)*x^2");
    ensure(
        matches!(c.verdict, Verdict::Nc { k: 2, .. }),
        format!("umbrella off origin: {}", c.verdict),
    )?;
    let names = ["w", "x0", "x1", "x2", "x3", "x4", "x5"];
    for k in 2..=6 {
        let f = make_cp(k, &names[..=k]).unwrap().expand().unwrap();
        let c = classify_point(&f, DEFAULT_TRUNC).unwrap();
        ensure(!c.is_nc(), format!("cp({k}) classified {}", c.verdict))?;
    }
    let t = table(&["u", "x", "z"]);
    let h = hensel_lift(
        &p(&t, "z*x + u^2"),
        &[p(&t, "z"), p(&t, "x")],
        DEFAULT_TRUNC,
    )
    .unwrap();
    ensure(
        h == HenselOutcome::Obstructed(2),
        format!("zx + u^2: {h:?}"),
    )?;
    let c = cls(&["x1", "x2"], "x1*x2*(x1 + x2)");
    ensure(
        c.verdict.to_string() == "order_3_non_nc",
        format!("three lines: {}", c.verdict),
    )?;
    Ok(
        "nodal, sum of squares (zeta4), umbrella off origin, cp(2..6), zx + u^2, three lines"
            .into(),
    )
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn small_poly(vars: Arc<VarTable>) -> impl Strategy<Value = PuiseuxPoly> {
    let n = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0i64..3, n), -4i64..=4, 1i64..=3),
        1..4,
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
}

fn cyc() -> impl Strategy<Value = CycNum> {
    (1u32..=12).prop_flat_map(|n| {
        prop::collection::vec(
            (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b)),
            n as usize,
        )
        .prop_map(move |raw| CycNum::from_raw(n, raw))
    })
}

fn factored_states() -> Vec<ProductForm> {
    let mut out = Vec::new();
    for s in corpus().unwrap() {
        for op in s.ops {
            if let Op::Trace { trace, .. } = op {
                let r = run_sequence(&trace).unwrap();
                for c in &r.charts {
                    if let Some(Strict::Factored(f)) = r.strict(&c.path) {
                        out.push(f.clone());
                    }
                }
            }
        }
    }
    out
}

fn criterion_9() -> Check {
    const CASES: u32 = 1000;
    let mut results = BTreeMap::new();

    let r = runner(CASES).run(
        &(cyc(), cyc(), cyc(), 1u32..=8, 0i64..8),
        |(a, b, c, k, i)| {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
            let i = i % k as i64;
            let s = (0..k as i64).fold(CycNum::zero(), |acc, l| &acc + &CycNum::zeta(k, i * l));
            prop_assert_eq!(
                s,
                if i == 0 {
                    CycNum::from_int(k as i64)
                } else {
                    CycNum::zero()
                }
            );
            Ok(())
        },
    );
    results.insert(
        "cyclotomic field axioms and power sums",
        r.map_err(|e| e.to_string()),
    );

    let states = factored_states();
    let r = runner(CASES).run(
        &(
            any::<prop::sample::Index>(),
            prop::collection::vec(any::<bool>(), 6),
            any::<prop::sample::Index>(),
        ),
        |(pick, mask, chart_pick)| {
            let form = &states[pick.index(states.len())];
            let vars = form.vars().clone();
            let n = vars.len();
            let mut cv: Vec<usize> = (0..n).filter(|&i| mask[i % mask.len()]).collect();
            if cv.len() < 2 {
                cv = (0..n).collect();
            }
            let t = cv[chart_pick.index(cv.len())];
            let centre = Centre::new(cv, n).unwrap();
            let chart = Chart::new(
                &vars,
                &centre,
                t,
                &DivisorState::from_roles(&vars),
                "D9",
                "",
            )
            .unwrap();
            let expanded = blow_up_chart(&form.expand().unwrap(), chart.clone(), &centre).unwrap();
            if let Ok(fc) = blow_up_factored_chart(form, chart, &centre) {
                prop_assert_eq!(fc.strict.expand().unwrap(), expanded.strict);
            }
            Ok(())
        },
    );
    results.insert(
        "factored-vs-expanded blow-up commutation on the corpus",
        r.map_err(|e| e.to_string()),
    );

    let wt = table(&["w1", "w2", "x"]);
    let r = runner(CASES).run(
        &(small_poly(wt.clone()), small_poly(wt.clone()), 0i64..4),
        |(f, g, a)| {
            let m = LexMatrix::new(vec![vec![1, a], vec![0, 1]]).unwrap();
            let lhs = psi_a(&(&f * &g), &m, &[0, 1]).unwrap();
            prop_assert_eq!(
                lhs,
                &psi_a(&f, &m, &[0, 1]).unwrap() * &psi_a(&g, &m, &[0, 1]).unwrap()
            );
            Ok(())
        },
    );
    results.insert("psi_A multiplicativity", r.map_err(|e| e.to_string()));

    let ab = table(&["a", "b"]);
    let r = runner(CASES).run(
        &(1usize..=5).prop_flat_map(move |k| prop::collection::vec(small_poly(ab.clone()), k)),
        |v| {
            let y = eigen_transform(&v, Direction::Forward);
            prop_assert_eq!(eigen_transform(&y, Direction::Inverse), v);
            Ok(())
        },
    );
    results.insert("eigen-transform round trip", r.map_err(|e| e.to_string()));

    let t4 = table(&["w", "x", "y", "z"]);
    let r = runner(CASES).run(
        &(
            small_poly(t4.clone()),
            prop::collection::vec(any::<bool>(), 4),
            any::<prop::sample::Index>(),
        ),
        |(f, mask, pick)| {
            if f.is_zero() {
                return Ok(());
            }
            let mut cv: Vec<usize> = (0..4).filter(|&i| mask[i]).collect();
            if cv.len() < 2 {
                cv = vec![0, 3];
            }
            let t = cv[pick.index(cv.len())];
            let centre = Centre::new(cv, 4).unwrap();
            let chart = Chart::new(&t4, &centre, t, &DivisorState::new(), "D1", "").unwrap();
            let ct = blow_up_chart(&f, chart, &centre).unwrap();
            let tm = PuiseuxPoly::var_idx(&t4, t, ct.multiplicity);
            prop_assert_eq!(&tm * &ct.strict, ct.total);
            Ok(())
        },
    );
    results.insert("total = chart^m * strict", r.map_err(|e| e.to_string()));

    let corpus_all = corpus().unwrap();
    let r = runner(CASES).run(&prop::collection::vec(0usize..6, 1..4), |ids| {
        let polys = ["z^2 - w*x^2", "y^2 - x^2 - x^3", "x1*x2*(x1 + x2)", "z^2 - w^3*x^2", "y^2 + x^2", "z^2 - x^2"];
        let s: Vec<Scenario> = ids
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let text = format!(
                    r#"{{"id": "r{i}", "description": "r", "ops": [{{"op": "classify", "anchor": "a", "poly": "{}", "expect": "nc2"}}]}}"#,
                    polys[j]
                );
                Scenario::from_json("r.json", &text).unwrap()
            })
            .collect();
        prop_assert_eq!(
            outcomes(&run_all(&s, RunOptions::default(), 1)),
            outcomes(&run_all(&s, RunOptions::default(), 8))
        );
        Ok(())
    });
    let full = outcomes(&run_all(&corpus_all, RunOptions::default(), 1))
        == outcomes(&run_all(&corpus_all, RunOptions::default(), 8));
    let r = r
        .map_err(|e| e.to_string())
        .and_then(|()| ensure(full, "full corpus differs between jobs 1 and 8"));
    results.insert("deterministic reports for jobs 1 and 8", r);

    let failed: Vec<String> = results
        .iter()
        .filter_map(|(k, v)| v.as_ref().err().map(|e| format!("{k}: {e}")))
        .collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} suites x {CASES} cases", results.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("circulant expansion", criterion_1),
        ("cp(4) neighbour derivation", criterion_2),
        ("Whitney family", criterion_3),
        ("z^2 + (w^3 + x)*x^2 end to end", criterion_4),
        ("cubic machinery", criterion_5),
        ("splitting exponents", criterion_6),
        ("pre-circulant cubic reduction", criterion_7),
        ("nc-detect suite", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
