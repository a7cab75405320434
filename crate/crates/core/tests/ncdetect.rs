use std::cmp::Ordering;
use std::sync::Arc;

use circulant_core::arith::{rat, CycNum};
use circulant_core::circulant::make_cp;
use circulant_core::ncdetect::*;
use circulant_core::poly::series::exact_div;
use circulant_core::poly::{parse_poly, Exp, Monomial, PuiseuxPoly, VarTable};
use proptest::prelude::*;

fn table(names: &[&str]) -> Arc<VarTable> {
    VarTable::new(names).unwrap()
}

fn p(t: &Arc<VarTable>, s: &str) -> PuiseuxPoly {
    parse_poly(s, t).unwrap()
}

fn classify(names: &[&str], s: &str) -> Classification {
    let t = table(names);
    classify_point(&p(&t, s), DEFAULT_TRUNC).unwrap()
}

#[test]
fn nodal_curve_is_nc2() {
    let c = classify(&["x", "y"], "y^2 - x^2 - x^3");
    assert_eq!(c.verdict, Verdict::Nc { k: 2, snc: true });
    assert_eq!(c.k, 2);
    assert_eq!(c.field_note, FieldNote::Rational);
    // Independent check: the lifted branches multiply back to f through degree N.
    let t = c.witness[0].vars().clone();
    let f = p(&t, "y^2 - x^2 - x^3");
    let prod = c.witness[0].mul_trunc(
        &c.witness[1],
        &t.all(),
        Exp::from_integer(DEFAULT_TRUNC as i64),
    );
    assert_eq!(
        prod,
        f.truncate(Exp::from_integer(DEFAULT_TRUNC as i64), &t.all())
    );
}

#[test]
fn sum_of_squares_needs_fourth_roots_of_unity() {
    let c = classify(&["x", "y"], "y^2 + x^2");
    assert_eq!(c.verdict, Verdict::Nc { k: 2, snc: false });
    assert_eq!(c.field_note, FieldNote::NeedsExtension(4));
    assert_eq!(c.verdict.to_string(), "nc(2)");
    let t = c.cone[0].vars().clone();
    let i = CycNum::zeta(4, 1);
    // Each factor is an associate of y + i*x or y - i*x.
    for want in [
        &p(&t, "y") + &p(&t, "x").scale(&i),
        &p(&t, "y") - &p(&t, "x").scale(&i),
    ] {
        let hits = c
            .cone
            .iter()
            .filter(|l| exact_div(&want, l).is_ok_and(|q| q.is_constant()))
            .count();
        assert_eq!(hits, 1, "{want}");
    }
}

#[test]
fn umbrella_off_the_origin_is_nc2() {
    let c = classify(&["w", "x", "z"], "z^2 - (1 + w)*x^2");
    assert_eq!(c.verdict, Verdict::Nc { k: 2, snc: true });
    let c = classify(&["w", "x", "z"], "z^2 - w*x^2");
    assert!(!c.is_nc());
}

#[test]
fn circulant_points_are_not_nc() {
    let names = ["w", "x0", "x1", "x2", "x3", "x4"];
    for k in 2..=5 {
        let f = make_cp(k, &names[..=k]).unwrap().expand().unwrap();
        let c = classify_point(&f, DEFAULT_TRUNC).unwrap();
        assert!(!c.is_nc(), "cp({k}) classified {}", c.verdict);
        assert_eq!(c.k, k, "cp({k})");
    }
}

#[test]
fn hensel_obstruction_in_degree_two() {
    let t = table(&["u", "x", "z"]);
    let f = p(&t, "z*x + u^2");
    let out = hensel_lift(&f, &[p(&t, "z"), p(&t, "x")], 8).unwrap();
    assert_eq!(out, HenselOutcome::Obstructed(2));
}

#[test]
fn three_concurrent_lines_are_order_three_non_nc() {
    let c = classify(&["x1", "x2"], "x1*x2*(x1 + x2)");
    assert_eq!(c.verdict, Verdict::NonNc { k: 3 });
    assert_eq!(c.verdict.to_string(), "order_3_non_nc");
}

#[test]
fn fermat_cubic_cone_does_not_split() {
    let c = classify(&["x1", "x2", "x3"], "x1^3 + x2^3 + x3^3");
    assert_eq!(
        c.verdict,
        Verdict::Unresolved {
            order: 3,
            trunc: DEFAULT_TRUNC
        }
    );
    assert!(tangent_cone_factors(
        &p(&table(&["x1", "x2", "x3"]), "x1^3 + x2^3 + x3^3"),
        &[0, 1, 2]
    )
    .unwrap()
    .is_none());
}

#[test]
fn smooth_and_unit_germs() {
    assert_eq!(classify(&["x", "y"], "1 + x").verdict, Verdict::Unit);
    assert_eq!(classify(&["x", "y"], "x + y^2").verdict, Verdict::Smooth);
    assert_eq!(
        classify(&["x", "y", "z"], "x*y*z").verdict,
        Verdict::Nc { k: 3, snc: true }
    );
}

#[test]
fn inv_tuples_of_normal_crossings() {
    let a = inv_nc(2, 0).unwrap();
    let b = inv_nc(2, 1).unwrap();
    let c = inv_nc(3, 0).unwrap();
    assert_eq!(a.len(), 2 * 2 + 1);
    assert_eq!(lex_compare(&a, &a), Ordering::Equal);
    assert_eq!(lex_compare(&c, &a), Ordering::Greater);
    assert_ne!(lex_compare(&a, &b), Ordering::Equal);
}

/// Products of `k` independent linear forms perturbed by higher-order terms.
fn perturbed_nc() -> impl Strategy<Value = (usize, PuiseuxPoly)> {
    (
        2usize..=3,
        prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..3),
        any::<bool>(),
    )
        .prop_map(|(k, extra, shear)| {
            let t = table(&["x", "y", "z"]);
            let lin = ["x", "y", "z"];
            let mut f = PuiseuxPoly::one(&t);
            for (j, v) in lin.iter().enumerate().take(k) {
                let mut l = p(&t, v);
                if shear && j == 0 {
                    l = &l + &p(&t, lin[k - 1]).scale_rat(&rat(1, 2));
                }
                f = &f * &l;
            }
            for (a, b, c) in extra {
                let mut e = vec![Exp::from_integer(0); 3];
                e[a] += Exp::from_integer(k as i64 + 1);
                e[b] += Exp::from_integer(1);
                let term = PuiseuxPoly::from_terms(&t, [(Monomial(e), CycNum::from_int(c))]);
                f = &f + &term;
            }
            (k, f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hensel_lift_reproduces_f_or_reports_a_degree((k, f) in perturbed_nc(), n in 3usize..7) {
        let all = f.vars().all();
        let cone = tangent_cone_factors(&f, &all).unwrap().expect("product of linear forms");
        prop_assert_eq!(cone.len(), k);
        match hensel_lift(&f, &cone, n).unwrap() {
            HenselOutcome::Lifted(g) => {
                let ne = Exp::from_integer(n as i64);
                let prod = g.iter().skip(1).fold(g[0].clone(), |acc, h| acc.mul_trunc(h, &all, ne));
                prop_assert_eq!(prod, f.truncate(ne, &all));
            }
            HenselOutcome::Obstructed(d) => {
                prop_assert!(d > k && d <= n);
                // Monotone: a longer lift fails in the same degree.
                prop_assert_eq!(hensel_lift(&f, &cone, n + 2).unwrap(), HenselOutcome::Obstructed(d));
            }
        }
    }
}
