use circulant_core::arith::{kth_root_rational, rat, CycNum, Rat};
use proptest::prelude::*;

fn z(n: u32, p: i64) -> CycNum {
    CycNum::zeta(n, p)
}

#[test]
fn zeta_basics() {
    assert!(z(1, 0).is_one());
    assert_eq!(z(4, 2), CycNum::from_int(-1));
    assert!((&(&z(3, 0) + &z(3, 1)) + &z(3, 2)).is_zero());
    assert_eq!(z(5, 7), z(5, 2));
    assert_eq!(z(6, 1), -z(3, 2));
}

#[test]
fn arithmetic_examples() {
    assert!((&z(4, 1) * &z(4, 3)).is_one());
    assert_eq!(CycNum::one().checked_div(&z(3, 1)).unwrap(), z(3, 2));
    let s: CycNum = (0..4).fold(CycNum::zero(), |a, l| &a + &z(4, 2 * l));
    assert!(s.is_zero());
    let s: CycNum = (0..4).fold(CycNum::zero(), |a, _| &a + &z(4, 0));
    assert_eq!(s, CycNum::from_int(4));
    assert!(CycNum::one().checked_div(&CycNum::zero()).is_err());
}

#[test]
fn mixed_orders_promote() {
    let i = z(4, 1);
    let w = z(3, 1);
    let p = &i * &w;
    assert_eq!(p.order(), 12);
    assert_eq!(&p * &z(12, -7), CycNum::one());
}

#[test]
fn square_roots_of_rationals() {
    let m1 = CycNum::from_int(-1).kth_root(2).unwrap();
    assert_eq!(&m1 * &m1, CycNum::from_int(-1));
    let s3 = CycNum::from_int(-3).kth_root(2).unwrap();
    assert_eq!(&s3 * &s3, CycNum::from_int(-3));
    let s2 = CycNum::from_rat(rat(2, 9)).kth_root(2).unwrap();
    assert_eq!(&s2 * &s2, CycNum::from_rat(rat(2, 9)));
    let c = CycNum::from_int(-8).kth_root(3).unwrap();
    assert_eq!(c.pow(3), CycNum::from_int(-8));
    assert!(CycNum::from_int(2).kth_root(3).is_none());
    assert_eq!(kth_root_rational(&rat(27, 8), 3), Some(rat(3, 2)));
}

#[test]
fn roots_of_unity_have_roots() {
    let r = z(3, 1).kth_root(3).unwrap();
    assert_eq!(r.pow(3), z(3, 1));
}

#[test]
fn display_round_trip() {
    for v in [
        CycNum::zero(),
        CycNum::from_rat(rat(-3, 7)),
        &z(3, 1).scale(&rat(1, 2)) - &CycNum::one(),
        &z(8, 3) + &z(5, 2),
    ] {
        let text = v.to_string();
        let back: CycNum = text.parse().unwrap();
        assert_eq!(back, v, "{text}");
    }
    assert_eq!(z(3, 1).to_string(), "z3^1");
    assert_eq!(z(4, 3).to_string(), "-z4^1");
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn cyc() -> impl Strategy<Value = CycNum> {
    (1u32..=12).prop_flat_map(|n| {
        proptest::collection::vec(small_rat(), n as usize)
            .prop_map(move |raw| CycNum::from_raw(n, raw))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn norm_is_rational(a in cyc()) {
        prop_assert!(a.norm().is_rational());
    }

    #[test]
    fn power_sums(k in 1u32..=8, i in 0i64..8) {
        let i = i % k as i64;
        let s = (0..k as i64).fold(CycNum::zero(), |acc, l| &acc + &z(k, i * l));
        if i == 0 {
            prop_assert_eq!(s, CycNum::from_int(k as i64));
        } else {
            prop_assert!(s.is_zero());
        }
    }

    #[test]
    fn text_round_trip(a in cyc()) {
        let back: CycNum = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
