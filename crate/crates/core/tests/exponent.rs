use nphk::classify::{classify, height, linear_height, SingularityKind};
use nphk::exponent::{knapp_exponent_nla, kp_point, nla_crossover, sugimoto_inf_threshold, verify_nla_identity};
use nphk::polyring::{int, parse_polynomial, rat, Order, Rational};
use proptest::prelude::*;

fn kinds() -> Vec<SingularityKind> {
    let mut out: Vec<SingularityKind> = [
        "x^2*y + y^3",
        "y^3 + x^4",
        "y^3 + y*x^3",
        "y^3 + x^5",
        "y^3 + x^6",
        "x^4 + y^4",
    ]
    .iter()
    .map(|t| classify(&parse_polynomial(t).unwrap()).unwrap().kind)
    .collect();
    for m in 2..=5 {
        for n in (4..=20).map(Order::Finite).chain([Order::Infinite]) {
            out.push(SingularityKind::D { m: Order::Finite(m), n });
        }
    }
    out
}

fn exponent_p() -> impl Strategy<Value = Rational> {
    (0i64..=240).prop_map(|k| int(1) + rat(k, 240))
}

fn u(p: &Rational) -> Rational {
    p.recip() - rat(1, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sandwich_between_heights(p in exponent_p()) {
        for kind in kinds() {
            let h = height(&kind).unwrap();
            let hl = linear_height(&kind).unwrap();
            let k = kp_point(&kind, &p).unwrap();
            let upper = sugimoto_inf_threshold(3, &h.recip(), &p).unwrap();
            let lower = (int(6) - int(2) / &hl) * u(&p);
            prop_assert!(lower <= k && k <= upper, "{}: {} {} {}", kind, lower, k, upper);
            if h == hl {
                prop_assert!(lower == k && k == upper);
            }
        }
    }

    #[test]
    fn kp_nonincreasing_in_p(a in exponent_p(), b in exponent_p()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for kind in kinds() {
            prop_assert!(kp_point(&kind, &hi).unwrap() <= kp_point(&kind, &lo).unwrap());
        }
    }

    #[test]
    fn knapp_growth_never_positive_at_kp(m in 2u32..=6, extra in prop::option::weighted(0.85, 0u32..=20), p in exponent_p()) {
        let n = extra.map_or(Order::Infinite, |e| Order::Finite(2 * m + 2 + e));
        let kind = SingularityKind::D { m: Order::Finite(m), n };
        let k = kp_point(&kind, &p).unwrap();
        let g = knapp_exponent_nla(m, n, &p, &k).unwrap();
        prop_assert!(g <= int(0));
        prop_assert_eq!(g == int(0), u(&p) >= nla_crossover(m));
    }
}

#[test]
fn kp_vanishes_at_two() {
    for kind in kinds() {
        assert_eq!(kp_point(&kind, &int(2)).unwrap(), int(0));
    }
}

#[test]
fn nla_identity_on_parameter_grid() {
    for m in 2..=6 {
        for n in (2 * m + 2..=24).map(Order::Finite).chain([Order::Infinite]) {
            assert!(verify_nla_identity(m, n).unwrap(), "m = {m}, n = {n}");
        }
    }
}
