use nphk::classify::{
    circle_vanishing_order, classify, d_normal_form, default_truncation, height, linear_height, SingularityKind,
};
use nphk::newton::{polygon_of, taylor_support};
use nphk::polyring::{int, parse_polynomial, rat, BivariatePolynomial, LinearMap2, Order, Rational};
use proptest::prelude::*;

const CORPUS: [&str; 10] = [
    "x^2*y + y^3",
    "x*(y - x^2)^2 + x^5",
    "x*(y - x^2)^2 + x^7",
    "x*(y - x^3)^2 + x^9",
    "x*(y - x^2)^2",
    "y^3 + x^4",
    "y^3 + y*x^3",
    "y^3 + x^5",
    "y^3 + x^6",
    "x^4 + y^4",
];

fn nonzero() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

fn map() -> impl Strategy<Value = LinearMap2> {
    prop::array::uniform4((-4i64..=4, 1i64..=3)).prop_filter_map("invertible", |[a, b, c, d]| {
        LinearMap2::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1), rat(d.0, d.1)).ok()
    })
}

/// `b·(y − x^m ω)² + x^n β` with `b = c·x + …`, `ω(0), β(0), c ≠ 0`.
///
/// `n ≥ m + 3`: below that the pulled-back `x^n` term moves the branch of
/// `∂_y` to order `n − 2` in the normalizing coordinates.
#[derive(Clone, Debug)]
struct Synth {
    m: u32,
    n: Option<u32>,
    phase: BivariatePolynomial,
}

fn synth() -> impl Strategy<Value = Synth> {
    (2u32..=4)
        .prop_flat_map(|m| {
            (
                Just(m),
                prop::option::weighted(0.8, m + 3..=14),
                nonzero(),
                prop::collection::vec(((0u32..=2, 0u32..=2), nonzero()), 0..3),
                (nonzero(), -3i64..=3),
                (nonzero(), -3i64..=3),
            )
        })
        .prop_map(|(m, n, c, extra, (w0, w1), (b0, b1))| {
            let x = BivariatePolynomial::x();
            let y = BivariatePolynomial::y();
            let mut b = x.scale(&c);
            for ((i, j), k) in extra {
                if i + j >= 1 {
                    b = &b + &BivariatePolynomial::monomial((i, j), k);
                }
            }
            let omega = BivariatePolynomial::from_terms([((0, 0), w0), ((1, 0), int(w1))]);
            let branch = &y - &(&x.pow(m) * &omega);
            let mut phase = &b * &branch.pow(2);
            if let Some(n) = n {
                let beta = BivariatePolynomial::from_terms([((0, 0), b0), ((1, 0), int(b1))]);
                phase = &phase + &(&x.pow(n) * &beta);
            }
            Synth { m, n, phase }
        })
        .prop_filter("b keeps its x term", |s| s.phase.coeff((1, 2)) != int(0))
}

fn order(n: Option<u32>) -> Order {
    n.map_or(Order::Infinite, Order::Finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthesized_phases_classify_back(s in synth()) {
        let kind = classify(&s.phase).unwrap().kind;
        prop_assert_eq!(kind, SingularityKind::D { m: Order::Finite(s.m), n: order(s.n) });
    }

    #[test]
    fn linear_height_bounded_by_height(s in synth()) {
        let kind = classify(&s.phase).unwrap().kind;
        let (h, hl) = (height(&kind).unwrap(), linear_height(&kind).unwrap());
        prop_assert!(hl <= h);
        let la = s.n.is_some_and(|n| 2 * s.m + 1 >= n);
        prop_assert_eq!(hl == h, la);
    }

    #[test]
    fn adapted_coordinates_reach_the_height(s in synth()) {
        let form = d_normal_form(&s.phase, default_truncation(&s.phase)).unwrap();
        let kind = classify(&s.phase).unwrap().kind;
        if let Some(n) = s.n {
            // on or above the line through (1, 2) and (n, 0)
            for (a, b) in taylor_support(&form.adapted).unwrap().points() {
                prop_assert!(2 * a + (n - 1) * b >= 2 * n, "({}, {}) below the line", a, b);
            }
        }
        let poly = polygon_of(&form.adapted).unwrap();
        prop_assert_eq!(poly.distance(), &height(&kind).unwrap());
    }

    #[test]
    fn kind_survives_linear_changes(idx in 0usize..CORPUS.len(), m in map()) {
        let p = parse_polynomial(CORPUS[idx]).unwrap();
        let before = classify(&p).unwrap().kind;
        let after = classify(&p.apply_linear(&m)).unwrap().kind;
        prop_assert_eq!(after.label(), before.label());
        prop_assert_eq!(after.d_params(), before.d_params());
    }

    #[test]
    fn synthesized_kind_survives_linear_changes(s in synth(), m in map()) {
        let after = classify(&s.phase.apply_linear(&m)).unwrap().kind;
        prop_assert_eq!(after, SingularityKind::D { m: Order::Finite(s.m), n: order(s.n) });
    }

    #[test]
    fn cubic_circle_order_in_range(c in prop::array::uniform4(-4i64..=4)) {
        prop_assume!(c.iter().any(|&v| v != 0));
        let cubic = BivariatePolynomial::from_terms(
            [(3, 0), (2, 1), (1, 2), (0, 3)].into_iter().zip(c).map(|(e, v)| (e, int(v))),
        );
        let order = circle_vanishing_order(&cubic).unwrap();
        prop_assert!((1..=3).contains(&order));
    }
}

#[test]
fn literal_d_phases_have_rank_one() {
    for text in ["(y - x^2)^2 + x^7", "(y - x^3)^2 + x^9", "(y - x^2)^2"] {
        let c = classify(&parse_polynomial(text).unwrap()).unwrap();
        assert_eq!(c.rank, 1, "{text}");
        assert_eq!(c.kind, SingularityKind::NondegenerateOrRankPositive { rank: 1 });
    }
}
