use nphk::polyring::{parse_polynomial, rat, BivariatePolynomial, LinearMap2, UnivariatePolynomial};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4).prop_filter("nonzero", |(n, _)| *n != 0)
}

fn poly() -> impl Strategy<Value = BivariatePolynomial> {
    prop::collection::vec(((0u32..=4, 0u32..=4), coeff()), 0..6)
        .prop_map(|terms| BivariatePolynomial::from_terms(terms.into_iter().map(|(e, (n, d))| (e, rat(n, d)))))
}

fn map() -> impl Strategy<Value = LinearMap2> {
    prop::array::uniform4((-3i64..=3, 1i64..=3)).prop_filter_map("invertible", |[a, b, c, d]| {
        LinearMap2::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1), rat(d.0, d.1)).ok()
    })
}

fn branch() -> impl Strategy<Value = UnivariatePolynomial> {
    prop::collection::vec((1u32..=4, coeff()), 0..3)
        .prop_map(|c| UnivariatePolynomial::from_coeffs(c.into_iter().map(|(k, (n, d))| (k, rat(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_identity(p in poly()) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn multiplication_distributes(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    }

    #[test]
    fn substitution_is_a_ring_map(p in poly(), q in poly(), m in map()) {
        prop_assert_eq!((&p + &q).apply_linear(&m), &p.apply_linear(&m) + &q.apply_linear(&m));
        prop_assert_eq!((&p * &q).apply_linear(&m), &p.apply_linear(&m) * &q.apply_linear(&m));
    }

    #[test]
    fn substitutions_compose(p in poly(), m1 in map(), m2 in map()) {
        prop_assert_eq!(p.apply_linear(&(&m2 * &m1)), p.apply_linear(&m2).apply_linear(&m1));
    }

    #[test]
    fn shear_is_undone_by_opposite_shear(p in poly(), psi in branch()) {
        let back = p.apply_shear(&psi).apply_shear(&-&psi);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn homogeneous_parts_sum_back(p in poly()) {
        let top = p.total_degree().unwrap_or(0);
        let sum = (0..=top).fold(BivariatePolynomial::zero(), |acc, k| &acc + &p.homogeneous_part(k));
        prop_assert_eq!(sum, p);
    }
}
