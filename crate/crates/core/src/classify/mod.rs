//! Normal-form classification of rank-zero critical points with height at
//! most two: D-type data `(m, n)`, the cubic-branch data `(k₀, k₁)`, the
//! heights `h`, `h_lin` and the multiplicity `𝔪`.

mod forms;
mod normal;

use std::fmt;

use num_traits::{One, Zero};

pub use forms::{circle_vanishing_order, rational_linear_factors, LinearForm};
pub use normal::{cubic_normal_form, d_normal_form, CubicNormalForm, DNormalForm};

use crate::error::Error;
use crate::newton::{polygon_of, FaceKind, NewtonPolygon};
use crate::polyring::{rat, BivariatePolynomial, LinearMap2, Order, Rational};

/// Classification outcome.
///
/// For the D series `m = ∞` means the critical branch `ψ` vanishes
/// identically and `n = ∞` is the `D_∞` case (`b₀ ≡ 0`). For the cubic
/// branch an infinite `k₀`/`k₁` means the coefficient vanishes identically
/// (or beyond the working truncation, where it cannot change the class).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    /// `𝔫(φ₃) = 1`.
    D4,
    /// `𝔫(φ₃) = 2`, singularity `D_{n+1}`.
    D {
        m: Order,
        n: Order,
    },
    E6 {
        k0: Order,
        k1: Order,
    },
    E7 {
        k0: Order,
        k1: Order,
    },
    E8 {
        k0: Order,
        k1: Order,
    },
    CaseBIV {
        k0: Order,
        k1: Order,
    },
    /// `φ₂ = φ₃ ≡ 0` and `𝔫(φ₄) ≤ 2`.
    CaseC,
    NondegenerateOrRankPositive {
        rank: u8,
    },
    UnsupportedHeightAbove2,
}

impl SingularityKind {
    /// Short family tag used for filtering and reports.
    pub fn tag(&self) -> &'static str {
        match self {
            SingularityKind::D4 => "D4",
            SingularityKind::D { .. } => "D",
            SingularityKind::E6 { .. } => "E6",
            SingularityKind::E7 { .. } => "E7",
            SingularityKind::E8 { .. } => "E8",
            SingularityKind::CaseBIV { .. } => "CaseBIV",
            SingularityKind::CaseC => "CaseC",
            SingularityKind::NondegenerateOrRankPositive { .. } => "RankPositive",
            SingularityKind::UnsupportedHeightAbove2 => "Unsupported",
        }
    }

    /// Arnold-style label: `D8`, `D_inf`, `E6`, ...
    pub fn label(&self) -> String {
        match self {
            SingularityKind::D {
                n: Order::Finite(n), ..
            } => format!("D{}", n + 1),
            SingularityKind::D { n: Order::Infinite, .. } => "D_inf".into(),
            other => other.tag().into(),
        }
    }

    pub fn is_supported(&self) -> bool {
        !matches!(
            self,
            SingularityKind::NondegenerateOrRankPositive { .. } | SingularityKind::UnsupportedHeightAbove2
        )
    }

    /// `(m, n)` for the D series with `𝔫(φ₃) = 2`.
    pub fn d_params(&self) -> Option<(Order, Order)> {
        match self {
            SingularityKind::D { m, n } => Some((*m, *n)),
            _ => None,
        }
    }

    /// Whether the `D_{n+1}` branch with `2m + 1 < n` applies.
    pub fn is_nla_d(&self) -> bool {
        match self {
            SingularityKind::D { m: Order::Finite(m), n } => match n {
                Order::Finite(n) => 2 * m + 1 < *n,
                Order::Infinite => true,
            },
            _ => false,
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityKind::D { m, n } => write!(f, "{} (m = {m}, n = {n})", self.label()),
            SingularityKind::E6 { k0, k1 }
            | SingularityKind::E7 { k0, k1 }
            | SingularityKind::E8 { k0, k1 }
            | SingularityKind::CaseBIV { k0, k1 } => write!(f, "{} (k0 = {k0}, k1 = {k1})", self.tag()),
            SingularityKind::NondegenerateOrRankPositive { rank } => write!(f, "rank {rank} (out of scope)"),
            SingularityKind::UnsupportedHeightAbove2 => f.write_str("h > 2 (unsupported)"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Heights and adaptedness of a classified phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub h: Rational,
    pub h_lin: Rational,
    pub multiplicity: u8,
    pub linearly_adapted: bool,
}

/// Everything the classifier builds on the way to a [`SingularityKind`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: SingularityKind,
    pub rank: u8,
    /// `𝔫(φ₃)` when the cubic part is nonzero.
    pub cubic_order: Option<u32>,
    pub d_form: Option<DNormalForm>,
    pub cubic_form: Option<CubicNormalForm>,
    /// Coordinates in which the Newton distance equals the height.
    pub adapted: Option<BivariatePolynomial>,
}

/// Default working truncation `2·deg(p) + 16`.
pub fn default_truncation(p: &BivariatePolynomial) -> u32 {
    2 * p.total_degree().unwrap_or(0) + 16
}

/// Rank of the Hessian of the quadratic part.
pub fn rank_at_origin(p: &BivariatePolynomial) -> u8 {
    let a = p.coeff((2, 0));
    let b = p.coeff((1, 1));
    let c = p.coeff((0, 2));
    if a.is_zero() && b.is_zero() && c.is_zero() {
        0
    } else if (Rational::from_integer(4.into()) * &a * &c - &b * &b).is_zero() {
        1
    } else {
        2
    }
}

fn check_critical(p: &BivariatePolynomial) -> Result<(), Error> {
    if p.support().any(|(a, b)| a + b <= 1) {
        return Err(Error::NotCriticalAtOrigin);
    }
    if p.is_zero() {
        return Err(Error::EmptySupport);
    }
    Ok(())
}

/// Full classification pipeline with the default truncation.
pub fn classify(p: &BivariatePolynomial) -> Result<Classification, Error> {
    classify_with(p, default_truncation(p))
}

pub fn classify_with(p: &BivariatePolynomial, trunc: u32) -> Result<Classification, Error> {
    check_critical(p)?;
    let rank = rank_at_origin(p);
    let mut out = Classification {
        kind: SingularityKind::UnsupportedHeightAbove2,
        rank,
        cubic_order: None,
        d_form: None,
        cubic_form: None,
        adapted: None,
    };
    if rank > 0 {
        out.kind = SingularityKind::NondegenerateOrRankPositive { rank };
        return Ok(out);
    }
    let phi3 = p.homogeneous_part(3);
    if !phi3.is_zero() {
        let order = circle_vanishing_order(&phi3)?;
        out.cubic_order = Some(order);
        match order {
            1 => {
                out.kind = SingularityKind::D4;
                out.adapted = Some(p.clone());
            }
            2 => {
                let form = d_normal_form(p, trunc)?;
                out.kind = SingularityKind::D { m: form.m, n: form.n };
                out.adapted = Some(form.adapted.clone());
                out.d_form = Some(form);
            }
            _ => {
                let form = cubic_normal_form(p, trunc)?;
                out.kind = dispatch_cubic(form.k0, form.k1);
                out.adapted = Some(form.adapted.clone());
                out.cubic_form = Some(form);
            }
        }
        return Ok(out);
    }
    let phi4 = p.homogeneous_part(4);
    if !phi4.is_zero() && circle_vanishing_order(&phi4)? <= 2 {
        out.kind = SingularityKind::CaseC;
        out.adapted = Some(p.clone());
    }
    Ok(out)
}

fn dispatch_cubic(k0: Order, k1: Order) -> SingularityKind {
    let is = |o: Order, k: u32| o == Order::Finite(k);
    // the x^k0 / y x^k1 terms compete on weighted degree; the lowest one wins
    if is(k0, 4) {
        SingularityKind::E6 { k0, k1 }
    } else if is(k1, 3) {
        SingularityKind::E7 { k0, k1 }
    } else if is(k0, 5) {
        SingularityKind::E8 { k0, k1 }
    } else if is(k0, 6) || is(k1, 4) {
        SingularityKind::CaseBIV { k0, k1 }
    } else {
        SingularityKind::UnsupportedHeightAbove2
    }
}

/// Classification tag of `p`.
pub fn classify_singularity(p: &BivariatePolynomial) -> Result<SingularityKind, Error> {
    Ok(classify(p)?.kind)
}

/// Height `h(φ)` of a supported class.
pub fn height(kind: &SingularityKind) -> Result<Rational, Error> {
    match kind {
        SingularityKind::D4 => Ok(rat(3, 2)),
        SingularityKind::D {
            n: Order::Finite(n), ..
        } => Ok(rat(2 * i64::from(*n), i64::from(*n) + 1)),
        SingularityKind::D { n: Order::Infinite, .. } => Ok(rat(2, 1)),
        SingularityKind::E6 { .. } => Ok(rat(12, 7)),
        SingularityKind::E7 { .. } => Ok(rat(9, 5)),
        SingularityKind::E8 { .. } => Ok(rat(15, 8)),
        SingularityKind::CaseBIV { .. } | SingularityKind::CaseC => Ok(rat(2, 1)),
        other => Err(Error::UnsupportedKind(other.to_string())),
    }
}

/// Linear height `h_lin(φ)`.
pub fn linear_height(kind: &SingularityKind) -> Result<Rational, Error> {
    match kind {
        SingularityKind::D {
            m: Order::Finite(m), ..
        } => {
            let branch = rat(2 * i64::from(*m) + 1, i64::from(*m) + 1);
            Ok(height(kind)?.min(branch))
        }
        SingularityKind::D { m: Order::Infinite, .. } => height(kind),
        other => height(other),
    }
}

/// `𝔪`, read off the Newton polygon in the adapted coordinates the
/// classifier built: 1 iff the principal face there is a vertex.
pub fn multiplicity_mfrak(p: &BivariatePolynomial, kind: &SingularityKind) -> Result<u8, Error> {
    if !kind.is_supported() {
        return Err(Error::UnsupportedKind(kind.to_string()));
    }
    let c = classify(p)?;
    if c.kind != *kind {
        return Err(Error::DomainViolation(format!(
            "phase classifies as {}, not {kind}",
            c.kind
        )));
    }
    adapted_multiplicity(&c)
}

fn adapted_polygon(c: &Classification) -> Result<NewtonPolygon, Error> {
    let adapted = c
        .adapted
        .as_ref()
        .ok_or_else(|| Error::UnsupportedKind(c.kind.to_string()))?;
    polygon_of(adapted)
}

fn adapted_multiplicity(c: &Classification) -> Result<u8, Error> {
    let poly = adapted_polygon(c)?;
    Ok(u8::from(poly.principal_face().kind() == FaceKind::Vertex))
}

/// Newton polygon of the adapted form built during classification.
pub fn adapted_newton_polygon(c: &Classification) -> Result<NewtonPolygon, Error> {
    adapted_polygon(c)
}

pub fn height_report(c: &Classification) -> Result<HeightReport, Error> {
    let h = height(&c.kind)?;
    let h_lin = linear_height(&c.kind)?;
    Ok(HeightReport {
        linearly_adapted: h == h_lin,
        multiplicity: adapted_multiplicity(c)?,
        h,
        h_lin,
    })
}

/// Normalizing map for a form `P` whose factor `main` should become `y`
/// and `other` should become `x`: returns `M` with `P(M(u, v))` expressed
/// in the new coordinates.
pub(crate) fn coordinates_from_forms(other: &LinearForm, main: &LinearForm) -> Result<LinearMap2, Error> {
    // rows of A send (x, y) to (u, v); the substitution needs A⁻¹
    let a = LinearMap2::new(
        other.alpha.clone(),
        other.beta.clone(),
        main.alpha.clone(),
        main.beta.clone(),
    )
    .map_err(|_| Error::NormalizationFailed("factors are proportional".into()))?;
    Ok(a.inverse())
}

/// A linear form independent of `main`: `x` unless `main` is a multiple of `x`.
pub(crate) fn complement(main: &LinearForm) -> LinearForm {
    if main.beta.is_zero() {
        LinearForm {
            alpha: Rational::zero(),
            beta: Rational::one(),
        }
    } else {
        LinearForm::x()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, parse_polynomial};

    fn kind(s: &str) -> SingularityKind {
        classify_singularity(&parse_polynomial(s).unwrap()).unwrap()
    }

    #[test]
    fn rank_examples() {
        let r = |s: &str| rank_at_origin(&parse_polynomial(s).unwrap());
        assert_eq!(r("x^2 + y^2"), 2);
        assert_eq!(r("x^2 + y^3"), 1);
        assert_eq!(r("x^2*y + y^3"), 0);
        assert_eq!(r("(x + y)^2"), 1);
    }

    #[test]
    fn classify_examples() {
        assert!(matches!(
            kind("y^3 + x^4"),
            SingularityKind::E6 {
                k0: Order::Finite(4),
                ..
            }
        ));
        assert!(matches!(
            kind("y^3 + y*x^3"),
            SingularityKind::E7 {
                k1: Order::Finite(3),
                ..
            }
        ));
        assert!(matches!(kind("y^3 + x^5"), SingularityKind::E8 { .. }));
        assert!(matches!(kind("y^3 + x^6"), SingularityKind::CaseBIV { .. }));
        assert!(matches!(kind("y^3 + y*x^4"), SingularityKind::CaseBIV { .. }));
        assert_eq!(kind("y^3 + x^7"), SingularityKind::UnsupportedHeightAbove2);
        assert_eq!(
            kind("x*(y - x^2)^2 + x^7"),
            SingularityKind::D {
                m: Order::Finite(2),
                n: Order::Finite(7)
            }
        );
        assert_eq!(kind("x^4 + y^4"), SingularityKind::CaseC);
        assert_eq!(kind("x^2*y + y^3"), SingularityKind::D4);
        assert_eq!(kind("x^3*y"), SingularityKind::UnsupportedHeightAbove2);
        assert_eq!(kind("x^5 + y^5"), SingularityKind::UnsupportedHeightAbove2);
        assert_eq!(
            kind("(y - x^2)^2 + x^7"),
            SingularityKind::NondegenerateOrRankPositive { rank: 1 }
        );
        assert!(matches!(
            classify_singularity(&parse_polynomial("x + y^2").unwrap()),
            Err(Error::NotCriticalAtOrigin)
        ));
    }

    #[test]
    fn heights() {
        let d27 = SingularityKind::D {
            m: Order::Finite(2),
            n: Order::Finite(7),
        };
        assert_eq!(height(&d27).unwrap(), rat(7, 4));
        assert_eq!(linear_height(&d27).unwrap(), rat(5, 3));
        let d25 = SingularityKind::D {
            m: Order::Finite(2),
            n: Order::Finite(5),
        };
        assert_eq!(linear_height(&d25).unwrap(), rat(5, 3));
        assert_eq!(height(&d25).unwrap(), rat(5, 3));
        let e8 = kind("y^3 + x^5");
        assert_eq!(height(&e8).unwrap(), rat(15, 8));
        let dinf = SingularityKind::D {
            m: Order::Finite(2),
            n: Order::Infinite,
        };
        assert_eq!(height(&dinf).unwrap(), int(2));
        assert_eq!(linear_height(&kind("y^3 + x^4")).unwrap(), rat(12, 7));
        assert!(height(&SingularityKind::UnsupportedHeightAbove2).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let m = |s: &str| {
            let p = parse_polynomial(s).unwrap();
            let k = classify_singularity(&p).unwrap();
            multiplicity_mfrak(&p, &k).unwrap()
        };
        assert_eq!(m("x*(y - x^2)^2 + x^7"), 0);
        assert_eq!(m("y^3 + x^4"), 0);
        assert_eq!(m("x^2*y^2 + x^4*y^4"), 1);
        assert_eq!(m("x*(y - x^2)^2"), 0);
        assert_eq!(m("x^4 + y^4"), 0);
    }
}
