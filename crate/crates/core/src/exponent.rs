//! Exact sharp exponents `k_p`, boundedness thresholds, the interpolation
//! envelope and Knapp-type growth exponents.
//!
//! Everything is linear in `u = 1/p − 1/2`, which is the internal coordinate
//! of [`ExponentProfile`].

use num_traits::{One, Zero};

use crate::classify::{height, linear_height, SingularityKind};
use crate::error::Error;
use crate::polyring::{format_rational, int, rat, Order, Rational};

/// One affine piece `k = slope·u + intercept` on `[u_from, u_to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational,
    pub intercept: Rational,
    pub u_from: Rational,
    pub u_to: Rational,
}

impl Segment {
    pub fn eval(&self, u: &Rational) -> Rational {
        &self.slope * u + &self.intercept
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentProfile {
    pub kind: SingularityKind,
    pub h: Rational,
    pub h_lin: Rational,
    pub segments: Vec<Segment>,
}

impl ExponentProfile {
    /// `k` at `u = 1/p − 1/2 ∈ [0, 1/2]`.
    pub fn eval_u(&self, u: &Rational) -> Rational {
        self.segments
            .iter()
            .find(|s| &s.u_from <= u && u <= &s.u_to)
            .or(self.segments.last())
            .map(|s| s.eval(u))
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval_p(&self, p: &Rational) -> Result<Rational, Error> {
        Ok(self.eval_u(&u_of(p)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorSource {
    Sugi1,
    Sugi2,
    TrivialL2,
}

/// A point `(1/p, k)` at which the operator is known to be bounded for
/// every larger `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessAnchor {
    pub inv_p: Rational,
    pub k: Rational,
    pub source: AnchorSource,
}

/// `u = 1/p − 1/2` for `p ∈ [1, 2]`.
pub fn u_of(p: &Rational) -> Result<Rational, Error> {
    if p < &int(1) || p > &int(2) {
        return Err(Error::DomainViolation(format!(
            "p = {} outside [1, 2]",
            format_rational(p)
        )));
    }
    Ok(p.recip() - rat(1, 2))
}

/// D-type data `(m, n)` with `2m + 1 < n ≤ ∞`, the non-linearly-adapted case.
fn nla_params(kind: &SingularityKind) -> Option<(u32, Order)> {
    match kind {
        SingularityKind::D { m: Order::Finite(m), n } if kind.is_nla_d() => Some((*m, *n)),
        _ => None,
    }
}

/// `(slope, intercept)` of the two lines of the non-linearly-adapted formula.
fn nla_lines(m: u32, n: Order) -> [(Rational, Rational); 2] {
    let m = i64::from(m);
    let first = (int(5) - rat(1, 2 * m + 1), Rational::zero());
    let second = match n {
        Order::Finite(n) => {
            let n = i64::from(n);
            (int(6) - rat(2 * m + 2, n), rat(2 * m + 1, 2 * n) - rat(1, 2))
        }
        Order::Infinite => (int(6), rat(-1, 2)),
    };
    [first, second]
}

/// Where the two lines meet: `u = (2m+1)/(4m+4)`, whatever `n` is.
pub fn nla_crossover(m: u32) -> Rational {
    let m = i64::from(m);
    rat(2 * m + 1, 4 * m + 4)
}

fn la_slope(h: &Rational) -> Rational {
    int(6) - int(2) / h
}

/// The exact piecewise-linear profile of `k_p` in `u`.
pub fn kp_profile(kind: &SingularityKind) -> Result<ExponentProfile, Error> {
    let h = height(kind)?;
    let h_lin = linear_height(kind)?;
    let half = rat(1, 2);
    let segments = match nla_params(kind) {
        Some((m, n)) => {
            let [(s1, c1), (s2, c2)] = nla_lines(m, n);
            let cross = nla_crossover(m);
            vec![
                Segment {
                    slope: s1,
                    intercept: c1,
                    u_from: Rational::zero(),
                    u_to: cross.clone(),
                },
                Segment {
                    slope: s2,
                    intercept: c2,
                    u_from: cross,
                    u_to: half,
                },
            ]
        }
        None => vec![Segment {
            slope: la_slope(&h),
            intercept: Rational::zero(),
            u_from: Rational::zero(),
            u_to: half,
        }],
    };
    Ok(ExponentProfile {
        kind: kind.clone(),
        h,
        h_lin,
        segments,
    })
}

/// `k_p(v)` for a supported class at exact `p ∈ [1, 2]`.
pub fn kp_point(kind: &SingularityKind, p: &Rational) -> Result<Rational, Error> {
    let u = u_of(p)?;
    match nla_params(kind) {
        Some((m, n)) => {
            let [(s1, c1), (s2, c2)] = nla_lines(m, n);
            Ok((&s1 * &u + c1).max(&s2 * &u + c2))
        }
        None => Ok(la_slope(&height(kind)?) * u),
    }
}

/// `L^p` bound from an `L^q` averaged decay of order `γ`:
/// `p = 2q/(2q − 1)` and `k = ν − γ − 1/q`.
pub fn sugimoto_q_threshold(nu: i64, gamma: &Rational, q: &Rational) -> Result<(Rational, Rational), Error> {
    if q < &int(2) {
        return Err(Error::DomainViolation(format!("q = {} < 2", format_rational(q))));
    }
    let two_q = q * int(2);
    let inv_p = (&two_q - int(1)) / &two_q;
    let k = int(nu) - gamma - q.recip();
    Ok((inv_p, k))
}

/// `k = (2ν − 2γ)(1/p − 1/2)` from a uniform decay of order `γ`.
pub fn sugimoto_inf_threshold(nu: i64, gamma: &Rational, p: &Rational) -> Result<Rational, Error> {
    let u = u_of(p)?;
    Ok((int(2 * nu) - gamma * int(2)) * u)
}

/// Lower convex envelope of a set of anchors, as a function of `1/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    /// Hull vertices sorted by `1/p`.
    pub points: Vec<(Rational, Rational)>,
}

impl Envelope {
    /// Value at `inv_p`, or `None` outside the anchors' range.
    pub fn eval(&self, inv_p: &Rational) -> Option<Rational> {
        let first = self.points.first()?;
        if inv_p < &first.0 {
            return None;
        }
        for w in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if inv_p <= x1 {
                let t = (inv_p - x0) / (x1 - x0);
                return Some(y0 + (y1 - y0) * t);
            }
        }
        let last = self.points.last()?;
        (inv_p == &last.0).then(|| last.1.clone())
    }
}

pub fn interpolation_envelope(anchors: &[BoundednessAnchor]) -> Result<Envelope, Error> {
    if anchors.len() < 2 {
        return Err(Error::DomainViolation("need at least two anchors".into()));
    }
    let mut pts: Vec<(Rational, Rational)> = anchors.iter().map(|a| (a.inv_p.clone(), a.k.clone())).collect();
    pts.sort();
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateAnchor(format_rational(&w[0].0)));
        }
    }
    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a–p
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            if cross <= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(Envelope { points: hull })
}

/// The three anchors behind the non-linearly-adapted formula.
pub fn nla_anchors(m: u32, n: Order) -> Result<Vec<BoundednessAnchor>, Error> {
    let mi = i64::from(m);
    let (inv_p0, k0) = sugimoto_q_threshold(3, &(rat(1, 2) + rat(1, mi + 1)), &int(2 * mi + 2))?;
    let gamma1 = match n {
        Order::Finite(n) => rat(1, 2) + rat(1, 2 * i64::from(n)),
        Order::Infinite => rat(1, 2),
    };
    let k1 = sugimoto_inf_threshold(3, &gamma1, &int(1))?;
    Ok(vec![
        BoundednessAnchor {
            inv_p: rat(1, 2),
            k: Rational::zero(),
            source: AnchorSource::TrivialL2,
        },
        BoundednessAnchor {
            inv_p: inv_p0,
            k: k0,
            source: AnchorSource::Sugi1,
        },
        BoundednessAnchor {
            inv_p: Rational::one(),
            k: k1,
            source: AnchorSource::Sugi2,
        },
    ])
}

/// Checks that the max of the two lines equals the interpolation envelope
/// of the three anchors on `1/p ∈ [1/2, 1]`.
///
/// Both sides are continuous and piecewise linear, so agreement at every
/// breakpoint of either side (and the endpoints) is agreement everywhere;
/// midpoints between breakpoints are checked as well.
pub fn verify_nla_identity(m: u32, n: Order) -> Result<bool, Error> {
    if m < 1 {
        return Err(Error::DomainViolation("m must be positive".into()));
    }
    if let Order::Finite(nv) = n {
        if 2 * m + 1 >= nv {
            return Err(Error::DomainViolation(format!(
                "2m + 1 < n fails for m = {m}, n = {nv}"
            )));
        }
    }
    let anchors = nla_anchors(m, n)?;
    let env = interpolation_envelope(&anchors)?;
    let [(s1, c1), (s2, c2)] = nla_lines(m, n);
    let (lo, hi) = (rat(1, 2), Rational::one());
    let mut breaks: Vec<Rational> = vec![lo.clone(), hi.clone()];
    breaks.extend(env.points.iter().map(|p| p.0.clone()));
    if s1 != s2 {
        breaks.push(&lo + (&c2 - &c1) / (&s1 - &s2));
    }
    breaks.retain(|b| &lo <= b && b <= &hi);
    breaks.sort();
    breaks.dedup();
    let mids: Vec<Rational> = breaks.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    breaks.extend(mids);
    Ok(breaks.iter().all(|inv_p| {
        let u = inv_p - &lo;
        let lines = (&s1 * &u + &c1).max(&s2 * &u + &c2);
        env.eval(inv_p) == Some(lines)
    }))
}

/// Growth rate `2(3 − κ₁ − κ₂)(1/p − 1/2) − k` of the Knapp example
/// adapted to weights `κ`.
pub fn knapp_exponent(kappa: (&Rational, &Rational), p: &Rational, k: &Rational) -> Result<Rational, Error> {
    if kappa.0 < &Rational::zero() || kappa.1 < &Rational::zero() {
        return Err(Error::DomainViolation("negative weight".into()));
    }
    let u = u_of(p)?;
    Ok((int(3) - kappa.0 - kappa.1) * int(2) * u - k)
}

/// Growth rate of the example along the critical branch in the
/// non-linearly-adapted D case.
pub fn knapp_exponent_nla(m: u32, n: Order, p: &Rational, k: &Rational) -> Result<Rational, Error> {
    if let Order::Finite(nv) = n {
        if 2 * m + 1 >= nv {
            return Err(Error::DomainViolation(format!(
                "2m + 1 < n fails for m = {m}, n = {nv}"
            )));
        }
    }
    let u = u_of(p)?;
    let [_, (s2, c2)] = nla_lines(m, n);
    Ok(s2 * u + c2 - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: u32, n: Order) -> SingularityKind {
        SingularityKind::D { m: Order::Finite(m), n }
    }

    #[test]
    fn kp_point_examples() {
        let one = int(1);
        assert_eq!(kp_point(&d(2, Order::Finite(5)), &one).unwrap(), rat(12, 5));
        assert_eq!(kp_point(&d(2, Order::Finite(7)), &one).unwrap(), rat(17, 7));
        assert_eq!(kp_point(&d(3, Order::Finite(9)), &one).unwrap(), rat(22, 9));
        assert_eq!(kp_point(&d(2, Order::Infinite), &one).unwrap(), rat(5, 2));
        // u = 1/10 means p = 5/3
        assert_eq!(kp_point(&d(2, Order::Infinite), &rat(5, 3)).unwrap(), rat(12, 25));
        assert_eq!(kp_point(&SingularityKind::D4, &int(2)).unwrap(), Rational::zero());
        assert!(kp_point(&SingularityKind::UnsupportedHeightAbove2, &one).is_err());
        assert!(kp_point(&SingularityKind::D4, &rat(5, 2)).is_err());
    }

    #[test]
    fn profile_examples() {
        let p = kp_profile(&d(2, Order::Finite(7))).unwrap();
        assert_eq!(p.segments.len(), 2);
        assert_eq!(p.segments[0].u_to, rat(5, 12));
        assert_eq!(p.segments[0].eval(&rat(5, 12)), p.segments[1].eval(&rat(5, 12)));
        assert!(p.segments[0].slope < p.segments[1].slope);
        let e7 = kp_profile(&SingularityKind::E7 {
            k0: Order::Infinite,
            k1: Order::Finite(3),
        })
        .unwrap();
        assert_eq!(e7.segments.len(), 1);
        assert_eq!(e7.segments[0].slope, rat(44, 9));
        assert_eq!(kp_profile(&SingularityKind::CaseC).unwrap().segments[0].slope, int(5));
    }

    #[test]
    fn sugimoto_examples() {
        let (ip, k) = sugimoto_q_threshold(3, &(rat(1, 2) + rat(1, 3)), &int(6)).unwrap();
        assert_eq!((ip, k), (rat(11, 12), int(2)));
        let (ip, k) = sugimoto_q_threshold(3, &(rat(1, 2) + rat(1, 4)), &int(8)).unwrap();
        assert_eq!((ip, k), (rat(15, 16), rat(17, 8)));
        assert_eq!(
            sugimoto_q_threshold(3, &int(0), &int(2)).unwrap(),
            (rat(3, 4), rat(5, 2))
        );
        assert!(sugimoto_q_threshold(3, &int(0), &rat(3, 2)).is_err());
        assert_eq!(sugimoto_inf_threshold(3, &rat(3, 5), &int(1)).unwrap(), rat(12, 5));
        assert_eq!(sugimoto_inf_threshold(3, &int(1), &int(2)).unwrap(), int(0));
        assert_eq!(sugimoto_inf_threshold(3, &int(1), &int(1)).unwrap(), int(2));
    }

    fn anchor(x: Rational, k: Rational) -> BoundednessAnchor {
        BoundednessAnchor {
            inv_p: x,
            k,
            source: AnchorSource::Sugi2,
        }
    }

    #[test]
    fn envelope_examples() {
        let e = interpolation_envelope(&[anchor(rat(1, 2), int(0)), anchor(int(1), int(1))]).unwrap();
        assert_eq!(e.eval(&rat(3, 4)), Some(rat(1, 2)));
        let e = interpolation_envelope(&[
            anchor(rat(1, 2), int(0)),
            anchor(rat(11, 12), int(2)),
            anchor(int(1), rat(5, 2)),
        ])
        .unwrap();
        assert_eq!(e.points.len(), 3);
        let slope = (&e.points[1].1 - &e.points[0].1) / (&e.points[1].0 - &e.points[0].0);
        assert_eq!(slope, int(5) - rat(1, 5));
        let e = interpolation_envelope(&[
            anchor(rat(1, 2), int(0)),
            anchor(rat(3, 4), int(1)),
            anchor(int(1), int(2)),
        ])
        .unwrap();
        assert_eq!(e.points.len(), 2);
        assert!(matches!(
            interpolation_envelope(&[anchor(int(1), int(0)), anchor(int(1), int(1))]),
            Err(Error::DuplicateAnchor(_))
        ));
    }

    #[test]
    fn nla_identity_examples() {
        assert!(verify_nla_identity(2, Order::Finite(7)).unwrap());
        assert!(verify_nla_identity(3, Order::Finite(9)).unwrap());
        assert!(verify_nla_identity(2, Order::Infinite).unwrap());
        assert!(verify_nla_identity(2, Order::Finite(5)).is_err());
    }

    #[test]
    fn nla_identity_separates_neighbouring_n() {
        let env = interpolation_envelope(&nla_anchors(2, Order::Finite(7)).unwrap()).unwrap();
        let [(s1, c1), (s2, c2)] = nla_lines(2, Order::Finite(8));
        let u = rat(1, 2);
        assert_ne!(env.eval(&int(1)), Some((&s1 * &u + c1).max(&s2 * &u + c2)));
    }

    #[test]
    fn knapp_examples() {
        let t = rat(1, 3);
        assert_eq!(knapp_exponent((&t, &t), &int(1), &rat(12, 5)).unwrap(), rat(-1, 15));
        assert_eq!(
            knapp_exponent((&t, &t), &int(1), &(rat(7, 3) - rat(1, 100))).unwrap(),
            rat(1, 100)
        );
        let z = int(0);
        assert_eq!(knapp_exponent((&z, &z), &int(2), &int(3)).unwrap(), int(-3));
        let seven = Order::Finite(7);
        assert_eq!(knapp_exponent_nla(2, seven, &int(1), &rat(17, 7)).unwrap(), int(0));
        assert_eq!(
            knapp_exponent_nla(2, seven, &int(1), &(rat(17, 7) - rat(1, 100))).unwrap(),
            rat(1, 100)
        );
        assert!(knapp_exponent_nla(2, seven, &int(2), &int(0)).unwrap() < int(0));
        assert!(knapp_exponent_nla(2, Order::Finite(5), &int(1), &int(0)).is_err());
    }
}
