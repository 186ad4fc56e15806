//! Coordinate changes that bring a rank-zero phase into D- or E-type normal
//! form: a linear map fixing the cubic part, then a shear `y ↦ y + ψ(x)`
//! along the critical branch.

use num_traits::Zero;

use super::forms::{rational_linear_factors, LinearForm};
use super::{complement, coordinates_from_forms};
use crate::error::Error;
use crate::polyring::{BivariatePolynomial, LinearMap2, Order, Rational, UnivariatePolynomial};

/// Data of the D-type normal form `c·x·y² + b₀(x) + …` in coordinates
/// `(x, y) = M(u, v)` followed by the shear along `ψ`.
#[derive(Clone, Debug)]
pub struct DNormalForm {
    pub map: LinearMap2,
    /// Coefficient of `x y²` after the linear change.
    pub c: Rational,
    pub psi: UnivariatePolynomial,
    pub b0: UnivariatePolynomial,
    pub m: Order,
    pub n: Order,
    pub adapted: BivariatePolynomial,
}

/// Data of the form `c·y³ + y·b₁(x) + b₀(x) + …` after the linear change
/// and the shear that removes the `y²`-coefficient.
#[derive(Clone, Debug)]
pub struct CubicNormalForm {
    pub map: LinearMap2,
    pub c: Rational,
    pub psi: UnivariatePolynomial,
    pub k0: Order,
    pub k1: Order,
    pub adapted: BivariatePolynomial,
}

/// Solves `g(x, ψ(x)) = 0` for `ψ` of order at least 2, where
/// `g = lead · x^shift · y + (terms that only see lower coefficients of ψ)`.
///
/// Newton steps on jets; each step roughly doubles the number of correct
/// coefficients. Returns `ψ` exactly if a polynomial solution is found,
/// otherwise a jet known modulo `x^(trunc+1)`.
fn solve_branch(g: &BivariatePolynomial, lead: &Rational, shift: u32, trunc: u32) -> UnivariatePolynomial {
    let gy = g.partial_y();
    let limit = trunc + shift;
    let mut psi = UnivariatePolynomial::zero();
    loop {
        let r = g.substitute_curve(&psi, Some(limit));
        if r.order().is_infinite() {
            // a polynomial branch leaves the top half of the jet empty
            let short = psi.degree().is_none_or(|d| 2 * d <= trunc);
            if short && g.substitute_curve(&psi, None).is_zero() {
                return psi;
            }
            return psi.truncated(trunc);
        }
        let d = gy.substitute_curve(&psi, Some(limit));
        debug_assert_eq!(d.order(), Order::Finite(shift));
        debug_assert_eq!(&d.coeff(shift), lead);
        let step = series_quotient(&r, &d, shift, trunc);
        psi = UnivariatePolynomial::from_coeffs(
            (&psi - &step)
                .coeffs()
                .filter(|(k, _)| *k <= trunc)
                .map(|(k, c)| (k, c.clone())),
        );
    }
}

/// `(r / d) mod x^(trunc+1)` where both are divisible by `x^shift` and
/// `d / x^shift` is a unit.
fn series_quotient(r: &UnivariatePolynomial, d: &UnivariatePolynomial, shift: u32, trunc: u32) -> UnivariatePolynomial {
    let num: Vec<Rational> = (0..=trunc).map(|k| r.coeff(k + shift)).collect();
    let den: Vec<Rational> = (0..=trunc).map(|k| d.coeff(k + shift)).collect();
    let mut q: Vec<Rational> = Vec::with_capacity(num.len());
    for n in 0..num.len() {
        let mut acc = num[n].clone();
        for i in 1..=n {
            if !den[i].is_zero() && !q[n - i].is_zero() {
                acc -= &den[i] * &q[n - i];
            }
        }
        q.push(acc / &den[0]);
    }
    UnivariatePolynomial::from_coeffs(q.into_iter().enumerate().map(|(k, c)| (k as u32, c)))
}

fn order_of(p: &BivariatePolynomial, b: u32) -> Order {
    p.terms()
        .filter(|((_, e), _)| *e == b)
        .map(|((a, _), _)| a)
        .min()
        .map_or(Order::Infinite, Order::Finite)
}

fn cubic_factors(p: &BivariatePolynomial) -> Result<Vec<(LinearForm, u32)>, Error> {
    let phi3 = p.homogeneous_part(3);
    if phi3.is_zero() {
        return Err(Error::NormalizationFailed("cubic part vanishes".into()));
    }
    rational_linear_factors(&phi3)
}

/// D-type normal form for a rank-zero phase with `𝔫(φ₃) = 2`.
pub fn d_normal_form(p: &BivariatePolynomial, trunc: u32) -> Result<DNormalForm, Error> {
    let factors = cubic_factors(p)?;
    let double = factors
        .iter()
        .find(|(_, k)| *k == 2)
        .map(|(l, _)| l.clone())
        .ok_or_else(|| Error::NormalizationFailed("cubic part has no double factor".into()))?;
    let simple = factors
        .iter()
        .find(|(_, k)| *k == 1)
        .map(|(l, _)| l.clone())
        .unwrap_or_else(|| complement(&double));
    let map = coordinates_from_forms(&simple, &double)?;
    let q = p.apply_linear(&map);
    let c = q.coeff((1, 2));
    if c.is_zero() || q.homogeneous_part(3).len() != 1 {
        return Err(Error::NormalizationFailed(format!(
            "cubic part became {}",
            q.homogeneous_part(3)
        )));
    }
    let two_c = &c + &c;
    let psi = solve_branch(&q.partial_y(), &two_c, 1, trunc);
    // exact input: b0 vanishing through trunc is read as b0 = 0
    let b0 = q.substitute_curve(&psi, (!psi.is_exact()).then_some(trunc + 1));
    let n = b0.order();
    let m = match psi.order() {
        Order::Infinite if !psi.is_exact() => return Err(Error::TruncationTooSmall(trunc)),
        m => m,
    };
    let adapted = q.apply_shear(&psi);
    Ok(DNormalForm {
        map,
        c,
        psi,
        b0,
        m,
        n,
        adapted,
    })
}

/// Normal form for a rank-zero phase whose cubic part is a perfect cube.
pub fn cubic_normal_form(p: &BivariatePolynomial, trunc: u32) -> Result<CubicNormalForm, Error> {
    let factors = cubic_factors(p)?;
    let main = factors
        .iter()
        .find(|(_, k)| *k == 3)
        .map(|(l, _)| l.clone())
        .ok_or_else(|| Error::NormalizationFailed("cubic part is not a cube".into()))?;
    let map = coordinates_from_forms(&complement(&main), &main)?;
    let q = p.apply_linear(&map);
    let c = q.coeff((0, 3));
    if c.is_zero() || q.homogeneous_part(3).len() != 1 {
        return Err(Error::NormalizationFailed(format!(
            "cubic part became {}",
            q.homogeneous_part(3)
        )));
    }
    let six_c = &c * Rational::from_integer(6.into());
    let psi = solve_branch(&q.partial_y().partial_y(), &six_c, 0, trunc);
    let adapted = q.apply_shear(&psi);
    Ok(CubicNormalForm {
        map,
        c,
        k0: order_of(&adapted, 0),
        k1: order_of(&adapted, 1),
        psi,
        adapted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, parse_polynomial};

    #[test]
    fn d_form_of_shifted_branch() {
        let p = parse_polynomial("x*(y - x^2)^2 + x^7").unwrap();
        let f = d_normal_form(&p, 30).unwrap();
        assert!(f.psi.is_exact());
        assert_eq!(f.psi, UnivariatePolynomial::monomial(2, int(1)));
        assert_eq!(f.m, Order::Finite(2));
        assert_eq!(f.n, Order::Finite(7));
        assert_eq!(f.adapted, parse_polynomial("x*y^2 + x^7").unwrap());
    }

    #[test]
    fn d_form_after_rotation() {
        // (x, y) -> (x + y, y - x) applied to x*y^2 + x^5 keeps the class
        let p = parse_polynomial("(x + y)*(y - x)^2 + (x + y)^5").unwrap();
        let f = d_normal_form(&p, 30).unwrap();
        assert_eq!(f.n, Order::Finite(5));
        assert_eq!(f.m, Order::Infinite);
    }

    #[test]
    fn d_form_series_branch() {
        // branch ψ is a genuine power series here
        let p = parse_polynomial("x*y^2 + y*x^3 + y^4 + x^9").unwrap();
        let f = d_normal_form(&p, 40).unwrap();
        assert!(!f.psi.is_exact());
        assert_eq!(f.m, Order::Finite(2));
        // b0 = -x^5/4 + ...
        assert_eq!(f.n, Order::Finite(5));
    }

    #[test]
    fn d_inf_detected_exactly() {
        let p = parse_polynomial("x*(y - x^3)^2").unwrap();
        let f = d_normal_form(&p, 20).unwrap();
        assert_eq!(f.n, Order::Infinite);
        assert_eq!(f.m, Order::Finite(3));
    }

    #[test]
    fn d_inf_along_series_branch() {
        // after x ↦ x − y the branch of y = x² is no longer polynomial
        let p = parse_polynomial("(x - y)*(y - x^2)^2").unwrap();
        let f = d_normal_form(&p, 24).unwrap();
        assert!(!f.psi.is_exact());
        assert_eq!(f.m, Order::Finite(2));
        assert_eq!(f.n, Order::Infinite);
        let g = f.adapted.truncated(24);
        assert_eq!(g.coeff((1, 2)), f.c);
        assert!(g.terms().all(|((_, b), _)| b >= 2));
    }

    #[test]
    fn newton_branch_solves_to_truncation() {
        let p = parse_polynomial("x*y^2 + y*x^3 + y^4 + 3*x^2*y^3 + x^9").unwrap();
        let f = d_normal_form(&p, 40).unwrap();
        let r = p.partial_y().substitute_curve(&f.psi, Some(41));
        assert!(r.order().is_infinite());
    }

    #[test]
    fn cubic_form_orders() {
        let p = parse_polynomial("(y - x^2)^3 + x^5 + 2*x^4*(y - x^2)").unwrap();
        let f = cubic_normal_form(&p, 30).unwrap();
        assert_eq!(f.k0, Order::Finite(5));
        assert_eq!(f.k1, Order::Finite(4));
    }
}
