//! Exact bivariate polynomial and truncated power-series arithmetic.
//!
//! Everything here works over arbitrary-precision rationals. Floating point
//! only appears in [`crate::oscint`].

mod bivariate;
mod linear;
mod parse;
mod univariate;

pub use bivariate::{BivariatePolynomial, Exponent};
pub use linear::LinearMap2;
pub use parse::{parse_polynomial, ParseError};
pub use univariate::{univariate_order, Order, UnivariatePolynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `num/den` (or bare integer) text form.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts a leading `+`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale through the bit lengths
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub(crate) fn pow_rational(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
