use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::{format_rational, Rational};
use crate::error::Error;

/// Invertible 2×2 rational matrix acting on `(x, y)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap2 {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl LinearMap2 {
    /// The matrix `[[a, b], [c, d]]`; rejects singular matrices.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, Error> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            a: Rational::one(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::one(),
            c: Rational::one(),
            d: Rational::zero(),
        }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }
}

impl Mul for &LinearMap2 {
    type Output = LinearMap2;
    fn mul(self, r: Self) -> LinearMap2 {
        LinearMap2 {
            a: &self.a * &r.a + &self.b * &r.c,
            b: &self.a * &r.b + &self.b * &r.d,
            c: &self.c * &r.a + &self.d * &r.c,
            d: &self.c * &r.b + &self.d * &r.d,
        }
    }
}

impl fmt::Display for LinearMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c),
            format_rational(&self.d)
        )
    }
}
