use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Vanishing order of a series: a finite degree or `∞` for the zero series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Polynomial (or jet) in the single variable `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: BTreeMap<u32, Rational>,
    truncation: Option<u32>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
            truncation: None,
        }
    }

    pub fn monomial(degree: u32, c: Rational) -> Self {
        Self::from_coeffs([(degree, c)])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(coeffs: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs {
            out.add_term(k, c);
        }
        out
    }

    /// Marks this as a jet known modulo `x^(n+1)`, dropping higher terms.
    pub fn truncated(mut self, n: u32) -> Self {
        let n = self.truncation.map_or(n, |t| t.min(n));
        self.coeffs.retain(|&k, _| k <= n);
        self.truncation = Some(n);
        self
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn order(&self) -> Order {
        univariate_order(self)
    }

    /// Coefficient at the order, i.e. the leading coefficient of `x^-n q(x)`.
    pub fn leading_low_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next()
    }

    pub(crate) fn add_term(&mut self, k: u32, c: Rational) {
        if self.truncation.is_some_and(|t| k > t) || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                coeffs: BTreeMap::new(),
                truncation: self.truncation,
            };
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&k, c) in &self.coeffs {
            acc += c * super::pow_rational(x, k);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&k, c)| super::to_f64(c) * x.powi(k as i32))
            .sum()
    }

    /// `self^k`, keeping the truncation of `self`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial(0, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn combined_truncation(&self, other: &Self) -> Option<u32> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Smallest degree with a nonzero coefficient; `∞` for the zero polynomial.
pub fn univariate_order(q: &UnivariatePolynomial) -> Order {
    q.coeffs.keys().next().map_or(Order::Infinite, |&k| Order::Finite(k))
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: Self) -> UnivariatePolynomial {
        let mut out = self.clone();
        out.truncation = self.combined_truncation(rhs);
        if let Some(t) = out.truncation {
            out.coeffs.retain(|&k, _| k <= t);
        }
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
            truncation: self.truncation,
        }
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: Self) -> UnivariatePolynomial {
        self + &(-rhs)
    }
}

impl UnivariatePolynomial {
    /// `(self · rhs).truncated(n)` without forming the discarded terms.
    pub fn mul_truncated(&self, rhs: &Self, n: u32) -> Self {
        self.product(rhs, Some(n)).truncated(n)
    }

    fn product(&self, rhs: &Self, cap: Option<u32>) -> Self {
        // a jet known mod x^(N+1) times a series of order r is known mod x^(N+r+1)
        let lo = |p: &UnivariatePolynomial| p.order().finite();
        let truncation = match (self.truncation, rhs.truncation) {
            (None, None) => None,
            (Some(n), None) => lo(rhs).map(|r| n + r),
            (None, Some(n)) => lo(self).map(|r| n + r),
            (Some(a), Some(b)) => {
                let t1 = lo(rhs).map(|r| a.saturating_add(r));
                let t2 = lo(self).map(|r| b.saturating_add(r));
                match (t1, t2) {
                    (Some(u), Some(v)) => Some(u.min(v)),
                    (u, v) => u.or(v).or(Some(a.min(b))),
                }
            }
        };
        let mut out = UnivariatePolynomial {
            coeffs: BTreeMap::new(),
            truncation,
        };
        let top = match (truncation, cap) {
            (Some(t), Some(c)) => Some(t.min(c)),
            (t, c) => t.or(c),
        };
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                if top.is_some_and(|t| i + j > t) {
                    break;
                }
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: Self) -> UnivariatePolynomial {
        self.product(rhs, None)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(super::Exponent, Rational)> =
            self.coeffs.iter().rev().map(|(&k, c)| ((k, 0), c.clone())).collect();
        super::bivariate::write_terms(f, &terms)?;
        if let Some(t) = self.truncation {
            write!(f, " + O(x^{})", t + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    #[test]
    fn order_examples() {
        // x^7 (1 + x)
        let q = UnivariatePolynomial::from_coeffs([(7, int(1)), (8, int(1))]);
        assert_eq!(univariate_order(&q), Order::Finite(7));
        assert_eq!(univariate_order(&UnivariatePolynomial::zero()), Order::Infinite);
        let q = UnivariatePolynomial::from_coeffs([(0, int(3)), (2, int(-1))]);
        assert_eq!(univariate_order(&q), Order::Finite(0));
    }

    #[test]
    fn truncated_product_tracks_known_degree() {
        let a = UnivariatePolynomial::from_coeffs([(2, int(1)), (3, rat(1, 2))]).truncated(5);
        let b = UnivariatePolynomial::from_coeffs([(1, int(2))]);
        let c = &a * &b;
        assert_eq!(c.truncation(), Some(6));
        assert_eq!(c.coeff(3), int(2));
        assert_eq!(c.coeff(4), int(1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = UnivariatePolynomial::from_coeffs([(2, int(1))]);
        assert!((&a - &a).is_zero());
    }
}
