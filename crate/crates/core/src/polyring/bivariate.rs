use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use super::{format_rational, LinearMap2, Rational, UnivariatePolynomial};

/// Exponent pair `(α₁, α₂)` of the monomial `x^α₁ y^α₂`.
pub type Exponent = (u32, u32);

/// Sparse polynomial in `x` (≡ x₁) and `y` (≡ x₂) with exact rational
/// coefficients.
///
/// A polynomial may be marked as a jet truncated at total degree `N`: it is
/// then only known modulo terms of total degree `> N`, and arithmetic
/// propagates the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Exponent, Rational>,
    truncation: Option<u32>,
}

impl Default for BivariatePolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            truncation: None,
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn x() -> Self {
        Self::monomial((1, 0), Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial((0, 1), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() || self.truncation.is_some_and(|t| e.0 + e.1 > t) {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Marks the polynomial as a jet known modulo total degree `> n`.
    pub fn truncated(mut self, n: u32) -> Self {
        let n = self.truncation.map_or(n, |t| t.min(n));
        self.terms.retain(|e, _| e.0 + e.1 <= n);
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
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.keys().copied()
    }

    /// Largest total degree of a stored term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Smallest total degree of a stored term.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.truncation,
        };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(&e, v)| (e, v * c)).collect();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 == k)
                .map(|(&e, c)| (e, c.clone())),
        )
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.0 + e.1);
        match degs.next() {
            Some(d) => degs.all(|k| k == d),
            None => true,
        }
    }

    pub fn partial_x(&self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.truncation.map(|t| t.saturating_sub(1)),
        };
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.add_term((a - 1, b), c * Rational::from_integer(a.into()));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation: self.truncation.map(|t| t.saturating_sub(1)),
        };
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), c * Rational::from_integer(b.into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * super::pow_rational(x, a) * super::pow_rational(y, b);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| super::to_f64(c) * x.powi(a as i32) * y.powi(b as i32))
            .sum()
    }

    /// `self(sx(x, y), sy(x, y))`, computed modulo total degree `> limit`
    /// when a limit is given.
    pub fn substitute(&self, sx: &Self, sy: &Self, limit: Option<u32>) -> Self {
        let clip = |p: Self| match limit {
            Some(n) => p.truncated(n),
            None => p,
        };
        let max_a = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let mut px = vec![clip(Self::constant(Rational::one()))];
        for k in 1..=max_a as usize {
            let next = clip(&px[k - 1] * sx);
            px.push(next);
        }
        let mut py = vec![clip(Self::constant(Rational::one()))];
        for k in 1..=max_b as usize {
            let next = clip(&py[k - 1] * sy);
            py.push(next);
        }
        let mut out = clip(Self::zero());
        for (&(a, b), c) in &self.terms {
            let term = clip(&px[a as usize] * &py[b as usize]).scale(c);
            out = &out + &term;
        }
        if limit.is_none() {
            // recover the truncation implied by the inputs themselves
            out.truncation = match (self.truncation, out.truncation) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            if let Some(t) = out.truncation {
                out.terms.retain(|e, _| e.0 + e.1 <= t);
            }
        }
        out
    }

    /// `p(M x)`, where `M` acts on the column vector `(x, y)`.
    pub fn apply_linear(&self, m: &LinearMap2) -> Self {
        let [a, b, c, d] = m.entries();
        let sx = Self::from_terms([((1, 0), a.clone()), ((0, 1), b.clone())]);
        let sy = Self::from_terms([((1, 0), c.clone()), ((0, 1), d.clone())]);
        let mut out = self.substitute(&sx, &sy, None);
        // linear substitutions preserve total degree, so the jet order is unchanged
        out.truncation = self.truncation;
        out
    }

    /// `p(x, y + ψ(x))`.
    pub fn apply_shear(&self, psi: &UnivariatePolynomial) -> Self {
        let truncation = match (self.truncation, psi.truncation()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let mut powers = vec![UnivariatePolynomial::monomial(0, Rational::one())];
        for k in 1..=max_b as usize {
            let next = match truncation {
                Some(t) => powers[k - 1].mul_truncated(psi, t),
                None => &powers[k - 1] * psi,
            };
            powers.push(next);
        }
        let mut out = Self {
            terms: BTreeMap::new(),
            truncation,
        };
        // (y + ψ)^b = Σ_j C(b, j) y^j ψ^(b−j)
        for (&(a, b), c) in &self.terms {
            for j in 0..=b {
                let coef = c * Rational::from_integer(binomial(u64::from(b), u64::from(j)).into());
                for (k, v) in powers[(b - j) as usize].coeffs() {
                    out.add_term((a + k, j), &coef * v);
                }
            }
        }
        out
    }

    /// `p(x, ψ(x))` as a univariate jet modulo `x^(limit+1)`, or exactly
    /// when `limit` is `None` and everything involved is exact.
    pub fn substitute_curve(&self, psi: &UnivariatePolynomial, limit: Option<u32>) -> UnivariatePolynomial {
        let clip = |q: UnivariatePolynomial| match limit {
            Some(n) => q.truncated(n),
            None => q,
        };
        let mul = |a: &UnivariatePolynomial, b: &UnivariatePolynomial| match limit {
            Some(n) => a.mul_truncated(b, n),
            None => a * b,
        };
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let mut powers = vec![clip(UnivariatePolynomial::monomial(0, Rational::one()))];
        for k in 1..=max_b as usize {
            let next = mul(&powers[k - 1], psi);
            powers.push(next);
        }
        let mut out = clip(UnivariatePolynomial::zero());
        for (&(a, b), c) in &self.terms {
            let term = mul(&UnivariatePolynomial::monomial(a, c.clone()), &powers[b as usize]);
            out = &out + &term;
        }
        out
    }

    /// Terms in graded-lexicographic print order: higher total degree first,
    /// then higher power of `x`.
    pub fn graded_terms(&self) -> Vec<(Exponent, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&e, c)| (e, c.clone())).collect();
        v.sort_by_key(|(e, _)| std::cmp::Reverse((e.0 + e.1, e.0)));
        v
    }

    fn combined_truncation(&self, other: &Self) -> Option<u32> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        out.truncation = self.combined_truncation(rhs);
        if let Some(t) = out.truncation {
            out.terms.retain(|e, _| e.0 + e.1 <= t);
        }
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            truncation: self.truncation,
        }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let truncation = match (self.truncation, rhs.truncation) {
            (None, None) => None,
            (Some(n), None) => rhs.low_degree().map(|r| n + r),
            (None, Some(n)) => self.low_degree().map(|r| n + r),
            (Some(a), Some(b)) => {
                let t1 = rhs.low_degree().map(|r| a.saturating_add(r));
                let t2 = self.low_degree().map(|r| b.saturating_add(r));
                match (t1, t2) {
                    (Some(u), Some(v)) => Some(u.min(v)),
                    (u, v) => u.or(v).or(Some(a.min(b))),
                }
            }
        };
        let mut out = BivariatePolynomial {
            terms: BTreeMap::new(),
            truncation,
        };
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        if let Some(t) = truncation {
            out.terms.retain(|e, _| e.0 + e.1 <= t);
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, (a, b): Exponent) -> fmt::Result {
    let mut first = true;
    for (name, k) in [("x", a), ("y", b)] {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

pub(super) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Exponent, Rational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let is_const = *e == (0, 0);
        if is_const {
            f.write_str(&format_rational(&mag))?;
        } else if mag.is_one() {
            write_monomial(f, *e)?;
        } else {
            write!(f, "{}*", format_rational(&mag))?;
            write_monomial(f, *e)?;
        }
    }
    Ok(())
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.graded_terms())?;
        if let Some(t) = self.truncation {
            write!(f, " + O(|x|^{})", t + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, parse_polynomial, rat};

    fn p(s: &str) -> BivariatePolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn shear_examples() {
        let psi = UnivariatePolynomial::monomial(2, int(1));
        assert_eq!(p("y^2").apply_shear(&psi), p("y^2 + 2*x^2*y + x^4"));
        assert_eq!(p("(y - x^2)^2 + x^7").apply_shear(&psi), p("y^2 + x^7"));
        let q = p("x^3*y - 5*y^4 + 2/7*x*y");
        assert_eq!(q.apply_shear(&UnivariatePolynomial::zero()), q);
    }

    #[test]
    fn homogeneous_part_examples() {
        assert_eq!(p("(y - x^2)^2 + x^7").homogeneous_part(3), p("-2*x^2*y"));
        assert_eq!(p("x^2*y + y^3 + x^5").homogeneous_part(3), p("x^2*y + y^3"));
        assert!(p("x^2*y + y^3").homogeneous_part(9).is_zero());
    }

    #[test]
    fn linear_examples() {
        let id = LinearMap2::identity();
        assert_eq!(p("x^2").apply_linear(&id), p("x^2"));
        assert_eq!(p("x*y").apply_linear(&LinearMap2::swap()), p("x*y"));
        // (x, y) -> (x, y + x)
        let m = LinearMap2::new(int(1), int(0), int(1), int(1)).unwrap();
        assert_eq!(p("y^2").apply_linear(&m), p("y^2 + 2*x*y + x^2"));
    }

    #[test]
    fn jets_drop_high_terms() {
        let q = p("x^2 + x^3*y + y^9").truncated(4);
        assert_eq!(q.len(), 2);
        let sq = &q * &q;
        // known modulo degree > 4 + 2
        assert_eq!(sq.truncation(), Some(6));
        assert_eq!(sq.coeff((4, 0)), int(1));
        assert_eq!(sq.coeff((5, 1)), int(2));
        assert!(sq.coeff((6, 2)).is_zero());
    }

    #[test]
    fn print_order_is_graded_lex() {
        let q = p("y^2 + x^7 - 2*x^2*y + x^4 - 3/2");
        assert_eq!(q.to_string(), "x^7 + x^4 - 2*x^2*y + y^2 - 3/2");
        assert_eq!(BivariatePolynomial::zero().to_string(), "0");
        assert_eq!(p("-1/3*x*y").to_string(), "-1/3*x*y");
    }

    #[test]
    fn curve_substitution() {
        // x*(y - x^2)^2 + x^7 along y = x^2 leaves x^7
        let q = p("x*(y - x^2)^2 + x^7");
        let psi = UnivariatePolynomial::monomial(2, int(1));
        let b0 = q.substitute_curve(&psi, None);
        assert_eq!(b0, UnivariatePolynomial::monomial(7, int(1)));
        let jet = q.substitute_curve(&psi, Some(5));
        assert!(jet.is_zero());
        assert_eq!(jet.truncation(), Some(5));
        assert_eq!(q.eval(&rat(1, 2), &int(1)), rat(1, 2) * rat(9, 16) + rat(1, 128));
    }
}
