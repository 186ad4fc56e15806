//! Binary forms: real linear factors and their multiplicities.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::polyring::{BivariatePolynomial, Rational};

/// Dense polynomial in one variable, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense(Vec<Rational>);

impl Dense {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Dense(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        Dense::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        Dense::new(
            (0..len)
                .map(|k| {
                    self.0.get(k).cloned().unwrap_or_else(Rational::zero)
                        - o.0.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        Dense(self.0.iter().map(|c| c / &l).collect())
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let mut r = self.0.clone();
        let dl = d.lead().clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Dense(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Dense::new(q), Dense::new(r))
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = if self.lead().is_positive() { 1 } else { -1 };
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    /// Number of distinct real roots (Sturm's theorem).
    fn distinct_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(Dense(r.0.iter().map(|c| -c).collect()));
        }
        let changes = |positive: bool| {
            let signs: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(positive)).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(false) - changes(true)
    }
}

/// Yun's square-free decomposition of a nonzero polynomial: entry `k-1`
/// collects the roots of multiplicity exactly `k`.
fn squarefree_decomposition(f: &Dense) -> Vec<Dense> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    loop {
        let a = b.gcd(&d);
        out.push(a.clone());
        b = b.div_rem(&a).0;
        if b.degree() == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
    }
    out
}

/// Real linear form `αx + βy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub alpha: Rational,
    pub beta: Rational,
}

impl LinearForm {
    pub fn x() -> Self {
        Self {
            alpha: Rational::one(),
            beta: Rational::zero(),
        }
    }
}

struct FormData {
    degree: u32,
    /// `P(1, t)`.
    dehomogenized: Dense,
    x_multiplicity: u32,
}

fn dehomogenize(hom: &BivariatePolynomial) -> Result<FormData, Error> {
    let degree = hom.total_degree().ok_or(Error::DomainViolation("zero form".into()))?;
    if !hom.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut coeffs = vec![Rational::zero(); degree as usize + 1];
    for ((_, b), c) in hom.terms() {
        coeffs[b as usize] = c.clone();
    }
    let dehomogenized = Dense::new(coeffs);
    let x_multiplicity = degree - dehomogenized.degree() as u32;
    Ok(FormData {
        degree,
        dehomogenized,
        x_multiplicity,
    })
}

/// `𝔫(P)`: the largest multiplicity of a real linear factor of the
/// homogeneous polynomial `P`, or 0 if it has none.
pub fn circle_vanishing_order(hom: &BivariatePolynomial) -> Result<u32, Error> {
    let data = dehomogenize(hom)?;
    let mut best = data.x_multiplicity;
    for (k, g) in squarefree_decomposition(&data.dehomogenized).iter().enumerate() {
        if g.distinct_real_roots() > 0 {
            best = best.max(k as u32 + 1);
        }
    }
    debug_assert!(best <= data.degree);
    Ok(best)
}

/// Linear factors of `P` with rational coefficients, found among the
/// multiplicity classes of degree one, with their multiplicities.
pub fn rational_linear_factors(hom: &BivariatePolynomial) -> Result<Vec<(LinearForm, u32)>, Error> {
    let data = dehomogenize(hom)?;
    let mut out = Vec::new();
    if data.x_multiplicity > 0 {
        out.push((LinearForm::x(), data.x_multiplicity));
    }
    for (k, g) in squarefree_decomposition(&data.dehomogenized).iter().enumerate() {
        if g.degree() == 1 {
            // g = g0 + g1 t, root r = -g0/g1, factor y - r x
            let r = -&g.0[0] / &g.0[1];
            out.push((
                LinearForm {
                    alpha: -r,
                    beta: Rational::one(),
                },
                k as u32 + 1,
            ));
        }
    }
    Ok(out)
}
