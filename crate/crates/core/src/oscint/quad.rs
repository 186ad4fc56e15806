//! Panel Gauss–Legendre evaluation of
//! `I(λ, s) = ∫ e^{iλ(φ(x) + s·x)} g(x) dx` over the support of the cutoff `g`.
//!
//! The outer variable `x` is split into panels whose width follows the
//! local oscillation rate; each `x` node carries its own panel layout along
//! the slice of the support at `x`. Offsets `s` on a tensor grid are handled by
//! separating `e^{iλ(s₁x + s₂y)}` out of the node sums, so a whole grid of
//! offsets costs little more than a single one.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::gauss::panel_rule;
use crate::error::Error;
use crate::polyring::{to_f64, BivariatePolynomial};

/// How the cutoff profile is laid over the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AmplitudeShape {
    /// `(1 − |x|²/R²)^order` on the disk `|x| < R`.
    #[default]
    Radial,
    /// `(1 − x₁²/R²)^order (1 − x₂²/R²)^order` on the square `|x₁|, |x₂| < R`.
    Product,
}

/// Compactly supported polynomial cutoff of radius `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeSpec {
    pub radius: f64,
    pub order: u32,
    pub shape: AmplitudeShape,
}

impl AmplitudeSpec {
    pub const DEFAULT_ORDER: u32 = 8;

    pub fn new(radius: f64) -> Result<Self, Error> {
        let amp = Self {
            radius,
            order: Self::DEFAULT_ORDER,
            shape: AmplitudeShape::Radial,
        };
        amp.validate()?;
        Ok(amp)
    }

    /// Tensor-product cutoff; makes `∫` factor for separable phases.
    pub fn product(radius: f64) -> Result<Self, Error> {
        Ok(Self {
            shape: AmplitudeShape::Product,
            ..Self::new(radius)?
        })
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidAmplitude(format!(
                "radius {} is not positive",
                self.radius
            )));
        }
        if self.order == 0 || self.order % 2 == 1 {
            return Err(Error::InvalidAmplitude(format!(
                "bump order {} is not a positive even number",
                self.order
            )));
        }
        Ok(())
    }

    /// `g` at squared distance `r2` from the origin.
    pub fn bump(&self, r2: f64) -> f64 {
        let t = 1.0 - r2 / (self.radius * self.radius);
        if t <= 0.0 {
            0.0
        } else {
            t.powi(self.order as i32)
        }
    }

    /// `g(x, y)`.
    pub fn at(&self, x: f64, y: f64) -> f64 {
        match self.shape {
            AmplitudeShape::Radial => self.bump(x * x + y * y),
            AmplitudeShape::Product => self.bump(x * x) * self.bump(y * y),
        }
    }

    /// Half-length of the support's slice at abscissa `x`.
    fn half_width(&self, x: f64) -> f64 {
        let r = self.radius;
        match self.shape {
            AmplitudeShape::Radial => (r * r - x * x).max(0.0).sqrt(),
            AmplitudeShape::Product => r,
        }
    }

    /// `∫ g`: `πR²/(order + 1)` for the disk, the square of the 1-D mass
    /// `R·2^(2n+1)(n!)²/(2n+1)!` for the product.
    pub fn mass(&self) -> f64 {
        let r = self.radius;
        match self.shape {
            AmplitudeShape::Radial => PI * r * r / (self.order as f64 + 1.0),
            AmplitudeShape::Product => {
                let n = self.order;
                // 2·∏_{k=1}^{n} 2k/(2k+1)
                let one_d = (1..=n).fold(2.0, |acc, k| acc * (2.0 * k as f64) / (2.0 * k as f64 + 1.0));
                (r * one_d).powi(2)
            }
        }
    }

    /// Rejects radii whose support contains a critical point of `φ` other
    /// than the origin.
    ///
    /// Local minima of `|∇φ|` on a grid are polished by Newton's method; a
    /// limit point away from the origin is reported.
    pub fn check_isolated(&self, phi: &PhaseF64) -> Result<(), Error> {
        let r = self.radius;
        let n = 96_i32;
        let h = r / f64::from(n);
        let grad2 = |x: f64, y: f64| {
            let (gx, gy) = phi.gradient(x, y);
            gx * gx + gy * gy
        };
        for i in -n + 1..n {
            for j in -n + 1..n {
                let (x, y) = (f64::from(i) * h, f64::from(j) * h);
                if self.at(x, y) == 0.0 || x.hypot(y) < 2.0 * h {
                    continue;
                }
                let g0 = grad2(x, y);
                let is_min = (-1..=1).all(|di| {
                    (-1..=1).all(|dj| (di == 0 && dj == 0) || grad2(x + f64::from(di) * h, y + f64::from(dj) * h) >= g0)
                });
                if !is_min {
                    continue;
                }
                if let Some((cx, cy)) = phi.newton_critical(x, y) {
                    let dist = cx.hypot(cy);
                    if dist < r && dist > 1e-3 * r {
                        return Err(Error::InvalidAmplitude(format!(
                            "critical point near ({cx:.4}, {cy:.4}) inside radius {r}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `φ` with `f64` coefficients, evaluated row by row.
#[derive(Clone, Debug)]
pub struct PhaseF64 {
    /// `(a, b, c)` for `c·x^a·y^b`.
    terms: Vec<(u32, u32, f64)>,
    max_b: usize,
}

impl PhaseF64 {
    pub fn new(p: &BivariatePolynomial) -> Self {
        let terms: Vec<_> = p.terms().map(|((a, b), c)| (a, b, to_f64(c))).collect();
        let max_b = terms.iter().map(|t| t.1 as usize).max().unwrap_or(0);
        Self { terms, max_b }
    }

    /// Coefficients of `y ↦ φ(x, y)`, lowest first.
    pub fn row(&self, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.max_b + 1];
        for &(a, b, c) in &self.terms {
            out[b as usize] += c * x.powi(a as i32);
        }
        out
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        horner(&self.row(x), y)
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let mut gx = 0.0;
        let mut gy = 0.0;
        for &(a, b, c) in &self.terms {
            if a > 0 {
                gx += c * f64::from(a) * x.powi(a as i32 - 1) * y.powi(b as i32);
            }
            if b > 0 {
                gy += c * f64::from(b) * x.powi(a as i32) * y.powi(b as i32 - 1);
            }
        }
        (gx, gy)
    }

    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        let mut h = [0.0; 3];
        let pw = |v: f64, k: i64| if k < 0 { 0.0 } else { v.powi(k as i32) };
        for &(a, b, c) in &self.terms {
            let (a, b) = (i64::from(a), i64::from(b));
            h[0] += c * (a * (a - 1)) as f64 * pw(x, a - 2) * pw(y, b);
            h[1] += c * (a * b) as f64 * pw(x, a - 1) * pw(y, b - 1);
            h[2] += c * (b * (b - 1)) as f64 * pw(x, a) * pw(y, b - 2);
        }
        h
    }

    /// Newton's method on `∇φ = 0`; `None` if it stalls on a singular Hessian.
    pub fn newton_critical(&self, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
        for _ in 0..60 {
            let (gx, gy) = self.gradient(x, y);
            let [hxx, hxy, hyy] = self.hessian(x, y);
            let det = hxx * hyy - hxy * hxy;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (hyy * gx - hxy * gy) / det;
            let dy = (hxx * gy - hxy * gx) / det;
            x -= dx;
            y -= dy;
            if dx.hypot(dy) < 1e-15 {
                break;
            }
        }
        let (gx, gy) = self.gradient(x, y);
        (gx.hypot(gy) < 1e-12 && x.is_finite() && y.is_finite()).then_some((x, y))
    }

    /// `|∂_x φ|` bound along the chord at `x`, from samples.
    fn max_dx_on_chord(&self, x: f64, half: f64) -> f64 {
        let samples = 33;
        (0..=samples)
            .map(|k| {
                let y = -half + 2.0 * half * f64::from(k) / f64::from(samples);
                self.gradient(x, y).0.abs()
            })
            .fold(0.0, f64::max)
    }
}

fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
}

fn horner_deriv(coeffs: &[f64], y: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, c)| acc * y + k as f64 * c)
}

/// Gauss–Legendre nodes on `[a, b]` with panels equidistributed against the
/// density `per_wave · rate(t)/(2π) + min_panels/(b − a)`.
fn layout(a: f64, b: f64, rate: impl Fn(f64) -> f64, per_wave: f64, min_panels: usize) -> (Vec<f64>, Vec<f64>) {
    if b <= a {
        return (Vec::new(), Vec::new());
    }
    const SAMPLES: usize = 256;
    let len = b - a;
    let step = len / SAMPLES as f64;
    let rates: Vec<f64> = (0..=SAMPLES).map(|k| rate(a + step * k as f64)).collect();
    let floor = min_panels as f64 / len;
    // cumulative panel count, piecewise constant density from the larger endpoint rate
    let mut cum = Vec::with_capacity(SAMPLES + 1);
    cum.push(0.0);
    for k in 0..SAMPLES {
        let rho = per_wave * rates[k].max(rates[k + 1]) / (2.0 * PI) + floor;
        cum.push(cum[k] + rho * step);
    }
    let panels = cum[SAMPLES].ceil().max(min_panels as f64) as usize;
    let scale = cum[SAMPLES] / panels as f64;
    let mut edges = Vec::with_capacity(panels + 1);
    edges.push(a);
    let mut seg = 0;
    for p in 1..panels {
        let target = scale * p as f64;
        while cum[seg + 1] < target {
            seg += 1;
        }
        let frac = (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
        edges.push(a + step * (seg as f64 + frac));
    }
    edges.push(b);
    let (gx, gw) = panel_rule();
    let mut nodes = Vec::with_capacity(panels * gx.len());
    let mut weights = Vec::with_capacity(panels * gx.len());
    for w in edges.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let half = 0.5 * (w[1] - w[0]);
        for (x, wt) in gx.iter().zip(gw) {
            nodes.push(mid + half * x);
            weights.push(half * wt);
        }
    }
    (nodes, weights)
}

/// A tensor grid of offsets, uniformly spaced along each axis.
#[derive(Clone, Debug, PartialEq)]
pub struct OffsetGrid {
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
}

impl OffsetGrid {
    pub fn point(s: (f64, f64)) -> Self {
        Self {
            s1: vec![s.0],
            s2: vec![s.1],
        }
    }

    /// `n × n` uniform grid on `[lo, hi]²`.
    pub fn uniform(lo: f64, hi: f64, n: usize) -> Self {
        let axis: Vec<f64> = if n == 1 {
            vec![0.5 * (lo + hi)]
        } else {
            (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
        };
        Self {
            s1: axis.clone(),
            s2: axis,
        }
    }

    pub fn len(&self) -> usize {
        self.s1.len() * self.s2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Row-major `(s1, s2)` pairs, matching the order of scan results.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.s1.iter().flat_map(move |&a| self.s2.iter().map(move |&b| (a, b)))
    }
}

/// Phase factors `e^{iλ s_l t}` for a uniformly spaced `s` axis, by recurrence.
fn offset_factors(lambda: f64, s: &[f64], t: f64, out: &mut [Complex64]) {
    match s.len() {
        0 => {}
        1 => out[0] = Complex64::cis(lambda * s[0] * t),
        n => {
            let step = Complex64::cis(lambda * (s[1] - s[0]) * t);
            let mut cur = Complex64::cis(lambda * s[0] * t);
            for (k, o) in out.iter_mut().enumerate().take(n) {
                if k % 16 == 0 {
                    cur = Complex64::cis(lambda * s[k] * t);
                }
                *o = cur;
                cur *= step;
            }
        }
    }
}

/// One quadrature pass at a fixed resolution; values in row-major order.
pub(crate) fn integrate_grid(
    phi: &PhaseF64,
    amp: &AmplitudeSpec,
    lambda: f64,
    grid: &OffsetGrid,
    per_wave: f64,
) -> (Vec<Complex64>, usize) {
    let r = amp.radius;
    let s1max = OffsetGrid::max_abs(&grid.s1);
    let s2max = OffsetGrid::max_abs(&grid.s2);
    let chord = |x: f64| amp.half_width(x);
    let (xs, xw) = layout(
        -r,
        r,
        |x| lambda * (phi.max_dx_on_chord(x, chord(x)) + s1max),
        per_wave,
        8,
    );
    let n2 = grid.s2.len();
    let columns: Vec<(Vec<Complex64>, usize)> = xs
        .par_iter()
        .map(|&x| {
            let half = chord(x);
            let row = phi.row(x);
            let (ys, yw) = layout(
                -half,
                half,
                |y| lambda * (horner_deriv(&row, y).abs() + s2max),
                per_wave,
                4,
            );
            let mut acc = vec![Complex64::new(0.0, 0.0); n2];
            let mut factors = vec![Complex64::new(0.0, 0.0); n2];
            for (&y, &w) in ys.iter().zip(&yw) {
                let g = amp.at(x, y);
                if g == 0.0 {
                    continue;
                }
                let f = Complex64::cis(lambda * horner(&row, y)) * (w * g);
                offset_factors(lambda, &grid.s2, y, &mut factors);
                for (a, e) in acc.iter_mut().zip(&factors) {
                    *a += f * e;
                }
            }
            (acc, ys.len())
        })
        .collect();
    let nodes = columns.iter().map(|c| c.1).sum();
    let n1 = grid.s1.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n1 * n2];
    let mut factors = vec![Complex64::new(0.0, 0.0); n1];
    for ((x, w), (col, _)) in xs.iter().zip(&xw).zip(&columns) {
        offset_factors(lambda, &grid.s1, *x, &mut factors);
        for (i, e) in factors.iter().enumerate() {
            let ew = e * w;
            for (o, c) in out[i * n2..(i + 1) * n2].iter_mut().zip(col) {
                *o += ew * c;
            }
        }
    }
    (out, nodes)
}

/// Quadrature controls. The error estimate compares against a pass with
/// half the panel density; on failure the density is raised and retried.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    /// Panels (of eight nodes) per local wavelength.
    pub per_wave: f64,
    pub rel_tol: f64,
    /// Absolute floor, as a fraction of `∫g`.
    pub abs_tol: f64,
    pub max_refinements: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            per_wave: 0.75,
            rel_tol: 1e-3,
            abs_tol: 1e-10,
            max_refinements: 3,
        }
    }
}

/// A quadrature result with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscValue {
    pub value: Complex64,
    pub err: f64,
}

/// Scan over an offset grid: values and error estimates in row-major order.
#[derive(Clone, Debug)]
pub struct ScanValues {
    pub values: Vec<OscValue>,
    pub nodes: usize,
}

pub fn eval_scan(
    phi: &PhaseF64,
    amp: &AmplitudeSpec,
    lambda: f64,
    grid: &OffsetGrid,
    cfg: &QuadConfig,
) -> Result<ScanValues, Error> {
    amp.validate()?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::DomainViolation(format!("lambda = {lambda} must be positive")));
    }
    let floor = cfg.abs_tol * amp.mass();
    let mut per_wave = cfg.per_wave;
    let (mut coarse, _) = integrate_grid(phi, amp, lambda, grid, 0.5 * per_wave);
    let mut worst = f64::INFINITY;
    for _ in 0..=cfg.max_refinements {
        let (fine, nodes) = integrate_grid(phi, amp, lambda, grid, per_wave);
        let values: Vec<OscValue> = fine
            .iter()
            .zip(&coarse)
            .map(|(f, c)| OscValue {
                value: *f,
                err: (f - c).norm(),
            })
            .collect();
        worst = values
            .iter()
            .map(|v| v.err / (cfg.rel_tol * v.value.norm() + floor))
            .fold(0.0, f64::max);
        if worst <= 1.0 {
            return Ok(ScanValues { values, nodes });
        }
        coarse = fine;
        per_wave *= 2.0;
    }
    Err(Error::QuadratureNotConverged {
        lambda,
        rel_err: worst * cfg.rel_tol,
    })
}

/// `I(λ, s)` with an error estimate.
pub fn eval_oscillatory_with(
    phi: &PhaseF64,
    amp: &AmplitudeSpec,
    lambda: f64,
    s: (f64, f64),
    cfg: &QuadConfig,
) -> Result<OscValue, Error> {
    let scan = eval_scan(phi, amp, lambda, &OffsetGrid::point(s), cfg)?;
    Ok(scan.values[0])
}

pub fn eval_oscillatory(
    phi: &BivariatePolynomial,
    amp: &AmplitudeSpec,
    lambda: f64,
    s: (f64, f64),
) -> Result<Complex64, Error> {
    Ok(eval_oscillatory_with(&PhaseF64::new(phi), amp, lambda, s, &QuadConfig::default())?.value)
}
