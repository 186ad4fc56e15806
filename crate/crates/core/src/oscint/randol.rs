//! The Randol maximal function `M_m(s) = sup_λ λ^{1/2 + 1/(m+1)} |I(λ, s)|`,
//! approximated from below by a maximum over a finite `λ` grid, and its
//! empirical `L^q` sums at two grid refinements.

use std::io::Write;

use super::decay::geometric_grid;
use super::quad::{eval_oscillatory_with, eval_scan, AmplitudeSpec, OffsetGrid, PhaseF64, QuadConfig};
use crate::error::Error;
use crate::polyring::BivariatePolynomial;

pub fn randol_exponent(m: u32) -> f64 {
    0.5 + 1.0 / (f64::from(m) + 1.0)
}

/// `max_λ λ^{1/2+1/(m+1)} |I(λ, s)|` over the given grid.
pub fn randol_maximal(
    phi: &BivariatePolynomial,
    amp: &AmplitudeSpec,
    m: u32,
    s: (f64, f64),
    lambdas: &[f64],
) -> Result<f64, Error> {
    let phase = PhaseF64::new(phi);
    let e = randol_exponent(m);
    let cfg = QuadConfig::default();
    let mut best = 0.0_f64;
    for &lambda in lambdas {
        let v = eval_oscillatory_with(&phase, amp, lambda, s, &cfg)?;
        best = best.max(lambda.powf(e) * v.value.norm());
    }
    Ok(best)
}

/// One resolution of the scan: the offsets and the `λ` grid used for the sup.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanLevel {
    pub grid: OffsetGrid,
    pub lambdas: Vec<f64>,
}

impl ScanLevel {
    /// `n × n` offsets on `[-half, half]²`, `λ` from 1 to `2^octaves` at two
    /// points per octave.
    pub fn uniform(half: f64, n: usize, octaves: u32) -> Result<Self, Error> {
        let mut lambdas = vec![1.0];
        lambdas.extend(geometric_grid(2f64.sqrt(), 2f64.powi(octaves as i32), 2)?);
        Ok(Self {
            grid: OffsetGrid::uniform(-half, half, n),
            lambdas,
        })
    }

    /// The default pair: 33×33 with `λ ≤ 2¹²`, then 65×65 with `λ ≤ 2¹⁴`.
    pub fn default_pair() -> [Self; 2] {
        [
            Self::uniform(0.25, 33, 12).expect("valid grid"),
            Self::uniform(0.25, 65, 14).expect("valid grid"),
        ]
    }

    fn cell_area(&self) -> f64 {
        let step = |v: &[f64]| if v.len() > 1 { v[1] - v[0] } else { 1.0 };
        step(&self.grid.s1) * step(&self.grid.s2)
    }
}

/// `M_m` on every offset of a level, row-major.
pub fn randol_values(
    phase: &PhaseF64,
    amp: &AmplitudeSpec,
    m: u32,
    level: &ScanLevel,
    cfg: &QuadConfig,
) -> Result<Vec<f64>, Error> {
    let e = randol_exponent(m);
    let mut out = vec![0.0_f64; level.grid.len()];
    for &lambda in &level.lambdas {
        let scan = eval_scan(phase, amp, lambda, &level.grid, cfg)?;
        let w = lambda.powf(e);
        for (o, v) in out.iter_mut().zip(&scan.values) {
            *o = o.max(w * v.value.norm());
        }
    }
    Ok(out)
}

/// Riemann sums `Σ M^q · Δs` at both refinements and their ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct QReport {
    pub q: f64,
    pub sums: [f64; 2],
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandolScan {
    pub m: u32,
    pub levels: [ScanLevel; 2],
    /// `M_m` per offset, for each level.
    pub m_values: [Vec<f64>; 2],
    pub q_report: Vec<QReport>,
}

pub fn lq_sum(values: &[f64], cell_area: f64, q: f64) -> f64 {
    values.iter().map(|v| v.powf(q)).sum::<f64>() * cell_area
}

pub fn randol_lq_scan(
    phi: &BivariatePolynomial,
    amp: &AmplitudeSpec,
    m: u32,
    levels: [ScanLevel; 2],
    q_list: &[f64],
) -> Result<RandolScan, Error> {
    amp.validate()?;
    if let Some(q) = q_list.iter().find(|q| !(**q >= 1.0 && q.is_finite())) {
        return Err(Error::DomainViolation(format!("q = {q} must be at least 1")));
    }
    let phase = PhaseF64::new(phi);
    let cfg = QuadConfig::default();
    let coarse = randol_values(&phase, amp, m, &levels[0], &cfg)?;
    let fine = randol_values(&phase, amp, m, &levels[1], &cfg)?;
    let q_report = q_list
        .iter()
        .map(|&q| {
            let sums = [
                lq_sum(&coarse, levels[0].cell_area(), q),
                lq_sum(&fine, levels[1].cell_area(), q),
            ];
            QReport {
                q,
                ratio: sums[1] / sums[0],
                sums,
            }
        })
        .collect();
    Ok(RandolScan {
        m,
        levels,
        m_values: [coarse, fine],
        q_report,
    })
}

/// CSV with columns `s1,s2,M_value` for the finer level.
pub fn write_scan_csv<W: Write>(mut w: W, scan: &RandolScan) -> std::io::Result<()> {
    writeln!(w, "s1,s2,M_value")?;
    for ((s1, s2), v) in scan.levels[1].grid.points().zip(&scan.m_values[1]) {
        writeln!(w, "{s1},{s2},{v:.9e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    #[test]
    fn exponent_values() {
        assert!((randol_exponent(2) - 5.0 / 6.0).abs() < 1e-15);
        assert!((randol_exponent(1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn far_offsets_are_negligible() {
        let phi = parse_polynomial("x*(y - x^2)^2").unwrap();
        let amp = AmplitudeSpec::new(0.25).unwrap();
        let lambdas = geometric_grid(64.0, 1024.0, 1).unwrap();
        let near = randol_maximal(&phi, &amp, 2, (0.0, 0.0), &lambdas).unwrap();
        let far = randol_maximal(&phi, &amp, 2, (1.0, 1.0), &lambdas).unwrap();
        assert!(far < 1e-3 * near, "far {far} near {near}");
    }

    #[test]
    fn lq_sum_is_weighted_power_sum() {
        assert!((lq_sum(&[1.0, 2.0], 0.5, 2.0) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn scan_levels() {
        let [a, b] = ScanLevel::default_pair();
        assert_eq!(a.grid.len(), 33 * 33);
        assert_eq!(b.grid.len(), 65 * 65);
        assert!((a.lambdas.last().unwrap() - 4096.0).abs() < 1e-9);
        assert_eq!(a.lambdas[0], 1.0);
        assert!((a.cell_area() - (0.5f64 / 32.0).powi(2)).abs() < 1e-15);
    }
}
