//! Power-law fits of `|I(λ, s)|` over a geometric `λ` grid.

use std::io::Write;

use num_complex::Complex64;

use super::quad::{eval_oscillatory_with, AmplitudeSpec, PhaseF64, QuadConfig};
use crate::error::Error;
use crate::polyring::BivariatePolynomial;

/// `{lmin·2^(k/per_octave)}` up to `lmax`, endpoints included.
pub fn geometric_grid(lmin: f64, lmax: f64, per_octave: u32) -> Result<Vec<f64>, Error> {
    if !(lmin > 1.0 && lmax >= lmin && lmax.is_finite()) || per_octave == 0 {
        return Err(Error::DomainViolation(format!(
            "lambda grid [{lmin}, {lmax}] must satisfy 1 < lmin <= lmax"
        )));
    }
    let steps = ((lmax / lmin).log2() * f64::from(per_octave)).round() as i32;
    Ok((0..=steps)
        .map(|k| lmin * 2f64.powf(f64::from(k) / f64::from(per_octave)))
        .collect())
}

/// One evaluated point of a decay run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecaySample {
    pub lambda: f64,
    pub value: Complex64,
    /// Estimated absolute quadrature error.
    pub err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub lambdas: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub samples: Vec<DecaySample>,
    pub gamma_hat: f64,
    /// Coefficient of `log log λ` when the log regressor is used.
    pub log_coefficient: Option<f64>,
    pub log_correction: bool,
    pub residual: f64,
    /// Per-point relative quadrature error estimates.
    pub quadrature_error_bound: Vec<f64>,
}

/// Evaluates every grid point; failures are kept per point.
pub fn decay_samples(
    phi: &PhaseF64,
    amp: &AmplitudeSpec,
    lambdas: &[f64],
    s: (f64, f64),
    cfg: &QuadConfig,
) -> Vec<Result<DecaySample, Error>> {
    lambdas
        .iter()
        .map(|&lambda| {
            eval_oscillatory_with(phi, amp, lambda, s, cfg).map(|v| DecaySample {
                lambda,
                value: v.value,
                err: v.err,
            })
        })
        .collect()
}

/// Least squares of `log|I|` on `(1, log λ)` or `(1, log λ, log log λ)`.
pub fn fit_samples(samples: &[DecaySample], with_log: bool) -> Result<DecayFit, Error> {
    let need = if with_log { 4 } else { 3 };
    if samples.len() < need {
        return Err(Error::DegenerateFit(format!(
            "{} points, need at least {need}",
            samples.len()
        )));
    }
    if samples.windows(2).any(|w| w[1].lambda <= w[0].lambda) {
        return Err(Error::DegenerateFit("lambdas must increase strictly".into()));
    }
    if let Some(s) = samples.iter().find(|s| !(s.value.norm() > f64::MIN_POSITIVE)) {
        return Err(Error::DegenerateFit(format!("|I| underflows at lambda = {}", s.lambda)));
    }
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| {
            let l = s.lambda.ln();
            let mut r = vec![1.0, l];
            if with_log {
                r.push(l.ln());
            }
            r
        })
        .collect();
    let rhs: Vec<f64> = samples.iter().map(|s| s.value.norm().ln()).collect();
    let beta = least_squares(&rows, &rhs)?;
    let residual = (rows
        .iter()
        .zip(&rhs)
        .map(|(r, y)| {
            let pred: f64 = r.iter().zip(&beta).map(|(a, b)| a * b).sum();
            (pred - y).powi(2)
        })
        .sum::<f64>()
        / samples.len() as f64)
        .sqrt();
    Ok(DecayFit {
        lambdas: samples.iter().map(|s| s.lambda).collect(),
        magnitudes: samples.iter().map(|s| s.value.norm()).collect(),
        samples: samples.to_vec(),
        gamma_hat: -beta[1],
        log_coefficient: with_log.then(|| beta[2]),
        log_correction: with_log,
        residual,
        quadrature_error_bound: samples.iter().map(|s| s.err / s.value.norm()).collect(),
    })
}

/// Normal equations solved by Gaussian elimination with partial pivoting;
/// the systems here are at most 3×3.
fn least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>, Error> {
    let k = rows[0].len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for (r, y) in rows.iter().zip(rhs) {
        for i in 0..k {
            for j in 0..k {
                a[i][j] += r[i] * r[j];
            }
            a[i][k] += r[i] * y;
        }
    }
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        if a[piv][col].abs() < 1e-12 {
            return Err(Error::DegenerateFit("singular normal equations".into()));
        }
        a.swap(col, piv);
        for i in 0..k {
            if i != col {
                let f = a[i][col] / a[col][col];
                for j in col..=k {
                    a[i][j] -= f * a[col][j];
                }
            }
        }
    }
    Ok((0..k).map(|i| a[i][k] / a[i][i]).collect())
}

/// Samples `|I(λ, s)|` on the grid and fits the decay exponent.
pub fn fit_decay(
    phi: &BivariatePolynomial,
    amp: &AmplitudeSpec,
    lambdas: &[f64],
    s: (f64, f64),
    with_log: bool,
) -> Result<DecayFit, Error> {
    let phase = PhaseF64::new(phi);
    amp.validate()?;
    amp.check_isolated(&phase)?;
    let samples = decay_samples(&phase, amp, lambdas, s, &QuadConfig::default())
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    fit_samples(&samples, with_log)
}

/// CSV with columns `lambda,re_I,im_I,abs_I,quad_err`.
pub fn write_decay_csv<W: Write>(mut w: W, samples: &[DecaySample]) -> std::io::Result<()> {
    writeln!(w, "lambda,re_I,im_I,abs_I,quad_err")?;
    for s in samples {
        writeln!(
            w,
            "{},{:.12e},{:.12e},{:.12e},{:.3e}",
            s.lambda,
            s.value.re,
            s.value.im,
            s.value.norm(),
            s.err
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(gamma: f64, log_power: f64) -> Vec<DecaySample> {
        geometric_grid(64.0, 16384.0, 1)
            .unwrap()
            .into_iter()
            .map(|l| DecaySample {
                lambda: l,
                value: Complex64::new(0.0, 3.0 * l.powf(-gamma) * l.ln().powf(log_power)),
                err: 0.0,
            })
            .collect()
    }

    #[test]
    fn grid_is_geometric() {
        let g = geometric_grid(64.0, 16384.0, 1).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[8], 16384.0);
        assert_eq!(geometric_grid(64.0, 128.0, 2).unwrap().len(), 3);
        assert!(geometric_grid(0.5, 8.0, 1).is_err());
    }

    #[test]
    fn recovers_pure_power() {
        let fit = fit_samples(&synthetic(0.6, 0.0), false).unwrap();
        assert!((fit.gamma_hat - 0.6).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn log_regressor_separates_log_factor() {
        let s = synthetic(0.5, 1.0);
        let plain = fit_samples(&s, false).unwrap();
        let with_log = fit_samples(&s, true).unwrap();
        assert!((with_log.gamma_hat - 0.5).abs() < 1e-9);
        assert!((with_log.log_coefficient.unwrap() - 1.0).abs() < 1e-8);
        assert!(plain.residual > with_log.residual);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let mut s = synthetic(0.5, 0.0);
        s[3].value = Complex64::new(0.0, 0.0);
        assert!(matches!(fit_samples(&s, false), Err(Error::DegenerateFit(_))));
        assert!(fit_samples(&synthetic(0.5, 0.0)[..2], false).is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let mut out = Vec::new();
        write_decay_csv(&mut out, &synthetic(1.0, 0.0)[..2]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "lambda,re_I,im_I,abs_I,quad_err");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("64,"));
    }
}
