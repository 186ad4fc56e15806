//! Orchestration behind the `nphk` binary: `analyze`, `decay` and `corpus`.
//!
//! Every command writes its human-readable output to a caller-supplied
//! writer and its artifacts to the requested paths, so runs are testable
//! without a process boundary.

mod corpus;
mod report;
mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub use corpus::{
    check_nla_identities, check_random_distances, check_row, check_sandwich, corpus, distance_by_supporting_lines,
    nla_parameter_grid, poison_rows, random_supports, run_corpus, sandwich_p_values, CheckResult, CorpusOptions,
    CorpusRow,
};
pub use report::{
    analyze_text, default_p_list, report_for, summary_lines, AnalysisReport, FaceReport, KpEntry, PolygonReport,
    SegmentReport, WARN_RANK, WARN_UNSUPPORTED,
};
pub use svg::{decay_svg, polygon_svg};

use crate::classify::{classify, height, SingularityKind};
use crate::error::Error;
use crate::newton::polygon_of;
use crate::oscint::{
    decay_samples, fit_samples, geometric_grid, randol_lq_scan, write_decay_csv, write_scan_csv, AmplitudeSpec,
    DecayFit, PhaseF64, QuadConfig, RandolScan, ScanLevel,
};
use crate::polyring::{format_rational, int, parse_polynomial, parse_rational, to_f64, Order, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OUT_OF_SCOPE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
/// Corpus mismatches.
pub const EXIT_MISMATCH: i32 = 5;

/// Largest `λ` accepted by `decay`.
pub const LAMBDA_CEILING: f64 = 65536.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Decay,
    Corpus,
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub phi: Option<String>,
    pub p_list: Vec<Rational>,
    pub lmin: Option<f64>,
    pub lmax: Option<f64>,
    /// `decay`: λ points per octave. Randol mode: coarse offset grid size.
    pub grid: Option<u32>,
    pub radius: Option<f64>,
    pub randol: bool,
    pub m: Option<u32>,
    pub q_list: Vec<f64>,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub filter: Option<String>,
    pub poison: Option<String>,
    pub seed: u64,
    pub with_log: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            phi: None,
            p_list: default_p_list(),
            lmin: None,
            lmax: None,
            grid: None,
            radius: None,
            randol: false,
            m: None,
            q_list: vec![2.0, 8.0],
            json: None,
            csv: None,
            svg: None,
            filter: None,
            poison: None,
            seed: 0,
            with_log: false,
        }
    }

    pub fn with_phi(mut self, phi: &str) -> Self {
        self.phi = Some(phi.to_string());
        self
    }

    fn phi_text(&self) -> Result<&str, Error> {
        self.phi
            .as_deref()
            .ok_or_else(|| Error::DomainViolation("--phi is required".into()))
    }

    pub fn validate(&self) -> Result<(), Error> {
        if let Some(p) = self.p_list.iter().find(|p| **p < int(1) || **p > int(2)) {
            return Err(Error::DomainViolation(format!(
                "p = {} outside [1, 2]",
                format_rational(p)
            )));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::DomainViolation(format!("radius {r} must be positive")));
            }
        }
        if let Some(l) = self.lmax {
            if l > LAMBDA_CEILING {
                return Err(Error::DomainViolation(format!("lmax {l} exceeds {LAMBDA_CEILING}")));
            }
        }
        if self.grid == Some(0) {
            return Err(Error::DomainViolation("--grid must be positive".into()));
        }
        Ok(())
    }
}

/// Comma-separated exact rationals such as `1,4/3,2`.
pub fn parse_p_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',')
        .map(|t| parse_rational(t.trim()).ok_or_else(|| Error::DomainViolation(format!("not a rational: {t:?}"))))
        .collect()
}

/// Comma-separated decimals such as `2,8`.
pub fn parse_q_list(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::DomainViolation(format!("not a number: {t:?}")))
        })
        .collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NotCriticalAtOrigin
        | Error::EmptySupport
        | Error::DomainViolation(_)
        | Error::InvalidAmplitude(_)
        | Error::SingularMap
        | Error::NotHomogeneous
        | Error::FaceNotIncident
        | Error::DuplicateAnchor(_) => EXIT_INPUT,
        Error::UnsupportedKind(_) | Error::NormalizationFailed(_) | Error::TruncationTooSmall(_) => EXIT_OUT_OF_SCOPE,
        Error::QuadratureNotConverged { .. } | Error::DegenerateFit(_) => EXIT_NUMERIC,
        Error::Io(_) => EXIT_IO,
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::SingularMap => "singular_map",
        Error::NotCriticalAtOrigin => "not_critical_at_origin",
        Error::EmptySupport => "empty_support",
        Error::NotHomogeneous => "not_homogeneous",
        Error::FaceNotIncident => "face_not_incident",
        Error::NormalizationFailed(_) => "normalization_failed",
        Error::TruncationTooSmall(_) => "truncation_too_small",
        Error::UnsupportedKind(_) => "unsupported_kind",
        Error::DomainViolation(_) => "domain_violation",
        Error::DuplicateAnchor(_) => "duplicate_anchor",
        Error::InvalidAmplitude(_) => "invalid_amplitude",
        Error::QuadratureNotConverged { .. } => "quadrature_not_converged",
        Error::DegenerateFit(_) => "degenerate_fit",
        Error::Io(_) => "io",
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

/// One-line JSON description of an error.
pub fn error_json(e: &Error) -> String {
    let rec = ErrorRecord {
        error: error_name(e),
        message: e.to_string(),
        exit_code: exit_code(e),
        position: match e {
            Error::Parse(p) => Some(p.position()),
            _ => None,
        },
    };
    serde_json::to_string(&rec).expect("error record serializes")
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Error> {
    fs::write(path, contents).map_err(Error::from)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn run_analyze(cfg: &RunConfig) -> Result<AnalysisReport, Error> {
    cfg.validate()?;
    analyze_text(cfg.phi_text()?, &cfg.p_list)
}

/// `decay` result for one `φ` at `s = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayRun {
    pub phase: String,
    pub kind: String,
    /// Height used for the reference rate `1/h`.
    pub h: Rational,
    pub radius: f64,
    pub fit: DecayFit,
    /// Grid points whose quadrature failed, with the reason.
    pub failures: Vec<(f64, String)>,
}

impl DecayRun {
    pub fn reference_gamma(&self) -> f64 {
        1.0 / to_f64(&self.h)
    }

    pub fn gap(&self) -> f64 {
        (self.fit.gamma_hat - self.reference_gamma()).abs()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "gamma_hat = {:.4}   1/h = {:.4} (h = {})   gap = {:.4}   points = {}   residual = {:.2e}",
            self.fit.gamma_hat,
            self.reference_gamma(),
            format_rational(&self.h),
            self.gap(),
            self.fit.lambdas.len(),
            self.fit.residual
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DecayOutcome {
    Fit(DecayRun),
    Randol(RandolScan),
}

/// Height governing `|I(λ, 0)|`: 1 at nondegenerate points, `h` for the
/// supported classes.
fn reference_height(kind: &SingularityKind) -> Result<Rational, Error> {
    match kind {
        SingularityKind::NondegenerateOrRankPositive { rank: 2 } => Ok(int(1)),
        k if k.is_supported() => height(k),
        k => Err(Error::UnsupportedKind(format!("no reference height for {k}"))),
    }
}

pub fn run_decay(cfg: &RunConfig) -> Result<DecayOutcome, Error> {
    cfg.validate()?;
    let text = cfg.phi_text()?;
    let phi = parse_polynomial(text)?;
    let c = classify(&phi)?;
    if cfg.randol {
        let m = match (cfg.m, c.kind.d_params()) {
            (Some(m), _) => m,
            (None, Some((m, _))) => m.finite().ok_or_else(|| Error::UnsupportedKind("infinite m".into()))?,
            (None, None) => {
                return Err(Error::UnsupportedKind(format!(
                    "{} has no D-type m; pass --m",
                    c.kind.label()
                )))
            }
        };
        let amp = AmplitudeSpec::new(cfg.radius.unwrap_or(0.25))?;
        let n = cfg.grid.unwrap_or(33) as usize;
        let fine_octaves = cfg.lmax.map_or(14, |l| l.log2().round() as u32).max(3);
        let half = 0.25;
        let levels = [
            ScanLevel::uniform(half, n, fine_octaves - 2)?,
            ScanLevel::uniform(half, 2 * n - 1, fine_octaves)?,
        ];
        return randol_lq_scan(&phi, &amp, m, levels, &cfg.q_list).map(DecayOutcome::Randol);
    }
    let h = reference_height(&c.kind)?;
    let radius = cfg.radius.unwrap_or(if c.rank >= 1 { 0.5 } else { 1.0 });
    let amp = AmplitudeSpec::new(radius)?;
    let phase = PhaseF64::new(&phi);
    // D_inf: the critical set is a curve through the origin
    if !matches!(c.kind, SingularityKind::D { n: Order::Infinite, .. }) {
        amp.check_isolated(&phase)?;
    }
    let lambdas = geometric_grid(
        cfg.lmin.unwrap_or(64.0),
        cfg.lmax.unwrap_or(16384.0),
        cfg.grid.unwrap_or(1),
    )?;
    let mut samples = Vec::new();
    let mut failures = Vec::new();
    for (lambda, r) in lambdas.iter().zip(decay_samples(
        &phase,
        &amp,
        &lambdas,
        (0.0, 0.0),
        &QuadConfig::default(),
    )) {
        match r {
            Ok(s) => samples.push(s),
            Err(e) => failures.push((*lambda, e.to_string())),
        }
    }
    let fit = fit_samples(&samples, cfg.with_log)?;
    Ok(DecayOutcome::Fit(DecayRun {
        phase: phi.to_string(),
        kind: c.kind.label(),
        h,
        radius,
        fit,
        failures,
    }))
}

#[derive(Serialize)]
struct DecayJson<'a> {
    phase: &'a str,
    kind: &'a str,
    h: String,
    radius: f64,
    gamma_hat: f64,
    reference_gamma: f64,
    gap: f64,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_coefficient: Option<f64>,
    lambdas: &'a [f64],
    magnitudes: &'a [f64],
    failed_lambdas: Vec<f64>,
}

#[derive(Serialize)]
struct QJson {
    q: f64,
    coarse: f64,
    fine: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct RandolJson {
    m: u32,
    exponent: f64,
    coarse_grid: usize,
    fine_grid: usize,
    coarse_lambda_max: f64,
    fine_lambda_max: f64,
    q: Vec<QJson>,
}

fn randol_json(scan: &RandolScan) -> RandolJson {
    RandolJson {
        m: scan.m,
        exponent: crate::oscint::randol_exponent(scan.m),
        coarse_grid: scan.levels[0].grid.s1.len(),
        fine_grid: scan.levels[1].grid.s1.len(),
        coarse_lambda_max: scan.levels[0].lambdas.last().copied().unwrap_or(0.0),
        fine_lambda_max: scan.levels[1].lambdas.last().copied().unwrap_or(0.0),
        q: scan
            .q_report
            .iter()
            .map(|r| QJson {
                q: r.q,
                coarse: r.sums[0],
                fine: r.sums[1],
                ratio: r.ratio,
            })
            .collect(),
    }
}

/// Runs one command, writing text to `out` and artifacts to the configured
/// paths. Returns the process exit status.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    match cfg.command {
        CommandKind::Analyze => {
            let report = run_analyze(cfg)?;
            for line in summary_lines(&report) {
                writeln!(out, "{line}")?;
            }
            if let Some(path) = &cfg.json {
                write_file(path, to_json(&report).as_bytes())?;
            }
            if let Some(path) = &cfg.svg {
                let poly = polygon_of(&parse_polynomial(cfg.phi_text()?)?)?;
                write_file(path, polygon_svg(&poly, &report.phase).as_bytes())?;
            }
            Ok(EXIT_OK)
        }
        CommandKind::Decay => match run_decay(cfg)? {
            DecayOutcome::Fit(run) => {
                for (lambda, reason) in &run.failures {
                    writeln!(out, "failed     lambda = {lambda}: {reason}")?;
                }
                writeln!(out, "phase      {} ({}), radius {}", run.phase, run.kind, run.radius)?;
                writeln!(out, "{}", run.summary_line())?;
                if let Some(path) = &cfg.csv {
                    let mut buf = Vec::new();
                    write_decay_csv(&mut buf, &run.fit.samples)?;
                    write_file(path, &buf)?;
                }
                if let Some(path) = &cfg.json {
                    let j = DecayJson {
                        phase: &run.phase,
                        kind: &run.kind,
                        h: format_rational(&run.h),
                        radius: run.radius,
                        gamma_hat: run.fit.gamma_hat,
                        reference_gamma: run.reference_gamma(),
                        gap: run.gap(),
                        residual: run.fit.residual,
                        log_coefficient: run.fit.log_coefficient,
                        lambdas: &run.fit.lambdas,
                        magnitudes: &run.fit.magnitudes,
                        failed_lambdas: run.failures.iter().map(|f| f.0).collect(),
                    };
                    write_file(path, to_json(&j).as_bytes())?;
                }
                if let Some(path) = &cfg.svg {
                    let svg = decay_svg(
                        &run.fit.lambdas,
                        &run.fit.magnitudes,
                        run.fit.gamma_hat,
                        run.reference_gamma(),
                        &run.phase,
                    );
                    write_file(path, svg.as_bytes())?;
                }
                Ok(EXIT_OK)
            }
            DecayOutcome::Randol(scan) => {
                writeln!(
                    out,
                    "randol     m = {}, exponent {:.4}, grids {} -> {}",
                    scan.m,
                    crate::oscint::randol_exponent(scan.m),
                    scan.levels[0].grid.s1.len(),
                    scan.levels[1].grid.s1.len()
                )?;
                for r in &scan.q_report {
                    writeln!(
                        out,
                        "q = {:<4} sums {:.6e} -> {:.6e}   ratio {:.4}",
                        r.q, r.sums[0], r.sums[1], r.ratio
                    )?;
                }
                if let Some(path) = &cfg.csv {
                    let mut buf = Vec::new();
                    write_scan_csv(&mut buf, &scan)?;
                    write_file(path, &buf)?;
                }
                if let Some(path) = &cfg.json {
                    write_file(path, to_json(&randol_json(&scan)).as_bytes())?;
                }
                Ok(EXIT_OK)
            }
        },
        CommandKind::Corpus => {
            let results = run_corpus(&CorpusOptions {
                filter: cfg.filter.clone(),
                poison: cfg.poison.clone(),
                seed: cfg.seed,
            });
            for r in &results {
                writeln!(out, "{}", r.line())?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {} failed", results.len(), failed)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn p_list_parsing_and_domain() {
        assert_eq!(parse_p_list("1, 4/3,2").unwrap(), vec![int(1), rat(4, 3), int(2)]);
        assert!(parse_p_list("1,x").is_err());
        let mut cfg = RunConfig::new(CommandKind::Analyze).with_phi("y^3 + x^4");
        cfg.p_list = vec![rat(5, 2)];
        assert!(matches!(run_analyze(&cfg), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn exit_codes() {
        let parse = run_analyze(&RunConfig::new(CommandKind::Analyze).with_phi("x^^2")).unwrap_err();
        assert_eq!(exit_code(&parse), EXIT_INPUT);
        let json: serde_json::Value = serde_json::from_str(&error_json(&parse)).unwrap();
        assert_eq!(json["error"], "parse");
        assert_eq!(json["exit_code"], 2);
        let rank1 = run_decay(&RunConfig::new(CommandKind::Decay).with_phi("x^2 + y^3")).unwrap_err();
        assert_eq!(exit_code(&rank1), EXIT_OUT_OF_SCOPE);
        let e = Error::QuadratureNotConverged {
            lambda: 1.0,
            rel_err: 0.5,
        };
        assert_eq!(exit_code(&e), EXIT_NUMERIC);
    }

    #[test]
    fn analyze_writes_identical_artifacts() {
        let dir = std::env::temp_dir().join(format!("nphk-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let mut cfg = RunConfig::new(CommandKind::Analyze).with_phi("x*(y - x^2)^2 + x^7");
        cfg.json = Some(dir.join("a.json"));
        cfg.svg = Some(dir.join("a.svg"));
        let mut text = Vec::new();
        assert_eq!(execute(&cfg, &mut text).unwrap(), EXIT_OK);
        let first = fs::read(dir.join("a.json")).unwrap();
        let svg = fs::read_to_string(dir.join("a.svg")).unwrap();
        execute(&cfg, &mut Vec::new()).unwrap();
        assert_eq!(first, fs::read(dir.join("a.json")).unwrap());
        assert!(svg.contains("d = 5/3"));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn corpus_negative_control() {
        let mut cfg = RunConfig::new(CommandKind::Corpus);
        cfg.filter = Some("D".into());
        assert_eq!(execute(&cfg, &mut Vec::new()).unwrap(), EXIT_OK);
        cfg.poison = Some("D8".into());
        let mut out = Vec::new();
        assert_eq!(execute(&cfg, &mut out).unwrap(), EXIT_MISMATCH);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1);
    }
}
