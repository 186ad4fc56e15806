//! Numerical side: oscillatory integrals `I(λ, s)`, decay-rate fits and the
//! Randol maximal function.
//!
//! Grid work runs on a rayon pool; `NPHK_WORKERS` fixes its size. Results
//! are assembled in grid order, so they do not depend on the worker count.

mod decay;
mod gauss;
mod quad;
mod randol;

pub use decay::{decay_samples, fit_decay, fit_samples, geometric_grid, write_decay_csv, DecayFit, DecaySample};
pub use gauss::gauss_legendre;
pub use quad::{
    eval_oscillatory, eval_oscillatory_with, eval_scan, AmplitudeShape, AmplitudeSpec, OffsetGrid, OscValue, PhaseF64,
    QuadConfig, ScanValues,
};
pub use randol::{
    lq_sum, randol_exponent, randol_lq_scan, randol_maximal, randol_values, write_scan_csv, QReport, RandolScan,
    ScanLevel,
};

/// Worker count from `NPHK_WORKERS`, if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var("NPHK_WORKERS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Runs `f` inside a pool sized by `NPHK_WORKERS` (rayon's default otherwise).
pub fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match workers_from_env().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
