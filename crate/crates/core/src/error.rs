use thiserror::Error;

use crate::polyring::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("linear map is singular")]
    SingularMap,
    #[error("phase is not critical at the origin: constant or linear terms present")]
    NotCriticalAtOrigin,
    #[error("empty Taylor support (zero phase)")]
    EmptySupport,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("face is not a face of this Newton polygon")]
    FaceNotIncident,
    #[error("no linear map brings the cubic part into normal form: {0}")]
    NormalizationFailed(String),
    #[error("order not resolved below truncation degree {0}")]
    TruncationTooSmall(u32),
    #[error("unsupported singularity class: {0}")]
    UnsupportedKind(String),
    #[error("parameter domain violation: {0}")]
    DomainViolation(String),
    #[error("duplicate interpolation anchor at 1/p = {0}")]
    DuplicateAnchor(String),
    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),
    #[error("quadrature did not converge at lambda = {lambda}: relative error {rel_err:.3e}")]
    QuadratureNotConverged { lambda: f64, rel_err: f64 },
    #[error("degenerate decay fit: {0}")]
    DegenerateFit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
