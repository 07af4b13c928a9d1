//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("empty point set")]
    EmptyPointSet,
    #[error("degenerate cutoff: a == b")]
    DegenerateCutoff,
    #[error("kernel obstruction: degree-1 coefficients {coeffs:?} exceed tolerance {tol:e}")]
    KernelObstruction { coeffs: [f64; 3], tol: f64 },
    #[error("under-resolved grid: {0}")]
    UnderResolvedGrid(String),
    #[error("admissibility violated: {0}")]
    Admissibility(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("extrapolation did not converge: {0}")]
    NonConvergentExtrapolation(String),
    #[error("mesh topology error: {0}")]
    MeshTopology(String),
    #[error("vertex too close to the projection pole: |1 - x4| = {0:e}")]
    PoleProximity(f64),
    #[error("inversion center too close to the surface: min vertex distance {0:e}")]
    CenterOnSurface(f64),
    #[error("bracketing failure: {0}")]
    BracketFailure(String),
    #[error("serialization error: {0}")]
    Serialization(String),
    #[error("checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch { stored: String, computed: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
