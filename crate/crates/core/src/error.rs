use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

/// Errors raised by the geometric kernels and the reconstruction pipeline.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("point outside the model domain: c*|zeta| = {scaled_radius} (must be < 1)")]
    OutsideDisk { scaled_radius: f64 },

    #[error("tangent vector is not unit: |Z| = {norm}")]
    NonUnit { norm: f64 },

    #[error("matrix is not in SU(1,1): |alpha|^2 - |beta|^2 = {det}")]
    NotSu11 { det: f64 },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("map leaves the unit disk at node ({i}, {j}): |g| = {modulus}")]
    OutsideUnitDisk { i: usize, j: usize, modulus: f64 },

    #[error("harmonic residual {residual:.3e} exceeds threshold {threshold:.3e}")]
    NotHarmonic { residual: f64, threshold: f64 },

    #[error("map is antiholomorphic somewhere: min |g_z| = {min_gz:.3e} (max |g_z| = {max_gz:.3e})")]
    Antiholomorphic { min_gz: f64, max_gz: f64 },

    #[error(
        "domain guard tripped at node ({i}, {j}): 1 - c^2|zeta|^2 = {margin:.3e} < {guard:.1e} \
         ({completed} nodes completed)"
    )]
    DomainGuard {
        i: usize,
        j: usize,
        margin: f64,
        guard: f64,
        completed: usize,
    },

    #[error("undefined value: {0}")]
    Undefined(String),

    #[error("degenerate configuration at node ({i}, {j}): {what}")]
    Degenerate { i: usize, j: usize, what: String },

    #[error("quadrature did not converge: achieved error estimate {achieved:.3e} > {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("config error in {field}: {message}")]
    Config { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl GeomError {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        GeomError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        GeomError::Io {
            path: path.into(),
            source,
        }
    }
}
