//! Crate-wide error type.
//!
//! Error payloads are stored as `f64` regardless of the scalar the caller
//! computes with, so `Error` stays non-generic and cheap to pass around.

/// Everything that can go wrong across the geometry, solver, fitting, and
/// file-format layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("degenerate DC evaluation (omega = 0)")]
    DegenerateDc,

    #[error("nodal matrix singular at evaluation frequency {frequency_hz} Hz")]
    Singular { frequency_hz: f64 },

    #[error("graph validation failed: {0}")]
    Validation(String),

    #[error(
        "Lorentzian fit did not converge after {iterations} iterations \
         (residual norm {residual:.3e}); last iterate (center, fwhm, amplitude, baseline) = {last:?}"
    )]
    FitNonConvergence {
        iterations: usize,
        residual: f64,
        last: [f64; 4],
    },

    #[error("fit input rejected: {0}")]
    FitInput(String),

    #[error("pole search failed: {0}")]
    PoleSearch(String),

    #[error(
        "mode matching failed between configurations: with-bias modes {with_hz:?} Hz, \
         without-bias modes {without_hz:?} Hz"
    )]
    ModeMatching {
        with_hz: Vec<f64>,
        without_hz: Vec<f64>,
    },

    #[error("adaptive refinement exceeded {0} solver points without converging")]
    RefinementBudget(usize),

    #[error("no resonance found in the requested band")]
    NoPeak,

    #[error("more than one resonance in the requested band; narrow the band")]
    MultiplePeaks,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("refusing to overwrite existing file {0}")]
    OverwriteRefused(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
