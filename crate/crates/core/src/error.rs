use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("Mittag-Leffler series not certified for alpha={alpha}, z={z} at tol={tol:e}{}: {reason}", at_time(*t))]
    NonConvergence {
        alpha: f64,
        z: Complex64,
        tol: f64,
        /// Grid time, once known.
        t: Option<f64>,
        reason: &'static str,
    },

    #[error(
        "phase of det U jumps by {increment} rad between grid points {index_prev} and {index} (t={t}); refine the grid"
    )]
    PhaseJump {
        index: usize,
        index_prev: usize,
        t: f64,
        increment: f64,
    },

    #[error("positivity violated: {what} = {value} at t={t}")]
    Positivity { what: &'static str, value: f64, t: f64 },

    #[error("internal inconsistency: {what} residual {residual:e} exceeds {limit:e} at t={t}")]
    InternalInconsistency {
        what: &'static str,
        residual: f64,
        limit: f64,
        t: f64,
    },

    #[error("degenerate state: the zero vector has no expectation values")]
    DegenerateState,

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
}

fn at_time(t: Option<f64>) -> String {
    t.map(|t| format!(" (t={t})")).unwrap_or_default()
}

impl Error {
    /// Stable short name, used by the command-line diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::PhaseJump { .. } => "phase_jump",
            Error::Positivity { .. } => "positivity",
            Error::InternalInconsistency { .. } => "internal_inconsistency",
            Error::DegenerateState => "degenerate_state",
            Error::UnsupportedModel(_) => "unsupported_model",
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::PhaseJump { .. }
                | Error::Positivity { .. }
                | Error::InternalInconsistency { .. }
        )
    }
}
