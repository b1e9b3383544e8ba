//! Reference computations for testing `fracdyson`. Deliberately slow and
//! naive, and sharing no code with the crate under test: plain power series
//! in 512-bit arithmetic, 2×2 exponentials by spectral projectors, and the
//! Dyson map recovered as the positive square root of a transported metric.

mod bigfloat;
mod linalg;
mod series;

use libm::erfc;
use num_complex::Complex64;

pub use linalg::{
    adjoint, dyson_from_metric, expm_2x2, identity, inverse, matmul, metric_transport, norm_inf, psd_sqrt, Mat2,
};
pub use series::{frac_cos_series, frac_sin_series, ml_reference, quarter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// f64 terms built from `ln Γ`.
    Double,
    /// 512-bit binary floating point.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub working_precision: Precision,
    pub max_terms: usize,
}

impl OracleConfig {
    pub fn new(working_precision: Precision, max_terms: usize) -> Result<Self, OracleError> {
        if max_terms < 64 {
            return Err(OracleError::InvalidConfig(format!(
                "max_terms must be at least 64, got {max_terms}"
            )));
        }
        Ok(Self {
            working_precision,
            max_terms,
        })
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            working_precision: Precision::Extended,
            max_terms: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("series terms still significant after {max_terms} terms")]
    NonConvergence { max_terms: usize },
    #[error("value outside the f64 range")]
    Overflow,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
}

/// A reference value and an absolute bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    pub error_bound: f64,
}

/// E_{1/2}(x) = e^{x²} erfc(−x) for real x.
pub fn ml_half_via_erfc(x: f64) -> f64 {
    (x * x).exp() * erfc(-x)
}

/// Diagonal of Û_α(t) for ω = (0, 0, ω₃): W± = E_α(±i^{−α} ω₃ t^α), each a
/// single scalar Mittag-Leffler value. At α = 1 this is e^{∓iω₃t}.
pub fn diagonal_propagator(
    alpha: f64,
    omega3: Complex64,
    t: f64,
    cfg: &OracleConfig,
) -> Result<(OracleValue, OracleValue), OracleError> {
    let w = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_2 * alpha);
    let z = w * omega3 * t.powf(alpha);
    Ok((ml_reference(alpha, z, cfg)?, ml_reference(alpha, -z, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_floor() {
        assert!(OracleConfig::new(Precision::Double, 63).is_err());
        assert!(OracleConfig::new(Precision::Double, 64).is_ok());
    }

    #[test]
    fn erfc_identity_matches_series() {
        let cfg = OracleConfig::default();
        for x in [-2.0, -1.0, 0.5, 1.0, 3.0] {
            let s = ml_reference(0.5, Complex64::new(x, 0.0), &cfg).unwrap();
            let e = ml_half_via_erfc(x);
            assert!(
                (s.value.re - e).abs() < 1e-13 * e.max(1.0),
                "x={x}: {} vs {e}",
                s.value.re
            );
        }
        assert!((ml_half_via_erfc(-1.0) - 0.427583576155807).abs() < 1e-14);
    }

    #[test]
    fn diagonal_order_one_is_zeeman_phase() {
        let cfg = OracleConfig::default();
        let (wp, wm) = diagonal_propagator(1.0, Complex64::new(-0.5, 0.0), 3.0, &cfg).unwrap();
        assert!((wp.value - Complex64::from_polar(1.0, 1.5)).norm() < 1e-14);
        assert!((wm.value - Complex64::from_polar(1.0, -1.5)).norm() < 1e-14);
    }
}
