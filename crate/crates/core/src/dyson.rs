//! Time-dependent Dyson map in the Hermitian parametrisation
//!
//! η(t) = (e^κ/√Λ) [[Λ + |λ|², λ], [λ*, 1]],   Λ > 0,
//!
//! whose parameters follow pointwise from Û_α(t), ln D_α(t) and the initial
//! values (κ₀, λ₀, Λ₀). The metric is Θ = η†η.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frac_evolution::{LogDetTrack, PropagatorCoeffs};
use crate::mittag_leffler::FractionalOrder;
use crate::two_level::Matrix2;

/// Relative residual allowed when the closed forms are fed the t = 0 tuple.
pub const INITIAL_CONSISTENCY_LIMIT: f64 = 1e-12;

/// Initial values of the map parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DysonInit {
    pub kappa0: f64,
    pub lambda0: Complex64,
    pub big_lambda0: f64,
}

impl DysonInit {
    pub fn new(kappa0: f64, lambda0: Complex64, big_lambda0: f64) -> Result<Self> {
        if !(kappa0.is_finite() && lambda0.is_finite()) {
            return Err(Error::Domain("Dyson initial values must be finite".into()));
        }
        if !(big_lambda0 > 0.0 && big_lambda0.is_finite()) {
            return Err(Error::Domain(format!("Lambda0 must be positive, got {big_lambda0}")));
        }
        Ok(Self {
            kappa0,
            lambda0,
            big_lambda0,
        })
    }

    /// κ₀ = 0, λ₀ = 3/2 (real), Λ₀ = 2.
    pub fn paper_default() -> Self {
        Self {
            kappa0: 0.0,
            lambda0: Complex64::new(1.5, 0.0),
            big_lambda0: 2.0,
        }
    }

    pub fn params(&self) -> DysonParams {
        DysonParams {
            t: 0.0,
            kappa: self.kappa0,
            lambda: self.lambda0,
            big_lambda: self.big_lambda0,
        }
    }

    /// Λ₀ + |λ₀|².
    fn b0(&self) -> f64 {
        self.big_lambda0 + self.lambda0.norm_sqr()
    }
}

impl Default for DysonInit {
    fn default() -> Self {
        Self::paper_default()
    }
}

/// Map parameters at time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DysonParams {
    pub t: f64,
    pub kappa: f64,
    pub lambda: Complex64,
    pub big_lambda: f64,
}

/// The four combinations of Û entries and initial values that the closed
/// forms are written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaXi {
    pub zeta_p: Complex64,
    pub zeta_m: Complex64,
    pub xi_p: Complex64,
    pub xi_m: Complex64,
}

pub fn zeta_xi(coeffs: &PropagatorCoeffs, init: &DysonInit) -> ZetaXi {
    let l0 = init.lambda0;
    let b0 = init.b0();
    ZetaXi {
        zeta_p: coeffs.tp - l0.conj() * coeffs.wm,
        zeta_m: l0 * coeffs.tp - b0 * coeffs.wm,
        xi_p: coeffs.wp - l0.conj() * coeffs.tm,
        xi_m: l0 * coeffs.wp - b0 * coeffs.tm,
    }
}

/// κ(t) = κ₀ − ½ Re ln D.
pub fn kappa(init: &DysonInit, track: &LogDetTrack) -> f64 {
    init.kappa0 - 0.5 * track.re_ln_d
}

/// (λ, Λ) from the closed forms.
pub fn lambda_pair(zx: &ZetaXi, init: &DysonInit, track: &LogDetTrack) -> Result<(Complex64, f64)> {
    let l = init.big_lambda0 * track.re_ln_d.exp();
    let den = zx.xi_p.norm_sqr() + zx.xi_m.norm_sqr() + l;
    let num = zx.zeta_p.norm_sqr() + zx.zeta_m.norm_sqr() + l;
    let lambda = -(zx.xi_p * zx.zeta_p.conj() + zx.xi_m * zx.zeta_m.conj()) / den;
    let big_lambda = num / den - lambda.norm_sqr();
    if !(big_lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Positivity {
            what: "Lambda",
            value: big_lambda,
            t: track.t,
        });
    }
    Ok((lambda, big_lambda))
}

/// κ, λ, Λ at the time of `coeffs`.
pub fn dyson_params(coeffs: &PropagatorCoeffs, init: &DysonInit, track: &LogDetTrack) -> Result<DysonParams> {
    let zx = zeta_xi(coeffs, init);
    let (lambda, big_lambda) = lambda_pair(&zx, init, track)?;
    Ok(DysonParams {
        t: coeffs.t,
        kappa: kappa(init, track),
        lambda,
        big_lambda,
    })
}

/// Relative residual of (ζ₊ξ₋ − ζ₋ξ₊) e^{−i Im ln D} = Λ₀ e^{Re ln D}.
pub fn consistency_residual(zx: &ZetaXi, init: &DysonInit, track: &LogDetTrack) -> f64 {
    let rhs = init.big_lambda0 * track.re_ln_d.exp();
    let lhs = (zx.zeta_p * zx.xi_m - zx.zeta_m * zx.xi_p) * Complex64::from_polar(1.0, -track.im_ln_d);
    (lhs - rhs).norm() / rhs
}

fn check_positive(params: &DysonParams) -> Result<()> {
    if params.big_lambda > 0.0 && params.big_lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Positivity {
            what: "Lambda",
            value: params.big_lambda,
            t: params.t,
        })
    }
}

/// η = (e^κ/√Λ) [[Λ + |λ|², λ], [λ*, 1]].
pub fn dyson_matrix(params: &DysonParams) -> Result<Matrix2> {
    check_positive(params)?;
    let p = params;
    let s = p.kappa.exp() / p.big_lambda.sqrt();
    let a = Complex64::new(s * (p.big_lambda + p.lambda.norm_sqr()), 0.0);
    let d = Complex64::new(s, 0.0);
    Ok(Matrix2::new(a, p.lambda * s, p.lambda.conj() * s, d))
}

/// η⁻¹ = (e^{−κ}/√Λ) [[1, −λ], [−λ*, Λ + |λ|²]], using det η = e^{2κ}.
pub fn dyson_inverse(params: &DysonParams) -> Result<Matrix2> {
    check_positive(params)?;
    let p = params;
    let s = (-p.kappa).exp() / p.big_lambda.sqrt();
    let a = Complex64::new(s, 0.0);
    let d = Complex64::new(s * (p.big_lambda + p.lambda.norm_sqr()), 0.0);
    Ok(Matrix2::new(a, -p.lambda * s, -p.lambda.conj() * s, d))
}

/// Θ = η†η, checked positive definite.
pub fn metric(params: &DysonParams) -> Result<Matrix2> {
    let eta = dyson_matrix(params)?;
    let theta = eta.adjoint() * eta;
    let [lo, _] = theta.hermitian_eigenvalues();
    if !(lo > 0.0) {
        return Err(Error::Positivity {
            what: "min eigenvalue of Theta",
            value: lo,
            t: params.t,
        });
    }
    Ok(theta)
}

/// Feeds the t = 0 tuple through the closed forms and requires (λ₀, Λ₀) back.
pub fn check_initial_consistency(init: &DysonInit) -> Result<()> {
    let alpha = FractionalOrder::new(1.0)?;
    let coeffs = PropagatorCoeffs::initial(alpha, 1.0);
    let zx = zeta_xi(&coeffs, init);
    let (lambda, big_lambda) = lambda_pair(&zx, init, &LogDetTrack::INITIAL)?;
    let scale = init.b0().max(1.0);
    let residual = ((lambda - init.lambda0).norm() + (big_lambda - init.big_lambda0).abs()) / scale;
    if residual > INITIAL_CONSISTENCY_LIMIT {
        return Err(Error::InternalInconsistency {
            what: "Dyson map at t=0",
            residual,
            limit: INITIAL_CONSISTENCY_LIMIT,
            t: 0.0,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn initial_coeffs() -> PropagatorCoeffs {
        PropagatorCoeffs::initial(FractionalOrder::new(0.5).unwrap(), 1e-12)
    }

    #[test]
    fn zeta_xi_at_start() {
        let zx = zeta_xi(&initial_coeffs(), &DysonInit::new(0.0, c(0.0, 0.0), 1.0).unwrap());
        assert_eq!(
            (zx.zeta_p, zx.zeta_m, zx.xi_p, zx.xi_m),
            (c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
        );
        let zx = zeta_xi(&initial_coeffs(), &DysonInit::paper_default());
        assert_eq!(
            (zx.zeta_p, zx.zeta_m, zx.xi_p, zx.xi_m),
            (c(-1.5, 0.0), c(-4.25, 0.0), c(1.0, 0.0), c(1.5, 0.0))
        );
    }

    #[test]
    fn closed_forms_recover_initial_values() {
        let init = DysonInit::new(0.0, c(0.0, 0.0), 1.0).unwrap();
        let zx = zeta_xi(&initial_coeffs(), &init);
        let (l, bl) = lambda_pair(&zx, &init, &LogDetTrack::INITIAL).unwrap();
        assert_eq!(l, c(0.0, 0.0));
        assert_eq!(bl, 1.0);
        check_initial_consistency(&DysonInit::paper_default()).unwrap();
        check_initial_consistency(&DysonInit::new(-0.3, c(-0.7, 2.2), 0.05).unwrap()).unwrap();
    }

    #[test]
    fn kappa_at_start_is_kappa0() {
        let init = DysonInit::new(0.4, c(1.0, 0.0), 1.0).unwrap();
        assert_eq!(kappa(&init, &LogDetTrack::INITIAL), 0.4);
    }

    #[test]
    fn dyson_matrix_examples() {
        let p = |kappa, lambda, big_lambda| DysonParams {
            t: 0.0,
            kappa,
            lambda,
            big_lambda,
        };
        assert_eq!(dyson_matrix(&p(0.0, c(0.0, 0.0), 1.0)).unwrap(), Matrix2::IDENTITY);
        assert_eq!(
            dyson_matrix(&p(0.0, c(0.0, 0.0), 4.0)).unwrap(),
            Matrix2::diag(c(2.0, 0.0), c(0.5, 0.0))
        );
        let eta = dyson_matrix(&DysonInit::paper_default().params()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = Matrix2::new(c(4.25 * h, 0.0), c(1.5 * h, 0.0), c(1.5 * h, 0.0), c(h, 0.0));
        assert!((eta - want).norm_inf() < 1e-15);
        assert!(matches!(
            dyson_matrix(&p(0.0, c(0.0, 0.0), 0.0)),
            Err(Error::Positivity { .. })
        ));
    }

    #[test]
    fn inverse_and_determinant() {
        let p = DysonParams {
            t: 1.0,
            kappa: 0.3,
            lambda: c(0.4, -1.2),
            big_lambda: 0.7,
        };
        let eta = dyson_matrix(&p).unwrap();
        let inv = dyson_inverse(&p).unwrap();
        assert!((eta * inv - Matrix2::IDENTITY).norm_inf() < 1e-14);
        assert_abs_diff_eq!(eta.det().re, (0.6f64).exp(), epsilon = 1e-14);
        assert!(eta.hermiticity_defect() < 1e-15);
        let theta = metric(&p).unwrap();
        assert!(theta.hermiticity_defect() < 1e-14);
        assert!(theta.hermitian_eigenvalues()[0] > 0.0);
    }

    #[test]
    fn metric_of_identity() {
        let p = DysonParams {
            t: 0.0,
            kappa: 0.0,
            lambda: c(0.0, 0.0),
            big_lambda: 1.0,
        };
        assert_eq!(metric(&p).unwrap(), Matrix2::IDENTITY);
    }

    #[test]
    fn invalid_initial_values() {
        assert!(DysonInit::new(0.0, c(1.0, 0.0), 0.0).is_err());
        assert!(DysonInit::new(0.0, c(1.0, 0.0), -2.0).is_err());
        assert!(DysonInit::new(f64::NAN, c(1.0, 0.0), 2.0).is_err());
    }
}
