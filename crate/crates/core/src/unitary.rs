//! û_α(t) = η(t) Û_α(t) η⁻¹(0), entrywise and in the reduced U(2) form
//! e^{(i/2) Im ln D} [[ϖ, τ], [−τ*, ϖ*]].

use num_complex::Complex64;

use crate::dyson::{zeta_xi, DysonInit, DysonParams};
use crate::error::{Error, Result};
use crate::frac_evolution::{LogDetTrack, PropagatorCoeffs};
use crate::two_level::{Matrix2, StateVector};

/// Largest entrywise gap tolerated between the reduced and general forms.
pub const REDUCED_FORM_LIMIT: f64 = 1e-7;

/// Reduced coefficients of û.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryCoeffs {
    pub t: f64,
    pub varpi: Complex64,
    pub tau: Complex64,
    /// ½ Im ln D.
    pub global_phase: f64,
}

impl UnitaryCoeffs {
    pub fn matrix(&self) -> Matrix2 {
        Matrix2::new(self.varpi, self.tau, -self.tau.conj(), self.varpi.conj())
            .scale(Complex64::from_polar(1.0, self.global_phase))
    }

    /// |ϖ|² + |τ|², one for a unitary û.
    pub fn norm_sqr(&self) -> f64 {
        self.varpi.norm_sqr() + self.tau.norm_sqr()
    }
}

/// û entries [[ϖ₊, ϖ₋], [τ₊, τ₋]] from the Dyson parameters at t and at 0.
pub fn unitary_general(coeffs: &PropagatorCoeffs, params: &DysonParams, init: &DysonInit) -> Result<Matrix2> {
    for (value, t) in [(params.big_lambda, params.t), (init.big_lambda0, 0.0)] {
        if !(value > 0.0) {
            return Err(Error::Positivity {
                what: "Lambda",
                value,
                t,
            });
        }
    }
    let zx = zeta_xi(coeffs, init);
    let pref = (params.kappa - init.kappa0).exp() / (params.big_lambda * init.big_lambda0).sqrt();
    let l = params.lambda;
    let b = params.big_lambda + l.norm_sqr();
    let vp = (l * zx.zeta_p + b * zx.xi_p) * pref;
    let vm = -(l * zx.zeta_m + b * zx.xi_m) * pref;
    let tp = (l.conj() * zx.xi_p + zx.zeta_p) * pref;
    let tm = -(l.conj() * zx.xi_m + zx.zeta_m) * pref;
    Ok(Matrix2::new(vp, vm, tp, tm))
}

/// Reduced form, cross-checked against [`unitary_general`].
pub fn unitary_reduced(
    coeffs: &PropagatorCoeffs,
    params: &DysonParams,
    init: &DysonInit,
    track: &LogDetTrack,
) -> Result<UnitaryCoeffs> {
    let general = unitary_general(coeffs, params, init)?;
    reduce(&general, track)
}

/// Strips the global phase from an already computed general-form û.
pub fn reduce(general: &Matrix2, track: &LogDetTrack) -> Result<UnitaryCoeffs> {
    let phi = 0.5 * track.im_ln_d;
    let rot = Complex64::from_polar(1.0, -phi);
    let reduced = UnitaryCoeffs {
        t: track.t,
        varpi: rot * general.get(0, 0),
        tau: rot * general.get(0, 1),
        global_phase: phi,
    };
    let residual = (reduced.matrix() - *general).norm_inf();
    if !(residual <= REDUCED_FORM_LIMIT) {
        return Err(Error::InternalInconsistency {
            what: "reduced and general unitary forms",
            residual,
            limit: REDUCED_FORM_LIMIT,
            t: track.t,
        });
    }
    Ok(reduced)
}

/// û ψ₀.
pub fn evolve_state(u: &Matrix2, psi0: &StateVector) -> StateVector {
    StateVector::from_array(u.apply(psi0.as_array()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyson::dyson_params;
    use crate::mittag_leffler::FractionalOrder;

    #[test]
    fn identity_at_start() {
        let init = DysonInit::paper_default();
        let coeffs = PropagatorCoeffs::initial(FractionalOrder::new(0.5).unwrap(), 1e-12);
        let params = dyson_params(&coeffs, &init, &LogDetTrack::INITIAL).unwrap();
        let u = unitary_general(&coeffs, &params, &init).unwrap();
        assert!((u - Matrix2::IDENTITY).norm_inf() < 1e-15);
        let r = reduce(&u, &LogDetTrack::INITIAL).unwrap();
        assert!((r.varpi - 1.0).norm() < 1e-15);
        assert!(r.tau.norm() < 1e-15);
        assert_eq!(r.global_phase, 0.0);
    }

    #[test]
    fn reduced_form_rejects_a_wrong_phase() {
        let u = Matrix2::diag(Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0));
        let good = LogDetTrack {
            t: 1.0,
            re_ln_d: 0.0,
            im_ln_d: std::f64::consts::PI,
        };
        assert!(reduce(&u, &good).is_ok());
        let bad = LogDetTrack {
            im_ln_d: std::f64::consts::PI + 1.0,
            ..good
        };
        assert!(matches!(reduce(&u, &bad), Err(Error::InternalInconsistency { .. })));
    }

    #[test]
    fn evolving_with_identity() {
        let psi = StateVector::plus_i();
        assert_eq!(evolve_state(&Matrix2::IDENTITY, &psi), psi);
    }
}
