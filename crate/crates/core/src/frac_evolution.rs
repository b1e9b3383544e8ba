//! The non-unitary fractional propagator
//!
//! Û_α(t) = C_α(Δ t^α) − i^{-α} (σ·ω/Δ) S_α(Δ t^α) = [[W₊, T₋], [T₊, W₋]]
//!
//! with W± = C ± i^{-α}(ω₃/Δ)S and T± = i^{-α}((ω₁ ± iω₂)/Δ)S, its determinant
//! D = W₊W₋ − T₊T₋, and a phase-continuous ln D along a time grid.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mittag_leffler::{FractionalOrder, MittagLeffler};
use crate::two_level::{delta, Matrix2, OmegaVector};

/// Below this |Δ t^α| the series limit replaces the division by Δ.
pub const REMOVABLE_LIMIT: f64 = 1e-8;

/// Largest phase step accepted between neighbouring grid points when
/// unwrapping arg D.
pub const MAX_PHASE_STEP: f64 = 0.5 * PI;

/// Entries of Û_α(t), plus the C_α and S_α values they were built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorCoeffs {
    pub alpha: FractionalOrder,
    pub t: f64,
    pub wp: Complex64,
    pub wm: Complex64,
    pub tp: Complex64,
    pub tm: Complex64,
    /// C_α(Δ t^α).
    pub c: Complex64,
    /// S_α(Δ t^α).
    pub s: Complex64,
    /// Tolerance the Mittag-Leffler values were certified to.
    pub tol: f64,
    /// Absolute error bound on every entry.
    pub error_bound: f64,
}

impl PropagatorCoeffs {
    /// Û_α(0) = I.
    pub fn initial(alpha: FractionalOrder, tol: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            alpha,
            t: 0.0,
            wp: one,
            wm: one,
            tp: zero,
            tm: zero,
            c: one,
            s: zero,
            tol,
            error_bound: 0.0,
        }
    }
}

/// Propagator for one (α, ω) pair. Owns the Mittag-Leffler evaluator so a
/// whole grid shares the precomputed Γ ratios.
#[derive(Debug, Clone)]
pub struct Propagator {
    ml: MittagLeffler,
    omega: OmegaVector,
    delta: Complex64,
    tol: f64,
}

impl Propagator {
    pub fn new(alpha: FractionalOrder, omega: OmegaVector, tol: f64) -> Result<Self> {
        Self::with_delta(alpha, omega, delta(&omega), tol)
    }

    /// Uses a caller-chosen square root of ω·ω. Either root gives the same Û.
    pub fn with_delta(alpha: FractionalOrder, omega: OmegaVector, delta: Complex64, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        let sq = omega.square_sum();
        if (delta * delta - sq).norm() > 1e-12 * sq.norm().max(1.0) {
            return Err(Error::Domain(format!("{delta} is not a square root of {sq}")));
        }
        Ok(Self {
            ml: MittagLeffler::new(alpha),
            omega,
            delta,
            tol,
        })
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.ml.alpha()
    }

    pub fn omega(&self) -> &OmegaVector {
        &self.omega
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn evaluator(&self) -> &MittagLeffler {
        &self.ml
    }

    pub fn coeffs(&self, t: f64) -> Result<PropagatorCoeffs> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("time must be finite and non-negative, got {t}")));
        }
        let alpha = self.alpha();
        if t == 0.0 {
            return Ok(PropagatorCoeffs::initial(alpha, self.tol));
        }
        let a = alpha.value();
        let ta = t.powf(a);
        let x = self.delta * ta;
        let w = alpha.i_pow_neg();

        // (c, S/Δ, S) and their error bounds.
        let (c, c_err, s_over_delta, s_err_over_delta, s) = if x.norm() < REMOVABLE_LIMIT {
            let w2x2 = w * w * x * x;
            let c = 1.0 + w2x2 * self.ml.inv_gamma_multiple(2);
            let sd = ta * (self.ml.inv_gamma_multiple(1) + w2x2 * self.ml.inv_gamma_multiple(3));
            // Dropped terms are O(|x|⁴) relative to the leading ones.
            let rel = 4.0 * f64::EPSILON + x.norm().powi(4);
            (c, rel, sd, rel * sd.norm(), sd * self.delta)
        } else {
            let (cr, sr) = self.ml.frac_cos_sin(x, self.tol).map_err(|e| match e {
                Error::NonConvergence {
                    alpha, z, tol, reason, ..
                } => Error::NonConvergence {
                    alpha,
                    z,
                    tol,
                    t: Some(t),
                    reason,
                },
                other => other,
            })?;
            let inv = self.delta.inv();
            (
                cr.value,
                cr.error_bound,
                sr.value * inv,
                sr.error_bound * inv.norm(),
                sr.value,
            )
        };

        let om = &self.omega;
        let i = Complex64::i();
        let ws = w * s_over_delta;
        let wp = c + om.w3 * ws;
        let wm = c - om.w3 * ws;
        let tp = (om.w1 + i * om.w2) * ws;
        let tm = (om.w1 - i * om.w2) * ws;

        let w3 = om.w3.norm();
        let w12 = om.w1.norm() + om.w2.norm();
        let rounding = 8.0 * f64::EPSILON * (c.norm() + (w3 + w12) * s_over_delta.norm());
        let error_bound = (c_err + w3 * s_err_over_delta).max(w12 * s_err_over_delta) + rounding;

        Ok(PropagatorCoeffs {
            alpha,
            t,
            wp,
            wm,
            tp,
            tm,
            c,
            s,
            tol: self.tol,
            error_bound,
        })
    }
}

/// Coefficients of Û_α(t) for a single (α, ω, t).
pub fn propagator_coeffs(alpha: FractionalOrder, omega: &OmegaVector, t: f64, tol: f64) -> Result<PropagatorCoeffs> {
    Propagator::new(alpha, *omega, tol)?.coeffs(t)
}

/// [[W₊, T₋], [T₊, W₋]].
pub fn propagator_matrix(coeffs: &PropagatorCoeffs) -> Matrix2 {
    Matrix2::new(coeffs.wp, coeffs.tm, coeffs.tp, coeffs.wm)
}

/// D_α(t) = W₊W₋ − T₊T₋, checked against C² − (−1)^{-α}S².
pub fn det_propagator(coeffs: &PropagatorCoeffs) -> Result<Complex64> {
    let d = coeffs.wp * coeffs.wm - coeffs.tp * coeffs.tm;
    let other = coeffs.c * coeffs.c - coeffs.alpha.neg_one_pow_neg() * coeffs.s * coeffs.s;
    let residual = (d - other).norm();
    let scale = (coeffs.c.norm_sqr() + coeffs.s.norm_sqr()).max(1.0);
    let limit = 100.0 * coeffs.tol * scale;
    if residual > limit || !d.is_finite() {
        return Err(Error::InternalInconsistency {
            what: "determinant forms",
            residual,
            limit,
            t: coeffs.t,
        });
    }
    Ok(d)
}

/// ln D at one grid point, imaginary part unwrapped from 0 at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDetTrack {
    pub t: f64,
    pub re_ln_d: f64,
    pub im_ln_d: f64,
}

impl LogDetTrack {
    pub const INITIAL: LogDetTrack = LogDetTrack {
        t: 0.0,
        re_ln_d: 0.0,
        im_ln_d: 0.0,
    };

    /// exp(re + i·im).
    pub fn det(&self) -> Complex64 {
        Complex64::from_polar(self.re_ln_d.exp(), self.im_ln_d)
    }
}

/// Checks a time grid: starts at 0, finite, strictly increasing.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    match grid.first() {
        None => return Err(Error::Domain("time grid is empty".into())),
        Some(&t0) if t0 != 0.0 => return Err(Error::Domain(format!("time grid must start at 0, starts at {t0}"))),
        _ => {}
    }
    for (i, pair) in grid.windows(2).enumerate() {
        if !(pair[1] > pair[0]) || !pair[1].is_finite() {
            return Err(Error::Domain(format!(
                "time grid must be strictly increasing and finite at index {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Unwraps arg D along a grid. `dets[k]` is D at `grid[k]`; `dets[0]` must
/// be D(0) = 1.
pub fn unwrap_log_det(grid: &[f64], dets: &[Complex64]) -> Result<Vec<LogDetTrack>> {
    assert_eq!(grid.len(), dets.len(), "grid and determinant lengths differ");
    let mut out = Vec::with_capacity(grid.len());
    let mut prev_phase = 0.0;
    let mut prev_d = Complex64::new(1.0, 0.0);
    for (k, (&t, &d)) in grid.iter().zip(dets).enumerate() {
        let modulus = d.norm();
        if !(modulus > 0.0 && modulus.is_finite()) {
            return Err(Error::Positivity {
                what: "|det U|",
                value: modulus,
                t,
            });
        }
        if k == 0 {
            let step = d.arg();
            if step.abs() > MAX_PHASE_STEP {
                return Err(Error::PhaseJump {
                    index: 0,
                    index_prev: 0,
                    t,
                    increment: step,
                });
            }
            prev_phase = step;
        } else {
            let step = (d * prev_d.conj()).arg();
            if step.abs() > MAX_PHASE_STEP {
                return Err(Error::PhaseJump {
                    index: k,
                    index_prev: k - 1,
                    t,
                    increment: step,
                });
            }
            // Snap to the branch of arg D nearest the accumulated phase so
            // rounding in the steps never drifts away from D itself.
            let target = prev_phase + step;
            let principal = d.arg();
            prev_phase = principal + 2.0 * PI * ((target - principal) / (2.0 * PI)).round();
        }
        out.push(LogDetTrack {
            t,
            re_ln_d: modulus.ln(),
            im_ln_d: prev_phase,
        });
        prev_d = d;
    }
    Ok(out)
}

/// Phase-continuous ln D_α(t) along `grid`, evaluated sequentially.
pub fn track_log_det(alpha: FractionalOrder, omega: &OmegaVector, grid: &[f64], tol: f64) -> Result<Vec<LogDetTrack>> {
    validate_grid(grid)?;
    let prop = Propagator::new(alpha, *omega, tol)?;
    let dets = grid
        .iter()
        .map(|&t| prop.coeffs(t).and_then(|c| det_propagator(&c)))
        .collect::<Result<Vec<_>>>()?;
    unwrap_log_det(grid, &dets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    fn zeeman(wl: f64) -> OmegaVector {
        OmegaVector::new(c(0.0, 0.0), c(0.0, 0.0), c(-wl / 2.0, 0.0)).unwrap()
    }

    #[test]
    fn initial_conditions() {
        for a in [0.25, 0.5, 1.0] {
            let k = propagator_coeffs(order(a), &zeeman(1.0), 0.0, 1e-12).unwrap();
            assert_eq!(
                (k.wp, k.wm, k.tp, k.tm),
                (c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))
            );
            assert_eq!(propagator_matrix(&k), Matrix2::IDENTITY);
            assert_eq!(det_propagator(&k).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn order_one_zeeman_is_diagonal_phase() {
        let t = 3.7;
        let k = propagator_coeffs(order(1.0), &zeeman(1.0), t, 1e-13).unwrap();
        // H = diag(-1/2, 1/2): exp(-iHt) = diag(e^{it/2}, e^{-it/2}).
        assert!((k.wp - Complex64::from_polar(1.0, t / 2.0)).norm() < 1e-12);
        assert!((k.wm - Complex64::from_polar(1.0, -t / 2.0)).norm() < 1e-12);
        assert_eq!(k.tp, c(0.0, 0.0));
        assert!(propagator_matrix(&k).unitarity_defect() < 1e-12);
    }

    #[test]
    fn fractional_zeeman_is_not_unitary() {
        let k = propagator_coeffs(order(0.5), &zeeman(1.0), 1.0, 1e-12).unwrap();
        assert!(propagator_matrix(&k).unitarity_defect() > 0.01);
    }

    #[test]
    fn determinant_forms_agree() {
        let k = propagator_coeffs(order(0.5), &zeeman(1.0), 1.0, 1e-12).unwrap();
        let d1 = k.wp * k.wm - k.tp * k.tm;
        let d2 = k.c * k.c - order(0.5).neg_one_pow_neg() * k.s * k.s;
        assert!((d1 - d2).norm() < 1e-9);
        assert!(det_propagator(&k).is_ok());
    }

    #[test]
    fn tampered_coefficients_are_flagged() {
        let mut k = propagator_coeffs(order(0.5), &zeeman(1.0), 1.0, 1e-12).unwrap();
        k.tp += 1e-3;
        k.tm += 1e-3;
        assert!(matches!(det_propagator(&k), Err(Error::InternalInconsistency { .. })));
    }

    #[test]
    fn exceptional_point_uses_the_limit() {
        // ω·ω = 0 exactly: Û = I − i^{-α} t^α σ·ω / Γ(α+1).
        let om = OmegaVector::new(c(0.0, -0.5), c(0.0, 0.0), c(-0.5, 0.0)).unwrap();
        assert_eq!(delta(&om), c(0.0, 0.0));
        let a = order(0.5);
        let t = 2.0;
        let k = propagator_coeffs(a, &om, t, 1e-12).unwrap();
        let g = t.powf(0.5) / 0.886_226_925_452_758;
        let w = a.i_pow_neg();
        assert!((k.wp - (1.0 + w * om.w3 * g)).norm() < 1e-14);
        assert!((k.tp - w * om.w1 * g).norm() < 1e-14);
        assert!(k.wp.is_finite() && k.tm.is_finite());
    }

    #[test]
    fn limit_and_series_meet_at_the_switch() {
        let a = order(0.75);
        let om = zeeman(2.0);
        let t_switch = REMOVABLE_LIMIT.powf(1.0 / 0.75);
        let lo = propagator_coeffs(a, &om, t_switch * 0.999, 1e-14).unwrap();
        let hi = propagator_coeffs(a, &om, t_switch * 1.001, 1e-14).unwrap();
        assert!((lo.wp - hi.wp).norm() < 1e-10);
        assert!((lo.s - hi.s).norm() < 1e-10);
    }

    #[test]
    fn delta_root_choice_is_irrelevant() {
        let om = OmegaVector::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, -0.5)).unwrap();
        let d = delta(&om);
        let a = order(0.5);
        let p = Propagator::with_delta(a, om, d, 1e-13).unwrap();
        let m = Propagator::with_delta(a, om, -d, 1e-13).unwrap();
        for t in [0.3, 2.0, 7.5] {
            let (x, y) = (p.coeffs(t).unwrap(), m.coeffs(t).unwrap());
            let diff = propagator_matrix(&x) - propagator_matrix(&y);
            assert!(diff.norm_inf() < 1e-12);
        }
        assert!(Propagator::with_delta(a, om, d * 1.1, 1e-13).is_err());
    }

    #[test]
    fn track_on_single_point_grid() {
        let tr = track_log_det(order(0.5), &zeeman(1.0), &[0.0], 1e-12).unwrap();
        assert_eq!(tr, vec![LogDetTrack::INITIAL]);
    }

    #[test]
    fn track_for_order_one_zeeman_stays_at_zero() {
        let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.1).collect();
        let tr = track_log_det(order(1.0), &zeeman(2.0), &grid, 1e-12).unwrap();
        for p in tr {
            assert_abs_diff_eq!(p.re_ln_d, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.im_ln_d, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn track_reproduces_pointwise_determinant() {
        let grid: Vec<f64> = (0..1001).map(|i| i as f64 * 0.01).collect();
        let om = zeeman(1.0);
        let a = order(0.5);
        let tr = track_log_det(a, &om, &grid, 1e-12).unwrap();
        let prop = Propagator::new(a, om, 1e-12).unwrap();
        let mut prev = 0.0;
        for p in &tr {
            let d = det_propagator(&prop.coeffs(p.t).unwrap()).unwrap();
            assert!((p.det() - d).norm() < 1e-8);
            assert!((p.im_ln_d - prev).abs() < 0.5);
            prev = p.im_ln_d;
        }
    }

    #[test]
    fn phase_jump_names_the_grid_index() {
        // D turns by 1 rad, then by 2 rad.
        let grid = [0.0, 1.0, 2.0];
        let dets = [
            c(1.0, 0.0),
            Complex64::from_polar(1.0, 1.0),
            Complex64::from_polar(1.0, 3.0),
        ];
        match unwrap_log_det(&grid, &dets) {
            Err(Error::PhaseJump { index, index_prev, .. }) => assert_eq!((index, index_prev), (2, 1)),
            other => panic!("expected a phase jump, got {other:?}"),
        }
    }

    #[test]
    fn unwrapping_crosses_the_branch_cut() {
        let n = 40;
        let grid: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let dets: Vec<Complex64> = grid.iter().map(|&t| Complex64::from_polar(2.0, 0.3 * t)).collect();
        let tr = unwrap_log_det(&grid, &dets).unwrap();
        for (p, &t) in tr.iter().zip(&grid) {
            assert_abs_diff_eq!(p.im_ln_d, 0.3 * t, epsilon = 1e-12);
            assert_abs_diff_eq!(p.re_ln_d, 2f64.ln(), epsilon = 1e-15);
        }
    }

    #[test]
    fn bad_grids_are_rejected() {
        let om = zeeman(1.0);
        for grid in [&[][..], &[0.5, 1.0], &[0.0, 1.0, 1.0], &[0.0, f64::INFINITY]] {
            assert!(matches!(
                track_log_det(order(0.5), &om, grid, 1e-12),
                Err(Error::Domain(_))
            ));
        }
    }
}
