//! Largest violation of each invariant along a computed trajectory.

use num_complex::Complex64;

use crate::dyson::{consistency_residual, dyson_inverse, dyson_matrix, metric};
use crate::error::Result;
use crate::observables::{
    guide_intensities, guide_intensities_closed_form, magnetization, magnetization_closed_form, population_closed_form,
    population_difference,
};
use crate::trajectory::Trajectory;
use crate::two_level::{Matrix2, StateVector};
use crate::unitary::evolve_state;

/// Whether a check bounds a violation from above or a quantity from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `value ≤ limit`.
    AtMost,
    /// Passes when `value > limit`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub bound: Bound,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.limit,
            Bound::Above => self.value > self.limit,
        }
    }
}

/// (1, 0), (0, 1), (1, 1)/√2, (1, i)/√2.
pub fn state_basket() -> [StateVector; 4] {
    [
        StateVector::SPIN_UP,
        StateVector::SPIN_DOWN,
        StateVector::plus(),
        StateVector::plus_i(),
    ]
}

fn quad(m: &Matrix2, psi: &StateVector) -> f64 {
    psi.expectation(m).re
}

#[derive(Default)]
struct Max(f64);

impl Max {
    fn see(&mut self, v: f64) {
        // NaN must surface as a failure, not vanish in a max.
        if v.is_nan() || v > self.0 {
            self.0 = v;
        }
    }
}

/// Runs every pointwise invariant over `traj`.
pub fn audit(traj: &Trajectory) -> Result<Vec<InvariantCheck>> {
    let basket = state_basket();
    let theta0 = metric(&traj.init.params())?;
    let eta0_inv = dyson_inverse(&traj.init.params())?;
    let theta0_norms = basket.map(|psi| quad(&theta0, &psi));

    let mut unitarity = Max::default();
    let mut raw_defect = Max::default();
    let mut metric_drift = Max::default();
    let mut cdt = Max::default();
    let mut reduced = Max::default();
    let mut pair_norm = Max::default();
    let mut det_u = Max::default();
    let mut state_norm = Max::default();
    let mut two_path = Max::default();
    let mut closed_forms = Max::default();
    let mut bloch = Max::default();
    let mut intensity_sum = Max::default();
    let mut hermiticity = Max::default();
    let mut min_lambda = f64::INFINITY;
    let mut min_eig = f64::INFINITY;

    for p in &traj.points {
        let u = &p.unitary;
        let raw = p.propagator();
        unitarity.see(u.unitarity_defect());
        raw_defect.see(raw.unitarity_defect());

        let eta = dyson_matrix(&p.params)?;
        let theta = metric(&p.params)?;
        min_lambda = min_lambda.min(p.params.big_lambda);
        min_eig = min_eig.min(theta.hermitian_eigenvalues()[0]);
        hermiticity.see(
            eta.hermiticity_defect()
                .max(theta.hermiticity_defect() / theta.norm_inf()),
        );

        cdt.see(consistency_residual(&p.zeta_xi, &traj.init, &p.track));
        reduced.see((p.reduced.matrix() - *u).norm_inf());
        pair_norm.see((p.reduced.norm_sqr() - 1.0).abs());
        let phase = Complex64::from_polar(1.0, p.track.im_ln_d);
        det_u.see((u.det() - phase).norm());

        let long_way = eta * raw * eta0_inv;
        for (psi0, n0) in basket.iter().zip(theta0_norms) {
            let big_psi = StateVector::from_array(raw.apply(psi0.as_array()));
            metric_drift.see((quad(&theta, &big_psi) - n0).abs() / n0);
            let psi = evolve_state(u, psi0);
            state_norm.see((psi.norm_sqr() / psi0.norm_sqr() - 1.0).abs());
            let other = StateVector::from_array(long_way.apply(psi0.as_array()));
            two_path.see((psi.c_up - other.c_up).norm().max((psi.c_down - other.c_down).norm()));
            let m = magnetization(&psi)?;
            bloch.see((m.iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
        }

        let up = evolve_state(u, &StateVector::SPIN_UP);
        let down = evolve_state(u, &StateVector::SPIN_DOWN);
        let plus = evolve_state(u, &StateVector::plus());
        let (m_gen, m_cf) = (magnetization(&up)?, magnetization_closed_form(&p.reduced));
        for k in 0..3 {
            closed_forms.see((m_gen[k] - m_cf[k]).abs());
        }
        closed_forms.see((population_difference(&down)? - population_closed_form(&p.reduced)).abs());
        let (gp, gm) = guide_intensities(&plus)?;
        let (cp, cm) = guide_intensities_closed_form(&p.reduced);
        closed_forms.see((gp - cp).abs().max((gm - cm).abs()));
        // Unnormalised sum, so a leak in û would show up here.
        intensity_sum.see((plus.norm_sqr() - 1.0).abs());
    }

    let raw_limit = if traj.alpha.value() < 1.0 { 1e-2 } else { 0.0 };
    let raw_bound = if traj.alpha.value() < 1.0 {
        Bound::Above
    } else {
        Bound::AtMost
    };
    let raw_value = if traj.alpha.value() < 1.0 { raw_defect.0 } else { 0.0 };
    let check = |name, value, limit, bound| InvariantCheck {
        name,
        value,
        limit,
        bound,
    };
    Ok(vec![
        check("unitarity", unitarity.0, 1e-8, Bound::AtMost),
        check("raw_non_unitarity", raw_value, raw_limit, raw_bound),
        check("metric_conservation", metric_drift.0, 1e-8, Bound::AtMost),
        check("consistency_identity", cdt.0, 1e-8, Bound::AtMost),
        check("reduced_form", reduced.0, 1e-9, Bound::AtMost),
        check("varpi_tau_norm", pair_norm.0, 1e-9, Bound::AtMost),
        check("det_u_phase", det_u.0, 1e-9, Bound::AtMost),
        check("state_norm", state_norm.0, 1e-8, Bound::AtMost),
        check("two_path_state", two_path.0, 1e-9, Bound::AtMost),
        check("closed_forms", closed_forms.0, 1e-9, Bound::AtMost),
        check("bloch_norm", bloch.0, 1e-9, Bound::AtMost),
        check("intensity_sum", intensity_sum.0, 1e-9, Bound::AtMost),
        check("hermiticity", hermiticity.0, 1e-12, Bound::AtMost),
        check("min_Lambda", min_lambda, 0.0, Bound::Above),
        check("min_eig_Theta", min_eig, 0.0, Bound::Above),
    ])
}
