//! Observables of the unitarily evolved state: magnetization, population
//! difference and waveguide intensities, each with the closed form in ϖ, τ
//! for the matching initial state.

use num_complex::Complex64;

use crate::dyson::DysonInit;
use crate::error::{Error, Result};
use crate::mittag_leffler::FractionalOrder;
use crate::models::Preset;
use crate::parallel::Execution;
use crate::trajectory::{TimeGrid, Trajectory};
use crate::two_level::StateVector;
use crate::unitary::UnitaryCoeffs;

fn norm_or_degenerate(psi: &StateVector) -> Result<f64> {
    let n = psi.norm_sqr();
    if n > 0.0 && n.is_finite() {
        Ok(n)
    } else {
        Err(Error::DegenerateState)
    }
}

/// M_k = ⟨ψ|σ_k|ψ⟩ / ⟨ψ|ψ⟩.
pub fn magnetization(psi: &StateVector) -> Result<[f64; 3]> {
    let n = norm_or_degenerate(psi)?;
    let cross = psi.c_up.conj() * psi.c_down;
    Ok([
        2.0 * cross.re / n,
        2.0 * cross.im / n,
        (psi.c_up.norm_sqr() - psi.c_down.norm_sqr()) / n,
    ])
}

/// ⟨σ₃⟩ / ⟨ψ|ψ⟩.
pub fn population_difference(psi: &StateVector) -> Result<f64> {
    Ok(magnetization(psi)?[2])
}

/// Mode intensities |⟨±|ψ⟩|² / ⟨ψ|ψ⟩ with |±⟩ = (1, ±1)/√2.
pub fn waveguide_intensities(psi: &StateVector) -> Result<(f64, f64)> {
    let n = norm_or_degenerate(psi)?;
    let plus = (psi.c_up + psi.c_down).norm_sqr() * 0.5;
    let minus = (psi.c_up - psi.c_down).norm_sqr() * 0.5;
    Ok((plus / n, minus / n))
}

/// Guide intensities |E₊|², |E₋|²: the σ₃-basis populations, normalised.
pub fn guide_intensities(psi: &StateVector) -> Result<(f64, f64)> {
    let n = norm_or_degenerate(psi)?;
    Ok((psi.c_up.norm_sqr() / n, psi.c_down.norm_sqr() / n))
}

/// (M₁, M₂, M₃) = (−2 Re ϖτ, 2 Im ϖτ, |ϖ|² − |τ|²) for a spin-up start.
pub fn magnetization_closed_form(u: &UnitaryCoeffs) -> [f64; 3] {
    let p = u.varpi * u.tau;
    [-2.0 * p.re, 2.0 * p.im, u.varpi.norm_sqr() - u.tau.norm_sqr()]
}

/// |τ|² − |ϖ|² for a spin-down start.
pub fn population_closed_form(u: &UnitaryCoeffs) -> f64 {
    u.tau.norm_sqr() - u.varpi.norm_sqr()
}

/// |E±|² = ½|ϖ ± τ|² for a (1, 1)/√2 start.
pub fn guide_intensities_closed_form(u: &UnitaryCoeffs) -> (f64, f64) {
    let half = |z: Complex64| 0.5 * z.norm_sqr();
    (half(u.varpi + u.tau), half(u.varpi - u.tau))
}

/// Closed-form (M₁, M₂, M₃) for a spin-up start along `grid`.
pub fn magnetization_trajectory(
    alpha: FractionalOrder,
    preset: &Preset,
    init: DysonInit,
    grid: &TimeGrid,
    tol: f64,
) -> Result<Vec<[f64; 3]>> {
    let traj = Trajectory::compute(alpha, preset.omega, init, grid, tol, Execution::default())?;
    Ok(traj
        .points
        .iter()
        .map(|p| magnetization_closed_form(&p.reduced))
        .collect())
}

/// All observables of one evolved state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRecord {
    pub t: f64,
    pub m: [f64; 3],
    pub pop_diff: f64,
    /// Guide intensities.
    pub i_plus: f64,
    pub i_minus: f64,
}

impl ObservableRecord {
    pub fn of_state(t: f64, psi: &StateVector) -> Result<Self> {
        let m = magnetization(psi)?;
        let (i_plus, i_minus) = guide_intensities(psi)?;
        Ok(Self {
            t,
            m,
            pop_diff: m[2],
            i_plus,
            i_minus,
        })
    }
}
