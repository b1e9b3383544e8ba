//! Full pipeline along a time grid: coefficients and determinants per point
//! (parallel), ln D unwrapping (sequential), then Dyson parameters and û per
//! point (parallel).

use crate::dyson::{check_initial_consistency, dyson_params, zeta_xi, DysonInit, DysonParams, ZetaXi};
use crate::error::{Error, Result};
use crate::frac_evolution::{
    det_propagator, propagator_matrix, unwrap_log_det, validate_grid, LogDetTrack, Propagator, PropagatorCoeffs,
};
use crate::mittag_leffler::FractionalOrder;
use crate::models::Preset;
use crate::observables::ObservableRecord;
use crate::parallel::{try_map_indexed, Execution};
use crate::two_level::{Matrix2, OmegaVector, StateVector};
use crate::unitary::{evolve_state, reduce, unitary_general, UnitaryCoeffs};

/// Ordered time points starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid(Vec<f64>);

impl TimeGrid {
    /// t_i = t_max · i / (n − 1), i = 0..n.
    pub fn uniform(t_max: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("a grid needs at least 2 points, got {n}")));
        }
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::Domain(format!("t_max must be positive and finite, got {t_max}")));
        }
        let last = (n - 1) as f64;
        Ok(Self((0..n).map(|i| t_max * (i as f64) / last).collect()))
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        validate_grid(&points)?;
        Ok(Self(points))
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Everything computed at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub coeffs: PropagatorCoeffs,
    pub det: num_complex::Complex64,
    pub track: LogDetTrack,
    pub zeta_xi: ZetaXi,
    pub params: DysonParams,
    /// û in the general form.
    pub unitary: Matrix2,
    pub reduced: UnitaryCoeffs,
}

impl TrajectoryPoint {
    /// Û_α(t).
    pub fn propagator(&self) -> Matrix2 {
        propagator_matrix(&self.coeffs)
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub alpha: FractionalOrder,
    pub omega: OmegaVector,
    pub init: DysonInit,
    pub tol: f64,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn compute(
        alpha: FractionalOrder,
        omega: OmegaVector,
        init: DysonInit,
        grid: &TimeGrid,
        tol: f64,
        exec: Execution,
    ) -> Result<Self> {
        check_initial_consistency(&init)?;
        let prop = Propagator::new(alpha, omega, tol)?;
        let ts = grid.points();

        let stage1 = try_map_indexed(exec, ts.len(), |i| {
            let coeffs = prop.coeffs(ts[i])?;
            Ok((coeffs, det_propagator(&coeffs)?))
        })?;
        let dets: Vec<_> = stage1.iter().map(|(_, d)| *d).collect();
        let tracks = unwrap_log_det(ts, &dets)?;

        let points = try_map_indexed(exec, ts.len(), |i| {
            let (coeffs, det) = stage1[i];
            let track = tracks[i];
            let params = dyson_params(&coeffs, &init, &track)?;
            let unitary = unitary_general(&coeffs, &params, &init)?;
            let reduced = reduce(&unitary, &track)?;
            Ok(TrajectoryPoint {
                t: ts[i],
                coeffs,
                det,
                track,
                zeta_xi: zeta_xi(&coeffs, &init),
                params,
                unitary,
                reduced,
            })
        })?;

        Ok(Self {
            alpha,
            omega,
            init,
            tol,
            points,
        })
    }

    pub fn for_preset(
        alpha: FractionalOrder,
        preset: &Preset,
        grid: &TimeGrid,
        tol: f64,
        exec: Execution,
    ) -> Result<Self> {
        Self::compute(alpha, preset.omega, preset.dyson_init, grid, tol, exec)
    }

    /// û(t) ψ₀ at every grid point.
    pub fn evolve(&self, psi0: &StateVector) -> Vec<StateVector> {
        self.points.iter().map(|p| evolve_state(&p.unitary, psi0)).collect()
    }

    pub fn observables(&self, psi0: &StateVector) -> Result<Vec<ObservableRecord>> {
        self.points
            .iter()
            .map(|p| ObservableRecord::of_state(p.t, &evolve_state(&p.unitary, psi0)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_endpoints() {
        let g = TimeGrid::uniform(20.0, 2000).unwrap();
        assert_eq!(g.len(), 2000);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[1999], 20.0);
        assert!(TimeGrid::uniform(20.0, 1).is_err());
        assert!(TimeGrid::uniform(0.0, 10).is_err());
        assert!(TimeGrid::from_points(vec![0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn sequential_and_parallel_are_identical() {
        let preset = Preset::by_name("pt_waveguide").unwrap();
        let grid = TimeGrid::uniform(5.0, 300).unwrap();
        let a = FractionalOrder::new(0.5).unwrap();
        let s = Trajectory::for_preset(a, &preset, &grid, 1e-12, Execution::Sequential).unwrap();
        let p = Trajectory::for_preset(a, &preset, &grid, 1e-12, Execution::Parallel).unwrap();
        assert_eq!(s.points, p.points);
    }

    #[test]
    fn rejects_inconsistent_start() {
        let preset = Preset::by_name("zeeman").unwrap();
        let mut init = preset.dyson_init;
        init.big_lambda0 = -1.0;
        let grid = TimeGrid::uniform(1.0, 3).unwrap();
        let a = FractionalOrder::new(0.5).unwrap();
        let e = Trajectory::compute(a, preset.omega, init, &grid, 1e-12, Execution::Sequential);
        assert!(e.is_err());
    }
}
