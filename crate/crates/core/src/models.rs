//! Field vectors and defaults for the Zeeman, one-site Yang-Lee and PT
//! waveguide models.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dyson::DysonInit;
use crate::error::{Error, Result};
use crate::two_level::{OmegaVector, StateVector};

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// ω = (0, 0, −ω_L/2).
pub fn zeeman(omega_l: f64) -> Result<OmegaVector> {
    let w = finite("omega_L", omega_l)?;
    OmegaVector::new(real(0.0), real(0.0), real(-0.5 * w))
}

/// ω = (−iξ/2, 0, −1/2).
pub fn yang_lee_one_site(xi: f64) -> Result<OmegaVector> {
    let xi = finite("xi", xi)?;
    OmegaVector::new(Complex64::new(0.0, -0.5 * xi), real(0.0), real(-0.5))
}

/// ω = (ς, 0, −iε).
pub fn pt_waveguide(sigma: f64, eps: f64) -> Result<OmegaVector> {
    let s = finite("sigma", sigma)?;
    let e = finite("eps", eps)?;
    OmegaVector::new(real(s), real(0.0), Complex64::new(0.0, -e))
}

/// Only the single uncoupled site reduces to a two-level problem.
pub fn yang_lee_chain(sites: usize, coupling: f64, xi: f64) -> Result<OmegaVector> {
    if sites == 1 && coupling == 0.0 {
        yang_lee_one_site(xi)
    } else {
        Err(Error::UnsupportedModel(format!(
            "Yang-Lee chain with {sites} sites and J={coupling}; only N=1, J=0 is a two-level system"
        )))
    }
}

/// Model together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetKind {
    Zeeman { omega_l: f64 },
    YangLeeOneSite { xi: f64 },
    PtWaveguide { sigma: f64, eps: f64 },
}

impl PresetKind {
    pub const NAMES: [&'static str; 3] = ["zeeman", "yang_lee_one_site", "pt_waveguide"];

    /// Parameters giving Δ = 1, √3/4 and √3/2 respectively.
    pub fn default_for(name: &str) -> Result<Self> {
        match name {
            "zeeman" => Ok(PresetKind::Zeeman { omega_l: 2.0 }),
            "yang_lee_one_site" => Ok(PresetKind::YangLeeOneSite { xi: 0.5 }),
            "pt_waveguide" => Ok(PresetKind::PtWaveguide { sigma: 1.0, eps: 0.5 }),
            other => Err(Error::UnsupportedModel(format!(
                "unknown preset {other:?}; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PresetKind::Zeeman { .. } => "zeeman",
            PresetKind::YangLeeOneSite { .. } => "yang_lee_one_site",
            PresetKind::PtWaveguide { .. } => "pt_waveguide",
        }
    }

    /// (key, value) pairs, in the order the config schema lists them.
    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match *self {
            PresetKind::Zeeman { omega_l } => vec![("omega_L", omega_l)],
            PresetKind::YangLeeOneSite { xi } => vec![("xi", xi)],
            PresetKind::PtWaveguide { sigma, eps } => vec![("sigma", sigma), ("eps", eps)],
        }
    }

    /// Replaces one named parameter.
    pub fn with_parameter(self, key: &str, value: f64) -> Result<Self> {
        let bad = || Error::Domain(format!("preset {} has no parameter {key:?}", self.name()));
        Ok(match (self, key) {
            (PresetKind::Zeeman { .. }, "omega_L") => PresetKind::Zeeman { omega_l: value },
            (PresetKind::YangLeeOneSite { .. }, "xi") => PresetKind::YangLeeOneSite { xi: value },
            (PresetKind::PtWaveguide { eps, .. }, "sigma") => PresetKind::PtWaveguide { sigma: value, eps },
            (PresetKind::PtWaveguide { sigma, .. }, "eps") => PresetKind::PtWaveguide { sigma, eps: value },
            _ => return Err(bad()),
        })
    }

    pub fn omega(&self) -> Result<OmegaVector> {
        match *self {
            PresetKind::Zeeman { omega_l } => zeeman(omega_l),
            PresetKind::YangLeeOneSite { xi } => yang_lee_one_site(xi),
            PresetKind::PtWaveguide { sigma, eps } => pt_waveguide(sigma, eps),
        }
    }

    /// Spin-up, spin-down and (1, 1)/√2 respectively.
    pub fn default_initial_state(&self) -> StateVector {
        match self {
            PresetKind::Zeeman { .. } => StateVector::SPIN_UP,
            PresetKind::YangLeeOneSite { .. } => StateVector::SPIN_DOWN,
            PresetKind::PtWaveguide { .. } => StateVector::plus(),
        }
    }
}

impl FromStr for PresetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::default_for(s)
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for (k, v) in self.parameters() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// A model ready to run: field vector, initial state and Dyson initial values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub kind: PresetKind,
    pub omega: OmegaVector,
    pub initial_state: StateVector,
    pub dyson_init: DysonInit,
}

impl Preset {
    pub fn new(kind: PresetKind) -> Result<Self> {
        Ok(Self {
            kind,
            omega: kind.omega()?,
            initial_state: kind.default_initial_state(),
            dyson_init: DysonInit::paper_default(),
        })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::new(PresetKind::default_for(name)?)
    }

    pub fn all_defaults() -> Vec<Preset> {
        PresetKind::NAMES
            .iter()
            .map(|n| Self::by_name(n).expect("built-in preset"))
            .collect()
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn with_initial_state(mut self, psi: StateVector) -> Self {
        self.initial_state = psi;
        self
    }

    pub fn with_dyson_init(mut self, init: DysonInit) -> Self {
        self.dyson_init = init;
        self
    }
}
