//! Scenario files: flat TOML, one key per line.
//!
//! ```toml
//! name = "zeeman_dyson_params"
//! preset = "zeeman"
//! omega_L = 2.0
//! alphas = [1.0, 0.75, 0.5, 0.25]
//! t_max = 10.0
//! n_points = 1000
//! tol = 1e-12
//! outputs = ["dyson_params"]
//! ```
//!
//! Optional keys: the preset parameter (`omega_L`, `xi`, or `sigma` and
//! `eps`), `kappa0`, `lambda0_re`, `lambda0_im`, `Lambda0`, and
//! `psi0 = [re_up, im_up, re_down, im_down]`. Unknown keys are rejected.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use fracdyson::dyson::DysonInit;
use fracdyson::{Complex64, FractionalOrder, Preset, PresetKind, StateVector, TimeGrid};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Output {
    DysonParams,
    Magnetization,
    Population,
    Intensities,
    InvariantReport,
}

impl Output {
    pub const ALL: [Output; 5] = [
        Output::DysonParams,
        Output::Magnetization,
        Output::Population,
        Output::Intensities,
        Output::InvariantReport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::DysonParams => "dyson_params",
            Output::Magnetization => "magnetization",
            Output::Population => "population",
            Output::Intensities => "intensities",
            Output::InvariantReport => "invariant_report",
        }
    }
}

impl FromStr for Output {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Output::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| {
            let names: Vec<_> = Output::ALL.iter().map(|o| o.name()).collect();
            format!("unknown output {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    preset: String,
    #[serde(rename = "omega_L")]
    omega_l: Option<f64>,
    xi: Option<f64>,
    sigma: Option<f64>,
    eps: Option<f64>,
    alphas: Vec<f64>,
    t_max: f64,
    n_points: i64,
    tol: Option<f64>,
    outputs: Vec<String>,
    kappa0: Option<f64>,
    lambda0_re: Option<f64>,
    lambda0_im: Option<f64>,
    #[serde(rename = "Lambda0")]
    big_lambda0: Option<f64>,
    psi0: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub preset: Preset,
    pub alphas: Vec<FractionalOrder>,
    pub t_max: f64,
    pub n_points: usize,
    pub tol: f64,
    pub outputs: BTreeSet<Output>,
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
        let fallback = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        Self::parse(&text, fallback)
    }

    /// Parses scenario text; `fallback_name` is used when `name` is absent.
    pub fn parse(text: &str, fallback_name: &str) -> Result<Self, CliError> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| config(e.message().to_string()))?;

        let mut kind = PresetKind::default_for(&raw.preset).map_err(|e| config(e.to_string()))?;
        for (key, value) in [
            ("omega_L", raw.omega_l),
            ("xi", raw.xi),
            ("sigma", raw.sigma),
            ("eps", raw.eps),
        ] {
            if let Some(v) = value {
                kind = kind.with_parameter(key, v).map_err(|e| config(e.to_string()))?;
            }
        }
        let mut preset = Preset::new(kind).map_err(|e| config(e.to_string()))?;

        let base = DysonInit::paper_default();
        let lambda0 = Complex64::new(
            raw.lambda0_re.unwrap_or(base.lambda0.re),
            raw.lambda0_im.unwrap_or(base.lambda0.im),
        );
        let init = DysonInit::new(
            raw.kappa0.unwrap_or(base.kappa0),
            lambda0,
            raw.big_lambda0.unwrap_or(base.big_lambda0),
        )
        .map_err(|e| config(e.to_string()))?;
        preset = preset.with_dyson_init(init);

        if let Some(p) = raw.psi0 {
            let [a, b, c, d] = p[..] else {
                return Err(config(format!(
                    "psi0 needs 4 numbers [re_up, im_up, re_down, im_down], got {}",
                    p.len()
                )));
            };
            let psi =
                StateVector::new(Complex64::new(a, b), Complex64::new(c, d)).map_err(|e| config(e.to_string()))?;
            preset = preset.with_initial_state(psi);
        }

        if raw.alphas.is_empty() {
            return Err(config("alphas must not be empty"));
        }
        let alphas = raw
            .alphas
            .iter()
            .map(|&a| FractionalOrder::new(a).map_err(|e| config(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;

        if !(raw.t_max > 0.0 && raw.t_max.is_finite()) {
            return Err(config(format!("t_max must be positive and finite, got {}", raw.t_max)));
        }
        if raw.n_points < 2 {
            return Err(config(format!("n_points must be at least 2, got {}", raw.n_points)));
        }
        let tol = raw.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(config(format!("tol must be positive, got {tol}")));
        }
        if raw.outputs.is_empty() {
            return Err(config("outputs must not be empty"));
        }
        let outputs = raw
            .outputs
            .iter()
            .map(|s| s.parse::<Output>().map_err(config))
            .collect::<Result<BTreeSet<_>, _>>()?;

        Ok(Self {
            name: raw.name.unwrap_or_else(|| fallback_name.to_string()),
            preset,
            alphas,
            t_max: raw.t_max,
            n_points: raw.n_points as usize,
            tol,
            outputs,
        })
    }

    pub fn grid(&self) -> Result<TimeGrid, CliError> {
        TimeGrid::uniform(self.t_max, self.n_points).map_err(|e| config(e.to_string()))
    }
}
