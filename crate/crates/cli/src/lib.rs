//! `fracdyson` command-line front end: scenario parsing, CSV emission and
//! the invariant audit. The binary in `main.rs` is a thin wrapper.

pub mod csv_out;
pub mod scenario;

use std::path::{Path, PathBuf};

use fracdyson::invariants::{audit as audit_trajectory, Bound};
use fracdyson::two_level::delta;
use fracdyson::{Execution, FractionalOrder, Preset, Trajectory};
use serde::Serialize;

pub use scenario::{Output, Scenario};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("alpha={alpha}: {source}")]
    Model {
        alpha: f64,
        #[source]
        source: fracdyson::Error,
    },
    #[error("cannot write {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{failed} invariant check(s) failed")]
    AuditFailed { failed: usize },
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model { source, .. } if source.is_numerical() => 3,
            CliError::Model { .. } => 2,
            CliError::Io { .. } | CliError::AuditFailed { .. } => 1,
        }
    }

    /// Single line of `key=value` pairs for the error stream.
    pub fn diagnostic(&self) -> String {
        use fracdyson::Error as E;
        match self {
            CliError::Config(m) => format!("error=config message={m:?}"),
            CliError::Io { path, message } => {
                format!("error=io path={:?} message={message:?}", path.display().to_string())
            }
            CliError::AuditFailed { failed } => format!("error=audit_failed failed={failed}"),
            CliError::Model { alpha, source } => {
                let head = format!("error={} alpha={alpha}", source.kind());
                let tail = match source {
                    E::NonConvergence { z, tol, t, reason, .. } => {
                        let t = t.map(|t| t.to_string()).unwrap_or_else(|| "unknown".into());
                        format!("t={t} z_re={} z_im={} tol={tol:e} reason={reason:?}", z.re, z.im)
                    }
                    E::PhaseJump {
                        index,
                        index_prev,
                        t,
                        increment,
                    } => {
                        format!("index={index} index_prev={index_prev} t={t} increment={increment}")
                    }
                    E::Positivity { what, value, t } => format!("what={what:?} value={value} t={t}"),
                    E::InternalInconsistency {
                        what,
                        residual,
                        limit,
                        t,
                    } => {
                        format!("what={what:?} residual={residual:e} limit={limit:e} t={t}")
                    }
                    other => format!("message={:?}", other.to_string()),
                };
                format!("{head} {tail}")
            }
        }
    }
}

fn model_err(alpha: FractionalOrder) -> impl Fn(fracdyson::Error) -> CliError {
    move |source| CliError::Model {
        alpha: alpha.value(),
        source,
    }
}

/// One trajectory per α, in scenario order.
pub fn trajectories(scenario: &Scenario, exec: Execution) -> Result<Vec<Trajectory>, CliError> {
    let grid = scenario.grid()?;
    scenario
        .alphas
        .iter()
        .map(|&a| Trajectory::for_preset(a, &scenario.preset, &grid, scenario.tol, exec).map_err(model_err(a)))
        .collect()
}

/// `<output>_alpha<α>.csv`.
pub fn output_file_name(output: Output, alpha: FractionalOrder) -> String {
    format!("{}_alpha{}.csv", output.name(), alpha.value())
}

/// Computes every trajectory, then writes one file per (output, α).
/// Nothing is written if any α fails.
pub fn run(scenario: &Scenario, out_dir: &Path, exec: Execution) -> Result<Vec<PathBuf>, CliError> {
    let trajs = trajectories(scenario, exec)?;
    let mut tables = Vec::new();
    for traj in &trajs {
        for &output in &scenario.outputs {
            let table = csv_out::table(scenario, traj, output).map_err(model_err(traj.alpha))?;
            tables.push((out_dir.join(output_file_name(output, traj.alpha)), table));
        }
    }
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |e: std::io::Error| CliError::Io {
            path,
            message: e.to_string(),
        }
    };
    std::fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let mut written = Vec::new();
    for (path, table) in tables {
        csv_out::write(&path, &table).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub bound: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub alpha: f64,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub scenario: String,
    pub preset: String,
    pub version: &'static str,
    pub tol: f64,
    pub n_points: usize,
    pub t_max: f64,
    pub pass: bool,
    pub alphas: Vec<AlphaReport>,
}

impl AuditReport {
    pub fn failed(&self) -> usize {
        self.alphas.iter().flat_map(|a| &a.checks).filter(|c| !c.pass).count()
    }
}

pub fn bound_name(b: Bound) -> &'static str {
    match b {
        Bound::AtMost => "at_most",
        Bound::Above => "above",
    }
}

/// Runs the invariant suite on every α of the scenario.
pub fn audit(scenario: &Scenario, exec: Execution) -> Result<AuditReport, CliError> {
    let mut alphas = Vec::new();
    for traj in trajectories(scenario, exec)? {
        let checks: Vec<CheckReport> = audit_trajectory(&traj)
            .map_err(model_err(traj.alpha))?
            .into_iter()
            .map(|c| CheckReport {
                name: c.name,
                value: c.value,
                limit: c.limit,
                bound: bound_name(c.bound),
                pass: c.passed(),
            })
            .collect();
        alphas.push(AlphaReport {
            alpha: traj.alpha.value(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        });
    }
    Ok(AuditReport {
        scenario: scenario.name.clone(),
        preset: scenario.preset.kind.to_string(),
        version: VERSION,
        tol: scenario.tol,
        n_points: scenario.n_points,
        t_max: scenario.t_max,
        pass: alphas.iter().all(|a| a.pass),
        alphas,
    })
}

/// One line per built-in preset: name, default parameters, Δ and ψ₀.
pub fn presets_listing() -> String {
    let mut out = String::new();
    for p in Preset::all_defaults() {
        let params: Vec<String> = p.kind.parameters().iter().map(|(k, v)| format!("{k}={v}")).collect();
        let d = delta(&p.omega);
        let psi = p.initial_state;
        out.push_str(&format!(
            "{} {} delta={} psi0=[{}, {}, {}, {}]\n",
            p.name(),
            params.join(" "),
            csv_out::complex(d),
            psi.c_up.re,
            psi.c_up.im,
            psi.c_down.re,
            psi.c_down.im,
        ));
    }
    out
}
