//! Comma-separated tables with a `#` comment block in front.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fracdyson::{Complex64, Trajectory};

use crate::scenario::{Output, Scenario};
use crate::{bound_name, VERSION};

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn header(output: Output) -> Vec<&'static str> {
    match output {
        Output::DysonParams => vec!["t", "kappa", "re_lambda", "im_lambda", "abs_lambda", "Lambda"],
        Output::Magnetization => vec!["t", "M1", "M2", "M3"],
        Output::Population => vec!["t", "pop_diff"],
        Output::Intensities => vec!["x3", "I_plus", "I_minus"],
        Output::InvariantReport => vec!["invariant", "value", "limit", "bound", "pass"],
    }
}

fn comments(scenario: &Scenario, traj: &Trajectory, output: Output) -> Vec<String> {
    let init = &scenario.preset.dyson_init;
    let psi = &scenario.preset.initial_state;
    let mut c = vec![
        format!("scenario: {}", scenario.name),
        format!("output: {output}"),
        format!("tool: fracdyson {VERSION}"),
        format!("preset: {}", scenario.preset.kind),
        format!("alpha: {}", traj.alpha.value()),
        format!("t_max: {}", scenario.t_max),
        format!("n_points: {}", scenario.n_points),
        format!("tol: {:e}", scenario.tol),
        format!(
            "dyson_init: kappa0={} lambda0={} Lambda0={}",
            init.kappa0,
            complex(init.lambda0),
            init.big_lambda0
        ),
    ];
    if matches!(output, Output::Magnetization | Output::Population | Output::Intensities) {
        c.push(format!("psi0: {} {}", complex(psi.c_up), complex(psi.c_down)));
    }
    if output == Output::Intensities {
        c.push("basis: guide (sigma_3 eigenbasis), I = |E|^2 normalised".to_string());
    }
    c
}

pub fn table(scenario: &Scenario, traj: &Trajectory, output: Output) -> fracdyson::Result<Table> {
    let rows: Vec<Vec<String>> = match output {
        Output::DysonParams => traj
            .points
            .iter()
            .map(|p| {
                let q = &p.params;
                vec![
                    num(p.t),
                    num(q.kappa),
                    num(q.lambda.re),
                    num(q.lambda.im),
                    num(q.lambda.norm()),
                    num(q.big_lambda),
                ]
            })
            .collect(),
        Output::Magnetization | Output::Population | Output::Intensities => traj
            .observables(&scenario.preset.initial_state)?
            .into_iter()
            .map(|r| match output {
                Output::Magnetization => vec![num(r.t), num(r.m[0]), num(r.m[1]), num(r.m[2])],
                Output::Population => vec![num(r.t), num(r.pop_diff)],
                _ => vec![num(r.t), num(r.i_plus), num(r.i_minus)],
            })
            .collect(),
        Output::InvariantReport => fracdyson::invariants::audit(traj)?
            .into_iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    num(c.value),
                    num(c.limit),
                    bound_name(c.bound).to_string(),
                    c.passed().to_string(),
                ]
            })
            .collect(),
    };
    Ok(Table {
        comments: comments(scenario, traj, output),
        header: header(output),
        rows,
    })
}

pub fn write(path: &Path, table: &Table) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for c in &table.comments {
        writeln!(w, "# {c}")?;
    }
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(&table.header)?;
    for row in &table.rows {
        csv.write_record(row)?;
    }
    csv.flush()?;
    Ok(())
}
