use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracdyson"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn run_into(scenario: &Path, out: &Path, extra: &[&str]) -> Output {
    bin()
        .args(extra)
        .arg("run")
        .arg(scenario)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn presets_list_names_all_models() {
    let o = bin().args(["presets", "list"]).output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("zeeman omega_L=2 delta=1+0i"));
    assert!(text.contains("yang_lee_one_site xi=0.5"));
    assert!(text.contains("pt_waveguide sigma=1 eps=0.5"));
}

#[test]
fn run_writes_one_file_per_output_and_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_into(&data("golden_zeeman.toml"), dir.path(), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let listed = String::from_utf8(o.stdout).unwrap();
    assert_eq!(listed.lines().count(), 12);
    let text = std::fs::read_to_string(dir.path().join("dyson_params_alpha0.5.csv")).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "t,kappa,re_lambda,im_lambda,abs_lambda,Lambda");
    assert_eq!(data_rows(&text).len(), 17);
    assert!(text.contains("# alpha: 0.5\n"));
    assert!(text.contains("# tol: 1e-12\n"));
}

/// Frozen outputs of the three small scenarios in tests/data. The tool
/// version line is skipped so that releases do not invalidate them.
#[test]
fn golden_outputs_reproduce() {
    let golden_root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for preset in ["zeeman", "yang_lee_one_site", "pt_waveguide"] {
        let dir = tempfile::tempdir().unwrap();
        let o = run_into(&data(&format!("golden_{preset}.toml")), dir.path(), &[]);
        assert!(o.status.success(), "{}", stderr(&o));
        for entry in std::fs::read_dir(golden_root.join(preset)).unwrap() {
            let path = entry.unwrap().path();
            let want = std::fs::read_to_string(&path).unwrap();
            let got = std::fs::read_to_string(dir.path().join(path.file_name().unwrap())).unwrap();
            let text_lines = |s: &str| -> Vec<String> {
                s.lines()
                    .take_while(|l| l.starts_with('#') || l.starts_with(char::is_alphabetic))
                    .filter(|l| !l.starts_with("# tool:"))
                    .map(String::from)
                    .collect()
            };
            assert_eq!(text_lines(&got), text_lines(&want), "{}", path.display());
            let (g, w) = (data_rows(&got), data_rows(&want));
            assert_eq!(g.len(), w.len());
            for (gr, wr) in g.iter().zip(&w) {
                for (x, y) in gr.iter().zip(wr) {
                    assert!(
                        (x - y).abs() <= 1e-11 * y.abs().max(1.0),
                        "{}: {x} vs {y}",
                        path.display()
                    );
                }
            }
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(run_into(&data("golden_pt_waveguide.toml"), a.path(), &[])
        .status
        .success());
    assert!(run_into(&data("golden_pt_waveguide.toml"), b.path(), &["--sequential"])
        .status
        .success());
    let mut names: Vec<_> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 12);
    for n in names {
        assert_eq!(
            std::fs::read(a.path().join(&n)).unwrap(),
            std::fs::read(b.path().join(&n)).unwrap()
        );
    }
}

#[test]
fn single_point_grid_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_into(&data("one_point.toml"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error=config "), "{err}");
    assert!(err.contains("n_points"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn missing_file_is_a_config_error() {
    let o = bin().args(["audit", "does/not/exist.toml"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error=config "));
}

#[test]
fn coarse_grid_reports_the_phase_jump_index() {
    let dir = tempfile::tempdir().unwrap();
    for o in [
        run_into(&data("coarse_phase_jump.toml"), dir.path(), &[]),
        bin().arg("audit").arg(data("coarse_phase_jump.toml")).output().unwrap(),
    ] {
        assert_eq!(o.status.code(), Some(3));
        let err = stderr(&o);
        assert!(
            err.starts_with("error=phase_jump alpha=0.75 index=2 index_prev=1 "),
            "{err}"
        );
    }
}

#[test]
fn audit_reports_every_check() {
    let o = bin()
        .arg("audit")
        .arg(data("golden_yang_lee_one_site.toml"))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let alphas = report["alphas"].as_array().unwrap();
    assert_eq!(alphas.len(), 3);
    let one = &alphas[0];
    assert_eq!(one["alpha"], 1.0);
    let unitarity = one["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "unitarity")
        .unwrap();
    assert!(unitarity["value"].as_f64().unwrap() <= 1e-8);
    assert_eq!(unitarity["pass"], true);
}
