use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arcscatter-cli-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcscatter")).args(args).output().unwrap()
}

fn out_dir(dir: &Path) -> String {
    format!("out_dir={}", dir.display())
}

/// Data rows of a CSV file, split into cells.
fn rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# arcscatter-csv v1"));
    lines.skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn config_errors_exit_with_two_and_name_the_key() {
    for (arg, key) in [("warp=9", "warp"), ("bc=robin", "bc"), ("N=abc", "N"), ("k=", "k")] {
        let o = run(&["solve", arg]);
        assert_eq!(o.status.code(), Some(2), "{arg}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(key), "{arg}");
    }
    let o = run(&["solve", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_three() {
    let dir = scratch("nonconv");
    let o = run(&["solve", "k=20", "arc.family=perturbed", "formulation=first_kind_s", "max_iter=2", &out_dir(&dir)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("iterations"));
}

#[test]
fn solve_is_byte_for_byte_deterministic() {
    let a = scratch("det-a");
    let b = scratch("det-b");
    let cfg = a.join("run.cfg");
    std::fs::write(&cfg, "arc.family = perturbed\nk = 4\nbc = neumann\nN = 64\nfar.count = 37\n").unwrap();
    for d in [&a, &b] {
        let o = run(&["solve", "--config", cfg.to_str().unwrap(), &out_dir(d)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["density.csv", "field.csv", "far_field.csv", "iterations.csv", "summary.json"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.join(f)).unwrap(), "{f}");
        assert!(!x.contains(&b'\r'));
    }
    assert_eq!(rows(&a.join("far_field.csv")).len(), 37);
    // 17 significant digits in every numeric cell.
    let first = &rows(&a.join("density.csv"))[0];
    assert!(first.iter().all(|c| c.split('e').next().unwrap().trim_start_matches('-').len() == 18));
}

#[test]
fn zero_amplitude_gives_zero_density() {
    let dir = scratch("zero");
    let o = run(&["solve", "k=3", "incident.amplitude=0", "N=32", &out_dir(&dir)]);
    assert_eq!(o.status.code(), Some(0));
    let density = rows(&dir.join("density.csv"));
    assert_eq!(density.len(), 32);
    for r in density {
        assert_eq!(r[1].parse::<f64>().unwrap(), 0.0);
        assert_eq!(r[2].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn verify_passes_on_a_fresh_checkout() {
    let dir = scratch("verify");
    let o = run(&["verify", &out_dir(&dir)]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    let line = text.lines().find(|l| l.starts_with("max identity deviation")).unwrap();
    let dev: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(dev < 1e-10);
    assert!(rows(&dir.join("verify.csv")).iter().all(|r| r[3] == "true"));
}

#[test]
fn spectrum_writes_eigenvalues_and_summary() {
    let dir = scratch("spectrum");
    let o = run(&["spectrum", "k=2", "N=48", "arc.family=circular", "arc.param2=2.0", &out_dir(&dir)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&dir.join("eigenvalues.csv")).len(), 48);
    assert_eq!(rows(&dir.join("remainder_singular_values.csv")).len(), 48);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert!(summary["min_abs"].as_f64().unwrap() > 0.0);
}

#[test]
fn flat_sweep_keeps_eigenvalues_away_from_zero() {
    let dir = scratch("sweep");
    let o = run(&["sweep", "k=1:20", "arc.family=flat", "formulation=second_kind_ns", &out_dir(&dir)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = rows(&dir.join("sweep.csv"));
    assert_eq!(table.len(), 20);
    let min: Vec<f64> = table.iter().map(|r| r[4].parse().unwrap()).collect();
    for r in &table {
        // The second-kind system never needs more iterations than the first-kind one here.
        assert!(r[2].parse::<usize>().unwrap() <= r[3].parse::<usize>().unwrap());
    }
    let lowest = min.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(lowest >= 0.2, "min|eig| column {min:.4?}");
}
