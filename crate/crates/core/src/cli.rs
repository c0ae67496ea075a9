//! Command-line front end: `arcscatter <solve|spectrum|sweep|verify> [--config FILE] [key=value ...]`.
//!
//! Configuration is flat `key=value` text; later assignments override earlier
//! ones, and command-line pairs override the file.

use crate::error::{Error, Result};
use crate::geometry::Arc;
use crate::output::{complex_table, fmt_f64, Table};
use crate::solver::{
    discretize, evaluate_field, far_field, solve_with, BoundaryCondition, Formulation, Incident, Method,
    ScatteringProblem,
};
use crate::spectral::{calderon_remainder, eigen_report};
use crate::verify::{identity_checks, oracle_checks, Check};
use crate::cosine::{from_coefficients_fast, NodalGrid};
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const KEYS: &[&str] = &[
    "arc.family",
    "arc.param1",
    "arc.param2",
    "arc.param3",
    "arc.param4",
    "k",
    "bc",
    "formulation",
    "N",
    "tol",
    "max_iter",
    "out_dir",
    "incident.angle",
    "incident.amplitude",
    "field.radius",
    "field.count",
    "far.count",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Spectrum,
    Sweep,
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub arc: Arc,
    pub ks: Vec<f64>,
    pub bc: BoundaryCondition,
    pub formulation: Formulation,
    /// `None` selects a resolution from `k`.
    pub n: Option<usize>,
    pub tol: f64,
    pub max_iter: usize,
    pub out_dir: PathBuf,
    pub incident_angle: f64,
    pub amplitude: f64,
    pub field_radius: f64,
    pub field_count: usize,
    pub far_count: usize,
}

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(line, "expected key=value"))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| config_err(key, format!("cannot parse `{v}`")))
}

/// `1,2,5`, or `a:b` for the integers from a to b, or `a:b:step`.
fn parse_ks(v: &str) -> Result<Vec<f64>> {
    let ks: Vec<f64> = if v.contains(':') {
        let parts: Vec<f64> = v.split(':').map(|p| num("k", p.trim())).collect::<Result<_>>()?;
        let (a, b, step) = match parts.as_slice() {
            [a, b] => (*a, *b, 1.0),
            [a, b, s] => (*a, *b, *s),
            _ => return Err(config_err("k", "ranges are a:b or a:b:step")),
        };
        if !(step > 0.0) || b < a {
            return Err(config_err("k", "empty range"));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| a + step * i as f64).collect()
    } else {
        v.split(',').map(|p| num("k", p.trim())).collect::<Result<_>>()?
    };
    if ks.is_empty() || ks.iter().any(|k| !(*k > 0.0 && k.is_finite())) {
        return Err(config_err("k", "wavenumbers must be positive"));
    }
    Ok(ks)
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        RunConfig {
            command,
            arc: Arc::unit_flat(),
            ks: if command == Command::Sweep {
                (1..=20).map(f64::from).collect()
            } else {
                vec![5.0]
            },
            bc: BoundaryCondition::Dirichlet,
            formulation: Formulation::SecondKindNS,
            n: None,
            tol: 1e-8,
            max_iter: 1000,
            out_dir: PathBuf::from("arcscatter_out"),
            incident_angle: 0.0,
            amplitude: 1.0,
            field_radius: 2.0,
            field_count: 64,
            far_count: 181,
        }
    }

    pub fn from_pairs(command: Command, pairs: &[(String, String)]) -> Result<Self> {
        let mut c = RunConfig::defaults(command);
        let mut family: Option<String> = None;
        let mut params: [Option<f64>; 4] = [None; 4];
        for (k, v) in pairs {
            match k.as_str() {
                "arc.family" => family = Some(v.to_lowercase()),
                "arc.param1" | "arc.param2" | "arc.param3" | "arc.param4" => {
                    let i = k.as_bytes()[9] - b'1';
                    params[i as usize] = Some(num(k, v)?);
                }
                "k" => c.ks = parse_ks(v)?,
                "bc" => {
                    c.bc = match v.to_lowercase().as_str() {
                        "dirichlet" => BoundaryCondition::Dirichlet,
                        "neumann" => BoundaryCondition::Neumann,
                        _ => return Err(config_err(k, "expected dirichlet or neumann")),
                    }
                }
                "formulation" => {
                    c.formulation = match v.to_lowercase().as_str() {
                        "second_kind_ns" | "ns" => Formulation::SecondKindNS,
                        "first_kind_s" | "s" => Formulation::FirstKindS,
                        "first_kind_n" | "n" => Formulation::FirstKindN,
                        _ => return Err(config_err(k, "expected second_kind_ns, first_kind_s or first_kind_n")),
                    }
                }
                "N" => {
                    c.n = if v == "auto" {
                        None
                    } else {
                        let n: usize = num(k, v)?;
                        if !(8..=4096).contains(&n) {
                            return Err(config_err(k, "resolution must lie in 8..=4096"));
                        }
                        Some(n)
                    }
                }
                "tol" => {
                    c.tol = num(k, v)?;
                    if !(c.tol > 1e-14 && c.tol < 1e-2) {
                        return Err(config_err(k, "tolerance must lie in (1e-14, 1e-2)"));
                    }
                }
                "max_iter" => c.max_iter = num(k, v)?,
                "out_dir" => c.out_dir = PathBuf::from(v),
                "incident.angle" => c.incident_angle = num(k, v)?,
                "incident.amplitude" => c.amplitude = num(k, v)?,
                "field.radius" => c.field_radius = num(k, v)?,
                "field.count" => c.field_count = num(k, v)?,
                "far.count" => c.far_count = num(k, v)?,
                _ => return Err(config_err(k, "unknown key")),
            }
        }
        let p = |i: usize, d: f64| params[i].unwrap_or(d);
        let arc = match family.as_deref().unwrap_or("flat") {
            "flat" => Arc::flat([p(0, -1.0), p(1, 0.0)], [p(2, 1.0), p(3, 0.0)]),
            "circular" => Arc::circular(p(0, 1.0), p(1, std::f64::consts::FRAC_PI_2)),
            "perturbed" => {
                let q = p(1, 2.0);
                if q < 0.0 || q.fract() != 0.0 {
                    return Err(config_err("arc.param2", "frequency must be a non-negative integer"));
                }
                Arc::perturbed(p(0, 0.2), q as u32)
            }
            other => return Err(config_err("arc.family", format!("unknown family `{other}`"))),
        };
        c.arc = arc.map_err(|e| config_err("arc.family", e.to_string()))?;
        Ok(c)
    }

    /// Resolution used at wavenumber `k`.
    pub fn resolution(&self, k: f64) -> usize {
        self.n.unwrap_or_else(|| match self.command {
            Command::Solve => (8.0 * k).ceil() as usize + 64,
            _ => 256usize.max((16.0 * k).ceil() as usize),
        })
    }

    fn single_k(&self) -> Result<f64> {
        match self.ks.as_slice() {
            [k] => Ok(*k),
            _ => Err(config_err("k", "this command takes a single wavenumber")),
        }
    }

    fn problem(&self, k: f64) -> Result<ScatteringProblem> {
        let a = self.incident_angle;
        ScatteringProblem {
            arc: self.arc,
            k,
            bc: self.bc,
            incident: Incident::PlaneWave {
                direction: [a.cos(), a.sin()],
                amplitude: self.amplitude,
            },
            n: self.resolution(k),
        }
        .validated()
        .map_err(|e| config_err("k", e.to_string()))
    }
}

/// Parses the command word, an optional `--config FILE`, and override pairs.
pub fn parse_args(args: &[String]) -> Result<RunConfig> {
    let mut it = args.iter();
    let command = match it.next().map(String::as_str) {
        Some("solve") => Command::Solve,
        Some("spectrum") => Command::Spectrum,
        Some("sweep") => Command::Sweep,
        Some("verify") => Command::Verify,
        Some(other) => return Err(config_err("command", format!("unknown command `{other}`"))),
        None => return Err(config_err("command", "expected solve, spectrum, sweep or verify")),
    };
    let mut pairs = Vec::new();
    let mut overrides = Vec::new();
    while let Some(a) = it.next() {
        if a == "--config" {
            let path = it.next().ok_or_else(|| config_err("--config", "missing file name"))?;
            let text = std::fs::read_to_string(path).map_err(|e| config_err("--config", format!("{path}: {e}")))?;
            pairs.extend(parse_pairs(&text)?);
        } else {
            overrides.extend(parse_pairs(a)?);
        }
    }
    pairs.extend(overrides);
    RunConfig::from_pairs(command, &pairs)
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub passed: bool,
    /// Human-readable report lines.
    pub report: Vec<String>,
}

fn prepare_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| config_err("out_dir", format!("{}: {e}", dir.display())))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn formulation_name(f: Formulation) -> &'static str {
    match f {
        Formulation::SecondKindNS => "second_kind_ns",
        Formulation::FirstKindS => "first_kind_s",
        Formulation::FirstKindN => "first_kind_n",
    }
}

fn first_kind_for(bc: BoundaryCondition) -> Formulation {
    match bc {
        BoundaryCondition::Dirichlet => Formulation::FirstKindS,
        BoundaryCondition::Neumann => Formulation::FirstKindN,
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    prepare_dir(&config.out_dir)?;
    match config.command {
        Command::Solve => run_solve(config),
        Command::Spectrum => run_spectrum(config),
        Command::Sweep => run_sweep(config),
        Command::Verify => run_verify(config),
    }
}

fn run_solve(c: &RunConfig) -> Result<RunOutcome> {
    let k = c.single_k()?;
    let problem = c.problem(k)?;
    let disc = discretize(&problem, problem.n)?;
    let result = solve_with(&disc, &problem, c.formulation, Method::Gmres, c.tol, c.max_iter)?;
    let dir = &c.out_dir;
    let mut files = Vec::new();

    let grid = NodalGrid { n: problem.n };
    let nodal = from_coefficients_fast(&result.physical_density, &grid)?;
    let path = dir.join("density.csv");
    complex_table("theta", &grid.nodes(), &nodal).write(&path)?;
    files.push(path);

    let points: Vec<[f64; 2]> = (0..c.field_count)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / c.field_count as f64;
            [c.field_radius * a.cos(), c.field_radius * a.sin()]
        })
        .collect();
    let field = evaluate_field(&result, &problem, &points)?;
    let mut t = Table::new(&["x", "y", "re", "im"]);
    for (p, u) in points.iter().zip(&field) {
        t.row(&[p[0], p[1], u.re, u.im]);
    }
    let path = dir.join("field.csv");
    t.write(&path)?;
    files.push(path);

    let angles: Vec<f64> = (0..c.far_count)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / (c.far_count.max(2) - 1) as f64)
        .collect();
    let far = far_field(&result, &problem, &angles);
    let path = dir.join("far_field.csv");
    complex_table("angle", &angles, &far).write(&path)?;
    files.push(path);

    let mut t = Table::new(&["iter", "residual"]);
    for (i, r) in result.residual_history.iter().enumerate() {
        t.row_mixed(&[i.to_string(), fmt_f64(*r)]);
    }
    let path = dir.join("iterations.csv");
    t.write(&path)?;
    files.push(path);

    let summary = json!({
        "command": "solve",
        "arc": c.arc,
        "k": k,
        "N": problem.n,
        "bc": problem.bc,
        "formulation": formulation_name(c.formulation),
        "iterations": result.iterations,
        "final_residual": result.residual_history.last().copied().unwrap_or(0.0),
        "boundary_residual": result.boundary_residual,
    });
    let path = dir.join("summary.json");
    write_json(&path, &summary)?;
    files.push(path);
    Ok(RunOutcome {
        files,
        passed: true,
        report: vec![format!(
            "solved k={k} N={} in {} iterations",
            problem.n, result.iterations
        )],
    })
}

fn run_spectrum(c: &RunConfig) -> Result<RunOutcome> {
    let k = c.single_k()?;
    let n = c.resolution(k);
    let report = calderon_remainder(&c.arc, k, n)?;
    let dir = &c.out_dir;
    let mut files = Vec::new();
    let mut t = Table::new(&["re", "im"]);
    for v in &report.eigenvalues {
        t.row(&[v.re, v.im]);
    }
    let path = dir.join("eigenvalues.csv");
    t.write(&path)?;
    files.push(path);
    let mut t = Table::new(&["index", "sigma_over_sigma0"]);
    for (i, s) in report.singular_value_decay.iter().enumerate() {
        t.row_mixed(&[i.to_string(), fmt_f64(*s)]);
    }
    let path = dir.join("remainder_singular_values.csv");
    t.write(&path)?;
    files.push(path);
    let summary = json!({
        "command": "spectrum",
        "arc": c.arc,
        "k": k,
        "N": n,
        "min_abs": report.min_abs,
        "max_abs": report.max_abs,
        "cluster_center": [report.cluster_center.re, report.cluster_center.im],
        "cluster_radius_quantiles": report.cluster_radius_quantiles,
        "fraction_within_0.15": report.fraction_within(0.15),
        "remainder_rank_cut": report.rank_cut,
        "remainder_max_entry": report.remainder_max_entry,
    });
    let path = dir.join("summary.json");
    write_json(&path, &summary)?;
    files.push(path);
    Ok(RunOutcome {
        files,
        passed: true,
        report: vec![format!(
            "k={k} N={n}: |eig| in [{:.4}, {:.4}], {:.1}% within 0.15 of -1/4",
            report.min_abs,
            report.max_abs,
            100.0 * report.fraction_within(0.15)
        )],
    })
}

struct SweepRow {
    k: f64,
    n: usize,
    second: usize,
    first: usize,
    min_abs: f64,
    max_abs: f64,
    clustered: f64,
}

fn run_sweep(c: &RunConfig) -> Result<RunOutcome> {
    let rows: Vec<SweepRow> = c
        .ks
        .par_iter()
        .map(|&k| -> Result<SweepRow> {
            let problem = c.problem(k)?;
            let disc = discretize(&problem, problem.n)?;
            let second = solve_with(&disc, &problem, Formulation::SecondKindNS, Method::Gmres, c.tol, c.max_iter)?;
            let first = solve_with(&disc, &problem, first_kind_for(c.bc), Method::Gmres, c.tol, c.max_iter)?;
            let report = eigen_report(&disc.pair.ns, "NS", k)?;
            Ok(SweepRow {
                k,
                n: problem.n,
                second: second.iterations,
                first: first.iterations,
                min_abs: report.min_abs,
                max_abs: report.max_abs,
                clustered: report.fraction_within(0.15),
            })
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&[
        "k",
        "N",
        "iterations_second_kind",
        "iterations_first_kind",
        "min_abs_eig",
        "max_abs_eig",
        "fraction_within_0.15",
    ]);
    for r in &rows {
        t.row_mixed(&[
            fmt_f64(r.k),
            r.n.to_string(),
            r.second.to_string(),
            r.first.to_string(),
            fmt_f64(r.min_abs),
            fmt_f64(r.max_abs),
            fmt_f64(r.clustered),
        ]);
    }
    let path = c.out_dir.join("sweep.csv");
    t.write(&path)?;
    let report = rows
        .iter()
        .map(|r| {
            format!(
                "k={} N={} iterations {} vs {} min|eig|={:.4} max|eig|={:.4}",
                r.k, r.n, r.second, r.first, r.min_abs, r.max_abs
            )
        })
        .collect();
    Ok(RunOutcome {
        files: vec![path],
        passed: true,
        report,
    })
}

fn run_verify(c: &RunConfig) -> Result<RunOutcome> {
    let mut checks: Vec<Check> = identity_checks(c.n.unwrap_or(128))?;
    checks.extend(oracle_checks()?);
    let mut t = Table::new(&["check", "deviation", "tolerance", "passed"]);
    let mut report = Vec::new();
    for ch in &checks {
        t.row_mixed(&[
            format!("\"{}\"", ch.name),
            fmt_f64(ch.deviation),
            fmt_f64(ch.tolerance),
            ch.passed.to_string(),
        ]);
        report.push(format!(
            "{} {:<55} deviation {:.3e} (tolerance {:.1e})",
            if ch.passed { "PASS" } else { "FAIL" },
            ch.name,
            ch.deviation,
            ch.tolerance
        ));
    }
    let passed = checks.iter().all(|c| c.passed);
    let identity_max = checks
        .iter()
        .filter(|c| c.tolerance <= 1e-10)
        .map(|c| c.deviation)
        .fold(0.0, f64::max);
    report.push(format!("max identity deviation {identity_max:.3e}"));
    let path = c.out_dir.join("verify.csv");
    t.write(&path)?;
    let summary = json!({
        "command": "verify",
        "passed": passed,
        "max_identity_deviation": identity_max,
        "checks": checks,
    });
    let spath = c.out_dir.join("summary.json");
    write_json(&spath, &summary)?;
    Ok(RunOutcome {
        files: vec![path, spath],
        passed,
        report,
    })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

/// Runs the CLI on `args` (without the program name) and returns the exit status.
pub fn main_with_args(args: &[String]) -> i32 {
    let outcome = parse_args(args).and_then(|c| run(&c));
    match outcome {
        Ok(o) => {
            for line in &o.report {
                println!("{line}");
            }
            for f in &o.files {
                println!("wrote {}", f.display());
            }
            if o.passed {
                EXIT_OK
            } else {
                EXIT_NUMERICAL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
