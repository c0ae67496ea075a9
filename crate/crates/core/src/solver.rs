//! Plane-wave scattering by an open arc: boundary data, second-kind and
//! first-kind solves, and near/far field evaluation from the weighted densities.

use crate::cosine::{from_coefficients_fast, to_coefficients_fast, CosineSeries, NodalGrid};
use crate::error::{Error, Result};
use crate::geometry::{Arc, Vec2};
use crate::kernel::{calderon_pair, CalderonPair};
use crate::linalg::{gmres, lu_solve, matvec, CMat};
use crate::special::{bessel01, green};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Incident {
    PlaneWave { direction: Vec2, amplitude: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formulation {
    SecondKindNS,
    FirstKindS,
    FirstKindN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Gmres,
    DirectLu,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringProblem {
    pub arc: Arc,
    pub k: f64,
    pub bc: BoundaryCondition,
    pub incident: Incident,
    pub n: usize,
}

impl ScatteringProblem {
    /// Unit-amplitude plane wave travelling along `direction`.
    pub fn plane_wave(arc: Arc, k: f64, bc: BoundaryCondition, direction: Vec2, n: usize) -> Result<Self> {
        ScatteringProblem {
            arc,
            k,
            bc,
            incident: Incident::PlaneWave {
                direction,
                amplitude: 1.0,
            },
            n,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(Error::Domain {
                what: "wavenumber",
                value: self.k,
            });
        }
        let Incident::PlaneWave { direction, amplitude } = self.incident;
        let len = direction[0].hypot(direction[1]);
        if (len - 1.0).abs() > 1e-12 {
            return Err(Error::Domain {
                what: "plane-wave direction length",
                value: len,
            });
        }
        if !amplitude.is_finite() {
            return Err(Error::Domain {
                what: "plane-wave amplitude",
                value: amplitude,
            });
        }
        if self.n < 8 {
            return Err(Error::Precondition(format!("resolution N = {} must be at least 8", self.n)));
        }
        self.arc.validated()?;
        Ok(self)
    }

    pub fn incident_field(&self, x: Vec2) -> Complex64 {
        let Incident::PlaneWave { direction, amplitude } = self.incident;
        amplitude * Complex64::from_polar(1.0, self.k * (direction[0] * x[0] + direction[1] * x[1]))
    }

    /// Boundary datum at parameter `t`: `-u_inc` or `-du_inc/dn`.
    fn datum(&self, t: f64) -> Complex64 {
        let p = self.arc.point(t);
        let u = self.incident_field(p);
        match self.bc {
            BoundaryCondition::Dirichlet => -u,
            BoundaryCondition::Neumann => {
                let Incident::PlaneWave { direction, .. } = self.incident;
                let nrm = self.arc.normal(t);
                let dn = direction[0] * nrm[0] + direction[1] * nrm[1];
                -Complex64::new(0.0, self.k * dn) * u
            }
        }
    }

    /// Distance below which field evaluation is refused.
    pub fn margin(&self) -> f64 {
        2.0 * PI / (self.k.max(1.0) * self.n as f64) * self.arc.max_speed()
    }
}

/// Boundary data sampled on the `N`-point grid, as cosine coefficients.
pub fn boundary_data(problem: &ScatteringProblem) -> CosineSeries {
    boundary_data_modes(problem, problem.n)
}

/// Boundary data with `modes` coefficients.
pub fn boundary_data_modes(problem: &ScatteringProblem, modes: usize) -> CosineSeries {
    let grid = NodalGrid { n: modes };
    let samples: Vec<Complex64> = grid.parameters().iter().map(|&t| problem.datum(t)).collect();
    to_coefficients_fast(&samples).expect("non-empty grid")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResult {
    /// Unknown of the solved equation.
    pub density: CosineSeries,
    /// Density entering the layer potential: `S̃φ` for Neumann second kind, else the unknown.
    pub physical_density: CosineSeries,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub formulation: Formulation,
    pub method: Method,
    /// `‖S̃φ - f‖₀ / ‖f‖₀` for Dirichlet problems.
    pub boundary_residual: Option<f64>,
}

/// Operators of one problem, reusable across formulations.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub pair: CalderonPair,
    pub pad: usize,
}

/// Assembles the operators for `problem` with `pad` extra intermediate modes.
pub fn discretize(problem: &ScatteringProblem, pad: usize) -> Result<Discretization> {
    let pair = calderon_pair(&problem.arc, problem.k, problem.n, pad)?;
    Ok(Discretization { pair, pad })
}

/// Default padding used by [`solve`]: as many extra modes as the resolution.
pub fn default_pad(n: usize) -> usize {
    n
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 1e-14 && tol < 1e-2) {
        return Err(Error::Domain {
            what: "solver tolerance",
            value: tol,
        });
    }
    Ok(())
}

/// Krylov solve (full GMRES).
pub fn solve(problem: &ScatteringProblem, formulation: Formulation, tol: f64, max_iter: usize) -> Result<SolveResult> {
    check_tol(tol)?;
    let disc = discretize(problem, default_pad(problem.n))?;
    solve_with(&disc, problem, formulation, Method::Gmres, tol, max_iter)
}

/// Dense LU solve, the oracle for [`solve`].
pub fn solve_direct(problem: &ScatteringProblem, formulation: Formulation) -> Result<SolveResult> {
    let disc = discretize(problem, default_pad(problem.n))?;
    solve_with(&disc, problem, formulation, Method::DirectLu, 1e-12, 0)
}

fn norm0_e(e: &[Complex64]) -> f64 {
    CosineSeries::from_e_coefficients(e.to_vec()).sobolev_norm(0.0)
}

pub fn solve_with(
    disc: &Discretization,
    problem: &ScatteringProblem,
    formulation: Formulation,
    method: Method,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    let n = problem.n;
    let pair = &disc.pair;
    if pair.s.nrows() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: pair.s.nrows(),
        });
    }
    match (formulation, problem.bc) {
        (Formulation::FirstKindS, BoundaryCondition::Neumann) | (Formulation::FirstKindN, BoundaryCondition::Dirichlet) => {
            return Err(Error::Precondition(format!(
                "{formulation:?} does not apply to {:?} data",
                problem.bc
            )));
        }
        _ => {}
    }
    let wide = n + disc.pad;
    let data_wide = boundary_data_modes(problem, wide).e_coefficients();
    let data: Vec<Complex64> = data_wide[..n].to_vec();
    let (matrix, rhs): (&CMat, Vec<Complex64>) = match (formulation, problem.bc) {
        (Formulation::SecondKindNS, BoundaryCondition::Dirichlet) => (&pair.ns, matvec(&pair.n_wide, &data_wide)),
        (Formulation::SecondKindNS, BoundaryCondition::Neumann) => (&pair.ns, data.clone()),
        (Formulation::FirstKindS, _) => (&pair.s, data.clone()),
        (Formulation::FirstKindN, _) => (&pair.n, data.clone()),
    };
    let (x, iterations, history) = match method {
        Method::DirectLu => (lu_solve(matrix, &rhs)?, 0, Vec::new()),
        Method::Gmres => {
            let out = gmres(|v| matvec(matrix, v), &rhs, tol, max_iter);
            if !out.converged {
                return Err(Error::NonConvergence {
                    iterations: out.iterations,
                    residual: *out.history.last().unwrap_or(&1.0),
                    history: out.history,
                });
            }
            (out.x, out.iterations, out.history)
        }
    };
    let density = CosineSeries::from_e_coefficients(x.clone());
    let physical_density = match (formulation, problem.bc) {
        (Formulation::SecondKindNS, BoundaryCondition::Neumann) => CosineSeries::from_e_coefficients(matvec(&pair.s, &x)),
        _ => density.clone(),
    };
    let boundary_residual = match problem.bc {
        BoundaryCondition::Dirichlet => {
            let sx = matvec(&pair.s, &x);
            let r: Vec<Complex64> = sx.iter().zip(&data).map(|(a, b)| a - b).collect();
            let fnorm = norm0_e(&data);
            Some(if fnorm == 0.0 { norm0_e(&r) } else { norm0_e(&r) / fnorm })
        }
        BoundaryCondition::Neumann => None,
    };
    Ok(SolveResult {
        density,
        physical_density,
        iterations,
        residual_history: history,
        formulation,
        method,
        boundary_residual,
    })
}

/// Kernel of the potential for this boundary condition at target `x` and source parameter `t`.
fn potential_kernel(problem: &ScatteringProblem, x: Vec2, t: f64) -> Complex64 {
    let y = problem.arc.point(t);
    let d = [x[0] - y[0], x[1] - y[1]];
    let r = d[0].hypot(d[1]);
    match problem.bc {
        BoundaryCondition::Dirichlet => green(problem.k, r),
        BoundaryCondition::Neumann => {
            let nrm = problem.arc.normal(t);
            let proj = (d[0] * nrm[0] + d[1] * nrm[1]) / r;
            let [_, j1, _, y1] = bessel01(problem.k * r);
            // dG/dn' = (ik/4) H1(kr) (x - y).n' / r
            Complex64::new(0.0, 0.25 * problem.k) * Complex64::new(j1, y1) * proj
        }
    }
}

/// Midpoint sum over `q` nodes of `kernel(t_j) * density(θ_j) * τ_j * weight_j`.
fn layer_sum<F: Fn(f64) -> Complex64>(problem: &ScatteringProblem, samples: &[Complex64], kernel: F) -> Complex64 {
    let q = samples.len();
    let grid = NodalGrid { n: q };
    let h = PI / q as f64;
    let mut acc = Complex64::from(0.0);
    for (j, &v) in samples.iter().enumerate() {
        let th = grid.node(j);
        let t = th.cos();
        let mut w = problem.arc.speed(t) * h;
        if problem.bc == BoundaryCondition::Neumann {
            w *= th.sin() * th.sin();
        }
        acc += kernel(t) * v * w;
    }
    acc
}

fn synthesize(series: &CosineSeries, q: usize) -> Vec<Complex64> {
    from_coefficients_fast(&series.truncated(series.len().min(q)), &NodalGrid { n: q }).expect("grid covers series")
}

/// Scattered field at `points`.
pub fn evaluate_field(result: &SolveResult, problem: &ScatteringProblem, points: &[Vec2]) -> Result<Vec<Complex64>> {
    let margin = problem.margin();
    let tau_max = problem.arc.max_speed();
    let mut plans = Vec::with_capacity(points.len());
    for &x in points {
        let d = problem.arc.distance_to(x);
        if d <= margin {
            return Err(Error::TooClose {
                x: x[0],
                y: x[1],
                distance: d,
                margin,
            });
        }
        // Midpoint error behaves like exp(-2 q d / τ); aim well past double precision,
        // and resolve the wavelength along the arc.
        let need = (24.0 * tau_max / d).max(4.0 * problem.k * tau_max).ceil() as usize;
        let q = need.max(2 * problem.n).min(1 << 16).next_power_of_two();
        plans.push(q);
    }
    let mut cache: HashMap<usize, Vec<Complex64>> = HashMap::new();
    let mut out = Vec::with_capacity(points.len());
    for (&x, &q) in points.iter().zip(&plans) {
        let samples = cache
            .entry(q)
            .or_insert_with(|| synthesize(&result.physical_density, q));
        out.push(layer_sum(problem, samples, |t| potential_kernel(problem, x, t)));
    }
    Ok(out)
}

/// Far-field pattern `u∞(x̂)` with `u(R x̂) ≈ e^{ikR} / √R · u∞(x̂)`.
pub fn far_field(result: &SolveResult, problem: &ScatteringProblem, angles: &[f64]) -> Vec<Complex64> {
    let k = problem.k;
    let tau_max = problem.arc.max_speed();
    let q = (2 * problem.n).max((8.0 * k * tau_max) as usize + 64);
    let samples = synthesize(&result.physical_density, q);
    let pref = Complex64::from_polar(1.0, PI / 4.0) / (8.0 * PI * k).sqrt();
    angles
        .iter()
        .map(|&a| {
            let xh = [a.cos(), a.sin()];
            let sum = layer_sum(problem, &samples, |t| {
                let y = problem.arc.point(t);
                let phase = Complex64::from_polar(1.0, -k * (xh[0] * y[0] + xh[1] * y[1]));
                match problem.bc {
                    BoundaryCondition::Dirichlet => phase,
                    BoundaryCondition::Neumann => {
                        let nrm = problem.arc.normal(t);
                        Complex64::new(0.0, -k * (xh[0] * nrm[0] + xh[1] * nrm[1])) * phase
                    }
                }
            });
            pref * sum
        })
        .collect()
}
