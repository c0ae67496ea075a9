//! Coefficient-space matrices of the weighted single-layer and hypersingular
//! operators on a general arc.
//!
//! The integrand kernel is split as `A1 ln|cos θ - cos θ'| + A2`. The log part
//! is integrated exactly against the cosine interpolant of `A1 γ τ` on an
//! oversampled grid of `M` nodes (the flat log operator is diagonal there);
//! the smooth part uses the midpoint rule on the same grid. `Ñ` is built as
//! `Ñ^g + Ñ^pv`, never from the hypersingular kernel directly.

use crate::canonical::{d0_rect, t0_rect, OperatorMatrix};
use crate::cosine::{analysis_matrix, synthesis_matrix, NodalGrid};
use crate::error::{Error, Result};
use crate::geometry::Arc;
use crate::linalg::CMat;
use crate::quadrature;
use crate::special::split_parts;
use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    Stilde,
    Ntilde,
    NgPart,
    NpvPart,
}

#[derive(Debug, Clone)]
pub struct AssembledOperator {
    pub matrix: OperatorMatrix,
    pub arc: Arc,
    pub k: f64,
    pub kind: OperatorKind,
    pub n: usize,
}

/// Rectangular blocks sharing one nodal assembly.
#[derive(Debug, Clone)]
pub struct OperatorBlocks {
    pub s: CMat,
    pub n_g: CMat,
    pub n_pv: CMat,
    /// Number of quadrature nodes used.
    pub nodes: usize,
}

impl OperatorBlocks {
    pub fn n(&self) -> CMat {
        &self.n_g + &self.n_pv
    }
}

fn check_inputs(arc: &Arc, k: f64, n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::Precondition(format!("resolution N = {n} must be at least 8")));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Domain {
            what: "wavenumber",
            value: k,
        });
    }
    arc.validated()?;
    Ok(())
}

/// `Σ_{m=1}^{M-1} cos(m π p / M) / m` for `p = 0..=2M`.
fn harmonic_cos_table(m: usize) -> Vec<f64> {
    (0..=2 * m)
        .into_par_iter()
        .map(|p| {
            let phi = PI * p as f64 / m as f64;
            (1..m).map(|q| (q as f64 * phi).cos() / q as f64).sum()
        })
        .collect()
}

/// Weights `W` with `Σ_j W_ij h(θ_j) = ∫_0^π ln|cos θ_i - cos θ'| h(θ') dθ'`
/// for every cosine polynomial `h` of degree below `m`.
pub fn log_weights(m: usize) -> Vec<f64> {
    let g = harmonic_cos_table(m);
    let mf = m as f64;
    let mut w = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            let diff = g[i.abs_diff(j)];
            let sum = g[i + j + 1];
            w[i * m + j] = -PI * (LN_2 + diff + sum) / mf;
        }
    }
    w
}

struct Nodal {
    s: CMat,
    n_g: CMat,
    inv_tau: Vec<f64>,
}

fn nodal_matrices(arc: &Arc, k: f64, m: usize) -> Nodal {
    let grid = NodalGrid::new(m).expect("positive node count");
    let theta = grid.nodes();
    let t: Vec<f64> = grid.parameters();
    let tau: Vec<f64> = t.iter().map(|&x| arc.speed(x)).collect();
    let normals: Vec<[f64; 2]> = t.iter().map(|&x| arc.normal(x)).collect();
    let w = log_weights(m);
    let h = PI / m as f64;
    let k2 = k * k;
    let rows: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut srow = Vec::with_capacity(m);
            let mut grow = Vec::with_capacity(m);
            for j in 0..m {
                let (a1, a2) = split_parts(arc, k, t[i], t[j]);
                let b = (a1 * w[i * m + j] + a2 * h) * tau[j];
                srow.push(b);
                if k2 == 0.0 {
                    grow.push(Complex64::from(0.0));
                } else {
                    let nn = normals[i][0] * normals[j][0] + normals[i][1] * normals[j][1];
                    let s = theta[j].sin();
                    grow.push(b * (k2 * nn * s * s));
                }
            }
            (srow, grow)
        })
        .collect();
    let s = Mat::from_fn(m, m, |i, j| rows[i].0[j]);
    let n_g = Mat::from_fn(m, m, |i, j| rows[i].1[j]);
    Nodal {
        s,
        n_g,
        inv_tau: tau.iter().map(|v| 1.0 / v).collect(),
    }
}

fn scale_rows(a: &mut CMat, f: &[f64]) {
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            a[(i, j)] *= f[i];
        }
    }
}

/// Default quadrature size for a `rows x cols` block.
pub fn default_nodes(rows: usize, cols: usize) -> usize {
    2 * rows.max(cols) + 2
}

/// Assembles `S̃`, `Ñ^g` and `Ñ^pv` as `rows x cols` blocks on `nodes` quadrature points.
pub fn assemble_blocks(arc: &Arc, k: f64, rows: usize, cols: usize, nodes: usize) -> Result<OperatorBlocks> {
    check_inputs(arc, k, rows.min(cols))?;
    if nodes < rows.max(cols) + 2 {
        return Err(Error::Precondition(format!(
            "{nodes} quadrature nodes cannot resolve {rows} x {cols} blocks"
        )));
    }
    let m = nodes;
    let nodal = nodal_matrices(arc, k, m);
    let f_rows = analysis_matrix(rows, m);
    let syn_cols = synthesis_matrix(m, cols);
    let s = &f_rows * &(&nodal.s * &syn_cols);
    let n_g = &f_rows * &(&nodal.n_g * &syn_cols);

    // T0^tau: nodal values of T0 γ divided by tau.
    let mut x = &synthesis_matrix(m, cols + 1) * &t0_rect(cols + 1, cols);
    scale_rows(&mut x, &nodal.inv_tau);
    let y = &analysis_matrix(m, m) * &(&nodal.s * &x);
    let mut z = &synthesis_matrix(m, m) * &(&d0_rect(m, m) * &y);
    scale_rows(&mut z, &nodal.inv_tau);
    let n_pv = &f_rows * &z;
    Ok(OperatorBlocks { s, n_g, n_pv, nodes: m })
}

fn wrap(matrix: CMat, arc: &Arc, k: f64, kind: OperatorKind, n: usize, offsets: (i32, i32)) -> AssembledOperator {
    AssembledOperator {
        matrix: OperatorMatrix::new(matrix, offsets.0, offsets.1),
        arc: *arc,
        k,
        kind,
        n,
    }
}

/// `S̃` at resolution `n`.
pub fn assemble_s(arc: &Arc, k: f64, n: usize) -> Result<AssembledOperator> {
    check_inputs(arc, k, n)?;
    let b = assemble_blocks(arc, k, n, n, default_nodes(n, n))?;
    Ok(wrap(b.s, arc, k, OperatorKind::Stilde, n, (0, 1)))
}

/// `Ñ = Ñ^g + Ñ^pv` at resolution `n`.
pub fn assemble_n(arc: &Arc, k: f64, n: usize) -> Result<AssembledOperator> {
    let [full, _, _] = assemble_n_parts(arc, k, n)?;
    Ok(full)
}

/// `[Ñ, Ñ^g, Ñ^pv]` at resolution `n`.
pub fn assemble_n_parts(arc: &Arc, k: f64, n: usize) -> Result<[AssembledOperator; 3]> {
    check_inputs(arc, k, n)?;
    let b = assemble_blocks(arc, k, n, n, default_nodes(n, n))?;
    Ok([
        wrap(b.n(), arc, k, OperatorKind::Ntilde, n, (1, 0)),
        wrap(b.n_g, arc, k, OperatorKind::NgPart, n, (1, 0)),
        wrap(b.n_pv, arc, k, OperatorKind::NpvPart, n, (1, 0)),
    ])
}

/// `S̃`, `Ñ` and the product `ÑS̃`, all `n x n`.
///
/// The product is formed through `pad` extra intermediate modes so that the
/// coefficients `S̃` pushes above mode `n` still reach `Ñ`.
#[derive(Debug, Clone)]
pub struct CalderonPair {
    pub s: CMat,
    pub n: CMat,
    pub ns: CMat,
    /// `(n + pad) x n` block of `S̃`.
    pub s_tall: CMat,
    /// `n x (n + pad)` block of `Ñ`.
    pub n_wide: CMat,
}

pub fn calderon_pair(arc: &Arc, k: f64, n: usize, pad: usize) -> Result<CalderonPair> {
    check_inputs(arc, k, n)?;
    let wide = n + pad;
    let b = assemble_blocks(arc, k, wide, wide, default_nodes(wide, wide))?;
    let n_full = b.n();
    let s_tall = b.s.as_ref().submatrix(0, 0, wide, n).to_owned();
    let n_wide = n_full.as_ref().submatrix(0, 0, n, wide).to_owned();
    let ns = &n_wide * &s_tall;
    Ok(CalderonPair {
        s: b.s.as_ref().submatrix(0, 0, n, n).to_owned(),
        n: n_full.as_ref().submatrix(0, 0, n, n).to_owned(),
        ns,
        s_tall,
        n_wide,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlatKind {
    S0Param,
    N0Param,
}

/// Pointwise unweighted flat-arc operators on `[-1, 1]`.
///
/// `S0[φ](x) = -(1/2π) ∫ ln|x - s| φ(s) ds`. `N0 = d²/dx² S0` is evaluated in
/// the integrated-by-parts form
/// `-(1/2π) [φ(1)/(1-x) + φ(-1)/(1+x) + p.v.∫ φ'(s)/(x-s) ds]`,
/// with `φ'` from Richardson-extrapolated central differences.
pub fn flat_unweighted<F: Fn(f64) -> f64>(kind: FlatKind, density: F, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            what: "flat-arc evaluation point",
            value: x,
        });
    }
    let tol = 1e-12;
    match kind {
        FlatKind::S0Param => {
            let v = quadrature::integrate_pieces(|s| (x - s).abs().ln() * density(s), &[-1.0, x, 1.0], tol)?;
            Ok(-v / (2.0 * PI))
        }
        FlatKind::N0Param => {
            let deriv = |s: f64| derivative(&density, s);
            let pv = quadrature::principal_value(deriv, x, -1.0, 1.0, tol)?;
            let edge = density(1.0) / (1.0 - x) + density(-1.0) / (1.0 + x);
            Ok(-(edge - pv) / (2.0 * PI))
        }
    }
}

/// Fourth-order central difference with one Richardson step, step scaled to the edge distance.
fn derivative<F: Fn(f64) -> f64>(f: &F, s: f64) -> f64 {
    let room = 1.0 - s.abs();
    let h = 1e-3 * room.min(0.5) / 2.0;
    let d = |h: f64| (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h);
    let (d1, d2) = (d(h), d(0.5 * h));
    d2 + (d2 - d1) / 15.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{j0_closed_form, n0_matrix, symm_matrix};
    use crate::linalg::{max_abs_diff, max_abs_diff_block};

    #[test]
    fn log_weights_integrate_cosines() {
        let m = 16;
        let w = log_weights(m);
        let grid = NodalGrid::new(m).unwrap();
        for n in 0..m {
            for i in [0, 5, 15] {
                let v: f64 = (0..m).map(|j| w[i * m + j] * (n as f64 * grid.node(j)).cos()).sum();
                let want = if n == 0 {
                    -PI * LN_2
                } else {
                    -PI * (n as f64 * grid.node(i)).cos() / n as f64
                };
                assert!((v - want).abs() < 1e-13, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn flat_static_single_layer_is_symm() {
        let s = assemble_s(&Arc::unit_flat(), 0.0, 32).unwrap();
        assert!(max_abs_diff(&s.matrix.entries, &symm_matrix(32).unwrap().entries) < 1e-12);
    }

    #[test]
    fn flat_static_hypersingular() {
        let [n, ng, npv] = assemble_n_parts(&Arc::unit_flat(), 0.0, 32).unwrap();
        assert!(crate::linalg::max_abs(&ng.matrix.entries) == 0.0);
        assert!(max_abs_diff(&n.matrix.entries, &npv.matrix.entries) == 0.0);
        let exact = n0_matrix(32).unwrap();
        assert!(max_abs_diff_block(&n.matrix.entries, &exact.entries, 32, 30) < 1e-11);
        let e = &n.matrix.entries;
        assert!((e[(1, 1)] + 1.0).norm() < 1e-12);
        assert!((e[(0, 2)] + 0.5).norm() < 1e-12 && (e[(2, 2)] + 1.5).norm() < 1e-12);
        for i in [0, 3, 4] {
            assert!(e[(i, 1)].norm() < 1e-12);
        }
    }

    #[test]
    fn flat_static_calderon_product() {
        let p = calderon_pair(&Arc::unit_flat(), 0.0, 32, 8).unwrap();
        let j = j0_closed_form(32).unwrap();
        assert!(max_abs_diff(&p.ns, &j.entries) < 1e-10);
    }

    #[test]
    fn blocks_share_leading_entries() {
        let arc = Arc::perturbed(0.2, 2).unwrap();
        let small = assemble_blocks(&arc, 3.0, 16, 16, 80).unwrap();
        let big = assemble_blocks(&arc, 3.0, 24, 20, 80).unwrap();
        assert!(max_abs_diff_block(&small.s, &big.s, 16, 16) < 1e-13);
        assert!(max_abs_diff_block(&small.n_pv, &big.n_pv, 16, 16) < 1e-11);
    }

    #[test]
    fn single_layer_is_symmetric_in_the_weighted_form() {
        // Nodal S̃ is B diag(tau) with B symmetric, so the tau-weighted form is symmetric.
        let arc = Arc::perturbed(0.2, 2).unwrap();
        let n = 24;
        let m = default_nodes(n, n);
        let nodal = nodal_matrices(&arc, 4.0, m);
        let grid = NodalGrid::new(m).unwrap();
        let tau: Vec<f64> = grid.parameters().iter().map(|&t| arc.speed(t)).collect();
        let gamma: Vec<Complex64> = (0..m).map(|j| Complex64::from((grid.node(j)).cos().powi(2))).collect();
        let eta: Vec<Complex64> = (0..m).map(|j| Complex64::from(1.0 + 0.5 * grid.node(j).cos())).collect();
        let apply = |v: &[Complex64]| crate::linalg::matvec(&nodal.s, v);
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
            (0..m).map(|j| a[j] * b[j] * tau[j]).sum()
        };
        let lhs = dot(&apply(&gamma), &eta);
        let rhs = dot(&gamma, &apply(&eta));
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm());
    }

    #[test]
    fn unweighted_flat_oracles() {
        let s = flat_unweighted(FlatKind::S0Param, |_| 1.0, 0.0).unwrap();
        assert!((s - 1.0 / PI).abs() < 1e-12);
        let n = flat_unweighted(FlatKind::N0Param, |_| 1.0, 0.0).unwrap();
        assert!((n + 1.0 / PI).abs() < 1e-10);
        for x in [-0.9, -0.3, 0.5, 0.99] {
            let closed = (2.0 - (1.0 - x) * (1.0f64 - x).ln() - (1.0 + x) * (1.0f64 + x).ln()) / (2.0 * PI);
            let v = flat_unweighted(FlatKind::S0Param, |_| 1.0, x).unwrap();
            assert!((v - closed).abs() < 1e-10);
        }
        assert!(flat_unweighted(FlatKind::S0Param, |_| 1.0, 1.0).is_err());
    }
}
