//! Exact coefficient-space matrices of the zero-frequency flat-arc operators.
//!
//! Every matrix acts on `e_n = cos(n theta)` coefficients. Builders come in a
//! rectangular form (`rows x cols`) so products such as `D0 S0 T0` can carry the
//! extra mode produced by `T0` and stay exact; the square `N x N` versions drop
//! what falls outside and say so through [`OperatorMatrix::band_loss`].

pub mod spectrum;

use crate::cosine::{analysis_matrix, synthesis_matrix, CosineSeries, NodalGrid};
use crate::error::{Error, Result};
use crate::geometry::Arc;
use crate::linalg::{self, CMat};
use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

pub use spectrum::{
    eigenfunction_coefficients, lambda_infinity, lambda_s_membership, EigenCoefficients,
    Membership, SpectrumPoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub entries: CMat,
    /// Sobolev index of the domain relative to the codomain's reference.
    pub domain_offset: i32,
    pub codomain_offset: i32,
    /// Set when truncation dropped coefficients the exact operator produces.
    pub band_loss: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauKind {
    S0tau,
    N0tau,
    J0tau,
}

impl OperatorMatrix {
    pub fn new(entries: CMat, domain_offset: i32, codomain_offset: i32) -> Self {
        OperatorMatrix {
            entries,
            domain_offset,
            codomain_offset,
            band_loss: false,
        }
    }

    pub fn identity(n: usize) -> Self {
        OperatorMatrix::new(linalg::identity(n), 0, 0)
    }

    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    /// Net change in smoothness index.
    pub fn order(&self) -> i32 {
        self.codomain_offset - self.domain_offset
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries * &rhs.entries,
            domain_offset: 0,
            codomain_offset: self.order() + rhs.order(),
            band_loss: self.band_loss || rhs.band_loss,
        }
    }

    pub fn apply_e(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut x = c.to_vec();
        x.resize(self.ncols(), 0.0.into());
        linalg::matvec(&self.entries, &x)
    }

    /// Applies the operator to a series, padding or truncating it to the column count.
    pub fn apply(&self, series: &CosineSeries) -> CosineSeries {
        CosineSeries::from_e_coefficients(self.apply_e(&series.e_coefficients()))
    }

    pub fn column(&self, n: usize) -> Vec<Complex64> {
        self.entries.col(n).iter().copied().collect()
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        (0..self.ncols()).all(|j| (j + 1..self.nrows()).all(|i| self.entries[(i, j)].norm() <= tol))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.nrows().min(self.ncols()))
            .map(|i| self.entries[(i, i)])
            .collect()
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        linalg::max_abs_diff(&self.entries, &other.entries)
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::from(v)
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!("truncation order {n} below {min}")));
    }
    Ok(())
}

/// Eigenvalue of the flat log operator on `e_n`: `ln2 / 2` for n = 0, `1 / (2n)` otherwise.
pub fn symm_eigenvalue(n: usize) -> f64 {
    if n == 0 {
        0.5 * LN_2
    } else {
        0.5 / n as f64
    }
}

/// `U_{n-1}(cos theta) = sin(n theta) / sin(theta)` as `(mode, coefficient)` pairs.
fn chebyshev_u(n: usize) -> Vec<(usize, f64)> {
    debug_assert!(n >= 1);
    let d = n - 1;
    if d.is_multiple_of(2) {
        (0..=d / 2).map(|k| (2 * k, if k == 0 { 1.0 } else { 2.0 })).collect()
    } else {
        (0..=d / 2).map(|k| (2 * k + 1, 2.0)).collect()
    }
}

pub fn symm_rect(rows: usize, cols: usize) -> CMat {
    Mat::from_fn(rows, cols, |i, j| if i == j { real(symm_eigenvalue(j)) } else { real(0.0) })
}

pub fn symm_inverse_rect(rows: usize, cols: usize) -> CMat {
    Mat::from_fn(rows, cols, |i, j| if i == j { real(1.0 / symm_eigenvalue(j)) } else { real(0.0) })
}

/// `T0[e_n] = (1+n)/2 e_{n+1} + (1-n)/2 e_{n-1}`, with `T0[e_0] = e_1`.
pub fn t0_rect(rows: usize, cols: usize) -> CMat {
    let mut m = Mat::zeros(rows, cols);
    for n in 0..cols {
        let up = if n == 0 { 1.0 } else { 0.5 * (1.0 + n as f64) };
        if n + 1 < rows {
            m[(n + 1, n)] = real(up);
        }
        if n >= 1 && n - 1 < rows {
            m[(n - 1, n)] = real(0.5 * (1.0 - n as f64));
        }
    }
    m
}

/// `D0[e_n] = -n sin(n theta) / sin(theta)`.
pub fn d0_rect(rows: usize, cols: usize) -> CMat {
    let mut m = Mat::zeros(rows, cols);
    for n in 1..cols {
        for (k, c) in chebyshev_u(n) {
            if k < rows {
                m[(k, n)] = real(-(n as f64) * c);
            }
        }
    }
    m
}

/// `C[e_n] = sin(n theta) / (n sin(theta))`, `C[e_0] = 0`.
pub fn cesaro_rect(rows: usize, cols: usize) -> CMat {
    let mut m = Mat::zeros(rows, cols);
    for n in 1..cols {
        for (k, c) in chebyshev_u(n) {
            if k < rows {
                m[(k, n)] = real(c / n as f64);
            }
        }
    }
    m
}

/// Multiplication by `cos(theta)`: `e_0 -> e_1`, `e_n -> (e_{n-1} + e_{n+1}) / 2`.
pub fn cos_shift(c: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![real(0.0); c.len() + 1];
    for (n, &v) in c.iter().enumerate() {
        if n == 0 {
            out[1] += v;
        } else {
            out[n - 1] += 0.5 * v;
            out[n + 1] += 0.5 * v;
        }
    }
    out
}

pub fn symm_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    Ok(OperatorMatrix::new(symm_rect(n, n), 0, 1))
}

pub fn symm_inverse(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    Ok(OperatorMatrix::new(symm_inverse_rect(n, n), 1, 0))
}

pub fn t0_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    let mut op = OperatorMatrix::new(t0_rect(n, n), 1, 0);
    op.band_loss = true;
    Ok(op)
}

pub fn d0_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    Ok(OperatorMatrix::new(d0_rect(n, n), 1, 0))
}

pub fn cesaro_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    Ok(OperatorMatrix::new(cesaro_rect(n, n), 0, 0))
}

/// The flat hypersingular operator `D0 S0 T0`, exact in every column.
pub fn n0_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    let m = &(&d0_rect(n, n + 1) * &symm_rect(n + 1, n + 1)) * &t0_rect(n + 1, n);
    Ok(OperatorMatrix::new(m, 1, 0))
}

/// Upper-triangular closed form of `J0 = N0 S0`.
pub fn j0_closed_form(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    let mut m = Mat::zeros(n, n);
    for col in 0..n {
        m[(col, col)] = real(lambda_infinity(col));
        let p = col / 2;
        let w = -0.5 / col.max(1) as f64;
        for k in 0..p {
            if col % 2 == 0 {
                m[(2 * k, col)] = real(if k == 0 { 0.5 * w } else { w });
            } else {
                m[(2 * k + 1, col)] = real(w);
            }
        }
    }
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// `J0` as the product `D0 S0 T0 S0`.
pub fn j0_product(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    let m = &n0_matrix(n)?.entries * &symm_rect(n, n);
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// `W0[phi] = -phi/4 - (cos(theta)/4) C[phi] + (1 - ln2)/(4 pi) int_0^pi phi`.
pub fn w0_apply(series: &CosineSeries) -> CosineSeries {
    let c = series.e_coefficients();
    let n = c.len();
    let cc = linalg::matvec(&cesaro_rect(n, n), &c);
    let shifted = cos_shift(&cc);
    let mut out: Vec<Complex64> = (0..n).map(|i| -0.25 * c[i] - 0.25 * shifted[i]).collect();
    if n > 0 {
        // The integral of phi over (0, pi) is pi c_0.
        out[0] += 0.25 * (1.0 - LN_2) * c[0];
    }
    CosineSeries::from_e_coefficients(out)
}

/// Matrix of [`w0_apply`] built column by column.
pub fn w0_matrix(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    let mut m = Mat::zeros(n, n);
    for col in 0..n {
        let out = w0_apply(&CosineSeries::mode(n, col)).e_coefficients();
        for (i, v) in out.into_iter().enumerate() {
            m[(i, col)] = v;
        }
    }
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// `I0 = -4 S0^{-1} C S0 T0`, the inverse of `J0`.
pub fn j0_inverse(n: usize) -> Result<OperatorMatrix> {
    check_order(n, 4)?;
    let right = &symm_rect(n + 1, n + 1) * &t0_rect(n + 1, n);
    let mid = &cesaro_rect(n, n + 1) * &right;
    let mut m = &symm_inverse_rect(n, n) * &mid;
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] *= -4.0;
        }
    }
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// Coefficient matrix of multiplication by `f(theta)` on the `n`-point grid.
pub fn multiplication_matrix<F: Fn(f64) -> Complex64>(n: usize, f: F) -> CMat {
    let grid = NodalGrid { n };
    let syn = synthesis_matrix(n, n);
    let mut scaled = syn.clone();
    for j in 0..n {
        let w = f(grid.node(j));
        for i in 0..n {
            scaled[(j, i)] = syn[(j, i)] * w;
        }
    }
    &analysis_matrix(n, n) * &scaled
}

fn tau_samples(arc: &Arc, n: usize) -> Result<Vec<f64>> {
    let grid = NodalGrid { n };
    let tau: Vec<f64> = grid.parameters().iter().map(|&t| arc.speed(t)).collect();
    if tau.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidArc("non-positive speed at a grid node".into()));
    }
    Ok(tau)
}

/// `Z_l`: multiplication by `cos^l(theta) tau(cos theta)`.
pub fn z_matrix(arc: &Arc, ell: u32, n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    tau_samples(arc, n)?;
    let m = multiplication_matrix(n, |th| real(th.cos().powi(ell as i32) * arc.speed(th.cos())));
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// Multiplication by `1 / tau(cos theta)`, the exact inverse of `Z_0` at this order.
pub fn z0_inverse(arc: &Arc, n: usize) -> Result<OperatorMatrix> {
    check_order(n, 2)?;
    tau_samples(arc, n)?;
    let m = multiplication_matrix(n, |th| real(1.0 / arc.speed(th.cos())));
    Ok(OperatorMatrix::new(m, 0, 0))
}

/// Conjugates a canonical operator by the speed of `arc`.
pub fn tau_conjugated(op: &OperatorMatrix, arc: &Arc, kind: TauKind, n: usize) -> Result<OperatorMatrix> {
    if op.nrows() != n || op.ncols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: op.ncols(),
        });
    }
    let z = z_matrix(arc, 0, n)?;
    let zi = z0_inverse(arc, n)?;
    let mut out = match kind {
        TauKind::S0tau => op.compose(&z),
        TauKind::N0tau => zi.compose(op),
        TauKind::J0tau => zi.compose(op).compose(&z),
    };
    out.domain_offset = op.domain_offset;
    out.codomain_offset = op.codomain_offset;
    Ok(out)
}

/// `J0^tau = Z0^{-1} J0 Z0` at order `n`.
pub fn j0_tau(arc: &Arc, n: usize) -> Result<OperatorMatrix> {
    tau_conjugated(&j0_closed_form(n)?, arc, TauKind::J0tau, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn e(n: usize, m: usize) -> Vec<Complex64> {
        let mut v = vec![real(0.0); n];
        v[m] = real(1.0);
        v
    }

    fn assert_vec(got: &[Complex64], want: &[(usize, f64)], tol: f64) {
        let mut full = vec![0.0; got.len()];
        for &(i, v) in want {
            full[i] = v;
        }
        for (i, (g, w)) in got.iter().zip(&full).enumerate() {
            assert!((g - w).norm() < tol, "mode {i}: {g} vs {w}");
        }
    }

    #[test]
    fn symm_examples() {
        let s = symm_matrix(8).unwrap();
        assert_vec(&s.apply_e(&e(8, 0)), &[(0, 0.34657359027997264)], 1e-15);
        assert_vec(&s.apply_e(&e(8, 4)), &[(4, 0.125)], 1e-16);
        let id = symm_inverse(8).unwrap().compose(&s);
        assert!(id.max_abs_diff(&OperatorMatrix::identity(8)) < 1e-14);
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn t0_examples() {
        let t = t0_matrix(8).unwrap();
        assert_vec(&t.apply_e(&e(8, 0)), &[(1, 1.0)], 0.0 + 1e-16);
        assert_vec(&t.apply_e(&e(8, 1)), &[(2, 1.0)], 1e-16);
        assert_vec(&t.apply_e(&e(8, 2)), &[(3, 1.5), (1, -0.5)], 1e-16);
        assert!(t.band_loss);
    }

    #[test]
    fn d0_examples() {
        let d = d0_matrix(8).unwrap();
        assert_vec(&d.apply_e(&e(8, 0)), &[], 1e-16);
        assert_vec(&d.apply_e(&e(8, 2)), &[(1, -4.0)], 1e-15);
        assert_vec(&d.apply_e(&e(8, 3)), &[(0, -3.0), (2, -6.0)], 1e-15);
    }

    #[test]
    fn cesaro_examples() {
        let c = cesaro_matrix(8).unwrap();
        assert_vec(&c.apply_e(&e(8, 0)), &[], 1e-16);
        assert_vec(&c.apply_e(&e(8, 1)), &[(0, 1.0)], 1e-16);
        assert_vec(&c.apply_e(&e(8, 2)), &[(1, 1.0)], 1e-16);
    }

    #[test]
    fn d0_and_cesaro_match_nodal_formulas() {
        let n = 24;
        let grid = NodalGrid { n };
        let syn = synthesis_matrix(n, n);
        let (d, c) = (d0_rect(n, n), cesaro_rect(n, n));
        for m in 1..n {
            for (j, th) in grid.nodes().into_iter().enumerate() {
                let ratio = (m as f64 * th).sin() / th.sin();
                let dv: Complex64 = (0..n).map(|k| syn[(j, k)] * d[(k, m)]).sum();
                let cv: Complex64 = (0..n).map(|k| syn[(j, k)] * c[(k, m)]).sum();
                assert!((dv + m as f64 * ratio).norm() < 1e-11);
                assert!((cv - ratio / m as f64).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn j0_examples() {
        let j = j0_closed_form(8).unwrap();
        assert_vec(&j.apply_e(&e(8, 0)), &[(0, -0.17328679513998632)], 1e-16);
        assert_vec(&j.apply_e(&e(8, 1)), &[(1, -0.5)], 1e-16);
        assert_vec(&j.apply_e(&e(8, 2)), &[(0, -0.125), (2, -0.375)], 1e-16);
        assert!(j.is_upper_triangular(0.0));
    }

    #[test]
    fn w0_examples() {
        let w = w0_apply(&CosineSeries::mode(6, 0)).e_coefficients();
        assert_vec(&w, &[(0, -LN_2 / 4.0)], 1e-16);
        let w = w0_apply(&CosineSeries::mode(6, 1)).e_coefficients();
        assert_vec(&w, &[(1, -0.5)], 1e-16);
    }

    #[test]
    fn three_forms_of_j0_agree() {
        let n = 64;
        let a = j0_product(n).unwrap();
        let b = j0_closed_form(n).unwrap();
        let c = w0_matrix(n).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13);
        assert!(b.max_abs_diff(&c) < 1e-13);
    }

    #[test]
    fn composition_identities() {
        let n = 40;
        let t = t0_rect(n + 1, n);
        let ct = &cesaro_rect(n, n + 1) * &t;
        assert!(linalg::max_abs_diff(&ct, &linalg::identity(n)) < 1e-13);
        let tc = &t0_rect(n, n) * &cesaro_rect(n, n);
        for col in 0..n - 2 {
            for row in 0..n {
                let want = if row == col && col > 0 { 1.0 } else { 0.0 };
                assert!((tc[(row, col)] - want).norm() < 1e-13);
            }
        }
        let sinv2 = &symm_inverse_rect(n, n) * &symm_inverse_rect(n, n);
        let mut rhs = &cesaro_rect(n, n) * &sinv2;
        for j in 0..n {
            for i in 0..n {
                rhs[(i, j)] *= -0.25;
            }
        }
        assert!(linalg::max_abs_diff(&rhs, &d0_rect(n, n)) < 1e-11);
    }

    #[test]
    fn inverse_identities() {
        let n = 32;
        let inv = j0_inverse(n).unwrap();
        let j = j0_closed_form(n).unwrap();
        let id = OperatorMatrix::identity(n);
        assert!(inv.compose(&j).max_abs_diff(&id) < 1e-12);
        assert!(j.compose(&inv).max_abs_diff(&id) < 1e-12);
        let e5 = inv.apply_e(&j.apply_e(&e(n, 5)));
        assert_vec(&e5, &[(5, 1.0)], 1e-12);
    }

    #[test]
    fn flat_tau_conjugation_is_trivial() {
        let n = 16;
        let j = j0_closed_form(n).unwrap();
        let jt = j0_tau(&Arc::unit_flat(), n).unwrap();
        assert!(jt.max_abs_diff(&j) < 1e-14);
    }

    #[test]
    fn tau_conjugation_is_a_similarity() {
        let n = 32;
        let arc = Arc::perturbed(0.2, 2).unwrap();
        let j = j0_closed_form(n).unwrap();
        let jt = j0_tau(&arc, n).unwrap();
        let zi = z0_inverse(&arc, n).unwrap();
        assert!(jt.compose(&zi).max_abs_diff(&zi.compose(&j)) < 1e-12);
        let z = z_matrix(&arc, 0, n).unwrap();
        assert!(zi.compose(&z).max_abs_diff(&OperatorMatrix::identity(n)) < 1e-12);
    }

    #[test]
    fn z_ell_multiplies_by_powers_of_cos() {
        let n = 16;
        let flat = Arc::unit_flat();
        let z1 = z_matrix(&flat, 1, n).unwrap();
        assert_vec(&z1.apply_e(&e(n, 3)), &[(2, 0.5), (4, 0.5)], 1e-14);
        let half = Arc::circular(1.0, PI).unwrap();
        let z0 = z_matrix(&half, 0, n).unwrap();
        assert_vec(&z0.apply_e(&e(n, 0)), &[(0, PI / 2.0)], 1e-14);
    }

    #[test]
    fn small_orders_rejected() {
        assert!(symm_matrix(1).is_err());
        assert!(j0_inverse(3).is_err());
    }
}
