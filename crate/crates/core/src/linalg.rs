//! Thin helpers over faer's dense kernels, plus a full GMRES.

use crate::error::{Error, Result};
use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;

pub type CMat = Mat<Complex64>;

pub fn identity(n: usize) -> CMat {
    Mat::from_fn(n, n, |i, j| if i == j { 1.0.into() } else { 0.0.into() })
}

pub fn matvec(a: &CMat, x: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.ncols(), x.len());
    let mut y = vec![Complex64::from(0.0); a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == Complex64::from(0.0) {
            continue;
        }
        for (yi, &aij) in y.iter_mut().zip(a.col(j).iter()) {
            *yi += aij * xj;
        }
    }
    y
}

pub fn max_abs(a: &CMat) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for v in a.col(j).iter() {
            m = m.max(v.norm());
        }
    }
    m
}

/// Largest entrywise deviation over the leading `rows x cols` block.
pub fn max_abs_diff_block(a: &CMat, b: &CMat, rows: usize, cols: usize) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..cols {
        for i in 0..rows {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    max_abs_diff_block(a, b, a.nrows(), a.ncols())
}

pub fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn check_finite(a: &CMat) -> Result<()> {
    for j in 0..a.ncols() {
        if a.col(j).iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::LinearAlgebra("matrix has non-finite entries".into()));
        }
    }
    Ok(())
}

/// Dense LU solve with partial pivoting.
pub fn lu_solve(a: &CMat, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    check_finite(a)?;
    let lu = a.partial_piv_lu();
    let mut rhs = Mat::from_fn(b.len(), 1, |i, _| b[i]);
    lu.solve_in_place(&mut rhs);
    let x: Vec<Complex64> = (0..b.len()).map(|i| rhs[(i, 0)]).collect();
    if x.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::LinearAlgebra("singular system".into()));
    }
    Ok(x)
}

pub fn eigenvalues(a: &CMat) -> Result<Vec<Complex64>> {
    check_finite(a)?;
    a.eigenvalues()
        .map_err(|e| Error::LinearAlgebra(format!("eigensolver: {e:?}")))
}

/// Eigenvalues with unit eigenvectors stored as columns.
pub fn eigen_pairs(a: &CMat) -> Result<(Vec<Complex64>, CMat)> {
    check_finite(a)?;
    let evd = a
        .eigen()
        .map_err(|e| Error::LinearAlgebra(format!("eigensolver: {e:?}")))?;
    let n = a.nrows();
    let values = (0..n).map(|i| evd.S()[i]).collect();
    Ok((values, evd.U().to_owned()))
}

/// Singular values in non-increasing order.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    check_finite(a)?;
    a.singular_values()
        .map_err(|e| Error::LinearAlgebra(format!("svd: {e:?}")))
}

#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<Complex64>,
    pub iterations: usize,
    /// Relative residuals, starting with 1 for the zero initial guess.
    pub history: Vec<f64>,
    pub converged: bool,
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if a.norm() == 0.0 {
        return (0.0, Complex64::from(1.0));
    }
    let rho = a.norm().hypot(b.norm());
    let phase = a / a.norm();
    (a.norm() / rho, phase * b.conj() / rho)
}

/// Full (unrestarted) GMRES with modified Gram-Schmidt, zero initial guess.
pub fn gmres<F>(op: F, b: &[Complex64], tol: f64, max_iter: usize) -> GmresOutcome
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let n = b.len();
    let beta = norm2(b);
    if beta == 0.0 {
        return GmresOutcome {
            x: vec![0.0.into(); n],
            iterations: 0,
            history: vec![0.0],
            converged: true,
        };
    }
    let zero = Complex64::from(0.0);
    let mut basis: Vec<Vec<Complex64>> = vec![b.iter().map(|v| v / beta).collect()];
    // Columns of the rotated Hessenberg matrix.
    let mut r: Vec<Vec<Complex64>> = Vec::new();
    let mut rot: Vec<(f64, Complex64)> = Vec::new();
    let mut g = vec![Complex64::from(beta)];
    let mut history = vec![1.0];
    let mut converged = false;
    let limit = max_iter.min(n);
    for j in 0..limit {
        let mut w = op(&basis[j]);
        let mut h = vec![zero; j + 2];
        for (i, v) in basis.iter().enumerate() {
            let hij: Complex64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (wk, vk) in w.iter_mut().zip(v) {
                *wk -= hij * vk;
            }
            h[i] = hij;
        }
        let hn = norm2(&w);
        h[j + 1] = hn.into();
        for (i, &(c, s)) in rot.iter().enumerate() {
            let (a, bb) = (h[i], h[i + 1]);
            h[i] = c * a + s * bb;
            h[i + 1] = -s.conj() * a + c * bb;
        }
        let (c, s) = givens(h[j], h[j + 1]);
        let (a, bb) = (h[j], h[j + 1]);
        h[j] = c * a + s * bb;
        h[j + 1] = zero;
        rot.push((c, s));
        let gj = g[j];
        g[j] = c * gj;
        g.push(-s.conj() * gj);
        r.push(h);
        let rel = g[j + 1].norm() / beta;
        history.push(rel);
        if rel <= tol || hn <= 1e-14 * beta {
            converged = rel <= tol || hn <= 1e-14 * beta;
            break;
        }
        basis.push(w.iter().map(|v| v / hn).collect());
    }
    let m = r.len();
    let mut y = vec![zero; m];
    for i in (0..m).rev() {
        let mut acc = g[i];
        for k in i + 1..m {
            acc -= r[k][i] * y[k];
        }
        y[i] = acc / r[i][i];
    }
    let mut x = vec![zero; n];
    for (yk, v) in y.iter().zip(&basis) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += yk * vi;
        }
    }
    GmresOutcome {
        x,
        iterations: m,
        history,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> CMat {
        Mat::from_fn(n, n, |i, j| {
            let d = if i == j { 3.0 } else { 0.0 };
            Complex64::new(d + ((i * 7 + j * 3) % 5) as f64 * 0.1, ((i + 2 * j) % 3) as f64 * 0.05)
        })
    }

    #[test]
    fn gmres_matches_lu() {
        let a = sample(30);
        let b: Vec<Complex64> = (0..30).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let direct = lu_solve(&a, &b).unwrap();
        let out = gmres(|x| matvec(&a, x), &b, 1e-12, 100);
        assert!(out.converged);
        let diff: Vec<Complex64> = out.x.iter().zip(&direct).map(|(a, b)| a - b).collect();
        assert!(norm2(&diff) < 1e-10 * norm2(&direct));
        assert!(out.history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn gmres_zero_rhs() {
        let a = sample(5);
        let out = gmres(|x| matvec(&a, x), &[0.0.into(); 5], 1e-10, 10);
        assert_eq!(out.iterations, 0);
        assert!(out.x.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn gmres_reports_stall() {
        let a = sample(40);
        let b = vec![Complex64::from(1.0); 40];
        let out = gmres(|x| matvec(&a, x), &b, 1e-30, 3);
        assert!(!out.converged);
        assert_eq!(out.iterations, 3);
    }

    #[test]
    fn eigen_pairs_satisfy_residual() {
        let a = sample(12);
        let (vals, vecs) = eigen_pairs(&a).unwrap();
        for (k, lam) in vals.iter().enumerate() {
            let v: Vec<Complex64> = (0..12).map(|i| vecs[(i, k)]).collect();
            let av = matvec(&a, &v);
            let res: f64 = av.iter().zip(&v).map(|(x, y)| (x - lam * y).norm_sqr()).sum::<f64>().sqrt();
            assert!(res < 1e-12 * max_abs(&a) * 12.0);
        }
    }
}
