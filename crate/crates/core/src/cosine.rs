//! Even cosine series and their samples on the interior grid
//! `theta_j = pi (2j + 1) / (2N)`.
//!
//! A [`CosineSeries`] stores `a_m` with `v = a_0 / 2 + sum a_m cos(m theta)`.
//! Operator matrices act instead on the coefficients of `e_n = cos(n theta)`,
//! which differ only in the constant term (`c_0 = a_0 / 2`).

use crate::error::{Error, Result};
use crate::linalg::CMat;
use faer::Mat;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosineSeries {
    pub coefficients: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodalGrid {
    pub n: usize,
}

impl NodalGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("grid needs at least one node".into()));
        }
        Ok(NodalGrid { n })
    }

    pub fn node(&self, j: usize) -> f64 {
        PI * (2 * j + 1) as f64 / (2 * self.n) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// `cos(theta_j)`, the matching first-kind Chebyshev points in `t`.
    pub fn parameters(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j).cos()).collect()
    }
}

impl CosineSeries {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        CosineSeries { coefficients }
    }

    pub fn zeros(n: usize) -> Self {
        CosineSeries::new(vec![0.0.into(); n])
    }

    /// The function `cos(m theta)` truncated to `n` coefficients.
    pub fn mode(n: usize, m: usize) -> Self {
        let mut c = vec![Complex64::from(0.0); n];
        c[m] = 1.0.into();
        CosineSeries::from_e_coefficients(c)
    }

    pub fn from_e_coefficients(mut c: Vec<Complex64>) -> Self {
        if let Some(c0) = c.first_mut() {
            *c0 *= 2.0;
        }
        CosineSeries::new(c)
    }

    pub fn e_coefficients(&self) -> Vec<Complex64> {
        let mut c = self.coefficients.clone();
        if let Some(c0) = c.first_mut() {
            *c0 *= 0.5;
        }
        c
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut v = Complex64::from(0.0);
        for (m, a) in self.coefficients.iter().enumerate() {
            v += a * if m == 0 { 0.5 } else { (m as f64 * theta).cos() };
        }
        v
    }

    /// `sqrt(|a_0|^2 + 2 sum m^(2s) |a_m|^2)` over the stored coefficients.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for (m, a) in self.coefficients.iter().enumerate() {
            acc += if m == 0 {
                a.norm_sqr()
            } else {
                2.0 * (m as f64).powf(2.0 * s) * a.norm_sqr()
            };
        }
        acc.sqrt()
    }

    pub fn truncated(&self, n: usize) -> Self {
        let mut c = self.coefficients.clone();
        c.resize(n, 0.0.into());
        CosineSeries::new(c)
    }
}

/// Direct O(N^2) analysis: `a_m = (2/N) sum_j v_j cos(m theta_j)`.
pub fn to_coefficients(samples: &[Complex64]) -> Result<CosineSeries> {
    let n = samples.len();
    let grid = NodalGrid::new(n)?;
    let nodes = grid.nodes();
    let coefficients = (0..n)
        .map(|m| {
            let s: Complex64 = samples
                .iter()
                .zip(&nodes)
                .map(|(v, th)| v * (m as f64 * th).cos())
                .sum();
            s * (2.0 / n as f64)
        })
        .collect();
    Ok(CosineSeries::new(coefficients))
}

/// Direct O(N M) synthesis of any series on any grid.
pub fn from_coefficients(series: &CosineSeries, grid: &NodalGrid) -> Vec<Complex64> {
    grid.nodes().iter().map(|&th| series.eval(th)).collect()
}

/// Analysis through a length-2N FFT of the even extension.
pub fn to_coefficients_fast(samples: &[Complex64]) -> Result<CosineSeries> {
    let n = samples.len();
    NodalGrid::new(n)?;
    let mut buf: Vec<Complex64> = samples.iter().chain(samples.iter().rev()).copied().collect();
    FftPlanner::new().plan_fft_forward(2 * n).process(&mut buf);
    let coefficients = (0..n)
        .map(|m| {
            let phase = Complex64::from_polar(1.0, -PI * m as f64 / (2 * n) as f64);
            phase * buf[m] / n as f64
        })
        .collect();
    Ok(CosineSeries::new(coefficients))
}

/// Synthesis through a length-2N inverse FFT; the series must have at most N terms.
pub fn from_coefficients_fast(series: &CosineSeries, grid: &NodalGrid) -> Result<Vec<Complex64>> {
    let n = grid.n;
    if series.len() > n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: series.len(),
        });
    }
    let mut buf = vec![Complex64::from(0.0); 2 * n];
    for (m, a) in series.coefficients.iter().enumerate() {
        if m == 0 {
            buf[0] = 0.5 * a;
            continue;
        }
        let w = 0.5 * a;
        buf[m] = w * Complex64::from_polar(1.0, PI * m as f64 / (2 * n) as f64);
        buf[2 * n - m] = w * Complex64::from_polar(1.0, -PI * m as f64 / (2 * n) as f64);
    }
    FftPlanner::new().plan_fft_inverse(2 * n).process(&mut buf);
    buf.truncate(n);
    Ok(buf)
}

/// `modes x nodes` matrix taking samples to `e_n` coefficients.
pub fn analysis_matrix(modes: usize, nodes: usize) -> CMat {
    let grid = NodalGrid { n: nodes };
    Mat::from_fn(modes, nodes, |m, j| {
        let w = if m == 0 { 1.0 } else { 2.0 } / nodes as f64;
        Complex64::from(w * (m as f64 * grid.node(j)).cos())
    })
}

/// `nodes x modes` matrix taking `e_n` coefficients to samples.
pub fn synthesis_matrix(nodes: usize, modes: usize) -> CMat {
    let grid = NodalGrid { n: nodes };
    Mat::from_fn(nodes, modes, |j, m| Complex64::from((m as f64 * grid.node(j)).cos()))
}
