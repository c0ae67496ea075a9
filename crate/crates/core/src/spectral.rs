//! Eigenvalue and singular-value reports for truncated operators, and the
//! numerical check of `ÑS̃ = J̃₀^τ + K̃`.

use crate::canonical::{j0_tau, OperatorMatrix};
use crate::error::{Error, Result};
use crate::geometry::Arc;
use crate::kernel::calderon_pair;
use crate::linalg::{eigen_pairs, max_abs, singular_values, CMat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Accumulation point of the spectra.
pub const CLUSTER_POINT: f64 = -0.25;

/// Quantile levels reported in [`SpectrumReport::cluster_radius_quantiles`].
pub const QUANTILE_LEVELS: [f64; 5] = [0.5, 0.8, 0.9, 0.95, 1.0];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kind: String,
    pub k: f64,
    pub n: usize,
    /// Sorted by increasing modulus, ties by argument.
    pub eigenvalues: Vec<Complex64>,
    pub min_abs: f64,
    pub max_abs: f64,
    /// Componentwise median of the eigenvalues.
    pub cluster_center: Complex64,
    /// Distances to `-1/4` at [`QUANTILE_LEVELS`].
    pub cluster_radius_quantiles: Vec<f64>,
    /// `σ_j / σ_0` of the remainder, empty for plain spectra.
    pub singular_value_decay: Vec<f64>,
    /// Smallest `j` with `σ_j < 1e-6 σ_0`, when one exists.
    pub rank_cut: Option<usize>,
    /// Largest entry of the remainder matrix, for remainder reports.
    pub remainder_max_entry: Option<f64>,
}

impl SpectrumReport {
    /// Fraction of eigenvalues within `radius` of `-1/4`.
    pub fn fraction_within(&self, radius: f64) -> f64 {
        if self.eigenvalues.is_empty() {
            return 0.0;
        }
        let c = Complex64::from(CLUSTER_POINT);
        self.eigenvalues.iter().filter(|v| (**v - c).norm() <= radius).count() as f64 / self.eigenvalues.len() as f64
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

fn report_from(kind: &str, k: f64, mut eigenvalues: Vec<Complex64>) -> SpectrumReport {
    eigenvalues.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
    let mods: Vec<f64> = eigenvalues.iter().map(|v| v.norm()).collect();
    let mut dist: Vec<f64> = eigenvalues.iter().map(|v| (v - CLUSTER_POINT).norm()).collect();
    dist.sort_by(|a, b| a.total_cmp(b));
    SpectrumReport {
        kind: kind.to_string(),
        k,
        n: eigenvalues.len(),
        min_abs: mods.iter().copied().fold(f64::INFINITY, f64::min),
        max_abs: mods.iter().copied().fold(0.0, f64::max),
        cluster_center: Complex64::new(
            median(eigenvalues.iter().map(|v| v.re).collect()),
            median(eigenvalues.iter().map(|v| v.im).collect()),
        ),
        cluster_radius_quantiles: QUANTILE_LEVELS.iter().map(|&q| quantile(&dist, q)).collect(),
        eigenvalues,
        singular_value_decay: Vec::new(),
        rank_cut: None,
        remainder_max_entry: None,
    }
}

/// Eigenvalues of a dense matrix, with residuals of sampled pairs checked.
pub fn eigen_report(a: &CMat, kind: &str, k: f64) -> Result<SpectrumReport> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.ncols(),
        });
    }
    if n > 4096 {
        return Err(Error::Precondition(format!("dense eigensolve limited to 4096, got {n}")));
    }
    let (values, vectors) = eigen_pairs(a)?;
    let scale = max_abs(a) * n as f64;
    let step = (n / 8).max(1);
    for p in (0..n).step_by(step) {
        let v: Vec<Complex64> = (0..n).map(|i| vectors[(i, p)]).collect();
        let av = crate::linalg::matvec(a, &v);
        let res = av
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - values[p] * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let vn = crate::linalg::norm2(&v);
        if res > 1e-10 * scale.max(1e-300) * vn {
            return Err(Error::LinearAlgebra(format!(
                "eigenpair {p} residual {res:.3e} exceeds backward-stability bound"
            )));
        }
    }
    Ok(report_from(kind, k, values))
}

/// Eigenvalue report of a canonical or assembled operator matrix.
pub fn spectrum(op: &OperatorMatrix) -> Result<SpectrumReport> {
    eigen_report(&op.entries, "operator", 0.0)
}

/// Spectrum of `ÑS̃` on `arc` at wavenumber `k`.
pub fn calderon_spectrum(arc: &Arc, k: f64, n: usize) -> Result<SpectrumReport> {
    let pair = calderon_pair(arc, k, n, n)?;
    eigen_report(&pair.ns, "NS", k)
}

/// `K̃ = ÑS̃ - J̃₀^τ`: spectrum of `ÑS̃` plus the singular values of `K̃`.
pub fn calderon_remainder(arc: &Arc, k: f64, n: usize) -> Result<SpectrumReport> {
    let (report, _) = calderon_remainder_matrices(arc, k, n)?;
    Ok(report)
}

/// As [`calderon_remainder`], also returning `(ÑS̃, K̃)`.
pub fn calderon_remainder_matrices(arc: &Arc, k: f64, n: usize) -> Result<(SpectrumReport, (CMat, CMat))> {
    let pair = calderon_pair(arc, k, n, n)?;
    let j = j0_tau(arc, n)?;
    let rem = &pair.ns - &j.entries;
    let mut report = eigen_report(&pair.ns, "NS_remainder", k)?;
    let sv = singular_values(&rem)?;
    let s0 = sv.first().copied().unwrap_or(0.0);
    report.singular_value_decay = if s0 > 0.0 { sv.iter().map(|s| s / s0).collect() } else { vec![0.0; sv.len()] };
    report.rank_cut = report.singular_value_decay.iter().position(|&r| r < 1e-6);
    report.remainder_max_entry = Some(max_abs(&rem));
    Ok((report, (pair.ns, rem)))
}

/// `‖K̃ e_n‖ / ‖ÑS̃ e_n‖` for each column `n` in `range`.
pub fn remainder_column_ratios(ns: &CMat, rem: &CMat, range: std::ops::Range<usize>) -> Vec<f64> {
    let col = |a: &CMat, j: usize| a.col(j).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    range.map(|j| col(rem, j) / col(ns, j)).collect()
}
