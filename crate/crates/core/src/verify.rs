//! Self-check suite: canonical-operator identities and flat-arc oracles.

use crate::canonical::{
    j0_closed_form, j0_inverse, j0_product, lambda_infinity, n0_matrix, symm_matrix, w0_matrix, OperatorMatrix,
};
use crate::error::Result;
use crate::flat_reference::{fourier_envelope, n0_of_one, ns_of_one, s0_of_one};
use crate::geometry::Arc;
use crate::kernel::{assemble_n, assemble_s, calderon_pair, flat_unweighted, FlatKind};
use crate::linalg::{max_abs_diff, max_abs_diff_block};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, deviation: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            deviation,
            tolerance,
            passed: deviation.is_finite() && deviation <= tolerance,
        }
    }
}

/// Identity checks of the canonical matrices and assembled flat-arc operators at order `n`.
pub fn identity_checks(n: usize) -> Result<Vec<Check>> {
    let flat = Arc::unit_flat();
    let mut out = Vec::new();
    let s = assemble_s(&flat, 0.0, n)?;
    out.push(Check::new(
        "assembled single layer equals the flat log diagonal",
        max_abs_diff(&s.matrix.entries, &symm_matrix(n)?.entries),
        1e-12,
    ));
    let closed = j0_closed_form(n)?;
    let cols = n - 2;
    out.push(Check::new(
        "J0 product equals closed form",
        max_abs_diff_block(&j0_product(n)?.entries, &closed.entries, n, cols),
        1e-12,
    ));
    out.push(Check::new(
        "J0 from W0 equals closed form",
        max_abs_diff_block(&w0_matrix(n)?.entries, &closed.entries, n, cols),
        1e-12,
    ));
    let inv = j0_inverse(n)?;
    let id = OperatorMatrix::identity(n);
    let left = max_abs_diff_block(&inv.compose(&closed).entries, &id.entries, n - 2, n - 2);
    let right = max_abs_diff_block(&closed.compose(&inv).entries, &id.entries, n - 2, n - 2);
    out.push(Check::new("inverse of J0 on both sides", left.max(right), 1e-11));
    let nn = assemble_n(&flat, 0.0, n)?;
    out.push(Check::new(
        "assembled hypersingular equals D0 S0 T0",
        max_abs_diff_block(&nn.matrix.entries, &n0_matrix(n)?.entries, n, cols),
        1e-11,
    ));
    let pair = calderon_pair(&flat, 0.0, n, n)?;
    out.push(Check::new(
        "flat static Calderon remainder vanishes",
        max_abs_diff(&pair.ns, &closed.entries),
        1e-10,
    ));
    let diag = closed.diagonal();
    let dev = diag
        .iter()
        .enumerate()
        .map(|(i, v)| (v - lambda_infinity(i)).norm())
        .fold(0.0, f64::max);
    out.push(Check::new("J0 diagonal equals the discrete spectrum", dev, 1e-12));
    Ok(out)
}

/// Flat-arc closed forms against independent quadrature.
pub fn oracle_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut dev: f64 = 0.0;
    for i in 0..20 {
        let x = -0.95 + 1.9 * i as f64 / 19.0;
        let q = flat_unweighted(FlatKind::S0Param, |_| 1.0, x)?;
        dev = dev.max((q - s0_of_one(x)?).abs());
    }
    out.push(Check::new("S0[1] closed form against quadrature", dev, 1e-8));
    let mut dev: f64 = 0.0;
    for x in [-0.9, -0.5, 0.0, 0.3, 0.7, 0.95] {
        let q = flat_unweighted(FlatKind::N0Param, |_| 1.0, x)?;
        dev = dev.max((q - n0_of_one(x)?).abs());
    }
    out.push(Check::new("N0[1] closed form against quadrature", dev, 1e-6));
    let mut dev: f64 = 0.0;
    for x in [0.0, 0.5, -0.5] {
        let q = flat_unweighted(FlatKind::N0Param, |s| s0_of_one(s).unwrap_or(f64::NAN), x)?;
        dev = dev.max((q - ns_of_one(x)?.value).abs());
    }
    out.push(Check::new("N0 S0[1] along two quadrature paths", dev, 1e-6));
    let x: f64 = 0.9999;
    let scaled = ns_of_one(x)?.value * (1.0 - x * x);
    let want = (LN_2 - 1.0) / (PI * PI);
    out.push(Check::new("edge blow-up coefficient of N0 S0[1]", (scaled / want - 1.0).abs(), 0.02));
    let fit = fourier_envelope(100.0, 1e4, 12)?;
    out.push(Check::new("Fourier envelope exponent of S0[1] minus -2", (fit.slope + 2.0).abs(), 0.3));
    Ok(out)
}
