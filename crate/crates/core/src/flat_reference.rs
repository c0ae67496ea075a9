//! Closed forms and quadrature references for the unweighted flat arc `[-1, 1]`:
//! `S0[1]`, `N0[1]`, the split of `N0 S0[1]`, and the Fourier decay of `S0[1]`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_pieces, principal_value};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// `(1 - x) ln(1 - x)`, zero at `x = 1`.
fn xlogx_left(x: f64) -> f64 {
    let y = 1.0 - x;
    if y == 0.0 {
        0.0
    } else {
        y * y.ln()
    }
}

/// `S0[1](x) = (2 - (1-x) ln(1-x) - (1+x) ln(1+x)) / 2π`, continuous up to `|x| = 1`.
pub fn s0_of_one(x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain {
            what: "flat-arc point",
            value: x,
        });
    }
    Ok((2.0 - xlogx_left(x) - xlogx_left(-x)) / (2.0 * PI))
}

/// `N0[1](x) = -1 / (π (1 - x²))`.
pub fn n0_of_one(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            what: "flat-arc point",
            value: x,
        });
    }
    Ok(-1.0 / (PI * (1.0 - x * x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NsOfOne {
    pub value: f64,
    /// `(ln2 - 1) / (π² (1 - x²))`.
    pub singular_part: f64,
    pub remainder: f64,
}

/// `N0 S0[1](x)` through `S0[1] = 1/π - g/2π` with `g = (1-x)ln(1-x) + (1+x)ln(1+x)`,
/// where `N0[g]` reduces to an edge term plus a principal value of `ln((1-s)/(1+s))`.
pub fn ns_of_one(x: f64) -> Result<NsOfOne> {
    let n1 = n0_of_one(x)?;
    let w = 1.0 - x * x;
    let pv = principal_value(|s| ((1.0 - s) / (1.0 + s)).ln(), x, -1.0, 1.0, 1e-12)?;
    let n0g = -2.0 * LN_2 / (PI * w) - pv / (2.0 * PI);
    let value = n1 / PI - n0g / (2.0 * PI);
    let singular_part = (LN_2 - 1.0) / (PI * PI * w);
    Ok(NsOfOne {
        value,
        singular_part,
        remainder: value - singular_part,
    })
}

/// Real transform `∫ e^{-iξx} S0[1](x) dx = 2 ∫_0^1 cos(ξx) S0[1](x) dx` (the function is even).
pub fn s0_one_transform(xi: f64) -> Result<f64> {
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::Domain {
            what: "frequency",
            value: xi,
        });
    }
    // Panels no wider than a quarter period keep each piece smooth and cheap.
    let width = if xi > 0.0 { (0.5 * PI / xi).min(0.25) } else { 0.25 };
    let panels = (1.0 / width).ceil() as usize;
    let points: Vec<f64> = (0..=panels).map(|i| i as f64 / panels as f64).collect();
    let f = |x: f64| (xi * x).cos() * s0_of_one(x).unwrap_or(0.0);
    Ok(2.0 * integrate_pieces(f, &points, 1e-13)?)
}

/// `|∫ e^{-iξx} S0[1](x) dx|²` on each grid frequency.
pub fn fourier_decay_s0_one(xi_grid: &[f64]) -> Result<Vec<f64>> {
    xi_grid
        .par_iter()
        .map(|&xi| s0_one_transform(xi).map(|v| v * v))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub centers: Vec<f64>,
    /// Largest `|F|²` over `[ξ_c, ξ_c + π]` for each centre.
    pub envelope: Vec<f64>,
    /// Least-squares slope of `ln envelope` against `ln ξ`.
    pub slope: f64,
}

/// Envelope of the squared transform at `count` log-spaced centres in `[lo, hi]`, with its power-law fit.
pub fn fourier_envelope(lo: f64, hi: f64, count: usize) -> Result<EnvelopeFit> {
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(Error::Precondition("envelope needs 0 < lo < hi and two centres".into()));
    }
    let per_window = 24;
    let centers: Vec<f64> = (0..count)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (count - 1) as f64).exp())
        .collect();
    let mut grid = Vec::with_capacity(count * per_window);
    for &c in &centers {
        for j in 0..per_window {
            grid.push(c + PI * j as f64 / (per_window - 1) as f64);
        }
    }
    let values = fourier_decay_s0_one(&grid)?;
    let envelope: Vec<f64> = values
        .chunks(per_window)
        .map(|w| w.iter().copied().fold(0.0, f64::max))
        .collect();
    let slope = log_log_slope(&centers, &envelope);
    Ok(EnvelopeFit {
        centers,
        envelope,
        slope,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).map(|(a, b)| (a.ln(), b.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{flat_unweighted, FlatKind};

    #[test]
    fn closed_form_values() {
        assert!((s0_of_one(0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        let edge = (2.0 - 2.0 * LN_2) / (2.0 * PI);
        assert!((s0_of_one(1.0).unwrap() - edge).abs() < 1e-15);
        assert!((s0_of_one(-1.0).unwrap() - edge).abs() < 1e-15);
        assert!((s0_of_one(1.0 - 1e-12).unwrap() - edge).abs() < 1e-9);
        assert!(s0_of_one(1.5).is_err());
        assert!((n0_of_one(0.0).unwrap() + 1.0 / PI).abs() < 1e-15);
        assert!((n0_of_one(0.5).unwrap() + 4.0 / (3.0 * PI)).abs() < 1e-15);
        assert_eq!(n0_of_one(0.3).unwrap(), n0_of_one(-0.3).unwrap());
        assert!(n0_of_one(1.0).is_err());
    }

    #[test]
    fn quadrature_reproduces_closed_form() {
        for i in 0..20 {
            let x = -0.95 + 1.9 * i as f64 / 19.0;
            let q = flat_unweighted(FlatKind::S0Param, |_| 1.0, x).unwrap();
            assert!((q - s0_of_one(x).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn edge_asymptotics_of_ns() {
        let r = ns_of_one(0.9999).unwrap();
        let scaled = r.value * (1.0 - 0.9999f64.powi(2));
        let want = (LN_2 - 1.0) / (PI * PI);
        assert!((scaled / want - 1.0).abs() < 0.02);
        let r = ns_of_one(0.999).unwrap();
        assert!(r.remainder.abs() / r.singular_part.abs() < 0.1);
        for x in [0.3, 0.9, 0.99] {
            let a = ns_of_one(x).unwrap().value;
            let b = ns_of_one(-x).unwrap().value;
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn transform_at_zero_is_the_mean() {
        // ∫ S0[1] = (4 - 2 * (2 ln 2 - 1)) / 2π: the integral of (1-x)ln(1-x) over [-1,1] is 2ln2 - 1.
        let want = (4.0 - 2.0 * (2.0 * LN_2 - 1.0)) / (2.0 * PI);
        assert!((s0_one_transform(0.0).unwrap() - want).abs() < 1e-12);
    }
}
