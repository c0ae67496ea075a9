//! Point spectrum of `J0`: the discrete set `lambda_n` and the open regions `Lambda_s`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// `-ln2 / 4` for n = 0, `-1/4 - 1/(4n)` otherwise.
pub fn lambda_infinity(n: usize) -> f64 {
    if n == 0 {
        -0.25 * LN_2
    } else {
        -0.25 - 0.25 / n as f64
    }
}

/// Open-set test `4s + 2 < -(x + 1/4) / ((x + 1/4)^2 + y^2)` for `lambda = x + iy`.
pub fn lambda_s_membership(lambda: Complex64, s: f64) -> bool {
    let x = lambda.re + 0.25;
    let d = x * x + lambda.im * lambda.im;
    if d == 0.0 {
        return false;
    }
    4.0 * s + 2.0 < -x / d
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Membership {
    DiscreteLambdaInfinity(usize),
    OpenRegionLambdaS,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub lambda: Complex64,
    pub z: Complex64,
    pub membership: Membership,
}

/// Index `n` with `lambda == lambda_infinity(n)` to `tol`, if any.
pub fn lambda_infinity_index(lambda: Complex64, tol: f64) -> Option<usize> {
    if lambda.im.abs() > tol {
        return None;
    }
    if (lambda.re - lambda_infinity(0)).abs() <= tol {
        return Some(0);
    }
    let x = 4.0 * lambda.re + 1.0;
    if x >= 0.0 {
        return None;
    }
    let n = (-1.0 / x).round();
    if (1.0..1e15).contains(&n) && (lambda_infinity(n as usize) - lambda.re).abs() <= tol {
        Some(n as usize)
    } else {
        None
    }
}

impl SpectrumPoint {
    pub fn classify(lambda: Complex64, s: f64) -> Self {
        let membership = if let Some(n) = lambda_infinity_index(lambda, 1e-12) {
            Membership::DiscreteLambdaInfinity(n)
        } else if lambda_s_membership(lambda, s) {
            Membership::OpenRegionLambdaS
        } else {
            Membership::Outside
        };
        SpectrumPoint {
            lambda,
            z: 8.0 * lambda + 2.0,
            membership,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenCoefficients {
    /// `f_0 .. f_{n_max}` in the `e_n` basis.
    pub coefficients: Vec<Complex64>,
    /// Whether the series fixing `f_0` looks converged at this truncation.
    pub f0_converged: bool,
}

/// Eigenvector coefficients of `J0` for `lambda` from the two-step recurrence.
pub fn eigenfunction_coefficients(
    lambda: Complex64,
    f1: Complex64,
    f2: Complex64,
    n_max: usize,
) -> Result<EigenCoefficients> {
    if n_max < 4 {
        return Err(Error::Precondition(format!("n_max = {n_max} must be at least 4")));
    }
    let z = 8.0 * lambda + 2.0;
    let discrete = lambda_infinity_index(lambda, 1e-14);
    if z.re >= 0.0 && discrete.is_none() {
        return Err(Error::Precondition(format!(
            "Re(8 lambda + 2) = {} is not negative and lambda is not a discrete eigenvalue",
            z.re
        )));
    }
    let half = 0.5 * z;
    let mut f = vec![Complex64::from(0.0); n_max + 1];
    f[1] = f1;
    if n_max >= 2 {
        f[2] = f2;
    }
    for n in 1..=n_max.saturating_sub(2) {
        if f[n] == Complex64::from(0.0) {
            continue;
        }
        let num = half + 1.0 / n as f64;
        if num == Complex64::from(0.0) {
            // The chain of this parity terminates.
            continue;
        }
        let den = half - 1.0 / (n + 2) as f64;
        if den.norm() <= 1e-15 {
            return Err(Error::Resonance { n });
        }
        f[n + 2] = f[n] * num / den;
    }
    if let Some(m) = discrete {
        // Exact zeros where the numerator vanished in floating point are enforced here.
        if m >= 1 {
            let mut k = m + 2;
            while k <= n_max {
                f[k] = 0.0.into();
                k += 2;
            }
        }
    }
    let mut sum = Complex64::from(0.0);
    let mut last = 0.0;
    let mut k = 2;
    while k <= n_max {
        let term = f[k] / k as f64;
        sum += term;
        last = term.norm();
        k += 2;
    }
    let gap = -0.25 * LN_2 - lambda;
    f[0] = if gap.norm() == 0.0 {
        0.0.into()
    } else {
        0.25 * sum / gap
    };
    let f0_converged = last * (n_max as f64 / 2.0) <= 1e-8 * sum.norm().max(1e-300) || sum.norm() == 0.0;
    Ok(EigenCoefficients {
        coefficients: f,
        f0_converged,
    })
}
