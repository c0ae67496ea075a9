//! Adaptive real quadrature built on tanh-sinh rules, plus principal values
//! and Hadamard finite parts by symmetric-window subtraction.

use crate::error::{Error, Result};
use quadrature::double_exponential;

/// Integral of `f` over `[a, b]`; endpoint singularities are tolerated.
///
/// Non-finite samples (a node rounding onto a log singularity) count as zero;
/// their weights are far below the target accuracy.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let out = double_exponential::integrate(
        |x| {
            let v = f(x);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        a,
        b,
        tol,
    );
    if !out.integral.is_finite() || out.error_estimate > 1e3 * tol.max(1e-300) + 1e-12 * out.integral.abs() {
        return Err(Error::Quadrature {
            estimate: out.error_estimate,
        });
    }
    Ok(out.integral)
}

/// Sum of [`integrate`] over consecutive breakpoints.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, points: &[f64], tol: f64) -> Result<f64> {
    let mut total = 0.0;
    for w in points.windows(2) {
        total += integrate(&f, w[0], w[1], tol)?;
    }
    Ok(total)
}

/// Integral from `x ± d` to `end` with breakpoints
/// at geometrically growing distances from `x`, for integrands peaked near `x`.
fn graded<F: Fn(f64) -> f64>(f: &F, x: f64, d: f64, end: f64, tol: f64) -> Result<f64> {
    let sign = if end >= x { 1.0 } else { -1.0 };
    let span = (end - x).abs();
    let mut points = vec![x + sign * d];
    let mut r = 2.0 * d;
    while r < span {
        points.push(x + sign * r);
        r *= 4.0;
    }
    points.push(end);
    if sign < 0.0 {
        points.reverse();
    }
    integrate_pieces(f, &points, tol)
}

/// `p.v. int_a^b h(s) / (s - x) ds` for `a < x < b`.
pub fn principal_value<F: Fn(f64) -> f64>(h: F, x: f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let d = (x - a).min(b - x);
    let inner = integrate(|u| (h(x + u) - h(x - u)) / u, 0.0, d, tol)?;
    let outer = |s: f64| h(s) / (s - x);
    let left = graded(&outer, x, d, a, tol)?;
    let right = graded(&outer, x, d, b, tol)?;
    Ok(inner + left + right)
}

/// `f.p. int_a^b h(s) / (s - x)^2 ds` for `a < x < b`.
pub fn finite_part<F: Fn(f64) -> f64>(h: F, x: f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let d = (x - a).min(b - x);
    let hx = h(x);
    let inner = integrate(|u| (h(x + u) + h(x - u) - 2.0 * hx) / (u * u), 0.0, d, tol)?;
    let outer = |s: f64| h(s) / ((s - x) * (s - x));
    let left = graded(&outer, x, d, a, tol)?;
    let right = graded(&outer, x, d, b, tol)?;
    Ok(inner - 2.0 * hx / d + left + right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_log_singular() {
        let v = integrate(|x| x.exp(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-13);
        let v = integrate(|x| x.ln(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v + 1.0).abs() < 1e-12);
        let v = integrate_pieces(|x| (x - 0.3f64).abs().ln(), &[-1.0, 0.3, 1.0], 1e-14).unwrap();
        let want = 1.3 * 1.3f64.ln() - 1.3 + 0.7 * 0.7f64.ln() - 0.7;
        assert!((v - want).abs() < 3e-12);
    }

    #[test]
    fn principal_value_of_constant() {
        // p.v. int_{-1}^{1} ds / (s - x) = ln((1 - x) / (1 + x)).
        for x in [-0.7, 0.0, 0.4, 0.95, 0.9999] {
            let v = principal_value(|_| 1.0, x, -1.0, 1.0, 1e-13).unwrap();
            assert!((v - ((1.0 - x) / (1.0 + x)).ln()).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn finite_part_of_polynomials() {
        // f.p. int_{-1}^{1} ds / (s - x)^2 = -2 / (1 - x^2).
        for x in [-0.5, 0.0, 0.9] {
            let v = finite_part(|_| 1.0, x, -1.0, 1.0, 1e-13).unwrap();
            assert!((v + 2.0 / (1.0 - x * x)).abs() < 1e-10);
        }
        // h(s) = s: f.p. = p.v. int ds/(s-x) + x f.p. int ds/(s-x)^2.
        let x = 0.3;
        let v = finite_part(|s| s, x, -1.0, 1.0, 1e-13).unwrap();
        let want = ((1.0 - x) / (1.0 + x)).ln() - 2.0 * x / (1.0 - x * x);
        assert!((v - want).abs() < 1e-10);
    }
}
