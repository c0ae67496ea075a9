//! Bessel and Hankel functions of orders 0 and 1 for real positive arguments,
//! and the log/smooth split of the Helmholtz kernel along an arc.
//!
//! Three regimes: power series for x <= 4, Miller backward recurrence with
//! Neumann series for Y on (4, 20], Hankel asymptotics beyond 20.

use crate::error::{Error, Result};
use crate::geometry::Arc;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_2_PI, LN_2, PI};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_MAX: f64 = 4.0;
const MILLER_MAX: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselKind {
    J0,
    J1,
    Y0,
    Y1,
    H0_1,
    H1_1,
}

/// `[J0, J1, Y0, Y1]` at `x > 0`.
pub fn bessel01(x: f64) -> [f64; 4] {
    if x <= SERIES_MAX {
        series01(x)
    } else if x <= MILLER_MAX {
        miller01(x)
    } else {
        asymptotic01(x)
    }
}

pub fn bessel(kind: BesselKind, x: f64) -> Result<Complex64> {
    let needs_positive = !matches!(kind, BesselKind::J0 | BesselKind::J1);
    if !x.is_finite() || x < 0.0 || (needs_positive && x == 0.0) {
        return Err(Error::Domain {
            what: "Bessel argument",
            value: x,
        });
    }
    if x == 0.0 {
        let v = if kind == BesselKind::J0 { 1.0 } else { 0.0 };
        return Ok(Complex64::new(v, 0.0));
    }
    let [j0, j1, y0, y1] = bessel01(x);
    Ok(match kind {
        BesselKind::J0 => j0.into(),
        BesselKind::J1 => j1.into(),
        BesselKind::Y0 => y0.into(),
        BesselKind::Y1 => y1.into(),
        BesselKind::H0_1 => Complex64::new(j0, y0),
        BesselKind::H1_1 => Complex64::new(j1, y1),
    })
}

pub fn j0(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        bessel01(x.abs())[0]
    }
}

/// `Y0(x) - (2/pi) J0(x) ln x`, an entire function of x.
pub fn y0_regular(x: f64) -> f64 {
    if x <= SERIES_MAX {
        let q = 0.25 * x * x;
        let (mut term, mut h, mut sum, mut j) = (1.0, 0.0, 0.0, 1.0);
        for k in 1..40 {
            let kf = k as f64;
            term *= -q / (kf * kf);
            h += 1.0 / kf;
            sum -= h * term;
            j += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        FRAC_2_PI * ((EULER_GAMMA - LN_2) * j + sum)
    } else {
        let [j0, _, y0, _] = bessel01(x);
        y0 - FRAC_2_PI * j0 * x.ln()
    }
}

fn series01(x: f64) -> [f64; 4] {
    let q = 0.25 * x * x;
    // J0 and the harmonic-weighted sum for Y0.
    let (mut t0, mut j0, mut s0, mut h) = (1.0, 1.0, 0.0, 0.0);
    // J1 / (x/2) and the sum for Y1.
    let (mut t1, mut j1, mut s1) = (1.0, 1.0, 1.0);
    for k in 1..40 {
        let kf = k as f64;
        t0 *= -q / (kf * kf);
        t1 *= -q / (kf * (kf + 1.0));
        h += 1.0 / kf;
        j0 += t0;
        s0 -= h * t0;
        j1 += t1;
        s1 += (2.0 * h + 1.0 / (kf + 1.0)) * t1;
        if t0.abs() < 1e-18 && t1.abs() < 1e-18 {
            break;
        }
    }
    let j1 = 0.5 * x * j1;
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let y0 = FRAC_2_PI * (lg * j0 + s0);
    let y1 = FRAC_2_PI * lg * j1 - FRAC_2_PI / x - x / (2.0 * PI) * s1;
    [j0, j1, y0, y1]
}

fn miller01(x: f64) -> [f64; 4] {
    let m = 2 * ((x + 25.0 + 4.0 * x.sqrt()) as usize / 2);
    let mut j = vec![0.0; m + 2];
    j[m] = 1e-30;
    for n in (1..=m).rev() {
        j[n - 1] = 2.0 * n as f64 / x * j[n] - j[n + 1];
        if j[n - 1].abs() > 1e250 {
            for v in j.iter_mut().skip(n - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = j[0] + 2.0 * (1..=m / 2).map(|k| j[2 * k]).sum::<f64>();
    for v in j.iter_mut() {
        *v /= norm;
    }
    let mut a = 0.0;
    let mut b = 0.0;
    for k in 1..=m / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        a += sign * j[2 * k] / kf;
        b += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
    }
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let y0 = FRAC_2_PI * lg * j[0] - 2.0 * FRAC_2_PI * a;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * lg * j[1] + FRAC_2_PI * b;
    [j[0], j[1], y0, y1]
}

/// Hankel's expansion `(P, Q)` for order `nu`, cut at the smallest term.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if a.abs() >= last || a.abs() < 1e-20 {
            break;
        }
        last = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    (p, q)
}

fn asymptotic01(x: f64) -> [f64; 4] {
    let amp = (FRAC_2_PI / x).sqrt();
    // cos and sin of x - pi/4 and x - 3pi/4 via one reduction.
    let (s, c) = x.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (c0, s0) = (r * (c + s), r * (s - c));
    let (c1, s1) = (s0, -c0);
    let (p0, q0) = hankel_pq(0.0, x);
    let (p1, q1) = hankel_pq(1.0, x);
    [
        amp * (p0 * c0 - q0 * s0),
        amp * (p1 * c1 - q1 * s1),
        amp * (p0 * s0 + q0 * c0),
        amp * (p1 * s1 + q1 * c1),
    ]
}

/// `G_k = log_coefficient * ln|t - t2| + smooth_part` along an arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    /// Direct kernel value; infinite real part on the diagonal.
    pub value: Complex64,
    pub log_coefficient: Complex64,
    pub smooth_part: Complex64,
}

/// Log coefficient and smooth remainder of `G_k(r(t), r(t2))`, no domain checks.
pub(crate) fn split_parts(arc: &Arc, k: f64, t: f64, t2: f64) -> (Complex64, Complex64) {
    let cr = arc.chord_ratio_unchecked(t, t2);
    if k == 0.0 {
        return (
            Complex64::from(-1.0 / (2.0 * PI)),
            Complex64::from(-cr.ln() / (2.0 * PI)),
        );
    }
    let x = k * (t - t2).abs() * cr;
    let (j, yreg) = if x == 0.0 {
        (1.0, FRAC_2_PI * (EULER_GAMMA - LN_2))
    } else {
        (j0(x), y0_regular(x))
    };
    let a1 = -j / (2.0 * PI);
    let smooth = Complex64::new(-0.25 * yreg + a1 * (k.ln() + cr.ln()), 0.25 * j);
    (Complex64::from(a1), smooth)
}

pub fn kernel_split(arc: &Arc, k: f64, t: f64, t2: f64) -> Result<KernelValue> {
    arc.chord_ratio(t, t2)?;
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Domain {
            what: "wavenumber",
            value: k,
        });
    }
    let (log_coefficient, smooth_part) = split_parts(arc, k, t, t2);
    let value = if t == t2 {
        Complex64::new(f64::INFINITY, if k > 0.0 { 0.25 } else { 0.0 })
    } else {
        let p = arc.point(t);
        let q = arc.point(t2);
        let r = (p[0] - q[0]).hypot(p[1] - q[1]);
        green(k, r)
    };
    Ok(KernelValue {
        value,
        log_coefficient,
        smooth_part,
    })
}

/// Free-space kernel at distance `r > 0`: `(i/4) H0(kr)`, or `-ln r / 2pi` at k = 0.
pub fn green(k: f64, r: f64) -> Complex64 {
    if k == 0.0 {
        return Complex64::from(-r.ln() / (2.0 * PI));
    }
    let [j0, _, y0, _] = bessel01(k * r);
    Complex64::new(-0.25 * y0, 0.25 * j0)
}
