//! Smooth open arcs parametrized over `[-1, 1]`.
//!
//! The normal is the tangent rotated a quarter turn counter-clockwise, so the
//! tangent is the normal rotated 90 degrees clockwise.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Vec2 = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Arc {
    /// Straight segment from `start` (t = -1) to `end` (t = 1).
    FlatSegment { start: Vec2, end: Vec2 },
    /// `R (cos(a t / 2), sin(a t / 2))`, an arc of opening `a` centred on the x axis.
    CircularArc { radius: f64, opening: f64 },
    /// `(t, amplitude * sin(pi * frequency * t))`.
    PerturbedFlat { amplitude: f64, frequency: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcPoint {
    pub point: Vec2,
    pub speed: f64,
    pub normal: Vec2,
    pub tangent: Vec2,
}

/// sin(x)/x, with a short series where the quotient loses digits.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

impl Arc {
    /// The reference segment `[-1, 1] x {0}`.
    pub fn unit_flat() -> Self {
        Arc::FlatSegment {
            start: [-1.0, 0.0],
            end: [1.0, 0.0],
        }
    }

    pub fn circular(radius: f64, opening: f64) -> Result<Self> {
        Arc::CircularArc { radius, opening }.validated()
    }

    pub fn perturbed(amplitude: f64, frequency: u32) -> Result<Self> {
        Arc::PerturbedFlat {
            amplitude,
            frequency,
        }
        .validated()
    }

    pub fn flat(start: Vec2, end: Vec2) -> Result<Self> {
        Arc::FlatSegment { start, end }.validated()
    }

    /// Checks the parameters, positivity of the speed on a sample grid, and openness.
    pub fn validated(self) -> Result<Self> {
        match self {
            Arc::FlatSegment { start, end } => {
                if !(start.iter().chain(end.iter()).all(|v| v.is_finite())) {
                    return Err(Error::InvalidArc("non-finite endpoint".into()));
                }
            }
            Arc::CircularArc { radius, opening } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidArc(format!("radius {radius} must be positive")));
                }
                if !(opening > 0.0 && opening < 2.0 * PI) {
                    return Err(Error::InvalidArc(format!(
                        "opening {opening} must lie in (0, 2 pi)"
                    )));
                }
            }
            Arc::PerturbedFlat { amplitude, .. } => {
                if !amplitude.is_finite() {
                    return Err(Error::InvalidArc("non-finite amplitude".into()));
                }
            }
        }
        for i in 0..=64 {
            let t = -1.0 + i as f64 / 32.0;
            if !(self.speed(t) > 0.0) {
                return Err(Error::InvalidArc(format!("speed vanishes near t = {t}")));
            }
        }
        let (a, b) = (self.point(-1.0), self.point(1.0));
        if (a[0] - b[0]).hypot(a[1] - b[1]) == 0.0 {
            return Err(Error::InvalidArc("endpoints coincide".into()));
        }
        Ok(self)
    }

    /// Position, unchecked in `t`.
    pub fn point(&self, t: f64) -> Vec2 {
        match *self {
            Arc::FlatSegment { start, end } => [
                0.5 * (start[0] + end[0]) + 0.5 * t * (end[0] - start[0]),
                0.5 * (start[1] + end[1]) + 0.5 * t * (end[1] - start[1]),
            ],
            Arc::CircularArc { radius, opening } => {
                let phi = 0.5 * opening * t;
                [radius * phi.cos(), radius * phi.sin()]
            }
            Arc::PerturbedFlat {
                amplitude,
                frequency,
            } => [t, amplitude * (PI * frequency as f64 * t).sin()],
        }
    }

    /// dr/dt.
    pub fn velocity(&self, t: f64) -> Vec2 {
        match *self {
            Arc::FlatSegment { start, end } => {
                [0.5 * (end[0] - start[0]), 0.5 * (end[1] - start[1])]
            }
            Arc::CircularArc { radius, opening } => {
                let phi = 0.5 * opening * t;
                let s = 0.5 * opening * radius;
                [-s * phi.sin(), s * phi.cos()]
            }
            Arc::PerturbedFlat {
                amplitude,
                frequency,
            } => {
                let w = PI * frequency as f64;
                [1.0, amplitude * w * (w * t).cos()]
            }
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        let v = self.velocity(t);
        v[0].hypot(v[1])
    }

    pub fn tangent(&self, t: f64) -> Vec2 {
        let v = self.velocity(t);
        let s = v[0].hypot(v[1]);
        [v[0] / s, v[1] / s]
    }

    pub fn normal(&self, t: f64) -> Vec2 {
        let [tx, ty] = self.tangent(t);
        [-ty, tx]
    }

    /// Full frame at `t`; rejects parameters outside `[-1, 1]`.
    pub fn evaluate(&self, t: f64) -> Result<ArcPoint> {
        check_param(t)?;
        let tangent = self.tangent(t);
        Ok(ArcPoint {
            point: self.point(t),
            speed: self.speed(t),
            normal: [-tangent[1], tangent[0]],
            tangent,
        })
    }

    /// `|r(t) - r(t2)| / |t - t2|`, continued by the speed on the diagonal.
    pub fn chord_ratio(&self, t: f64, t2: f64) -> Result<f64> {
        check_param(t)?;
        check_param(t2)?;
        Ok(self.chord_ratio_unchecked(t, t2))
    }

    pub(crate) fn chord_ratio_unchecked(&self, t: f64, t2: f64) -> f64 {
        let d = t - t2;
        match *self {
            Arc::FlatSegment { start, end } => 0.5 * (end[0] - start[0]).hypot(end[1] - start[1]),
            Arc::CircularArc { radius, opening } => {
                0.5 * radius * opening * sinc(0.25 * opening * d).abs()
            }
            Arc::PerturbedFlat {
                amplitude,
                frequency,
            } => {
                let w = PI * frequency as f64;
                let slope = amplitude * w * (0.5 * w * (t + t2)).cos() * sinc(0.5 * w * d);
                slope.hypot(1.0)
            }
        }
    }

    /// Largest speed over a fine sample of the parameter interval.
    pub fn max_speed(&self) -> f64 {
        (0..=512)
            .map(|i| self.speed(-1.0 + i as f64 / 256.0))
            .fold(0.0, f64::max)
    }

    /// Distance from `x` to the arc, by sampling plus local golden-section refinement.
    pub fn distance_to(&self, x: Vec2) -> f64 {
        let dist = |t: f64| {
            let p = self.point(t);
            (p[0] - x[0]).hypot(p[1] - x[1])
        };
        let m = 400;
        let mut best = (0, f64::INFINITY);
        for i in 0..=m {
            let d = dist(-1.0 + 2.0 * i as f64 / m as f64);
            if d < best.1 {
                best = (i, d);
            }
        }
        let h = 2.0 / m as f64;
        let c = -1.0 + best.0 as f64 * h;
        let (mut a, mut b) = ((c - h).max(-1.0), (c + h).min(1.0));
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..60 {
            let x1 = b - g * (b - a);
            let x2 = a + g * (b - a);
            if dist(x1) < dist(x2) {
                b = x2;
            } else {
                a = x1;
            }
        }
        dist(0.5 * (a + b)).min(best.1)
    }
}

fn check_param(t: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "arc parameter",
            value: t,
        })
    }
}
