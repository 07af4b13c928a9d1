//! Smooth cutoff calculus used by every gluing step.
//!
//! The transition function is `psi(t) = e(1+t) / (e(1+t) + e(1-t))` with
//! `e(t) = exp(-1/t)` for `t > 0` and `0` otherwise. It is `C^infinity`,
//! identically `0` on `(-inf, -1]`, identically `1` on `[1, inf)`,
//! nondecreasing, and `psi - 1/2` is odd. Closed-form first and second
//! derivatives are carried alongside values because downstream mean-curvature
//! evaluation differentiates through cutoffs twice.

use crate::error::{Error, Result};

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth transition on `[-1, 1]`.
pub fn psi(t: f64) -> f64 {
    if t <= -1.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let u = bump(1.0 + t);
        let v = bump(1.0 - t);
        u / (u + v)
    }
}

/// First derivative of `psi`. Uses `psi' = psi (1 - psi) g` with
/// `g = (1+t)^-2 + (1-t)^-2`, which stays finite as the factors underflow.
pub fn psi_d1(t: f64) -> f64 {
    if t <= -1.0 || t >= 1.0 {
        0.0
    } else {
        let p = psi(t);
        let g = (1.0 + t).powi(-2) + (1.0 - t).powi(-2);
        p * (1.0 - p) * g
    }
}

/// Second derivative of `psi`: `psi'' = psi (1 - psi) [ (1 - 2 psi) g^2 + g' ]`.
pub fn psi_d2(t: f64) -> f64 {
    if t <= -1.0 || t >= 1.0 {
        0.0
    } else {
        let p = psi(t);
        let g = (1.0 + t).powi(-2) + (1.0 - t).powi(-2);
        let gp = -2.0 * (1.0 + t).powi(-3) + 2.0 * (1.0 - t).powi(-3);
        p * (1.0 - p) * ((1.0 - 2.0 * p) * g * g + gp)
    }
}

/// Transition window `[a, b]` with `a != b`. The associated cutoff is `0`
/// near `a` and `1` near `b`; `a > b` is allowed and reverses the direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffSpec {
    a: f64,
    b: f64,
}

impl CutoffSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a == b || !a.is_finite() || !b.is_finite() {
            return Err(Error::DegenerateCutoff);
        }
        Ok(CutoffSpec { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn reversed(&self) -> CutoffSpec {
        CutoffSpec {
            a: self.b,
            b: self.a,
        }
    }

    /// The affine map with `L(a) = -3`, `L(b) = 3`.
    fn affine(&self, x: f64) -> f64 {
        -3.0 + 6.0 * (x - self.a) / (self.b - self.a)
    }

    fn affine_slope(&self) -> f64 {
        6.0 / (self.b - self.a)
    }

    /// Value of `psi_cut[a,b](x) = psi(L(x))`.
    pub fn eval(&self, x: f64) -> f64 {
        psi(self.affine(x))
    }

    /// Value and first two derivatives of `psi_cut[a,b]` at `x`.
    pub fn eval2(&self, x: f64) -> [f64; 3] {
        let t = self.affine(x);
        let s = self.affine_slope();
        [psi(t), psi_d1(t) * s, psi_d2(t) * s * s]
    }
}

/// `psi_cut[a,b](x)`, the cutoff supported by the window `[a, b]`.
pub fn psi_cut(a: f64, b: f64, x: f64) -> Result<f64> {
    Ok(CutoffSpec::new(a, b)?.eval(x))
}
