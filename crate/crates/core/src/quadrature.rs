//! Gauss-Legendre rules, compensated accumulation, and quadrature settings.
//!
//! All energy bookkeeping happens in deficit form with totals near `1e-6`
//! sitting eight digits below the raw Willmore numbers, so every accumulator
//! here is a Neumaier-compensated sum and every reduction is performed in a
//! fixed order regardless of thread count.

use std::ops::AddAssign;

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    s: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn total(&self) -> f64 {
        self.s + self.c
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

/// Compensated sum of a slice in its given order.
pub fn compensated_total(values: &[f64]) -> f64 {
    let mut acc = CompensatedSum::new();
    for &v in values {
        acc.add(v);
    }
    acc.total()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre polynomial. Exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = (n as f64) * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                // One more polished step, then stop.
                let mut q0 = 1.0;
                let mut q1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                let p = if n == 1 { x } else { q1 };
                let pm1 = if n == 1 { 1.0 } else { q0 };
                dp = (n as f64) * (x * p - pm1) / (x * x - 1.0);
                x -= p / dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        // Weight at the center from the general formula.
        let mut p0 = 1.0;
        let mut p1 = 0.0;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = (-(kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = (n as f64) * (-p0) / (-1.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// Nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&t| t * half).collect(),
    )
}

/// Resolution settings for the energy quadratures. `half()` is used for the
/// Richardson-style error estimates reported with every energy number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss nodes per radial panel on graph regions.
    pub n_radial: usize,
    /// Angular nodes per full circle on graph regions.
    pub n_angular: usize,
    /// Gauss nodes along the bridge parameter `s` (per half-bridge).
    pub n_bridge_s: usize,
    /// Uniform nodes around the bridge in the angular direction.
    pub n_bridge_theta: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            n_radial: 40,
            n_angular: 96,
            n_bridge_s: 64,
            n_bridge_theta: 32,
        }
    }
}

impl QuadratureSpec {
    pub fn half(&self) -> QuadratureSpec {
        QuadratureSpec {
            n_radial: (self.n_radial / 2).max(4),
            n_angular: (self.n_angular / 2).max(8),
            n_bridge_s: (self.n_bridge_s / 2).max(4),
            n_bridge_theta: (self.n_bridge_theta / 2).max(4),
        }
    }

    pub fn doubled(&self) -> QuadratureSpec {
        QuadratureSpec {
            n_radial: self.n_radial * 2,
            n_angular: self.n_angular * 2,
            n_bridge_s: self.n_bridge_s * 2,
            n_bridge_theta: self.n_bridge_theta * 2,
        }
    }
}

/// A value carrying the quadrature error estimate attached to it.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Measured {
    pub value: f64,
    pub error: f64,
}

impl Measured {
    pub fn exact(value: f64) -> Self {
        Measured { value, error: 0.0 }
    }

    pub fn with_reference(value: f64, coarse: f64) -> Self {
        Measured {
            value,
            error: (value - coarse).abs(),
        }
    }
}
