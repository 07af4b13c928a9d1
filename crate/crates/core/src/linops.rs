//! The operator `L = Delta + 2` on the two-sphere: its Green's function,
//! real spherical-harmonic transforms, and kernel-aware solves.
//!
//! Basis: real orthonormal spherical harmonics
//! `Y_{l,0} = Ptil_l^0(cos th) / sqrt(2 pi)`,
//! `Y_{l,mu>0} = Ptil_l^mu(cos th) cos(mu ph) / sqrt(pi)`,
//! `Y_{l,mu<0} = Ptil_l^|mu|(cos th) sin(|mu| ph) / sqrt(pi)`,
//! where `Ptil` are associated Legendre functions normalized to unit `L^2(dx)`
//! norm. Coefficients are stored flat at index `l^2 + l + mu`.
//!
//! Point evaluation returns full jets. The angular second derivative is folded
//! through the Legendre ODE (`cot th T' - mu^2 T / sin^2 th = -l(l+1) T - T''`)
//! so no `1/sin^2 th` amplification survives near the poles.

use crate::error::{Error, Result};
use crate::field::{Jet2, ScalarFieldS2};
use crate::geom::{Mat3, S2Point, Vec3};
use rayon::prelude::*;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Green's function of L = Delta + 2
// ---------------------------------------------------------------------------

/// `G(r) = cos r log(2 tan(r/2)) + 1 - cos r`, defined on `(0, pi)`.
///
/// Radially, `G'' + cot(r) G' + 2 G = 0`; `G(r) ~ log r` at the origin and
/// `G(r) ~ log(pi - r) + 2 - log 4` at the antipode. Endpoint singularities
/// are never regularized; callers must stay inside the open interval.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreenFunction;

impl GreenFunction {
    pub fn eval(&self, r: f64, k: usize) -> Result<f64> {
        if !(0.0..PI).contains(&r) || r == 0.0 {
            return Err(Error::domain(format!(
                "Green's function argument {r} outside (0, pi)"
            )));
        }
        let l2 = (2.0 * (0.5 * r).tan()).ln();
        let (s, c) = r.sin_cos();
        match k {
            0 => Ok(c * l2 + 1.0 - c),
            1 => Ok(-s * l2 + c / s + s),
            2 => Ok(-c * l2 - 1.0 - 1.0 / (s * s) + c),
            _ => Err(Error::domain(format!("derivative order {k} not in 0..=2"))),
        }
    }

    /// All three derivative orders at once.
    pub fn derivs(&self, r: f64) -> Result<[f64; 3]> {
        Ok([self.eval(r, 0)?, self.eval(r, 1)?, self.eval(r, 2)?])
    }

    /// Radial residual of `L` applied to `G(d_p)`: `G'' + cot(r) G' + 2 G`.
    pub fn radial_residual(&self, r: f64) -> Result<f64> {
        let g = self.derivs(r)?;
        Ok(g[2] + (r.cos() / r.sin()) * g[1] + 2.0 * g[0])
    }
}

impl crate::field::RadialProfile for GreenFunction {
    fn eval2(&self, r: f64) -> Result<[f64; 3]> {
        self.derivs(r)
    }
}

/// `d^k/dr^k [ phi_cat(r) - tau G(r) + tau log(tau/2) cos r ]` on the matching
/// window `(tau^alpha, 9 tau^alpha)`, where the catenoid profile and the
/// singular solution agree to `O(tau^{1+(2-k)alpha} |log tau|)`.
pub fn catenoid_matching_gap(tau: f64, alpha: f64, r: f64, k: usize) -> Result<f64> {
    let lo = tau.powf(alpha);
    let hi = 9.0 * tau.powf(alpha);
    if !(r > lo && r < hi) {
        return Err(Error::domain(format!(
            "matching window violated: r = {r} not in ({lo}, {hi})"
        )));
    }
    let cat = crate::catenoid::CatenoidProfile::new(tau)?;
    let g = GreenFunction;
    let c = tau * (tau / 2.0).ln();
    let cos_term = match k {
        0 => r.cos(),
        1 => -r.sin(),
        2 => -r.cos(),
        _ => return Err(Error::domain("derivative order not in 0..=2")),
    };
    Ok(cat.eval(r, k)? - tau * g.eval(r, k)? + c * cos_term)
}

// ---------------------------------------------------------------------------
// Normalized associated Legendre functions with theta-derivatives
// ---------------------------------------------------------------------------

/// Recurrence coefficients `a_{l,mu} = sqrt((4l^2-1)/(l^2-mu^2))` and
/// `b_{l,mu} = sqrt(((l-1)^2-mu^2)/(4(l-1)^2-1))`.
#[inline]
fn rec_ab(l: usize, mu: usize) -> (f64, f64) {
    let lf = l as f64;
    let mf = mu as f64;
    let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
    let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
    (a, b)
}

/// Walk `Ptil_l^mu(cos theta)` upward in `l` at fixed `mu`, streaming values
/// into `sink(l, T)`. Starts from the diagonal seed `Ptil_mu^mu`.
fn legendre_walk(mu: usize, lmax: usize, cos_t: f64, sin_t: f64, mut sink: impl FnMut(usize, f64)) {
    // Diagonal seed n_mu sin^mu(theta), n_mu^2 = (1/2) prod (2j+1)/(2j).
    let mut seed = (0.5f64).sqrt();
    for j in 1..=mu {
        let jf = j as f64;
        seed *= ((2.0 * jf + 1.0) / (2.0 * jf)).sqrt() * sin_t;
    }
    let mut pm2 = seed;
    sink(mu, pm2);
    if mu == lmax {
        return;
    }
    let mut pm1 = (2.0 * mu as f64 + 3.0).sqrt() * cos_t * seed;
    sink(mu + 1, pm1);
    for l in (mu + 2)..=lmax {
        let (a, b) = rec_ab(l, mu);
        let p = a * (cos_t * pm1 - b * pm2);
        pm2 = pm1;
        pm1 = p;
        sink(l, p);
    }
}

/// Same walk carrying first and second theta-derivatives, obtained by
/// differentiating the three-term recurrence in theta.
fn legendre_walk_d2(
    mu: usize,
    lmax: usize,
    cos_t: f64,
    sin_t: f64,
    mut sink: impl FnMut(usize, f64, f64, f64),
) {
    let mut seed = (0.5f64).sqrt();
    for j in 1..=mu {
        let jf = j as f64;
        seed *= ((2.0 * jf + 1.0) / (2.0 * jf)).sqrt();
    }
    let mf = mu as f64;
    let sp = if mu == 0 { 1.0 } else { sin_t.powi(mu as i32) };
    let (t0, d0, dd0) = if mu == 0 {
        (seed, 0.0, 0.0)
    } else if mu == 1 {
        (seed * sin_t, seed * cos_t, -seed * sin_t)
    } else {
        let spm1 = sin_t.powi(mu as i32 - 1);
        let spm2 = sin_t.powi(mu as i32 - 2);
        (
            seed * sp,
            seed * mf * spm1 * cos_t,
            seed * mf * ((mf - 1.0) * spm2 * cos_t * cos_t - sp),
        )
    };
    let (mut t_m2, mut d_m2, mut dd_m2) = (t0, d0, dd0);
    sink(mu, t_m2, d_m2, dd_m2);
    if mu == lmax {
        return;
    }
    let c1 = (2.0 * mf + 3.0).sqrt();
    let (mut t_m1, mut d_m1, mut dd_m1) = (
        c1 * cos_t * t0,
        c1 * (-sin_t * t0 + cos_t * d0),
        c1 * (-cos_t * t0 - 2.0 * sin_t * d0 + cos_t * dd0),
    );
    sink(mu + 1, t_m1, d_m1, dd_m1);
    for l in (mu + 2)..=lmax {
        let (a, b) = rec_ab(l, mu);
        let t = a * (cos_t * t_m1 - b * t_m2);
        let d = a * (-sin_t * t_m1 + cos_t * d_m1 - b * d_m2);
        let dd = a * (-cos_t * t_m1 - 2.0 * sin_t * d_m1 + cos_t * dd_m1 - b * dd_m2);
        t_m2 = t_m1;
        d_m2 = d_m1;
        dd_m2 = dd_m1;
        t_m1 = t;
        d_m1 = d;
        dd_m1 = dd;
        sink(l, t, d, dd);
    }
}

// ---------------------------------------------------------------------------
// Harmonic series and grids
// ---------------------------------------------------------------------------

/// Real spherical-harmonic coefficients up to degree `lmax`, stored flat at
/// index `l^2 + l + mu`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HarmonicSeries {
    pub lmax: usize,
    pub coeffs: Vec<f64>,
}

impl HarmonicSeries {
    pub fn zero(lmax: usize) -> Self {
        HarmonicSeries {
            lmax,
            coeffs: vec![0.0; (lmax + 1) * (lmax + 1)],
        }
    }

    #[inline]
    pub fn idx(l: usize, mu: isize) -> usize {
        ((l * l + l) as isize + mu) as usize
    }

    pub fn get(&self, l: usize, mu: isize) -> f64 {
        self.coeffs[Self::idx(l, mu)]
    }

    pub fn set(&mut self, l: usize, mu: isize, v: f64) {
        let i = Self::idx(l, mu);
        self.coeffs[i] = v;
    }

    /// Apply `L = Delta + 2`: multiply the degree-`l` band by `2 - l(l+1)`.
    pub fn apply_l(&self) -> HarmonicSeries {
        let mut out = self.clone();
        for l in 0..=self.lmax {
            let ev = 2.0 - (l * (l + 1)) as f64;
            for mu in -(l as isize)..=(l as isize) {
                let i = Self::idx(l, mu);
                out.coeffs[i] = self.coeffs[i] * ev;
            }
        }
        out
    }

    /// Truncation degree past which coefficients are negligible relative to
    /// the largest one; shortens point evaluations of solved smooth fields.
    pub fn effective_lmax(&self, rel_tol: f64) -> usize {
        let max_abs = self.coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
        if max_abs == 0.0 {
            return 0;
        }
        let mut leff = 0;
        for l in 0..=self.lmax {
            let band_max = (-(l as isize)..=(l as isize))
                .map(|mu| self.get(l, mu).abs())
                .fold(0.0f64, f64::max);
            if band_max > rel_tol * max_abs {
                leff = l;
            }
        }
        leff
    }
}

pub const TOL_KERNEL: f64 = 1e-10;

/// Solve `(Delta + 2) w = f` on the orthogonal complement of the kernel.
///
/// The degree-1 coefficients of `f` must vanish to `tol`; otherwise the solve
/// is obstructed and fails loudly. The solution's own degree-1 band is set to
/// zero, selecting the representative orthogonal to the kernel.
pub fn solve_l(f: &HarmonicSeries, tol: f64) -> Result<HarmonicSeries> {
    let k = [f.get(1, -1), f.get(1, 0), f.get(1, 1)];
    if k.iter().any(|c| c.abs() > tol) {
        return Err(Error::KernelObstruction { coeffs: k, tol });
    }
    let mut w = HarmonicSeries::zero(f.lmax);
    for l in 0..=f.lmax {
        if l == 1 {
            continue;
        }
        let ev = 2.0 - (l * (l + 1)) as f64;
        for mu in -(l as isize)..=(l as isize) {
            let i = HarmonicSeries::idx(l, mu);
            w.coeffs[i] = f.coeffs[i] / ev;
        }
    }
    Ok(w)
}

/// `[cos(mu phi_j), sin(mu phi_j)]` pairs for `mu = 1..=lmax` at each grid
/// longitude, interleaved per point.
fn trig_table(n_phi: usize, lmax: usize) -> Vec<Vec<f64>> {
    (0..n_phi)
        .map(|j| {
            let phi = 2.0 * PI * (j as f64) / (n_phi as f64);
            let mut row = Vec::with_capacity(2 * lmax);
            for mu in 1..=lmax {
                let (s, c) = ((mu as f64) * phi).sin_cos();
                row.push(c);
                row.push(s);
            }
            row
        })
        .collect()
}

/// Gauss-Legendre x uniform sampling grid for the transforms.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    /// Gauss nodes in `x = cos(theta)`, ascending.
    pub x_nodes: Vec<f64>,
    pub x_weights: Vec<f64>,
    pub n_phi: usize,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (x_nodes, x_weights) = crate::quadrature::gauss_legendre(n_theta);
        SphereGrid {
            x_nodes,
            x_weights,
            n_phi,
        }
    }

    /// Grid sized for exact analysis of band-limited fields of degree `lmax`,
    /// optionally oversampled to push aliasing of smooth non-band-limited
    /// inputs below their spectral tail.
    pub fn for_lmax(lmax: usize, oversample: usize) -> Self {
        let f = oversample.max(1);
        SphereGrid::new(f * (lmax + 1), f * (2 * lmax + 2))
    }

    pub fn n_theta(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * (j as f64) / (self.n_phi as f64)
    }

    pub fn point(&self, i: usize, j: usize) -> S2Point {
        let x = self.x_nodes[i];
        let theta = x.acos();
        S2Point::from_spherical(theta, self.phi(j))
    }

    /// Sample a function of position into the row-major `(theta, phi)` layout.
    pub fn sample(&self, f: impl Fn(&S2Point) -> f64 + Sync) -> Vec<f64> {
        let n_phi = self.n_phi;
        (0..self.n_theta())
            .into_par_iter()
            .flat_map_iter(|i| {
                let row: Vec<f64> = (0..n_phi).map(|j| f(&self.point(i, j))).collect();
                row
            })
            .collect()
    }
}

/// Forward transform: exact (to roundoff) for band-limited inputs of degree
/// `<= lmax` when the grid satisfies `n_theta >= lmax + 1`, `n_phi >= 2 lmax + 1`.
pub fn sht_forward(grid: &SphereGrid, values: &[f64], lmax: usize) -> Result<HarmonicSeries> {
    let nt = grid.n_theta();
    let np = grid.n_phi;
    if values.len() != nt * np {
        return Err(Error::domain("value buffer does not match grid"));
    }
    if nt < lmax + 1 || np < 2 * lmax + 1 {
        return Err(Error::UnderResolvedGrid(format!(
            "grid {nt} x {np} cannot analyze degree {lmax}: need >= {} x >= {}",
            lmax + 1,
            2 * lmax + 1
        )));
    }

    // Per-ring Fourier analysis; bank mu = 0 sits at index lmax. The trig
    // table is shared across rings.
    let dphi = 2.0 * PI / (np as f64);
    let trig = trig_table(np, lmax);
    let fourier: Vec<Vec<f64>> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let row = &values[i * np..(i + 1) * np];
            let mut banks = vec![0.0f64; 2 * lmax + 1];
            for (j, &v) in row.iter().enumerate() {
                banks[lmax] += v;
                let tr = &trig[j];
                for mu in 1..=lmax {
                    banks[lmax + mu] += v * tr[2 * mu - 2];
                    banks[lmax - mu] += v * tr[2 * mu - 1];
                }
            }
            for b in banks.iter_mut() {
                *b *= dphi;
            }
            banks
        })
        .collect();

    // Legendre analysis per ring, reduced in ring order.
    let rows: Vec<Vec<f64>> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let x = grid.x_nodes[i];
            let w = grid.x_weights[i];
            let sin_t = (1.0 - x * x).max(0.0).sqrt();
            let mut contrib = vec![0.0f64; (lmax + 1) * (lmax + 1)];
            for mu in 0..=lmax {
                let f_cos = fourier[i][lmax + mu];
                let f_sin = if mu > 0 { fourier[i][lmax - mu] } else { 0.0 };
                let norm = if mu == 0 {
                    1.0 / (2.0 * PI).sqrt()
                } else {
                    1.0 / PI.sqrt()
                };
                legendre_walk(mu, lmax, x, sin_t, |l, t| {
                    contrib[HarmonicSeries::idx(l, mu as isize)] = w * t * norm * f_cos;
                    if mu > 0 {
                        contrib[HarmonicSeries::idx(l, -(mu as isize))] = w * t * norm * f_sin;
                    }
                });
            }
            contrib
        })
        .collect();

    let mut out = HarmonicSeries::zero(lmax);
    for row in rows {
        for (i, v) in row.into_iter().enumerate() {
            out.coeffs[i] += v;
        }
    }
    Ok(out)
}

/// Inverse transform onto a grid.
pub fn sht_inverse(grid: &SphereGrid, series: &HarmonicSeries) -> Vec<f64> {
    let nt = grid.n_theta();
    let np = grid.n_phi;
    let lmax = series.lmax;
    let trig = trig_table(np, lmax);
    (0..nt)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = grid.x_nodes[i];
            let sin_t = (1.0 - x * x).max(0.0).sqrt();
            let mut bank_cos = vec![0.0f64; lmax + 1];
            let mut bank_sin = vec![0.0f64; lmax + 1];
            for mu in 0..=lmax {
                let mut s_cos = 0.0;
                let mut s_sin = 0.0;
                legendre_walk(mu, lmax, x, sin_t, |l, t| {
                    s_cos += series.get(l, mu as isize) * t;
                    if mu > 0 {
                        s_sin += series.get(l, -(mu as isize)) * t;
                    }
                });
                let norm = if mu == 0 {
                    1.0 / (2.0 * PI).sqrt()
                } else {
                    1.0 / PI.sqrt()
                };
                bank_cos[mu] = s_cos * norm;
                bank_sin[mu] = s_sin * norm;
            }
            (0..np)
                .map(|j| {
                    let tr = &trig[j];
                    let mut v = bank_cos[0];
                    for mu in 1..=lmax {
                        v += bank_cos[mu] * tr[2 * mu - 2] + bank_sin[mu] * tr[2 * mu - 1];
                    }
                    v
                })
                .collect::<Vec<f64>>()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Point evaluation with jets
// ---------------------------------------------------------------------------

/// Evaluable spherical-harmonic field. Knows the angular period of the
/// coefficients (a `p`-fold symmetric field only carries `mu = 0 mod p`) and
/// an effective truncation degree; both just shorten the sums.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct HarmonicField {
    pub series: HarmonicSeries,
    pub angular_period: usize,
    pub leff: usize,
}

impl HarmonicField {
    pub fn new(series: HarmonicSeries) -> Self {
        let leff = series.effective_lmax(1e-16);
        HarmonicField {
            series,
            angular_period: 1,
            leff,
        }
    }

    /// Declare a `p`-fold rotational symmetry about the polar axis together
    /// with even parity under `z -> -z` and reflection through the plane of
    /// the first center (which kills the sine banks). Violating coefficients
    /// must be below `tol` and are zeroed exactly.
    pub fn with_symmetry(mut self, period: usize, tol: f64) -> Result<Self> {
        let lmax = self.series.lmax;
        for l in 0..=lmax {
            for mu in -(l as isize)..=(l as isize) {
                let v = self.series.get(l, mu);
                let mu_abs = mu.unsigned_abs();
                let keep = mu_abs % period == 0 && (l + mu_abs) % 2 == 0 && mu >= 0;
                if !keep {
                    if v.abs() > tol {
                        return Err(Error::domain(format!(
                            "coefficient (l={l}, mu={mu}) = {v:e} violates declared symmetry"
                        )));
                    }
                    self.series.set(l, mu, 0.0);
                }
            }
        }
        self.angular_period = period;
        self.leff = self.series.effective_lmax(1e-16);
        Ok(self)
    }

    /// Value only (cheap path used by meshing). Safe at the poles.
    pub fn value_at(&self, p: &S2Point) -> f64 {
        let theta = p.colatitude();
        let phi = p.longitude();
        let x = theta.cos();
        let sin_t = theta.sin();
        let lmax = self.leff;
        let mut total = 0.0;
        let mut mu = 0usize;
        while mu <= lmax {
            let mut s_cos = 0.0;
            let mut s_sin = 0.0;
            legendre_walk(mu, lmax, x, sin_t, |l, t| {
                s_cos += self.series.get(l, mu as isize) * t;
                if mu > 0 {
                    s_sin += self.series.get(l, -(mu as isize)) * t;
                }
            });
            let norm = if mu == 0 {
                1.0 / (2.0 * PI).sqrt()
            } else {
                1.0 / PI.sqrt()
            };
            let (s, c) = ((mu as f64) * phi).sin_cos();
            total += norm * (s_cos * c + s_sin * s);
            mu += self.angular_period.max(1);
        }
        total
    }
}

impl ScalarFieldS2 for HarmonicField {
    fn jet(&self, p: &S2Point) -> Result<Jet2> {
        let theta = p.colatitude();
        let phi = p.longitude();
        let x = theta.cos();
        let sin_t = theta.sin();
        if sin_t < 1e-8 {
            return Err(Error::domain(
                "harmonic-field jets are not evaluated within 1e-8 of the poles",
            ));
        }
        let cot = x / sin_t;
        let lmax = self.leff;

        let mut f = 0.0; // value
        let mut f_t = 0.0; // d/dtheta
        let mut f_p = 0.0; // (1/sin) d/dphi
        let mut h_tt = 0.0; // Hess(e_th, e_th)
        let mut h_tp = 0.0; // Hess(e_th, e_ph)
        let mut h_pp = 0.0; // Hess(e_ph, e_ph)
        let mut mu = 0usize;
        while mu <= lmax {
            let mut s0c = 0.0;
            let mut s0s = 0.0;
            let mut s1c = 0.0;
            let mut s1s = 0.0;
            let mut s2c = 0.0;
            let mut s2s = 0.0;
            let mut slc = 0.0;
            let mut sls = 0.0;
            legendre_walk_d2(mu, lmax, x, sin_t, |l, t, d, dd| {
                let ll = (l * (l + 1)) as f64;
                let cc = self.series.get(l, mu as isize);
                s0c += cc * t;
                s1c += cc * d;
                s2c += cc * dd;
                slc += cc * ll * t;
                if mu > 0 {
                    let cs = self.series.get(l, -(mu as isize));
                    s0s += cs * t;
                    s1s += cs * d;
                    s2s += cs * dd;
                    sls += cs * ll * t;
                }
            });
            let norm = if mu == 0 {
                1.0 / (2.0 * PI).sqrt()
            } else {
                1.0 / PI.sqrt()
            };
            let mf = mu as f64;
            let (smp, cmp_) = (mf * phi).sin_cos();
            let ang = s0c * cmp_ + s0s * smp;
            let ang1 = s1c * cmp_ + s1s * smp;
            let ang2 = s2c * cmp_ + s2s * smp;
            let angl = slc * cmp_ + sls * smp;
            let dang = -s0c * smp + s0s * cmp_; // (1/mu) d/dphi of the angular factor
            let dang1 = -s1c * smp + s1s * cmp_;

            f += norm * ang;
            f_t += norm * ang1;
            h_tt += norm * ang2;
            // Hess(e_ph, e_ph) = f_pp / sin^2 + cot f_t; per (l, mu) the
            // bracket cot T' - mu^2 T / sin^2 equals -l(l+1) T - T''.
            h_pp += norm * (-angl - ang2);
            if mu > 0 {
                f_p += norm * mf * dang / sin_t;
                h_tp += norm * mf * (dang1 - cot * dang) / sin_t;
            }
            mu += self.angular_period.max(1);
        }

        // Orthonormal frame (e_theta, e_phi) in ambient coordinates.
        let (sl, cl) = phi.sin_cos();
        let e_t = Vec3::new(x * cl, x * sl, -sin_t);
        let e_p = Vec3::new(-sl, cl, 0.0);
        let grad = e_t.scale(f_t).add(e_p.scale(f_p));
        let hess = Mat3::outer(e_t, e_t)
            .scale(h_tt)
            .add(Mat3::outer(e_p, e_p).scale(h_pp))
            .add(Mat3::sym_outer(e_t, e_p).scale(h_tp));
        Ok(Jet2 {
            value: f,
            grad,
            hess,
        })
    }

    fn value(&self, p: &S2Point) -> Result<f64> {
        Ok(self.value_at(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fd_jet;

    #[test]
    fn green_at_equator_distance() {
        let g = GreenFunction;
        assert!((g.eval(PI / 2.0, 0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn green_log_asymptotics() {
        let g = GreenFunction;
        let r = 1e-4;
        assert!((g.eval(r, 0).unwrap() - r.ln()).abs() <= 1e-7);
    }

    #[test]
    fn green_domain_errors() {
        let g = GreenFunction;
        assert!(g.eval(0.0, 0).is_err());
        assert!(g.eval(PI, 0).is_err());
        assert!(g.eval(-0.1, 1).is_err());
    }

    #[test]
    fn green_annihilated_by_radial_l() {
        let g = GreenFunction;
        for r in [0.3, 1.0, 2.5] {
            assert!(
                g.radial_residual(r).unwrap().abs() < 1e-12,
                "residual at r = {r}"
            );
        }
    }

    #[test]
    fn green_derivatives_match_finite_differences() {
        let g = GreenFunction;
        for r in [0.2, 0.9, 1.8, 2.7] {
            for k in 0..2usize {
                let h = 1e-5;
                let fd = (g.eval(r + h, k).unwrap() - g.eval(r - h, k).unwrap()) / (2.0 * h);
                let an = g.eval(r, k + 1).unwrap();
                assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0));
            }
        }
    }

    #[test]
    fn matching_gap_bound_and_smoothness() {
        let tau: f64 = 1e-4;
        let alpha = 0.5;
        let scale = tau.powf(1.0 + 2.0 * alpha) * tau.ln().abs();
        let r = 2.0 * tau.powf(alpha);
        let gap = catenoid_matching_gap(tau, alpha, r, 0).unwrap();
        assert!(gap.abs() <= 10.0 * scale, "gap {gap:e} vs scale {scale:e}");

        // Derivative consistency of the gap at order 2.
        let h = 1e-7;
        let fd = (catenoid_matching_gap(tau, alpha, r + h, 0).unwrap()
            - catenoid_matching_gap(tau, alpha, r - h, 0).unwrap())
            / (2.0 * h);
        let an = catenoid_matching_gap(tau, alpha, r, 1).unwrap();
        assert!((fd - an).abs() < 1e-6 * an.abs().max(1e-12));

        // Outside the window.
        assert!(catenoid_matching_gap(tau, alpha, 0.5 * tau.powf(alpha), 0).is_err());
    }

    #[test]
    fn matching_gap_two_point_scaling() {
        let alpha = 0.5;
        let max_norm = |tau: f64| {
            let lo = tau.powf(alpha);
            (1..60)
                .map(|i| {
                    let r = lo * (1.0 + 7.9 * (i as f64) / 60.0);
                    catenoid_matching_gap(tau, alpha, r, 0).unwrap().abs()
                })
                .fold(0.0f64, f64::max)
        };
        let scale = |tau: f64| tau.powf(1.0 + 2.0 * alpha) * tau.ln().abs();
        let c4 = max_norm(1e-4) / scale(1e-4);
        let c5 = max_norm(1e-5) / scale(1e-5);
        assert!(
            (c4 / c5 - 1.0).abs() < 0.25,
            "constants c(1e-4) = {c4}, c(1e-5) = {c5}"
        );
    }

    #[test]
    fn sht_constant_field() {
        let lmax = 16;
        let grid = SphereGrid::for_lmax(lmax, 1);
        let values = grid.sample(|_| 1.0);
        let c = sht_forward(&grid, &values, lmax).unwrap();
        assert!((c.get(0, 0) - (4.0 * PI).sqrt()).abs() < 1e-13);
        let rest: f64 = c.coeffs[1..].iter().map(|v| v.abs()).sum();
        assert!(rest < 1e-12);
    }

    #[test]
    fn sht_third_coordinate_is_pure_degree_one() {
        let lmax = 8;
        let grid = SphereGrid::for_lmax(lmax, 1);
        let values = grid.sample(|p| p.vec().0[2]);
        let c = sht_forward(&grid, &values, lmax).unwrap();
        let expected = (4.0 * PI / 3.0).sqrt();
        assert!((c.get(1, 0) - expected).abs() < 1e-14);
        for (i, v) in c.coeffs.iter().enumerate() {
            if i != HarmonicSeries::idx(1, 0) {
                assert!(v.abs() < 1e-13, "coefficient {i} = {v}");
            }
        }
    }

    #[test]
    fn sht_round_trip_band_limited() {
        let lmax = 24;
        let grid = SphereGrid::for_lmax(lmax, 1);
        // Deterministic pseudo-random band-limited series.
        let mut series = HarmonicSeries::zero(lmax);
        let mut state = 0x9e3779b97f4a7c15u64;
        for c in series.coeffs.iter_mut() {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            *c = ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
        }
        let values = sht_inverse(&grid, &series);
        let back = sht_forward(&grid, &values, lmax).unwrap();
        let err = series
            .coeffs
            .iter()
            .zip(&back.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-12, "round-trip error {err:e}");
    }

    #[test]
    fn sht_rejects_under_resolved_grid() {
        let grid = SphereGrid::new(8, 16);
        let values = vec![0.0; 8 * 16];
        assert!(matches!(
            sht_forward(&grid, &values, 12),
            Err(Error::UnderResolvedGrid(_))
        ));
    }

    #[test]
    fn solve_l_eigenvalues() {
        let lmax = 4;
        let mut f = HarmonicSeries::zero(lmax);
        f.set(0, 0, 1.0);
        let w = solve_l(&f, TOL_KERNEL).unwrap();
        assert!((w.get(0, 0) - 0.5).abs() < 1e-15);

        let mut f2 = HarmonicSeries::zero(lmax);
        f2.set(2, 1, 1.0);
        let w2 = solve_l(&f2, TOL_KERNEL).unwrap();
        assert!((w2.get(2, 1) + 0.25).abs() < 1e-15);

        // Round trip on the non-kernel subspace.
        let back = w2.apply_l();
        assert!((back.get(2, 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solve_l_kernel_obstruction() {
        let mut f = HarmonicSeries::zero(3);
        f.set(1, 0, 1e-6);
        match solve_l(&f, TOL_KERNEL) {
            Err(Error::KernelObstruction { coeffs, .. }) => {
                assert!((coeffs[1] - 1e-6).abs() < 1e-18);
            }
            other => panic!("expected kernel obstruction, got {other:?}"),
        }
    }

    #[test]
    fn solve_inverts_apply_off_kernel() {
        let lmax = 12;
        let mut f = HarmonicSeries::zero(lmax);
        let mut state = 123456789u64;
        for l in 0..=lmax {
            if l == 1 {
                continue;
            }
            for mu in -(l as isize)..=(l as isize) {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                f.set(l, mu, ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5);
            }
        }
        let w = solve_l(&f, TOL_KERNEL).unwrap();
        let back = w.apply_l();
        let err = f
            .coeffs
            .iter()
            .zip(&back.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn harmonic_field_jets_match_finite_differences() {
        let lmax = 10;
        let mut series = HarmonicSeries::zero(lmax);
        series.set(0, 0, 0.3);
        series.set(2, 0, 1.0);
        series.set(3, 2, 0.5);
        series.set(4, -3, -0.7);
        series.set(6, 1, 0.2);
        let f = HarmonicField::new(series);
        for (theta, phi) in [(0.9, 0.3), (1.7, -1.2), (2.4, 2.8), (0.05, 0.0)] {
            let p = S2Point::from_spherical(theta, phi);
            let j = f.jet(&p).unwrap();
            let (g, h) = fd_jet(&f, &p, 1e-5).unwrap();
            assert!(
                j.grad.sub(g).norm() < 1e-7,
                "gradient mismatch at ({theta}, {phi})"
            );
            for i in 0..3 {
                for k in 0..3 {
                    assert!(
                        (j.hess.0[i][k] - h.0[i][k]).abs() < 2e-4,
                        "hessian mismatch at ({theta}, {phi}): {:?} vs {:?}",
                        j.hess,
                        h
                    );
                }
            }
        }
    }

    #[test]
    fn harmonic_field_laplacian_eigenvalue() {
        // For a pure degree-l harmonic, Delta Y = -l(l+1) Y everywhere.
        let lmax = 6;
        let mut series = HarmonicSeries::zero(lmax);
        series.set(5, 3, 1.0);
        let f = HarmonicField::new(series);
        for (theta, phi) in [(0.6, 1.0), (1.3, -0.4), (2.8, 0.9)] {
            let p = S2Point::from_spherical(theta, phi);
            let j = f.jet(&p).unwrap();
            assert!(
                (j.laplacian() + 30.0 * j.value).abs() < 1e-10,
                "eigenvalue failure at ({theta}, {phi})"
            );
        }
    }
}
