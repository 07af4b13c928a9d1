//! Scalar fields on the two-sphere with analytic derivative data.
//!
//! A field evaluation returns a [`Jet2`]: the value, the intrinsic gradient as
//! an ambient tangent 3-vector, and the covariant Hessian as a symmetric 3x3
//! matrix supported on the tangent plane. Because the second fundamental form
//! of the sphere is `-<X,Y> p`, the covariant Hessian of a field equals the
//! Euclidean Hessian of its degree-0 homogeneous extension restricted to the
//! tangent plane, which makes ambient coordinates a consistent carrier for
//! sums, products, chain rules, and cutoff blending. The Laplacian is the
//! trace of the Hessian.
//!
//! Radial fields `g(d_p)` use
//! `grad = g'(r) u`, `Hess = g''(r) u u^T + g'(r) cot(r) (P - u u^T)`
//! with `u = (cos(r) q - p)/sin(r)` and `P` the tangent projector.

use crate::cutoff::CutoffSpec;
use crate::error::{Error, Result};
use crate::geom::{geodesic_distance, nearest_of_set, Mat3, S2Point, Vec3};
use std::sync::Arc;

/// Value, gradient, and covariant Hessian of a field at a point.
#[derive(Clone, Copy, Debug)]
pub struct Jet2 {
    pub value: f64,
    pub grad: Vec3,
    pub hess: Mat3,
}

impl Jet2 {
    pub fn constant(v: f64) -> Jet2 {
        Jet2 {
            value: v,
            grad: Vec3::ZERO,
            hess: Mat3::ZERO,
        }
    }

    pub fn laplacian(&self) -> f64 {
        self.hess.trace()
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            value: self.value + o.value,
            grad: self.grad.add(o.grad),
            hess: self.hess.add(o.hess),
        }
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        Jet2 {
            value: self.value * s,
            grad: self.grad.scale(s),
            hess: self.hess.scale(s),
        }
    }

    /// Leibniz product of two jets.
    pub fn mul(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            value: self.value * o.value,
            grad: self.grad.scale(o.value).add(o.grad.scale(self.value)),
            hess: self
                .hess
                .scale(o.value)
                .add(o.hess.scale(self.value))
                .add(Mat3::sym_outer(self.grad, o.grad)),
        }
    }

    /// Chain rule through a scalar profile given as `(f, f', f'')` at `self.value`.
    pub fn compose(&self, f: f64, f1: f64, f2: f64) -> Jet2 {
        Jet2 {
            value: f,
            grad: self.grad.scale(f1),
            hess: self
                .hess
                .scale(f1)
                .add(Mat3::outer(self.grad, self.grad).scale(f2)),
        }
    }
}

/// Scalar profile of one real variable with two derivatives, used for radial
/// fields and for chain rules through cutoffs.
pub trait RadialProfile: Send + Sync {
    /// `(g(r), g'(r), g''(r))`.
    fn eval2(&self, r: f64) -> Result<[f64; 3]>;
}

/// A scalar field on (a region of) the two-sphere.
pub trait ScalarFieldS2: Send + Sync {
    fn jet(&self, p: &S2Point) -> Result<Jet2>;

    fn value(&self, p: &S2Point) -> Result<f64> {
        Ok(self.jet(p)?.value)
    }
}

pub type FieldRef = Arc<dyn ScalarFieldS2>;

/// Constant field.
pub struct ConstantField(pub f64);

impl ScalarFieldS2 for ConstantField {
    fn jet(&self, _p: &S2Point) -> Result<Jet2> {
        Ok(Jet2::constant(self.0))
    }
}

const CENTER_SIN_TOL: f64 = 1e-9;

/// Jet of `g(d_center)` at `q` given the profile derivatives at `r = d_center(q)`.
pub fn radial_jet(center: &S2Point, q: &S2Point, g: [f64; 3]) -> Jet2 {
    let r_sin = center.vec().cross(q.vec()).norm();
    let r_cos = center.vec().dot(q.vec());
    let proj = Mat3::tangent_projector(q.vec());
    if r_sin < CENTER_SIN_TOL {
        // At (or numerically at) the center or antipode the direction vector is
        // undefined; smooth even profiles have g' -> 0 there and the Hessian
        // becomes isotropic.
        return Jet2 {
            value: g[0],
            grad: Vec3::ZERO,
            hess: proj.scale(g[2]),
        };
    }
    let u = q.vec().scale(r_cos).sub(center.vec()).scale(1.0 / r_sin);
    let uu = Mat3::outer(u, u);
    let cot = r_cos / r_sin;
    Jet2 {
        value: g[0],
        grad: u.scale(g[1]),
        hess: uu.scale(g[2]).add(proj.add(uu.scale(-1.0)).scale(g[1] * cot)),
    }
}

/// Field `g(d_center)` for a radial profile `g`.
pub struct RadialField {
    pub center: S2Point,
    pub profile: Arc<dyn RadialProfile>,
}

impl ScalarFieldS2 for RadialField {
    fn jet(&self, q: &S2Point) -> Result<Jet2> {
        let r = geodesic_distance(&self.center, q);
        Ok(radial_jet(&self.center, q, self.profile.eval2(r)?))
    }
}

/// Field `g(d_L)` for a finite center set `L`; the evaluation delegates to the
/// nearest center, which is the only one that matters within the separation
/// radius of the configurations used here.
pub struct NearestRadialField {
    pub centers: Vec<S2Point>,
    pub profile: Arc<dyn RadialProfile>,
}

impl ScalarFieldS2 for NearestRadialField {
    fn jet(&self, q: &S2Point) -> Result<Jet2> {
        let (k, r) = nearest_of_set(q, &self.centers)?;
        Ok(radial_jet(&self.centers[k], q, self.profile.eval2(r)?))
    }
}

/// The distance profile itself: `g(r) = r`.
pub struct IdentityProfile;

impl RadialProfile for IdentityProfile {
    fn eval2(&self, r: f64) -> Result<[f64; 3]> {
        Ok([r, 1.0, 0.0])
    }
}

/// `g(r) = cos r`, the degree-1 radial harmonic.
pub struct CosProfile;

impl RadialProfile for CosProfile {
    fn eval2(&self, r: f64) -> Result<[f64; 3]> {
        Ok([r.cos(), -r.sin(), -r.cos()])
    }
}

/// Linear combination of fields.
pub struct SumField {
    pub terms: Vec<(f64, FieldRef)>,
}

impl ScalarFieldS2 for SumField {
    fn jet(&self, p: &S2Point) -> Result<Jet2> {
        let mut acc = Jet2::constant(0.0);
        for (c, f) in &self.terms {
            acc = acc.add(&f.jet(p)?.scale(*c));
        }
        Ok(acc)
    }
}

/// The cutoff combinator: `psi_cut[a,b](rho) f1 + psi_cut[b,a](rho) f0`.
///
/// The blend transits from `f0` where `rho` is near `a` to `f1` where `rho`
/// is near `b`. Where one weight vanishes identically the other field is not
/// evaluated, so `f0`/`f1` may be singular deep inside the opposite region.
pub struct BlendField {
    pub spec: CutoffSpec,
    pub rho: FieldRef,
    pub f0: FieldRef,
    pub f1: FieldRef,
}

impl ScalarFieldS2 for BlendField {
    fn jet(&self, p: &S2Point) -> Result<Jet2> {
        let rj = self.rho.jet(p)?;
        let fwd = self.spec.eval2(rj.value);
        let bwd = self.spec.reversed().eval2(rj.value);
        let mut acc = Jet2::constant(0.0);
        if fwd[0] != 0.0 || fwd[1] != 0.0 || fwd[2] != 0.0 {
            let weight = rj.compose(fwd[0], fwd[1], fwd[2]);
            acc = acc.add(&weight.mul(&self.f1.jet(p)?));
        }
        if bwd[0] != 0.0 || bwd[1] != 0.0 || bwd[2] != 0.0 {
            let weight = rj.compose(bwd[0], bwd[1], bwd[2]);
            acc = acc.add(&weight.mul(&self.f0.jet(p)?));
        }
        Ok(acc)
    }
}

/// Build the blend `Psi[a, b; rho](f0, f1)`.
pub fn blend(a: f64, b: f64, rho: FieldRef, f0: FieldRef, f1: FieldRef) -> Result<FieldRef> {
    let spec = CutoffSpec::new(a, b).map_err(|_| Error::DegenerateCutoff)?;
    Ok(Arc::new(BlendField { spec, rho, f0, f1 }))
}

/// Field defined by an explicit jet closure (used in tests and for the
/// handful of closed-form fields that are not radial).
pub struct FnField<F: Fn(&S2Point) -> Result<Jet2> + Send + Sync>(pub F);

impl<F: Fn(&S2Point) -> Result<Jet2> + Send + Sync> ScalarFieldS2 for FnField<F> {
    fn jet(&self, p: &S2Point) -> Result<Jet2> {
        (self.0)(p)
    }
}

/// Finite-difference check helper: gradient and Hessian of `f` at `p` from
/// values alone, using a symmetric stencil in a tangent basis. Second-order
/// accurate; test code only, but lives here so every module can reach it.
pub fn fd_jet(f: &dyn ScalarFieldS2, p: &S2Point, h: f64) -> Result<(Vec3, Mat3)> {
    use crate::geom::{geodesic_point, tangent_basis};
    let (t1, t2) = tangent_basis(p);
    let shift = |a: f64, b: f64| -> Result<f64> {
        let r = (a * a + b * b).sqrt();
        if r == 0.0 {
            return f.value(p);
        }
        let beta = b.atan2(a);
        f.value(&geodesic_point(p, t1, t2, r, beta))
    };
    let f0 = shift(0.0, 0.0)?;
    let fp1 = shift(h, 0.0)?;
    let fm1 = shift(-h, 0.0)?;
    let fp2 = shift(0.0, h)?;
    let fm2 = shift(0.0, -h)?;
    let fpp = shift(h, h)?;
    let fpm = shift(h, -h)?;
    let fmp = shift(-h, h)?;
    let fmm = shift(-h, -h)?;
    let g1 = (fp1 - fm1) / (2.0 * h);
    let g2 = (fp2 - fm2) / (2.0 * h);
    let h11 = (fp1 - 2.0 * f0 + fm1) / (h * h);
    let h22 = (fp2 - 2.0 * f0 + fm2) / (h * h);
    let h12 = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    let grad = t1.scale(g1).add(t2.scale(g2));
    let hess = Mat3::outer(t1, t1)
        .scale(h11)
        .add(Mat3::outer(t2, t2).scale(h22))
        .add(Mat3::sym_outer(t1, t2).scale(h12));
    Ok((grad, hess))
}
