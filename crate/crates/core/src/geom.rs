//! Points on `S^2` and `S^3`, small fixed-size linear algebra, and tangent frames.
//!
//! `S^2` is the equatorial two-sphere `{x4 = 0}` of the unit three-sphere in
//! `R^4`. Scalar fields on `S^2` carry their derivative data in ambient `R^3`
//! coordinates, so the only linear algebra needed here is 3- and 4-vectors and
//! symmetric 3x3 matrices.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const UNIT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3([
            self.0[1] * o.0[2] - self.0[2] * o.0[1],
            self.0[2] * o.0[0] - self.0[0] * o.0[2],
            self.0[0] * o.0[1] - self.0[1] * o.0[0],
        ])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        self.scale(1.0 / n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const E4: Vec4 = Vec4([0.0, 0.0, 0.0, 1.0]);

    pub fn dot(self, o: Vec4) -> f64 {
        (0..4).map(|i| self.0[i] * o.0[i]).sum()
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec4 {
        Vec4([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    pub fn add(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub fn sub(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }

    pub fn normalized(self) -> Vec4 {
        self.scale(1.0 / self.norm())
    }

    pub fn from3(v: Vec3) -> Vec4 {
        Vec4([v.0[0], v.0[1], v.0[2], 0.0])
    }

    pub fn xyz(self) -> Vec3 {
        Vec3([self.0[0], self.0[1], self.0[2]])
    }
}

/// Vector orthogonal to three given vectors in `R^4` (generalized cross product).
pub fn cross4(u: Vec4, v: Vec4, w: Vec4) -> Vec4 {
    let m = |a: usize, b: usize, c: usize| -> f64 {
        u.0[a] * (v.0[b] * w.0[c] - v.0[c] * w.0[b])
            - u.0[b] * (v.0[a] * w.0[c] - v.0[c] * w.0[a])
            + u.0[c] * (v.0[a] * w.0[b] - v.0[b] * w.0[a])
    };
    // Laplace expansion of det [e; u; v; w] along the basis row.
    Vec4([m(1, 2, 3), -m(0, 2, 3), m(0, 1, 3), -m(0, 1, 2)])
}

/// Symmetric 3x3 matrix in ambient coordinates. Used for covariant Hessians
/// restricted to the tangent plane (rows and columns in the normal direction
/// are kept at zero by construction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    pub fn outer(u: Vec3, v: Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = u.0[i] * v.0[j];
            }
        }
        Mat3(m)
    }

    /// `u v^T + v u^T`
    pub fn sym_outer(u: Vec3, v: Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = u.0[i] * v.0[j] + v.0[i] * u.0[j];
            }
        }
        Mat3(m)
    }

    /// Tangent-plane projector `I - q q^T` at a point `q` on the sphere.
    pub fn tangent_projector(q: Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = if i == j { 1.0 } else { 0.0 } - q.0[i] * q.0[j];
            }
        }
        Mat3(m)
    }

    pub fn add(self, o: Mat3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        Mat3(m)
    }

    pub fn scale(self, s: f64) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.0[i][j] * s;
            }
        }
        Mat3(m)
    }

    pub fn trace(self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn quad_form(self, a: Vec3, b: Vec3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += a.0[i] * self.0[i][j] * b.0[j];
            }
        }
        s
    }

    pub fn mul_vec(self, v: Vec3) -> Vec3 {
        let mut r = [0.0; 3];
        for (i, ri) in r.iter_mut().enumerate() {
            *ri = (0..3).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        Vec3(r)
    }
}

/// Unit vector on the equatorial two-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S2Point {
    coords: Vec3,
}

impl S2Point {
    pub fn new(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::domain(format!(
                "S2Point norm {n} deviates from 1 by more than {UNIT_TOL:e}"
            )));
        }
        Ok(S2Point { coords: v })
    }

    pub fn from_unnormalized(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("cannot normalize zero or non-finite vector"));
        }
        Ok(S2Point {
            coords: v.scale(1.0 / n),
        })
    }

    /// Point at colatitude `theta` (from the north pole `(0,0,1)`) and longitude `lambda`.
    pub fn from_spherical(theta: f64, lambda: f64) -> Self {
        S2Point {
            coords: Vec3::new(
                theta.sin() * lambda.cos(),
                theta.sin() * lambda.sin(),
                theta.cos(),
            ),
        }
    }

    pub fn north_pole() -> Self {
        S2Point {
            coords: Vec3::new(0.0, 0.0, 1.0),
        }
    }

    pub fn vec(&self) -> Vec3 {
        self.coords
    }

    pub fn antipode(&self) -> S2Point {
        S2Point {
            coords: self.coords.scale(-1.0),
        }
    }

    /// Embedding `(x1, x2, x3, 0)` into the ambient `R^4` of `S^3`.
    pub fn embed4(&self) -> Vec4 {
        Vec4::from3(self.coords)
    }

    /// Colatitude measured from the north pole `(0,0,1)`.
    pub fn colatitude(&self) -> f64 {
        let z = self.coords.0[2];
        let rho = (self.coords.0[0].powi(2) + self.coords.0[1].powi(2)).sqrt();
        rho.atan2(z)
    }

    pub fn longitude(&self) -> f64 {
        self.coords.0[1].atan2(self.coords.0[0])
    }
}

/// Unit vector on the three-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S3Point {
    coords: Vec4,
}

impl S3Point {
    pub fn new(v: Vec4) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::domain(format!(
                "S3Point norm {n} deviates from 1 by more than {UNIT_TOL:e}"
            )));
        }
        Ok(S3Point { coords: v })
    }

    pub fn from_unnormalized(v: Vec4) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("cannot normalize zero or non-finite vector"));
        }
        Ok(S3Point {
            coords: v.scale(1.0 / n),
        })
    }

    pub fn vec(&self) -> Vec4 {
        self.coords
    }
}

/// Geodesic distance on the two-sphere, stabilized with `atan2` so that values
/// near `0` and `pi` keep full relative precision.
pub fn geodesic_distance(p: &S2Point, q: &S2Point) -> f64 {
    let c = p.vec().dot(q.vec());
    let s = p.vec().cross(q.vec()).norm();
    s.atan2(c)
}

/// Distance to a finite point set: `min_q d(p, q)`.
pub fn distance_to_set(p: &S2Point, set: &[S2Point]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(set
        .iter()
        .map(|q| geodesic_distance(p, q))
        .fold(f64::INFINITY, f64::min))
}

/// Index of the nearest point of a nonempty set, together with the distance.
pub fn nearest_of_set(p: &S2Point, set: &[S2Point]) -> Result<(usize, f64)> {
    if set.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut best = (0usize, f64::INFINITY);
    for (k, q) in set.iter().enumerate() {
        let d = geodesic_distance(p, q);
        if d < best.1 {
            best = (k, d);
        }
    }
    Ok(best)
}

/// Deterministic orthonormal tangent basis at `p`.
pub fn tangent_basis(p: &S2Point) -> (Vec3, Vec3) {
    let v = p.vec();
    let a = v.0[0].abs();
    let b = v.0[1].abs();
    let c = v.0[2].abs();
    let helper = if a <= b && a <= c {
        Vec3::new(1.0, 0.0, 0.0)
    } else if b <= c {
        Vec3::new(0.0, 1.0, 0.0)
    } else {
        Vec3::new(0.0, 0.0, 1.0)
    };
    let t1 = helper.sub(v.scale(helper.dot(v))).normalized();
    let t2 = v.cross(t1);
    (t1, t2)
}

/// Tangent frame `(east, north)` used by the polar charts around an equatorial
/// center: `east` points along increasing longitude, `north` toward `(0,0,1)`.
pub fn equatorial_frame(center: &S2Point) -> (Vec3, Vec3) {
    let v = center.vec();
    let lam = v.0[1].atan2(v.0[0]);
    let east = Vec3::new(-lam.sin(), lam.cos(), 0.0);
    let north = Vec3::new(0.0, 0.0, 1.0);
    (east, north)
}

/// Point reached from `center` by traveling geodesic distance `r` in the
/// tangent direction `cos(beta) e1 + sin(beta) e2`.
pub fn geodesic_point(center: &S2Point, e1: Vec3, e2: Vec3, r: f64, beta: f64) -> S2Point {
    let dir = e1.scale(beta.cos()).add(e2.scale(beta.sin()));
    let v = center.vec().scale(r.cos()).add(dir.scale(r.sin()));
    S2Point {
        coords: v.normalized(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn distance_identity_antipodal_orthogonal() {
        let p = S2Point::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let q = S2Point::new(Vec3::new(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(geodesic_distance(&p, &p), 0.0);
        assert!((geodesic_distance(&p, &p.antipode()) - PI).abs() < 1e-15);
        assert!((geodesic_distance(&p, &q) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn distance_precision_near_zero() {
        // atan2 formulation keeps relative precision for tiny separations.
        let p = S2Point::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let eps = 1e-9;
        let q = S2Point::from_unnormalized(Vec3::new(1.0, eps, 0.0)).unwrap();
        let d = geodesic_distance(&p, &q);
        assert!((d - eps).abs() < 1e-24);
    }

    #[test]
    fn distance_to_set_basics() {
        let north = S2Point::north_pole();
        assert_eq!(distance_to_set(&north, &[north]).unwrap(), 0.0);

        let pair = [
            S2Point::new(Vec3::new(1.0, 0.0, 0.0)).unwrap(),
            S2Point::new(Vec3::new(-1.0, 0.0, 0.0)).unwrap(),
        ];
        let mid = S2Point::new(Vec3::new(0.0, 1.0, 0.0)).unwrap();
        assert!((distance_to_set(&mid, &pair).unwrap() - PI / 2.0).abs() < 1e-15);

        assert!(matches!(
            distance_to_set(&north, &[]),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn unit_invariant_enforced() {
        assert!(S2Point::new(Vec3::new(1.0, 1e-6, 0.0)).is_err());
        assert!(S3Point::new(Vec4([0.5, 0.5, 0.5, 0.5])).is_ok());
    }

    #[test]
    fn cross4_orthogonality() {
        let u = Vec4([1.0, 2.0, -1.0, 0.5]);
        let v = Vec4([0.0, 1.0, 3.0, -2.0]);
        let w = Vec4([2.0, 0.0, 1.0, 1.0]);
        let n = cross4(u, v, w);
        assert!(n.dot(u).abs() < 1e-12);
        assert!(n.dot(v).abs() < 1e-12);
        assert!(n.dot(w).abs() < 1e-12);
        assert!(n.norm() > 0.1);
    }

    #[test]
    fn tangent_basis_orthonormal() {
        for p in [
            S2Point::north_pole(),
            S2Point::from_spherical(1.1, 2.3),
            S2Point::from_spherical(3.0, -0.4),
        ] {
            let (t1, t2) = tangent_basis(&p);
            assert!(t1.dot(t2).abs() < 1e-15);
            assert!((t1.norm() - 1.0).abs() < 1e-15);
            assert!((t2.norm() - 1.0).abs() < 1e-15);
            assert!(t1.dot(p.vec()).abs() < 1e-15);
            assert!(t2.dot(p.vec()).abs() < 1e-15);
        }
    }

    #[test]
    fn geodesic_point_distance() {
        let c = S2Point::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let (e1, e2) = equatorial_frame(&c);
        for (r, beta) in [(0.3, 0.0), (1.2, 1.0), (2.8, -2.0)] {
            let q = geodesic_point(&c, e1, e2, r, beta);
            assert!((geodesic_distance(&c, &q) - r).abs() < 1e-13);
        }
    }
}
