//! Doubled-sphere comparison surfaces in `S^3` with bending energy below `8*pi`.
//!
//! The library builds, for `m >= 1` bridge centers on the equator of the unit
//! two-sphere, a closed genus `m-1` surface consisting of two near-spherical
//! normal graphs joined by `m` small catenoidal bridges. The graph height is a
//! singular solution of the linearized Willmore equation `Delta (Delta + 2) u = 0`,
//! matched to the bridges through a cutoff calculus. The Willmore energy
//! `W = Area + 1/4 * int H^2` is evaluated by cancellation-safe spectral
//! quadrature and certified strictly below `8*pi`; stereographic and Mobius
//! images in `R^3` then realize any prescribed isoperimetric ratio in `(0, 1)`.

pub mod ambient;
pub mod assembly;
pub mod catenoid;
pub mod cutoff;
pub mod error;
pub mod field;
pub mod geom;
pub mod graphs;
pub mod ldsolutions;
pub mod linops;
pub mod quadrature;
pub mod verification;

pub use error::{Error, Result};
