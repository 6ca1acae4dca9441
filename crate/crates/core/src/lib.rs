//! Radii of close-to-convexity and starlikeness for planar harmonic mappings
//! `f = h + conj(g)` whose Maclaurin coefficients obey a bound family.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeffseries`]: coefficient data and the weighted sum
//!   `S(r) = |b1| + sum n(|a_n| + |b_n|) r^(n-1)` that drives every radius.
//! - [`harmonic_map`]: evaluation of `f`, its Wirtinger derivatives, Jacobian,
//!   dilatation, dilations `f_r(z) = f(rz)/r` and sections.
//! - [`extremal`]: the harmonic Koebe function, the convex extremal `L`, and the
//!   sharpness witnesses with closed-form Jacobians.
//! - [`radius_solver`]: closed-form radii, a bisection engine on
//!   `S(r) = 1 - beta`, and Jacobian root isolation.
//! - [`class_checks`]: coefficient and sampled membership tests.
//! - [`bloch`]: univalent-disk radii for bounded harmonic maps.

pub mod bloch;
pub mod class_checks;
pub mod coeffseries;
pub mod error;
pub mod extremal;
pub mod harmonic_map;
mod numeric;
pub mod radius_solver;

pub use num_complex::Complex64;

pub use crate::coeffseries::{BoundFamily, CoefficientSeq, SumEstimate, TailKind, WeightedSum};
pub use crate::error::{Error, Result};
pub use crate::harmonic_map::HarmonicMap;
