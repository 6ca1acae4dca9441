//! Univalent disks for bounded harmonic maps.
//!
//! A normalized harmonic map with `|f| < M` and `b1 = 0` has
//! `|a_n| + |b_n| <= 4M/pi`, so it falls in the uniform family with
//! `c = 4M/pi`. That gives the univalence radius `r_S` and a lower bound
//! `R_S` on the radius of a disk contained in the image of `|z| < r_S`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::radius_solver::radius_uniform_closed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochRow {
    #[serde(rename = "M")]
    pub m: f64,
    pub c: f64,
    #[serde(rename = "r_S")]
    pub r_s: f64,
    #[serde(rename = "R_S")]
    pub big_r_s: f64,
    pub phi: f64,
    pub psi: f64,
}

fn check_bound(m: f64) -> Result<()> {
    if m.is_finite() && m >= FRAC_PI_4 {
        Ok(())
    } else {
        Err(Error::domain(format!("M must be at least pi/4, got {m}")))
    }
}

/// `4M/pi`, the bound on `|a_n| + |b_n|`. Needs `M >= pi/4`, which `a_1 = 1`
/// forces.
pub fn coefficient_bound(m: f64) -> Result<f64> {
    check_bound(m)?;
    Ok(4.0 * m / PI)
}

/// `(r_S, R_S)` with `r_S = 1 - sqrt(4M/(4M + pi))` and
/// `R_S = r_S - (4M/pi) r_S^2/(1 - r_S)`.
pub fn bloch_radius(m: f64) -> Result<(f64, f64)> {
    let c = coefficient_bound(m)?;
    let r_s = radius_uniform_closed(c, 0.0)?.radius;
    Ok((r_s, r_s - c * r_s * r_s / (1.0 - r_s)))
}

/// `x/(sqrt2 (x^2 + x - 1))`, defined for `x^2 + x - 1 > 0`.
pub fn phi(x: f64) -> Result<f64> {
    let q = x * x + x - 1.0;
    if q.is_nan() || q <= 0.0 {
        return Err(Error::domain(format!("phi needs x^2 + x - 1 > 0, got x = {x}")));
    }
    Ok(x / (SQRT_2 * q))
}

/// `(1/sqrt2)[1 + ((x^2 - 1)/x) ln((x^2 - 1)/(x^2 + x - 1))]`, for `x > 1`.
pub fn psi(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 {
        return Err(Error::domain(format!("psi needs x > 1, got {x}")));
    }
    let q = x * x + x - 1.0;
    let p = x * x - 1.0;
    Ok(FRAC_1_SQRT_2 * (1.0 + p / x * (p / q).ln()))
}

/// One row per bound `M`, with the comparison columns evaluated at
/// `x = 8M/pi`.
pub fn table1(ms: &[f64]) -> Result<Vec<BlochRow>> {
    ms.iter()
        .map(|&m| {
            let c = coefficient_bound(m)?;
            let (r_s, big_r_s) = bloch_radius(m)?;
            let x = 8.0 * m / PI;
            Ok(BlochRow { m, c, r_s, big_r_s, phi: phi(x)?, psi: psi(x)? })
        })
        .collect()
}
