//! Radii of close-to-convexity and starlikeness.
//!
//! For a family whose dilated coefficient sum is `S(r)`, the radius is the
//! largest `r` with `S(r) <= 1 - beta`. The Koebe, convex and uniform
//! families have closed forms; anything implementing [`WeightedSum`] can be
//! solved by bisection. Sharpness is checked through sign changes of a
//! witness Jacobian.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::coeffseries::{BoundFamily, WeightedSum};
use crate::error::{Error, Result};
use crate::extremal::JacobianProfile;
use crate::numeric::bisect_predicate;

/// Bracket width at which bisection stops.
pub const BISECTION_TOL: f64 = 1e-12;
/// Hard cap on bisection halvings.
pub const BISECTION_MAX_ITER: usize = 200;
/// Number of scan intervals used to isolate Jacobian roots.
pub const ROOT_SCAN_POINTS: usize = 10_000;
/// Upper end of the search interval; a family feasible here is saturated.
const SATURATION_RADIUS: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Bisection,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusReport {
    pub radius: f64,
    pub method: Method,
    /// `|S(radius) - (1 - beta)|` for bisection, or the defining polynomial
    /// evaluated at the radius for closed forms.
    pub residual: f64,
    pub bracket: Option<(f64, f64)>,
    pub tolerance: f64,
    /// Set when `S(r) <= 1 - beta` holds on the whole search interval.
    pub saturated: bool,
    pub iterations: usize,
}

/// Largest `r` in `(0, 1)` with `S(r) <= 1 - beta`, by bisection.
///
/// The returned radius is the lower end of the final bracket, so it always
/// satisfies the inequality.
pub fn radius_bisection<S: WeightedSum + ?Sized>(source: &S, beta: f64) -> Result<RadiusReport> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::domain(format!("beta must lie in [0, 1), got {beta}")));
    }
    let target = 1.0 - beta;
    let s0 = source.weighted_sum(0.0)?.value;
    if s0 >= target {
        return Err(Error::NoRadius { s0, target });
    }
    let feasible = |r: f64| source.weighted_sum(r).map(|s| s.value <= target).unwrap_or(false);
    if feasible(SATURATION_RADIUS) {
        let s = source.weighted_sum(SATURATION_RADIUS)?.value;
        return Ok(RadiusReport {
            radius: SATURATION_RADIUS,
            method: Method::Bisection,
            residual: (s - target).abs(),
            bracket: Some((SATURATION_RADIUS, 1.0)),
            tolerance: BISECTION_TOL,
            saturated: true,
            iterations: 0,
        });
    }
    let (lo, hi, iterations) = bisect_predicate(0.0, SATURATION_RADIUS, BISECTION_TOL, BISECTION_MAX_ITER, feasible);
    let s = source.weighted_sum(lo)?.value;
    Ok(RadiusReport {
        radius: lo,
        method: Method::Bisection,
        residual: (s - target).abs(),
        bracket: Some((lo, hi)),
        tolerance: BISECTION_TOL,
        saturated: false,
        iterations,
    })
}

/// `sqrt2 r^2 - (1 + 2 sqrt2) r + sqrt2 - 1`.
pub fn koebe_quadratic(r: f64) -> f64 {
    SQRT_2 * r * r - (1.0 + 2.0 * SQRT_2) * r + SQRT_2 - 1.0
}

/// `2r^3 - 6r^2 + 7r - 1`.
pub fn convex_cubic(r: f64) -> f64 {
    ((2.0 * r - 6.0) * r + 7.0) * r - 1.0
}

fn convex_cubic_derivative(r: f64) -> f64 {
    (6.0 * r - 12.0) * r + 7.0
}

fn closed(radius: f64, residual: f64) -> RadiusReport {
    RadiusReport {
        radius,
        method: Method::ClosedForm,
        residual,
        bracket: None,
        tolerance: 0.0,
        saturated: false,
        iterations: 0,
    }
}

/// Radius for the Koebe bound family: the root in `(0, 1)` of
/// [`koebe_quadratic`], about `0.112903`.
pub fn radius_koebe_closed() -> RadiusReport {
    let a = SQRT_2;
    let b = -(1.0 + 2.0 * SQRT_2);
    let c = SQRT_2 - 1.0;
    let disc = b * b - 4.0 * a * c;
    // q = -(b + sign(b) sqrt(disc))/2; the small root c/q avoids cancellation
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let root = c / q;
    closed(root, koebe_quadratic(root).abs())
}

/// Radius for the convex bound family: the real root of [`convex_cubic`],
/// about `0.164878`, by Newton's method safeguarded with bisection on `[0, 1]`.
pub fn radius_convex_closed() -> RadiusReport {
    // The cubic is strictly increasing (its derivative has negative
    // discriminant), with p(0) = -1 and p(1) = 2.
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut r = 0.2;
    let mut iterations = 0;
    for _ in 0..100 {
        iterations += 1;
        let p = convex_cubic(r);
        if p == 0.0 {
            break;
        }
        if p < 0.0 {
            lo = r;
        } else {
            hi = r;
        }
        let newton = r - p / convex_cubic_derivative(r);
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let done = (next - r).abs() <= 1e-16 * r.abs().max(1.0);
        r = next;
        if done {
            break;
        }
    }
    let mut report = closed(r, convex_cubic(r).abs());
    report.iterations = iterations;
    report
}

/// The radical form `1 + cbrt(-18 + sqrt330)/6^(2/3) - 1/cbrt(6(-18 + sqrt330))`.
pub fn convex_radius_radical() -> f64 {
    let t = -18.0 + 330f64.sqrt();
    1.0 + t.cbrt() / 6f64.powf(2.0 / 3.0) - 1.0 / (6.0 * t).cbrt()
}

/// Radius for the uniform family `|a_n| + |b_n| <= c`, `|b1| = b1_abs`:
/// `1 - sqrt(c/(c + 1 - |b1|))`.
pub fn radius_uniform_closed(c: f64, b1_abs: f64) -> Result<RadiusReport> {
    let family = BoundFamily::uniform(c, b1_abs)?;
    let radius = 1.0 - (c / (c + 1.0 - b1_abs)).sqrt();
    let residual = (family.weighted_sum(radius)?.value - 1.0).abs();
    Ok(closed(radius, residual))
}

/// Closed form for a bound family at `beta = 0`.
pub fn radius_closed(family: &BoundFamily) -> Result<RadiusReport> {
    match *family {
        BoundFamily::Koebe => Ok(radius_koebe_closed()),
        BoundFamily::Convex => Ok(radius_convex_closed()),
        BoundFamily::Uniform { c, b1_abs } => radius_uniform_closed(c, b1_abs),
    }
}

/// Roots of the profile on its interval: sign changes on a uniform scan of
/// [`ROOT_SCAN_POINTS`] intervals, each refined by bisection to `1e-12`.
pub fn jacobian_roots(profile: &JacobianProfile) -> Vec<f64> {
    let (lo, hi) = profile.interval;
    let step = (hi - lo) / ROOT_SCAN_POINTS as f64;
    let mut roots = Vec::new();
    let at = |i: usize| if i == ROOT_SCAN_POINTS { hi } else { lo + step * i as f64 };
    // The open interval: skip an endpoint where the function may be singular.
    let mut prev_r = at(0);
    let mut prev = profile.eval(prev_r);
    for i in 1..=ROOT_SCAN_POINTS {
        let r = at(i);
        let v = profile.eval(r);
        if !v.is_finite() || !prev.is_finite() {
            prev_r = r;
            prev = v;
            continue;
        }
        if v == 0.0 {
            if i < ROOT_SCAN_POINTS {
                roots.push(r);
            }
        } else if prev != 0.0 && (prev < 0.0) != (v < 0.0) {
            let positive_left = prev > 0.0;
            let (a, b, _) = bisect_predicate(prev_r, r, BISECTION_TOL, BISECTION_MAX_ITER, |x| {
                (profile.eval(x) > 0.0) == positive_left
            });
            roots.push(0.5 * (a + b));
        }
        prev_r = r;
        prev = v;
    }
    roots
}

/// Outcome of a sharpness check at a claimed radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub label: String,
    pub r_claimed: f64,
    pub pass: bool,
    /// Minimum of `J` over the samples in `(0, r_claimed)`; must be positive.
    pub left_min: f64,
    /// `|J(r_claimed)|`; must not exceed [`SHARPNESS_ROOT_TOL`].
    pub at_claim: f64,
    /// `J(r_claimed + SHARPNESS_RIGHT_OFFSET)`; must be negative.
    pub right_value: f64,
}

pub const SHARPNESS_ROOT_TOL: f64 = 1e-9;
pub const SHARPNESS_RIGHT_OFFSET: f64 = 1e-3;
const SHARPNESS_LEFT_SAMPLES: usize = 1000;

/// Checks that `J > 0` on `(0, r_claimed)`, `J(r_claimed) = 0` and `J < 0`
/// just to the right, i.e. that the witness stops being sense-preserving
/// exactly at the claimed radius.
pub fn sharpness_verify(profile: &JacobianProfile, r_claimed: f64) -> SharpnessReport {
    // samples r_claimed * k/(n+1), k = 1..=n, stay strictly inside
    let left_min = (1..=SHARPNESS_LEFT_SAMPLES)
        .map(|k| profile.eval(r_claimed * k as f64 / (SHARPNESS_LEFT_SAMPLES + 1) as f64))
        .fold(f64::INFINITY, f64::min);
    let at_claim = profile.eval(r_claimed).abs();
    let right_value = profile.eval(r_claimed + SHARPNESS_RIGHT_OFFSET);
    SharpnessReport {
        label: profile.label.clone(),
        r_claimed,
        pass: left_min > 0.0 && at_claim <= SHARPNESS_ROOT_TOL && right_value < 0.0,
        left_min,
        at_claim,
        right_value,
    }
}
