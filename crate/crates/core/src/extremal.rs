//! Named extremal maps and sharpness witnesses.
//!
//! Every map here has a closed form for `h`, `g`, `h'`, `g'` and a
//! coefficient accessor, so it can be evaluated directly or expanded into a
//! series. The witnesses `F0`, `L0` and `f0` have real coefficients, which
//! makes their Jacobians on the positive real axis factor into rational
//! functions; those are exposed as `jacobian_*` functions and wrapped in
//! [`JacobianProfile`]s for root finding.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffseries::{self, convex_bounds, koebe_bounds, CoefficientSeq};
use crate::error::{Error, Result};
use crate::harmonic_map::{Evaluator, HarmonicMap, Parts};

/// `L` maps `|z| < r` onto a convex domain exactly for `r <= sqrt(2) - 1`.
pub const CONVEXITY_RADIUS_L: f64 = SQRT_2 - 1.0;

/// Univalence radius for bounded harmonic maps from an earlier estimate is
/// about `1/(RHO0_DENOMINATOR * M)`. Documented for comparison only.
pub const RHO0_DENOMINATOR: f64 = 11.105;

/// Labels accepted by [`by_label`].
pub const REGISTRY: [(&str, &str); 5] = [
    ("koebe", "harmonic Koebe function K = H + conj(G), dilatation z"),
    ("convex_L", "convex extremal L = M + conj(N)"),
    ("F0", "sharpness witness 2z - H - conj(G) for the Koebe bound family"),
    ("L0", "sharpness witness 2z - M - conj(N) for the convex bound family"),
    ("f0", "sharpness witness for the uniform bound |a_n| + |b_n| <= c (parameters c, |b1|)"),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extremal {
    /// `K = H + conj(G)`.
    Koebe,
    /// `L = M + conj(N)`.
    ConvexL,
    /// `F0`: `h = 2z - H`, `g = -G`.
    KoebeWitness,
    /// `L0`: `h = 2z - M`, `g = -N`.
    ConvexWitness,
    /// `f0`: `h = z - (c/2) z^2/(1-z)`, `g = -|b1| z - (c/2) z^2/(1-z)`.
    UniformWitness { c: f64, b1_abs: f64 },
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn koebe_parts(z: Complex64) -> Parts {
    let d = one() - z;
    let d3 = d * d * d;
    let d4 = d3 * d;
    let z2 = z * z;
    let z3 = z2 * z;
    Parts {
        h: (z - z2 / 2.0 + z3 / 6.0) / d3,
        g: (z2 / 2.0 + z3 / 6.0) / d3,
        dh: (one() + z) / d4,
        dg: z * (one() + z) / d4,
    }
}

fn convex_parts(z: Complex64) -> Parts {
    let d = one() - z;
    let d2 = d * d;
    let d3 = d2 * d;
    let p = z / d;
    let q = z / d2;
    let dp = one() / d2;
    let dq = (one() + z) / d3;
    Parts { h: (p + q) / 2.0, g: (p - q) / 2.0, dh: (dp + dq) / 2.0, dg: (dp - dq) / 2.0 }
}

impl Extremal {
    /// `h`, `g`, `h'`, `g'` at `z`, `|z| < 1`.
    pub fn parts(&self, z: Complex64) -> Parts {
        match *self {
            Extremal::Koebe => koebe_parts(z),
            Extremal::ConvexL => convex_parts(z),
            Extremal::KoebeWitness => {
                let k = koebe_parts(z);
                Parts { h: z * 2.0 - k.h, g: -k.g, dh: 2.0 - k.dh, dg: -k.dg }
            }
            Extremal::ConvexWitness => {
                let l = convex_parts(z);
                Parts { h: z * 2.0 - l.h, g: -l.g, dh: 2.0 - l.dh, dg: -l.dg }
            }
            Extremal::UniformWitness { c, b1_abs } => {
                let d = one() - z;
                let q = z * z / d;
                let dq = (z * 2.0 - z * z) / (d * d);
                Parts {
                    h: z - q * (c / 2.0),
                    g: -z * b1_abs - q * (c / 2.0),
                    dh: one() - dq * (c / 2.0),
                    dg: -dq * (c / 2.0) - b1_abs,
                }
            }
        }
    }

    /// `(a_n, b_n)` with `a_1 = 1`.
    pub fn coefficients(&self, n: usize) -> (Complex64, Complex64) {
        let re = |a: f64, b: f64| (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
        if n == 0 {
            return re(0.0, 0.0);
        }
        match *self {
            Extremal::Koebe => {
                let (a, b) = koebe_bounds(n).expect("n >= 1");
                re(a, b)
            }
            Extremal::ConvexL => {
                let (a, b) = convex_bounds(n).expect("n >= 1");
                re(a, -b)
            }
            Extremal::KoebeWitness => {
                let (a, b) = koebe_bounds(n).expect("n >= 1");
                if n == 1 {
                    re(1.0, 0.0)
                } else {
                    re(-a, -b)
                }
            }
            Extremal::ConvexWitness => {
                let (a, b) = convex_bounds(n).expect("n >= 1");
                if n == 1 {
                    re(1.0, 0.0)
                } else {
                    re(-a, b)
                }
            }
            Extremal::UniformWitness { c, b1_abs } => {
                if n == 1 {
                    re(1.0, -b1_abs)
                } else {
                    re(-c / 2.0, -c / 2.0)
                }
            }
        }
    }
}

fn named(e: Extremal, label: &str) -> HarmonicMap {
    HarmonicMap::from_closed_form(Evaluator::Named(e), label)
}

/// The harmonic Koebe function `K`.
pub fn harmonic_koebe() -> HarmonicMap {
    named(Extremal::Koebe, "koebe")
}

/// The convex extremal `L = M + conj(N)`.
pub fn convex_extremal() -> HarmonicMap {
    named(Extremal::ConvexL, "convex_L")
}

/// `F0 = z - sum A_n z^n - conj(sum B_n z^n)`.
pub fn koebe_witness() -> HarmonicMap {
    named(Extremal::KoebeWitness, "F0")
}

/// `L0 = z - sum (n+1)/2 z^n + conj(sum (n-1)/2 z^n)`.
pub fn convex_witness() -> HarmonicMap {
    named(Extremal::ConvexWitness, "L0")
}

/// `f0` for the uniform bound `c` and `|b1| = b1_abs`; `g0'(0) = -b1_abs`.
pub fn uniform_witness(c: f64, b1_abs: f64) -> Result<HarmonicMap> {
    check_uniform(c, b1_abs)?;
    Ok(named(Extremal::UniformWitness { c, b1_abs }, "f0"))
}

fn check_uniform(c: f64, b1_abs: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    if !(0.0..1.0).contains(&b1_abs) {
        return Err(Error::domain(format!("|b1| must lie in [0, 1), got {b1_abs}")));
    }
    Ok(())
}

/// Looks up a named extremal. `f0` uses `c = 1`, `|b1| = 0`; call
/// [`uniform_witness`] for other parameters.
pub fn by_label(label: &str) -> Option<HarmonicMap> {
    match label {
        "koebe" => Some(harmonic_koebe()),
        "convex_L" => Some(convex_extremal()),
        "F0" => Some(koebe_witness()),
        "L0" => Some(convex_witness()),
        "f0" => Some(uniform_witness(1.0, 0.0).expect("valid parameters")),
        _ => None,
    }
}

/// `J_{F0}(r) = (-1 + 7r - 6r^2 + 2r^3)(1 - 10r + 11r^2 - 8r^3 + 2r^4)/(-1 + r)^7`.
pub fn jacobian_koebe_witness(r: f64) -> f64 {
    let cubic = -1.0 + r * (7.0 + r * (-6.0 + 2.0 * r));
    let quartic = 1.0 + r * (-10.0 + r * (11.0 + r * (-8.0 + 2.0 * r)));
    // (-1 + r)^7 = -(1 - r)^7
    -(cubic * quartic) / (1.0 - r).powi(7)
}

/// `J_{L0}(r) = (2 - (1+r)/(1-r)^3)(2 - 1/(1-r)^2)`.
pub fn jacobian_convex_witness(r: f64) -> f64 {
    let d = 1.0 - r;
    (2.0 - (1.0 + r) / (d * d * d)) * (2.0 - 1.0 / (d * d))
}

/// Fully factored form of `J_{L0}`:
/// `2/(1-r)^5 (2(1-r)^3 - (1+r)) (r - 1 - sqrt2/2)(r - 1 + sqrt2/2)`.
pub fn jacobian_convex_witness_factored(r: f64) -> f64 {
    let d = 1.0 - r;
    let h = SQRT_2 / 2.0;
    2.0 / d.powi(5) * (2.0 * d * d * d - (1.0 + r)) * (r - 1.0 - h) * (r - 1.0 + h)
}

/// `J_{f0}(r) = (1 + |b1|)(1 + c - |b1| - c/(1-r)^2)`.
pub fn jacobian_uniform_witness(r: f64, c: f64, b1_abs: f64) -> f64 {
    (1.0 + b1_abs) * (1.0 + c - b1_abs - c / ((1.0 - r) * (1.0 - r)))
}

/// Closed forms of the three power sums used to evaluate the bound families:
/// `(sum n r^n, sum n^2 r^n, sum n^3 r^(n-1))`, all over `n >= 1`.
pub fn series_identities(r: f64) -> Result<(f64, f64, f64)> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("series identities need 0 < r < 1, got {r}")));
    }
    Ok((coeffseries::sum_n_pow(r), coeffseries::sum_n2_pow(r), coeffseries::sum_n3_pow_shifted(r)))
}

/// `z + (e^{i theta}/n) z^n`, or with `anti` set, `z + (e^{i theta}/n) conj(z^n)`.
/// These sit exactly on the boundary of the coefficient condition.
pub fn lemma_boundary_example(n: usize, theta: f64, anti: bool) -> Result<HarmonicMap> {
    if n < 2 {
        return Err(Error::domain(format!("boundary example needs n >= 2, got {n}")));
    }
    let coeff = Complex64::from_polar(1.0 / n as f64, theta);
    let seq = if anti {
        CoefficientSeq::new(&[], &[(n, coeff)], None)?
    } else {
        CoefficientSeq::new(&[(n, coeff)], &[], None)?
    };
    let kind = if anti { "anti" } else { "analytic" };
    Ok(HarmonicMap::from_series(seq, format!("boundary({n},{theta},{kind})")))
}

/// A real function `r -> J(r)` on an interval of `(0, 1)`.
#[derive(Clone)]
pub struct JacobianProfile {
    pub label: String,
    pub interval: (f64, f64),
    /// `(c, |b1|)` for the uniform witness.
    pub params: Option<(f64, f64)>,
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for JacobianProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JacobianProfile")
            .field("label", &self.label)
            .field("interval", &self.interval)
            .field("params", &self.params)
            .finish()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSample {
    pub r: f64,
    #[serde(rename = "J")]
    pub j: f64,
}

impl JacobianProfile {
    pub fn new<F>(label: impl Into<String>, interval: (f64, f64), evaluator: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { label: label.into(), interval, params: None, evaluator: Arc::new(evaluator) }
    }

    pub fn koebe_witness() -> Self {
        Self::new("F0", (0.0, 1.0), jacobian_koebe_witness)
    }

    pub fn convex_witness() -> Self {
        Self::new("L0", (0.0, 1.0), jacobian_convex_witness)
    }

    pub fn uniform_witness(c: f64, b1_abs: f64) -> Result<Self> {
        check_uniform(c, b1_abs)?;
        let mut p = Self::new("f0", (0.0, 1.0), move |r| jacobian_uniform_witness(r, c, b1_abs));
        p.params = Some((c, b1_abs));
        Ok(p)
    }

    /// `r -> J_f(r)` along the positive real axis, within the map's
    /// evaluation limit.
    pub fn from_map(map: &HarmonicMap) -> Self {
        let limit = map.evaluation_limit().min(1.0);
        let m = map.clone();
        Self::new(map.label().to_string(), (0.0, limit), move |r| {
            m.jacobian(Complex64::new(r, 0.0)).unwrap_or(f64::NAN)
        })
    }

    /// Same function on a narrower interval.
    pub fn restricted(&self, lo: f64, hi: f64) -> Self {
        Self { interval: (lo, hi), ..self.clone() }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.evaluator)(r)
    }

    /// `steps + 1` uniformly spaced samples on `[lo, hi]`.
    pub fn sample(&self, lo: f64, hi: f64, steps: usize) -> Vec<ProfileSample> {
        let steps = steps.max(1);
        (0..=steps)
            .map(|i| {
                let r = if i == steps { hi } else { lo + (hi - lo) * i as f64 / steps as f64 };
                ProfileSample { r, j: self.eval(r) }
            })
            .collect()
    }
}
