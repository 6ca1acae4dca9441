//! Membership tests for the close-to-convex class defined by
//! `|f_z - 1| < 1 - beta - |f_zbar|`, by coefficient inequalities and by
//! sampling.
//!
//! Sampled checks only ever certify a property on the sampled set; the
//! attached [`SampleSet`] says which one. Reports carry the minimum slack of
//! the defining inequality and the point or index where it is attained.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffseries::{CoefficientSeq, TailKind};
use crate::error::{Error, Result};
use crate::harmonic_map::{HarmonicMap, EPS_EVAL};
use crate::numeric::CompensatedSum;

/// Margins within this distance of zero count as satisfied, with the
/// boundary flag set.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Two samples are a range collision when their images are this close.
pub const COLLISION_TOL: f64 = 1e-9;
/// `|f(z)|` below this makes the starlikeness quotient meaningless.
const ZERO_FLOOR: f64 = 1e-12;
pub const MAX_INJECTIVITY_RESOLUTION: usize = 512;
const NEWTON_MAX_ITER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Point { re: f64, im: f64 },
    Index { n: usize },
    /// Two distinct points with (numerically) equal images.
    Pair { z1: (f64, f64), z2: (f64, f64) },
}

impl Witness {
    fn point(z: Complex64) -> Self {
        Witness::Point { re: z.re, im: z.im }
    }
}

/// Polar sampling grid on `0 < |z| <= r_max`.
///
/// Half of the radii are uniform on `(0, r_max/2]`; the other half approach
/// `r_max` with geometrically shrinking gaps, ending at `r_max` itself.
/// Angles are uniform starting at `theta = 0`, so the positive real axis is
/// always sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub r_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { radial: 200, angular: 64, r_max: 1.0 - EPS_EVAL }
    }
}

impl GridSpec {
    pub fn new(radial: usize, angular: usize, r_max: f64) -> Self {
        Self { radial, angular, r_max }
    }

    pub fn radii(&self) -> Vec<f64> {
        let n = self.radial.max(1);
        let r = self.r_max;
        if n == 1 {
            return vec![r];
        }
        let n_lin = n / 2;
        let n_geo = n - n_lin;
        let mut out: Vec<f64> = (1..=n_lin).map(|k| 0.5 * r * k as f64 / n_lin as f64).collect();
        if n_geo > 1 {
            // gaps (r/2) q^j, j = 1..n_geo-1, the last one 1e-3 * r/2
            let q = 1e-3f64.powf(1.0 / (n_geo - 1) as f64);
            out.extend((1..n_geo).map(|j| r - 0.5 * r * q.powi(j as i32)));
        }
        out.push(r);
        out
    }

    pub fn points(&self) -> Vec<Complex64> {
        let angles = self.angular.max(1);
        let mut pts = Vec::with_capacity(self.radial * angles);
        for rho in self.radii() {
            for k in 0..angles {
                pts.push(Complex64::from_polar(rho, TAU * k as f64 / angles as f64));
            }
        }
        pts
    }
}

/// What a report's margin was minimized over.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleSet {
    Coefficients { truncation: usize },
    Polar(GridSpec),
    Square { resolution: usize, r: f64, pitch: f64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginPart {
    pub name: String,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub check: String,
    pub verdict: Verdict,
    /// Minimum slack of the defining inequality over the sample set.
    pub margin: f64,
    /// The margin is within [`BOUNDARY_TOL`] of zero.
    pub boundary: bool,
    pub witness: Option<Witness>,
    pub samples: SampleSet,
    /// Per-inequality margins when a check combines several.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<MarginPart>,
}

fn classify(margin: f64) -> (Verdict, bool) {
    if margin.abs() <= BOUNDARY_TOL {
        (Verdict::Satisfied, true)
    } else if margin > 0.0 {
        (Verdict::Satisfied, false)
    } else {
        (Verdict::Violated, false)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::domain(format!("beta must lie in [0, 1), got {beta}")))
    }
}

fn report(check: &str, margin: f64, witness: Option<Witness>, samples: SampleSet) -> MembershipReport {
    let (verdict, boundary) = classify(margin);
    MembershipReport {
        check: check.to_string(),
        verdict,
        margin,
        boundary,
        witness,
        samples,
        parts: Vec::new(),
    }
}

/// The coefficient condition `|b1| + sum_{n>=2} n(|a_n| + |b_n|) <= 1 - beta`.
///
/// Requires `|b1| < 1 - beta` and an exactly stored sequence.
pub fn coeff_condition(seq: &CoefficientSeq, beta: f64) -> Result<MembershipReport> {
    check_beta(beta)?;
    let target = 1.0 - beta;
    let b1 = seq.b1().norm();
    if b1 >= target {
        return Err(Error::Precondition(format!("|b1| = {b1} must be below 1 - beta = {target}")));
    }
    let total = seq.coefficient_sum()?;
    let margin = target - total;
    // index at which the running sum first exceeds the target
    let mut witness = None;
    if margin < -BOUNDARY_TOL {
        let mut acc = CompensatedSum::new();
        acc.add(b1);
        for n in 2..=seq.truncation() {
            acc.add(n as f64 * (seq.a(n).norm() + seq.b(n).norm()));
            if acc.value() > target + BOUNDARY_TOL {
                witness = Some(Witness::Index { n });
                break;
            }
        }
    }
    Ok(report("coeff_condition", margin, witness, SampleSet::Coefficients { truncation: seq.truncation() }))
}

/// Samples `1 - beta - |f_zbar(z)| - |f_z(z) - 1|` on a polar grid.
pub fn c_h2_numeric(f: &HarmonicMap, beta: f64, grid: &GridSpec) -> Result<MembershipReport> {
    check_beta(beta)?;
    let mut margin = f64::INFINITY;
    let mut at = None;
    for z in grid.points() {
        let (fz, fzbar) = f.wirtinger(z)?;
        let slack = 1.0 - beta - fzbar.norm() - (fz - 1.0).norm();
        if slack < margin {
            margin = slack;
            at = Some(z);
        }
    }
    Ok(report("c_h2", margin, at.map(Witness::point), SampleSet::Polar(*grid)))
}

/// Samples `d/dtheta arg f(rho e^{i theta}) = Re[(z h' - conj(z g'))/f]` on a
/// polar grid with `r_max = r`.
pub fn starlike_scan(f: &HarmonicMap, grid: &GridSpec) -> Result<MembershipReport> {
    let mut margin = f64::INFINITY;
    let mut at = None;
    for z in grid.points() {
        let p = f.parts(z)?;
        let value = p.h + p.g.conj();
        if value.norm() < ZERO_FLOOR {
            return Err(Error::Singularity(format!("f vanishes at z = {z}")));
        }
        let q = ((z * p.dh - (z * p.dg).conj()) / value).re;
        if q < margin {
            margin = q;
            at = Some(z);
        }
    }
    Ok(report("starlike", margin, at.map(Witness::point), SampleSet::Polar(*grid)))
}

/// Solves `f(z) = target` by Newton's method on the real 2x2 system, starting
/// from `start`. Returns the solution if it converges inside `|z| <= r`.
fn newton_preimage(f: &HarmonicMap, target: Complex64, start: Complex64, r: f64) -> Option<(Complex64, f64)> {
    let mut z = start;
    for _ in 0..NEWTON_MAX_ITER {
        let p = f.parts(z).ok()?;
        let e = p.h + p.g.conj() - target;
        if e.norm() <= 1e-14 * target.norm().max(1.0) {
            break;
        }
        let jac = p.dh.norm_sqr() - p.dg.norm_sqr();
        if jac.abs() < 1e-300 {
            return None;
        }
        // h' dz + conj(g') conj(dz) = e
        let dz = (p.dh.conj() * e - p.dg.conj() * e.conj()) / jac;
        z -= dz;
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > r * (1.0 + 1e-12) {
            return None;
        }
    }
    let residual = (f.eval(z).ok()? - target).norm();
    Some((z, residual))
}

/// Searches for two points of `|z| <= r` more than two grid pitches apart
/// whose images agree to [`COLLISION_TOL`].
///
/// Samples `f` on a `resolution x resolution` square grid clipped to the
/// disk. Pairs whose images fall within `0.75 * L * pitch` of each other
/// (`L` the largest `|h'| + |g'|` on the grid, so every point of a doubly
/// covered region has such a partner) are refined by solving
/// `f(z) = f(p)` with Newton's method from the partner sample. A converged
/// solution far from `p` is a collision and the verdict is `Violated`;
/// otherwise the result is `Inconclusive`, since sampling cannot prove
/// injectivity. The margin is the smallest image distance seen among such
/// pairs minus the collision tolerance.
pub fn injectivity_oracle(f: &HarmonicMap, r: f64, resolution: usize) -> Result<MembershipReport> {
    if !(2..=MAX_INJECTIVITY_RESOLUTION).contains(&resolution) {
        return Err(Error::domain(format!(
            "resolution must lie in [2, {MAX_INJECTIVITY_RESOLUTION}], got {resolution}"
        )));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let pitch = 2.0 * r / (resolution - 1) as f64;
    let mut domain = Vec::new();
    let mut image = Vec::new();
    let mut lipschitz: f64 = 0.0;
    for i in 0..resolution {
        for j in 0..resolution {
            let z = Complex64::new(-r + pitch * i as f64, -r + pitch * j as f64);
            if z.norm() > r {
                continue;
            }
            let p = f.parts(z)?;
            lipschitz = lipschitz.max(p.dh.norm() + p.dg.norm());
            domain.push(z);
            image.push(p.h + p.g.conj());
        }
    }
    let samples = SampleSet::Square { resolution, r, pitch, samples: domain.len() };
    let cell = (0.75 * lipschitz * pitch).max(f64::MIN_POSITIVE);
    let key = |w: Complex64| ((w.re / cell).floor() as i64, (w.im / cell).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (idx, &w) in image.iter().enumerate() {
        buckets.entry(key(w)).or_default().push(idx);
    }

    let min_separation = 2.0 * pitch;
    let mut closest = f64::INFINITY;
    for p in 0..domain.len() {
        let (kx, ky) = key(image[p]);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = buckets.get(&(kx + dx, ky + dy)) else { continue };
                for &q in bucket {
                    if q <= p || (domain[p] - domain[q]).norm() <= min_separation {
                        continue;
                    }
                    let gap = (image[p] - image[q]).norm();
                    if gap >= cell {
                        continue;
                    }
                    closest = closest.min(gap);
                    if gap < COLLISION_TOL {
                        return Ok(collision(domain[p], domain[q], gap, samples));
                    }
                    if let Some((z, residual)) = newton_preimage(f, image[p], domain[q], r) {
                        if (z - domain[p]).norm() > min_separation {
                            closest = closest.min(residual);
                            if residual < COLLISION_TOL {
                                return Ok(collision(domain[p], z, residual, samples));
                            }
                        }
                    }
                }
            }
        }
    }
    let margin = if closest.is_finite() { closest - COLLISION_TOL } else { cell - COLLISION_TOL };
    Ok(MembershipReport {
        check: "injectivity".to_string(),
        verdict: Verdict::Inconclusive,
        margin,
        boundary: false,
        witness: None,
        samples,
        parts: Vec::new(),
    })
}

fn collision(z1: Complex64, z2: Complex64, gap: f64, samples: SampleSet) -> MembershipReport {
    MembershipReport {
        check: "injectivity".to_string(),
        verdict: Verdict::Violated,
        margin: gap - COLLISION_TOL,
        boundary: false,
        witness: Some(Witness::Pair { z1: (z1.re, z1.im), z2: (z2.re, z2.im) }),
        samples,
        parts: Vec::new(),
    }
}

/// Coefficient consequences of membership in the class:
///
/// - `n ||a_n| - |b_n|| <= 1 - beta` for `n >= 2`, checked when `b1 = 0`;
/// - `sum_{n>=2} n^2 (|a_n|^2 + |b_n|^2) <= (1 - beta)^2 - |b1|^2`.
///
/// Margins are `(1 - beta) - n ||a_n| - |b_n||` (minimized over the stored
/// indices, `1 - beta` when none) and `(1 - beta)^2 - |b1|^2 - sum`.
pub fn lemma3_consequences(seq: &CoefficientSeq, beta: f64) -> Result<MembershipReport> {
    check_beta(beta)?;
    if let TailKind::Polynomial { .. } = seq.tail() {
        return Err(Error::Unsupported("coefficient consequences need an exactly stored sequence".into()));
    }
    let target = 1.0 - beta;
    let b1 = seq.b1().norm();
    let mut parts = Vec::new();
    let mut witness = None;
    let mut margin = f64::INFINITY;

    if b1 == 0.0 {
        let mut part_b = target;
        let mut worst = None;
        for n in 2..=seq.truncation() {
            let slack = target - n as f64 * (seq.a(n).norm() - seq.b(n).norm()).abs();
            if slack < part_b {
                part_b = slack;
                worst = Some(n);
            }
        }
        parts.push(MarginPart { name: "difference_bound".into(), margin: part_b });
        margin = part_b;
        if part_b < -BOUNDARY_TOL {
            witness = worst.map(|n| Witness::Index { n });
        }
    }

    let bound = target * target - b1 * b1;
    let mut acc = CompensatedSum::new();
    let mut first_excess = None;
    for n in 2..=seq.truncation() {
        let n_f = n as f64;
        acc.add(n_f * n_f * (seq.a(n).norm_sqr() + seq.b(n).norm_sqr()));
        if first_excess.is_none() && acc.value() > bound + BOUNDARY_TOL {
            first_excess = Some(n);
        }
    }
    let part_c = bound - acc.value();
    parts.push(MarginPart { name: "square_sum_bound".into(), margin: part_c });
    if part_c < margin {
        margin = part_c;
        if part_c < -BOUNDARY_TOL {
            witness = first_excess.map(|n| Witness::Index { n });
        }
    }

    let mut rep = report("lemma3", margin, witness, SampleSet::Coefficients { truncation: seq.truncation() });
    rep.parts = parts;
    Ok(rep)
}
