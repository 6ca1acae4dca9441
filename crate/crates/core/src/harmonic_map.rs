//! Harmonic maps `f = h + conj(g)` on the unit disk.
//!
//! A map is backed either by an explicit coefficient sequence or by a named
//! closed-form evaluator with hand-coded `h`, `g`, `h'` and `g'`. Derivatives
//! of series-backed maps come from the differentiated series.

use std::fmt;

use num_complex::Complex64;

use crate::coeffseries::CoefficientSeq;
use crate::error::{Error, Result};
use crate::extremal::Extremal;

/// Series-backed maps refuse points with `|z| > 1 - EPS_EVAL`.
pub const EPS_EVAL: f64 = 1e-3;

/// Slack on the evaluation limit so that grid points built as
/// `rho * e^{i theta}` with `rho = 1 - EPS_EVAL` are accepted.
const LIMIT_SLACK: f64 = 1e-12;

/// `|h'(z)|` below this is treated as a zero of `h'`.
const H_PRIME_FLOOR: f64 = 1e-14;

/// `h`, `g` and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parts {
    pub h: Complex64,
    pub g: Complex64,
    pub dh: Complex64,
    pub dg: Complex64,
}

/// A user-supplied closed form. Carries no coefficients, so sections are
/// unavailable.
#[derive(Clone, Copy)]
pub struct CustomEvaluator {
    pub name: &'static str,
    pub h: fn(Complex64) -> Complex64,
    pub g: fn(Complex64) -> Complex64,
    pub dh: fn(Complex64) -> Complex64,
    pub dg: fn(Complex64) -> Complex64,
}

impl fmt::Debug for CustomEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomEvaluator").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Evaluator {
    Named(Extremal),
    Custom(CustomEvaluator),
}

/// A closed-form map precomposed with the dilation `z -> f(scale z)/scale`.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub evaluator: Evaluator,
    pub scale: f64,
}

impl ClosedForm {
    fn parts(&self, z: Complex64) -> Result<Parts> {
        let w = z * self.scale;
        if w.norm() >= 1.0 {
            return Err(Error::EvaluationDomain { modulus: z.norm(), limit: 1.0 / self.scale });
        }
        let raw = match self.evaluator {
            Evaluator::Named(e) => e.parts(w),
            Evaluator::Custom(c) => Parts { h: (c.h)(w), g: (c.g)(w), dh: (c.dh)(w), dg: (c.dg)(w) },
        };
        Ok(Parts { h: raw.h / self.scale, g: raw.g / self.scale, dh: raw.dh, dg: raw.dg })
    }

    fn coefficients(&self, n: usize) -> Option<(Complex64, Complex64)> {
        match self.evaluator {
            Evaluator::Named(e) => {
                let (a, b) = e.coefficients(n);
                let factor = self.scale.powi(n as i32 - 1);
                Some((a * factor, b * factor))
            }
            Evaluator::Custom(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Backing {
    Series(CoefficientSeq),
    ClosedForm(ClosedForm),
}

#[derive(Debug, Clone)]
pub struct HarmonicMap {
    backing: Backing,
    label: String,
}

/// Evaluates `sum_{n>=1} c_n z^n` and its derivative by Horner's rule.
fn series_and_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let top = coeffs.len().saturating_sub(1);
    if top == 0 {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let mut value = coeffs[top];
    let mut deriv = coeffs[top] * top as f64;
    for n in (1..top).rev() {
        value = value * z + coeffs[n];
        deriv = deriv * z + coeffs[n] * n as f64;
    }
    (value * z, deriv)
}

impl HarmonicMap {
    pub fn from_series(seq: CoefficientSeq, label: impl Into<String>) -> Self {
        Self { backing: Backing::Series(seq), label: label.into() }
    }

    pub fn from_closed_form(evaluator: Evaluator, label: impl Into<String>) -> Self {
        Self { backing: Backing::ClosedForm(ClosedForm { evaluator, scale: 1.0 }), label: label.into() }
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self::from_series(CoefficientSeq::identity(), "identity")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    /// The stored sequence of a series-backed map.
    pub fn series(&self) -> Option<&CoefficientSeq> {
        match &self.backing {
            Backing::Series(s) => Some(s),
            Backing::ClosedForm(_) => None,
        }
    }

    /// `(a_n, b_n)` of the map, when coefficients are known.
    pub fn coefficients(&self, n: usize) -> Option<(Complex64, Complex64)> {
        match &self.backing {
            Backing::Series(s) => Some((s.a(n), s.b(n))),
            Backing::ClosedForm(c) => c.coefficients(n),
        }
    }

    /// Largest `|z|` at which the map may be evaluated.
    pub fn evaluation_limit(&self) -> f64 {
        match &self.backing {
            Backing::Series(_) => 1.0 - EPS_EVAL,
            Backing::ClosedForm(c) => 1.0 / c.scale,
        }
    }

    pub fn parts(&self, z: Complex64) -> Result<Parts> {
        match &self.backing {
            Backing::Series(seq) => {
                let modulus = z.norm();
                if modulus > 1.0 - EPS_EVAL + LIMIT_SLACK {
                    return Err(Error::EvaluationDomain { modulus, limit: 1.0 - EPS_EVAL });
                }
                let (a, b) = seq.dense();
                let (h, dh) = series_and_derivative(a, z);
                let (g, dg) = series_and_derivative(b, z);
                Ok(Parts { h, g, dh, dg })
            }
            Backing::ClosedForm(c) => c.parts(z),
        }
    }

    /// `f(z) = h(z) + conj(g(z))`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let p = self.parts(z)?;
        Ok(p.h + p.g.conj())
    }

    /// `(f_z, f_zbar) = (h'(z), conj(g'(z)))`.
    pub fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let p = self.parts(z)?;
        Ok((p.dh, p.dg.conj()))
    }

    /// `J_f(z) = |h'(z)|^2 - |g'(z)|^2`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let p = self.parts(z)?;
        Ok(p.dh.norm_sqr() - p.dg.norm_sqr())
    }

    /// `omega(z) = g'(z)/h'(z)`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let p = self.parts(z)?;
        if p.dh.norm() <= H_PRIME_FLOOR {
            return Err(Error::Singularity(format!("h' vanishes at z = {z}")));
        }
        Ok(p.dg / p.dh)
    }

    /// `f_r(z) = f(rz)/r` for `0 < r <= 1`.
    pub fn dilate(&self, r: f64) -> Result<HarmonicMap> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::domain(format!("dilation factor must lie in (0, 1], got {r}")));
        }
        let backing = match &self.backing {
            Backing::Series(seq) => Backing::Series(seq.dilated(r)),
            Backing::ClosedForm(c) => Backing::ClosedForm(ClosedForm { evaluator: c.evaluator, scale: c.scale * r }),
        };
        let label = if r == 1.0 { self.label.clone() } else { format!("{}@r={r}", self.label) };
        Ok(HarmonicMap { backing, label })
    }

    /// The section `h_n + conj(g_m)`.
    ///
    /// Closed-form maps with a coefficient accessor are expanded into a
    /// series; custom closed forms have none and are rejected.
    pub fn section(&self, n: usize, m: usize) -> Result<HarmonicMap> {
        if n < 1 {
            return Err(Error::domain("section needs n >= 1"));
        }
        let seq = match &self.backing {
            Backing::Series(seq) => seq.section(n, m),
            Backing::ClosedForm(c) => {
                if c.coefficients(1).is_none() {
                    return Err(Error::Unsupported(format!("map '{}' has no stored coefficients", self.label)));
                }
                let a: Vec<_> = (2..=n).map(|k| (k, c.coefficients(k).expect("checked").0)).collect();
                let b: Vec<_> = (1..=m).map(|k| (k, c.coefficients(k).expect("checked").1)).collect();
                CoefficientSeq::new(&a, &b, Some(n.max(m)))?
            }
        };
        Ok(HarmonicMap::from_series(seq, format!("{}[{n},{m}]", self.label)))
    }

    /// Maximum deviation from `h(0) = 0`, `h'(0) = 1`, `g(0) = 0`.
    pub fn normalization_defect(&self) -> Result<f64> {
        let p = self.parts(Complex64::new(0.0, 0.0))?;
        Ok(p.h.norm().max((p.dh - 1.0).norm()).max(p.g.norm()))
    }
}
