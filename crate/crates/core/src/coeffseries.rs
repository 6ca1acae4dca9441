//! Coefficient data for normalized harmonic maps and the weighted coefficient
//! sum that every radius computation reduces to.
//!
//! A map `f = h + conj(g)` with `h(z) = z + sum_{n>=2} a_n z^n` and
//! `g(z) = sum_{n>=1} b_n z^n` is described either by an explicit, truncated
//! [`CoefficientSeq`] or by a [`BoundFamily`] that bounds `|a_n|` and `|b_n|`
//! for every index. Both expose the dilated sum
//!
//! ```text
//! S(r) = |b_1| + sum_{n>=2} n (|a_n| + |b_n|) r^(n-1),   0 <= r < 1,
//! ```
//!
//! through the [`WeightedSum`] trait.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Explicit tail terms summed before the majorant is given up as infinite.
const MAX_TAIL_TERMS: usize = 1_000_000;

/// Bound on the coefficients beyond the stored truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailKind {
    /// The stored terms are the whole sequence.
    #[default]
    None,
    /// `|a_n| + |b_n| <= constant * n^degree` for every `n > truncation`.
    Polynomial { degree: f64, constant: f64 },
}

/// An explicit, finitely stored coefficient sequence.
///
/// `a_1 = 1` is implied and never stored. Indices beyond the truncation are
/// zero unless a [`TailKind::Polynomial`] bound is attached, in which case they
/// are unknown but majorized.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeq {
    // dense, indexed by n; a[0] = 0 and a[1] = 1 are fixed
    a: Vec<Complex64>,
    // dense, indexed by n; b[0] = 0
    b: Vec<Complex64>,
    truncation: usize,
    tail: TailKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqDocument {
    #[serde(default)]
    a: Vec<(i64, f64, f64)>,
    #[serde(default)]
    b: Vec<(i64, f64, f64)>,
    truncation: Option<i64>,
    #[serde(default)]
    tail: TailKind,
}

#[derive(Serialize)]
struct SeqDocumentOut {
    a: Vec<(usize, f64, f64)>,
    b: Vec<(usize, f64, f64)>,
    truncation: usize,
    #[serde(skip_serializing_if = "is_no_tail")]
    tail: TailKind,
}

fn is_no_tail(t: &TailKind) -> bool {
    matches!(t, TailKind::None)
}

fn check_indices(name: &str, entries: &[(usize, Complex64)], min: usize) -> Result<usize> {
    let mut last: Option<usize> = None;
    for &(n, c) in entries {
        if n < min {
            return Err(Error::InvalidSequence(format!(
                "{name}-coefficient index {n} is below the minimum index {min}"
            )));
        }
        if let Some(prev) = last {
            if n == prev {
                return Err(Error::InvalidSequence(format!("duplicate {name}-coefficient index {n}")));
            }
            if n < prev {
                return Err(Error::InvalidSequence(format!(
                    "{name}-coefficient indices must be strictly increasing ({prev} then {n})"
                )));
            }
        }
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidSequence(format!("{name}-coefficient {n} is not finite")));
        }
        last = Some(n);
    }
    Ok(last.unwrap_or(0))
}

impl CoefficientSeq {
    /// Builds a sequence from sparse `(n, value)` entries.
    ///
    /// `a` indices must be `>= 2`, `b` indices `>= 1`, both strictly
    /// increasing. `truncation` defaults to the largest index present and must
    /// not be smaller than it.
    pub fn new(a: &[(usize, Complex64)], b: &[(usize, Complex64)], truncation: Option<usize>) -> Result<Self> {
        let max_a = check_indices("a", a, 2)?;
        let max_b = check_indices("b", b, 1)?;
        let highest = max_a.max(max_b).max(1);
        let truncation = match truncation {
            Some(t) if t < highest => {
                return Err(Error::InvalidSequence(format!(
                    "truncation {t} is below the highest stored index {highest}"
                )))
            }
            Some(t) => t,
            None => highest,
        };
        let mut dense_a = vec![Complex64::new(0.0, 0.0); truncation + 1];
        let mut dense_b = vec![Complex64::new(0.0, 0.0); truncation + 1];
        dense_a[1] = Complex64::new(1.0, 0.0);
        for &(n, c) in a {
            dense_a[n] = c;
        }
        for &(n, c) in b {
            dense_b[n] = c;
        }
        Ok(Self { a: dense_a, b: dense_b, truncation, tail: TailKind::None })
    }

    /// The identity map `f(z) = z`.
    pub fn identity() -> Self {
        Self::new(&[], &[], None).expect("empty sequence is valid")
    }

    /// Builds a sequence from dense real coefficients: `a[k]` is `a_{k+2}` and
    /// `b[k]` is `b_{k+1}`.
    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let a: Vec<_> = a.iter().enumerate().map(|(k, &x)| (k + 2, Complex64::new(x, 0.0))).collect();
        let b: Vec<_> = b.iter().enumerate().map(|(k, &x)| (k + 1, Complex64::new(x, 0.0))).collect();
        Self::new(&a, &b, None)
    }

    /// Attaches a tail bound for indices beyond the truncation.
    pub fn with_tail(mut self, tail: TailKind) -> Result<Self> {
        if let TailKind::Polynomial { degree, constant } = tail {
            if !(degree.is_finite() && degree >= 0.0 && constant.is_finite() && constant >= 0.0) {
                return Err(Error::InvalidSequence(format!(
                    "polynomial tail needs finite degree >= 0 and constant >= 0 (got {degree}, {constant})"
                )));
            }
        }
        self.tail = tail;
        Ok(self)
    }

    /// Parses the JSON sequence document
    /// `{"a": [[n, re, im], ...], "b": [[n, re, im], ...], "truncation": N}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: SeqDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidSequence(format!("malformed sequence JSON: {e}")))?;
        let convert = |name: &str, raw: &[(i64, f64, f64)]| -> Result<Vec<(usize, Complex64)>> {
            raw.iter()
                .map(|&(n, re, im)| {
                    usize::try_from(n)
                        .map(|n| (n, Complex64::new(re, im)))
                        .map_err(|_| Error::InvalidSequence(format!("negative {name}-coefficient index {n}")))
                })
                .collect()
        };
        let a = convert("a", &doc.a)?;
        let b = convert("b", &doc.b)?;
        let truncation = match doc.truncation {
            Some(t) => Some(
                usize::try_from(t).map_err(|_| Error::InvalidSequence(format!("negative truncation {t}")))?,
            ),
            None => None,
        };
        Self::new(&a, &b, truncation)?.with_tail(doc.tail)
    }

    /// Serializes to the JSON sequence document, listing nonzero entries only.
    pub fn to_json_string(&self) -> String {
        let entries = |v: &[Complex64], from: usize| {
            (from..v.len()).filter(|&n| v[n] != Complex64::new(0.0, 0.0)).map(|n| (n, v[n].re, v[n].im)).collect()
        };
        let doc = SeqDocumentOut { a: entries(&self.a, 2), b: entries(&self.b, 1), truncation: self.truncation, tail: self.tail };
        serde_json::to_string(&doc).expect("sequence document serializes")
    }

    /// `a_n`; `a_1 = 1` and indices past the truncation read as zero.
    pub fn a(&self, n: usize) -> Complex64 {
        self.a.get(n).copied().unwrap_or_default()
    }

    /// `b_n`; indices past the truncation read as zero.
    pub fn b(&self, n: usize) -> Complex64 {
        self.b.get(n).copied().unwrap_or_default()
    }

    pub fn b1(&self) -> Complex64 {
        self.b(1)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn tail(&self) -> TailKind {
        self.tail
    }

    /// True when no coefficient with index `n >= 2` is nonzero.
    pub fn is_affine(&self) -> bool {
        (2..=self.truncation).all(|n| self.a(n).norm() == 0.0 && self.b(n).norm() == 0.0)
    }

    /// Dense coefficient slices indexed by `n` (entries 0 and, for `a`, 1 are
    /// the fixed normalization).
    pub(crate) fn dense(&self) -> (&[Complex64], &[Complex64]) {
        (&self.a, &self.b)
    }

    /// Coefficients multiplied by `r^(n-1)`, i.e. the sequence of `f(rz)/r`.
    pub fn dilated(&self, r: f64) -> Self {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut power = 1.0;
        for n in 1..=self.truncation {
            a[n] *= power;
            b[n] *= power;
            power *= r;
        }
        a[1] = Complex64::new(1.0, 0.0);
        // A polynomial tail C n^d stays a valid (loose) bound after dilation
        // by r <= 1.
        Self { a, b, truncation: self.truncation, tail: self.tail }
    }

    /// Keeps `a_k` for `k <= n` and `b_k` for `k <= m`.
    pub fn section(&self, n: usize, m: usize) -> Self {
        let keep = n.max(m).min(self.truncation).max(1);
        let mut a = vec![Complex64::new(0.0, 0.0); keep + 1];
        let mut b = vec![Complex64::new(0.0, 0.0); keep + 1];
        for k in 1..=keep {
            if k <= n {
                a[k] = self.a(k);
            }
            if k <= m {
                b[k] = self.b(k);
            }
        }
        a[1] = Complex64::new(1.0, 0.0);
        let unchanged = n >= self.truncation && m >= self.truncation;
        let tail = if unchanged { self.tail } else { TailKind::None };
        Self { a, b, truncation: keep, tail }
    }

    /// `|b_1| + sum_{n>=2} n (|a_n| + |b_n|)`, the value of `S` at `r = 1`.
    ///
    /// Only available for exactly stored sequences: a polynomial tail never
    /// has a finite majorant at `r = 1`.
    pub fn coefficient_sum(&self) -> Result<f64> {
        if let TailKind::Polynomial { .. } = self.tail {
            return Err(Error::Unsupported(
                "the coefficient sum at r = 1 cannot be majorized for a polynomial tail".into(),
            ));
        }
        Ok(self.stored_sum(1.0))
    }

    fn stored_sum(&self, r: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        acc.add(self.b(1).norm());
        let mut power = r;
        for n in 2..=self.truncation {
            acc.add(n as f64 * (self.a(n).norm() + self.b(n).norm()) * power);
            power *= r;
        }
        acc.value()
    }

    /// Majorant of `sum_{n>N} C n^(d+1) r^(n-1)`.
    fn tail_majorant(&self, r: f64) -> f64 {
        let TailKind::Polynomial { degree, constant } = self.tail else {
            return 0.0;
        };
        if constant == 0.0 || r == 0.0 {
            return 0.0;
        }
        let k = degree + 1.0;
        let term = |n: usize| (n as f64).powf(k) * r.powi(n as i32 - 1);
        // The term ratio r ((n+1)/n)^k decreases in n; once it is below one,
        // the remainder from n on is at most term(n)/(1 - ratio(n)). Sum
        // explicitly until that remainder is negligible.
        let mut explicit = CompensatedSum::new();
        let mut n = self.truncation + 1;
        loop {
            let t = term(n);
            let ratio = r * ((n as f64 + 1.0) / n as f64).powf(k);
            if ratio < 1.0 {
                let remainder = t / (1.0 - ratio);
                if remainder <= 1e-9 * explicit.value() || t == 0.0 {
                    explicit.add(remainder);
                    break;
                }
            }
            explicit.add(t);
            n += 1;
            if n - self.truncation > MAX_TAIL_TERMS {
                return f64::INFINITY;
            }
        }
        constant * explicit.value()
    }
}

/// A family of maps described by per-index coefficient bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundFamily {
    /// `|a_n| <= A_n`, `|b_n| <= B_n` with the harmonic Koebe coefficients.
    Koebe,
    /// `|a_n| <= (n+1)/2`, `|b_n| <= (n-1)/2`, the bounds for convex maps.
    Convex,
    /// `|a_n| + |b_n| <= c` for `n >= 2` together with `|b_1| = b1_abs`.
    Uniform { c: f64, b1_abs: f64 },
}

impl BoundFamily {
    pub fn uniform(c: f64, b1_abs: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::domain(format!("uniform bound c must be positive, got {c}")));
        }
        if !(0.0..1.0).contains(&b1_abs) {
            return Err(Error::domain(format!("|b1| must lie in [0, 1), got {b1_abs}")));
        }
        Ok(BoundFamily::Uniform { c, b1_abs })
    }

    /// Separate bounds `(bound on |a_n|, bound on |b_n|)`; `None` for the
    /// uniform family, which only bounds the sum.
    pub fn bounds(&self, n: usize) -> Result<Option<(f64, f64)>> {
        match self {
            BoundFamily::Koebe => koebe_bounds(n).map(Some),
            BoundFamily::Convex => convex_bounds(n).map(Some),
            BoundFamily::Uniform { .. } => Ok(None),
        }
    }

    /// Bound on `|a_n| + |b_n|` (for `n = 1`, the value `1 + |b_1|`).
    pub fn combined_bound(&self, n: usize) -> Result<f64> {
        if n < 1 {
            return Err(Error::domain("coefficient index must be at least 1"));
        }
        match self {
            BoundFamily::Uniform { c, b1_abs } => Ok(if n == 1 { 1.0 + b1_abs } else { *c }),
            _ => {
                let (a, b) = self.bounds(n)?.expect("koebe and convex carry separate bounds");
                Ok(a + b)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            BoundFamily::Koebe => "koebe".to_string(),
            BoundFamily::Convex => "convex".to_string(),
            BoundFamily::Uniform { c, b1_abs } => format!("uniform:{c},{b1_abs}"),
        }
    }
}

/// `(A_n, B_n) = ((2n+1)(n+1)/6, (2n-1)(n-1)/6)`, the coefficients of the
/// harmonic Koebe function.
pub fn koebe_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::domain("koebe_bounds needs n >= 1"));
    }
    let n = n as f64;
    Ok(((2.0 * n + 1.0) * (n + 1.0) / 6.0, (2.0 * n - 1.0) * (n - 1.0) / 6.0))
}

/// `((n+1)/2, (n-1)/2)`.
pub fn convex_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::domain("convex_bounds needs n >= 1"));
    }
    let n = n as f64;
    Ok(((n + 1.0) / 2.0, (n - 1.0) / 2.0))
}

/// `sum_{n>=1} n r^n = r/(1-r)^2`.
pub fn sum_n_pow(r: f64) -> f64 {
    r / ((1.0 - r) * (1.0 - r))
}

/// `sum_{n>=1} n^2 r^n = r(1+r)/(1-r)^3`.
pub fn sum_n2_pow(r: f64) -> f64 {
    r * (1.0 + r) / (1.0 - r).powi(3)
}

/// `sum_{n>=1} n^3 r^(n-1) = ((1-r)(1+2r) + 3r(1+r))/(1-r)^4`.
pub fn sum_n3_pow_shifted(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + 2.0 * r) + 3.0 * r * (1.0 + r)) / (1.0 - r).powi(4)
}

/// Value of `S(r)` together with the part contributed by a tail majorant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumEstimate {
    /// Upper bound on `S(r)`; includes `tail_bound`.
    pub value: f64,
    /// Majorant of the coefficients beyond the stored truncation.
    pub tail_bound: f64,
}

/// Anything that yields `S(r)` on `[0, 1)`.
pub trait WeightedSum {
    fn weighted_sum(&self, r: f64) -> Result<SumEstimate>;

    /// `S(0) = |b_1|`.
    fn b1_abs(&self) -> f64;

    fn describe(&self) -> String;
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(format!("weighted sum needs 0 <= r < 1, got {r}")))
    }
}

impl WeightedSum for CoefficientSeq {
    fn weighted_sum(&self, r: f64) -> Result<SumEstimate> {
        check_radius(r)?;
        let tail_bound = self.tail_majorant(r);
        Ok(SumEstimate { value: self.stored_sum(r) + tail_bound, tail_bound })
    }

    fn b1_abs(&self) -> f64 {
        self.b(1).norm()
    }

    fn describe(&self) -> String {
        format!("sequence(truncation={})", self.truncation)
    }
}

impl WeightedSum for BoundFamily {
    fn weighted_sum(&self, r: f64) -> Result<SumEstimate> {
        check_radius(r)?;
        let value = match *self {
            BoundFamily::Koebe => {
                // n (A_n + B_n) = n (2n^2 + 1)/3; the n = 1 term equals 1.
                let t1 = 1.0 / ((1.0 - r) * (1.0 - r));
                let t3 = sum_n3_pow_shifted(r);
                (2.0 * t3 + t1 - 3.0) / 3.0
            }
            BoundFamily::Convex => {
                let t1 = 1.0 / ((1.0 - r) * (1.0 - r));
                let t2 = (1.0 + r) / (1.0 - r).powi(3);
                let a_part = 0.5 * (t2 + t1) - 1.0;
                let b_part = 0.5 * (t2 - t1);
                a_part + b_part
            }
            BoundFamily::Uniform { c, b1_abs } => b1_abs + c * r * (2.0 - r) / ((1.0 - r) * (1.0 - r)),
        };
        Ok(SumEstimate { value, tail_bound: 0.0 })
    }

    fn b1_abs(&self) -> f64 {
        match self {
            BoundFamily::Uniform { b1_abs, .. } => *b1_abs,
            _ => 0.0,
        }
    }

    fn describe(&self) -> String {
        self.label()
    }
}
