use harmonic_radius::class_checks::{c_h2_numeric, coeff_condition, lemma3_consequences, starlike_scan, GridSpec, Verdict};
use harmonic_radius::coeffseries::{convex_bounds, koebe_bounds};
use harmonic_radius::radius_solver::{radius_convex_closed, radius_koebe_closed, radius_uniform_closed};
use harmonic_radius::{CoefficientSeq, Complex64, HarmonicMap};
use proptest::prelude::*;

fn complex_with_modulus(modulus: f64, arg: f64) -> Complex64 {
    Complex64::from_polar(modulus, arg)
}

/// Coefficients `t_n * bound_n * e^{i arg}`, one pair per fraction from `n = 2`.
fn bounded_seq(
    bound: impl Fn(usize) -> (f64, f64),
    b1: Complex64,
    fractions: &[(f64, f64, f64, f64)],
) -> CoefficientSeq {
    let mut a = Vec::new();
    let mut b = vec![(1, b1)];
    for (k, &(ta, arg_a, tb, arg_b)) in fractions.iter().enumerate() {
        let n = k + 2;
        let (an, bn) = bound(n);
        a.push((n, complex_with_modulus(ta * an, arg_a)));
        b.push((n, complex_with_modulus(tb * bn, arg_b)));
    }
    CoefficientSeq::new(&a, &b, None).unwrap()
}

fn fractions() -> impl Strategy<Value = Vec<(f64, f64, f64, f64)>> {
    prop::collection::vec((0.0..=1.0, 0.0..6.3, 0.0..=1.0, 0.0..6.3), 1..25)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koebe_bounded_maps_dilated_to_the_radius_meet_the_coefficient_condition(fr in fractions()) {
        let seq = bounded_seq(|n| koebe_bounds(n).unwrap(), Complex64::new(0.0, 0.0), &fr);
        let r = radius_koebe_closed().radius;
        let rep = coeff_condition(&seq.dilated(r), 0.0).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Satisfied);
    }

    #[test]
    fn convex_bounded_maps_dilated_to_the_radius_meet_the_coefficient_condition(fr in fractions()) {
        let seq = bounded_seq(|n| convex_bounds(n).unwrap(), Complex64::new(0.0, 0.0), &fr);
        let rep = coeff_condition(&seq.dilated(radius_convex_closed().radius), 0.0).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Satisfied);
    }

    #[test]
    fn uniformly_bounded_maps_dilated_to_the_radius_meet_the_coefficient_condition(
        fr in fractions(),
        c in 0.25f64..4.0,
        b1 in 0.0f64..0.9,
        arg in 0.0f64..6.3,
    ) {
        let seq = bounded_seq(|_| (c / 2.0, c / 2.0), complex_with_modulus(b1, arg), &fr);
        let r = radius_uniform_closed(c, b1).unwrap().radius;
        let rep = coeff_condition(&seq.dilated(r), 0.0).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Satisfied);
    }

    #[test]
    fn coefficient_condition_implies_sampled_classes(
        fr in fractions(),
        b1 in 0.0f64..0.5,
        arg in 0.0f64..6.3,
        beta in 0.0f64..0.4,
        scale in 0.05f64..0.999,
    ) {
        let raw = bounded_seq(|_| (1.0, 1.0), complex_with_modulus(b1, arg), &fr);
        let grid = GridSpec::new(100, 32, 0.999);
        let target = 1.0 - beta;
        prop_assume!(b1 < target);
        // rescale n >= 2 so that |b1| + sum n(|a_n| + |b_n|) = |b1| + scale (target - |b1|)
        let weight: f64 = (2..=raw.truncation()).map(|n| n as f64 * (raw.a(n).norm() + raw.b(n).norm())).sum();
        prop_assume!(weight > 0.0);
        let k = scale * (target - b1) / weight;
        let a: Vec<_> = (2..=raw.truncation()).map(|n| (n, raw.a(n) * k)).collect();
        let mut b: Vec<_> = (2..=raw.truncation()).map(|n| (n, raw.b(n) * k)).collect();
        b.insert(0, (1, raw.b1()));
        let seq = CoefficientSeq::new(&a, &b, None).unwrap();
        prop_assert_eq!(coeff_condition(&seq, beta).unwrap().verdict, Verdict::Satisfied);
        prop_assert_eq!(lemma3_consequences(&seq, beta).unwrap().verdict, Verdict::Satisfied);
        let f = HarmonicMap::from_series(seq, "scaled");
        prop_assert_eq!(c_h2_numeric(&f, beta, &grid).unwrap().verdict, Verdict::Satisfied);
        prop_assert_eq!(starlike_scan(&f, &grid).unwrap().verdict, Verdict::Satisfied);
    }
}

#[test]
fn extremal_sections_dilated_to_the_radius_sit_near_the_boundary() {
    let r = radius_koebe_closed().radius;
    let k = harmonic_radius::extremal::harmonic_koebe().section(400, 400).unwrap();
    let rep = coeff_condition(k.series().unwrap(), 0.0).unwrap();
    assert_eq!(rep.verdict, Verdict::Violated);
    let rep = coeff_condition(&k.series().unwrap().dilated(r), 0.0).unwrap();
    assert_eq!(rep.verdict, Verdict::Satisfied);
    assert!(rep.margin < 1e-9, "{}", rep.margin);
}
