//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or overruns its time budget.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use harmonic_radius::bloch;
use harmonic_radius::class_checks::{
    c_h2_numeric, coeff_condition, injectivity_oracle, lemma3_consequences, starlike_scan, GridSpec, Verdict,
};
use harmonic_radius::extremal::{self, JacobianProfile};
use harmonic_radius::radius_solver::{
    convex_cubic, jacobian_roots, koebe_quadratic, radius_bisection, radius_convex_closed, radius_koebe_closed,
    radius_uniform_closed,
};
use harmonic_radius::{BoundFamily, CoefficientSeq, Complex64, HarmonicMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (u32, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok_or<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn criterion_1() -> Outcome {
    let closed = radius_koebe_closed();
    let bisect = ok_or(radius_bisection(&BoundFamily::Koebe, 0.0), "bisection")?;
    for (name, r) in [("closed", closed.radius), ("bisection", bisect.radius)] {
        ensure((r - 0.112903).abs() < 1e-6, || format!("{name} radius {r}"))?;
    }
    let residual = koebe_quadratic(closed.radius).abs();
    ensure(residual <= 1e-12, || format!("quadratic residual {residual:e}"))?;
    Ok(format!("closed {:.9}, bisection {:.9}, residual {residual:.1e}", closed.radius, bisect.radius))
}

fn criterion_2() -> Outcome {
    let closed = radius_convex_closed();
    let bisect = ok_or(radius_bisection(&BoundFamily::Convex, 0.0), "bisection")?;
    for (name, r) in [("closed", closed.radius), ("bisection", bisect.radius)] {
        ensure((r - 0.164878).abs() < 1e-6, || format!("{name} radius {r}"))?;
    }
    let residual = convex_cubic(closed.radius).abs();
    ensure(residual <= 1e-12, || format!("cubic residual {residual:e}"))?;
    Ok(format!("closed {:.9}, bisection {:.9}, residual {residual:.1e}", closed.radius, bisect.radius))
}

fn roots_match(found: &[f64], expected: &[f64]) -> Result<(), String> {
    ensure(found.len() == expected.len(), || format!("roots {found:?}, expected {expected:?}"))?;
    for (r, e) in found.iter().zip(expected) {
        ensure((r - e).abs() < 1e-6, || format!("root {r} vs {e}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let profile = JacobianProfile::koebe_witness().restricted(0.0, 0.25);
    let roots = jacobian_roots(&profile);
    roots_match(&roots, &[0.112903, 0.164878])?;
    let (lo, hi) = (0.1140, 0.1638);
    for k in 0..100 {
        let r = lo + (hi - lo) * (k as f64 + 0.5) / 100.0;
        let j = profile.eval(r);
        ensure(j < 0.0, || format!("J_F0({r}) = {j} is not negative"))?;
    }
    Ok(format!("roots {roots:?}, J < 0 on 100 samples of ({lo}, {hi})"))
}

fn criterion_4() -> Outcome {
    let roots = jacobian_roots(&JacobianProfile::convex_witness().restricted(0.0, 0.35));
    roots_match(&roots, &[0.164878, 0.292893])?;
    let exact = (2.0 - SQRT_2) / 2.0;
    ensure((roots[1] - exact).abs() <= 1e-12, || format!("second root off (2-sqrt2)/2 by {:e}", roots[1] - exact))?;
    Ok(format!("roots {roots:?}"))
}

fn criterion_5() -> Outcome {
    let mut worst_j: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for i in 0..10 {
        for k in 0..10 {
            let c = 0.25 + 3.75 * i as f64 / 9.0;
            let b1 = 0.9 * k as f64 / 9.0;
            let closed = ok_or(radius_uniform_closed(c, b1), "closed radius")?.radius;
            let j = extremal::jacobian_uniform_witness(closed, c, b1);
            let family = ok_or(BoundFamily::uniform(c, b1), "family")?;
            let bisect = ok_or(radius_bisection(&family, 0.0), "bisection")?.radius;
            ensure(j.abs() <= 1e-10, || format!("J_f0 = {j:e} at c={c}, b1={b1}"))?;
            ensure((bisect - closed).abs() <= 1e-10, || format!("bisection {bisect} vs closed {closed} at c={c}, b1={b1}"))?;
            worst_j = worst_j.max(j.abs());
            worst_gap = worst_gap.max((bisect - closed).abs());
        }
    }
    Ok(format!("100 lattice points, max |J| {worst_j:.1e}, max gap {worst_gap:.1e}"))
}

fn criterion_6() -> Outcome {
    let rows = ok_or(bloch::table1(&[1.0, 2.0, 3.0]), "table")?;
    let right = [(0.251602, 0.143904), (0.152633, 0.082622), (0.109765, 0.0580693)];
    let left = [(0.22421, 0.12629), (0.11992, 0.06367), (0.08311, 0.04328)];
    for ((row, (r, big_r)), (phi, psi)) in rows.iter().zip(right).zip(left) {
        let m = row.m;
        ensure((row.r_s - r).abs() < 1e-5, || format!("M={m}: r_S {}", row.r_s))?;
        ensure((row.big_r_s - big_r).abs() < 1e-5, || format!("M={m}: R_S {}", row.big_r_s))?;
        ensure((row.phi - phi).abs() < 1e-4, || format!("M={m}: phi {}", row.phi))?;
        ensure((row.psi - psi).abs() < 1e-4, || format!("M={m}: psi {}", row.psi))?;
        let phi_x = ok_or(bloch::phi(8.0 * m / PI), "phi")?;
        ensure(row.r_s > phi_x, || format!("M={m}: r_S {} <= phi {phi_x}", row.r_s))?;
    }
    Ok("rows M = 1, 2, 3 match; r_S > phi rowwise".into())
}

/// Partial sum through `n = 200` plus a geometric majorant of the remainder.
fn direct_sum(term: impl Fn(f64) -> f64) -> (f64, f64) {
    let sum: f64 = (1..=200).map(|n| term(n as f64)).sum();
    let next = term(201.0);
    let ratio = term(202.0) / next;
    let tail = if ratio < 1.0 { next / (1.0 - ratio) } else { f64::INFINITY };
    (sum, tail)
}

fn criterion_7() -> Outcome {
    for r in [0.1, 0.3, 0.5] {
        let (s1, s2, s3) = ok_or(extremal::series_identities(r), "identities")?;
        let oracle = [
            direct_sum(|n| n * r.powf(n)),
            direct_sum(|n| n * n * r.powf(n)),
            direct_sum(|n| n * n * n * r.powf(n - 1.0)),
        ];
        for (closed, (sum, tail)) in [s1, s2, s3].into_iter().zip(oracle) {
            let err = (closed - sum).abs();
            ensure(err <= 1e-10 + tail, || format!("r={r}: closed {closed} vs direct {sum} (tail {tail:e})"))?;
            ensure(err <= 1e-10, || format!("r={r}: mismatch {err:e}"))?;
        }
    }
    let triple = ok_or(extremal::series_identities(0.5), "identities")?;
    ensure(triple == (2.0, 6.0, 52.0), || format!("triple at 0.5 is {triple:?}"))?;
    Ok("three radii agree; (2, 6, 52) at r = 0.5".into())
}

/// A random sequence with `b1 = 0` scaled so that `sum n(|a_n| + |b_n|) < 1`.
fn random_admissible(rng: &mut StdRng) -> CoefficientSeq {
    let degree = rng.gen_range(2..=12);
    let draw = |rng: &mut StdRng| {
        if rng.gen_bool(0.3) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..TAU))
        }
    };
    let mut a: Vec<(usize, Complex64)> = (2..=degree).map(|n| (n, draw(rng))).collect();
    let mut b: Vec<(usize, Complex64)> = (2..=degree).map(|n| (n, draw(rng))).collect();
    let weight: f64 = a.iter().chain(&b).map(|(n, v)| *n as f64 * v.norm()).sum();
    let scale = rng.gen_range(0.05..0.999) / weight.max(1e-300);
    for (_, v) in a.iter_mut().chain(b.iter_mut()) {
        *v *= scale;
    }
    CoefficientSeq::new(&a, &b, None).expect("valid random sequence")
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let grid = GridSpec::default();
    let mut accepted = 0;
    while accepted < 200 {
        let seq = random_admissible(&mut rng);
        if ok_or(coeff_condition(&seq, 0.0), "coeff_condition")?.verdict != Verdict::Satisfied {
            continue;
        }
        accepted += 1;
        let lemma = ok_or(lemma3_consequences(&seq, 0.0), "lemma3")?;
        ensure(lemma.verdict == Verdict::Satisfied, || format!("lemma3 failed on {}", seq.to_json_string()))?;
        let f = HarmonicMap::from_series(seq, "random");
        let ch2 = ok_or(c_h2_numeric(&f, 0.0, &grid), "c_h2")?;
        ensure(ch2.verdict == Verdict::Satisfied, || format!("c_h2 failed: {ch2:?}"))?;
        let star = ok_or(starlike_scan(&f, &grid), "starlike")?;
        ensure(star.verdict == Verdict::Satisfied, || format!("starlike failed: {star:?}"))?;
    }
    let mut boundary = 0;
    for n in 2..=6 {
        for theta in [0.0, 0.7, PI] {
            for anti in [false, true] {
                let f = ok_or(extremal::lemma_boundary_example(n, theta, anti), "boundary example")?;
                let seq = f.series().expect("series backed");
                let rep = ok_or(lemma3_consequences(seq, 0.0), "lemma3")?;
                for part in &rep.parts {
                    ensure(part.margin.abs() <= 1e-14, || format!("{}: {} margin {:e}", f.label(), part.name, part.margin))?;
                }
                boundary += 1;
            }
        }
    }
    Ok(format!("{accepted} random sequences pass all implications; {boundary} boundary examples at margin 0"))
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let maps = [
        extremal::harmonic_koebe(),
        extremal::convex_extremal(),
        extremal::koebe_witness(),
        extremal::convex_witness(),
    ];
    let mut worst: f64 = 0.0;
    for map in &maps {
        let series = ok_or(map.section(200, 200), "section")?;
        for _ in 0..50 {
            let z = Complex64::from_polar(rng.gen_range(0.0..=0.5), rng.gen_range(0.0..TAU));
            let d = (ok_or(map.eval(z), "closed eval")? - ok_or(series.eval(z), "series eval")?).norm();
            ensure(d <= 1e-10, || format!("{} at {z}: {d:e}", map.label()))?;
            worst = worst.max(d);
        }
    }
    let koebe = extremal::harmonic_koebe();
    for _ in 0..20 {
        let z = Complex64::from_polar(rng.gen_range(0.0..0.99), rng.gen_range(0.0..TAU));
        let d = (ok_or(koebe.dilatation(z), "dilatation")? - z).norm();
        ensure(d <= 1e-12, || format!("dilatation of K at {z} off by {d:e}"))?;
    }
    Ok(format!("max series/closed gap {worst:.1e}; dilatation of K is z"))
}

fn criterion_10() -> Outcome {
    let f0 = ok_or(injectivity_oracle(&extremal::koebe_witness(), 0.2, 256), "oracle F0")?;
    ensure(f0.verdict == Verdict::Violated, || format!("F0 on |z| < 0.2: {:?}", f0.verdict))?;
    let kr = ok_or(extremal::harmonic_koebe().dilate(0.112903), "dilate")?;
    let k = ok_or(injectivity_oracle(&kr, 0.999, 256), "oracle K_r")?;
    ensure(k.verdict != Verdict::Violated, || format!("dilated K collides: {:?}", k.witness))?;
    Ok(format!("F0 collision {:?}; dilated K no collision (margin {:.3e})", f0.witness, k.margin))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Duration::from_millis(100)),
        (2, criterion_2, Duration::from_millis(100)),
        (3, criterion_3, Duration::from_millis(500)),
        (4, criterion_4, Duration::from_millis(500)),
        (5, criterion_5, Duration::from_secs(1)),
        (6, criterion_6, Duration::from_millis(100)),
        (7, criterion_7, Duration::from_millis(100)),
        (8, criterion_8, Duration::from_secs(30)),
        (9, criterion_9, Duration::from_secs(1)),
        (10, criterion_10, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({elapsed:.2?}) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL ({elapsed:.2?}) {detail}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
