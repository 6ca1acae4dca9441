//! `hradius`: radii, membership checks, Jacobian scans and univalent-disk
//! tables for coefficient-bounded harmonic maps.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use harmonic_radius::bloch;
use harmonic_radius::class_checks::{
    c_h2_numeric, coeff_condition, injectivity_oracle, lemma3_consequences, starlike_scan, GridSpec,
    MembershipReport,
};
use harmonic_radius::extremal::{self, JacobianProfile, REGISTRY};
use harmonic_radius::radius_solver::{
    jacobian_roots, radius_bisection, radius_closed, radius_convex_closed, radius_koebe_closed,
    radius_uniform_closed, sharpness_verify, RadiusReport, SharpnessReport,
};
use harmonic_radius::{BoundFamily, CoefficientSeq, Error, HarmonicMap};
use serde::Serialize;
use serde_json::json;

const MAX_SCAN_STEPS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "hradius", version, about = "Radii of univalence and starlikeness for harmonic maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest r with S(r) <= 1 - beta for a bound family or a coefficient file.
    Radius {
        /// koebe, convex, or uniform:c[,b1]
        #[arg(long, value_parser = parse_family, conflicts_with = "seq", required_unless_present = "seq")]
        family: Option<BoundFamily>,
        /// JSON coefficient file
        #[arg(long)]
        seq: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Run one membership check on a coefficient file or a named extremal.
    Membership {
        #[arg(long, conflicts_with = "extremal", required_unless_present = "extremal")]
        seq: Option<PathBuf>,
        /// Label from list-extremals
        #[arg(long)]
        extremal: Option<String>,
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// Replace f by f(rz)/r before checking
        #[arg(long)]
        dilate: Option<f64>,
        /// Outer radius of the sampled disk
        #[arg(long, default_value_t = 0.999)]
        r: f64,
        #[arg(long, default_value_t = 200)]
        radial: usize,
        #[arg(long, default_value_t = 64)]
        angular: usize,
        /// Square grid size for the injectivity oracle
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        /// Uniform bound for f0
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// |b1| for f0
        #[arg(long, default_value_t = 0.0)]
        b1: f64,
    },
    /// Sample J(r) of a sharpness witness on [lo, hi].
    JacobianScan {
        #[arg(long, value_enum)]
        witness: WitnessArg,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        b1: f64,
        #[arg(long, default_value_t = 0.001)]
        lo: f64,
        #[arg(long, default_value_t = 0.25)]
        hi: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Univalence radius r_S and image radius R_S for bounds |f| < M.
    BlochTable {
        #[arg(long = "M", value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0])]
        m: Vec<f64>,
        #[arg(long)]
        csv: bool,
    },
    /// Check that a witness Jacobian vanishes first at r.
    Sharpness {
        #[arg(long, value_enum)]
        witness: WitnessArg,
        /// Defaults to the closed-form radius of the witness's family
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        b1: f64,
    },
    /// Closed forms of sum n r^n, sum n^2 r^n and sum n^3 r^(n-1).
    Identities {
        #[arg(long)]
        r: f64,
    },
    /// Labels accepted by --extremal.
    ListExtremals,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Bisect,
    Closed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Coeff,
    #[value(name = "c-h2")]
    CH2,
    Starlike,
    Injectivity,
    Lemma3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WitnessArg {
    #[value(name = "F0")]
    F0,
    #[value(name = "L0")]
    L0,
    #[value(name = "f0")]
    UniformF0,
}

fn parse_family(s: &str) -> Result<BoundFamily, String> {
    match s {
        "koebe" => Ok(BoundFamily::Koebe),
        "convex" => Ok(BoundFamily::Convex),
        _ => {
            let params = s.strip_prefix("uniform:").ok_or_else(|| format!("unknown family '{s}'"))?;
            let mut nums = params.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")));
            let c = nums.next().ok_or("uniform needs c")??;
            let b1 = nums.next().transpose()?.unwrap_or(0.0);
            if nums.next().is_some() {
                return Err("uniform takes at most two parameters".into());
            }
            BoundFamily::uniform(c, b1).map_err(|e| e.to_string())
        }
    }
}

enum Failure {
    Math(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Outcome = Result<(), Failure>;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) | Error::EvaluationDomain { .. } => "domain",
        Error::Singularity(_) => "singularity",
        Error::Unsupported(_) => "unsupported",
        Error::NoRadius { .. } => "no_radius",
        Error::Precondition(_) => "precondition",
        Error::InvalidSequence(_) => "invalid_sequence",
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_seq(path: &Path) -> Result<CoefficientSeq, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(CoefficientSeq::from_json_str(&text)?)
}

#[derive(Serialize)]
struct RadiusOutput {
    source: String,
    beta: f64,
    #[serde(flatten)]
    report: RadiusReport,
}

fn run_radius(family: Option<BoundFamily>, seq: Option<PathBuf>, beta: f64, method: MethodArg) -> Outcome {
    let (source, report) = match (family, seq) {
        (Some(family), _) => {
            let closed = match method {
                MethodArg::Closed => true,
                MethodArg::Bisect => false,
                MethodArg::Auto => beta == 0.0,
            };
            let report = if closed {
                if beta != 0.0 {
                    return Err(Error::Unsupported("closed forms are available for beta = 0 only".into()).into());
                }
                radius_closed(&family)?
            } else {
                radius_bisection(&family, beta)?
            };
            (family.label(), report)
        }
        (None, Some(path)) => {
            if matches!(method, MethodArg::Closed) {
                return Err(Error::Unsupported("coefficient files have no closed-form radius".into()).into());
            }
            let seq = read_seq(&path)?;
            (format!("seq:{}", path.display()), radius_bisection(&seq, beta)?)
        }
        (None, None) => unreachable!("clap requires --family or --seq"),
    };
    emit(&output::to_json(&RadiusOutput { source, beta, report }), None)
}

#[derive(Serialize)]
struct MembershipOutput {
    map: String,
    #[serde(flatten)]
    report: MembershipReport,
}

#[allow(clippy::too_many_arguments)]
fn run_membership(
    seq: Option<PathBuf>,
    extremal: Option<String>,
    check: CheckArg,
    beta: f64,
    dilate: Option<f64>,
    grid: GridSpec,
    resolution: usize,
    (c, b1): (f64, f64),
) -> Outcome {
    let mut map = match (seq, extremal) {
        (Some(path), _) => HarmonicMap::from_series(read_seq(&path)?, path.display().to_string()),
        (None, Some(label)) if label == "f0" => extremal::uniform_witness(c, b1)?,
        (None, Some(label)) => extremal::by_label(&label)
            .ok_or_else(|| Error::Domain(format!("unknown extremal '{label}'; see list-extremals")))?,
        (None, None) => unreachable!("clap requires --seq or --extremal"),
    };
    if let Some(r) = dilate {
        map = map.dilate(r)?;
    }
    let coefficients = || {
        map.series().ok_or_else(|| {
            Error::Unsupported(format!("'{}' is a closed form; coefficient checks need a series", map.label()))
        })
    };
    let report = match check {
        CheckArg::Coeff => coeff_condition(coefficients()?, beta)?,
        CheckArg::Lemma3 => lemma3_consequences(coefficients()?, beta)?,
        CheckArg::CH2 => c_h2_numeric(&map, beta, &grid)?,
        CheckArg::Starlike => starlike_scan(&map, &grid)?,
        CheckArg::Injectivity => injectivity_oracle(&map, grid.r_max, resolution)?,
    };
    emit(&output::to_json(&MembershipOutput { map: map.label().to_string(), report }), None)
}

fn witness_profile(witness: WitnessArg, c: f64, b1: f64) -> Result<JacobianProfile, Error> {
    match witness {
        WitnessArg::F0 => Ok(JacobianProfile::koebe_witness()),
        WitnessArg::L0 => Ok(JacobianProfile::convex_witness()),
        WitnessArg::UniformF0 => JacobianProfile::uniform_witness(c, b1),
    }
}

fn sign_changes(values: impl IntoIterator<Item = f64>) -> usize {
    let signs: Vec<bool> = values.into_iter().filter(|v| *v != 0.0).map(|v| v > 0.0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[allow(clippy::too_many_arguments)]
fn run_jacobian_scan(
    witness: WitnessArg,
    (c, b1): (f64, f64),
    lo: f64,
    hi: f64,
    steps: usize,
    out: Option<PathBuf>,
    csv: bool,
) -> Outcome {
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::Domain(format!("need 0 < lo < hi < 1, got lo = {lo}, hi = {hi}")).into());
    }
    if steps == 0 || steps > MAX_SCAN_STEPS {
        return Err(Error::Domain(format!("steps must lie in [1, {MAX_SCAN_STEPS}], got {steps}")).into());
    }
    let profile = witness_profile(witness, c, b1)?;
    let samples = profile.sample(lo, hi, steps);
    let text = if csv {
        output::to_csv(&["r", "J"], samples.iter().map(|s| vec![s.r, s.j]))
    } else {
        output::to_json(&json!({
            "witness": profile.label,
            "params": profile.params.map(|(c, b1)| json!({"c": c, "b1": b1})),
            "lo": lo,
            "hi": hi,
            "steps": steps,
            "sign_changes": sign_changes(samples.iter().map(|s| s.j)),
            "samples": samples,
        }))
    };
    emit(&text, out.as_deref())
}

fn run_bloch_table(ms: &[f64], csv: bool) -> Outcome {
    let rows = bloch::table1(ms)?;
    let text = if csv {
        output::to_csv(
            &["M", "phi", "psi", "r_S", "R_S"],
            rows.iter().map(|r| vec![r.m, r.phi, r.psi, r.r_s, r.big_r_s]),
        )
    } else {
        output::to_json(&json!({ "rows": rows }))
    };
    emit(&text, None)
}

#[derive(Serialize)]
struct SharpnessOutput {
    #[serde(flatten)]
    report: SharpnessReport,
    params: Option<serde_json::Value>,
    scan_interval: (f64, f64),
    roots: Vec<f64>,
}

fn run_sharpness(witness: WitnessArg, r: Option<f64>, (c, b1): (f64, f64)) -> Outcome {
    let profile = witness_profile(witness, c, b1)?;
    let (default_r, hi) = match witness {
        WitnessArg::F0 => (radius_koebe_closed().radius, 0.25),
        WitnessArg::L0 => (radius_convex_closed().radius, 0.35),
        WitnessArg::UniformF0 => (radius_uniform_closed(c, b1)?.radius, 0.999),
    };
    let r = r.unwrap_or(default_r);
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r must lie in (0, 1), got {r}")).into());
    }
    let roots = jacobian_roots(&profile.restricted(0.0, hi));
    let out = SharpnessOutput {
        report: sharpness_verify(&profile, r),
        params: profile.params.map(|(c, b1)| json!({"c": c, "b1": b1})),
        scan_interval: (0.0, hi),
        roots,
    };
    emit(&output::to_json(&out), None)
}

fn run_identities(r: f64) -> Outcome {
    let (s1, s2, s3) = extremal::series_identities(r)?;
    emit(&output::to_json(&json!({ "r": r, "sum_n_rn": s1, "sum_n2_rn": s2, "sum_n3_rn1": s3 })), None)
}

fn run_list_extremals() -> Outcome {
    let list: Vec<_> = REGISTRY.iter().map(|(label, about)| json!({"label": label, "description": about})).collect();
    emit(&output::to_json(&json!({ "extremals": list })), None)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Radius { family, seq, beta, method } => run_radius(family, seq, beta, method),
        Command::Membership { seq, extremal, check, beta, dilate, r, radial, angular, resolution, c, b1 } => {
            run_membership(seq, extremal, check, beta, dilate, GridSpec::new(radial, angular, r), resolution, (c, b1))
        }
        Command::JacobianScan { witness, c, b1, lo, hi, steps, out, csv } => {
            run_jacobian_scan(witness, (c, b1), lo, hi, steps, out, csv)
        }
        Command::BlochTable { m, csv } => run_bloch_table(&m, csv),
        Command::Sharpness { witness, r, c, b1 } => run_sharpness(witness, r, (c, b1)),
        Command::Identities { r } => run_identities(r),
        Command::ListExtremals => run_list_extremals(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(e)) => {
            let mut body = json!({ "error": error_kind(&e), "message": e.to_string() });
            if let Error::NoRadius { s0, target } = e {
                body["s0"] = json!(s0);
                body["target"] = json!(target);
            }
            print!("{}", output::to_json(&body));
            eprintln!("hradius: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("hradius: {msg}");
            ExitCode::from(3)
        }
    }
}
