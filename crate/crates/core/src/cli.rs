//! Command-line front end. [`run_command`] does all the work and returns the
//! exit code with the rendered output, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 input error, 2 a verification check failed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arith::BigRat;
use crate::chow::{
    bezout_closed_form, divisor_degree, intersection_number, verify_all, CheckStatus,
    TorusInvariantDivisor, VerificationReport,
};
use crate::lattice::{construct_basis, IntVector, Weights};
use crate::polytope::{d0_power_from_volume, normalized_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "wps",
    about = "Exact intersection numbers on weighted projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection number of n torus-invariant divisors
    Intersect(IntersectArgs),
    /// Lattice basis e_1..e_n of the polytope hyperplane and its cross product
    Basis(CommonArgs),
    /// Normalized volume of the polytope and the self-intersection D_0^n
    Volume(CommonArgs),
    /// Run every consistency check for one weight vector
    Verify(VerifyArgs),
    /// Run `verify` over every valid weight vector within bounds
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Comma-separated positive integers q_0,...,q_n
    #[arg(long)]
    weights: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct IntersectArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Divisor coefficients a_0,...,a_n (repeat once per divisor)
    #[arg(
        long = "divisor",
        allow_hyphen_values = true,
        conflicts_with = "degrees"
    )]
    divisors: Vec<String>,
    /// Comma-separated divisor degrees, one per divisor
    #[arg(long, allow_hyphen_values = true)]
    degrees: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    checks: CheckArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Random divisor tuples per weight vector
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Largest fundamental-domain enumeration to attempt
    #[arg(long, default_value_t = 1_000_000)]
    bruteforce_limit: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long, default_value_t = 6)]
    max_q: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    checks: CheckArgs,
}

const SWEEP_CAP: u128 = 10_000_000;

struct InputError(String);

type Outcome = Result<(i32, String), InputError>;

/// Parses `argv` (without the program name) and runs the command.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let tokens = std::iter::once("wps").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(tokens) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let outcome = match cli.command {
        Command::Intersect(args) => intersect(args),
        Command::Basis(args) => basis(args),
        Command::Volume(args) => volume(args),
        Command::Verify(args) => verify(args),
        Command::Selftest(args) => selftest(args),
    };
    match outcome {
        Ok(done) => done,
        Err(InputError(msg)) => (1, format!("error: {msg}\n")),
    }
}

fn parse_ints(list: &str, what: &str) -> Result<Vec<BigInt>, InputError> {
    list.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<BigInt>()
                .map_err(|_| InputError(format!("invalid {what} '{tok}': expected an integer")))
        })
        .collect()
}

fn parse_weights(list: &str) -> Result<Weights, InputError> {
    let q = parse_ints(list, "weight")?;
    if let Some(bad) = q.iter().find(|v| *v <= &BigInt::from(0)) {
        return Err(InputError(format!(
            "invalid weight '{bad}': expected a positive integer"
        )));
    }
    Weights::new(q).map_err(|e| InputError(e.to_string()))
}

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn vector_json(v: &IntVector) -> Value {
    json!(strings(v.coords()))
}

fn line(value: Value) -> String {
    format!("{value}\n")
}

fn intersect(args: IntersectArgs) -> Outcome {
    let w = parse_weights(&args.common.weights)?;
    let n = w.n();
    let (value, degrees) = match &args.degrees {
        Some(list) => {
            let degrees = parse_ints(list, "degree")?;
            if degrees.len() != n {
                return Err(InputError(format!(
                    "expected {n} degrees, got {}",
                    degrees.len()
                )));
            }
            let value = bezout_closed_form(&w, &degrees).map_err(|e| InputError(e.to_string()))?;
            (value, degrees)
        }
        None => {
            if args.divisors.len() != n {
                return Err(InputError(format!(
                    "expected {n} divisors, got {}",
                    args.divisors.len()
                )));
            }
            let mut divisors = Vec::with_capacity(n);
            for (i, raw) in args.divisors.iter().enumerate() {
                let a = parse_ints(raw, "divisor coefficient")?;
                if a.len() != n + 1 {
                    return Err(InputError(format!(
                        "divisor {} '{raw}' has {} coefficients, expected {}",
                        i + 1,
                        a.len(),
                        n + 1
                    )));
                }
                divisors.push(TorusInvariantDivisor::new(a));
            }
            let degrees = divisors
                .iter()
                .map(|d| divisor_degree(d, &w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| InputError(e.to_string()))?;
            let value =
                intersection_number(&w, &divisors).map_err(|e| InputError(e.to_string()))?;
            (value, degrees)
        }
    };
    let out = match args.common.format {
        Format::Text => format!("{value}\n"),
        Format::Json => line(json!({
            "value": value.to_string(),
            "numerator": value.numer().to_string(),
            "denominator": value.denom().to_string(),
            "degrees": strings(&degrees),
        })),
    };
    Ok((0, out))
}

fn basis(args: CommonArgs) -> Outcome {
    let w = parse_weights(&args.weights)?;
    let cert = construct_basis(&w).map_err(|e| InputError(e.to_string()))?;
    let out = match args.format {
        Format::Text => {
            let mut s = String::new();
            for (i, e) in cert.basis.iter().enumerate() {
                s.push_str(&format!("e_{} = {}\n", i + 1, e));
            }
            s.push_str(&format!("cross = {}\n", cert.cross));
            s
        }
        Format::Json => line(json!({
            "weights": strings(w.q()),
            "basis": cert.basis.iter().map(vector_json).collect::<Vec<_>>(),
            "cross": vector_json(&cert.cross),
            "matches_weights": cert.matches_weights,
        })),
    };
    Ok((0, out))
}

fn volume(args: CommonArgs) -> Outcome {
    let w = parse_weights(&args.weights)?;
    let vol = normalized_volume(&w).map_err(|e| InputError(e.to_string()))?;
    let d0: BigRat = d0_power_from_volume(&w).map_err(|e| InputError(e.to_string()))?;
    let out = match args.format {
        Format::Text => format!("normalized_volume = {vol}\nd0_power = {d0}\n"),
        Format::Json => line(json!({
            "weights": strings(w.q()),
            "normalized_volume": vol.to_string(),
            "d0_power": d0.to_string(),
        })),
    };
    Ok((0, out))
}

/// Renders a report. Text mode prints one `PASS`/`FAIL`/`SKIP` line per check
/// and a summary; JSON mode prints a single object.
pub fn render_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("weights: {}\n", r.weights);
            for c in &r.checks {
                let witness: Vec<String> =
                    c.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
                match c.status {
                    CheckStatus::Pass => s.push_str(&format!("PASS {}\n", c.name)),
                    CheckStatus::Fail => {
                        s.push_str(&format!("FAIL {}: {}\n", c.name, witness.join(", ")))
                    }
                    CheckStatus::Skip => {
                        s.push_str(&format!("SKIP {}: {}\n", c.name, witness.join(", ")))
                    }
                }
            }
            if !r.well_formed {
                s.push_str(
                    "WARN weights are not well-formed: some n of them share a common factor\n",
                );
            }
            s.push_str(&format!(
                "summary: {} passed, {} failed, {} skipped\n",
                r.count(CheckStatus::Pass),
                r.count(CheckStatus::Fail),
                r.count(CheckStatus::Skip)
            ));
            s
        }
        Format::Json => line(report_json(r)),
    }
}

fn report_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let witness: Map<String, Value> = c
                .witness
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            json!({
                "name": c.name,
                "status": c.status.as_str(),
                "witness": witness,
            })
        })
        .collect();
    json!({
        "weights": strings(r.weights.q()),
        "status": if r.overall() { "pass" } else { "fail" },
        "well_formed": r.well_formed,
        "checks": checks,
    })
}

fn verify(args: VerifyArgs) -> Outcome {
    let w = parse_weights(&args.common.weights)?;
    let c = &args.checks;
    let report = verify_all(&w, c.trials, c.bruteforce_limit, c.seed);
    let code = if report.overall() { 0 } else { 2 };
    Ok((code, render_report(&report, args.common.format)))
}

/// Every weight vector of length `2..=max_n + 1` with entries in `1..=max_q`
/// and overall gcd 1, in lexicographic order.
pub fn weight_sweep(max_n: usize, max_q: u64) -> Vec<Weights> {
    let mut out = Vec::new();
    for len in 2..=max_n + 1 {
        let mut q = vec![1u64; len];
        loop {
            if let Ok(w) = Weights::from_u64s(&q) {
                out.push(w);
            }
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                q[i] += 1;
                if q[i] <= max_q {
                    break;
                }
                q[i] = 1;
            }
            if q.iter().all(|&v| v == 1) {
                break;
            }
        }
    }
    out
}

fn selftest(args: SelftestArgs) -> Outcome {
    if args.max_n == 0 || args.max_q == 0 {
        return Err(InputError("--max-n and --max-q must be at least 1".into()));
    }
    let size: u128 = (2..=args.max_n + 1)
        .map(|len| (args.max_q as u128).saturating_pow(len as u32))
        .fold(0u128, u128::saturating_add);
    if size > SWEEP_CAP {
        return Err(InputError(format!(
            "sweep of {size} weight vectors exceeds the cap of {SWEEP_CAP}"
        )));
    }
    let c = &args.checks;
    let sweep = weight_sweep(args.max_n, args.max_q);
    let reports: Vec<VerificationReport> = sweep
        .par_iter()
        .map(|w| verify_all(w, c.trials, c.bruteforce_limit, c.seed))
        .collect();
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.overall()).collect();
    let skipped = reports
        .iter()
        .filter(|r| r.count(CheckStatus::Skip) > 0)
        .count();
    let code = if failed.is_empty() { 0 } else { 2 };

    let out = match args.format {
        Format::Text => {
            let mut s = String::new();
            for r in &failed {
                s.push_str(&render_report(r, Format::Text));
            }
            s.push_str(&format!(
                "selftest: {} weight vectors, {} failed, {} with skipped checks\n",
                reports.len(),
                failed.len(),
                skipped
            ));
            s
        }
        Format::Json => line(json!({
            "status": if failed.is_empty() { "pass" } else { "fail" },
            "checked": reports.len().to_string(),
            "skipped": skipped.to_string(),
            "failed": failed.iter().map(|r| report_json(r)).collect::<Vec<_>>(),
        })),
    };
    Ok((code, out))
}
