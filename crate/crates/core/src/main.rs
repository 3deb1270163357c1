use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;

use tricubic::algebra::Rat;
use tricubic::casebook::{reproduce_u50, tetrahedral_range, verify_tetrahedral, TheoremReport};
use tricubic::cli::{analyze, bundle_report, exit_code, search_box, ReportEnvelope};
use tricubic::local::{certify_adeles, certify_zp, DEFAULT_DEPTH};
use tricubic::surface::{exceptional_set, CubicInput};
use tricubic::{Error, Result};

#[derive(Parser)]
#[command(name = "tricubic", version, about = "Brauer-Manin analysis of f(u1) + f(u2) + f(u3) = n")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Cubic {
    #[arg(allow_negative_numbers = true)]
    a2: BigInt,
    #[arg(allow_negative_numbers = true)]
    a1: BigInt,
    #[arg(allow_negative_numbers = true)]
    a0: BigInt,
}

#[derive(Args, Clone)]
struct NRange {
    /// Process every n in LO..=HI, one JSON object per line.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    n_range: Option<Vec<BigInt>>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline for f(u) = u^3 + a2 u^2 + a1 u + a0 and n.
    Analyze {
        #[command(flatten)]
        f: Cubic,
        #[arg(allow_negative_numbers = true, required_unless_present = "n_range")]
        n: Option<BigInt>,
        #[command(flatten)]
        range: NRange,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Exceptional values of n for the depressed family u^3 + a u + b.
    Exceptional {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
        #[arg(long, default_value = "10000")]
        bound: BigInt,
    },
    /// Local solubility certificates, at one prime or at every relevant place.
    Local {
        #[command(flatten)]
        f: Cubic,
        #[arg(allow_negative_numbers = true)]
        n: BigInt,
        #[arg(long)]
        prime: Option<BigInt>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Conic bundle, singular fibres and Brauer classes for u^3 + a u + b summed to n.
    Bundle {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
        #[arg(allow_negative_numbers = true)]
        n: BigInt,
        /// Rational root of f1 to use; defaults to the smallest one.
        #[arg(long, allow_negative_numbers = true)]
        root: Option<Rat>,
    },
    /// The tetrahedral-numbers theorem for one m or a range.
    Tetra {
        #[arg(allow_negative_numbers = true, required_unless_present = "n_range")]
        m: Option<BigInt>,
        #[command(flatten)]
        range: NRange,
    },
    /// The weak-approximation example U50.
    U50,
    /// Integral points with |ui| <= B.
    Search {
        #[command(flatten)]
        f: Cubic,
        #[arg(allow_negative_numbers = true)]
        n: BigInt,
        #[arg(long = "box", default_value_t = 100)]
        bound: i64,
    },
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn cubic_inputs(f: &Cubic, n: &BigInt) -> Vec<(&'static str, String)> {
    vec![("a2", f.a2.to_string()), ("a1", f.a1.to_string()), ("a0", f.a0.to_string()), ("n", n.to_string())]
}

fn range_of(r: &[BigInt]) -> Result<Vec<BigInt>> {
    let (lo, hi) = (&r[0], &r[1]);
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range [{lo}, {hi}]")));
    }
    Ok(std::iter::successors(Some(lo.clone()), |m| (m < hi).then(|| m + 1)).collect())
}

fn analyze_envelope(f: &Cubic, n: &BigInt, depth: u32) -> Result<ReportEnvelope> {
    let input = CubicInput::new(f.a2.clone(), f.a1.clone(), f.a0.clone(), n.clone());
    let mut pairs = cubic_inputs(f, n);
    pairs.push(("depth", depth.to_string()));
    let report = analyze(&input, depth)?;
    let notes = report.notes.clone();
    Ok(ReportEnvelope::new("analyze", inputs(&pairs), &report, &report.verdict).with_notes(notes))
}

fn theorem_envelope(command: &str, pairs: &[(&str, String)], report: &TheoremReport) -> ReportEnvelope {
    ReportEnvelope::new(command, inputs(pairs), report, report.verdict()).with_notes(report.notes.clone())
}

fn bundle_envelope(a: &BigInt, b: &BigInt, n: &BigInt, root: Option<&Rat>) -> Result<ReportEnvelope> {
    let report = bundle_report(a, b, n, root)?;
    let pairs = [("a", a.to_string()), ("b", b.to_string()), ("n", n.to_string()), ("root", report.root.to_string())];
    Ok(ReportEnvelope::new("bundle", inputs(&pairs), &report, report.verdict()))
}

fn emit(env: &ReportEnvelope, json: bool, out: &mut impl Write) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", env.to_json())
    } else {
        write!(out, "{}", env.to_text())
    }
}

/// Evaluate a batch in parallel chunks, writing results in input order as they complete.
fn stream<F>(items: Vec<BigInt>, json: bool, make: F) -> Result<()>
where
    F: Fn(&BigInt) -> Result<ReportEnvelope> + Sync,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for chunk in items.chunks(64) {
        let envs: Vec<Result<ReportEnvelope>> = chunk.par_iter().map(&make).collect();
        for env in envs {
            emit(&env?, json, &mut out).map_err(|e| Error::Inconsistency(e.to_string()))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    let single = |env: ReportEnvelope| -> Result<()> {
        emit(&env, json, &mut std::io::stdout().lock()).map_err(|e| Error::Inconsistency(e.to_string()))
    };
    match cli.command {
        Command::Analyze { f, n, range, depth } => match range.n_range {
            Some(r) => stream(range_of(&r)?, json, |n| analyze_envelope(&f, n, depth)),
            None => single(analyze_envelope(&f, &n.expect("clap enforces n"), depth)?),
        },
        Command::Exceptional { a, b, bound } => {
            let set = exceptional_set(&a, &b, &bound)?;
            let pairs = [("a", a.to_string()), ("b", b.to_string()), ("bound", bound.to_string())];
            single(ReportEnvelope::new("exceptional", inputs(&pairs), &set, "Computed"))
        }
        Command::Local { f, n, prime, depth } => {
            let input = CubicInput::new(f.a2.clone(), f.a1.clone(), f.a0.clone(), n.clone());
            let mut pairs = cubic_inputs(&f, &n);
            pairs.push(("depth", depth.to_string()));
            let env = match prime {
                Some(p) => {
                    pairs.push(("prime", p.to_string()));
                    let cert = certify_zp(&input, &p, depth)?;
                    let verdict = if cert.is_soluble() {
                        "Soluble"
                    } else if cert.is_insoluble() {
                        "Insoluble"
                    } else {
                        "Unknown"
                    };
                    ReportEnvelope::new("local", inputs(&pairs), &cert, verdict)
                }
                None => {
                    let cert = certify_adeles(&input, depth)?;
                    ReportEnvelope::new("local", inputs(&pairs), &cert, format!("{:?}", cert.verdict))
                }
            };
            single(env)
        }
        Command::Bundle { a, b, n, root } => single(bundle_envelope(&a, &b, &n, root.as_ref())?),
        Command::Tetra { m, range } => match range.n_range {
            Some(r) => {
                let items = range_of(&r)?;
                if json {
                    stream(items, json, |m| {
                        Ok(theorem_envelope("tetra", &[("m", m.to_string())], &verify_tetrahedral(m)))
                    })
                } else {
                    let summary = tetrahedral_range(&r[0], &r[1])?;
                    let pairs = [("lo", r[0].to_string()), ("hi", r[1].to_string())];
                    let verdict = if summary.all_reproduced() { "Reproduced" } else { "Failed" };
                    single(ReportEnvelope::new("tetra", inputs(&pairs), &summary, verdict))
                }
            }
            None => {
                let m = m.expect("clap enforces m");
                single(theorem_envelope("tetra", &[("m", m.to_string())], &verify_tetrahedral(&m)))
            }
        },
        Command::U50 => single(theorem_envelope("u50", &[], &reproduce_u50())),
        Command::Search { f, n, bound } => {
            let input = CubicInput::new(f.a2.clone(), f.a1.clone(), f.a0.clone(), n.clone());
            let result = search_box(&input, bound)?;
            let mut pairs = cubic_inputs(&f, &n);
            pairs.push(("box", bound.to_string()));
            let verdict = if result.points.is_empty() {
                "NoPointsInBox".to_string()
            } else {
                format!("Found({})", result.points.len())
            };
            single(ReportEnvelope::new("search", inputs(&pairs), &result, verdict))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
