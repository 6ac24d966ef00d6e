//! Command-line interface: `analyze`, `simulate`, and `sample`.

use crate::driver::decide;
use crate::instance::{parse_instance, parse_rational, serialize_instance, Kind, LoopInstance};
use crate::oracle::{exact_parts, sample_instances, simulate_escape, SimOutcome};
use crate::verdict::{Outcome, Verdict};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "linloop",
    about = "Validated universal-termination analysis for real linear and affine loops",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether every point escapes the guard polyhedron.
    Analyze {
        /// Instance file (JSON).
        file: PathBuf,
        /// Largest dovetailing budget round to try.
        #[arg(long, default_value_t = 8)]
        max_budget: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the certificate (JSON) to this path.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Exact rational orbit simulation from a start point.
    Simulate {
        file: PathBuf,
        /// Start point as comma-separated rationals, e.g. "1,1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Maximum number of steps.
        #[arg(long)]
        steps: usize,
    },
    /// Write seed-reproducible random instances.
    Sample {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        constraints: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Linear)]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Linear,
    Affine,
}

pub fn run() -> i32 {
    // Exit code 2 is reserved for Unknown verdicts; usage errors exit 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return 1;
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return 0;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("linloop: {msg}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Analyze {
            file,
            max_budget,
            format,
            emit_certificate,
        } => analyze(&file, max_budget, format, emit_certificate.as_deref()),
        Cmd::Simulate { file, point, steps } => simulate(&file, &point, steps),
        Cmd::Sample {
            dim,
            constraints,
            count,
            seed,
            out,
            kind,
        } => sample(dim, constraints, count, seed, &out, kind),
    }
}

fn read_instance(path: &std::path::Path) -> Result<LoopInstance, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(
    file: &std::path::Path,
    max_budget: u32,
    format: Format,
    emit_certificate: Option<&std::path::Path>,
) -> Result<i32, String> {
    let inst = read_instance(file)?;
    let verdict = decide(&inst, max_budget).map_err(|e| e.to_string())?;
    if let (Some(path), Some(cert)) = (emit_certificate, &verdict.certificate) {
        fs::write(path, serde_json::to_string_pretty(&cert.to_json()).unwrap())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&verdict.to_json()).unwrap()),
        Format::Text => print_text_verdict(&verdict),
    }
    Ok(if verdict.outcome == Outcome::Unknown { 2 } else { 0 })
}

fn print_text_verdict(v: &Verdict) {
    println!("verdict: {}", v.outcome.as_str());
    println!("budget used: {}", v.budget_used);
    println!("rounds completed: {}", v.stats.rounds_completed);
    println!("boxes examined: {}", v.stats.boxes_examined);
    println!("working precision: {} bits", v.stats.last_precision_bits);
    if v.stats.precision_capped {
        println!("note: interval entries capped the achievable precision");
    }
    match &v.certificate {
        None => println!("certificate: none (unknown is retriable at a larger budget)"),
        Some(cert) => {
            println!(
                "certificate: {}",
                serde_json::to_string(&cert.to_json()).unwrap()
            );
        }
    }
}

fn simulate(file: &std::path::Path, point: &str, steps: usize) -> Result<i32, String> {
    if steps == 0 {
        return Err("--steps must be at least 1".into());
    }
    let inst = read_instance(file)?;
    let (a, b_mat, b_vec, eta) = exact_parts(&inst)
        .ok_or("simulation requires exact rational entries (no interval data)")?;
    let x: Vec<_> = point
        .split(',')
        .map(|s| parse_rational(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if x.len() != inst.dim() {
        return Err(format!(
            "point has {} coordinates but the instance has dimension {}",
            x.len(),
            inst.dim()
        ));
    }
    let out = simulate_escape(&a, &b_mat, b_vec.as_deref(), eta.as_deref(), &x, steps)
        .map_err(|e| e.to_string())?;
    match out {
        SimOutcome::EscapedAt(k) => println!("escaped at step {k}"),
        SimOutcome::StillInsideAfter(k) => println!("still inside after {k} steps"),
        SimOutcome::BitSizeExceeded { step } => {
            println!("aborted at step {step}: entry bit sizes exceeded the guard")
        }
    }
    Ok(0)
}

fn sample(
    dim: usize,
    constraints: usize,
    count: usize,
    seed: u64,
    out: &std::path::Path,
    kind: KindArg,
) -> Result<i32, String> {
    if dim == 0 || constraints == 0 || count == 0 {
        return Err("--dim, --constraints and --count must be at least 1".into());
    }
    let kind = match kind {
        KindArg::Linear => Kind::Linear,
        KindArg::Affine => Kind::Affine,
    };
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let instances = sample_instances(dim, constraints, kind, count, seed);
    for (i, inst) in instances.iter().enumerate() {
        let path = out.join(format!("{seed}_{i}.json"));
        let text = serialize_instance(inst).map_err(|e| e.to_string())?;
        fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    println!("wrote {count} instances to {}", out.display());
    Ok(0)
}
