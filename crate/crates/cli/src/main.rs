use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use polytype::census::{census, CensusError, CensusOptions, DEFAULT_MAX_DEGREE, DEFAULT_SPOT_RATE};
use polytype::enumerate::{enumerate_polygons, EnumOptions};
use polytype::newton::{is_conical, PolytopePair};
use polytype::ptype::{gamma_polytopes, pair_edges, polyhedral_type, psi, PsiError};

const EXIT_USAGE: u8 = 1;
const EXIT_SUPPRESSED: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "polytype", version, about = "Polyhedral types of generic planar polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polyhedral type of a conical pair, with Σ, Δ, Γ and the gaps.
    Psi {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Discriminant polytope of a pair.
    Delta {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Non-properness polytopes and the classified edges of a pair.
    Gamma {
        #[arg(long)]
        pair: PathBuf,
    },
    /// List the lattice polygons inside k times the standard simplex.
    Enum {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        min_dim: u8,
        #[arg(long)]
        up_to_translation: bool,
        /// Keep only conical polygons.
        #[arg(long)]
        conical: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ψ over every conical pair of the given degree.
    Census {
        #[arg(long)]
        degree: u32,
        #[arg(long, env = "POLYTYPE_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Resumed from when it exists, updated after every chunk.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// One record per line (JSON Lines).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the mixed-volume identity on every pair.
        #[arg(long)]
        paranoid: bool,
        #[arg(long, default_value_t = DEFAULT_SPOT_RATE)]
        spot_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        keep_going: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        /// Stop after this many pairs (the checkpoint allows resuming later).
        #[arg(long)]
        stop_after: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn psi_failure(e: PsiError) -> Failure {
    if e.is_internal() {
        Failure::Internal(e.to_string())
    } else {
        Failure::Usage(e.to_string())
    }
}

fn read_pair(path: &Path) -> Result<PolytopePair, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn run_psi(path: &Path) -> Result<u8, Failure> {
    let pair = read_pair(path)?;
    let t = psi(&pair).map_err(psi_failure)?;
    let flags: Vec<String> = t.degenerate.iter().map(|d| format!("degenerate:{d}")).collect();
    print_json(&json!({
        "psi": t.psi,
        "sigma": t.sigma_data.as_ref().map(|s| &s.sigma),
        "gaps": t.sigma_data.as_ref().map(|s| s.gaps),
        "delta": t.delta,
        "gammas": t.gammas,
        "flags": flags,
    }));
    Ok(if t.degenerate.is_some() { EXIT_SUPPRESSED } else { 0 })
}

fn run_delta(path: &Path) -> Result<u8, Failure> {
    let pair = read_pair(path)?;
    let t = polyhedral_type(&pair).map_err(psi_failure)?;
    match t.delta {
        Some(delta) => {
            print_json(&json!({ "delta": delta }));
            Ok(0)
        }
        None => {
            let d = t.degenerate.expect("no Δ only for degenerate pairs");
            print_json(&json!({ "delta": null, "flags": [format!("degenerate:{d}")] }));
            Ok(EXIT_SUPPRESSED)
        }
    }
}

fn run_gamma(path: &Path) -> Result<u8, Failure> {
    let pair = read_pair(path)?;
    let gammas = gamma_polytopes(&pair).map_err(psi_failure)?;
    print_json(&json!({ "gammas": gammas, "edges": pair_edges(&pair) }));
    Ok(0)
}

fn run_enum(
    opts: EnumOptions,
    conical: bool,
    count_only: bool,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    let stream = enumerate_polygons(opts).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut sink: Box<dyn Write> = match (&out, count_only) {
        (_, true) => Box::new(std::io::sink()),
        (Some(path), false) => Box::new(BufWriter::new(File::create(path)?)),
        (None, false) => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    let mut count = 0u64;
    for p in stream {
        if conical && !is_conical(&p).map_err(|e| Failure::Internal(e.to_string()))? {
            continue;
        }
        count += 1;
        writeln!(sink, "{}", serde_json::to_string(&p).expect("polygon json"))?;
    }
    sink.flush()?;
    if count_only || out.is_some() {
        println!("{count}");
    }
    Ok(0)
}

fn run_census(opts: CensusOptions) -> Result<u8, Failure> {
    let started = Instant::now();
    let report = census(&opts).map_err(|e| match e {
        CensusError::Inconsistency { .. } => Failure::Internal(e.to_string()),
        e => Failure::Usage(e.to_string()),
    })?;
    let s = &report.summary;
    eprintln!(
        "degree {}: {} conical polygons, {}/{} pairs processed, {} distinct Ψ, {} degenerate, {:.1}s with {} jobs",
        s.degree,
        s.conical_polygons,
        report.processed,
        s.pairs_total,
        s.distinct_psi,
        s.pairs_degenerate,
        started.elapsed().as_secs_f64(),
        opts.jobs,
    );
    if let Some(r) = &s.reference {
        eprintln!(
            "published for this degree: {} conical polygons, {} pairs, distinct Ψ {}",
            r.conical_polygons,
            r.pairs_total,
            r.distinct_psi.map_or("not reported".to_string(), |d| d.to_string()),
        );
    }
    let mut v = serde_json::to_value(s).expect("summary json");
    v["complete"] = json!(report.complete);
    v["processed"] = json!(report.processed);
    print_json(&v);
    Ok(if s.pairs_inconsistent > 0 { EXIT_SUPPRESSED } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Psi { pair } => run_psi(&pair),
        Command::Delta { pair } => run_delta(&pair),
        Command::Gamma { pair } => run_gamma(&pair),
        Command::Enum {
            k,
            min_dim,
            up_to_translation,
            conical,
            count_only,
            out,
        } => {
            let opts = EnumOptions::new(k)
                .min_dim(min_dim)
                .up_to_translation(up_to_translation);
            run_enum(opts, conical, count_only, out)
        }
        Command::Census {
            degree,
            jobs,
            checkpoint,
            out,
            paranoid,
            spot_rate,
            seed,
            keep_going,
            max_degree,
            stop_after,
        } => run_census(CensusOptions {
            degree,
            jobs,
            checkpoint,
            out,
            spot_rate: if paranoid { 1.0 } else { spot_rate },
            seed,
            keep_going,
            max_degree,
            stop_after,
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
