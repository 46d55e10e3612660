//! Command-line front end: build chain files, export spectra and fidelity
//! curves, run verification suites, and synthesize permutation plans.
//!
//! Subcommands: `chain build`, `chain spectrum`, `verify`, `fidelity`,
//! `perm`.  Outputs are UTF-8 JSON or CSV; `--out -` writes to standard
//! output.  The process exits 0 only when every check in the invoked
//! suite passes, 1 on a failed certificate, and 2 on usage or I/O errors.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::chain::{custom_chain, hahn_chain, krawtchouk_chain, ChainSpec, Family};
use crate::equivalences::{verify_hahn_ls_equivalence, verify_krawtchouk_spin_equivalence};
use crate::error::ChainError;
use crate::many_body::{mirror_check, sector_consistency_deviation, MIRROR_CHECK_MAX_QUBITS};
use crate::permutation::{plan_reversals, simulate_plan, SitePermutation, SIMULATE_PLAN_MAX_QUBITS};
use crate::single_particle::{
    analytic_eigensystem, fidelity_curve, find_mirror_time, numeric_eigensystem, Eigensystem,
    MIRROR_TOLERANCE,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid chain file {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "mirror-chain",
    version,
    about = "Mirror-periodic XY chains: build, verify, and export"
)]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Build chain files and export spectra.
    Chain {
        #[command(subcommand)]
        command: ChainCommand,
    },
    /// Run a verification suite against a chain file.
    Verify(VerifyArgs),
    /// Export the end-to-end transfer fidelity over a time grid as CSV.
    Fidelity(FidelityArgs),
    /// Plan (and optionally simulate) a site permutation by segment mirrors.
    Perm(PermArgs),
}

#[derive(Subcommand)]
enum ChainCommand {
    /// Write a chain specification as JSON.
    Build(BuildArgs),
    /// Export eigenvalues and eigenvectors as CSV.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Chain family: krawtchouk, hahn, or custom.
    #[arg(long)]
    family: String,
    /// Chain parameter N; the chain has N+1 sites.
    #[arg(long)]
    n: Option<usize>,
    /// Hahn parameter p (alpha = (2p+1)/(2q)).
    #[arg(long)]
    p: Option<i64>,
    /// Hahn parameter q; the predicted mirror period is q*pi.
    #[arg(long)]
    q: Option<i64>,
    /// Comma-separated couplings J_0..J_{N-1} (custom family).
    #[arg(long)]
    couplings: Option<String>,
    /// Comma-separated fields h_0..h_N (custom family).
    #[arg(long)]
    fields: Option<String>,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Chain JSON file.
    #[arg(long)]
    chain: String,
    /// Eigensystem source: numeric or analytic.
    #[arg(long, default_value = "numeric")]
    source: String,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Chain JSON file.
    #[arg(long)]
    chain: String,
    /// Suite: mirror, sectors, equiv, or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Mirror time: "auto" (q*pi for Hahn, empirical search otherwise) or a
    /// number.
    #[arg(long, default_value = "auto")]
    time: String,
    /// Seed for the random spot-check times of the sector suite.
    #[arg(long, default_value_t = 20240)]
    seed: u64,
    /// Search window for the empirical mirror time (auto mode).
    #[arg(long, default_value_t = 20.0)]
    t_max: f64,
    /// Number of grid points in the mirror-time scan.
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct FidelityArgs {
    /// Chain JSON file.
    #[arg(long)]
    chain: String,
    /// Time grid start:stop:step, e.g. 0:10:0.01.
    #[arg(long)]
    t: String,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct PermArgs {
    /// Target arrangement as a comma list: target[i] is the initial site of
    /// the qubit that ends at site i.
    #[arg(long)]
    target: Option<String>,
    /// Draw a random permutation instead (requires --n).
    #[arg(long)]
    random: bool,
    /// Number of sites for --random.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Multiply out the segment unitaries and verify the composite.
    #[arg(long)]
    simulate: bool,
    /// Segment mirror family: krawtchouk or hahn.
    #[arg(long, default_value = "krawtchouk")]
    family: String,
    /// Hahn segment parameter p.
    #[arg(long)]
    p: Option<i64>,
    /// Hahn segment parameter q.
    #[arg(long)]
    q: Option<i64>,
    /// Output path, or - for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

/// Parse arguments from the process environment and run.  Returns whether
/// every executed check passed.
pub fn run() -> Result<bool, CliError> {
    let cli = Cli::parse();
    match cli.command {
        TopCommand::Chain { command } => match command {
            ChainCommand::Build(args) => cmd_build(&args),
            ChainCommand::Spectrum(args) => cmd_spectrum(&args),
        },
        TopCommand::Verify(args) => cmd_verify(&args),
        TopCommand::Fidelity(args) => cmd_fidelity(&args),
        TopCommand::Perm(args) => cmd_perm(&args),
    }
}

fn cmd_build(args: &BuildArgs) -> Result<bool, CliError> {
    let spec = match args.family.as_str() {
        "krawtchouk" => {
            let n = require(args.n, "--n is required for krawtchouk")?;
            krawtchouk_chain(n)?
        }
        "hahn" => {
            let n = require(args.n, "--n is required for hahn")?;
            let p = require(args.p, "--p is required for hahn")?;
            let q = require(args.q, "--q is required for hahn")?;
            hahn_chain(n, p, q)?
        }
        "custom" => {
            let couplings = parse_f64_list(
                args.couplings.as_deref(),
                "--couplings is required for custom",
            )?;
            let fields = parse_f64_list(args.fields.as_deref(), "--fields is required for custom")?;
            let spec = custom_chain(couplings, fields)?;
            if !spec.is_mirror_symmetric() {
                eprintln!("note: custom chain is not mirror symmetric");
            }
            spec
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family '{other}' (expected krawtchouk, hahn, or custom)"
            )));
        }
    };
    let text = serde_json::to_string_pretty(&spec).expect("chain serialization");
    write_output(&args.out, &(text + "\n"))?;
    Ok(true)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<bool, CliError> {
    let spec = load_chain(&args.chain)?;
    let es: Eigensystem = match args.source.as_str() {
        "numeric" => numeric_eigensystem(&spec.single_particle_matrix()),
        "analytic" => analytic_eigensystem(&spec)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown source '{other}' (expected numeric or analytic)"
            )));
        }
    };
    let n = es.len();
    let mut out = String::from("k,energy");
    for l in 0..n {
        out.push_str(&format!(",phi_{l}"));
    }
    out.push('\n');
    for k in 0..n {
        out.push_str(&format!("{k},{:.16e}", es.energies[k]));
        for l in 0..n {
            out.push_str(&format!(",{:.16e}", es.vectors[[k, l]]));
        }
        out.push('\n');
    }
    write_output(&args.out, &out)?;
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let spec = load_chain(&args.chain)?;
    let mut results = Vec::new();
    let mut all_pass = true;
    let run_mirror = matches!(args.suite.as_str(), "mirror" | "all");
    let run_sectors = matches!(args.suite.as_str(), "sectors" | "all");
    let run_equiv = matches!(args.suite.as_str(), "equiv" | "all");
    if !(run_mirror || run_sectors || run_equiv) {
        return Err(CliError::Usage(format!(
            "unknown suite '{}' (expected mirror, sectors, equiv, or all)",
            args.suite
        )));
    }

    if run_mirror {
        let (pass, value) = mirror_suite(&spec, args)?;
        all_pass &= pass;
        results.push(value);
    }
    if run_sectors {
        let (pass, value) = sector_suite(&spec, args.seed)?;
        all_pass &= pass;
        results.push(value);
    }
    if run_equiv {
        match equiv_suite(&spec) {
            Ok((pass, value)) => {
                all_pass &= pass;
                results.push(value);
            }
            // `all` tolerates chains with no applicable equivalence; an
            // explicit `equiv` request does not.
            Err(err) if args.suite == "all" => {
                results.push(json!({
                    "check": "equivalence",
                    "skipped": err.to_string(),
                }));
            }
            Err(err) => return Err(err),
        }
    }

    let report = json!({
        "chain": chain_summary(&spec),
        "suite": args.suite,
        "metadata": {
            "bit_order": "s_0 is the least significant bit; site reversal reverses the index bits",
            "rng": "chacha8",
            "seed": args.seed,
            "tolerance": MIRROR_TOLERANCE,
        },
        "results": results,
        "pass": all_pass,
    });
    write_output(&args.out, &(serde_json::to_string_pretty(&report).unwrap() + "\n"))?;
    Ok(all_pass)
}

fn mirror_suite(spec: &ChainSpec, args: &VerifyArgs) -> Result<(bool, serde_json::Value), CliError> {
    if spec.n_sites > MIRROR_CHECK_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "verify --suite mirror",
            qubits: spec.n_sites,
            max: MIRROR_CHECK_MAX_QUBITS,
        }
        .into());
    }
    let mut search = serde_json::Value::Null;
    let mut note = serde_json::Value::Null;
    let (time, source) = if args.time == "auto" {
        match (spec.family, spec.predicted_period) {
            (Family::Hahn { .. }, Some(period)) => (period, "predicted q*pi"),
            _ => {
                let report = find_mirror_time(spec, args.t_max, args.grid)?;
                search = json!({
                    "mirror_time": report.mirror_time,
                    "residual": report.residual,
                    "global_phase": {"re": report.global_phase.re, "im": report.global_phase.im},
                    "found": report.is_mirror(),
                });
                note = json!(format!(
                    "empirical mirror time {:.12}; halving every coupling doubles it to {:.12}",
                    report.mirror_time,
                    2.0 * report.mirror_time
                ));
                (report.mirror_time, "empirical search")
            }
        }
    } else {
        let t: f64 = args
            .time
            .parse()
            .map_err(|_| CliError::Usage(format!("--time must be 'auto' or a number, got '{}'", args.time)))?;
        (t, "given")
    };
    let certificate = mirror_check(spec, time)?;
    let pass = certificate.passes();
    Ok((
        pass,
        json!({
            "check": "mirror",
            "time": time,
            "time_source": source,
            "search": search,
            "note": note,
            "certificate": certificate.to_json(),
            "pass": pass,
        }),
    ))
}

fn sector_suite(spec: &ChainSpec, seed: u64) -> Result<(bool, serde_json::Value), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let times: Vec<f64> = (0..5)
        .map(|_| rng.gen_range(f64::EPSILON..=2.0 * std::f64::consts::PI))
        .collect();
    let deviation = sector_consistency_deviation(spec, &times)?;
    let pass = deviation <= MIRROR_TOLERANCE;
    Ok((
        pass,
        json!({
            "check": "sectors",
            "times": times,
            "max_deviation": deviation,
            "pass": pass,
        }),
    ))
}

fn equiv_suite(spec: &ChainSpec) -> Result<(bool, serde_json::Value), CliError> {
    match spec.family {
        Family::Krawtchouk => {
            let report = verify_krawtchouk_spin_equivalence(spec.n())?;
            let pass = report.pass;
            Ok((
                pass,
                json!({
                    "check": "equivalence",
                    "kind": "krawtchouk-spin",
                    "report": serde_json::to_value(&report).unwrap(),
                    "pass": pass,
                }),
            ))
        }
        Family::Hahn { p, q } => {
            if q != 1 {
                return Err(CliError::Usage(format!(
                    "L.S equivalence needs the q = 1 Hahn family, chain has q = {q}"
                )));
            }
            if spec.n().is_multiple_of(2) {
                return Err(CliError::Usage(format!(
                    "L.S equivalence needs N = 2S odd, chain has N = {}",
                    spec.n()
                )));
            }
            let s = spec.n() as f64 / 2.0;
            let l = s + p as f64 + 0.5;
            let report = verify_hahn_ls_equivalence(l, s)?;
            let pass = report.pass;
            Ok((
                pass,
                json!({
                    "check": "equivalence",
                    "kind": "hahn-ls",
                    "l": l,
                    "s": s,
                    "report": serde_json::to_value(&report).unwrap(),
                    "pass": pass,
                }),
            ))
        }
        Family::Custom => Err(CliError::Usage(
            "no Hamiltonian equivalence applies to custom chains".into(),
        )),
    }
}

fn cmd_fidelity(args: &FidelityArgs) -> Result<bool, CliError> {
    let spec = load_chain(&args.chain)?;
    let times = parse_time_grid(&args.t)?;
    let curve = fidelity_curve(&spec, &times);
    let mut out = String::from("t,fidelity\n");
    for (t, fidelity) in curve {
        out.push_str(&format!("{t:.11e},{fidelity:.11e}\n"));
    }
    write_output(&args.out, &out)?;
    Ok(true)
}

fn cmd_perm(args: &PermArgs) -> Result<bool, CliError> {
    let target = if let Some(list) = &args.target {
        let sites: Vec<usize> = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad site index '{s}' in --target")))
            })
            .collect::<Result<_, _>>()?;
        SitePermutation::new(sites)?
    } else if args.random {
        let n = require(args.n, "--n is required with --random")?;
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut sites: Vec<usize> = (0..n).collect();
        // Fisher-Yates with the seeded stream.
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            sites.swap(i, j);
        }
        SitePermutation::new(sites)?
    } else {
        return Err(CliError::Usage(
            "pass --target i,j,k or --random --n SITES".into(),
        ));
    };

    let plan = plan_reversals(&target);
    let mut pass = true;
    let mut report = json!({
        "target": target.mapping(),
        "plan": serde_json::to_value(&plan).unwrap(),
        "metadata": {"rng": "chacha8", "seed": args.seed},
    });
    if args.simulate {
        if target.n_sites() > SIMULATE_PLAN_MAX_QUBITS {
            return Err(ChainError::RegisterTooLarge {
                operation: "perm --simulate",
                qubits: target.n_sites(),
                max: SIMULATE_PLAN_MAX_QUBITS,
            }
            .into());
        }
        let family = segment_family(args)?;
        let verification = simulate_plan(target.n_sites(), &plan, &family)?;
        pass = verification.passes();
        report["verification"] = verification.to_json();
    }
    write_output(&args.out, &(serde_json::to_string_pretty(&report).unwrap() + "\n"))?;
    Ok(pass)
}

fn segment_family(args: &PermArgs) -> Result<Family, CliError> {
    match args.family.as_str() {
        "krawtchouk" => Ok(Family::Krawtchouk),
        "hahn" => Ok(Family::Hahn {
            p: args.p.unwrap_or(0),
            q: args.q.unwrap_or(1),
        }),
        other => Err(CliError::Usage(format!(
            "unknown segment family '{other}' (expected krawtchouk or hahn)"
        ))),
    }
}

fn chain_summary(spec: &ChainSpec) -> serde_json::Value {
    json!({
        "family": spec.family.name(),
        "n_sites": spec.n_sites,
        "alpha": spec.alpha(),
        "predicted_period": spec.predicted_period,
        "mirror_symmetric": spec.is_mirror_symmetric(),
    })
}

fn require<T>(value: Option<T>, message: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(message.into()))
}

fn parse_f64_list(list: Option<&str>, missing: &str) -> Result<Vec<f64>, CliError> {
    let list = list.ok_or_else(|| CliError::Usage(missing.into()))?;
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number '{s}' in list")))
        })
        .collect()
}

/// Parse `start:stop:step` into an inclusive time grid.
fn parse_time_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "bad time grid '{text}' (expected start:stop:step)"
        )));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad number '{s}' in time grid")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !step.is_finite() || step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "bad time grid '{text}' (need step > 0 and stop >= start)"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn load_chain(path: &str) -> Result<ChainSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let spec: ChainSpec = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })?;
    spec.validate()?;
    Ok(spec)
}

fn write_output(path: &str, contents: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io {
                path: "-".into(),
                source,
            })
    } else {
        fs::write(path, contents).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_grid_parsing() {
        let grid = parse_time_grid("0:1:0.25").unwrap();
        assert_eq!(grid.len(), 5);
        assert_eq!(grid[0], 0.0);
        assert!((grid[4] - 1.0).abs() < 1e-12);

        assert!(parse_time_grid("0:1").is_err());
        assert!(parse_time_grid("0:1:-0.1").is_err());
        assert!(parse_time_grid("1:0:0.1").is_err());
        assert!(parse_time_grid("a:b:c").is_err());
    }

    #[test]
    fn list_parsing() {
        assert_eq!(
            parse_f64_list(Some("1, 2.5,3"), "missing").unwrap(),
            vec![1.0, 2.5, 3.0]
        );
        assert!(parse_f64_list(Some("1,x"), "missing").is_err());
        assert!(parse_f64_list(None, "missing").is_err());
    }
}
