//! Command-line front end: parses group and functor literals, runs the
//! limit/derived-functor computations, and emits human tables or JSON.
//!
//! Exit codes: 0 on success, 2 on parse or argument errors, 3 when an
//! internal runtime check fails (a differential that does not square to zero,
//! a summand that does not split), 4 when a verification suite reports a
//! failed check.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use functor_limits::{
    derived, k3_homology, limit_complex_free, limit_complex_via_cone, parse_functor, parse_group,
    run_suite, Error, FinAbGroup, IntMatrix, K3Row, Presentation, Result, VerifyOpts,
};

#[derive(Parser)]
#[command(
    name = "functor-limits",
    version,
    about = "Exact higher limits of polynomial functors over presentation categories",
    after_help = "The FUNCTOR_LIMITS_TRUNC_SLACK environment variable (integer >= 0) raises\n\
                  every internal truncation bound, for robustness testing."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Higher limits of a polynomial functor of the relation lattice
    Limits(LimitsArgs),
    /// Dold-Puppe derived functors L_i Phi(A, q)
    Derived(DerivedArgs),
    /// Integral homology of the third Eilenberg-MacLane space of Z
    #[command(name = "k3-homology")]
    K3Homology(K3Args),
    /// Run named verification suites and report one line per check
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct LimitsArgs {
    /// Functor literal: tensor:d, sym:d, ext:d, gamma:d, or dual(...)
    #[arg(long)]
    functor: String,
    /// Group literal: Z, Z^r, Z/n, 0, or a +-joined sum
    #[arg(long)]
    group: String,
    /// Compute over a presentation with this many extra redundant generators
    /// (forces the cone route; without it free groups use the free route)
    #[arg(long)]
    presentation_rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct DerivedArgs {
    /// Functor literal: tensor:d, sym:d, ext:d, gamma:d, or dual(...)
    #[arg(long)]
    functor: String,
    /// Group literal: Z, Z^r, Z/n, 0, or a +-joined sum
    #[arg(long)]
    group: String,
    /// Eilenberg-MacLane level of the simplicial model (0 or 1)
    #[arg(long, default_value_t = 0)]
    q: usize,
    /// Highest derived index to compute (default: functor degree + 1)
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct K3Args {
    /// Highest homological degree to report (at least 4)
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; `all` runs everything, `paper` the theorem grid
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest functor degree in the grids
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Largest free rank in the grids
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Limits(args) => cmd_limits(&args),
        Command::Derived(args) => cmd_derived(&args),
        Command::K3Homology(args) => cmd_k3(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Invalid(_) => ExitCode::from(2),
                Error::NotAComplex { .. } | Error::Internal(_) => ExitCode::from(3),
            }
        }
    }
}

fn torsion_u64(g: &FinAbGroup) -> Vec<u64> {
    g.torsion().iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)).collect()
}

fn group_row(i: usize, g: &FinAbGroup) -> serde_json::Value {
    serde_json::json!({
        "i": i,
        "free_rank": g.free_rank(),
        "torsion": torsion_u64(g),
    })
}

fn cmd_limits(args: &LimitsArgs) -> Result<ExitCode> {
    let phi = parse_functor(&args.functor)?;
    let a = parse_group(&args.group)?;
    let start = Instant::now();
    let lc = match args.presentation_rank {
        None if a.torsion().is_empty() => limit_complex_free(&phi, a.free_rank())?,
        None => limit_complex_via_cone(&phi, &Presentation::canonical(&a))?,
        Some(extra) => {
            let gens = a.free_rank() + a.torsion().len();
            let ones = IntMatrix::from_fn(gens, extra, |_, _| functor_limits::int(1));
            let p = Presentation::with_redundant_generators(&a, &ones)?;
            limit_complex_via_cone(&phi, &p)?
        }
    };
    let lims = lc.limits();
    let ms = start.elapsed().as_millis() as u64;
    match args.format {
        Format::Json => {
            let results: Vec<_> =
                lims.iter().enumerate().map(|(i, g)| group_row(i, g)).collect();
            let payload = serde_json::json!({
                "command": "limits",
                "functor": phi.to_string(),
                "group": a.to_string(),
                "results": results,
                "route": lc.route().to_string(),
                "ms": ms,
            });
            println!("{payload}");
        }
        Format::Table => {
            println!("higher limits of {phi} relations over {a} ({} route, {ms}ms)", lc.route());
            for (i, g) in lims.iter().enumerate() {
                println!("  lim^{i} = {g}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_derived(args: &DerivedArgs) -> Result<ExitCode> {
    let phi = parse_functor(&args.functor)?;
    let a = parse_group(&args.group)?;
    let i_max = args.max_n.unwrap_or(phi.degree() + 1);
    let start = Instant::now();
    let result = derived(&phi, &a, args.q, i_max)?;
    let ms = start.elapsed().as_millis() as u64;
    match args.format {
        Format::Json => {
            let results: Vec<_> =
                result.values().iter().enumerate().map(|(i, g)| group_row(i, g)).collect();
            let payload = serde_json::json!({
                "command": "derived",
                "functor": phi.to_string(),
                "group": a.to_string(),
                "results": results,
                "ms": ms,
            });
            println!("{payload}");
        }
        Format::Table => {
            println!("derived functors of {phi} on ({a}, q = {}) ({ms}ms)", args.q);
            for (i, g) in result.values().iter().enumerate() {
                println!("  L_{i} = {g}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn contributions_line(row: &K3Row) -> String {
    if row.contributions.is_empty() {
        return "no nonzero contributions".to_string();
    }
    let items: Vec<String> = row
        .contributions
        .iter()
        .map(|(d, g)| format!("sym:{d} gives {g}"))
        .collect();
    items.join(", ")
}

fn cmd_k3(args: &K3Args) -> Result<ExitCode> {
    if args.max_n < 4 {
        return Err(Error::invalid("--max-n must be at least 4"));
    }
    let start = Instant::now();
    let rows = k3_homology(args.max_n)?;
    let ms = start.elapsed().as_millis() as u64;
    match args.format {
        Format::Json => {
            let results: Vec<_> =
                rows.iter().map(|row| group_row(row.n, &row.homology)).collect();
            let payload = serde_json::json!({
                "command": "k3-homology",
                "results": results,
                "ms": ms,
            });
            println!("{payload}");
        }
        Format::Table => {
            println!("integral homology of the third Eilenberg-MacLane space of Z ({ms}ms)");
            for row in &rows {
                println!("  H_{} = {}  ({})", row.n, row.homology, contributions_line(row));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let opts = VerifyOpts {
        max_degree: args.max_degree,
        max_rank: args.max_rank,
        ..VerifyOpts::default()
    };
    let start = Instant::now();
    let checks = run_suite(&args.suite, &opts)?;
    let ms = start.elapsed().as_millis() as u64;
    let failures = checks.iter().filter(|c| !c.passed).count();
    match args.format {
        Format::Json => {
            let results: Vec<_> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name,
                        "passed": c.passed,
                        "details": c.details,
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "command": "verify",
                "suite": args.suite,
                "results": results,
                "failures": failures,
                "ms": ms,
            });
            println!("{payload}");
        }
        Format::Table => {
            for c in &checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                println!("{verdict} {} -- {}", c.name, c.details);
            }
            println!("suite {}: {} checks, {failures} failed ({ms}ms)", args.suite, checks.len());
        }
    }
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(4))
    }
}
