//! `qsc` — exact quantum Schubert calculus and eigenvalue-polytope toolkit.
//!
//! Exit codes: 0 = success / member / no violations; 1 = semantic negative
//! (non-member, sample violations, realization failure); 2 = malformed
//! input; 3 = internal invariant breach.

mod cache;
mod output;
mod selftest;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsc_core::fusion::{fusion_product, verlinde_ur_basis_product, SuLevelWeight, UrWeight};
use qsc_core::lp;
use qsc_core::lr::classical_product;
use qsc_core::polytope::{
    check_membership, generate_additive, generate_multiplicative, EigenTuple, SystemKind,
};
use qsc_core::quantum::{quantum_product, QuantumClass};
use qsc_core::schubert::GrassCtx;
use qsc_core::verify::{realize, verify_products, verify_sums, RealizeOptions};
use qsc_core::{CohomologyClass, Partition};

use output::Term;

#[derive(Parser)]
#[command(
    name = "qsc",
    version,
    about = "Exact quantum Schubert calculus and SU(n) eigenvalue polytopes",
    long_about = "Generates the complete inequality description of the polytope of \
                  eigenvalue tuples of special-unitary matrices with product one (and \
                  of the additive Hermitian cone), tests exact membership, computes \
                  quantum cohomology and fusion products, and verifies the description \
                  against random samples and a matrix-realization search."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON on stdout instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// Cap the number of worker threads (output is identical at any cap).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Ignore the on-disk product cache for this run.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two Schubert basis classes (quantum by default).
    Product(ProductArgs),
    /// Generate the inequality description of the polytope or cone.
    Inequalities(InequalitiesArgs),
    /// Exact membership test for a tuple file.
    Member(MemberArgs),
    /// Monte Carlo sweep of random identity-sum/product tuples.
    Sample(SampleArgs),
    /// Search for unitary matrices realizing a tuple.
    Realize(RealizeArgs),
    /// Fusion product at a level, or the U(r) Verlinde product.
    Fusion(FusionArgs),
    /// Run the built-in invariant suite (exit 3 on any breach).
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ProductArgs {
    /// Ambient dimension n of G(r,n).
    #[arg(long)]
    n: u32,
    /// Subspace rank r of G(r,n).
    #[arg(long)]
    r: u32,
    /// Left factor as a comma list, e.g. "2,1" ("0" is the unit class).
    #[arg(long)]
    lhs: String,
    /// Right factor, same syntax.
    #[arg(long)]
    rhs: String,
    /// Cup product only (the q = 0 part).
    #[arg(long)]
    classical: bool,
}

#[derive(Args)]
struct InequalitiesArgs {
    /// Ambient dimension n (matrices in SU(n)).
    #[arg(long)]
    n: u32,
    /// Number of factors l.
    #[arg(long)]
    l: u32,
    /// Describe the additive Hermitian cone instead of the product polytope.
    #[arg(long)]
    additive: bool,
    /// Drop records implied by the rest (exact LP test).
    #[arg(long)]
    filter_redundant: bool,
    /// Write the system JSON to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MemberArgs {
    /// Tuple file (JSON with rationals as "p/q" strings).
    #[arg(long, value_name = "FILE")]
    point: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    /// Ambient dimension n.
    #[arg(long)]
    n: u32,
    /// Number of factors l.
    #[arg(long)]
    l: u32,
    /// Number of random tuples to draw.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// RNG seed (same seed ⟹ byte-identical output).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Violation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Sample Hermitian sums against the additive cone instead.
    #[arg(long)]
    additive: bool,
}

#[derive(Args)]
struct RealizeArgs {
    /// Tuple file (JSON with rationals as "p/q" strings).
    #[arg(long, value_name = "FILE")]
    point: PathBuf,
    /// Residual below which the search counts as success.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Gradient steps per restart.
    #[arg(long, default_value_t = 4000)]
    max_iter: u32,
    /// Random restarts after the deterministic start.
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// RNG seed for the restarts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FusionGroup {
    /// Level-N fusion ring of SU(n).
    Su,
    /// Verlinde ring of U(r) at level (n−r, n).
    Ur,
}

#[derive(Args)]
struct FusionArgs {
    /// Which ring to multiply in.
    #[arg(long, value_enum)]
    group: FusionGroup,
    /// Ambient dimension n (for both groups).
    #[arg(long)]
    n: u32,
    /// Level N (su only).
    #[arg(long)]
    level: Option<u32>,
    /// Rank r (ur only).
    #[arg(long)]
    r: Option<u32>,
    /// Left weight as a comma list of parts ("0" is the trivial weight).
    #[arg(long)]
    lhs: String,
    /// Right weight, same syntax.
    #[arg(long)]
    rhs: String,
}

#[derive(Args)]
struct SelftestArgs {
    /// Trials for the sampling check.
    #[arg(long, default_value_t = 500)]
    trials: u64,
}

/// Semantic outcome of a successfully executed command.
enum Verdict {
    Pass,
    Negative,
}

/// Command failures, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input (flags, files, out-of-box data) → exit 2.
    Input(String),
    /// Broken internal invariant → exit 3.
    Internal(String),
}

impl From<qsc_core::Error> for CliError {
    fn from(e: qsc_core::Error) -> Self {
        if e.is_input() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("json: {e}"))
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader closes the pipe (`qsc … | head`), like
    // any other Unix filter, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        // First rayon use in the process; building the global pool here
        // cannot race with the lazily created default pool.
        if rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("error: worker pool already initialized");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Verdict, CliError> {
    match &cli.command {
        Command::Product(a) => cmd_product(cli, a),
        Command::Inequalities(a) => cmd_inequalities(cli, a),
        Command::Member(a) => cmd_member(cli, a),
        Command::Sample(a) => cmd_sample(cli, a),
        Command::Realize(a) => cmd_realize(cli, a),
        Command::Fusion(a) => cmd_fusion(cli, a),
        Command::Selftest(a) => selftest::run(cli.json, cli.no_cache, a.trials),
    }
}

/// Quantum product of two basis classes as output terms; the single
/// computation path behind both the `product` command and the cache
/// re-validation in `selftest`.
pub(crate) fn quantum_terms(
    r: u32,
    n: u32,
    lhs: &Partition,
    rhs: &Partition,
) -> Result<Vec<Term>, CliError> {
    let ctx = GrassCtx::new(r, n)?;
    let prod = quantum_product(
        &QuantumClass::basis(ctx, lhs.clone(), 0)?,
        &QuantumClass::basis(ctx, rhs.clone(), 0)?,
        None,
    )?;
    Ok(prod
        .terms()
        .iter()
        .map(|((p, d), c)| Term { partition: p.parts().to_vec(), q: *d, coeff: c.clone() })
        .collect())
}

/// Parses a comma list into a partition; "0" (or "") is the empty one.
fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Partition::new(Vec::new())?);
    }
    let parts = trimmed
        .split(',')
        .map(|w| {
            w.trim()
                .parse::<u32>()
                .map_err(|e| CliError::Input(format!("bad part {w:?} in {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

/// Same syntax for weight coordinates, which may be any integers.
fn parse_coords(s: &str) -> Result<Vec<i64>, CliError> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|w| {
            w.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Input(format!("bad coordinate {w:?} in {s:?}: {e}")))
        })
        .collect()
}

fn cmd_product(cli: &Cli, a: &ProductArgs) -> Result<Verdict, CliError> {
    let ctx = GrassCtx::new(a.r, a.n)?;
    let lhs = parse_partition(&a.lhs)?;
    let rhs = parse_partition(&a.rhs)?;
    for p in [&lhs, &rhs] {
        if !ctx.fits(p) {
            return Err(CliError::Input(format!(
                "partition {:?} does not fit the {}×{} box of G({},{})",
                p.parts(),
                a.r,
                a.n - a.r,
                a.r,
                a.n
            )));
        }
    }
    let terms: Vec<Term> = if a.classical {
        let prod = classical_product(
            &CohomologyClass::basis(ctx, lhs)?,
            &CohomologyClass::basis(ctx, rhs)?,
            None,
        )?;
        prod.terms()
            .iter()
            .map(|(p, c)| Term { partition: p.parts().to_vec(), q: 0, coeff: c.clone() })
            .collect()
    } else {
        let mut store = cache::Store::open(cli.no_cache)?;
        let key = cache::key(a.r, a.n, &lhs, &rhs);
        match store.as_ref().and_then(|s| s.get(&key)).transpose()? {
            Some(hit) => hit,
            None => {
                let fresh = quantum_terms(a.r, a.n, &lhs, &rhs)?;
                if let Some(s) = store.as_mut() {
                    s.put(key, &fresh);
                    s.save()?;
                }
                fresh
            }
        }
    };
    output::emit_terms(cli.json, &terms);
    Ok(Verdict::Pass)
}

fn cmd_inequalities(cli: &Cli, a: &InequalitiesArgs) -> Result<Verdict, CliError> {
    let sys = if a.additive {
        generate_additive(a.n, a.l, None)?
    } else {
        generate_multiplicative(a.n, a.l, None)?
    };
    let sys = if a.filter_redundant { lp::filter_redundant(&sys) } else { sys };
    if let Some(path) = &a.out {
        let body = serde_json::to_string_pretty(&sys)?;
        fs::write(path, body + "\n")?;
        println!("wrote {} records to {}", sys.inequalities.len(), path.display());
    } else if cli.json {
        println!("{}", serde_json::to_string(&sys)?);
    } else {
        output::print_system(&sys);
    }
    Ok(Verdict::Pass)
}

fn read_tuple(path: &PathBuf) -> Result<EigenTuple, CliError> {
    let body = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&body)?)
}

fn cmd_member(cli: &Cli, a: &MemberArgs) -> Result<Verdict, CliError> {
    let tuple = read_tuple(&a.point)?;
    let sys = match tuple.kind() {
        SystemKind::Multiplicative => generate_multiplicative(tuple.n(), tuple.l(), None)?,
        SystemKind::Additive => generate_additive(tuple.n(), tuple.l(), None)?,
    };
    let report = check_membership(&sys, &tuple)?;
    if cli.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        output::print_membership(&report);
    }
    Ok(if report.member { Verdict::Pass } else { Verdict::Negative })
}

fn cmd_sample(cli: &Cli, a: &SampleArgs) -> Result<Verdict, CliError> {
    let report = if a.additive {
        let sys = generate_additive(a.n, a.l, None)?;
        verify_sums(&sys, a.trials, a.seed, a.tol)?
    } else {
        let sys = generate_multiplicative(a.n, a.l, None)?;
        verify_products(&sys, a.trials, a.seed, a.tol)?
    };
    if cli.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        output::print_sample(&report);
    }
    Ok(if report.violations.is_empty() { Verdict::Pass } else { Verdict::Negative })
}

fn cmd_realize(cli: &Cli, a: &RealizeArgs) -> Result<Verdict, CliError> {
    let tuple = read_tuple(&a.point)?;
    let opts =
        RealizeOptions { tol: a.tol, max_iter: a.max_iter, restarts: a.restarts, seed: a.seed };
    let outcome = realize(&tuple, &opts)?;
    output::emit_realize(cli.json, &outcome)?;
    Ok(if outcome.is_realized() { Verdict::Pass } else { Verdict::Negative })
}

fn cmd_fusion(cli: &Cli, a: &FusionArgs) -> Result<Verdict, CliError> {
    let pairs: Vec<(String, num_bigint::BigInt)> = match a.group {
        FusionGroup::Su => {
            let level = a
                .level
                .ok_or_else(|| CliError::Input("--level is required with --group su".into()))?;
            if a.r.is_some() {
                return Err(CliError::Input("--r applies only to --group ur".into()));
            }
            let lhs = SuLevelWeight::new(a.n, level, parse_coords(&a.lhs)?)?;
            let rhs = SuLevelWeight::new(a.n, level, parse_coords(&a.rhs)?)?;
            fusion_product(&lhs, &rhs, None)?
                .into_iter()
                .map(|(w, c)| (output::render_parts(w.parts()), c))
                .collect()
        }
        FusionGroup::Ur => {
            let r = a.r.ok_or_else(|| CliError::Input("--r is required with --group ur".into()))?;
            if a.level.is_some() {
                return Err(CliError::Input("--level applies only to --group su".into()));
            }
            let to_parts = |s: &str| -> Result<Vec<u32>, CliError> {
                parse_coords(s)?
                    .into_iter()
                    .map(|x| {
                        u32::try_from(x).map_err(|_| {
                            CliError::Input(format!("U(r) weight parts must be ≥ 0, got {x}"))
                        })
                    })
                    .collect()
            };
            let lhs = UrWeight::new(r, a.n, to_parts(&a.lhs)?)?;
            let rhs = UrWeight::new(r, a.n, to_parts(&a.rhs)?)?;
            verlinde_ur_basis_product(&lhs, &rhs, None)?
                .into_iter()
                .map(|(w, c)| (output::render_parts(w.parts()), c))
                .collect()
        }
    };
    output::emit_fusion(cli.json, &pairs)?;
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn partition_flag_syntax() {
        assert_eq!(parse_partition("0").unwrap().parts(), &[] as &[u32]);
        assert_eq!(parse_partition("").unwrap().parts(), &[] as &[u32]);
        assert_eq!(parse_partition(" 2, 1 ").unwrap().parts(), &[2, 1]);
        assert!(parse_partition("x").is_err());
        assert!(parse_partition("1,2").is_err(), "must reject increasing parts");
    }

    #[test]
    fn coordinate_flag_syntax() {
        assert_eq!(parse_coords("0").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_coords("3,-1").unwrap(), vec![3, -1]);
        assert!(parse_coords("1.5").is_err());
    }

    #[test]
    fn quantum_terms_known_value() {
        let lam = Partition::new([2u32, 1]).unwrap();
        let terms = quantum_terms(2, 4, &lam, &lam).unwrap();
        let expect =
            |parts: &[u32], q: u32| Term { partition: parts.to_vec(), q, coeff: BigInt::from(1) };
        assert_eq!(terms, vec![expect(&[1, 1], 1), expect(&[2], 1)]);
    }
}
