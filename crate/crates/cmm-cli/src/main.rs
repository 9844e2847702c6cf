//! `cmm`: compute Macdonald polynomials and norms, and verify the
//! Cherednik-Macdonald-Mehta identity family over parameter grids.
//!
//! Exit codes: 0 when everything requested passed, 1 when any
//! verification failed, 2 on usage errors. Machine output (`--format
//! json`) is one report object per line with fields {identity, params,
//! lhs, rhs, difference, passed, elapsed_ms}; all values are canonical
//! exact strings, never floats.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmm_core::gaussian::{ball_order_for_guaranteed, gaussian_eval_property, prop1_coefficient_check, verify_eq5};
use cmm_core::laurent::{rat, rat_int};
use cmm_core::macdonald::macdonald_poly;
use cmm_core::report::VerificationReport;
use cmm_core::roots::{RootSystem, Weight};
use cmm_core::verify::{
    dominant_grid, run_parallel, seeded_coefficient_maps, verify_eq1, verify_eq7, verify_eq8,
    verify_norm, verify_symmetry, CmmInstance,
};
use num_rational::BigRational;
use num_traits::Signed;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cmm", version, about = "Exact Macdonald polynomial and identity verification for A_{n-1}")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Macdonald polynomial P_lambda at parameter k
    Mpoly(MpolyArgs),
    /// Compare the direct norm <P,P>_k with the closed-form product
    Norm(NormArgs),
    /// Verify an identity over a parameter grid
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output lines to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MpolyArgs {
    /// Rank parameter n >= 2 of A_{n-1}
    #[arg(long)]
    n: usize,
    /// Deformation parameter k >= 1
    #[arg(long, default_value_t = 1)]
    k: i64,
    /// Dominant weight as comma-separated fundamental coefficients a1,..,a_{n-1}
    #[arg(long)]
    lambda: String,
    /// Print the expansion into e-monomials instead of the m-basis form
    #[arg(long)]
    expand: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: i64,
    /// Dominant weight as comma-separated fundamental coefficients
    #[arg(long)]
    lambda: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Gaussian-weighted inner product against the first closed form
    Eq1,
    /// Gaussian-weighted inner product against the second closed form
    Eq8,
    /// Character-expansion corollary with seeded coefficient maps
    Eq7,
    /// Gaussian expansion in quantum-dimension-weighted characters
    Prop1,
    /// Rank-2 Gaussian identity
    Eq5,
    /// Direct norm against the closed-form product
    Norms,
    /// lambda <-> mu symmetry of the closed form
    Symmetry,
    /// Formal evaluation identity of the Gaussian
    GaussEval,
    /// Everything above at grid defaults (the CI entry point)
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Which identity to verify
    #[arg(value_enum)]
    which: CheckKind,
    /// Restrict to one rank parameter (default: grid over n = 2 and 3)
    #[arg(long)]
    n: Option<usize>,
    /// Restrict to one k (default per n: k in {1,2,3} for n=2, {1,2} for n=3)
    #[arg(long)]
    k: Option<i64>,
    /// Pin lambda (fundamental coefficients) instead of the grid
    #[arg(long)]
    lambda: Option<String>,
    /// Pin mu (fundamental coefficients) instead of the grid
    #[arg(long)]
    mu: Option<String>,
    /// Truncation order p or p/r for series checks (eq5, prop1, gauss-eval)
    #[arg(long, allow_hyphen_values = true)]
    order: Option<String>,
    /// Bound on fundamental coefficients of grid weights
    #[arg(long)]
    max_coeff: Option<i64>,
    /// Worker threads (default: CMM_THREADS or available parallelism)
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Mpoly(args) => cmd_mpoly(args),
        Cmd::Norm(args) => cmd_norm(args),
        Cmd::Check(args) => cmd_check(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, String> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let coeffs = parts.map_err(|e| format!("invalid weight '{s}': {e}"))?;
    if coeffs.len() != rs.n() - 1 {
        return Err(format!(
            "weight '{s}' has {} coefficients, expected {} for n={}",
            coeffs.len(),
            rs.n() - 1,
            rs.n()
        ));
    }
    rs.from_fundamental(&coeffs).map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<BigRational, String> {
    let value = match s.split_once('/') {
        Some((p, r)) => {
            let p: i64 = p.trim().parse().map_err(|e| format!("invalid order '{s}': {e}"))?;
            let r: i64 = r.trim().parse().map_err(|e| format!("invalid order '{s}': {e}"))?;
            if r == 0 {
                return Err(format!("invalid order '{s}': zero denominator"));
            }
            rat(p, r)
        }
        None => {
            let p: i64 = s.trim().parse().map_err(|e| format!("invalid order '{s}': {e}"))?;
            rat_int(p)
        }
    };
    if value.is_negative() {
        return Err(format!("order must be nonnegative, got {s}"));
    }
    Ok(value)
}

fn validate_nk(n: usize, k: i64) -> Result<(), String> {
    if n < 2 {
        return Err(format!("n must be at least 2, got {n}"));
    }
    if k < 1 {
        return Err(format!("k must be at least 1, got {k}"));
    }
    Ok(())
}

fn write_lines(output: &OutputArgs, lines: &[String]) -> Result<(), String> {
    match &output.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            for line in lines {
                writeln!(f, "{line}").map_err(|e| e.to_string())?;
            }
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut h = stdout.lock();
            for line in lines {
                writeln!(h, "{line}").map_err(|e| e.to_string())?;
            }
            Ok(())
        }
    }
}

fn cmd_mpoly(args: MpolyArgs) -> Result<u8, String> {
    validate_nk(args.n, args.k)?;
    let rs = RootSystem::new(args.n);
    let lam = parse_weight(&rs, &args.lambda)?;
    let p = macdonald_poly(&lam, args.k);
    let lines = match args.output.format {
        Format::Text => {
            if args.expand {
                vec![p.render_e_basis()]
            } else {
                vec![p.render_m_basis(&rs)]
            }
        }
        Format::Json => {
            let v = serde_json::json!({
                "n": args.n,
                "k": args.k,
                "lambda": args.lambda,
                "m_basis": p.render_m_basis(&rs),
                "e_basis": p.render_e_basis(),
            });
            vec![v.to_string()]
        }
    };
    write_lines(&args.output, &lines)?;
    Ok(0)
}

fn cmd_norm(args: NormArgs) -> Result<u8, String> {
    validate_nk(args.n, args.k)?;
    let rs = RootSystem::new(args.n);
    let lam = parse_weight(&rs, &args.lambda)?;
    let report = verify_norm(args.n, args.k, &lam);
    let lines = match args.output.format {
        Format::Text => vec![
            format!("norm_direct  = {}", report.lhs),
            format!("norm_formula = {}", report.rhs),
            format!("agree: {}", report.passed),
        ],
        Format::Json => vec![report.to_json_line()],
    };
    write_lines(&args.output, &lines)?;
    Ok(if report.passed { 0 } else { 1 })
}

/// Per-rank grid rows (n, ks, max fundamental coefficient) after
/// applying command-line restrictions to the defaults.
fn grid_rows(args: &CheckArgs) -> Vec<(usize, Vec<i64>, i64)> {
    let defaults: Vec<(usize, Vec<i64>, i64)> = vec![(2, vec![1, 2, 3], 3), (3, vec![1, 2], 2)];
    let mut rows: Vec<(usize, Vec<i64>, i64)> = match args.n {
        None => defaults,
        Some(n) => match defaults.into_iter().find(|(dn, _, _)| *dn == n) {
            Some(row) => vec![row],
            // a rank outside the default grid gets a minimal default
            None => vec![(n, vec![1], 1)],
        },
    };
    for row in rows.iter_mut() {
        if let Some(k) = args.k {
            row.1 = vec![k];
        }
        if let Some(b) = args.max_coeff {
            row.2 = b;
        }
    }
    rows
}

fn weights_for(rs: &RootSystem, pinned: &Option<String>, max: i64) -> Result<Vec<Weight>, String> {
    match pinned {
        Some(s) => Ok(vec![parse_weight(rs, s)?]),
        None => Ok(dominant_grid(rs.n(), max)),
    }
}

fn cmm_grid(args: &CheckArgs) -> Result<Vec<CmmInstance>, String> {
    let mut out = Vec::new();
    for (n, ks, max) in grid_rows(args) {
        validate_nk(n, 1)?;
        let rs = RootSystem::new(n);
        let lams = weights_for(&rs, &args.lambda, max)?;
        let mus = weights_for(&rs, &args.mu, max)?;
        for &k in &ks {
            validate_nk(n, k)?;
            for lam in &lams {
                for mu in &mus {
                    out.push(CmmInstance::new(n, k, lam.clone(), mu.clone()));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn cmd_check(args: CheckArgs) -> Result<u8, String> {
    let threads = resolve_threads(args.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    let reports = pool.install(|| run_checks(&args))?;

    let lines: Vec<String> = match args.output.format {
        Format::Text => reports.iter().map(|r| r.to_text_line()).collect(),
        Format::Json => reports.iter().map(|r| r.to_json_line()).collect(),
    };
    write_lines(&args.output, &lines)?;

    let passed = reports.iter().filter(|r| r.passed).count();
    eprintln!("cmm check: {passed}/{} passed", reports.len());
    Ok(if passed == reports.len() { 0 } else { 1 })
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, String> {
    let t = match flag {
        Some(t) => t,
        None => match std::env::var("CMM_THREADS") {
            Ok(v) => v
                .parse::<usize>()
                .map_err(|e| format!("invalid CMM_THREADS '{v}': {e}"))?,
            Err(_) => std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1),
        },
    };
    if t < 1 {
        return Err("thread count must be at least 1".into());
    }
    Ok(t)
}

fn run_checks(args: &CheckArgs) -> Result<Vec<VerificationReport>, String> {
    let mut reports = Vec::new();
    let kinds: Vec<CheckKind> = match args.which {
        CheckKind::All => vec![
            CheckKind::Eq5,
            CheckKind::Prop1,
            CheckKind::Eq1,
            CheckKind::Eq8,
            CheckKind::Eq7,
            CheckKind::Norms,
            CheckKind::Symmetry,
            CheckKind::GaussEval,
        ],
        k => vec![k],
    };
    for kind in kinds {
        reports.extend(run_check_kind(kind, args)?);
    }
    Ok(reports)
}

fn ranks(args: &CheckArgs) -> Vec<usize> {
    grid_rows(args).into_iter().map(|(n, _, _)| n).collect()
}

fn run_check_kind(kind: CheckKind, args: &CheckArgs) -> Result<Vec<VerificationReport>, String> {
    match kind {
        CheckKind::Eq5 => {
            let order = match &args.order {
                Some(s) => parse_order(s)?,
                None => rat_int(20),
            };
            Ok(vec![verify_eq5(&order)])
        }
        CheckKind::Prop1 => {
            let order = match &args.order {
                Some(s) => parse_order(s)?,
                None => rat_int(12),
            };
            let mut items = Vec::new();
            for n in ranks(args) {
                validate_nk(n, 1)?;
                let rs = RootSystem::new(n);
                let mus = match &args.mu {
                    Some(s) => vec![parse_weight(&rs, s)?],
                    None => rs.weights_in_ball(&rat_int(4)),
                };
                for mu in mus {
                    items.push((n, mu));
                }
            }
            Ok(run_parallel(&items, |(n, mu)| {
                prop1_coefficient_check(*n, mu, &order)
            }))
        }
        CheckKind::Eq1 => Ok(run_parallel(&cmm_grid(args)?, verify_eq1)),
        CheckKind::Eq8 => Ok(run_parallel(&cmm_grid(args)?, verify_eq8)),
        CheckKind::Symmetry => Ok(run_parallel(&cmm_grid(args)?, verify_symmetry)),
        CheckKind::Eq7 => {
            let grid = cmm_grid(args)?;
            let mut items = Vec::new();
            for inst in grid {
                // two deterministic coefficient maps per instance
                let seed = 0x5851F42D4C957F2Du64 ^ ((inst.n as u64) << 32) ^ (inst.k as u64);
                for a in seeded_coefficient_maps(inst.n, 2, seed) {
                    items.push((inst.clone(), a));
                }
            }
            Ok(run_parallel(&items, |(inst, a)| {
                verify_eq7(&inst.lam, &inst.mu, inst.k, a)
            }))
        }
        CheckKind::Norms => {
            let mut items = Vec::new();
            for (n, ks, max) in grid_rows(args) {
                validate_nk(n, 1)?;
                let rs = RootSystem::new(n);
                let lams = match &args.lambda {
                    Some(s) => vec![parse_weight(&rs, s)?],
                    None => dominant_grid(n, max),
                };
                for &k in &ks {
                    validate_nk(n, k)?;
                    for lam in &lams {
                        items.push((n, k, lam.clone()));
                    }
                }
            }
            Ok(run_parallel(&items, |(n, k, lam)| verify_norm(*n, *k, lam)))
        }
        CheckKind::GaussEval => {
            let target = match &args.order {
                Some(s) => parse_order(s)?,
                None => rat_int(8),
            };
            let mut items = Vec::new();
            for n in ranks(args) {
                validate_nk(n, 1)?;
                let rs = RootSystem::new(n);
                let lams = match &args.lambda {
                    Some(s) => vec![parse_weight(&rs, s)?],
                    None => {
                        let mut fund = vec![0i64; n - 1];
                        fund[0] = 1;
                        vec![Weight::zero(n), rs.from_fundamental(&fund).unwrap()]
                    }
                };
                for lam in lams {
                    items.push(lam);
                }
            }
            Ok(run_parallel(&items, |lam| {
                let order = ball_order_for_guaranteed(lam, &target);
                gaussian_eval_property(lam, &order)
            }))
        }
        CheckKind::All => unreachable!("expanded by run_checks"),
    }
}
