//! Command handlers for the `hypersieve` binary.
//!
//! Everything is a library function returning `(exit code, stdout)` so the
//! golden tests drive the exact command surface in-process. Exit codes are
//! a stable contract: 0 success (or counterexample found), 1 inconclusive
//! or failed checks, 2 usage/input error.

pub mod parse;

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypersieve_core::basischange::expand_in_basis;
use hypersieve_core::experiments::{
    claim_convergence_check, default_grid, deformed_expansion_trace, en_max_bound,
};
use hypersieve_core::facts::{run_all_facts, FactConfig, FactStatus};
use hypersieve_core::mstest::{
    apply_sequence, falsify, geometric_extrapolation, polya_schur_check, sign_pattern_check,
    turan_check, zero_pattern_check, FalsifyOutcome, GammaSequence, GeometricCheck,
    PolyaSchurOutcome, SequenceError, SignPattern, TuranOutcome, ZeroPatternOutcome,
};
use hypersieve_core::scalar::{format_rational, parse_rational, Rational};

use num_traits::{One, Zero};

/// Seed override honored by every subcommand that searches.
pub const SEED_ENV_VAR: &str = "HYPERSIEVE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Args)]
pub struct RunOpts {
    /// Degree budget for searches and check depth
    #[arg(long = "degree", default_value_t = 8)]
    pub degree: usize,
    /// Random falsifier trials after the structured candidates
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Falsifier seed; the HYPERSIEVE_SEED environment variable overrides
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rational tolerance for brackets, e.g. 1/1024
    #[arg(long, default_value = "1/1024")]
    pub tol: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    pub output: OutputMode,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypersieve",
    about = "Exact-arithmetic toolkit for multiplier sequences over simple sets of polynomials",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the sequence-law checks on a sequence file
    Check {
        /// Sequence JSON file: {"prefix":["1/8","1","2"],"tail":{"kind":"zeros"}}
        sequence: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Search for a certified counterexample against a basis
    Falsify {
        sequence: PathBuf,
        /// Basis shorthand (std, hermite:-1, q1..q3, trunc:2, laguerre,
        /// legendre) or inline JSON descriptor
        #[arg(long)]
        basis: String,
        /// Also write the report JSON to this file
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Expand a polynomial literal in a basis
    Expand {
        #[arg(long)]
        basis: String,
        /// Polynomial literal, e.g. "4x^2+4x+1"
        poly: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Apply a sequence to a polynomial through a basis
    Apply {
        #[arg(long)]
        basis: String,
        /// Sequence JSON file
        #[arg(long)]
        seq: PathBuf,
        poly: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Bracket the upper edge of the q_n + b q_(n-2) real-rootedness region
    EnBound {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Trace deformed-basis expansions across an alpha schedule and verify
    /// the convergence claims
    Converge {
        /// Source basis Q
        #[arg(long)]
        basis: String,
        /// Target basis B
        #[arg(long, default_value = "std")]
        target: String,
        /// Increasing alpha schedule, entries above one
        #[arg(long, default_value = "10,100,1000")]
        schedule: String,
        /// Optional sequence file weighting the convergence check
        #[arg(long)]
        seq: Option<PathBuf>,
        poly: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Re-run the bundled fact corpus and report fact by fact
    ReproducePaper {
        #[command(flatten)]
        opts: RunOpts,
    },
}

/// Rendered command outcome.
#[derive(Debug)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
}

fn ok(code: i32, stdout: String) -> Result<CmdOutput> {
    Ok(CmdOutput { code, stdout })
}

/// Runs a parsed command; input problems come back as exit code 2 with the
/// error message as output.
pub fn execute(cli: Cli) -> CmdOutput {
    match run(cli) {
        Ok(out) => out,
        Err(e) => CmdOutput {
            code: 2,
            stdout: format!("error: {e:#}\n"),
        },
    }
}

fn effective_seed(cli_seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|e| anyhow!("bad {SEED_ENV_VAR} value {raw:?}: {e}")),
        Err(_) => Ok(cli_seed),
    }
}

fn load_sequence(path: &PathBuf) -> Result<GammaSequence> {
    let raw = fs::read_to_string(path)
        .with_context(|| format!("cannot read sequence file {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("bad sequence JSON in {}", path.display()))
}

fn parse_tol(raw: &str) -> Result<Rational> {
    let tol = parse_rational(raw).map_err(|e| anyhow!(e))?;
    if tol <= Rational::zero() {
        bail!("tolerance must be positive, got {raw}");
    }
    Ok(tol)
}

fn run(cli: Cli) -> Result<CmdOutput> {
    match cli.command {
        Command::Check { sequence, opts } => cmd_check(&sequence, &opts),
        Command::Falsify {
            sequence,
            basis,
            out,
            opts,
        } => cmd_falsify(&sequence, &basis, out.as_ref(), &opts),
        Command::Expand { basis, poly, opts } => cmd_expand(&basis, &poly, &opts),
        Command::Apply {
            basis,
            seq,
            poly,
            opts,
        } => cmd_apply(&basis, &seq, &poly, &opts),
        Command::EnBound { basis, n, opts } => cmd_en_bound(&basis, n, &opts),
        Command::Converge {
            basis,
            target,
            schedule,
            seq,
            poly,
            opts,
        } => cmd_converge(&basis, &target, &schedule, seq.as_ref(), &poly, &opts),
        Command::ReproducePaper { opts } => cmd_reproduce_paper(&opts),
    }
}

fn cmd_check(sequence: &PathBuf, opts: &RunOpts) -> Result<CmdOutput> {
    let seq = load_sequence(sequence)?;
    let bound = opts.degree.max(1);

    let mut checks: Vec<(&str, bool, String)> = Vec::new();

    match polya_schur_check(&seq, bound) {
        PolyaSchurOutcome::Pass => {
            checks.push((
                "polya-schur",
                true,
                format!("all images real-rooted to degree {bound}"),
            ));
        }
        PolyaSchurOutcome::FailAt { n, image, .. } => {
            checks.push(("polya-schur", false, format!("image of (1+x)^{n} is {image}")));
        }
    }
    match turan_check(&seq, bound) {
        TuranOutcome::Pass => checks.push(("turan", true, format!("holds to index {bound}"))),
        TuranOutcome::FailAt(k) => {
            checks.push(("turan", false, format!("violated at k={k}")));
        }
    }
    match sign_pattern_check(&seq, bound) {
        SignPattern::AllSameSign => checks.push(("sign-pattern", true, "all same sign".into())),
        SignPattern::Alternating => checks.push(("sign-pattern", true, "alternating".into())),
        SignPattern::Neither(k) => {
            checks.push(("sign-pattern", false, format!("neither pattern at k={k}")));
        }
    }
    match zero_pattern_check(&seq, bound) {
        ZeroPatternOutcome::Pass => {
            checks.push(("zero-pattern", true, "zeros only as a tail".into()));
        }
        ZeroPatternOutcome::FailAt(k) => {
            checks.push(("zero-pattern", false, format!("nonzero after a zero at k={k}")));
        }
    }
    match geometric_extrapolation(&seq) {
        Ok(GeometricCheck::NotGeometricStart) => {
            checks.push((
                "geometric",
                true,
                "first three terms not geometric; law not applicable".into(),
            ));
        }
        Ok(GeometricCheck::Extrapolation {
            alpha,
            violations,
            tail_consistent,
        }) => {
            let clean = violations.is_empty() && tail_consistent;
            let detail = if clean {
                format!("consistent with gamma_0 * ({})^k", format_rational(&alpha))
            } else {
                format!(
                    "geometric start with ratio {} but violations at {:?}{}",
                    format_rational(&alpha),
                    violations,
                    if tail_consistent { "" } else { " (tail inconsistent)" }
                )
            };
            checks.push(("geometric", clean, detail));
        }
        Err(SequenceError::ZeroLeadingTerms) => {
            checks.push(("geometric", true, "leading zeros; law not applicable".into()));
        }
        Err(e) => bail!("geometric extrapolation failed: {e}"),
    }

    let all_pass = checks.iter().all(|(_, pass, _)| *pass);
    let stdout = match opts.output {
        OutputMode::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|(name, pass, detail)| json!({"name": name, "pass": pass, "detail": detail}))
                .collect();
            serde_json::to_string_pretty(&json!({
                "degree": bound,
                "checks": rows,
                "all_pass": all_pass,
            }))? + "\n"
        }
        OutputMode::Human => {
            let mut s = String::new();
            for (name, pass, detail) in &checks {
                s.push_str(&format!(
                    "{name:<13} {}  {detail}\n",
                    if *pass { "pass" } else { "FAIL" }
                ));
            }
            s.push_str(&format!(
                "overall: {}\n",
                if all_pass { "all checks pass" } else { "some checks FAILED" }
            ));
            s
        }
    };
    ok(if all_pass { 0 } else { 1 }, stdout)
}

fn cmd_falsify(
    sequence: &PathBuf,
    basis_arg: &str,
    out: Option<&PathBuf>,
    opts: &RunOpts,
) -> Result<CmdOutput> {
    let seq = load_sequence(sequence)?;
    let descriptor = parse::parse_basis(basis_arg)?;
    let basis = descriptor.build().map_err(|e| anyhow!("bad basis: {e}"))?;
    if opts.degree < 1 {
        bail!("degree budget must be at least 1");
    }
    let seed = effective_seed(opts.seed)?;
    let report = falsify(&seq, &basis, opts.degree, opts.trials, seed);
    let report_json = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(path) = out {
        fs::write(path, &report_json)
            .with_context(|| format!("cannot write report to {}", path.display()))?;
    }
    let found = report.found();
    let stdout = match opts.output {
        OutputMode::Json => report_json,
        OutputMode::Human => match &report.outcome {
            FalsifyOutcome::CounterexampleFound { f, image, cert } => format!(
                "counterexample found\n  f     = {f}\n  image = {image}\n  image certificate: {:?} ({} of {} squarefree roots real)\n",
                cert.verdict, cert.distinct_real_roots, cert.squarefree_degree
            ),
            FalsifyOutcome::NoneFoundWithinBudget => format!(
                "no counterexample within degree budget {} ({} trials)\n",
                report.degree_budget, report.trials
            ),
        },
    };
    ok(if found { 0 } else { 1 }, stdout)
}

fn cmd_expand(basis_arg: &str, poly_arg: &str, opts: &RunOpts) -> Result<CmdOutput> {
    let descriptor = parse::parse_basis(basis_arg)?;
    let basis = descriptor.build().map_err(|e| anyhow!("bad basis: {e}"))?;
    let poly = parse::parse_poly(poly_arg)?;
    let coeffs = expand_in_basis(&poly, &basis);
    let strings: Vec<String> = coeffs.iter().map(format_rational).collect();
    let stdout = match opts.output {
        OutputMode::Json => {
            serde_json::to_string_pretty(&json!({
                "basis": descriptor,
                "poly": poly,
                "coeffs": strings,
            }))? + "\n"
        }
        OutputMode::Human => format!("[{}]\n", strings.join(", ")),
    };
    ok(0, stdout)
}

fn cmd_apply(
    basis_arg: &str,
    seq_path: &PathBuf,
    poly_arg: &str,
    opts: &RunOpts,
) -> Result<CmdOutput> {
    let descriptor = parse::parse_basis(basis_arg)?;
    let basis = descriptor.build().map_err(|e| anyhow!("bad basis: {e}"))?;
    let seq = load_sequence(seq_path)?;
    let poly = parse::parse_poly(poly_arg)?;
    let image = apply_sequence(&seq, &poly, &basis);
    let stdout = match opts.output {
        OutputMode::Json => {
            serde_json::to_string_pretty(&json!({
                "basis": descriptor,
                "input": poly,
                "image": image,
            }))? + "\n"
        }
        OutputMode::Human => format!("{image}\n"),
    };
    ok(0, stdout)
}

fn cmd_en_bound(basis_arg: &str, n: usize, opts: &RunOpts) -> Result<CmdOutput> {
    let descriptor = parse::parse_basis(basis_arg)?;
    let basis = descriptor.build().map_err(|e| anyhow!("bad basis: {e}"))?;
    if n < 2 {
        bail!("n must be at least 2");
    }
    let tol = parse_tol(&opts.tol)?;
    let bound = en_max_bound(&basis, n, &tol).map_err(|e| anyhow!("{e}"))?;
    let stdout = match opts.output {
        OutputMode::Json => serde_json::to_string_pretty(&bound)? + "\n",
        OutputMode::Human => format!(
            "upper edge of the degree-{n} region: [{}, {}] (width {})\n",
            format_rational(&bound.lo),
            format_rational(&bound.hi),
            format_rational(&bound.width)
        ),
    };
    ok(0, stdout)
}

fn cmd_converge(
    basis_arg: &str,
    target_arg: &str,
    schedule_arg: &str,
    seq_path: Option<&PathBuf>,
    poly_arg: &str,
    opts: &RunOpts,
) -> Result<CmdOutput> {
    let source = parse::parse_basis(basis_arg)?
        .build()
        .map_err(|e| anyhow!("bad basis: {e}"))?;
    let target = parse::parse_basis(target_arg)?
        .build()
        .map_err(|e| anyhow!("bad target basis: {e}"))?;
    let schedule = parse::parse_schedule(schedule_arg)?;
    if schedule.len() < 2 {
        bail!("schedule needs at least two entries");
    }
    for w in schedule.windows(2) {
        if w[0] >= w[1] {
            bail!("schedule must be strictly increasing");
        }
    }
    if schedule.iter().any(|a| *a <= Rational::one()) {
        bail!("schedule entries must exceed one");
    }
    let poly = parse::parse_poly(poly_arg)?;
    if poly.is_zero() {
        bail!("convergence trace needs a nonzero polynomial");
    }
    let seq = match seq_path {
        Some(path) => load_sequence(path)?,
        None => GammaSequence::constant(Rational::one()),
    };
    let trace = deformed_expansion_trace(&poly, &source, &target, &schedule);
    let report =
        claim_convergence_check(&trace, &default_grid(), &seq).map_err(|e| anyhow!("{e}"))?;
    let wire = trace.to_wire();
    let stdout = match opts.output {
        OutputMode::Json => {
            serde_json::to_string_pretty(&json!({
                "trace": wire,
                "pass": report.pass,
            }))? + "\n"
        }
        OutputMode::Human => {
            let mut s = String::new();
            s.push_str(&format!(
                "expansion of {poly} ({} -> {})\n",
                wire.source, wire.target
            ));
            for (alpha, row) in wire.alphas.iter().zip(&wire.rows) {
                s.push_str(&format!(
                    "  alpha = {:>8}: [{}]\n",
                    format_rational(alpha),
                    row.join(", ")
                ));
            }
            s.push_str(&format!(
                "  target:           [{}]\n",
                wire.target_coeffs.join(", ")
            ));
            s.push_str(&format!(
                "convergence claims: {}\n",
                if report.pass { "pass" } else { "FAIL" }
            ));
            s
        }
    };
    ok(if report.pass { 0 } else { 1 }, stdout)
}

fn cmd_reproduce_paper(opts: &RunOpts) -> Result<CmdOutput> {
    let seed = effective_seed(opts.seed)?;
    if opts.degree < 1 {
        bail!("degree budget must be at least 1");
    }
    let config = FactConfig {
        degree_budget: opts.degree,
        trials: opts.trials,
        seed,
    };
    let results = run_all_facts(&config);
    let all_pass = results.iter().all(|r| r.passed());
    let stdout = match opts.output {
        OutputMode::Json => serde_json::to_string_pretty(&results)? + "\n",
        OutputMode::Human => {
            let mut s = String::new();
            for r in &results {
                let line = match &r.status {
                    FactStatus::Pass => format!("PASS ({} ms)", r.millis),
                    FactStatus::Fail { reason } => format!("FAIL — {reason}"),
                    FactStatus::SkippedBudget { required } => {
                        format!("SKIPPED-BUDGET (requires degree {required})")
                    }
                };
                s.push_str(&format!("{:<28} {line}\n", r.id));
            }
            s.push_str(&format!(
                "overall: {}\n",
                if all_pass { "all facts reproduce" } else { "NOT all facts reproduce" }
            ));
            s
        }
    };
    ok(if all_pass { 0 } else { 1 }, stdout)
}
