//! `qmf`: batch interface over the exact q-series and Jacobi-form toolkit.
//!
//! Exit codes: 0 success/verified, 1 mathematically meaningful failure
//! (nonzero residual, tolerance exceeded, group mismatch), 2 usage or
//! domain error. Malformed input never exits 1.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmf_core::decompose::{reproduce_table, rose_decompose, solve_in_span, DecomposeMode, SpanStatus};
use qmf_core::eisenstein::{g2, g2_char, g2_scaled};
use qmf_core::jacobijet::phi_jet;
use qmf_core::jacobinumeric::{
    check_cocycle, check_invariance, check_jet_consistency, check_tr, lemma31_matrices,
};
use qmf_core::macmahon::{expand_a, validate_symmetric, SymmetricSet};
use qmf_core::modgroup::{verify_generation, MatZ};
use qmf_core::numbertheory::DirichletCharacter;
use qmf_core::qseries::QSeries;
use qmf_core::rat::format_rat;

#[derive(Parser)]
#[command(name = "qmf", version, about = "Exact q-series, Eisenstein series, theta-quotient jets, and Jacobi-form verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a series to a truncation order
    Expand {
        #[command(subcommand)]
        target: ExpandTarget,
    },
    /// Decompose the A_{S,n,k} series in the Eisenstein basis, row per set
    Table(TableArgs),
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand)]
enum ExpandTarget {
    /// Generalized sum-of-divisors series A_{S,n,k}(q)
    Macmahon(MacmahonArgs),
    /// Weight-2 Eisenstein series, optionally character-twisted
    Eisenstein(EisensteinArgs),
    /// Taylor jet in z of the theta-quotient product phi_S
    PhiJet(PhiJetArgs),
}

#[derive(Args)]
struct MacmahonArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// Comma-separated residues in {1..n}; the zero residue is spelled n
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EisensteinKind {
    /// G_2(q)
    G2,
    /// G_2(q^d) for the --scale divisor
    G2Scaled,
    /// G_{2,chi,psi}: trivial cofactor, quadratic weight mod 5
    ChiPsi,
    /// G_{2,psi,chi}: quadratic cofactor mod 5, principal weight
    PsiChi,
}

#[derive(Args)]
struct EisensteinArgs {
    #[arg(long, value_enum)]
    kind: EisensteinKind,
    #[arg(long, default_value_t = 5)]
    scale: u32,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PhiJetArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 60)]
    order: usize,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Numeric slash-invariance of phi_S under qualified matrices
    Jacobi(JacobiArgs),
    /// The theta translation identity
    Tr(TrArgs),
    /// Jet-vs-analytic consistency of phi_S
    Jets(JetsArgs),
    /// Congruence-subgroup generation and index counts
    Group(GroupArgs),
    /// Weight-graded decomposition of A_{S,n,k}
    Rose(RoseArgs),
}

#[derive(Args)]
struct JacobiArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct TrArgs {
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Random group pairs for the slash cocycle check
    #[arg(long, default_value_t = 25)]
    pairs: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct JetsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    #[arg(long, default_value_t = 80)]
    order: usize,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

#[derive(Args)]
struct RoseArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, default_value_t = 80)]
    order: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Relaxed)]
    mode: ModeArg,
}

fn parse_set(n: u32, input: &str) -> Result<SymmetricSet, String> {
    let members: Result<Vec<i64>, _> = input
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<i64>())
        .collect();
    let members = members.map_err(|e| format!("invalid set element: {e}"))?;
    validate_symmetric(n, &members).map_err(|e| e.to_string())
}

fn print_series(series: &QSeries, json: bool) {
    if json {
        println!("{}", serde_json::to_string(series).expect("serializable"));
    } else {
        for (e, c) in series.terms() {
            if !num::Zero::is_zero(c) {
                println!("{}\t{}", format_rat(&e), format_rat(c));
            }
        }
    }
}

/// Basis used by `table` in discovery mode for a general modulus.
fn discovery_basis(n: u32, order: usize) -> (Vec<String>, Vec<QSeries>) {
    let mut labels = vec!["1".into(), "G2".into()];
    let mut basis = vec![QSeries::one(order), g2(order)];
    if n > 1 {
        labels.push(format!("G2(q^{n})"));
        basis.push(g2_scaled(n, order));
        let chi = DirichletCharacter::Trivial;
        let psi = DirichletCharacter::Quadratic(n.into());
        labels.push("G2[chi,psi]".into());
        basis.push(g2_char(&chi, &psi, order));
        labels.push("G2[psi,chi]".into());
        basis.push(g2_char(&psi, &chi, order));
    }
    (labels, basis)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Expand { target } => {
            match target {
                ExpandTarget::Macmahon(a) => {
                    let s = parse_set(a.n, &a.set)?;
                    print_series(&expand_a(&s, a.k, a.order), a.json);
                }
                ExpandTarget::Eisenstein(a) => {
                    let series = match a.kind {
                        EisensteinKind::G2 => g2(a.order),
                        EisensteinKind::G2Scaled => {
                            if a.scale == 0 {
                                return Err("--scale must be positive".into());
                            }
                            g2_scaled(a.scale, a.order)
                        }
                        EisensteinKind::ChiPsi => g2_char(
                            &DirichletCharacter::Trivial,
                            &DirichletCharacter::Quadratic(5),
                            a.order,
                        ),
                        EisensteinKind::PsiChi => g2_char(
                            &DirichletCharacter::Quadratic(5),
                            &DirichletCharacter::Trivial,
                            a.order,
                        ),
                    };
                    print_series(&series, a.json);
                }
                ExpandTarget::PhiJet(a) => {
                    let s = parse_set(a.n, &a.set)?;
                    let jet = phi_jet(&s, a.max_degree, a.order);
                    if a.json {
                        println!(
                            "{}",
                            serde_json::to_string(jet.components()).expect("serializable")
                        );
                    } else {
                        for (j, t) in jet.components().iter().enumerate() {
                            println!("# t{j}");
                            print_series(t, false);
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Table(a) => {
            if a.n == 5 && a.k == 1 {
                let report = reproduce_table(a.order).map_err(|e| e.to_string())?;
                for row in &report.rows {
                    let coeffs: Vec<String> =
                        row.solution.coefficients.iter().map(format_rat).collect();
                    println!(
                        "{}\t{}\t{}",
                        row.set,
                        coeffs.join(" "),
                        if row.ok { "OK" } else { "MISMATCH" }
                    );
                }
                Ok(report.all_ok())
            } else {
                let (labels, basis) = discovery_basis(a.n, a.order);
                println!("# discovery basis: {}", labels.join(", "));
                for s in SymmetricSet::enumerate_all(a.n) {
                    let target = expand_a(&s, a.k, a.order);
                    let solution = solve_in_span(&target, &basis).map_err(|e| e.to_string())?;
                    let verdict = match &solution.status {
                        SpanStatus::Unique => {
                            let coeffs: Vec<String> =
                                solution.coefficients.iter().map(format_rat).collect();
                            coeffs.join(" ")
                        }
                        SpanStatus::NotInSpan {
                            first_failing_exponent,
                        } => format!("not in span (first residual at q^{})", format_rat(first_failing_exponent)),
                        SpanStatus::RankDeficient { .. } => "basis rank-deficient".into(),
                    };
                    println!("{s}\t{verdict}");
                }
                Ok(true)
            }
        }
        Command::Verify { target } => match target {
            VerifyTarget::Jacobi(a) => {
                let s = parse_set(a.n, &a.set)?;
                let mut matrices = lemma31_matrices(a.n);
                matrices.push(MatZ::new(1, 0, 1, 1).expect("unimodular"));
                matrices.push(MatZ::new(1, a.n as i64, 0, 1).expect("unimodular"));
                let report = check_invariance(&s, &matrices, a.samples, a.tol, a.seed)
                    .map_err(|e| e.to_string())?;
                for c in &report.checks {
                    println!(
                        "matrix ({},{};{},{})\tmax error {:.3e}",
                        c.matrix.a, c.matrix.b, c.matrix.c, c.matrix.d, c.max_error
                    );
                }
                println!(
                    "invariance {} (tol {:.1e}, seed {})",
                    if report.pass() { "OK" } else { "FAILED" },
                    report.tol,
                    report.seed
                );
                Ok(report.pass())
            }
            VerifyTarget::Tr(a) => {
                let report = check_tr(a.samples, a.tol, a.seed).map_err(|e| e.to_string())?;
                println!(
                    "translation identity {}: max error {:.3e} over {} samples",
                    if report.pass() { "OK" } else { "FAILED" },
                    report.max_error,
                    report.cases
                );
                let cocycle =
                    check_cocycle(a.pairs, 2, a.tol, a.seed).map_err(|e| e.to_string())?;
                println!(
                    "slash cocycle {}: max error {:.3e} over {} pairs",
                    if cocycle.pass() { "OK" } else { "FAILED" },
                    cocycle.max_error,
                    cocycle.cases
                );
                Ok(report.pass() && cocycle.pass())
            }
            VerifyTarget::Jets(a) => {
                let s = parse_set(a.n, &a.set)?;
                let report =
                    check_jet_consistency(&s, a.max_degree, a.order, a.samples, a.tol, a.seed)
                        .map_err(|e| e.to_string())?;
                println!(
                    "jet consistency {}: max error {:.3e} over {} samples",
                    if report.pass() { "OK" } else { "FAILED" },
                    report.max_error,
                    report.samples
                );
                Ok(report.pass())
            }
            VerifyTarget::Group(a) => {
                let report = verify_generation(a.n).map_err(|e| e.to_string())?;
                println!(
                    "generation {}, index {} (formula) / {} (cosets), closure {} of {}",
                    if report.generation_ok { "OK" } else { "FAILED" },
                    report.index_formula,
                    report.index_coset,
                    report.closure_size,
                    report.target_size
                );
                Ok(report.pass())
            }
            VerifyTarget::Rose(a) => {
                let s = parse_set(a.n, &a.set)?;
                let mode = match a.mode {
                    ModeArg::Strict => DecomposeMode::Strict,
                    ModeArg::Relaxed => DecomposeMode::Relaxed,
                };
                let dec = rose_decompose(&s, a.k, a.order, mode).map_err(|e| e.to_string())?;
                for (label, c) in dec.labels.iter().zip(dec.solution.coefficients.iter()) {
                    println!("{label}\t{}", format_rat(c));
                }
                match &dec.solution.status {
                    SpanStatus::Unique => {
                        println!("residual zero through q^{}", dec.solution.verified_order);
                        Ok(true)
                    }
                    SpanStatus::NotInSpan {
                        first_failing_exponent,
                    } => {
                        println!(
                            "residual nonzero, first at q^{}",
                            format_rat(first_failing_exponent)
                        );
                        Ok(false)
                    }
                    SpanStatus::RankDeficient { .. } => {
                        println!("basis rank-deficient after pruning");
                        Ok(false)
                    }
                }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
