//! `qdissect`: expand q-series expressions, tabulate partition families,
//! verify the identity registry, and check b(n) congruences.
//!
//! Exit codes: 0 = success / all checks passed, 1 = at least one
//! verification failed, 2 = usage or evaluation error.

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdissect::congruence::{
    scan_progressions, verify_eq_110, verify_family_19, verify_ramanujan_17, CongruenceReport,
    DEFAULT_ORDER_CAP,
};
use qdissect::eval::eval_expr;
use qdissect::oracle::{counts, Family};
use qdissect::parser::parse_expr;
use qdissect::registry::{registry, Identity, IdentityKind};
use qdissect::ring::{CoeffRing, Exact, Mod};
use qdissect::verify::{verify_all, verify_identity, EngineError, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "qdissect", version, about = "q-series expansion and partition-congruence verification")]
struct Cli {
    /// Print progress diagnostics to stderr
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an expression and print its coefficients
    Expand {
        /// Expression in the DSL, e.g. "f2^2/(f1*f4^3)" or "dissect(1/f1, 5, 4)"
        #[arg(long)]
        expr: String,
        /// Truncation order (coefficients of q^0 ..= q^order)
        #[arg(long, default_value_t = 500)]
        order: usize,
        /// Reduce coefficients modulo m instead of exact integers
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Tabulate a partition family by direct combinatorial counting
    Oracle {
        /// One of: partitions, cubic, overcubic, linb, distinct-odd, pod,
        /// ped, two-color-mult4
        #[arg(long)]
        family: String,
        /// Largest n to tabulate
        #[arg(long, default_value_t = 20)]
        max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Verify identities from the built-in registry
    #[command(group(ArgGroup::new("target").args(["id", "all", "export_json"])))]
    Verify {
        /// Verify a single identity by id (e.g. eq1.5)
        #[arg(long)]
        id: Option<String>,
        /// Verify every registry entry
        #[arg(long)]
        all: bool,
        /// Truncation order for the comparison
        #[arg(long, default_value_t = 500)]
        order: usize,
        /// Dump the registry as JSON instead of verifying
        #[arg(long)]
        export_json: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check the Ramanujan-type and internal congruences for b(n)
    #[command(group(ArgGroup::new("which").required(true).args(["eq17", "family19", "eq110"])))]
    Congruence {
        /// Check b(3n+2) == 0 (mod 3)
        #[arg(long)]
        eq17: bool,
        /// Check the internal family b(9^(k+1) n + (5*9^(k+1)+3)/8) == (-1)^k b(9n+6) (mod 3)
        #[arg(long)]
        family19: bool,
        /// Family index k (with --family19)
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Check b(81n+24) == -b(9n+3) (mod 3)
        #[arg(long)]
        eq110: bool,
        /// Check progression indices n = 0 ..= nmax
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// Refuse expansions beyond this order
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Scan residue classes of an expression for vanishing coefficients mod m
    Search {
        #[arg(long)]
        expr: String,
        /// Coefficient modulus
        #[arg(long = "mod")]
        modulus: u64,
        /// Progression step: classes are q^(step*n + r)
        #[arg(long)]
        step: usize,
        /// Check n = 0 ..= nmax in every class
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn pick_format(requested: Option<Format>) -> Format {
    requested.unwrap_or_else(|| {
        if std::io::stdout().is_terminal() {
            Format::Table
        } else {
            Format::Json
        }
    })
}

static VERBOSE: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(false);

fn verbose_enable() {
    VERBOSE.store(true, std::sync::atomic::Ordering::Relaxed);
}

fn note(message: impl std::fmt::Display) {
    if VERBOSE.load(std::sync::atomic::Ordering::Relaxed) {
        eprintln!("qdissect: {message}");
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.verbose {
        verbose_enable();
    }
    match cli.command {
        Command::Expand {
            expr,
            order,
            modulus,
            format,
        } => {
            if order == 0 {
                return usage_error("--order must be at least 1");
            }
            run_expand(&expr, order, modulus, pick_format(format))
        }
        Command::Oracle {
            family,
            max,
            format,
        } => run_oracle(&family, max, pick_format(format)),
        Command::Verify {
            id,
            all,
            order,
            export_json,
            format,
        } => {
            if export_json {
                run_export_registry()
            } else if order == 0 {
                usage_error("--order must be at least 1")
            } else if let Some(id) = id {
                run_verify_one(&id, order, pick_format(format))
            } else if all {
                run_verify_all(order, pick_format(format))
            } else {
                usage_error("verify needs --id <ID>, --all, or --export-json")
            }
        }
        Command::Congruence {
            eq17,
            family19,
            k,
            eq110,
            nmax,
            order_cap,
            format,
        } => run_congruence(eq17, family19, k, eq110, nmax, order_cap, pick_format(format)),
        Command::Search {
            expr,
            modulus,
            step,
            nmax,
            format,
        } => run_search(&expr, modulus, step, nmax, pick_format(format)),
    }
}

fn expansion_json(expr: &str, ring: &str, order: usize, coeffs: Vec<String>) -> Value {
    json!({
        "expr": expr,
        "ring": ring,
        "order": order,
        "coeffs": coeffs,
    })
}

fn print_coeffs(format: Format, expr: &str, ring: &str, order: usize, coeffs: Vec<String>) {
    match format {
        Format::Table => {
            for (n, c) in coeffs.iter().enumerate() {
                println!("{n:>6}  {c}");
            }
        }
        Format::Csv => {
            for (n, c) in coeffs.iter().enumerate() {
                println!("{n},{c}");
            }
        }
        Format::Json => {
            println!("{}", expansion_json(expr, ring, order, coeffs));
        }
    }
}

fn run_expand(expr_src: &str, order: usize, modulus: Option<u64>, format: Format) -> ExitCode {
    let expr = match parse_expr(expr_src) {
        Ok(expr) => expr,
        Err(e) => return usage_error(e),
    };
    match modulus {
        Some(m) => note(format_args!("expanding `{expr_src}` to order {order} mod {m}")),
        None => note(format_args!("expanding `{expr_src}` to order {order} exactly")),
    }
    let (ring_name, coeffs) = match modulus {
        None => match eval_expr(&expr, &Exact, order) {
            Ok(series) => (
                Exact.describe(),
                series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            ),
            Err(e) => return usage_error(e),
        },
        Some(m) => {
            let ring = match Mod::new(m) {
                Ok(ring) => ring,
                Err(e) => return usage_error(e),
            };
            match eval_expr(&expr, &ring, order) {
                Ok(series) => (
                    ring.describe(),
                    series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                ),
                Err(e) => return usage_error(e),
            }
        }
    };
    print_coeffs(format, expr_src, &ring_name, order, coeffs);
    ExitCode::SUCCESS
}

fn run_oracle(family_name: &str, max: usize, format: Format) -> ExitCode {
    let family: Family = match family_name.parse() {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let table: Vec<String> = counts(family, max).iter().map(|c| c.to_string()).collect();
    match format {
        Format::Table => {
            for (n, c) in table.iter().enumerate() {
                println!("{n:>6}  {c}");
            }
        }
        Format::Csv => {
            for (n, c) in table.iter().enumerate() {
                println!("{n},{c}");
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({ "family": family.name(), "max": max, "counts": table })
            );
        }
    }
    ExitCode::SUCCESS
}

fn identity_json(entry: &Identity) -> Value {
    let mut object = json!({
        "id": entry.id,
        "kind": match entry.kind {
            IdentityKind::Exact => "exact",
            IdentityKind::Congruent(_) => "congruent",
        },
        "lhs": entry.lhs_src,
        "rhs": entry.rhs_src,
        "source": entry.source,
        "note": entry.note,
    });
    if let Some(m) = entry.kind.modulus() {
        object["modulus"] = json!(m);
    }
    object
}

fn run_export_registry() -> ExitCode {
    let entries: Vec<Value> = registry().iter().map(identity_json).collect();
    println!("{}", json!({ "identities": entries }));
    ExitCode::SUCCESS
}

fn report_line(report: &VerificationReport) -> String {
    let kind = match report.kind {
        IdentityKind::Exact => "exact".to_string(),
        IdentityKind::Congruent(m) => format!("mod {m}"),
    };
    let mut line = format!(
        "[{}] {:<12} {:<8} order {:<6} ({} ms)",
        if report.passed() { "PASS" } else { "FAIL" },
        report.id,
        kind,
        report.order,
        report.millis
    );
    if let Some(mismatch) = &report.first_mismatch {
        line.push_str(&format!(
            "  first mismatch at q^{}: lhs {} vs rhs {}",
            mismatch.exponent, mismatch.lhs, mismatch.rhs
        ));
    }
    line
}

fn print_reports(reports: &[VerificationReport], format: Format) {
    match format {
        Format::Table => {
            for report in reports {
                println!("{}", report_line(report));
            }
        }
        Format::Csv => {
            for r in reports {
                let mismatch = r
                    .first_mismatch
                    .as_ref()
                    .map(|m| m.exponent.to_string())
                    .unwrap_or_default();
                println!(
                    "{},{},{},{},{},{}",
                    r.id,
                    match r.kind {
                        IdentityKind::Exact => "exact".to_string(),
                        IdentityKind::Congruent(m) => format!("congruent({m})"),
                    },
                    r.order,
                    r.status.as_str(),
                    mismatch,
                    r.millis
                );
            }
        }
        Format::Json => {
            let values: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
            println!("{}", Value::Array(values));
        }
    }
}

fn engine_exit(err: EngineError) -> ExitCode {
    usage_error(err)
}

fn run_verify_one(id: &str, order: usize, format: Format) -> ExitCode {
    note(format_args!("verifying `{id}` at order {order}"));
    match verify_identity(id, order) {
        Ok(report) => {
            let passed = report.passed();
            print_reports(&[report], format);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => engine_exit(e),
    }
}

fn run_verify_all(order: usize, format: Format) -> ExitCode {
    note(format_args!(
        "verifying {} registry entries at order {order}",
        registry().len()
    ));
    match verify_all(order) {
        Ok(reports) => {
            let all_passed = reports.iter().all(|r| r.passed());
            print_reports(&reports, format);
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => engine_exit(e),
    }
}

fn congruence_line(report: &CongruenceReport) -> String {
    let mut line = format!(
        "[{}] {}  cases {}  order {}  ({} ms)",
        if report.passed() { "PASS" } else { "FAIL" },
        report.label,
        report.cases,
        report.order,
        report.millis
    );
    if let Some(failure) = &report.first_failure {
        line.push_str(&format!(
            "  first failure at n = {}: lhs {} vs rhs {}",
            failure.n, failure.lhs, failure.rhs
        ));
    }
    line
}

fn run_congruence(
    eq17: bool,
    family19: bool,
    k: u32,
    eq110: bool,
    nmax: usize,
    order_cap: usize,
    format: Format,
) -> ExitCode {
    note(format_args!("checking n = 0 ..= {nmax} with order cap {order_cap}"));
    let outcome = if eq17 {
        verify_ramanujan_17(nmax, order_cap)
    } else if family19 {
        verify_family_19(k, nmax, order_cap)
    } else {
        debug_assert!(eq110);
        verify_eq_110(nmax, order_cap)
    };
    match outcome {
        Ok(report) => {
            match format {
                Format::Table => println!("{}", congruence_line(&report)),
                Format::Csv => println!(
                    "{},{},{},{},{}",
                    report.label,
                    report.cases,
                    report.order,
                    report.status.as_str(),
                    report.millis
                ),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(e),
    }
}

fn run_search(expr_src: &str, modulus: u64, step: usize, nmax: usize, format: Format) -> ExitCode {
    let expr = match parse_expr(expr_src) {
        Ok(expr) => expr,
        Err(e) => return usage_error(e),
    };
    note(format_args!(
        "scanning {step} residue classes of `{expr_src}` mod {modulus}, n <= {nmax}"
    ));
    match scan_progressions(&expr, modulus, step, nmax) {
        Ok(residues) => {
            match format {
                Format::Table => {
                    if residues.is_empty() {
                        println!("no residue class of step {step} vanishes mod {modulus} for n <= {nmax}");
                    } else {
                        let list = residues
                            .iter()
                            .map(|r| r.to_string())
                            .collect::<Vec<_>>()
                            .join(", ");
                        println!("vanishing residue classes mod {modulus} (step {step}, n <= {nmax}): {list}");
                    }
                    println!("note: finite scan only; these are candidates, not theorems");
                }
                Format::Csv => {
                    for r in &residues {
                        println!("{r}");
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        json!({
                            "expr": expr_src,
                            "modulus": modulus,
                            "step": step,
                            "nmax": nmax,
                            "vanishing_residues": residues,
                            "note": "finite scan only; candidates, not theorems",
                        })
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}
