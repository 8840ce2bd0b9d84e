//! The `hessfib` command line.
//!
//! Exit codes: 0 on success (or an all-pass verification), 1 when
//! verification finds a failure, 2 for usage and parameter errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::GaussianRational;
use crate::bench::{bench, render_table};
use crate::error::{Error, Result};
use crate::families::{build_matrix, Family, FamilyMatrix, FamilySpec, FamilyValue, MatrixOp};
use crate::sequences::{fib_poly, SeqKind, SeqSpec, DEFAULT_SEED};
use crate::verify::{verify, Fault, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hessfib", version, about = "Hessenberg determinant and permanent representations of generalized Fibonacci polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    FlipQSuperdiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqKindArg {
    Miles,
    Er,
    Pell,
    VanDerLaan,
    FibPoly,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generalized Fibonacci polynomial F(k,n).
    Genpoly {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a family matrix.
    Matrix {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Determinant or permanent of a family matrix.
    Eval {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Defaults to the operation the family represents F with.
        #[arg(long, value_parser = parse_op)]
        op: Option<MatrixOp>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the identity suite over a (family, k, n) grid.
    Verify {
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Comma-separated subset of Q,B,H,L,C,M,D.
        #[arg(long, value_delimiter = ',', value_parser = parse_family)]
        families: Option<Vec<Family>>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the full report as JSON to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_enum, hide = true)]
        fault_injection: Option<FaultArg>,
    },
    /// Time the recursions against the oracles.
    Bench {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print terms of a recurrence sequence.
    Seq {
        #[arg(long, value_enum)]
        kind: SeqKindArg,
        #[arg(long)]
        k: usize,
        /// Sequence index for er, pell and van-der-laan.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// First index; defaults to the first defined one.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Comma-separated c_1..c_k for er, e.g. 1,1/2,0+1*i.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_op(s: &str) -> std::result::Result<MatrixOp, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn value_json(v: &FamilyValue) -> Value {
    match v {
        FamilyValue::Symbolic(p) => serde_json::to_value(p.to_json()).expect("serializable"),
        FamilyValue::Numeric(x) => Value::String(x.to_string()),
    }
}

fn matrix_json(spec: FamilySpec, m: &FamilyMatrix) -> Value {
    let n = m.n();
    let entries: Vec<Vec<Value>> = (1..=n)
        .map(|r| {
            (1..=n)
                .map(|s| match m {
                    FamilyMatrix::Symbolic(h) => serde_json::to_value(h.entry(r, s).to_json()).expect("serializable"),
                    FamilyMatrix::Numeric(h) => Value::String(h.entry(r, s).to_string()),
                })
                .collect()
        })
        .collect();
    json!({ "family": spec.family, "k": spec.k, "n": spec.n, "entries": entries })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Executes a parsed command, returning the exit code.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Genpoly { k, n, format } => {
            let p = fib_poly(k, n as i64)?;
            let text = match format {
                Format::Text => format!("{p}\n"),
                Format::Json => pretty(&serde_json::to_value(p.to_json()).expect("serializable")),
            };
            emit(out, &text)?;
        }
        Command::Matrix { family, k, n, format } => {
            let spec = FamilySpec::new(family, k, n)?;
            let m = build_matrix(spec)?;
            let text = match format {
                Format::Text => m.render_text(),
                Format::Json => pretty(&matrix_json(spec, &m)),
            };
            emit(out, &text)?;
        }
        Command::Eval { family, op, k, n, format } => {
            let spec = FamilySpec::new(family, k, n)?;
            let op = op.unwrap_or(family.natural_op());
            let value = build_matrix(spec)?.evaluate(op);
            let text = match format {
                Format::Text => format!("{value}\n"),
                Format::Json => pretty(&json!({
                    "family": family, "op": op, "k": k, "n": n, "result": value_json(&value),
                })),
            };
            emit(out, &text)?;
        }
        Command::Verify { k_min, k_max, n_max, families, jobs, seed, report, format, fault_injection } => {
            let config = VerifyConfig {
                k_min,
                k_max,
                n_max,
                families: families.unwrap_or_else(|| Family::ALL.to_vec()),
                seed,
                jobs: jobs.max(1),
                fault: fault_injection.map(|FaultArg::FlipQSuperdiagonal| Fault::FlipQSuperdiagonal),
            };
            let result = verify(&config)?;
            if let Some(path) = report {
                let body = serde_json::to_string_pretty(&result).expect("serializable");
                std::fs::write(&path, body)
                    .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
            }
            let text = match format {
                Format::Text => result.render_text(),
                Format::Json => pretty(&serde_json::to_value(&result).expect("serializable")),
            };
            emit(out, &text)?;
            return Ok(if result.exit_status() == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
        Command::Bench { k, n_max, format } => {
            let rows = bench(k, n_max)?;
            let text = match format {
                Format::Text => render_table(k, &rows),
                Format::Json => pretty(&json!({ "k": k, "rows": rows })),
            };
            emit(out, &text)?;
        }
        Command::Seq { kind, k, i, from, to, coeffs, format } => {
            let coeffs = coeffs.iter().map(|c| c.parse::<GaussianRational>()).collect::<Result<Vec<_>>>()?;
            let kind = match kind {
                SeqKindArg::Miles => SeqKind::Miles,
                SeqKindArg::Er => SeqKind::Er,
                SeqKindArg::Pell => SeqKind::Pell,
                SeqKindArg::VanDerLaan => SeqKind::VanDerLaan,
                SeqKindArg::FibPoly => SeqKind::FibPoly,
            };
            let spec = SeqSpec { kind, k, i, coeffs };
            let from = from.unwrap_or_else(|| spec.first_index());
            let terms = (from..=to).map(|n| spec.term(n).map(|t| (n, t))).collect::<Result<Vec<_>>>()?;
            let text = match format {
                Format::Text => terms.iter().map(|(n, t)| format!("{n} {t}\n")).collect(),
                Format::Json => pretty(&json!({
                    "kind": kind, "k": k, "i": i,
                    "terms": terms.iter().map(|(n, t)| json!({ "n": n, "value": t })).collect::<Vec<_>>(),
                })),
            };
            emit(out, &text)?;
        }
    }
    Ok(EXIT_OK)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Argument(format!("write failed: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
