//! The `meadow` command line: check, eval, table, decompose, quotient.
//!
//! Exit status is 0 on success, 1 when a check fails, 2 on any error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::{check_axioms, AxiomReport, CheckMode, Suite};
use crate::error::{Error, Result};
use crate::file::{load_ideal_file, load_lattice_file, write_lattice, LatticeFile};
use crate::meadow::{build_meadow, decompose, BuildMode, InvertibilityStatus, Meadow};
use crate::morphism::{quotient, QuotientKind};
use crate::signature::FiniteAlgebra;
use crate::term::{eval_term, parse, Environment};

/// Suites run by `check --suite all`: the laws every common meadow satisfies.
pub const ALL_SUITES: [Suite; 5] = [
    Suite::PM,
    Suite::CM,
    Suite::Identities,
    Suite::AssemblyAdd,
    Suite::AssemblyMul,
];

#[derive(Debug, Parser)]
#[command(
    name = "meadow",
    about = "Common meadows as directed lattices of rings"
)]
struct Cli {
    /// Machine-readable output, and JSON errors on stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check axiom suites on the meadow of a lattice file.
    Check {
        file: PathBuf,
        /// PM, CM, Identities, AssemblyAdd, AssemblyMul, StrongAssembly,
        /// NVL, AVL, CIL, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate an expression; numerals live at the top node.
    Eval {
        file: PathBuf,
        expr: String,
        /// `name=value@node`, repeatable.
        #[arg(long = "bind")]
        binds: Vec<String>,
    },
    /// Print an operation table of a finite meadow.
    Table {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: TableOp,
    },
    /// Recover the directed lattice from the operations and print it.
    Decompose { file: PathBuf },
    /// Divide by an ideal and print the quotient lattice.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        /// Write the quotient lattice file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableOp {
    Add,
    Mul,
    Inverse,
}

/// Runs the command line on `args` (including the program name).
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
    let json_errors = argv.contains(&"--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if json_errors {
                let _ = writeln!(
                    err,
                    "{}",
                    json!({ "error": "UsageError", "message": e.to_string() })
                );
            } else {
                let _ = write!(err, "{e}");
            }
            return 2;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    err,
                    "{}",
                    json!({ "error": e.kind(), "message": e.to_string() })
                );
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            2
        }
    }
}

/// Builds with certified inverses when possible; otherwise lazily, with the
/// reason the certificate failed.
fn build(file: &PathBuf) -> Result<(Meadow, Option<Error>)> {
    let g = load_lattice_file(file)?;
    match build_meadow(g.clone(), BuildMode::VerifyInvertibility) {
        Ok(m) => Ok((m, None)),
        Err(e @ (Error::AmbiguousInverse { .. } | Error::InfiniteCarrier(_))) => {
            Ok((build_meadow(g, BuildMode::Lazy)?, Some(e)))
        }
        Err(e) => Err(e),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Check {
            file,
            suite,
            exhaustive,
            samples,
            seed,
        } => {
            let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
                ALL_SUITES.to_vec()
            } else {
                vec![Suite::from_name(suite)
                    .ok_or_else(|| Error::Parse(format!("unknown suite `{suite}`")))?]
            };
            let mode = match (exhaustive, samples) {
                (true, _) => CheckMode::Exhaustive,
                (false, Some(n)) => CheckMode::Sampled {
                    samples: *n,
                    seed: *seed,
                },
                (false, None) => CheckMode::Auto,
            };
            let (m, build_error) = build(file)?;
            let reports = suites
                .iter()
                .map(|s| check_axioms(&m, *s, mode))
                .collect::<Result<Vec<AxiomReport>>>()?;
            let ambiguous = matches!(build_error, Some(Error::AmbiguousInverse { .. }));
            let passed = !ambiguous && reports.iter().all(AxiomReport::passed);
            let status = match m.status() {
                InvertibilityStatus::Verified => "verified",
                InvertibilityStatus::Lazy => "lazy",
            };
            if cli.json {
                let mut v = json!({
                    "file": file.display().to_string(),
                    "invertibility": status,
                    "passed": passed,
                    "reports": reports.iter().map(AxiomReport::to_json).collect::<Vec<_>>(),
                });
                if let Some(e) = &build_error {
                    v["build_error"] = json!({ "error": e.kind(), "message": e.to_string() });
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                writeln!(out, "meadow {} (inverses {status})", file.display()).map_err(io)?;
                if let Some(e) = &build_error {
                    writeln!(out, "build: {}: {e}", e.kind()).map_err(io)?;
                }
                for r in &reports {
                    write!(out, "{r}").map_err(io)?;
                }
                writeln!(out, "{}", if passed { "all passed" } else { "FAILED" }).map_err(io)?;
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Eval { file, expr, binds } => {
            let (m, _) = build(file)?;
            let term = parse(expr)?;
            let mut env = Environment::new();
            for b in binds {
                env.bind_text(&m, b)?;
            }
            let x = eval_term(&term, &m, &env)?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({ "expr": expr, "value": x.to_string(), "node": x.node_name() })
                )
                .map_err(io)?;
            } else {
                writeln!(out, "{x}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Table { file, op } => {
            let (m, _) = build(file)?;
            if !m.is_finite() {
                return Err(Error::InfiniteCarrier(
                    "tables need a finite carrier".into(),
                ));
            }
            let alg = FiniteAlgebra::from_meadow(&m)?;
            let labels = alg.labels();
            let n = alg.len();
            match op {
                TableOp::Inverse => {
                    let rows: Vec<(String, String)> = (0..n)
                        .map(|i| {
                            let y = match &alg.inverse_table()[i] {
                                Ok(j) => labels[*j].clone(),
                                Err(e) => format!("error: {e}"),
                            };
                            (labels[i].clone(), y)
                        })
                        .collect();
                    if cli.json {
                        let v: Vec<Value> = rows.iter().map(|(x, y)| json!([x, y])).collect();
                        writeln!(out, "{}", json!({ "op": "inverse", "table": v })).map_err(io)?;
                    } else {
                        for (x, y) in rows {
                            writeln!(out, "{x}\t{y}").map_err(io)?;
                        }
                    }
                }
                TableOp::Add | TableOp::Mul => {
                    let (name, cell): (&str, fn(&FiniteAlgebra, usize, usize) -> usize) = match op {
                        TableOp::Add => ("add", FiniteAlgebra::add_ix),
                        _ => ("mul", FiniteAlgebra::mul_ix),
                    };
                    if cli.json {
                        let rows: Vec<Vec<&str>> = (0..n)
                            .map(|i| (0..n).map(|j| labels[cell(&alg, i, j)].as_str()).collect())
                            .collect();
                        writeln!(
                            out,
                            "{}",
                            json!({ "op": name, "elements": labels, "table": rows })
                        )
                        .map_err(io)?;
                    } else {
                        writeln!(
                            out,
                            "{}\t{}",
                            if name == "add" { "+" } else { "*" },
                            labels.join("\t")
                        )
                        .map_err(io)?;
                        for i in 0..n {
                            let row: Vec<&str> =
                                (0..n).map(|j| labels[cell(&alg, i, j)].as_str()).collect();
                            writeln!(out, "{}\t{}", labels[i], row.join("\t")).map_err(io)?;
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Decompose { file } => {
            let (m, _) = build(file)?;
            let g = decompose(&m)?.to_directed_lattice()?;
            writeln!(out, "{}", write_lattice(&g)?).map_err(io)?;
            Ok(0)
        }
        Command::Quotient {
            file,
            ideal,
            out: target,
        } => {
            let (m, _) = build(file)?;
            let i = load_ideal_file(&m, ideal)?;
            let q = quotient(&m, &i)?;
            let kind = match q.kind {
                QuotientKind::Meadow => "meadow",
                QuotientKind::PreMeadowWithA => "pre-meadow-with-a",
            };
            let collapsed: Vec<&str> = q.collapsed.iter().map(|&z| m.node_name(z)).collect();
            let lattice = LatticeFile::from_directed_lattice(q.quotient.directed())?;
            if let Some(path) = target {
                std::fs::write(path, lattice.to_json_string())?;
            }
            if cli.json {
                let mut v = json!({ "kind": kind, "collapsed": collapsed });
                if target.is_none() {
                    v["lattice"] = serde_json::to_value(&lattice)?;
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                writeln!(out, "kind: {kind}").map_err(io)?;
                writeln!(out, "collapsed: {}", collapsed.join(", ")).map_err(io)?;
                if target.is_none() {
                    writeln!(out, "{}", lattice.to_json_string()).map_err(io)?;
                }
            }
            Ok(0)
        }
    }
}
