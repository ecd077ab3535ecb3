//! Command-line front end. Subcommands compose through the text table format
//! on standard streams; identical invocations produce byte-identical output.
//!
//! Exit codes: 2 for usage errors, 3 when a window or position cannot be
//! evaluated, 4 for a non-admissible table (the negative entry is printed as
//! a non-realizability witness), 1 otherwise.

use clap::{Args, Parser, Subcommand};
use cohtab::decomposition::{decompose_with, reconstruct_steps, DecomposeOptions};
use cohtab::error::Error;
use cohtab::format;
use cohtab::functionals::{
    certificate_search, coefficient_table, evaluate, pairing, pairing_bounded, pure_betti,
    BoundSequence, DegreeSequence,
};
use cohtab::num::{format_rational, format_rational_explicit, parse_rational, Rational};
use cohtab::render::render_grid;
use cohtab::sheaves::StockSheaf;
use cohtab::suites;
use cohtab::supernatural::SupernaturalSpec;
use cohtab::table::{CohomologyTable, Window};
use cohtab::{DecompositionStatus, RootSequence};
use std::io::Read;
use std::process::ExitCode;

/// Window to use when a subcommand does not receive --window.
const WINDOW_ENV: &str = "COHTAB_WINDOW";

#[derive(Parser)]
#[command(
    name = "cohtab",
    about = "Exact cohomology tables: supernatural generators, positivity functionals, greedy decomposition",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Args)]
struct TableInput {
    /// Table file in the text or JSON format, or a stock name; `-` or absent
    /// reads stdin.
    table: Option<String>,
}

impl TableInput {
    /// Stdin, a file path, or a stock name. Stock names are materialized on
    /// `stock_window`, falling back to COHTAB_WINDOW.
    fn load(&self, stock_window: Option<Window>) -> Result<CohomologyTable, Error> {
        let raw = match self.table.as_deref() {
            None | Some("-") => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
                buf
            }
            Some(path) if std::path::Path::new(path).exists() => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("reading {path}: {e}")))?,
            Some(name) => {
                let kind = StockSheaf::parse(name).map_err(|_| {
                    Error::Parse(format!("no such file or stock name: {name}"))
                })?;
                let window = match stock_window {
                    Some(w) => w,
                    None => resolve_window(None)?,
                };
                return StockSheaf::new(kind, 0).table(window);
            }
        };
        format::parse_table_auto(&raw)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the normalized supernatural table for a root sequence.
    Supernatural {
        /// Strictly decreasing roots, e.g. 3,-2 (empty string for none).
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        /// Degree window lo:hi (falls back to COHTAB_WINDOW).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Positive rational multiplier, e.g. 1/6.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        scale: String,
        /// Ambient projective dimension; defaults to the number of roots.
        #[arg(long)]
        ambient: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Emit a stock table: ideal-point-p2, line:a:n, line-bundle:s:a:n,
    /// skew-lines, conic-point, T2, T3.
    Stock {
        name: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Greedily decompose a table into supernatural generators.
    Decompose {
        #[command(flatten)]
        input: TableInput,
        #[arg(long, default_value_t = 50)]
        max_steps: usize,
        /// Optional cap on consecutive steps at one dimension.
        #[arg(long)]
        max_steps_per_dim: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Evaluate the functional L(degrees, bounds) on a table.
    Functional {
        #[command(flatten)]
        input: TableInput,
        /// Strictly increasing degrees, e.g. -1,1,2,3.
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        /// Use the bound sequence phi^j for this j.
        #[arg(long, conflicts_with = "bounds")]
        phi: Option<usize>,
        /// Explicit bounds, e.g. 0,1,1,1 or inf,inf,inf,inf.
        #[arg(long, allow_hyphen_values = true)]
        bounds: Option<String>,
        /// Also print the functional as a dot-product grid.
        #[arg(long)]
        show_table: bool,
        /// Print integers without the /1 denominator.
        #[arg(long)]
        pretty: bool,
    },
    /// Pair a Betti table against a cohomology table.
    Pairing {
        #[command(flatten)]
        input: TableInput,
        /// Use the pure Betti table of this degree sequence.
        #[arg(long, conflicts_with = "betti", allow_hyphen_values = true)]
        pure: Option<String>,
        /// Betti table file with `i k value` lines.
        #[arg(long)]
        betti: Option<String>,
        /// Internal-degree cutoff for the truncated pairing.
        #[arg(long, requires = "tau", allow_hyphen_values = true)]
        c: Option<i64>,
        /// Row of the truncated pairing.
        #[arg(long, requires = "c")]
        tau: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Search for a violated positivity functional inside a degree box.
    Certify {
        #[command(flatten)]
        input: TableInput,
        /// Degree box lo:hi for the candidate sequences.
        #[arg(long, name = "box", allow_hyphen_values = true)]
        box_: String,
        #[arg(long, default_value_t = 3)]
        smax: usize,
    },
    /// Run the randomized exact identity suites.
    CheckIdentities {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Seed for the deterministic random generator (default 1729).
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a table as a grid in the diagonal display convention.
    Render {
        #[command(flatten)]
        input: TableInput,
    },
    /// Rebuild sum(q_z * generator_z) from a decomposition JSON.
    Reconstruct {
        /// Decomposition JSON file; `-` or absent reads stdin.
        decomposition: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

fn resolve_window(flag: Option<&str>) -> Result<Window, Error> {
    match flag {
        Some(s) => Window::parse(s),
        None => match std::env::var(WINDOW_ENV) {
            Ok(s) => Window::parse(&s),
            Err(_) => Err(Error::Invalid(format!(
                "no --window given and {WINDOW_ENV} is not set"
            ))),
        },
    }
}

fn print_table(t: &CohomologyTable, emit: Emit) {
    match emit {
        Emit::Text => print!("{}", format::emit_text(t)),
        Emit::Json => println!("{}", format::emit_json(t)),
    }
}

fn scalar(r: &Rational, pretty: bool) -> String {
    if pretty {
        format_rational(r)
    } else {
        format_rational_explicit(r)
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Supernatural {
            roots,
            window,
            scale,
            ambient,
            emit,
        } => {
            let roots = RootSequence::parse(&roots)?;
            let window = resolve_window(window.as_deref())?;
            let scale = parse_rational(&scale)?;
            let ambient = ambient.unwrap_or_else(|| roots.len().max(1));
            let spec = SupernaturalSpec::new(roots, scale, ambient)?;
            print_table(&spec.table(window)?, emit);
            Ok(0)
        }
        Command::Stock {
            name,
            twist,
            window,
            emit,
        } => {
            let kind = StockSheaf::parse(&name)?;
            let window = resolve_window(window.as_deref())?;
            let table = StockSheaf::new(kind, twist).table(window)?;
            print_table(&table, emit);
            Ok(0)
        }
        Command::Decompose {
            input,
            max_steps,
            max_steps_per_dim,
            emit,
        } => {
            let table = input.load(None)?;
            let dec = decompose_with(
                &table,
                DecomposeOptions {
                    max_steps,
                    max_steps_per_dimension: max_steps_per_dim,
                },
            )?;
            match emit {
                Emit::Json => println!("{}", format::emit_decomposition_json(&dec)),
                Emit::Text => {
                    for step in &dec.steps {
                        println!(
                            "z={} q={}",
                            step.roots,
                            format_rational(&step.coefficient)
                        );
                    }
                    match dec.status {
                        DecompositionStatus::ExhaustedToZero => {
                            println!("status=exhausted_to_zero")
                        }
                        DecompositionStatus::BudgetReached => {
                            println!("status=budget_reached");
                            if let Some((i, d, v)) = dec.tail_diagnostic() {
                                println!(
                                    "residual top-row maximum: {} at ({i}, {d})",
                                    format_rational(&v)
                                );
                            }
                        }
                        DecompositionStatus::WindowExhausted { row, degree } => {
                            println!("status=window_exhausted at ({row}, {degree})")
                        }
                    }
                }
            }
            Ok(match dec.status {
                DecompositionStatus::WindowExhausted { .. } => 3,
                _ => 0,
            })
        }
        Command::Functional {
            input,
            degrees,
            phi,
            bounds,
            show_table,
            pretty,
        } => {
            let table = input.load(None)?;
            let d = DegreeSequence::parse(&degrees)?;
            let s = d.s();
            let bounds = match (phi, bounds) {
                (Some(j), None) => {
                    if s < 0 {
                        return Err(Error::Invalid(
                            "phi bounds need a degree sequence of length >= 2".into(),
                        ));
                    }
                    BoundSequence::phi(j, s as usize)?
                }
                (None, Some(b)) => BoundSequence::parse(&b)?,
                (None, None) => BoundSequence::all_infinite(d.len()),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let value = evaluate(&d, &bounds, &table)?;
            println!("{}", scalar(&value, pretty));
            if show_table {
                let ct = coefficient_table(&d, &bounds, table.ambient())?;
                print!("{}", render_grid(&ct));
            }
            Ok(0)
        }
        Command::Pairing {
            input,
            pure,
            betti,
            c,
            tau,
            pretty,
        } => {
            let table = input.load(None)?;
            let beta = match (pure, betti) {
                (Some(degrees), None) => pure_betti(&DegreeSequence::parse(&degrees)?),
                (None, Some(path)) => {
                    let raw = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("reading {path}: {e}")))?;
                    format::parse_betti_text(&raw)?
                }
                _ => {
                    return Err(Error::Invalid(
                        "pairing needs exactly one of --pure or --betti".into(),
                    ))
                }
            };
            let value = match (c, tau) {
                (Some(c), Some(tau)) => pairing_bounded(&beta, &table, c, tau)?,
                _ => pairing(&beta, &table)?,
            };
            println!("{}", scalar(&value, pretty));
            Ok(0)
        }
        Command::Certify { input, box_, smax } => {
            let box_window = Window::parse(&box_)?;
            // a stock-name table needs to cover every induced twist -d_i
            let twist_window = Window::new(
                box_window.lo.min(-box_window.hi),
                box_window.hi.max(-box_window.lo),
            )?;
            let table = input.load(Some(twist_window))?;
            match certificate_search(&table, box_window, smax)? {
                Some(cert) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&cert).expect("certificate serializes")
                    );
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(0)
                }
            }
        }
        Command::CheckIdentities { trials, seed } => {
            let outcomes = [
                suites::eq1_suite(trials, seed),
                suites::product_identity_suite(trials, seed),
                suites::interpolation_suite(trials, seed),
                suites::pairing_reduction_suite(trials, seed),
            ];
            let mut ok = true;
            for o in &outcomes {
                println!("{}", o.summary());
                ok &= o.passed();
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Render { input } => {
            let table = input.load(None)?;
            print!("{}", render_grid(&table));
            Ok(0)
        }
        Command::Reconstruct {
            decomposition,
            window,
            emit,
        } => {
            let raw = match decomposition.as_deref() {
                None | Some("-") => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
                    buf
                }
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("reading {path}: {e}")))?,
            };
            let dec = format::parse_decomposition_json(&raw)?;
            let window = match window {
                Some(w) => Window::parse(&w)?,
                None => dec.residual.window(),
            };
            let table = reconstruct_steps(&dec.steps, dec.residual.ambient(), window)?;
            print_table(&table, emit);
            Ok(0)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OutOfWindow { .. }
        | Error::WindowExhausted { .. }
        | Error::WindowTooSmall { .. }
        | Error::EmptyWindow { .. }
        | Error::UnsupportedWindow { .. } => 3,
        Error::NonAdmissible { .. } => 4,
        Error::Parse(_) | Error::Invalid(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}

