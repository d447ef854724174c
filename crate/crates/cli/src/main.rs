//! `fibfractal`: compute Fibonomial coefficients exactly or through fast
//! digit evaluators, render residue triangles, verify their self-similarity,
//! and benchmark digit evaluation against exact arithmetic.
//!
//! Exit codes: 0 on success (and on verified sweeps), 1 when a verification
//! finds mismatches or a benchmark agreement check fails, 2 on usage errors.

mod bench;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use fibfractal_core::congruence::{fibonomial_mod3_fast, lucas_fibonomial_mod2, Residue};
use fibfractal_core::exact::{self, FibonomialRows};
use fibfractal_core::st_poly;
use fibfractal_core::triangle::{TriangleGrid, TriangleKind};

#[derive(Parser)]
#[command(name = "fibfractal", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Fibonacci number F_n.
    Fib {
        n: u64,
        /// Reduce the result modulo M.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Print the Fibotorial F_1 F_2 ... F_n.
    Fibotorial {
        n: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Print the Fibonomial coefficient C_F(n, k).
    Fibonomial {
        n: u64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        /// Reduce the result modulo M.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
        /// Use the O(log n) digit evaluator; requires --mod 2 or --mod 3.
        #[arg(long)]
        fast: bool,
        /// Print residues as balanced representatives (-1 instead of 2 mod 3).
        #[arg(long)]
        balanced: bool,
    },
    /// Print the Catalan number C(2n,n)/(n+1).
    Catalan {
        n: u64,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Print the generalized Catalan polynomial C{n}, or its value at (s, t).
    StCatalan {
        n: u64,
        /// Evaluate at this s (requires --t).
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
        /// Evaluate at this t (requires --s).
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<u64>,
    },
    /// Render a residue triangle as text, PBM, PGM or CSV.
    Triangle {
        /// Number of rows to render.
        #[arg(long)]
        rows: u64,
        #[arg(long = "mod", value_name = "M", default_value_t = 2)]
        modulus: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Fibonomial)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Balanced residue display (text and csv formats).
        #[arg(long)]
        balanced: bool,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a verification sweep; exits 1 if any cell mismatches.
    Verify {
        #[arg(value_enum)]
        which: verify::VerifyKind,
        /// Verify levels 0..=LEVEL (self-similarity sweeps).
        #[arg(long = "m", value_name = "LEVEL")]
        level: Option<u32>,
        /// Upper bound for n (range sweeps).
        #[arg(long = "n-max", value_name = "N")]
        n_max: Option<u64>,
    },
    /// Time the digit-product mod-2 evaluator against exact arithmetic.
    Bench {
        /// Largest n for the random (n, k) pairs.
        #[arg(long = "n-max", value_name = "N", default_value_t = 100_000)]
        n_max: u64,
        /// Number of random pairs.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Exact arithmetic is only timed on pairs with n below this cap.
        #[arg(long = "exact-cap", value_name = "N", default_value_t = 600)]
        exact_cap: u64,
        /// Seed for the pair sampler.
        #[arg(long, default_value_t = 0xF1B0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Fibonomial,
    Binomial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Pbm,
    Pgm,
    Csv,
}

/// A malformed request: reported on stderr, exit code 2.
pub struct UsageError(pub String);

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        UsageError(message.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Fib { n, modulus } => print_natural(exact::fib(n), modulus),
        Command::Fibotorial { n, modulus } => print_natural(exact::fibotorial(n), modulus),
        Command::Fibonomial {
            n,
            k,
            modulus,
            fast,
            balanced,
        } => fibonomial_command(n, k, modulus, fast, balanced),
        Command::Catalan { n, modulus } => print_natural(exact::catalan(n), modulus),
        Command::StCatalan { n, s, t, modulus } => st_catalan_command(n, s, t, modulus),
        Command::Triangle {
            rows,
            modulus,
            kind,
            format,
            balanced,
            out,
        } => triangle_command(rows, modulus, kind, format, balanced, out),
        Command::Verify {
            which,
            level,
            n_max,
        } => Ok(verify::run(which, level, n_max)),
        Command::Bench {
            n_max,
            trials,
            exact_cap,
            seed,
        } => Ok(bench::run(n_max, trials, exact_cap, seed)),
    }
}

fn check_modulus(modulus: u64) -> Result<(), UsageError> {
    if modulus < 2 {
        return Err(UsageError::new("--mod must be at least 2"));
    }
    Ok(())
}

fn print_natural(value: BigUint, modulus: Option<u64>) -> Result<ExitCode, UsageError> {
    match modulus {
        None => println!("{value}"),
        Some(m) => {
            check_modulus(m)?;
            println!("{}", value % m);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_residue(residue: Residue, balanced: bool) {
    if balanced {
        println!("{}", residue.balanced());
    } else {
        println!("{}", residue.value());
    }
}

fn fibonomial_command(
    n: u64,
    k: i64,
    modulus: Option<u64>,
    fast: bool,
    balanced: bool,
) -> Result<ExitCode, UsageError> {
    if balanced && modulus.is_none() {
        return Err(UsageError::new("--balanced requires --mod"));
    }
    if fast {
        let residue = match modulus {
            Some(2) if k < 0 => Residue::new(0, 2),
            Some(2) => lucas_fibonomial_mod2(n, k as u64),
            Some(3) if k < 0 => Residue::new(0, 3),
            Some(3) => fibonomial_mod3_fast(n, k as u64),
            Some(m) => {
                return Err(UsageError::new(format!(
                    "--fast supports --mod 2 and --mod 3 only, got {m}"
                )))
            }
            None => return Err(UsageError::new("--fast requires --mod 2 or --mod 3")),
        };
        print_residue(residue, balanced);
        return Ok(ExitCode::SUCCESS);
    }
    let value = exact_fibonomial(n, k);
    match modulus {
        None => println!("{value}"),
        Some(m) => {
            check_modulus(m)?;
            let residue = Residue::new(u64::try_from(&(value % m)).expect("reduced"), m);
            print_residue(residue, balanced);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One-shot exact Fibonomial. The memo table is ideal for narrow
/// parallelograms; for deep central cells the row iterator computes the same
/// recursion holding only one row, so memory stays linear in the row size.
fn exact_fibonomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::from(0u32);
    }
    let near_edge = (k as u64).min(n - k as u64);
    if n <= 512 || near_edge < 32 {
        return exact::fibonomial(n, k);
    }
    let mut rows = FibonomialRows::new();
    for _ in 0..n {
        rows.next_row();
    }
    rows.next_row()[near_edge as usize].clone()
}

fn st_catalan_command(
    n: u64,
    s: Option<i64>,
    t: Option<i64>,
    modulus: Option<u64>,
) -> Result<ExitCode, UsageError> {
    match (s, t) {
        (None, None) => {
            if modulus.is_some() {
                return Err(UsageError::new(
                    "--mod requires evaluating with --s and --t",
                ));
            }
            println!("{}", st_poly::st_catalan(n));
        }
        (Some(s), Some(t)) => {
            let value = st_poly::st_catalan(n).evaluate(&BigInt::from(s), &BigInt::from(t));
            match modulus {
                None => println!("{value}"),
                Some(m) => {
                    check_modulus(m)?;
                    let m = BigInt::from(m);
                    println!("{}", ((value % &m) + &m) % &m);
                }
            }
        }
        _ => return Err(UsageError::new("--s and --t must be given together")),
    }
    Ok(ExitCode::SUCCESS)
}

fn triangle_command(
    rows: u64,
    modulus: u64,
    kind: KindArg,
    format: FormatArg,
    balanced: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode, UsageError> {
    if rows == 0 {
        return Err(UsageError::new("--rows must be at least 1"));
    }
    check_modulus(modulus)?;
    if format == FormatArg::Pbm && modulus != 2 {
        return Err(UsageError::new("PBM output requires --mod 2"));
    }
    let kind = match kind {
        KindArg::Fibonomial => TriangleKind::Fibonomial,
        KindArg::Binomial => TriangleKind::Binomial,
    };
    let grid = TriangleGrid::build(kind, rows, modulus);
    assert!(grid.spot_check(), "grid disagrees with point evaluation");
    let rendered = match format {
        FormatArg::Text => grid.render_text(balanced),
        FormatArg::Pbm => grid.to_pbm().expect("modulus checked above"),
        FormatArg::Pgm => grid.to_pgm(),
        FormatArg::Csv => grid.to_csv(balanced),
    };
    match out {
        None => print!("{rendered}"),
        Some(path) => fs::write(&path, rendered)
            .map_err(|e| UsageError::new(format!("cannot write {}: {e}", path.display())))?,
    }
    Ok(ExitCode::SUCCESS)
}
