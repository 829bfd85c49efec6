//! `walks`: command-line front end for orthant walk enumeration and
//! asymptotics.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "walks", version, about = "Enumeration and asymptotics of highly symmetric orthant walks")]
pub struct Cli {
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Walks,
    Excursions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct ModelArg {
    /// Step set: compass tokens (`N,S,E,W,NE,...`), integer tuples
    /// (`1,0,-1; -1,0,-1; ...`) or a built-in name such as `six_step`.
    #[arg(long)]
    pub steps: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact asymptotic expansion of walk or excursion counts.
    Asymptotics {
        #[command(flatten)]
        model: ModelArg,
        /// Number of orders to report (for excursions, beyond the vanishing ones).
        #[arg(long, default_value_t = 1)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Kind::Walks)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also print the rational generating function.
        #[arg(long)]
        emit_rational: bool,
        /// Significant digits in decimal renderings.
        #[arg(long, default_value_t = orthant_walks::report::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Exact counts by dynamic programming.
    Count {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Add the excursion column.
        #[arg(long)]
        excursions: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check enumeration, diagonal extraction and the kernel identities.
    Verify {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Corrupt one count first; every check that sees it must fail.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply a differential operator (JSON file) to the counting series.
    OdeCheck {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        ode: std::path::PathBuf,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a linear recurrence (JSON file) against the counts.
    RecurrenceCheck {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        rec: std::path::PathBuf,
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
