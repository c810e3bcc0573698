//! `compasskit` command-line front end.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

const EXAMPLES: &str = "\
Examples:
  compasskit construct scripts/golden_section.cks --svg golden.svg
  compasskit verify angle-sum --seed 7
  compasskit verify archimedes
  compasskit pi-table --rounds 4
  compasskit cf --value sqrt2 --steps 4
  compasskit cf --value 31:9
  compasskit solve-triangle 3 4 5
  compasskit mensurate trapezoid a=3 b=5 height=2
  compasskit mensurate solid cone R=5 L=13
  compasskit lantern --R 1 --H 1 --m n^3 --sweep 16

Exit status: 0 on success, 1 when a checked property fails, 2 for
malformed input or an infeasible construction.

The default tolerance can be set with COMPASSKIT_TOLERANCE, either one
number used for both windows or `abs,rel`.";

#[derive(Debug, Parser)]
#[command(name = "compasskit", version, about = "Ruler-and-compass constructions and classical mensuration", after_help = EXAMPLES)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Tolerance as `eps` or `abs,rel` (overrides COMPASSKIT_TOLERANCE).
    #[arg(long, global = true)]
    pub tolerance: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a construction script; `emit svg` lines and --svg write drawings.
    Construct {
        script: PathBuf,
        /// Also draw the final figure to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print every executed instruction.
        #[arg(long)]
        trace: bool,
    },
    /// Run a randomized property suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = compasskit::verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = compasskit::verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// List the construction macros and property suites.
    Macros,
    /// Inscribed-polygon perimeters from the hexagon by repeated doubling.
    PiTable {
        #[arg(long, default_value_t = 5)]
        rounds: u32,
        /// Use the cancellation-free form of the doubling recurrence.
        #[arg(long)]
        stabilized: bool,
    },
    /// Continued fraction and convergents of a ratio of lengths.
    Cf {
        /// sqrt2, pi, phi (built with ruler and compass), `a:b`, or a number.
        #[arg(long)]
        value: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = compasskit::measure::DEFAULT_STOP_EPS)]
        stop_eps: f64,
    },
    /// Solve a triangle from its three sides.
    SolveTriangle { a: f64, b: f64, c: f64 },
    /// Area of a plane figure, or `solid <kind>` for volume and surfaces.
    Mensurate {
        /// rectangle, parallelogram, triangle, rhombus, trapezoid,
        /// regular-polygon, circumscribed, or `solid`.
        shape: String,
        /// `key=value` parameters (for `solid`, the kind comes first).
        #[arg(num_args = 0..)]
        params: Vec<String>,
    },
    /// Area of the Schwarz lantern inscribed in a cylinder.
    Lantern {
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long = "H", default_value_t = 1.0)]
        height: f64,
        /// Slab count: an integer or `n`, `n^2`, `n^3` in terms of n.
        #[arg(long, default_value = "n")]
        m: String,
        #[arg(long)]
        n: Option<u64>,
        /// Print rows for every n from 3 up to this value.
        #[arg(long)]
        sweep: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match commands::run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(err) => {
            if let Some(failed) = err.downcast_ref::<commands::CheckFailed>() {
                eprintln!("check failed: {failed}");
                ExitCode::from(1)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        }
    }
}
