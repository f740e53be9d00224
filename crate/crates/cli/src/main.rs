mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Habiro-ring invariants of knot surgeries.
#[derive(Parser, Debug)]
#[command(name = "habiro", version)]
pub struct Cli {
    /// Cache directory; nothing is cached when unset.
    #[arg(long, env = "HABIRO_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Write records to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Surgery {
    /// Built-in knot name (unknot, 4_1) or path to a knot file.
    #[arg(long, default_value = "4_1")]
    pub knot: String,

    /// Surgery coefficient -1/b.
    #[arg(long, default_value_t = 1)]
    pub b: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The invariant of the surgery, or of its core colored by V_m.
    Invariant {
        #[command(flatten)]
        surgery: Surgery,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Descendants at explicit shifts or on a grid [-r, r]^b.
    Descendants {
        #[command(flatten)]
        surgery: Surgery,
        #[arg(long)]
        level: usize,
        /// Comma-separated shifts, one per index.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "grid")]
        shifts: Option<Vec<i64>>,
        #[arg(long)]
        grid: Option<i64>,
    },
    /// Cable values φ(K^(m)); `--m 4` or a range `--m 0:10`.
    Cable {
        #[command(flatten)]
        surgery: Surgery,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        m: String,
    },
    /// Values at primitive N-th roots of unity from the level-N truncation.
    Evaluate {
        #[command(flatten)]
        surgery: Surgery,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Comma-separated odd root orders.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        /// Also sum the series directly up to this cut-off and compare.
        #[arg(long, value_enum)]
        cutoff: Option<CutoffArg>,
        /// Write a CSV table of the values here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a verification suite; exits nonzero on failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "4_1")]
        knot: String,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u64>>,
        /// Largest index tested by the basis, integrality and recurrence suites.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Rank estimates of a descendant grid or cable family across levels.
    Rank {
        #[command(flatten)]
        surgery: Surgery,
        #[arg(long, value_enum, default_value = "descendants")]
        family: Family,
        /// Grid radius for descendants.
        #[arg(long, default_value_t = 2)]
        grid: i64,
        /// Largest cable color.
        #[arg(long, default_value_t = 10)]
        max_color: usize,
        /// Degree bound of relation coefficients.
        #[arg(long)]
        deg: usize,
        /// Level window `lo:hi`.
        #[arg(long)]
        levels: String,
        /// Exit nonzero unless the rank is this value across the window.
        #[arg(long)]
        expect: Option<usize>,
        /// Write relation certificates at the top level here, one per line.
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// Validate a knot file and write its cyclotomic coefficients.
    KnotImport {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CutoffArg {
    Third,
    Half,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Basis,
    Integrality,
    Recurrences,
    Imk1,
    Vanishing,
    Tower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Descendants,
    Cables,
}

fn error_line(message: &str) {
    let line = serde_json::json!({ "error": { "message": message } });
    println!("{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            error_line(&e.render().to_string());
            return ExitCode::from(2);
        }
    };
    let result = commands::run(&cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            error_line(&format!("{e:#}"));
            ExitCode::from(2)
        }
    }
}
