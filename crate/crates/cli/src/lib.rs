//! The `lpm` command-line front end.
//!
//! Every command builds a [`Report`] of ordered key-value pairs, printed as
//! `key: value` lines or, with `--json`, as one JSON object. Exit codes: 0 for
//! success or a positive verdict, 1 for a violated property, refutation or
//! inconclusive search, 2 for usage, input or evaluation errors.

mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand};

use lpm_core::{Elem, SubPredicate};

pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "lpm", version, about = "Check, classify and enumerate left pseudocancellative unital magmas")]
pub struct Cli {
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check `y = x * (x \ y)`, `y = x \ (x * y)`, `x = e * x = x * e` and the
    /// derived properties.
    #[command(allow_negative_numbers = true)]
    Check {
        /// A `.lpmt`/`.lpmr` file or `builtin:NAME`.
        source: String,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Left loop, x\x = e, weak protomodularity and protomodularity.
    #[command(allow_negative_numbers = true)]
    Classify {
        source: String,
        /// Check elements in [-R, R].
        #[arg(long, value_name = "R", conflicts_with = "window")]
        range: Option<Elem>,
        #[command(flatten)]
        window: WindowArg,
        #[command(flatten)]
        search: SearchArgs,
        /// Subalgebra to try for a refutation; repeatable. Defaults to all,
        /// nonneg, nonpos, even.
        #[arg(long = "subalgebra", value_name = "PRED")]
        subalgebras: Vec<SubPredicate>,
    },
    /// Search a shortest division chain taking an element to the unit.
    #[command(allow_negative_numbers = true)]
    Witness {
        source: String,
        #[arg(long)]
        element: Elem,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Enumerate all LPMs of a given order with unit 0.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
        /// Keep only structures satisfying `y = x \ (x * y)`.
        #[arg(long)]
        identity2: bool,
        /// Allow orders above 5.
        #[arg(long)]
        allow_large: bool,
    },
    /// Evaluate and normalize a term.
    #[command(allow_negative_numbers = true)]
    Eval {
        source: String,
        #[arg(long)]
        term: String,
        /// Generator values, e.g. `z=5,w=-1`.
        #[arg(long, value_name = "K=V,...")]
        assign: Option<String>,
    },
    /// Whether a term in `z` evaluates to the unit at `z = X`.
    #[command(allow_negative_numbers = true)]
    Kernel {
        source: String,
        #[arg(long, value_name = "X")]
        point: Elem,
        #[arg(long)]
        term: String,
    },
    /// Build the multiplication determined by a left division.
    #[command(name = "construct-mul", allow_negative_numbers = true)]
    ConstructMul {
        /// A division file (a `mul` section is optional) or `builtin:NAME`.
        source: String,
        #[command(flatten)]
        window: WindowArg,
    },
    /// List the builtin structures.
    Examples,
}

#[derive(Debug, Args)]
pub struct WindowArg {
    /// Restrict to [LO, HI]; infinite carriers default to [-128, 128].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub window: Option<Vec<Elem>>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Maximum chain length.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Divisors are drawn from [LO, HI].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub divisor_window: Option<Vec<Elem>>,
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli.command, cli.json) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(msg) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
