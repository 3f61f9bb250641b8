//! `algebrad`: checks and computes with symmetric operads, algebraic monads
//! and algebrads over finite sets.
//!
//! Exit codes: 0 success or laws hold, 1 laws fail (or not isomorphic),
//! 2 input, format or capacity error.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Operads, algebraic monads and algebrads over finite sets.
///
/// Inputs are JSON documents or builtin entries written `corpus:<id>`.
#[derive(Parser, Debug)]
#[command(name = "algebrad", version)]
pub struct Cli {
    /// Print a machine-readable JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation bound used when building corpus entries.
    #[arg(long, global = true, default_value_t = 4, value_name = "N")]
    pub max_arity: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the carrier of a document: actions, functoriality or
    /// presheaf laws.
    Validate { file: String },
    /// Tensor product: induction (qo), pointwise product (qc) or subset
    /// decomposition (qa).
    Tensor {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Composition product `A∘B`; for qa, `B` must be a commutative algebra.
    Compose {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate on a finite set of size K (qa: on a finite commutative monoid).
    Eval {
        file: String,
        #[arg(long, value_name = "K")]
        set: Option<usize>,
        /// `add<k>`, `mul<k>` or `max<k>`; required for qa.
        #[arg(long)]
        monoid: Option<String>,
    },
    /// Run the law checker for a structure.
    Check { what: Checked, file: String },
    /// Decide equivariant isomorphism of symmetric sequences, arity by arity.
    Iso { a: String, b: String },
    /// List or export builtin entries.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Brute-force recomputations, for reproducing disagreements.
    #[command(hide = true)]
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checked {
    Operad,
    Monad,
    Algebrad,
    Algebra,
    Module,
    CommAlg,
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    List,
    Export {
        id: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleAction {
    /// Exhaustive law enumeration.
    Check { file: String },
    /// Naive coequalizer evaluation with stabilization detection.
    Eval {
        file: String,
        #[arg(long, value_name = "K")]
        set: Option<usize>,
        #[arg(long)]
        monoid: Option<String>,
        /// Largest degree included; defaults to raising until stable.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Backtracking search for an equivariant bijection per arity.
    Iso { a: String, b: String },
    /// Mutate every table cell once and compare checker and oracle.
    Mutate { file: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok,
    Fail,
}

/// What a command produced: a verdict, text for humans and a JSON payload.
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub fields: Value,
}

impl Outcome {
    fn code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Tensor { .. } => "tensor",
        Command::Compose { .. } => "compose",
        Command::Eval { .. } => "eval",
        Command::Check { .. } => "check",
        Command::Iso { .. } => "iso",
        Command::Corpus { .. } => "corpus",
        Command::Oracle { .. } => "oracle",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match commands::run(&cli) {
        Ok(out) => {
            let code = out.code();
            if cli.json {
                let mut v = json!({
                    "command": name,
                    "status": if out.status == Status::Ok { "ok" } else { "fail" },
                });
                if let (Some(obj), Value::Object(fields)) = (v.as_object_mut(), out.fields) {
                    obj.extend(fields);
                }
                let _ = writeln!(std::io::stdout(), "{v}");
            } else if !out.text.is_empty() {
                // A closed pipe (`| head`) is not an error worth reporting.
                let _ = writeln!(std::io::stdout(), "{}", out.text.trim_end());
            }
            ExitCode::from(code)
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    std::io::stdout(),
                    "{}",
                    json!({ "command": name, "status": "error", "error": e.to_string() })
                );
            }
            eprintln!("algebrad: {e}");
            ExitCode::from(2)
        }
    }
}
