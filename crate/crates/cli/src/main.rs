mod commands;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tamestrat_core::strat::SCHEMA;

#[derive(Parser)]
#[command(name = "tamestrat", version, about = "Tubes, localizations and stratifications of tame hereditary algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Copy)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Euler form <x, y> and defects.
    Euler(commands::EulerArgs),
    /// Radical vector, tube ranks and related data of an affine type.
    Radical(commands::TypeArgs),
    /// dim Hom and dim Ext^1 between two Kronecker representations.
    Homext(commands::HomExtArgs),
    /// The representation F(k[x]/(p^n)) and its endomorphism ring.
    FunctorF(commands::FunctorFArgs),
    /// Calculus of maps between Pruefer modules in a tube.
    Tube(commands::TubeArgs),
    /// The ring Gamma(m) and the element J with J^m = x I.
    Gamma(commands::GammaArgs),
    /// Membership in the localization of k[x] at a set Delta.
    Localize(commands::LocalizeArgs),
    /// Adele ring closure and denominator-set checks.
    Adele(commands::AdeleArgs),
    /// Stratifications of End(T_U) along route A, B or both.
    Stratify(commands::StratifyArgs),
    /// Runs every invariant suite.
    VerifyAll(commands::VerifyArgs),
}

/// A command's result: the JSON payload, a text rendering, and whether
/// every requested check passed.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    pub fn new(json: Value, text: String) -> Self {
        Outcome { json, text, ok: true }
    }

    pub fn checked(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    v
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common;
    let result = match cli.command {
        Command::Euler(a) => commands::euler(&a),
        Command::Radical(a) => commands::radical(&a),
        Command::Homext(a) => commands::homext(&a),
        Command::FunctorF(a) => commands::functor_f(&a),
        Command::Tube(a) => commands::tube(&a),
        Command::Gamma(a) => commands::gamma(&a),
        Command::Localize(a) => commands::localize(&a),
        Command::Adele(a) => commands::adele(&a, common.seed),
        Command::Stratify(a) => commands::stratify(&a),
        Command::VerifyAll(a) => commands::verify_all(&a, common.seed),
    };
    match result {
        Ok(out) => {
            match common.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&with_schema(out.json)).expect("json"))),
                Format::Text => emit(&out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match common.format {
                Format::Json => {
                    let v = with_schema(json!({"error": {"kind": e.kind, "message": e.message}}));
                    emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
                }
                Format::Text => eprintln!("error ({}): {}", e.kind, e.message),
            }
            ExitCode::from(e.code)
        }
    }
}
