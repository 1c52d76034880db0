//! Command-line interface.
//!
//! * `ccql run`: execute statements against the backends named by a
//!   config file (`--config`, or `CCQL_CONFIG`), printing one table per
//!   statement as aligned text, CSV, or compact JSON (one document per
//!   line). Warnings go to stderr; `--strict` turns them into a failure.
//! * `ccql parse`: tokenize and parse statements offline, printing their
//!   canonical text (or `--ast` JSON). No schema or backend is consulted,
//!   so this checks syntax only.
//! * `ccql fixtures-check`: validate a fixture document or directory and
//!   print a census, listing every integrity violation.
//!
//! Statements come from `--query`, `--file`, or stdin. Exit codes: 0 on
//! success (including an empty result), 1 when a statement fails to
//! parse, validate, or execute (or a fixture check finds violations),
//! 2 when the environment is unusable: bad config, unreadable input, or
//! a fixture path that does not exist.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::backends::config::load_backends;
use crate::backends::fixture::FixtureStore;
use crate::engine::{Engine, ResultTable};
use crate::parser::{parse_program, render_statement, statement_to_json, tokenize, QueryStatement};
use crate::Diagnostic;

#[derive(Parser)]
#[command(name = "ccql", version, about = "Cross-chain query language runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute statements against configured chain backends
    Run(RunArgs),
    /// Parse statements and print them back without touching any backend
    Parse(ParseArgs),
    /// Validate fixture chain documents
    FixturesCheck {
        /// Fixture document or directory of documents
        path: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Backend configuration file
    #[arg(long, env = "CCQL_CONFIG", value_name = "PATH")]
    config: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Treat warnings as errors
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct ParseArgs {
    /// Print each statement's JSON syntax tree instead of canonical text
    #[arg(long)]
    ast: bool,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct InputArgs {
    /// Statement text (takes precedence over --file and stdin)
    #[arg(short, long)]
    query: Option<String>,
    /// Read statements from a file
    #[arg(short, long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

/// A command failure plus the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    /// Environment problem: config, IO, missing path. Exit 2.
    fn env(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    /// Query problem: the input itself is at fault. Exit 1.
    fn query(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

impl InputArgs {
    fn read(&self) -> Result<String, Failure> {
        if let Some(query) = &self.query {
            return Ok(query.clone());
        }
        if let Some(path) = &self.file {
            return std::fs::read_to_string(path)
                .map_err(|e| Failure::env(format!("cannot read {}: {e}", path.display())));
        }
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::env(format!("cannot read stdin: {e}")))?;
        Ok(text)
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Parse(args) => cmd_parse(&args),
        Command::FixturesCheck { path } => cmd_fixtures_check(&path),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

/// Tokenizes and parses a whole input, tagging diagnostics with the
/// stage that produced them, matching the engine's error labels.
fn parse_input(text: &str) -> Result<Vec<QueryStatement>, Failure> {
    let tokens = tokenize(text).map_err(|d| stage_failure("tokenize", &d))?;
    let statements = parse_program(&tokens).map_err(|d| stage_failure("parse", &d))?;
    if statements.is_empty() {
        return Err(Failure::query("no statements in input"));
    }
    Ok(statements)
}

fn stage_failure(stage: &str, diagnostics: &[Diagnostic]) -> Failure {
    for diagnostic in diagnostics {
        eprintln!("error: {stage}: {diagnostic}");
    }
    Failure { code: 1, message: format!("{stage} failed with {} error(s)", diagnostics.len()) }
}

fn cmd_run(args: &RunArgs) -> Result<i32, Failure> {
    let backends = load_backends(&args.config).map_err(|e| Failure::env(e.to_string()))?;
    let engine = Engine::new(backends);
    let text = args.input.read()?;
    let statements = parse_input(&text)?;

    let mut warned = false;
    for (i, statement) in statements.iter().enumerate() {
        let table = match engine.execute_statement(statement) {
            Ok(table) => table,
            Err(err) => {
                for diagnostic in &err.diagnostics {
                    eprintln!("error: {}: {diagnostic}", err.stage);
                }
                return Err(Failure::query(err.to_string()));
            }
        };
        if i > 0 && args.format != Format::Json {
            println!();
        }
        print_table(&table, args.format);
        for warning in &table.warnings {
            warned = true;
            if args.strict {
                eprintln!("error: {warning}");
            } else {
                eprintln!("warning: {warning}");
            }
        }
    }
    Ok(if args.strict && warned { 1 } else { 0 })
}

fn print_table(table: &ResultTable, format: Format) {
    match format {
        Format::Table => print!("{}", table.render_text()),
        Format::Csv => print!("{}", table.render_csv()),
        Format::Json => println!("{}", table.to_json()),
    }
}

fn cmd_parse(args: &ParseArgs) -> Result<i32, Failure> {
    let text = args.input.read()?;
    let statements = parse_input(&text)?;
    for statement in &statements {
        if args.ast {
            println!("{}", statement_to_json(statement));
        } else {
            println!("{}", render_statement(statement));
        }
    }
    Ok(0)
}

fn cmd_fixtures_check(path: &PathBuf) -> Result<i32, Failure> {
    let report = FixtureStore::check(path).map_err(|e| Failure::env(e.to_string()))?;
    if report.violations.is_empty() {
        println!("ok: {}", report.summary());
        return Ok(0);
    }
    for violation in &report.violations {
        eprintln!("violation: {violation}");
    }
    eprintln!("{} violations in {}", report.violations.len(), report.summary());
    Ok(1)
}
