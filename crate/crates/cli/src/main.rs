mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use artinv_core::invariants::{ReesMode, DEFAULT_CAP};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CliError, Context};

#[derive(Parser, Debug)]
#[command(
    name = "artinv",
    version,
    about = "Invariants of artinian algebras k[x]/I over Q and F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Rees strategy: exhaustive, degree1 or generic.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<ReesMode>,
    /// Bound on enumerated states.
    #[arg(long, global = true, env = "ARTINV_CAP")]
    cap: Option<u64>,
    /// Rerun over F_p and list the results that change.
    #[arg(long = "char-compare", global = true, value_name = "P")]
    char_compare: Option<u64>,
    /// Disable worker threads.
    #[arg(long, global = true)]
    sequential: bool,
}

fn parse_mode(s: &str) -> Result<ReesMode, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Length, Hilbert function, socle, Rees and Dilworth numbers, exactness.
    Report { file: PathBuf },
    /// Hilbert function and its shape.
    Hilbert { file: PathBuf },
    /// Rees number min l(A/xA) over x in m.
    Rees { file: PathBuf },
    /// Dilworth number: exact over finite fields, bounds otherwise.
    Dilworth { file: PathBuf },
    /// Socle (0 : m).
    Socle { file: PathBuf },
    /// Minimal number of generators of a registered ideal, m or m^k.
    Mu { file: PathBuf, ideal: String },
    /// Annihilator of an element.
    Annihilator { file: PathBuf, element: String },
    /// Weak Lefschetz test for an element, or for a generic one when omitted.
    Lefschetz { file: PathBuf, element: Option<String> },
    /// Whether D(A) = r(A), with a certificate.
    Exactness { file: PathBuf },
    /// l(A/(f_1, ..., f_k)).
    #[command(name = "quotient-length")]
    QuotientLength {
        file: PathBuf,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Search for xi in m with m*xi = m^2.
    Xi {
        file: PathBuf,
        /// degree1 or all
        #[arg(long, default_value = "degree1")]
        family: String,
    },
    /// mu(N) = l(A/aA) together with (0:a) in N and mN = aN.
    #[command(name = "fact-main")]
    FactMain {
        file: PathBuf,
        element: String,
        ideal: String,
    },
    /// Macaulay admissibility of an O-sequence such as 1,3,1,2.
    Macaulay { sequence: String },
    /// Run the built-in example suite.
    Fixtures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Report { .. } => "report",
            Command::Hilbert { .. } => "hilbert",
            Command::Rees { .. } => "rees",
            Command::Dilworth { .. } => "dilworth",
            Command::Socle { .. } => "socle",
            Command::Mu { .. } => "mu",
            Command::Annihilator { .. } => "annihilator",
            Command::Lefschetz { .. } => "lefschetz",
            Command::Exactness { .. } => "exactness",
            Command::QuotientLength { .. } => "quotient-length",
            Command::Xi { .. } => "xi",
            Command::FactMain { .. } => "fact-main",
            Command::Macaulay { .. } => "macaulay",
            Command::Fixtures => "fixtures",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage errors are input errors; help and version are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli.command, &cli.common, &argv) {
        Ok((text, None)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok((text, Some(failure))) => {
            print!("{text}");
            eprintln!("artinv: fixture suite failed, first failure {failure}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("artinv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs the command and renders it. The second component names the first
/// failed check when the command completed but reported a failure.
fn run(cmd: &Command, common: &Common, argv: &[String]) -> Result<(String, Option<String>), CliError> {
    let start = Instant::now();
    let ctx = Context {
        cap: common.cap.unwrap_or(DEFAULT_CAP),
        mode: common.mode,
        sequential: common.sequential,
    };
    let (presentation, results, compare, failure) = match cmd {
        Command::Macaulay { sequence } => (Value::Null, commands::macaulay(sequence)?, Value::Null, None),
        Command::Fixtures => {
            let (v, failure) = commands::fixtures();
            (Value::Null, v, Value::Null, failure)
        }
        _ => {
            let file = file_of(cmd);
            let src =
                std::fs::read_to_string(file).map_err(|e| CliError::Io(file.display().to_string(), e.to_string()))?;
            let p = commands::load(&src)?;
            let results = commands::dispatch(cmd_spec(cmd), &p, &ctx)?;
            let compare = match common.char_compare {
                None => Value::Null,
                Some(q) => commands::char_compare(cmd_spec(cmd), &p, q, &ctx, &results)?,
            };
            (commands::presentation_json(&p, file), results, compare, None)
        }
    };
    let report = json!({
        "command": cmd.name(),
        "args": argv,
        "presentation": presentation,
        "results": results,
        "char_compare": compare,
        "timing_ms": (start.elapsed().as_secs_f64() * 1000.0 * 1000.0).round() / 1000.0,
    });
    let text = if common.json {
        let mut s = serde_json::to_string_pretty(&report).expect("serializable");
        s.push('\n');
        s
    } else {
        render::text(&report)
    };
    Ok((text, failure))
}

fn file_of(cmd: &Command) -> &PathBuf {
    match cmd {
        Command::Report { file }
        | Command::Hilbert { file }
        | Command::Rees { file }
        | Command::Dilworth { file }
        | Command::Socle { file }
        | Command::Mu { file, .. }
        | Command::Annihilator { file, .. }
        | Command::Lefschetz { file, .. }
        | Command::Exactness { file }
        | Command::QuotientLength { file, .. }
        | Command::Xi { file, .. }
        | Command::FactMain { file, .. } => file,
        Command::Macaulay { .. } | Command::Fixtures => unreachable!("no input file"),
    }
}

fn cmd_spec(cmd: &Command) -> commands::Spec<'_> {
    use commands::Spec;
    match cmd {
        Command::Report { .. } => Spec::Report,
        Command::Hilbert { .. } => Spec::Hilbert,
        Command::Rees { .. } => Spec::Rees,
        Command::Dilworth { .. } => Spec::Dilworth,
        Command::Socle { .. } => Spec::Socle,
        Command::Mu { ideal, .. } => Spec::Mu(ideal),
        Command::Annihilator { element, .. } => Spec::Annihilator(element),
        Command::Lefschetz { element, .. } => Spec::Lefschetz(element.as_deref()),
        Command::Exactness { .. } => Spec::Exactness,
        Command::QuotientLength { elements, .. } => Spec::QuotientLength(elements),
        Command::Xi { family, .. } => Spec::Xi(family),
        Command::FactMain { element, ideal, .. } => Spec::FactMain(element, ideal),
        Command::Macaulay { .. } | Command::Fixtures => unreachable!("handled separately"),
    }
}
