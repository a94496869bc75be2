use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use flatgb::frontend::{
    execute_command, parse_session_with, Command, CommandArgs, Format, ParseOptions,
};
use flatgb::polycore::DEFAULT_PRIME;
use flatgb::{Error, Window};

const PRIME_VAR: &str = "FLATGB_PRIME";

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ANALYSIS: u8 = 3;

/// Relative initial ideals, coefficient ideals and loci of parametric ideals.
#[derive(Parser, Debug)]
#[command(name = "flatgb", version, after_help = COMMANDS)]
struct Cli {
    /// Command to run (see the list below).
    command: String,
    /// Input file in the session language.
    file: PathBuf,
    /// Ideal to analyze; defaults to the first one declared.
    #[arg(long)]
    ideal: Option<String>,
    /// Point name or assignment such as `a=1,b=0`.
    #[arg(long)]
    point: Option<String>,
    /// Prime name or generators such as "(a - 1)"; an integer for mono-fiber.
    #[arg(long)]
    prime: Option<String>,
    /// Display window as RxC (rows of the second variable by columns of the first).
    #[arg(long)]
    window: Option<String>,
    /// Localizing element for saturate.
    #[arg(long)]
    by: Option<String>,
    /// Base change modulus for the mono-* commands.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
}

const COMMANDS: &str = "Commands:
  gb            reduced basis of I + base
  initial       relative initial ideal in(I)
  coeffs        coefficient ideals over a window (--window)
  contract      I ∩ A
  flat-locus    flat locus ideal S and a witness
  good-point    coefficient ideals at a prime (--prime)
  specialize    predicted and actual fiber initial ideals (--point)
  iso-locus     per-variable ideals in(I)_x
  finite-locus  per-variable ideals in(I)_{x^∞}
  saturate      (I : s^∞) (--by)
  quolem-check  recompute in(I) over A/(I ∩ A)
  mono-coeffs   coefficient ideals of a monomial ideal over Z or Z/n
  mono-fiber    fiber over F_q (--prime q)
  mono-diagram  staircase of coefficient ideals

Exit status: 0 success, 1 usage or I/O error, 2 parse error, 3 analysis precondition.
Environment: FLATGB_PRIME sets the characteristic of a bare `Fp` (default 32003).";

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_ANALYSIS,
    }
}

fn default_prime() -> Result<u64, String> {
    match std::env::var(PRIME_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{PRIME_VAR}={v} is not an integer")),
        Err(_) => Ok(DEFAULT_PRIME),
    }
}

fn run(cli: &Cli) -> Result<String, (u8, String)> {
    let usage = |m: String| (EXIT_USAGE, m);
    let command: Command = cli
        .command
        .parse()
        .map_err(|e: Error| usage(e.to_string()))?;
    let format: Format = cli
        .format
        .parse()
        .map_err(|e: Error| usage(e.to_string()))?;
    let window = cli
        .window
        .as_deref()
        .map(str::parse::<Window>)
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let options = ParseOptions {
        default_prime: default_prime().map_err(usage)?,
    };
    let text = std::fs::read_to_string(&cli.file)
        .map_err(|e| usage(format!("cannot read {}: {e}", cli.file.display())))?;
    let name = cli.file.display().to_string();
    let session =
        parse_session_with(&text, &options).map_err(|e| (exit_code(&e), format!("{name}:{e}")))?;
    let args = CommandArgs {
        ideal: cli.ideal.clone(),
        point: cli.point.clone(),
        prime: cli.prime.clone(),
        window,
        by: cli.by.clone(),
        modulus: cli.modulus.clone(),
    };
    let report =
        execute_command(&session, command, &args).map_err(|e| (exit_code(&e), e.to_string()))?;
    Ok(report.render(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.is_empty() && !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
