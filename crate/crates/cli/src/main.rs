//! `palstream`: run, verify, generate and time the streaming palindrome engines.

mod input;
mod run;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use palstream::{ApproxMode, EngineKind, GenSpec, Parity, StreamConfig};

/// Exit status for bad flags, invalid configurations and oracle guards.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when verification finds a violation.
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "palstream",
    version,
    about = "Streaming approximation of the longest palindrome"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream an input through an engine and report the answer.
    Run(run::RunArgs),
    /// Check engines against the exact oracle on generated inputs.
    Verify(verify::VerifyArgs),
    /// Print a generated text.
    Gen(GenArgs),
    /// Time engines on a generated text.
    Bench(run::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    /// Layout implied by the mode.
    Auto,
    /// Coarse layout for large eps (basic engine, multiplicative mode only).
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engines {
    Basic,
    Compressed,
    Both,
}

impl Engines {
    pub fn kinds(self) -> Vec<EngineKind> {
        match self {
            Engines::Basic => vec![EngineKind::Basic],
            Engines::Compressed => vec![EngineKind::Compressed],
            Engines::Both => vec![EngineKind::Basic, EngineKind::Compressed],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Odd {
    /// Feed every symbol twice so odd and even palindromes are both found.
    Double,
    /// Feed symbols once; only even palindromes are reported.
    EvenOnly,
}

/// Error target and engine layout. `--error` and `--eps` refer to lengths of
/// palindromes in the original text; the engine converts them internally.
#[derive(Args, Debug, Clone)]
pub struct ModeArgs {
    #[arg(long, value_enum, default_value_t = Mode::Additive)]
    pub mode: Mode,
    /// Additive error E (answer >= OPT - E).
    #[arg(long, default_value_t = 1)]
    pub error: u64,
    /// Multiplicative error eps (OPT <= (1 + eps) * answer).
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Scheme::Auto)]
    pub scheme: Scheme,
    #[arg(long, value_enum, default_value_t = Odd::Double)]
    pub odd: Odd,
    /// Seed for the fingerprint base.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ModeArgs {
    pub fn approx(&self) -> Result<ApproxMode> {
        Ok(match (self.mode, self.scheme) {
            (Mode::Additive, Scheme::Auto) => ApproxMode::Additive { error: self.error },
            (Mode::Multiplicative, Scheme::Auto) => ApproxMode::Multiplicative { eps: self.eps },
            (Mode::Multiplicative, Scheme::Sparse) => ApproxMode::Sparse { eps: self.eps },
            (Mode::Additive, Scheme::Sparse) => {
                bail!("--scheme sparse needs --mode multiplicative")
            }
        })
    }

    pub fn config(&self, n: u64, engine: EngineKind) -> Result<StreamConfig> {
        let parity = match self.odd {
            Odd::Double => Parity::Doubled,
            Odd::EvenOnly => Parity::EvenOnly,
        };
        let cfg = StreamConfig::new(self.approx()?, n, engine)
            .seed(self.seed)
            .parity(parity);
        cfg.scheme()
            .with_context(|| format!("invalid configuration for n = {n}"))?;
        Ok(cfg)
    }

    /// Configuration for an input of known length. Short inputs get a larger
    /// declared capacity when E or eps is out of range for their own length.
    pub fn config_fitting(&self, len: u64, engine: EngineKind) -> Result<StreamConfig> {
        let mut n = len.max(1);
        loop {
            match self.config(n, engine) {
                Ok(cfg) => return Ok(cfg),
                Err(e) => match e.downcast_ref::<palstream::Error>() {
                    Some(
                        palstream::Error::AdditiveOutOfRange { .. }
                        | palstream::Error::EpsTooSmall { .. },
                    ) if n < 1 << 40 => n *= 2,
                    _ => return Err(e),
                },
            }
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Generator as JSON, e.g. '{"kind":"nu","length":100}'.
    #[arg(long)]
    spec: String,
    /// Append a trailing newline.
    #[arg(long)]
    newline: bool,
}

/// An error that maps to a specific exit status.
#[derive(Debug)]
pub struct Exit(pub u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit status {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn gen(args: &GenArgs) -> Result<()> {
    let spec: GenSpec = serde_json::from_str(&args.spec).context("parsing --spec")?;
    let text = palstream::gen::generate(&spec)?;
    let mut out = std::io::stdout().lock();
    out.write_all(&text)?;
    if args.newline {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => run::run(a),
        Command::Verify(a) => verify::verify(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => run::bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(Exit(code)) = e.downcast_ref::<Exit>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
