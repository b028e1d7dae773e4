//! `verify` subcommand: engines against the exact per-prefix oracle.

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use palstream::oracle::{prefix_even_longest, prefix_longest, PREFIX_GUARD};
use palstream::{EngineKind, Fault, GenSpec, PalStream, Parity, StreamConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Engines, Exit, ModeArgs, EXIT_USAGE, EXIT_VIOLATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Periodic,
    Nu,
    Planted,
    Morphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InjectFault {
    SkipLevel0,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = Engines::Both)]
    pub engines: Engines,
    #[arg(long, default_value_t = 20)]
    pub trials: u32,
    /// Largest generated length (the per-prefix oracle allows up to 8192).
    #[arg(long, default_value_t = 2048)]
    pub max_len: usize,
    #[arg(long, value_enum, default_value_t = Kind::Random)]
    pub kind: Kind,
    /// Alphabet size for random, periodic and planted inputs; symbol range
    /// for morphism inputs.
    #[arg(long, default_value_t = 2)]
    pub alphabet: u32,
    /// Break the engines on purpose to check that verification catches it.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<InjectFault>,
}

#[derive(Debug, Clone, Serialize)]
struct Violation {
    engine: EngineKind,
    trial: u32,
    len: usize,
    h: usize,
    opt: u64,
    answer: u64,
}

#[derive(Debug, Clone, Serialize)]
struct EngineSummary {
    engine: EngineKind,
    checks: u64,
    violations: u64,
    worst_gap: u64,
    /// Largest opt / answer over prefixes with a positive answer.
    worst_ratio: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    kind: String,
    trials: u32,
    violations: u64,
    engines: Vec<EngineSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_violation: Option<Violation>,
}

fn case(args: &VerifyArgs, trial: u32) -> Result<Vec<u8>> {
    let seed = args
        .mode
        .seed
        .wrapping_mul(1_000_003)
        .wrapping_add(trial as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let length = rng.gen_range(1..=args.max_len.max(1));
    let k = args.alphabet;
    let spec = match args.kind {
        Kind::Random => GenSpec::Random {
            length,
            alphabet: k,
            seed,
        },
        Kind::Periodic => {
            let period = rng.gen_range(1..=8usize);
            let word = (0..period)
                .map(|_| {
                    palstream::gen::letter(rng.gen_range(0..k.clamp(2, 26)), k.clamp(2, 26)) as char
                })
                .collect();
            GenSpec::Periodic { length, word }
        }
        Kind::Nu => GenSpec::Nu { length },
        Kind::Planted => {
            let palindrome = rng.gen_range(1..=length);
            let position = rng.gen_range(0..=length - palindrome);
            GenSpec::Planted {
                length,
                alphabet: k,
                seed,
                palindrome,
                position,
            }
        }
        Kind::Morphism => {
            let sigma = k.max(1);
            let image = 2 * sigma as usize + 6;
            GenSpec::Morphism {
                source_length: (length / image).max(1),
                sigma,
                seed,
            }
        }
    };
    Ok(palstream::gen::generate(&spec)?)
}

struct CaseResult {
    summaries: Vec<EngineSummary>,
    first: Option<Violation>,
}

fn check_case(args: &VerifyArgs, trial: u32, configs: &[StreamConfig]) -> Result<CaseResult> {
    let text = case(args, trial)?;
    let symbols: Vec<u32> = text.iter().map(|&b| b as u32).collect();
    let fault = match args.inject_fault {
        Some(InjectFault::SkipLevel0) => Fault::SkipLevelZero,
        None => Fault::None,
    };
    let opt = match configs[0].parity {
        Parity::Doubled => prefix_longest(&symbols)?,
        Parity::EvenOnly => prefix_even_longest(&symbols)?,
    };
    let mut summaries = Vec::new();
    let mut first = None;
    for &cfg in configs {
        let mut stream = PalStream::with_fault(cfg, fault)?;
        let guarantee = stream.guarantee();
        let mut s = EngineSummary {
            engine: cfg.engine,
            checks: 0,
            violations: 0,
            worst_gap: 0,
            worst_ratio: 1.0,
        };
        for (i, &sym) in symbols.iter().enumerate() {
            let answer = stream.push(sym)?;
            let o = opt[i] as u64;
            s.checks += 1;
            s.worst_gap = s.worst_gap.max(o.saturating_sub(answer));
            if answer > 0 {
                s.worst_ratio = s.worst_ratio.max(o as f64 / answer as f64);
            }
            if answer > o || !guarantee.holds(o, answer) {
                s.violations += 1;
                first.get_or_insert(Violation {
                    engine: cfg.engine,
                    trial,
                    len: text.len(),
                    h: i + 1,
                    opt: o,
                    answer,
                });
            }
        }
        summaries.push(s);
    }
    Ok(CaseResult { summaries, first })
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    if args.max_len > PREFIX_GUARD {
        eprintln!(
            "error: --max-len {} exceeds the oracle limit {PREFIX_GUARD}",
            args.max_len
        );
        return Err(Exit(EXIT_USAGE).into());
    }
    if args.kind == Kind::Morphism && 2 * args.alphabet as usize + 6 > args.max_len {
        bail!("--max-len is shorter than one morphism image");
    }
    let configs = args
        .engines
        .kinds()
        .into_iter()
        .map(|k| args.mode.config_fitting(args.max_len as u64, k))
        .collect::<Result<Vec<_>>>()?;
    let results = (0..args.trials)
        .into_par_iter()
        .map(|t| check_case(args, t, &configs))
        .collect::<Result<Vec<_>>>()?;

    let mut totals: Vec<EngineSummary> = configs
        .iter()
        .map(|c| EngineSummary {
            engine: c.engine,
            checks: 0,
            violations: 0,
            worst_gap: 0,
            worst_ratio: 1.0,
        })
        .collect();
    let mut first = None;
    for r in results {
        for (t, s) in totals.iter_mut().zip(r.summaries) {
            t.checks += s.checks;
            t.violations += s.violations;
            t.worst_gap = t.worst_gap.max(s.worst_gap);
            t.worst_ratio = t.worst_ratio.max(s.worst_ratio);
        }
        if first.is_none() {
            first = r.first;
        }
    }
    let violations = totals.iter().map(|t| t.violations).sum();
    let report = VerifyReport {
        kind: format!("{:?}", args.kind).to_lowercase(),
        trials: args.trials,
        violations,
        engines: totals,
        first_violation: first,
    };
    println!("{}", serde_json::to_string(&report)?);
    for t in &report.engines {
        eprintln!(
            "{:?}: {} violations over {} prefix checks, worst gap {}, worst ratio {:.3}",
            t.engine, t.violations, t.checks, t.worst_gap, t.worst_ratio
        );
    }
    if violations > 0 {
        return Err(Exit(EXIT_VIOLATION).into());
    }
    Ok(())
}
