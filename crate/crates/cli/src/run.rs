//! `run` and `bench` subcommands.

use std::io::{self, BufWriter, Write};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use palstream::oracle::{manacher_longest, max_even_radius};
use palstream::{EngineKind, GenSpec, Guarantee, PalStream, Parity, Telemetry};
use serde::Serialize;

use crate::input::{self, Symbols, Tokens};
use crate::{Engines, ModeArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// One summary object per engine.
    Final,
    /// One line per input symbol with the current answer.
    PerChar,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = Engines::Compressed)]
    pub engine: Engines,
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Maximum input length. Without it the whole input is read first and its
    /// length is used; with it symbols are streamed and longer input is an error.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value_t = Emit::Final)]
    pub emit: Emit,
    /// Add memory counters and time spent in each engine to the summary.
    #[arg(long)]
    pub telemetry: bool,
    #[arg(long, value_enum, default_value_t = Tokens::Bytes)]
    pub tokens: Tokens,
    /// Also compute the exact answer offline (keeps the whole input).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Serialize)]
struct CharLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    engine: Option<EngineKind>,
    h: u64,
    answer: u64,
}

#[derive(Serialize)]
struct RunReport {
    n: u64,
    consumed: u64,
    mode: palstream::ApproxMode,
    engine: EngineKind,
    parity: Parity,
    answer: u64,
    guarantee: Guarantee,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    telemetry: Option<RunTelemetry>,
}

#[derive(Serialize)]
struct RunTelemetry {
    /// Time spent inside the engine.
    engine_ms: f64,
    peak_aux_words: usize,
    peak_landmark_words: usize,
    peak_total_words: usize,
    runs: u64,
    fallbacks: u64,
}

impl RunTelemetry {
    fn new(t: &Telemetry, engine_ms: f64) -> RunTelemetry {
        RunTelemetry {
            engine_ms,
            peak_aux_words: t.peak_aux_words,
            peak_landmark_words: t.peak_landmark_words,
            peak_total_words: t.peak_total_words,
            runs: t.runs,
            fallbacks: t.fallbacks,
        }
    }
}

/// Exact answer for the whole input under the chosen parity.
pub fn exact_answer(symbols: &[u32], parity: Parity) -> u64 {
    match parity {
        Parity::Doubled => manacher_longest(symbols) as u64,
        Parity::EvenOnly => 2 * max_even_radius(symbols) as u64,
    }
}

pub fn run(args: &RunArgs) -> Result<()> {
    let mut symbols = Symbols::new(input::open(&args.input)?, args.tokens);
    let kinds = args.engine.kinds();
    let (configs, mut buffered) = match args.n {
        Some(n) => {
            let configs = kinds
                .iter()
                .map(|&k| args.mode.config(n, k))
                .collect::<Result<Vec<_>>>()?;
            (configs, None)
        }
        None => {
            let all = std::mem::replace(
                &mut symbols,
                Symbols::new(Box::new(io::empty()), args.tokens),
            )
            .collect_all()?;
            let len = all.len() as u64;
            let configs = kinds
                .iter()
                .map(|&k| args.mode.config_fitting(len, k))
                .collect::<Result<Vec<_>>>()?;
            (configs, Some(all.into_iter()))
        }
    };
    let n = configs[0].n;
    let mut streams = configs
        .into_iter()
        .map(|cfg| PalStream::new(cfg).context("building engine"))
        .collect::<Result<Vec<_>>>()?;
    let tag = kinds.len() > 1;
    let mut kept = Vec::new();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut elapsed = vec![0.0f64; streams.len()];
    loop {
        let next = match buffered.as_mut() {
            Some(it) => it.next(),
            None => symbols.next_symbol()?,
        };
        let Some(sym) = next else { break };
        if streams[0].consumed() >= n {
            anyhow::bail!("input is longer than --n {n}");
        }
        if args.exact {
            kept.push(sym);
        }
        for ((s, &kind), spent) in streams.iter_mut().zip(&kinds).zip(&mut elapsed) {
            let answer = if args.telemetry {
                let start = Instant::now();
                let a = s.push(sym)?;
                *spent += start.elapsed().as_secs_f64();
                a
            } else {
                s.push(sym)?
            };
            if args.emit == Emit::PerChar {
                let line = CharLine {
                    engine: tag.then_some(kind),
                    h: s.consumed(),
                    answer,
                };
                serde_json::to_writer(&mut out, &line)?;
                out.write_all(b"\n")?;
            }
        }
    }
    if args.emit == Emit::Final {
        let parity = streams[0].config().parity;
        let opt = args.exact.then(|| exact_answer(&kept, parity));
        for ((s, &kind), spent) in streams.iter().zip(&kinds).zip(&elapsed) {
            let report = RunReport {
                n,
                consumed: s.consumed(),
                mode: s.config().mode,
                engine: kind,
                parity,
                answer: s.answer(),
                guarantee: s.guarantee(),
                opt,
                telemetry: args
                    .telemetry
                    .then(|| RunTelemetry::new(&s.telemetry(), spent * 1e3)),
            };
            serde_json::to_writer(&mut out, &report)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = Engines::Both)]
    pub engine: Engines,
    /// Generator as JSON, as for `gen`.
    #[arg(
        long,
        default_value = r#"{"kind":"random","length":65536,"alphabet":2,"seed":0}"#
    )]
    pub spec: String,
    /// Repetitions per engine; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: u32,
}

#[derive(Serialize)]
struct BenchReport {
    engine: EngineKind,
    n: u64,
    answer: u64,
    best_ms: f64,
    ns_per_symbol: f64,
    peak_total_words: usize,
    runs: u64,
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let spec: GenSpec = serde_json::from_str(&args.spec).context("parsing --spec")?;
    let text = palstream::gen::generate(&spec)?;
    let n = text.len() as u64;
    let mut out = io::stdout().lock();
    for kind in args.engine.kinds() {
        let cfg = args.mode.config(n, kind)?;
        let mut best = f64::INFINITY;
        let mut last = None;
        for _ in 0..args.reps.max(1) {
            let start = Instant::now();
            let mut s = PalStream::new(cfg)?;
            s.extend(text.iter().map(|&b| b as u32), |_, _| {})?;
            best = best.min(start.elapsed().as_secs_f64());
            last = Some(s);
        }
        let s = last.expect("at least one repetition");
        let t = s.telemetry();
        let report = BenchReport {
            engine: kind,
            n,
            answer: s.answer(),
            best_ms: best * 1e3,
            ns_per_symbol: if n == 0 { 0.0 } else { best * 1e9 / n as f64 },
            peak_total_words: t.peak_total_words,
            runs: t.runs,
        };
        serde_json::to_writer(&mut out, &report)?;
        writeln!(out)?;
    }
    Ok(())
}
