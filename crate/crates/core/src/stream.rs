//! User-facing stream: symbols in, approximate longest-palindrome lengths out.
//!
//! By default every symbol is fed to the engine twice so that odd and even
//! palindromes are both found as even ones; the engine's radius is then the
//! palindrome length. With [`Parity::EvenOnly`] symbols are fed once and only
//! even palindromes are reported (as twice the radius).

use serde::{Deserialize, Serialize};

use crate::basic::BasicEngine;
use crate::compressed::CompressedEngine;
use crate::engine::{Engine, Fault, Telemetry};
use crate::error::{Error, Result};
use crate::modhash::{symbol_code, HashParams};
use crate::schemes::{ApproxMode, Guarantee, SchemeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    #[default]
    Doubled,
    EvenOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineKind {
    Basic,
    Compressed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StreamConfig {
    /// Error target in units of palindrome length of the input.
    pub mode: ApproxMode,
    /// Maximum number of input symbols.
    pub n: u64,
    pub seed: u64,
    pub parity: Parity,
    pub engine: EngineKind,
}

impl StreamConfig {
    pub fn new(mode: ApproxMode, n: u64, engine: EngineKind) -> StreamConfig {
        StreamConfig {
            mode,
            n,
            seed: 0,
            parity: Parity::Doubled,
            engine,
        }
    }

    pub fn seed(mut self, seed: u64) -> StreamConfig {
        self.seed = seed;
        self
    }

    pub fn parity(mut self, parity: Parity) -> StreamConfig {
        self.parity = parity;
        self
    }

    fn internal_len(&self) -> u64 {
        match self.parity {
            Parity::Doubled => 2 * self.n.max(1),
            Parity::EvenOnly => self.n.max(1),
        }
    }

    /// The same target expressed on engine radii.
    fn internal_mode(&self) -> ApproxMode {
        match (self.mode, self.parity) {
            (ApproxMode::Additive { error }, Parity::EvenOnly) => ApproxMode::Additive {
                error: (error / 2).max(1),
            },
            (mode, _) => mode,
        }
    }

    /// Landmark layout the engine will use.
    pub fn scheme(&self) -> Result<SchemeConfig> {
        if let ApproxMode::Additive { error } = self.mode {
            if error == 0 || error > self.n.max(1) {
                return Err(Error::AdditiveOutOfRange { error, n: self.n });
            }
        }
        let mut mode = self.internal_mode();
        if let (ApproxMode::Multiplicative { eps }, EngineKind::Compressed) = (mode, self.engine) {
            mode = ApproxMode::Multiplicative { eps: eps.min(1.0) };
        }
        if let (ApproxMode::Sparse { .. }, EngineKind::Compressed) = (mode, self.engine) {
            return Err(Error::InvalidEngine(
                "the sparse layout is only available to the basic engine".into(),
            ));
        }
        match mode {
            ApproxMode::Multiplicative { eps } if eps < 2.0 / self.n.max(1) as f64 => {
                Err(Error::EpsTooSmall {
                    eps,
                    min: 2.0 / self.n.max(1) as f64,
                    n: self.n,
                })
            }
            _ => SchemeConfig::for_mode(mode, self.internal_len()),
        }
    }

    /// Bound on reported lengths against the exact answer.
    pub fn guarantee(&self) -> Result<Guarantee> {
        let g = self.scheme()?.guarantee;
        Ok(match (g, self.parity) {
            (Guarantee::Additive { slack }, Parity::EvenOnly) => {
                Guarantee::Additive { slack: 2 * slack }
            }
            (g, _) => g,
        })
    }
}

pub struct PalStream {
    engine: Box<dyn Engine + Send>,
    config: StreamConfig,
    guarantee: Guarantee,
    consumed: u64,
}

impl std::fmt::Debug for PalStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PalStream")
            .field("config", &self.config)
            .field("consumed", &self.consumed)
            .finish()
    }
}

impl PalStream {
    pub fn new(config: StreamConfig) -> Result<PalStream> {
        PalStream::with_fault(config, Fault::None)
    }

    #[doc(hidden)]
    pub fn with_fault(config: StreamConfig, fault: Fault) -> Result<PalStream> {
        let scheme = config.scheme()?;
        let guarantee = config.guarantee()?;
        let cap = config.internal_len();
        let params = HashParams::new(cap, config.seed);
        let engine: Box<dyn Engine + Send> = match config.engine {
            EngineKind::Basic => Box::new(BasicEngine::new(scheme, cap, params)?.with_fault(fault)),
            EngineKind::Compressed => {
                Box::new(CompressedEngine::new(scheme, cap, params)?.with_fault(fault))
            }
        };
        Ok(PalStream {
            engine,
            config,
            guarantee,
            consumed: 0,
        })
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn guarantee(&self) -> Guarantee {
        self.guarantee
    }

    /// Feed one symbol and return the current answer.
    pub fn push(&mut self, symbol: u32) -> Result<u64> {
        if self.consumed >= self.config.n {
            return Err(Error::StreamOverflow {
                capacity: self.config.n,
            });
        }
        self.consumed += 1;
        let code = symbol_code(symbol);
        match self.config.parity {
            Parity::Doubled => {
                self.engine.push_code(code)?;
                self.engine.push_code(code)
            }
            Parity::EvenOnly => self.engine.push_code(code).map(|r| 2 * r),
        }
    }

    /// Feed every symbol, calling `each` with the 1-based index and answer.
    pub fn extend<I: IntoIterator<Item = u32>>(
        &mut self,
        symbols: I,
        mut each: impl FnMut(u64, u64),
    ) -> Result<u64> {
        let mut last = self.answer();
        for s in symbols {
            last = self.push(s)?;
            each(self.consumed, last);
        }
        Ok(last)
    }

    pub fn answer(&self) -> u64 {
        match self.config.parity {
            Parity::Doubled => self.engine.best(),
            Parity::EvenOnly => 2 * self.engine.best(),
        }
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn telemetry(&self) -> Telemetry {
        self.engine.telemetry()
    }
}

/// Answers after every symbol of `text` (bytes as symbols).
pub fn answers(config: StreamConfig, text: &[u8]) -> Result<Vec<u64>> {
    let mut stream = PalStream::new(config)?;
    let mut out = Vec::with_capacity(text.len());
    stream.extend(text.iter().map(|&b| b as u32), |_, a| out.push(a))?;
    Ok(out)
}
