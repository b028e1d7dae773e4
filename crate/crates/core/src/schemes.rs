//! Translate an error target into landmark levels.
//!
//! All quantities here are in engine units: `n` is the number of characters
//! the engine consumes and errors apply to the even radius it reports.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::landmarks::{LevelConfig, Window};

/// Window size of every bounded level below the top in additive mode, and the
/// floor for multiplicative mode.
pub const BASE_WINDOW: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApproxMode {
    Additive {
        error: u64,
    },
    Multiplicative {
        eps: f64,
    },
    /// One landmark per level at spacing powers of `2^k`; basic engine only.
    Sparse {
        eps: f64,
    },
}

/// The bound an engine promises on every prefix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guarantee {
    /// `opt - answer <= slack`.
    Additive { slack: u64 },
    /// `opt * den <= answer * num`.
    Ratio { num: u64, den: u64 },
    /// `opt <= factor * answer`, claimed but not proven.
    Factor { factor: f64 },
}

impl Guarantee {
    /// Whether `answer` satisfies the promised bound against the exact `opt`
    /// (soundness, `answer <= opt`, is checked separately).
    pub fn holds(&self, opt: u64, answer: u64) -> bool {
        match *self {
            Guarantee::Additive { slack } => opt <= answer + slack,
            Guarantee::Ratio { num, den } => {
                opt == 0 || opt as u128 * den as u128 <= answer as u128 * num as u128
            }
            Guarantee::Factor { factor } => opt == 0 || opt as f64 <= factor * answer as f64 + 1e-9,
        }
    }

    pub fn ratio(&self) -> Option<f64> {
        match *self {
            Guarantee::Additive { .. } => None,
            Guarantee::Ratio { num, den } => Some(num as f64 / den as f64),
            Guarantee::Factor { factor } => Some(factor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeConfig {
    /// Levels without ghost windows; engines that need ghosts extend them.
    pub levels: Vec<LevelConfig>,
    pub top: u32,
    pub guarantee: Guarantee,
}

impl SchemeConfig {
    pub fn for_mode(mode: ApproxMode, n: u64) -> Result<SchemeConfig> {
        match mode {
            ApproxMode::Additive { error } => additive_config(n, error),
            ApproxMode::Multiplicative { eps } => multiplicative_config(n, eps),
            ApproxMode::Sparse { eps } => sparse_config(n, eps),
        }
    }

    /// Window of the lowest level, or `None` if it is unbounded.
    pub fn base_window(&self) -> Option<u64> {
        match self.levels[0].b {
            Window::Bounded(b) => Some(b),
            Window::Unbounded => None,
        }
    }

    /// Whether every level exists from 0 to the top and bounded windows are at
    /// least [`BASE_WINDOW`], as the compressed engine requires.
    pub fn supports_compression(&self) -> bool {
        self.levels.iter().enumerate().all(|(i, l)| {
            l.lambda as usize == i
                && match l.b {
                    Window::Bounded(b) => b >= BASE_WINDOW,
                    Window::Unbounded => true,
                }
        })
    }
}

pub fn guarantee_of(cfg: &SchemeConfig) -> Guarantee {
    cfg.guarantee
}

/// Levels `0..L` with `L = floor(log2 E)`: twelve landmarks below the top and
/// every multiple of `2^L` on the top.
pub fn additive_config(n: u64, error: u64) -> Result<SchemeConfig> {
    if error == 0 || error > n.max(1) {
        return Err(Error::AdditiveOutOfRange { error, n });
    }
    let top = 63 - error.leading_zeros();
    let mut levels: Vec<LevelConfig> = (0..top)
        .map(|l| LevelConfig::without_ghosts(l, Window::Bounded(BASE_WINDOW)))
        .collect();
    levels.push(LevelConfig::without_ghosts(top, Window::Unbounded));
    Ok(SchemeConfig {
        levels,
        top,
        guarantee: Guarantee::Additive { slack: 1 << top },
    })
}

/// Smallest `D >= 12` with `(D - 1) / (D - 5) <= 1 + eps`.
pub fn window_for_eps(eps: f64) -> u64 {
    let eps = eps.min(1.0);
    let fits = |d: u64| (d - 1) as f64 <= (1.0 + eps) * (d - 5) as f64 * (1.0 + 1e-12);
    let mut d = ((5.0 + 4.0 / eps).ceil() as u64).max(BASE_WINDOW);
    while d > BASE_WINDOW && fits(d - 1) {
        d -= 1;
    }
    while !fits(d) {
        d += 1;
    }
    d
}

/// Uniform window `D` on levels `0..L` where `L` is the least level whose
/// `D - 1` spacings reach back over the whole stream.
pub fn multiplicative_config(n: u64, eps: f64) -> Result<SchemeConfig> {
    let n = n.max(1);
    let min = 2.0 / n as f64;
    if eps.is_nan() || eps < min {
        return Err(Error::EpsTooSmall { eps, min, n });
    }
    let d = window_for_eps(eps);
    let mut top = 0;
    while (d - 1) << top < n {
        top += 1;
    }
    let levels = (0..=top)
        .map(|l| LevelConfig::without_ghosts(l, Window::Bounded(d)))
        .collect();
    Ok(SchemeConfig {
        levels,
        top,
        guarantee: Guarantee::Ratio {
            num: d - 1,
            den: d - 5,
        },
    })
}

/// A single landmark on each level `k, 2k, 3k, ...` with `k = floor(log2(1 + eps))`.
pub fn sparse_config(n: u64, eps: f64) -> Result<SchemeConfig> {
    if eps.is_nan() || eps < 1.0 {
        return Err(Error::SparseEpsTooSmall(eps));
    }
    let n = n.max(2);
    let k = ((1.0 + eps).log2().floor() as u32).clamp(1, 62);
    let log_n = 63 - n.leading_zeros();
    let count = (log_n / k).max(1);
    let levels: Vec<LevelConfig> = (1..=count)
        .map(|i| LevelConfig::without_ghosts((k * i).min(62), Window::Bounded(1)))
        .collect();
    let top = levels.last().expect("at least one level").lambda;
    Ok(SchemeConfig {
        levels,
        top,
        guarantee: Guarantee::Factor { factor: 1.0 + eps },
    })
}
