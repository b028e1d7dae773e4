//! Per-level windows of recent prefix fingerprints.
//!
//! Level `λ` remembers `Φ(T[1..i])` for the most recent multiples `i` of
//! `2^λ`. A bounded level keeps `b` of them for palindrome checks and an
//! extended ghost window of `f` for period queries only.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modhash::{Fingerprint, HashParams, FINGERPRINT_WORDS};

/// Window length of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Window {
    Bounded(u64),
    Unbounded,
}

impl Window {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, Window::Unbounded)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelConfig {
    pub lambda: u32,
    pub b: Window,
    pub f: Window,
}

impl LevelConfig {
    /// Level with the ghost window four times the regular one.
    pub fn with_ghosts(lambda: u32, b: Window) -> LevelConfig {
        let f = match b {
            Window::Bounded(b) => Window::Bounded(4 * b),
            Window::Unbounded => Window::Unbounded,
        };
        LevelConfig { lambda, b, f }
    }

    pub fn without_ghosts(lambda: u32, b: Window) -> LevelConfig {
        LevelConfig { lambda, b, f: b }
    }
}

#[derive(Debug, Clone)]
struct Level {
    cfg: LevelConfig,
    /// Fingerprints of positions `2^λ·j` for `j = first_j, first_j + 1, ...`.
    ring: VecDeque<Fingerprint>,
    first_j: u64,
    peak: usize,
}

#[derive(Debug, Clone)]
pub struct LandmarkStore {
    params: HashParams,
    levels: Vec<Level>,
    /// `by_exponent[v]` = index into `levels` of the largest level `<= v`.
    by_exponent: [Option<u8>; 65],
    h: u64,
    prefix: Fingerprint,
}

/// Per-level entry counts for telemetry.
#[derive(Debug, Clone, Serialize)]
pub struct LevelUsage {
    pub lambda: u32,
    pub entries: usize,
    pub peak: usize,
}

impl LandmarkStore {
    pub fn new(cfg: &[LevelConfig], params: HashParams) -> Result<LandmarkStore> {
        if cfg.is_empty() {
            return Err(Error::EmptyLevels);
        }
        let mut sorted = cfg.to_vec();
        sorted.sort_by_key(|c| c.lambda);
        for pair in sorted.windows(2) {
            if pair[0].lambda == pair[1].lambda {
                return Err(Error::InvalidParams(format!(
                    "level {} configured twice",
                    pair[0].lambda
                )));
            }
            // Lookups only consult the deepest level dividing a position, which
            // is sound only if windows do not shrink going up.
            if window_len(pair[0].b) > window_len(pair[1].b)
                || window_len(pair[0].f) > window_len(pair[1].f)
            {
                return Err(Error::InvalidParams(
                    "window sizes must be nondecreasing in the level".into(),
                ));
            }
        }
        for c in &sorted {
            if c.lambda > 62 {
                return Err(Error::InvalidParams(format!(
                    "level {} too large",
                    c.lambda
                )));
            }
            if window_len(c.b) == 0 || window_len(c.f) < window_len(c.b) {
                return Err(Error::InvalidParams(format!(
                    "level {} needs 1 <= b <= f",
                    c.lambda
                )));
            }
        }
        let mut by_exponent = [None; 65];
        let mut idx = None;
        let mut next = 0;
        for (v, slot) in by_exponent.iter_mut().enumerate() {
            if next < sorted.len() && sorted[next].lambda as usize == v {
                idx = Some(next as u8);
                next += 1;
            }
            *slot = idx;
        }
        let levels = sorted
            .into_iter()
            .map(|cfg| Level {
                cfg,
                ring: VecDeque::from([Fingerprint::EMPTY]),
                first_j: 0,
                peak: 1,
            })
            .collect();
        Ok(LandmarkStore {
            params,
            levels,
            by_exponent,
            h: 0,
            prefix: Fingerprint::EMPTY,
        })
    }

    pub fn params(&self) -> &HashParams {
        &self.params
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn prefix_fp(&self) -> &Fingerprint {
        &self.prefix
    }

    pub fn levels(&self) -> impl Iterator<Item = &LevelConfig> + '_ {
        self.levels.iter().map(|l| &l.cfg)
    }

    pub fn top_level(&self) -> u32 {
        self.levels.last().expect("nonempty").cfg.lambda
    }

    /// Consume one field element.
    pub fn advance(&mut self, code: u64) {
        self.prefix = self.params.append(&self.prefix, code);
        self.h += 1;
        let tz = self.h.trailing_zeros();
        for level in &mut self.levels {
            if level.cfg.lambda > tz {
                break;
            }
            level.ring.push_back(self.prefix);
            if let Window::Bounded(f) = level.cfg.f {
                if level.ring.len() as u64 > f {
                    level.ring.pop_front();
                    level.first_j += 1;
                }
            }
            level.peak = level.peak.max(level.ring.len());
        }
    }

    /// Level whose window decides whether `y` is retained; `None` if no
    /// configured level divides `y`.
    pub fn classify_level(&self, y: u64) -> Option<u32> {
        let v = if y == 0 {
            64
        } else {
            y.trailing_zeros() as usize
        };
        self.by_exponent[v].map(|i| self.levels[i as usize].cfg.lambda)
    }

    fn level_index(&self, y: u64) -> Option<usize> {
        let v = if y == 0 {
            64
        } else {
            y.trailing_zeros() as usize
        };
        self.by_exponent[v].map(|i| i as usize)
    }

    /// `Φ(T[1..y])` if `y` is retained in the regular (`ghost = false`) or
    /// ghost window of its level. Position 0 and the current position are
    /// always available.
    #[inline]
    pub fn lookup(&self, y: u64, ghost: bool) -> Option<Fingerprint> {
        if y == 0 {
            return Some(Fingerprint::EMPTY);
        }
        if y >= self.h {
            return (y == self.h).then_some(self.prefix);
        }
        let level = &self.levels[self.level_index(y)?];
        let lambda = level.cfg.lambda;
        let j = y >> lambda;
        let newest = self.h >> lambda;
        let window = if ghost { level.cfg.f } else { level.cfg.b };
        if let Window::Bounded(w) = window {
            if newest - j >= w {
                return None;
            }
        }
        if j < level.first_j {
            return None;
        }
        level.ring.get((j - level.first_j) as usize).copied()
    }

    /// `Φ(T[t+1..t2])` when both endpoints are retrievable.
    pub fn range_fp(&self, t: u64, t2: u64, ghost: bool) -> Result<Option<Fingerprint>> {
        if t > t2 {
            return Err(Error::InvertedRange { start: t, end: t2 });
        }
        Ok(self.range_unchecked(t, t2, ghost))
    }

    #[inline]
    pub(crate) fn range_unchecked(&self, t: u64, t2: u64, ghost: bool) -> Option<Fingerprint> {
        let a = self.lookup(t, ghost)?;
        let b = self.lookup(t2, ghost)?;
        self.params.erase_prefix(&b, &a).ok()
    }

    /// Whether `q` is a period of `T[a+1..b2]`, if the four fingerprints
    /// needed are retrievable.
    pub fn is_period_over(&self, a: u64, b2: u64, q: u64, ghost: bool) -> Result<Option<bool>> {
        if q == 0 {
            return Err(Error::ZeroPeriod);
        }
        if a + q > b2 {
            return Err(Error::InvertedRange {
                start: a + q,
                end: b2,
            });
        }
        Ok(self.period_unchecked(a, b2, q, ghost))
    }

    #[inline]
    pub(crate) fn period_unchecked(&self, a: u64, b2: u64, q: u64, ghost: bool) -> Option<bool> {
        let left = self.range_unchecked(a, b2 - q, ghost)?;
        let right = self.range_unchecked(a + q, b2, ghost)?;
        Some(left.same_string(&right))
    }

    /// Smallest position of the regular window of level `lambda`
    /// (0 for an unbounded level). Positions below it are absent on this level.
    pub fn window_floor(&self, lambda: u32, ghost: bool) -> u64 {
        let level = match self.levels.get(lambda as usize) {
            Some(l) if l.cfg.lambda == lambda => l,
            _ => match self.levels.iter().find(|l| l.cfg.lambda == lambda) {
                Some(l) => l,
                None => return u64::MAX,
            },
        };
        let window = if ghost { level.cfg.f } else { level.cfg.b };
        match window {
            Window::Unbounded => 0,
            Window::Bounded(w) => {
                let newest = self.h >> lambda;
                (newest + 1).saturating_sub(w) << lambda
            }
        }
    }

    /// Regular-window landmarks `y <= limit` whose deciding level is exactly
    /// the one they are enumerated under, each reported once, position 0 last.
    pub fn for_each_landmark(&self, limit: u64, mut visit: impl FnMut(u64)) {
        for (idx, level) in self.levels.iter().enumerate() {
            let lambda = level.cfg.lambda;
            let step = 1u64 << lambda;
            let floor = self.window_floor(lambda, false).max(step);
            let mut y = (limit >> lambda) << lambda;
            while y >= floor {
                if self.level_index(y) == Some(idx) {
                    visit(y);
                }
                y -= step;
            }
        }
        visit(0);
    }

    pub fn entries(&self) -> usize {
        self.levels.iter().map(|l| l.ring.len()).sum()
    }

    /// Storage in machine words: fingerprints plus per-level bookkeeping.
    pub fn words(&self) -> usize {
        self.entries() * FINGERPRINT_WORDS + self.levels.len() * 4 + FINGERPRINT_WORDS + 1
    }

    pub fn usage(&self) -> Vec<LevelUsage> {
        self.levels
            .iter()
            .map(|l| LevelUsage {
                lambda: l.cfg.lambda,
                entries: l.ring.len(),
                peak: l.peak,
            })
            .collect()
    }
}

fn window_len(w: Window) -> u64 {
    match w {
        Window::Bounded(b) => b,
        Window::Unbounded => u64::MAX,
    }
}
