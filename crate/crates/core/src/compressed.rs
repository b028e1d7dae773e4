//! Space-efficient engine: candidate centers are grouped by segment and
//! described either explicitly or as a periodic progression, and only a
//! bounded number of progression members are checked per landmark level.

use crate::engine::{run_process, Engine, Fault, RunOutcome, Telemetry};
use crate::error::{Error, Result};
use crate::landmarks::{LandmarkStore, LevelConfig};
use crate::modhash::HashParams;
use crate::partition::Partition;
use crate::schemes::SchemeConfig;
use crate::segments::{
    buffer_touch, merge_adjacent, Candidate, DenseDesc, Desc, LevelCache, RunBounds, Segment,
    BUFFER_CAP,
};

/// Members of a progression checked beyond the bracket around the run start.
const LEADING_MEMBERS: u64 = BUFFER_CAP as u64;

/// Centers `base + t·step`, `t >= 0`, whose mirror positions are multiples of
/// `2^level` at the position they were computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueFamily {
    pub level: u32,
    /// Smallest solution of `α·p ≡ h + 2 - 2c (mod 2^λ)`.
    pub alpha0: u64,
    pub base: u64,
    /// Half of `lcm(2^λ, p)`.
    pub step: u64,
}

/// Inverse of odd `q` modulo `2^bits`.
pub fn odd_inverse(q: u64, bits: u32) -> u64 {
    debug_assert!(q % 2 == 1);
    let mut x = q;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(x)));
    }
    mask(x, bits)
}

fn mask(x: u64, bits: u32) -> u64 {
    if bits >= 64 {
        x
    } else {
        x & ((1u64 << bits) - 1)
    }
}

/// The progression members of `anchor + α·period/2` whose mirror position at
/// the current length `h` is a multiple of `2^level`, or `None` if none is.
pub fn residue_bases(anchor: u64, period: u64, level: u32, h: u64) -> Option<ResidueFamily> {
    let g_shift = period.trailing_zeros().min(level);
    let inv = odd_inverse_for(period, level);
    residue_with(anchor, period, level, g_shift, inv, h)
}

fn odd_inverse_for(period: u64, level: u32) -> u64 {
    let g_shift = period.trailing_zeros().min(level);
    odd_inverse((period >> g_shift) | 1, level - g_shift)
}

fn residue_with(
    anchor: u64,
    period: u64,
    level: u32,
    g_shift: u32,
    inv: u64,
    h: u64,
) -> Option<ResidueFamily> {
    // Two's complement keeps `& (2^k - 1)` and `>>` equal to Euclidean
    // remainder and floor division by powers of two.
    let diff = (h as i64 + 2).wrapping_sub(2 * anchor as i64);
    if diff & ((1i64 << g_shift) - 1) != 0 {
        return None;
    }
    let bits = level - g_shift;
    let q = mask((diff >> g_shift) as u64, bits);
    let alpha0 = mask(q.wrapping_mul(inv), bits);
    let step = (period >> g_shift) << level >> 1;
    Some(ResidueFamily {
        level,
        alpha0,
        base: anchor + alpha0 * (period / 2),
        step,
    })
}

/// Landmark levels that can serve a segment of length `2^exponent` during its
/// lifetime, for a scheme whose bounded windows all have the base size.
pub fn associated_levels(exponent: u32, scheme: &SchemeConfig) -> Vec<u32> {
    let Some(b0) = scheme.base_window() else {
        return vec![scheme.top];
    };
    let lo = 6i128 * (1i128 << exponent) - 3;
    let hi = 40i128 * (1i128 << exponent) - 18;
    let mut out: Vec<u32> = (0..scheme.top)
        .filter(|&l| {
            let w = b0 as i128 * (1i128 << l);
            w >= lo && w <= hi
        })
        .collect();
    let top_unbounded = scheme.levels.last().is_some_and(|l| l.b.is_unbounded());
    if top_unbounded || scheme.top == 0 || (b0 as i128) * (1i128 << (scheme.top - 1)) <= hi {
        out.push(scheme.top);
    }
    out
}

/// Count `r` of copies of the block `T[i..i+blen-1]` starting at `i`, up to
/// one short of the truth; exact when `i - 1` is a multiple of `2^level`.
/// Requires the block to repeat at least twice and `2^level | blen`.
pub fn extend_right(store: &LandmarkStore, i: u64, blen: u64, level: u32) -> Result<u64> {
    let a = 1u64 << level;
    if i == 0 || blen == 0 || !blen.is_multiple_of(a) {
        return Err(Error::ExtensionPrecondition(
            "block length must be a positive multiple of 2^level",
        ));
    }
    let h = store.h();
    let x = align_up(i - 1, a);
    let off = if x == i - 1 { 0 } else { a };
    let end = |k: u64| (x + k * blen).checked_sub(off);
    let holds = |k: u64| -> Option<bool> {
        let y = end(k)?;
        if y > h || y < x + blen {
            return Some(y <= h && k <= 2);
        }
        store.period_unchecked(x, y, blen, true)
    };
    if i - 1 + 2 * blen > h || holds(2) != Some(true) {
        return Err(Error::ExtensionPrecondition("block does not repeat twice"));
    }
    let mut lo = 2;
    let mut hi = 4;
    loop {
        match end(hi) {
            Some(y) if y <= h && holds(hi) == Some(true) => {
                lo = hi;
                hi *= 2;
            }
            _ => break,
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if end(mid).is_some_and(|y| y <= h) && holds(mid) == Some(true) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if off == 0 { lo } else { (lo - 1).max(2) })
}

/// Count `l` of copies of the block `T[i..i+blen-1]` directly to the left of
/// `i`, up to one short of the truth or capped where ghost landmarks end.
pub fn extend_left(store: &LandmarkStore, i: u64, blen: u64, level: u32) -> Result<u64> {
    let a = 1u64 << level;
    if i == 0 || blen == 0 || !blen.is_multiple_of(a) {
        return Err(Error::ExtensionPrecondition(
            "block length must be a positive multiple of 2^level",
        ));
    }
    let h = store.h();
    if i - 1 + 2 * blen > h {
        return Err(Error::ExtensionPrecondition("block does not repeat twice"));
    }
    let x = align_up(i - 1, a);
    let off = if x == i - 1 { 0 } else { a };
    let y = align_down(i - 1 + 2 * blen, a);
    if y >= x + blen && store.period_unchecked(x, y, blen, true) != Some(true) {
        return Err(Error::ExtensionPrecondition("block does not repeat twice"));
    }
    let floor = store.window_floor(level, true);
    let start = |k: u64| x.checked_sub(k * blen).filter(|&s| s >= floor);
    let holds =
        |k: u64| start(k).and_then(|s| store.period_unchecked(s, y, blen, true)) == Some(true);
    let mut lo = 0;
    let mut hi = 1;
    while holds(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if off == 0 { lo } else { lo.saturating_sub(1) })
}

/// Up to five leading members per repetition-count hypothesis: for
/// `(l', r')` in `{l, l+1} × {r, r+1}` and the single-block case, centers
/// `base + (max(⌈(l'+r')/2⌉ - l' + 1, 0) + x)·step`, `x = 0..4`, within
/// `[lo, hi]`.
pub fn select_candidates(fam: &ResidueFamily, l: u64, r: u64, lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(25);
    let hypotheses = [(l, r), (l + 1, r), (l, r + 1), (l + 1, r + 1), (0, 0)];
    for (lp, rp) in hypotheses {
        let first = ((lp + rp).div_ceil(2) + 1).saturating_sub(lp);
        for x in 0..5 {
            let c = fam.base + (first + x) * fam.step;
            if c >= lo && c <= hi {
                out.push(c);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn align_up(v: u64, a: u64) -> u64 {
    v.div_ceil(a) * a
}

fn align_down(v: u64, a: u64) -> u64 {
    v / a * a
}

#[derive(Debug, Default)]
struct StepCtx {
    best: u64,
    runs: u64,
    fallbacks: u64,
    candidates: Vec<u64>,
    fault: Fault,
}

#[derive(Debug, Clone)]
pub struct CompressedEngine {
    scheme: SchemeConfig,
    store: LandmarkStore,
    part: Partition<Segment>,
    capacity: u64,
    best: u64,
    runs: u64,
    fallbacks: u64,
    aux_words: usize,
    peak_aux: usize,
    peak_landmark: usize,
    peak_total: usize,
    fault: Fault,
}

impl CompressedEngine {
    pub fn new(
        scheme: SchemeConfig,
        capacity: u64,
        params: HashParams,
    ) -> Result<CompressedEngine> {
        if !scheme.supports_compression() {
            return Err(Error::InvalidEngine(
                "the compressed engine needs levels 0..=L with windows of at least 12".into(),
            ));
        }
        let levels: Vec<LevelConfig> = scheme
            .levels
            .iter()
            .map(|l| LevelConfig::with_ghosts(l.lambda, l.b))
            .collect();
        let store = LandmarkStore::new(&levels, params)?;
        let landmark = store.words();
        Ok(CompressedEngine {
            scheme,
            store,
            part: Partition::new(),
            capacity,
            best: 0,
            runs: 0,
            fallbacks: 0,
            aux_words: 0,
            peak_aux: 0,
            peak_landmark: landmark,
            peak_total: landmark,
            fault: Fault::None,
        })
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Fault) -> CompressedEngine {
        self.fault = fault;
        self
    }

    pub fn scheme(&self) -> &SchemeConfig {
        &self.scheme
    }

    pub fn store(&self) -> &LandmarkStore {
        &self.store
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> + '_ {
        self.part.iter().map(|(_, s)| s)
    }

    pub fn partition(&self) -> &Partition<Segment> {
        &self.part
    }

    /// Words held outside the landmark store.
    pub fn aux_words(&self) -> usize {
        self.aux_words
    }
}

impl Engine for CompressedEngine {
    fn push_code(&mut self, code: u64) -> Result<u64> {
        if self.store.h() >= self.capacity {
            return Err(Error::StreamOverflow {
                capacity: self.capacity,
            });
        }
        self.store.advance(code);
        let h = self.store.h();
        self.part
            .advance(Segment::unit(h), |_, l, r| merge_adjacent(l, r));

        let mut ctx = StepCtx {
            best: self.best,
            fault: self.fault,
            ..StepCtx::default()
        };
        let store = &self.store;
        let mut aux = 2 * self.part.run_entries() + 2 * self.part.counts().len() + 8;
        for (_, seg) in self.part.iter_mut() {
            let (start, end, exponent) = (seg.start, seg.end(), seg.exponent);
            match &mut seg.desc {
                Desc::Sparse(s) => process_sparse(store, &mut s.centers, &mut ctx),
                Desc::Dense(d) => process_dense(store, start, end, exponent, d, &mut ctx),
            }
            aux += seg.words();
        }
        self.best = ctx.best;
        self.runs += ctx.runs;
        self.fallbacks += ctx.fallbacks;
        self.aux_words = aux;
        let landmark = self.store.words();
        self.peak_aux = self.peak_aux.max(aux);
        self.peak_landmark = self.peak_landmark.max(landmark);
        self.peak_total = self.peak_total.max(aux + landmark);
        Ok(self.best)
    }

    fn best(&self) -> u64 {
        self.best
    }

    fn h(&self) -> u64 {
        self.store.h()
    }

    fn telemetry(&self) -> Telemetry {
        let dense = self.segments().filter(|s| s.is_dense()).count();
        Telemetry {
            h: self.store.h(),
            best: self.best,
            landmark_entries: self.store.entries(),
            landmark_words: self.store.words(),
            aux_words: self.aux_words,
            peak_landmark_words: self.peak_landmark,
            peak_aux_words: self.peak_aux,
            peak_total_words: self.peak_total,
            runs: self.runs,
            sparse_segments: self.part.segment_count() - dense,
            dense_segments: dense,
            fallbacks: self.fallbacks,
            levels: self.store.usage(),
        }
    }
}

fn process_sparse(store: &LandmarkStore, centers: &mut Vec<Candidate>, ctx: &mut StepCtx) {
    let h = store.h();
    centers.retain_mut(|cand| {
        if 2 * cand.center < h + 2 {
            return false;
        }
        match run_process(store, cand.center, ctx.fault) {
            RunOutcome::Success(r) => {
                ctx.runs += 1;
                cand.radius = r;
                ctx.best = ctx.best.max(r);
                true
            }
            RunOutcome::Fail => {
                ctx.runs += 1;
                false
            }
            RunOutcome::NoLandmark => true,
        }
    });
}

fn process_dense(
    store: &LandmarkStore,
    start: u64,
    end: u64,
    exponent: u32,
    d: &mut DenseDesc,
    ctx: &mut StepCtx,
) {
    let h = store.h();
    // Mirror positions of the segment's centers span [2s-h-2, 2e-h-2].
    let Some(y_hi) = (2 * end).checked_sub(h + 2) else {
        return;
    };
    let y_lo = (2 * start).saturating_sub(h + 2);
    let top = store.top_level();
    let seg_len = 1u64 << exponent;
    ctx.candidates.clear();

    // Window floors do not increase with the level: find the first level
    // reaching down to the segment's mirror range, then go up until the
    // whole range is covered.
    let (mut lo, mut hi) = (0, top + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if store.window_floor(mid, false) > y_hi {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let first = lo;
    for level in first..=top {
        let floor = store.window_floor(level, false);
        select_level(store, start, end, seg_len, level, floor, d, ctx);
        if floor <= y_lo {
            break;
        }
    }
    if first <= top {
        d.cache.retain(|c| c.lambda >= first);
    }

    let mut cands = std::mem::take(&mut ctx.candidates);
    cands.sort_unstable_by(|a, b| b.cmp(a));
    cands.dedup();
    for &c in &cands {
        match run_process(store, c, ctx.fault) {
            RunOutcome::Success(r) => {
                ctx.runs += 1;
                ctx.best = ctx.best.max(r);
                buffer_touch(&mut d.buffer, c, r);
            }
            RunOutcome::Fail => ctx.runs += 1,
            RunOutcome::NoLandmark => {}
        }
    }
    ctx.candidates = cands;
}

/// Push onto `ctx.candidates` the progression members served by `level` that
/// might succeed now, plus a few leading ones so the buffer stays exact.
#[allow(clippy::too_many_arguments)]
fn select_level(
    store: &LandmarkStore,
    start: u64,
    end: u64,
    seg_len: u64,
    level: u32,
    floor: u64,
    d: &mut DenseDesc,
    ctx: &mut StepCtx,
) {
    let h = store.h();
    let period = d.period;
    let idx = match d.cache.iter().position(|c| c.lambda == level) {
        Some(i) => i,
        None => {
            let g_shift = period.trailing_zeros().min(level);
            d.cache.push(LevelCache {
                lambda: level,
                g_shift,
                inv: odd_inverse_for(period, level),
                bounds: None,
            });
            d.cache.len() - 1
        }
    };
    let (g_shift, inv) = (d.cache[idx].g_shift, d.cache[idx].inv);
    let Some(fam) = residue_with(d.anchor, period, level, g_shift, inv, h) else {
        return;
    };
    let lowest = start.max((floor + h + 2).div_ceil(2)).max(fam.base);
    if lowest > end {
        return;
    }
    let first = fam.base + (lowest - fam.base).div_ceil(fam.step) * fam.step;
    if first > end {
        return;
    }
    let count = (end - first) / fam.step + 1;
    let push_range = |ctx: &mut StepCtx, lo: u64, hi: u64| {
        let lo = lo.max(first);
        let hi = hi.min(end);
        if lo > hi {
            return;
        }
        let mut c = fam.base + (lo - fam.base).div_ceil(fam.step) * fam.step;
        while c <= hi {
            ctx.candidates.push(c);
            c += fam.step;
        }
    };
    let lcm = 2 * fam.step;
    if count <= LEADING_MEMBERS || 4 * lcm > seg_len {
        push_range(ctx, first, end);
        return;
    }

    let a = 1u64 << level;
    let bounds = match d.cache[idx].bounds {
        Some(mut b) => {
            if b.b_hi.is_none() {
                extend_run_right(store, &mut b, lcm, a, ctx);
            }
            b
        }
        None => match run_bounds(store, start, end, lcm, a) {
            Some(b) => b,
            None => {
                ctx.fallbacks += 1;
                RunBounds {
                    a_lo: 1,
                    a_hi: start,
                    b_lo: end,
                    b_hi: None,
                    probe_left: 0,
                }
            }
        },
    };
    d.cache[idx].bounds = Some(bounds);

    // A member c succeeds only if c >= (A + h + 1) / 2 with the run reaching h,
    // or c = (A + B + 1) / 2 when the run ends at B < h.
    let threshold = (bounds.a_lo + bounds.b_lo + 1).div_ceil(2);
    match bounds.b_hi {
        None => {
            let upper = (bounds.a_hi + h + 1).div_ceil(2);
            if upper > 0 {
                push_range(ctx, threshold, upper - 1);
            }
            let lead = upper.max(first);
            if lead <= end {
                let span = (LEADING_MEMBERS - 1) * fam.step;
                push_range(ctx, lead, lead.saturating_add(span));
            }
        }
        Some(b_hi) => {
            push_range(ctx, threshold, (bounds.a_hi + b_hi).div_ceil(2));
        }
    }
}

/// Bracket the maximal run with period `lcm` (a multiple of `a = 2^λ`)
/// through the segment `[start, end]` using ghost landmarks on level λ.
fn run_bounds(store: &LandmarkStore, start: u64, end: u64, lcm: u64, a: u64) -> Option<RunBounds> {
    let h = store.h();
    let level = a.trailing_zeros();
    let x0 = align_up(start - 1, a);
    let yr = align_down(end, a);
    debug_assert!(yr >= x0 + 2 * lcm);
    let check = |x: u64, y: u64| store.period_unchecked(x, y, lcm, true);

    // Left: smallest aligned x with T[x+1..yr] periodic.
    let ghost_floor = store.window_floor(level, true);
    let (mut lo, mut hi) = (ghost_floor / a, x0 / a);
    if lo > hi {
        return None;
    }
    if !check(x0, yr)? {
        return None;
    }
    let (a_lo, a_hi) = if check(lo * a, yr)? {
        let x = lo * a;
        if x == 0 {
            (1, 1)
        } else {
            (1, x + 1)
        }
    } else {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if check(mid * a, yr)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let x = hi * a;
        (x + 2 - a, x + 1)
    };

    // Right: largest aligned y with T[x0+1..y] periodic.
    let y_top = align_down(h, a);
    let (b_lo, b_hi) = if check(x0, y_top)? {
        (y_top, None)
    } else {
        let (mut lo, mut hi) = (yr / a, y_top / a);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if check(x0, mid * a)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo * a, Some(lo * a + a - 1))
    };
    Some(RunBounds {
        a_lo,
        a_hi,
        b_lo,
        b_hi,
        probe_left: x0,
    })
}

/// Advance an open right end over newly aligned positions.
fn extend_run_right(store: &LandmarkStore, b: &mut RunBounds, lcm: u64, a: u64, ctx: &mut StepCtx) {
    let y_top = align_down(store.h(), a);
    while b.b_lo + a <= y_top {
        let y = b.b_lo + a;
        match store.period_unchecked(b.probe_left, y, lcm, true) {
            Some(true) => b.b_lo = y,
            Some(false) => {
                b.b_hi = Some(y - 1);
                return;
            }
            None => {
                ctx.fallbacks += 1;
                return;
            }
        }
    }
}
