//! Candidate-center bookkeeping for one segment of the partition.
//!
//! A segment either lists its few possibly-alive centers explicitly or, once
//! five or more long palindromes share it, describes them as the arithmetic
//! progression `anchor + α·period/2` of a periodic block.

use serde::Serialize;

use crate::error::{Error, Result};

/// Steady-state capacity of an explicit center list.
pub const SPARSE_CAP: usize = 4;
/// Capacity of the dense success buffer.
pub const BUFFER_CAP: usize = 5;

/// A center with the radius of its most recent successful check (0 if none).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub center: u64,
    pub radius: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseDesc {
    pub centers: Vec<Candidate>,
}

/// Cached answers for one landmark level of a dense segment. Fields are
/// filled lazily by the compressed engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCache {
    pub lambda: u32,
    /// `log2 gcd(period, 2^λ)`.
    pub g_shift: u32,
    /// Inverse of `period / 2^g` modulo `2^(λ - g)`.
    pub inv: u64,
    pub bounds: Option<RunBounds>,
}

/// Bracket on the maximal periodic run `[A, B]` containing a dense segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBounds {
    pub a_lo: u64,
    pub a_hi: u64,
    pub b_lo: u64,
    /// `None` while the run may still reach the current position.
    pub b_hi: Option<u64>,
    /// Aligned left end of the in-segment region used by right-side probes.
    pub probe_left: u64,
}

impl LevelCache {
    pub const WORDS: usize = 8;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseDesc {
    /// Smallest family member inside the segment; `T[anchor..anchor+period-1]`
    /// is an even palindrome.
    pub anchor: u64,
    pub period: u64,
    /// Most recent successes, front first.
    pub buffer: Vec<Candidate>,
    pub cache: Vec<LevelCache>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Desc {
    Sparse(SparseDesc),
    Dense(DenseDesc),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: u64,
    pub exponent: u32,
    pub desc: Desc,
}

impl Segment {
    /// The segment `[h, h]` holding the single center `h`.
    pub fn unit(h: u64) -> Segment {
        Segment {
            start: h,
            exponent: 0,
            desc: Desc::Sparse(SparseDesc {
                centers: vec![Candidate {
                    center: h,
                    radius: 0,
                }],
            }),
        }
    }

    pub fn len(&self) -> u64 {
        1 << self.exponent
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> u64 {
        self.start + self.len() - 1
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.desc, Desc::Dense(_))
    }

    /// Machine words held by this segment's description.
    pub fn words(&self) -> usize {
        3 + match &self.desc {
            Desc::Sparse(s) => 2 * s.centers.len(),
            Desc::Dense(d) => 2 + 2 * d.buffer.len() + LevelCache::WORDS * d.cache.len(),
        }
    }
}

impl DenseDesc {
    /// Whether `center` belongs to the progression.
    pub fn contains(&self, center: u64) -> bool {
        center >= self.anchor && (center - self.anchor).is_multiple_of(self.period / 2)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Period and anchor of the progression through `centers` (at least five,
/// each with a palindrome at least as long as the segment).
pub fn densify(centers: &[u64], seg_start: u64, exponent: u32) -> Result<(u64, u64)> {
    if centers.len() < BUFFER_CAP {
        return Err(Error::TooFewCenters(centers.len()));
    }
    let mut sorted = centers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < BUFFER_CAP {
        return Err(Error::TooFewCenters(sorted.len()));
    }
    let g = sorted.windows(2).fold(0, |g, w| gcd(g, w[1] - w[0]));
    let period = 2 * g;
    debug_assert!(
        period <= 1 << exponent.saturating_sub(1),
        "period {period} too long for 2^{exponent}"
    );
    Ok((canonical_anchor(sorted[0], period, seg_start), period))
}

/// Smallest position at or after `seg_start` congruent to `center` modulo `period / 2`.
pub fn canonical_anchor(center: u64, period: u64, seg_start: u64) -> u64 {
    let half = period / 2;
    let r = center % half;
    let base = seg_start - seg_start % half + r;
    if base < seg_start {
        base + half
    } else {
        base
    }
}

/// Buffer entries long enough to matter once a segment of length `2^exponent`
/// is merged, or `None` if five of them qualify.
pub fn survivors(buffer: &[Candidate], exponent: u32) -> Option<Vec<Candidate>> {
    let threshold = 2u64 << exponent;
    let long: Vec<Candidate> = buffer
        .iter()
        .copied()
        .filter(|c| c.radius >= threshold)
        .collect();
    (long.len() <= SPARSE_CAP).then_some(long)
}

/// Coarsest progression containing both a freshly derived one and one kept
/// from a merged side.
pub fn reconcile(p_new: u64, c_new: u64, p_old: u64, c_old: u64, seg_start: u64) -> (u64, u64) {
    let half = gcd(gcd(p_new / 2, p_old / 2), c_new.abs_diff(c_old));
    if half == p_new / 2 {
        return (c_new, p_new);
    }
    (canonical_anchor(c_new, 2 * half, seg_start), 2 * half)
}

/// Record a success: move `center` to the front with its new radius.
pub fn buffer_touch(buffer: &mut Vec<Candidate>, center: u64, radius: u64) {
    if let Some(i) = buffer.iter().position(|c| c.center == center) {
        buffer.remove(i);
    }
    buffer.insert(0, Candidate { center, radius });
    buffer.truncate(BUFFER_CAP);
}

/// Merge adjacent equal-length segments `left` and `right`.
pub fn merge(left: Segment, right: Segment) -> Result<Segment> {
    if left.exponent != right.exponent || left.end() + 1 != right.start {
        return Err(Error::NotMergeable(
            left.start,
            left.end(),
            right.start,
            right.end(),
        ));
    }
    Ok(merge_adjacent(left, right))
}

enum Side {
    Explicit(Vec<Candidate>),
    Kept {
        anchor: u64,
        period: u64,
        long: Vec<Candidate>,
    },
}

fn side_of(seg: Segment) -> Side {
    match seg.desc {
        Desc::Sparse(s) => Side::Explicit(s.centers),
        Desc::Dense(d) => {
            let threshold = 2u64 << seg.exponent;
            match survivors(&d.buffer, seg.exponent) {
                Some(list) => Side::Explicit(list),
                None => Side::Kept {
                    anchor: d.anchor,
                    period: d.period,
                    long: d
                        .buffer
                        .into_iter()
                        .filter(|c| c.radius >= threshold)
                        .collect(),
                },
            }
        }
    }
}

pub(crate) fn merge_adjacent(left: Segment, right: Segment) -> Segment {
    debug_assert_eq!(left.exponent, right.exponent);
    let exponent = left.exponent;
    let start = left.start;
    let threshold = 2u64 << exponent;
    let sides = [side_of(left), side_of(right)];

    let mut explicit = Vec::new();
    let mut kept = Vec::new();
    let mut inputs = Vec::new();
    for side in sides {
        match side {
            Side::Explicit(list) => explicit.extend(list),
            Side::Kept {
                anchor,
                period,
                long,
            } => {
                inputs.extend(long);
                kept.push((anchor, period));
            }
        }
    }

    if kept.is_empty() && explicit.len() <= SPARSE_CAP {
        return Segment {
            start,
            exponent: exponent + 1,
            desc: Desc::Sparse(SparseDesc { centers: explicit }),
        };
    }
    // Anything shorter than the merged segment is already dead.
    inputs.extend(explicit.into_iter().filter(|c| c.radius >= threshold));
    if kept.is_empty() && inputs.len() <= SPARSE_CAP {
        return Segment {
            start,
            exponent: exponent + 1,
            desc: Desc::Sparse(SparseDesc { centers: inputs }),
        };
    }
    let centers: Vec<u64> = inputs.iter().map(|c| c.center).collect();
    let (mut anchor, mut period) =
        densify(&centers, start, exponent + 1).expect("at least five long centers");
    for (old_anchor, old_period) in kept {
        (anchor, period) = reconcile(period, anchor, old_period, old_anchor, start);
    }
    inputs.sort_by(|a, b| b.radius.cmp(&a.radius).then(a.center.cmp(&b.center)));
    inputs.dedup_by_key(|c| c.center);
    inputs.truncate(BUFFER_CAP);
    Segment {
        start,
        exponent: exponent + 1,
        desc: Desc::Dense(DenseDesc {
            anchor,
            period,
            buffer: inputs,
            cache: Vec::new(),
        }),
    }
}
