//! Partition of the processed text into power-of-two segments.
//!
//! With `c_ℓ` segments of length `2^ℓ`, every step appends a unit segment and
//! performs at most one merge so that `c_ℓ ∈ {3, 4, 5}` below the top
//! exponent. A run-length list over `c_1, c_2, ...` finds the merge level in
//! constant time.

use std::collections::VecDeque;

/// A merge that happened during [`Partition::advance`]: two segments of length
/// `2^exponent` became one of length `2^(exponent + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeEvent {
    pub exponent: u32,
}

#[derive(Debug, Clone)]
pub struct Partition<S> {
    /// `groups[ℓ]` holds the segments of length `2^ℓ`, leftmost first.
    groups: Vec<VecDeque<S>>,
    /// Runs `(count, run length)` of `c_1, c_2, ..., c_M`.
    runs: VecDeque<(u8, u32)>,
    total: u64,
}

impl<S> Default for Partition<S> {
    fn default() -> Self {
        Partition {
            groups: Vec::new(),
            runs: VecDeque::new(),
            total: 0,
        }
    }
}

impl<S> Partition<S> {
    pub fn new() -> Partition<S> {
        Partition::default()
    }

    /// Covered length.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, exponent: u32) -> usize {
        self.groups.get(exponent as usize).map_or(0, |g| g.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.len()).collect()
    }

    pub fn segment_count(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }

    /// Largest exponent with a segment.
    pub fn max_exponent(&self) -> Option<u32> {
        self.groups
            .iter()
            .rposition(|g| !g.is_empty())
            .map(|i| i as u32)
    }

    /// Segments left to right with their exponents.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &S)> + '_ {
        self.groups
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(l, g)| g.iter().map(move |s| (l as u32, s)))
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (u32, &mut S)> + '_ {
        self.groups
            .iter_mut()
            .enumerate()
            .rev()
            .flat_map(|(l, g)| g.iter_mut().map(move |s| (l as u32, s)))
    }

    /// Append `unit` as a new length-1 segment at the right end, then apply the
    /// merge rule, combining the two leftmost segments of the chosen length
    /// with `merge(exponent, left, right)`.
    pub fn advance(&mut self, unit: S, merge: impl FnOnce(u32, S, S) -> S) -> Option<MergeEvent> {
        if self.groups.is_empty() {
            self.groups.push(VecDeque::new());
        }
        self.groups[0].push_back(unit);
        self.total += 1;
        let level = match self.groups[0].len() {
            5 => Some(0),
            4 => self.pending_level(),
            _ => None,
        }?;
        let group = &mut self.groups[level as usize];
        let left = group.pop_front().expect("group has five segments");
        let right = group.pop_front().expect("group has five segments");
        let merged = merge(level, left, right);
        if self.groups.len() <= level as usize + 1 {
            self.groups.push(VecDeque::new());
        }
        self.groups[level as usize + 1].push_back(merged);
        if level > 0 {
            self.set_run_value(level, 3);
        }
        let above = self.count(level + 1) as u8;
        self.set_run_value(level + 1, above);
        Some(MergeEvent { exponent: level })
    }

    /// The level `i >= 1` with `c_1 = ... = c_{i-1} = 4` and `c_i = 5`, if any.
    fn pending_level(&self) -> Option<u32> {
        let mut runs = self.runs.iter();
        let &(first, len) = runs.next()?;
        if first == 5 {
            return Some(1);
        }
        if first != 4 {
            return None;
        }
        match runs.next() {
            Some(&(5, _)) => Some(1 + len),
            _ => None,
        }
    }

    /// Set `c_pos` (pos >= 1) in the run-length list. Positions touched by the
    /// merge rule lie within the first three runs, so the walk is constant.
    fn set_run_value(&mut self, pos: u32, value: u8) {
        debug_assert!(pos >= 1);
        let mut start = 1u32;
        let mut idx = 0usize;
        while idx < self.runs.len() && start + self.runs[idx].1 <= pos {
            start += self.runs[idx].1;
            idx += 1;
        }
        if idx == self.runs.len() {
            debug_assert_eq!(start, pos, "positions grow one at a time");
            match self.runs.back_mut() {
                Some(last) if last.0 == value => last.1 += 1,
                _ => self.runs.push_back((value, 1)),
            }
            return;
        }
        let (old, len) = self.runs[idx];
        if old == value {
            return;
        }
        let before = pos - start;
        let after = len - before - 1;
        let mut replacement: Vec<(u8, u32)> = Vec::with_capacity(3);
        if before > 0 {
            replacement.push((old, before));
        }
        replacement.push((value, 1));
        if after > 0 {
            replacement.push((old, after));
        }
        self.runs.remove(idx);
        for (k, r) in replacement.into_iter().enumerate() {
            self.runs.insert(idx + k, r);
        }
        // Coalesce around the edited region.
        let lo = idx.saturating_sub(1);
        let mut i = lo;
        while i + 1 < self.runs.len() && i <= idx + 3 {
            if self.runs[i].0 == self.runs[i + 1].0 {
                self.runs[i].1 += self.runs[i + 1].1;
                self.runs.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    /// Counts `c_1, c_2, ...` expanded from the run-length list.
    pub fn run_counts(&self) -> Vec<usize> {
        self.runs
            .iter()
            .flat_map(|&(v, l)| std::iter::repeat_n(v as usize, l as usize))
            .collect()
    }

    pub fn run_entries(&self) -> usize {
        self.runs.len()
    }
}
