//! Shared engine interface and the single palindrome check both engines use.

use serde::Serialize;

use crate::error::Result;
use crate::landmarks::{LandmarkStore, LevelUsage};

/// Outcome of checking the palindrome centered at `c` against the current end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// `T[2c-h-1..h]` is a palindrome of the given radius.
    Success(u64),
    Fail,
    /// The mirror position `2c-h-2` is not a retained landmark (or negative).
    NoLandmark,
}

/// Deliberate defects for mutation testing of the verification harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Ignore every landmark whose deciding level is 0.
    SkipLevelZero,
}

/// Check the process centered at `c` using the regular landmark `2c-h-2`.
#[inline]
pub fn run_process(store: &LandmarkStore, c: u64, fault: Fault) -> RunOutcome {
    let h = store.h();
    debug_assert!(c >= 1 && c <= h);
    let Some(y) = (2 * c).checked_sub(h + 2) else {
        return RunOutcome::NoLandmark;
    };
    if fault == Fault::SkipLevelZero && y != 0 && store.classify_level(y) == Some(0) {
        return RunOutcome::NoLandmark;
    }
    let Some(left) = store.lookup(y, false) else {
        return RunOutcome::NoLandmark;
    };
    let span = store
        .params()
        .erase_prefix(store.prefix_fp(), &left)
        .expect("landmark precedes the current position");
    if span.is_palindrome() {
        RunOutcome::Success(h - c + 1)
    } else {
        RunOutcome::Fail
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Telemetry {
    pub h: u64,
    pub best: u64,
    pub landmark_entries: usize,
    pub landmark_words: usize,
    pub aux_words: usize,
    pub peak_landmark_words: usize,
    pub peak_aux_words: usize,
    pub peak_total_words: usize,
    /// Palindrome checks performed so far.
    pub runs: u64,
    pub sparse_segments: usize,
    pub dense_segments: usize,
    /// Times a run-boundary query could not be answered and the engine fell
    /// back to conservative bounds.
    pub fallbacks: u64,
    pub levels: Vec<LevelUsage>,
}

/// A streaming engine over field elements, reporting the largest verified
/// even radius.
pub trait Engine {
    fn push_code(&mut self, code: u64) -> Result<u64>;
    fn best(&self) -> u64;
    fn h(&self) -> u64;
    fn telemetry(&self) -> Telemetry;
}
