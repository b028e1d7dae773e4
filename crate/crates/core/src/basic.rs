//! Reference engine: after every character, check each center whose mirror
//! position is a retained landmark. No per-center state is kept.

use crate::engine::{run_process, Engine, Fault, RunOutcome, Telemetry};
use crate::error::{Error, Result};
use crate::landmarks::LandmarkStore;
use crate::modhash::HashParams;
use crate::schemes::SchemeConfig;

#[derive(Debug, Clone)]
pub struct BasicEngine {
    scheme: SchemeConfig,
    store: LandmarkStore,
    capacity: u64,
    best: u64,
    runs: u64,
    peak_words: usize,
    fault: Fault,
}

impl BasicEngine {
    pub fn new(scheme: SchemeConfig, capacity: u64, params: HashParams) -> Result<BasicEngine> {
        let store = LandmarkStore::new(&scheme.levels, params)?;
        let peak_words = store.words();
        Ok(BasicEngine {
            scheme,
            store,
            capacity,
            best: 0,
            runs: 0,
            peak_words,
            fault: Fault::None,
        })
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Fault) -> BasicEngine {
        self.fault = fault;
        self
    }

    pub fn scheme(&self) -> &SchemeConfig {
        &self.scheme
    }

    pub fn store(&self) -> &LandmarkStore {
        &self.store
    }

    pub fn words(&self) -> usize {
        self.store.words() + 3
    }
}

impl Engine for BasicEngine {
    fn push_code(&mut self, code: u64) -> Result<u64> {
        if self.store.h() >= self.capacity {
            return Err(Error::StreamOverflow {
                capacity: self.capacity,
            });
        }
        self.store.advance(code);
        let h = self.store.h();
        let (store, fault) = (&self.store, self.fault);
        let mut best = self.best;
        let mut runs = 0;
        if h >= 2 {
            store.for_each_landmark(h - 2, |y| {
                if !(h - y).is_multiple_of(2) {
                    return;
                }
                runs += 1;
                if let RunOutcome::Success(r) = run_process(store, (y + h + 2) / 2, fault) {
                    best = best.max(r);
                }
            });
        }
        self.best = best;
        self.runs += runs;
        self.peak_words = self.peak_words.max(self.words());
        Ok(self.best)
    }

    fn best(&self) -> u64 {
        self.best
    }

    fn h(&self) -> u64 {
        self.store.h()
    }

    fn telemetry(&self) -> Telemetry {
        let landmark_words = self.store.words();
        Telemetry {
            h: self.store.h(),
            best: self.best,
            landmark_entries: self.store.entries(),
            landmark_words,
            aux_words: 3,
            peak_landmark_words: self.peak_words - 3,
            peak_aux_words: 3,
            peak_total_words: self.peak_words,
            runs: self.runs,
            levels: self.store.usage(),
            ..Telemetry::default()
        }
    }
}
