//! Inputs shared by the benchmarks.

use palstream::gen::{generate, random_text};
use palstream::{ApproxMode, EngineKind, GenSpec, PalStream, StreamConfig};

pub fn random_binary(n: usize) -> Vec<u8> {
    random_text(n, 2, 17).expect("valid alphabet")
}

pub fn alternating(n: usize) -> Vec<u8> {
    generate(&GenSpec::Periodic {
        length: n,
        word: "ab".into(),
    })
    .expect("nonempty word")
}

/// Stream `text` through a fresh engine and return the final answer.
pub fn stream(mode: ApproxMode, engine: EngineKind, text: &[u8]) -> u64 {
    let cfg = StreamConfig::new(mode, text.len() as u64, engine);
    let mut s = PalStream::new(cfg).expect("valid configuration");
    s.extend(text.iter().map(|&b| b as u32), |_, _| {})
        .expect("within capacity")
}
