//! Streaming approximation of the longest palindrome in a text.
//!
//! Characters arrive one at a time; after each one the engine reports a length
//! that is never above the true longest palindrome and is within an additive
//! error `E` or a factor `1 + eps` of it. Memory is a set of landmark
//! fingerprints (`O(n/E)` words, or `O(log n / eps)` words in multiplicative
//! mode) plus, for the compressed engine, `O(log n)` words of bookkeeping.
//!
//! ```
//! use palstream::{answers, ApproxMode, EngineKind, StreamConfig};
//!
//! let cfg = StreamConfig::new(ApproxMode::Additive { error: 1 }, 7, EngineKind::Compressed);
//! assert_eq!(answers(cfg, b"abacaba").unwrap(), vec![1, 1, 3, 3, 3, 5, 7]);
//! ```

pub mod basic;
pub mod compressed;
pub mod engine;
pub mod error;
pub mod gen;
pub mod landmarks;
pub mod modhash;
pub mod oracle;
pub mod partition;
pub mod schemes;
pub mod segments;
pub mod stream;

pub use basic::BasicEngine;
pub use compressed::CompressedEngine;
pub use engine::{Engine, Fault, RunOutcome, Telemetry};
pub use error::{Error, Result};
pub use gen::GenSpec;
pub use landmarks::{LandmarkStore, LevelConfig, Window};
pub use modhash::{Fingerprint, HashParams};
pub use schemes::{ApproxMode, Guarantee, SchemeConfig};
pub use segments::Segment;
pub use stream::{answers, EngineKind, PalStream, Parity, StreamConfig};
