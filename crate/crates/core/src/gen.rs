//! Deterministic input generators, including adversarial families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    /// Uniform symbols from the first `alphabet` letters.
    Random {
        length: usize,
        alphabet: u32,
        seed: u64,
    },
    /// `word` repeated and cut to `length`.
    Periodic { length: usize, word: String },
    /// Prefix of `0 1 00 11 000 111 ...`.
    Nu { length: usize },
    /// Random filler with an exact palindrome of length `palindrome` starting
    /// at 0-based `position`.
    Planted {
        length: usize,
        alphabet: u32,
        seed: u64,
        palindrome: usize,
        position: usize,
    },
    /// A random word over `1..=sigma` pushed through the binary morphism.
    Morphism {
        source_length: usize,
        sigma: u32,
        seed: u64,
    },
}

/// Render symbol `i` of an alphabet of size `k` as a byte.
pub fn letter(i: u32, k: u32) -> u8 {
    if k <= 26 {
        b'a' + i as u8
    } else {
        i as u8
    }
}

fn check_alphabet(k: u32) -> Result<()> {
    if !(2..=256).contains(&k) {
        return Err(Error::InvalidSpec(format!(
            "alphabet size {k} outside 2..=256"
        )));
    }
    Ok(())
}

pub fn random_text(length: usize, alphabet: u32, seed: u64) -> Result<Vec<u8>> {
    check_alphabet(alphabet)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..length)
        .map(|_| letter(rng.gen_range(0..alphabet), alphabet))
        .collect())
}

/// First `length` characters of `0^1 1^1 0^2 1^2 0^3 1^3 ...`.
pub fn nu(length: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(length);
    let mut run = 1;
    while out.len() < length {
        for bit in *b"01" {
            let take = run.min(length - out.len());
            out.extend(std::iter::repeat_n(bit, take));
        }
        run += 1;
    }
    out
}

/// Image of symbol `c` in `1..=sigma`:
/// `1^c 0 1^(σ-c) 1 0 0 1 1^(σ-c) 0 1^c`, a palindrome of length `2σ + 6`.
pub fn morphism_image(c: u32, sigma: u32) -> Result<Vec<u8>> {
    if c == 0 || c > sigma {
        return Err(Error::SymbolOutOfRange { symbol: c, sigma });
    }
    let ones = |k: u32| std::iter::repeat_n(b'1', k as usize);
    let mut out = Vec::with_capacity(2 * sigma as usize + 6);
    out.extend(ones(c));
    out.push(b'0');
    out.extend(ones(sigma - c));
    out.extend_from_slice(b"1001");
    out.extend(ones(sigma - c));
    out.push(b'0');
    out.extend(ones(c));
    Ok(out)
}

pub fn morphism_encode(source: &[u32], sigma: u32) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(source.len() * (2 * sigma as usize + 6));
    for &c in source {
        out.extend(morphism_image(c, sigma)?);
    }
    Ok(out)
}

pub fn generate(spec: &GenSpec) -> Result<Vec<u8>> {
    match *spec {
        GenSpec::Random {
            length,
            alphabet,
            seed,
        } => random_text(length, alphabet, seed),
        GenSpec::Periodic { length, ref word } => {
            if word.is_empty() {
                return Err(Error::InvalidSpec("periodic word must be nonempty".into()));
            }
            Ok(word.bytes().cycle().take(length).collect())
        }
        GenSpec::Nu { length } => Ok(nu(length)),
        GenSpec::Planted {
            length,
            alphabet,
            seed,
            palindrome,
            position,
        } => {
            if position + palindrome > length {
                return Err(Error::InvalidSpec(format!(
                    "palindrome [{position}, {}) does not fit in length {length}",
                    position + palindrome
                )));
            }
            let mut text = random_text(length, alphabet, seed)?;
            for i in 0..palindrome / 2 {
                text[position + palindrome - 1 - i] = text[position + i];
            }
            Ok(text)
        }
        GenSpec::Morphism {
            source_length,
            sigma,
            seed,
        } => {
            if sigma == 0 {
                return Err(Error::InvalidSpec("sigma must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let source: Vec<u32> = (0..source_length)
                .map(|_| rng.gen_range(1..=sigma))
                .collect();
            morphism_encode(&source, sigma)
        }
    }
}
