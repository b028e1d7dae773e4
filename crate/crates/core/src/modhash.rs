//! Karp-Rabin fingerprints over a prime field.
//!
//! A [`Fingerprint`] packs the length of a string, its forward and reverse
//! polynomial hashes and the matching powers of the base, which is enough to
//! concatenate, erase a known prefix or suffix, and reverse in constant time.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Field parameters shared by every fingerprint of one stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HashParams {
    p: u64,
    x: u64,
    x_inv: u64,
}

/// Constant-size sketch of a string: `fwd = w[1] + w[2]x + ... + w[k]x^(k-1)`,
/// `rev` the same for the reversed string, `pw = x^k`, `ipw = x^-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub len: u64,
    pub fwd: u64,
    pub rev: u64,
    pub pw: u64,
    pub ipw: u64,
}

/// Words of storage one fingerprint occupies.
pub const FINGERPRINT_WORDS: usize = 5;

impl Fingerprint {
    pub const EMPTY: Fingerprint = Fingerprint {
        len: 0,
        fwd: 0,
        rev: 0,
        pw: 1,
        ipw: 1,
    };

    pub fn reverse(&self) -> Fingerprint {
        Fingerprint {
            fwd: self.rev,
            rev: self.fwd,
            ..*self
        }
    }

    /// True whenever the represented string is a palindrome; false positives
    /// only through a hash collision.
    pub fn is_palindrome(&self) -> bool {
        self.fwd == self.rev
    }

    /// Equality of the represented strings up to collisions.
    pub fn same_string(&self, other: &Fingerprint) -> bool {
        self.len == other.len && self.fwd == other.fwd
    }
}

impl HashParams {
    /// Parameters for streams of at most `n` symbols, deterministic in `seed`.
    ///
    /// The modulus is always 2^61 - 1; `n` only documents the intended scale
    /// (collision probability per comparison is about n / 2^61).
    pub fn new(n: u64, seed: u64) -> HashParams {
        debug_assert!(n >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = rng.gen_range(1..MERSENNE_61);
        HashParams::with_base(MERSENNE_61, x).expect("2^61 - 1 is prime")
    }

    /// Explicit modulus and base, mostly for hand-checkable small fields.
    pub fn with_base(p: u64, x: u64) -> Result<HashParams> {
        if !(3..1 << 63).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidParams(format!(
                "modulus {p} is not an odd prime below 2^63"
            )));
        }
        if x == 0 || x >= p {
            return Err(Error::InvalidParams(format!(
                "base {x} outside [1, {}]",
                p - 1
            )));
        }
        let x_inv = pow_mod(x, p - 2, p);
        Ok(HashParams { p, x, x_inv })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn x_inv(&self) -> u64 {
        self.x_inv
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let z = a as u128 * b as u128;
        if self.p == MERSENNE_61 {
            let lo = (z as u64) & MERSENNE_61;
            let hi = (z >> 61) as u64;
            let s = lo + hi;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (z % self.p as u128) as u64
        }
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    /// `Φ(w·a)` from `Φ(w)`; `a` must already be a field element.
    #[inline]
    pub fn append(&self, fp: &Fingerprint, a: u64) -> Fingerprint {
        debug_assert!(a < self.p);
        Fingerprint {
            len: fp.len + 1,
            fwd: self.add(fp.fwd, self.mul(a, fp.pw)),
            rev: self.add(self.mul(fp.rev, self.x), a),
            pw: self.mul(fp.pw, self.x),
            ipw: self.mul(fp.ipw, self.x_inv),
        }
    }

    /// `Φ(wv)` from `Φ(w)` and `Φ(v)`.
    #[inline]
    pub fn concat(&self, w: &Fingerprint, v: &Fingerprint) -> Fingerprint {
        Fingerprint {
            len: w.len + v.len,
            fwd: self.add(w.fwd, self.mul(v.fwd, w.pw)),
            rev: self.add(v.rev, self.mul(w.rev, v.pw)),
            pw: self.mul(w.pw, v.pw),
            ipw: self.mul(w.ipw, v.ipw),
        }
    }

    /// `Φ(v)` from `Φ(wv)` and `Φ(w)`.
    #[inline]
    pub fn erase_prefix(&self, wv: &Fingerprint, w: &Fingerprint) -> Result<Fingerprint> {
        if w.len > wv.len {
            return Err(Error::LengthUnderflow {
                len: wv.len,
                erase: w.len,
            });
        }
        let pw = self.mul(wv.pw, w.ipw);
        Ok(Fingerprint {
            len: wv.len - w.len,
            fwd: self.mul(self.sub(wv.fwd, w.fwd), w.ipw),
            rev: self.sub(wv.rev, self.mul(w.rev, pw)),
            pw,
            ipw: self.mul(wv.ipw, w.pw),
        })
    }

    /// `Φ(w)` from `Φ(wv)` and `Φ(v)`.
    #[inline]
    pub fn erase_suffix(&self, wv: &Fingerprint, v: &Fingerprint) -> Result<Fingerprint> {
        if v.len > wv.len {
            return Err(Error::LengthUnderflow {
                len: wv.len,
                erase: v.len,
            });
        }
        let pw = self.mul(wv.pw, v.ipw);
        Ok(Fingerprint {
            len: wv.len - v.len,
            fwd: self.sub(wv.fwd, self.mul(v.fwd, pw)),
            rev: self.mul(self.sub(wv.rev, v.rev), v.ipw),
            pw,
            ipw: self.mul(wv.ipw, v.pw),
        })
    }

    /// Fingerprint of a whole slice of field elements.
    pub fn of(&self, codes: &[u64]) -> Fingerprint {
        codes
            .iter()
            .fold(Fingerprint::EMPTY, |fp, &a| self.append(&fp, a))
    }
}

/// Field element for a stream symbol; shifted by one so no symbol hashes like
/// an absent character.
#[inline]
pub fn symbol_code(symbol: u32) -> u64 {
    symbol as u64 + 1
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut y = pow_mod(a, d, n);
        if y == 1 || y == n - 1 {
            continue;
        }
        for _ in 1..s {
            y = (y as u128 * y as u128 % n as u128) as u64;
            if y == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
