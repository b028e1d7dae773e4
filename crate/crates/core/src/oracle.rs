//! Exact offline answers used to check the streaming engines.

use crate::error::{Error, Result};

/// Largest input [`brute_longest`] accepts.
pub const BRUTE_GUARD: usize = 10_000;
/// Largest input [`prefix_longest`] accepts.
pub const PREFIX_GUARD: usize = 1 << 13;

/// Every symbol twice: odd and even palindromes of `s` both become even
/// palindromes whose radius is the original length.
pub fn double<T: Copy>(s: &[T]) -> Vec<T> {
    s.iter().flat_map(|&c| [c, c]).collect()
}

/// Even radius at every center `c = 1..=n`: the largest `r` with
/// `s[c-r..c-1]` mirroring `s[c..c+r-1]` (1-based, center between c-1 and c).
/// Index 0 of the result corresponds to center 1.
pub fn even_radii<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    // d[i]: radius of the even palindrome centered between i-1 and i (0-based).
    let mut d = vec![0usize; n];
    let (mut l, mut r) = (0usize, 0usize);
    for i in 0..n {
        let mut k = if i < r { d[l + r - i].min(r - i) } else { 0 };
        while i + k < n && k < i && s[i + k] == s[i - k - 1] {
            k += 1;
        }
        d[i] = k;
        if i + k > r {
            l = i - k;
            r = i + k;
        }
    }
    d
}

/// Odd radius at every index: palindrome `s[i-k..=i+k]` has radius `k + 1`.
fn odd_radii<T: Eq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut d = vec![0usize; n];
    let (mut l, mut r) = (0usize, 0usize);
    for i in 0..n {
        let mut k = if i < r {
            d[l + r - 1 - i].min(r - i)
        } else {
            1
        };
        while i + k < n && k <= i && s[i + k] == s[i - k] {
            k += 1;
        }
        d[i] = k;
        if i + k > r {
            l = i + 1 - k;
            r = i + k;
        }
    }
    d
}

/// Length of the longest palindromic substring, in linear time.
pub fn manacher_longest<T: Eq>(s: &[T]) -> usize {
    let odd = odd_radii(s)
        .into_iter()
        .map(|k| 2 * k - 1)
        .max()
        .unwrap_or(0);
    let even = even_radii(s).into_iter().map(|k| 2 * k).max().unwrap_or(0);
    odd.max(even)
}

/// Largest even radius over all centers.
pub fn max_even_radius<T: Eq>(s: &[T]) -> usize {
    even_radii(s).into_iter().max().unwrap_or(0)
}

/// Quadratic center expansion.
pub fn brute_longest<T: Eq>(s: &[T]) -> Result<usize> {
    if s.len() > BRUTE_GUARD {
        return Err(Error::OracleGuard {
            len: s.len(),
            guard: BRUTE_GUARD,
        });
    }
    let n = s.len();
    let mut best = 0;
    for c in 0..n {
        // odd, centered on c
        let mut k = 0;
        while k < c && c + k + 1 < n && s[c - k - 1] == s[c + k + 1] {
            k += 1;
        }
        best = best.max(2 * k + 1);
        // even, centered between c and c + 1
        let mut k = 0;
        while k <= c && c + k + 1 < n && s[c - k] == s[c + k + 1] {
            k += 1;
        }
        best = best.max(2 * k);
    }
    Ok(best)
}

fn is_palindrome<T: Eq>(s: &[T]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Longest palindrome length of every prefix `s[..j]`, `j = 1..=n`.
///
/// The answer grows by at most two per character and only through a
/// palindrome ending at the new character, so each step tries two lengths.
pub fn prefix_longest<T: Eq>(s: &[T]) -> Result<Vec<usize>> {
    if s.len() > PREFIX_GUARD {
        return Err(Error::OracleGuard {
            len: s.len(),
            guard: PREFIX_GUARD,
        });
    }
    Ok(prefix_longest_unguarded(s))
}

pub fn prefix_longest_unguarded<T: Eq>(s: &[T]) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.len());
    let mut best = 0usize;
    for j in 1..=s.len() {
        for grow in [2, 1] {
            let len = best + grow;
            if len <= j && is_palindrome(&s[j - len..j]) {
                best = len;
                break;
            }
        }
        out.push(best);
    }
    out
}

/// Longest even palindrome length of every prefix `s[..j]`, `j = 1..=n`.
///
/// An even palindrome of radius `r + 1` ending at `j` contains one of radius
/// `r` ending at `j - 1`, so the best radius grows by at most one per step.
pub fn prefix_even_longest<T: Eq>(s: &[T]) -> Result<Vec<usize>> {
    if s.len() > PREFIX_GUARD {
        return Err(Error::OracleGuard {
            len: s.len(),
            guard: PREFIX_GUARD,
        });
    }
    let mut out = Vec::with_capacity(s.len());
    let mut radius = 0usize;
    for j in 1..=s.len() {
        let len = 2 * (radius + 1);
        if len <= j && is_palindrome(&s[j - len..j]) {
            radius += 1;
        }
        out.push(2 * radius);
    }
    Ok(out)
}
