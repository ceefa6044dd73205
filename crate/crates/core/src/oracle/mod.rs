//! Brute-force ground truth: exhaustive enumeration of C∞-words and the
//! differential verification suite built on it.

mod tower;
pub mod verify;

pub use tower::IncrementalTower;
pub use verify::{verify_suite, CheckResult, VerificationReport};

use crate::error::{Error, Result};
use crate::word::{is_cinfty, Letter, Word};

/// Longest words the enumerator accepts.
pub const MAX_ENUMERATION_LENGTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_length: usize,
    /// Maintain the tower incrementally instead of recomputing it per prefix.
    pub incremental: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_length: 40,
            incremental: true,
        }
    }
}

/// A C∞-word reached by the enumerator together with its height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visit<'a> {
    pub word: &'a Word,
    pub height: usize,
}

/// Depth-first walk over every C∞-word of length `1..=max_len`, prefixes before
/// extensions, `1` before `2`. Pruned at the first non-C∞ prefix.
pub fn walk(config: EnumerationConfig, max_len: usize, mut visit: impl FnMut(Visit<'_>)) -> Result<()> {
    if max_len == 0 || max_len > config.max_length.min(MAX_ENUMERATION_LENGTH) {
        return Err(Error::CapacityExceeded(format!(
            "enumeration length {max_len} outside 1..={}",
            config.max_length.min(MAX_ENUMERATION_LENGTH)
        )));
    }
    let mut word = Word::with_capacity(max_len);
    if config.incremental {
        let mut t = IncrementalTower::new();
        walk_incremental(&mut t, &mut word, max_len, &mut visit);
    } else {
        walk_recompute(&mut word, max_len, &mut visit);
    }
    Ok(())
}

fn walk_incremental(
    t: &mut IncrementalTower,
    word: &mut Word,
    max_len: usize,
    visit: &mut impl FnMut(Visit<'_>),
) {
    for x in [Letter::One, Letter::Two] {
        if t.push(x) {
            word.push(x);
            visit(Visit {
                word,
                height: t.height(),
            });
            if word.len() < max_len {
                walk_incremental(t, word, max_len, visit);
            }
            word.pop();
            t.pop();
        }
    }
}

fn walk_recompute(word: &mut Word, max_len: usize, visit: &mut impl FnMut(Visit<'_>)) {
    for x in [Letter::One, Letter::Two] {
        word.push(x);
        if let Ok(t) = crate::word::tower(word) {
            visit(Visit {
                word,
                height: t.height(),
            });
            if word.len() < max_len {
                walk_recompute(word, max_len, visit);
            }
        }
        word.pop();
    }
}

/// All C∞-words of length exactly `n`, lexicographically ordered.
pub fn enumerate_cinfty(n: usize) -> Result<Vec<Word>> {
    enumerate_with(EnumerationConfig::default(), n)
}

pub fn enumerate_with(config: EnumerationConfig, n: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    walk(config, n, |v| {
        if v.word.len() == n {
            out.push(v.word.clone());
        }
    })?;
    Ok(out)
}

/// `by_length[n]` holds the C∞-words of length `n` for `n` in `0..=max_len`.
pub fn enumerate_up_to(max_len: usize) -> Result<Vec<Vec<Word>>> {
    let mut by_length = vec![Vec::new(); max_len + 1];
    by_length[0].push(Word::new());
    walk(EnumerationConfig::default(), max_len, |v| {
        by_length[v.word.len()].push(v.word.clone());
    })?;
    Ok(by_length)
}

/// Reference enumeration: filter all of {1,2}^n through the tower.
pub fn enumerate_naive(n: usize) -> Result<Vec<Word>> {
    if n > 24 {
        return Err(Error::CapacityExceeded(format!(
            "naive filtering over 2^{n} candidates"
        )));
    }
    Ok((0..1u64 << n)
        .map(|bits| {
            (0..n)
                .map(|i| Letter::from_bit((bits >> (n - 1 - i)) & 1 == 1))
                .collect::<Word>()
        })
        .filter(is_cinfty)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn small_lengths() {
        assert_eq!(enumerate_cinfty(1).unwrap(), words(&["1", "2"]));
        assert_eq!(enumerate_cinfty(2).unwrap(), words(&["11", "12", "21", "22"]));
        assert_eq!(
            enumerate_cinfty(3).unwrap(),
            words(&["112", "121", "122", "211", "212", "221"])
        );
    }

    #[test]
    fn incremental_matches_recompute_and_naive() {
        for n in 1..=14 {
            let inc = enumerate_with(EnumerationConfig { max_length: 40, incremental: true }, n).unwrap();
            let rec = enumerate_with(EnumerationConfig { max_length: 40, incremental: false }, n).unwrap();
            assert_eq!(inc, rec, "length {n}");
            assert_eq!(inc, enumerate_naive(n).unwrap(), "length {n}");
        }
    }

    #[test]
    fn heights_match_recomputed_towers() {
        walk(EnumerationConfig::default(), 16, |v| {
            assert_eq!(v.height, crate::word::height(v.word).unwrap(), "{}", v.word);
        })
        .unwrap();
    }

    #[test]
    fn capacity() {
        assert!(enumerate_cinfty(0).is_err());
        assert!(enumerate_with(EnumerationConfig { max_length: 10, incremental: true }, 11).is_err());
    }
}
