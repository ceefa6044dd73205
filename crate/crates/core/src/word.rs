//! Words over {1,2}: run-length encoding, the derivative, derivative towers,
//! structural classification and the Kolakoski prefix generator.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle::IncrementalTower;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    One,
    Two,
}

impl Letter {
    #[inline]
    pub fn complement(self) -> Letter {
        match self {
            Letter::One => Letter::Two,
            Letter::Two => Letter::One,
        }
    }

    #[inline]
    pub fn value(self) -> u8 {
        match self {
            Letter::One => 1,
            Letter::Two => 2,
        }
    }

    #[inline]
    pub fn from_bit(bit: bool) -> Letter {
        if bit {
            Letter::Two
        } else {
            Letter::One
        }
    }

    #[inline]
    pub fn bit(self) -> bool {
        self == Letter::Two
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            '1' => Ok(Letter::One),
            '2' => Ok(Letter::Two),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
        }
    }
}

/// A finite word over {1,2}, packed one bit per letter (`2` is a set bit).
///
/// Ordering is lexicographic with `1 < 2`, a proper prefix sorting first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(BitVec<u64, Lsb0>);

impl Word {
    pub fn new() -> Word {
        Word(BitVec::new())
    }

    pub fn with_capacity(n: usize) -> Word {
        Word(BitVec::with_capacity(n))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Letter {
        Letter::from_bit(self.0[i])
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().map(|b| Letter::from_bit(*b))
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().map(|b| Letter::from_bit(*b))
    }

    #[inline]
    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter.bit());
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop().map(Letter::from_bit)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().by_vals().map(Letter::from_bit)
    }

    pub fn complement(&self) -> Word {
        let mut bits = self.0.clone();
        bits.iter_mut().for_each(|mut b| *b = !*b);
        Word(bits)
    }

    pub fn reversal(&self) -> Word {
        let mut bits = self.0.clone();
        bits.reverse();
        Word(bits)
    }

    /// The factor `w[start..end]`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_bitvec())
    }

    pub fn prepended(&self, letter: Letter) -> Word {
        let mut bits = BitVec::with_capacity(self.len() + 1);
        bits.push(letter.bit());
        bits.extend_from_bitslice(&self.0);
        Word(bits)
    }

    pub fn appended(&self, letter: Letter) -> Word {
        let mut w = self.clone();
        w.push(letter);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_bitslice(&other.0);
        Word(bits)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Offsets of every occurrence of `pattern` as a factor of `self`.
    pub fn occurrences<'a>(&'a self, pattern: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = self.len();
        let m = pattern.len();
        let last = if m > n { 0 } else { n - m + 1 };
        (0..last).filter(move |&i| self.0[i..i + m] == pattern.0)
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.occurrences(pattern).next().is_some()
    }

    /// Number of occurrences of the letter `1` and of the letter `2`.
    pub fn letter_counts(&self) -> (usize, usize) {
        let twos = self.0.count_ones();
        (self.len() - twos, twos)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().map(Letter::bit).collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars().map(Letter::from_char).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() && f.alternate() {
            return f.write_str("ε");
        }
        let s: String = self.iter().map(Letter::to_char).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Run lengths of a word, Δ(w). Entries may exceed 2 for non-differentiable input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunSequence(pub Vec<usize>);

impl RunSequence {
    pub fn runs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for RunSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Digits run together unless some run needs more than one digit.
        let sep = if self.0.iter().any(|&r| r > 9) { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl Serialize for RunSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn rle(w: &Word) -> RunSequence {
    let mut runs = Vec::new();
    let mut iter = w.iter();
    let Some(mut current) = iter.next() else {
        return RunSequence(runs);
    };
    let mut len = 1;
    for letter in iter {
        if letter == current {
            len += 1;
        } else {
            runs.push(len);
            current = letter;
            len = 1;
        }
    }
    runs.push(len);
    RunSequence(runs)
}

/// Δ(w) with a leading and/or trailing 1 erased.
pub fn derivative(w: &Word) -> Result<Word> {
    let runs = rle(w);
    if let Some(&run) = runs.0.iter().find(|&&r| r > 2) {
        return Err(Error::NotDifferentiable { run });
    }
    let mut s = &runs.0[..];
    if s.first() == Some(&1) {
        s = &s[1..];
    }
    if s.last() == Some(&1) {
        s = &s[..s.len() - 1];
    }
    Ok(s.iter().map(|&r| Letter::from_bit(r == 2)).collect())
}

pub fn is_differentiable(w: &Word) -> bool {
    rle(w).0.iter().all(|&r| r <= 2)
}

/// The unique word with run lengths `runs` (read as 1/2) whose first letter is `start`.
pub fn word_from_rle(runs: &Word, start: Letter) -> Word {
    let mut out = Word::with_capacity(runs.len() * 2);
    let mut letter = start;
    for run in runs.iter() {
        for _ in 0..run.value() {
            out.push(letter);
        }
        letter = letter.complement();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Root {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "12")]
    OneTwo,
    #[serde(rename = "21")]
    TwoOne,
}

impl Root {
    fn of(w: &Word) -> Root {
        match (w.len(), w.first()) {
            (1, Some(Letter::One)) => Root::One,
            (1, Some(Letter::Two)) => Root::Two,
            (2, Some(Letter::One)) => Root::OneTwo,
            (2, Some(Letter::Two)) => Root::TwoOne,
            _ => unreachable!("root of length {}", w.len()),
        }
    }

    pub fn is_single(self) -> bool {
        matches!(self, Root::One | Root::Two)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Root::One => "1",
            Root::Two => "2",
            Root::OneTwo => "12",
            Root::TwoOne => "21",
        })
    }
}

/// w, D(w), D²(w), … down to the last non-empty derivative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeTower {
    levels: Vec<Word>,
}

impl DerivativeTower {
    pub fn levels(&self) -> &[Word] {
        &self.levels
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn root(&self) -> Option<Root> {
        self.levels.last().map(Root::of)
    }

    pub fn word(&self) -> Word {
        self.levels.first().cloned().unwrap_or_default()
    }

    pub fn is_single_rooted(&self) -> bool {
        self.root().is_some_and(Root::is_single)
    }

    /// The tower of the reversed word: every level reversed.
    pub fn reversed(&self) -> DerivativeTower {
        DerivativeTower {
            levels: self.levels.iter().map(Word::reversal).collect(),
        }
    }
}

pub fn tower(w: &Word) -> Result<DerivativeTower> {
    let mut levels = Vec::new();
    let mut current = w.clone();
    while !current.is_empty() {
        let next = derivative(&current).map_err(|_| Error::NotCInfinity {
            level: levels.len(),
        })?;
        levels.push(current);
        current = next;
    }
    Ok(DerivativeTower { levels })
}

pub fn is_cinfty(w: &Word) -> bool {
    let mut current = w.clone();
    while !current.is_empty() {
        match derivative(&current) {
            Ok(next) => current = next,
            Err(_) => return false,
        }
    }
    true
}

pub fn height(w: &Word) -> Result<usize> {
    tower(w).map(|t| t.height())
}

fn require_nonempty_cinfty(w: &Word) -> Result<DerivativeTower> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    tower(w)
}

/// Every word whose derivative is `v`, sorted lexicographically.
pub fn primitives(v: &Word) -> Result<Vec<Word>> {
    require_nonempty_cinfty(v)?;
    let mut out = Vec::with_capacity(8);
    for pad_left in [false, true] {
        for pad_right in [false, true] {
            let mut shape = Word::with_capacity(v.len() + 2);
            if pad_left {
                shape.push(Letter::One);
            }
            shape = shape.concat(v);
            if pad_right {
                shape.push(Letter::One);
            }
            for start in [Letter::One, Letter::Two] {
                let p = word_from_rle(&shape, start);
                if derivative(&p).as_ref() == Ok(v) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Classification {
    pub left_minimal: bool,
    pub right_minimal: bool,
    pub minimal: bool,
    pub left_maximal: bool,
    pub right_maximal: bool,
    pub maximal: bool,
    pub left_doubly_extendable: bool,
    pub right_doubly_extendable: bool,
    pub fully_extendable: bool,
    pub single_rooted: bool,
}

fn begins_distinct(w: &Word) -> bool {
    w.len() >= 2 && w.get(0) != w.get(1)
}

fn ends_distinct(w: &Word) -> bool {
    let n = w.len();
    n >= 2 && w.get(n - 1) != w.get(n - 2)
}

pub fn classify(w: &Word) -> Result<Classification> {
    let t = require_nonempty_cinfty(w)?;
    let left = crate::vertical::left_frontier_of(&t);
    let right = crate::vertical::left_frontier_of(&t.reversed());
    let left_minimal = left.is_pure();
    let right_minimal = right.is_pure();
    let longer = || t.levels().iter().filter(|l| l.len() > 1);
    let left_maximal = longer().all(begins_distinct);
    let right_maximal = longer().all(ends_distinct);
    let ext = |x: Letter, y: Option<Letter>| {
        let mut e = w.prepended(x);
        if let Some(y) = y {
            e.push(y);
        }
        is_cinfty(&e)
    };
    let ext_right = |y: Letter| is_cinfty(&w.appended(y));
    use Letter::{One, Two};
    Ok(Classification {
        left_minimal,
        right_minimal,
        minimal: left_minimal && right_minimal,
        left_maximal,
        right_maximal,
        maximal: left_maximal && right_maximal,
        left_doubly_extendable: ext(One, None) && ext(Two, None),
        right_doubly_extendable: ext_right(One) && ext_right(Two),
        fully_extendable: ext(One, Some(One))
            && ext(One, Some(Two))
            && ext(Two, Some(One))
            && ext(Two, Some(Two)),
        single_rooted: t.is_single_rooted(),
    })
}

/// Applies the forced one-letter extensions on each simply extendable side
/// until the word is doubly extendable on both sides.
pub fn extend_to_maximal(w: &Word) -> Result<Word> {
    require_nonempty_cinfty(w)?;
    let mut current = w.clone();
    loop {
        let mut changed = false;
        let ones = current.prepended(Letter::One);
        let twos = current.prepended(Letter::Two);
        match (is_cinfty(&ones), is_cinfty(&twos)) {
            (true, false) => {
                current = ones;
                changed = true;
            }
            (false, true) => {
                current = twos;
                changed = true;
            }
            _ => {}
        }
        let ones = current.appended(Letter::One);
        let twos = current.appended(Letter::Two);
        match (is_cinfty(&ones), is_cinfty(&twos)) {
            (true, false) => {
                current = ones;
                changed = true;
            }
            (false, true) => {
                current = twos;
                changed = true;
            }
            _ => {}
        }
        if !changed {
            return Ok(current);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalFactor {
    pub word: Word,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalPart {
    pub part: MinimalFactor,
    pub second: Option<MinimalFactor>,
}

/// Every occurrence of a single-rooted minimal factor with the same height as `w`,
/// in order of start offset.
pub fn single_rooted_minimal_factors(w: &Word) -> Result<Vec<MinimalFactor>> {
    let k = require_nonempty_cinfty(w)?.height();
    let n = w.len();
    let mut found = Vec::new();
    for start in 0..n {
        let mut t = IncrementalTower::new();
        for end in start..n {
            let ok = t.push(w.get(end));
            debug_assert!(ok, "factors of C∞-words are C∞");
            // Levels only grow under appending, so the height never drops back to k.
            if t.height() > k {
                break;
            }
            if t.height() == k && t.is_single_rooted_minimal() {
                found.push(MinimalFactor {
                    word: w.factor(start, end + 1),
                    offset: start,
                });
            }
        }
    }
    Ok(found)
}

pub fn minimal_part(w: &Word) -> Result<MinimalPart> {
    let mut factors = single_rooted_minimal_factors(w)?.into_iter();
    let part = factors
        .next()
        .expect("every C∞-word of positive height has a single-rooted minimal factor");
    Ok(MinimalPart {
        part,
        second: factors.next(),
    })
}

/// Length-`n` prefix of the Kolakoski word 2211212212211…
pub fn kolakoski(n: usize) -> Word {
    let mut seq: Vec<u8> = Vec::with_capacity(n + 1);
    let mut run = 0;
    while seq.len() < n {
        let letter = if run % 2 == 0 { 2 } else { 1 };
        // Run 0 reads its own length before it has been written.
        let len = seq.get(run).copied().unwrap_or(letter);
        for _ in 0..len {
            seq.push(letter);
        }
        run += 1;
    }
    seq.truncate(n);
    seq.into_iter().map(|b| Letter::from_bit(b == 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rle_examples() {
        assert_eq!(rle(&w("2211")).to_string(), "22");
        assert_eq!(rle(&w("22112")).to_string(), "221");
        assert_eq!(rle(&w("1")).to_string(), "1");
        assert!(rle(&Word::new()).is_empty());
        assert_eq!(rle(&w("1111111111112")).to_string(), "12,1");
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&w("2122")).unwrap(), w("12"));
        assert_eq!(derivative(&w("121")).unwrap(), w("1"));
        assert_eq!(
            derivative(&w("111")),
            Err(Error::NotDifferentiable { run: 3 })
        );
        assert_eq!(derivative(&Word::new()).unwrap(), Word::new());
        assert_eq!(derivative(&w("12")).unwrap(), Word::new());
        assert_eq!(derivative(&w("2")).unwrap(), Word::new());
    }

    #[test]
    fn tower_examples() {
        let t = tower(&w("21221211221")).unwrap();
        let levels: Vec<String> = t.levels().iter().map(|l| l.to_string()).collect();
        assert_eq!(levels, ["21221211221", "121122", "122", "2"]);
        assert_eq!(t.height(), 4);
        assert_eq!(t.root(), Some(Root::Two));

        let t = tower(&w("1122")).unwrap();
        assert_eq!(t.levels(), &[w("1122"), w("22"), w("2")]);
        assert_eq!(t.height(), 3);

        let t = tower(&Word::new()).unwrap();
        assert_eq!(t.height(), 0);
        assert_eq!(t.root(), None);
    }

    #[test]
    fn tower_reports_failing_level() {
        assert_eq!(tower(&w("22112211")), Err(Error::NotCInfinity { level: 1 }));
        assert_eq!(tower(&w("2221")), Err(Error::NotCInfinity { level: 0 }));
    }

    #[test]
    fn cinfty_examples() {
        assert!(is_cinfty(&w("21221211221")));
        assert!(!is_cinfty(&w("2221")));
        assert!(!is_cinfty(&w("22112211")));
    }

    #[test]
    fn complement_and_reversal() {
        assert_eq!(w("11212").complement(), w("22121"));
        assert_eq!(w("11212").reversal(), w("21211"));
        assert_eq!(Word::new().complement(), Word::new());
    }

    #[test]
    fn word_from_rle_examples() {
        assert_eq!(word_from_rle(&w("22"), Letter::Two), w("2211"));
        assert_eq!(word_from_rle(&w("1121"), Letter::Two), w("21221"));
        assert_eq!(word_from_rle(&w("121"), Letter::One), w("1221"));
        assert_eq!(rle(&w("21221")).to_string(), "1121");
    }

    #[test]
    fn primitives_examples() {
        let mut expected: Vec<Word> = ["2212", "1121", "12212", "21121"].map(w).to_vec();
        expected.sort();
        assert_eq!(primitives(&w("21")).unwrap(), expected);

        let mut expected: Vec<Word> = ["121121", "212212"].map(w).to_vec();
        expected.sort();
        assert_eq!(primitives(&w("121")).unwrap(), expected);

        let mut expected: Vec<Word> = [
            "1122", "21122", "11221", "211221", "2211", "12211", "22112", "122112",
        ]
        .map(w)
        .to_vec();
        expected.sort();
        assert_eq!(primitives(&w("22")).unwrap(), expected);
    }

    #[test]
    fn primitives_rejects_bad_input() {
        assert_eq!(primitives(&Word::new()), Err(Error::EmptyWord));
        assert!(primitives(&w("111")).is_err());
    }

    #[test]
    fn classify_examples() {
        assert!(classify(&w("2211")).unwrap().minimal);

        let c = classify(&w("21221121")).unwrap();
        assert!(c.maximal);
        assert!(c.single_rooted);
        assert!(!c.fully_extendable);

        let c = classify(&w("2122112")).unwrap();
        assert!(c.left_maximal);
        assert!(!c.right_maximal);
    }

    #[test]
    fn single_letter_is_doubly_but_not_fully_extendable() {
        let c = classify(&w("1")).unwrap();
        assert!(c.left_doubly_extendable && c.right_doubly_extendable);
        assert!(!c.fully_extendable);
        // 2w2 is the forbidden extension of 121
        let c = classify(&w("121")).unwrap();
        assert!(c.left_doubly_extendable && c.right_doubly_extendable);
        assert!(!c.fully_extendable);
        assert!(!is_cinfty(&w("21212")));
    }

    #[test]
    fn extend_to_maximal_examples() {
        assert_eq!(extend_to_maximal(&w("1122")).unwrap(), w("12112212"));
        assert_eq!(extend_to_maximal(&w("1122122")).unwrap(), w("1211221221"));
        assert_eq!(extend_to_maximal(&w("21221121")).unwrap(), w("21221121"));
    }

    #[test]
    fn minimal_part_examples() {
        let mp = minimal_part(&w("21221211221221121")).unwrap();
        assert_eq!(mp.part.word, w("2121122"));
        assert_eq!(mp.part.offset, 3);
        let second = mp.second.unwrap();
        assert_eq!(second.word, w("112212211"));
        assert_eq!(second.offset, 6);

        let mp = minimal_part(&w("2121122")).unwrap();
        assert_eq!(mp.part.offset, 0);
        assert_eq!(mp.part.word, w("2121122"));
        assert!(mp.second.is_none());

        let all = single_rooted_minimal_factors(&w("21221211221")).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn kolakoski_prefixes() {
        assert_eq!(kolakoski(12), w("221121221221"));
        assert_eq!(kolakoski(1), w("2"));
        assert_eq!(
            kolakoski(60),
            w("221121221221121122121121221121121221221121221211211221221121")
        );
        assert_eq!(kolakoski(0), Word::new());
    }

    #[test]
    fn occurrences_finds_every_offset() {
        let hay = w("1212121");
        let offsets: Vec<usize> = hay.occurrences(&w("121")).collect();
        assert_eq!(offsets, [0, 2, 4]);
        assert!(!w("12").contains(&w("122")));
    }
}
