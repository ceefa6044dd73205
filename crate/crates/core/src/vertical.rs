//! Vertical representation: left/right frontiers over {0,1,2}, encoding,
//! decoding, and the shortest words with a prescribed left frontier.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result, Side};
use crate::word::{tower, word_from_rle, DerivativeTower, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VLetter {
    Zero,
    One,
    Two,
}

impl VLetter {
    /// The letter actually present in the derivative: `0` stands for a `2`.
    #[inline]
    pub fn effective(self) -> Letter {
        match self {
            VLetter::One => Letter::One,
            VLetter::Zero | VLetter::Two => Letter::Two,
        }
    }

    pub fn from_char(c: char) -> Result<VLetter> {
        match c {
            '0' => Ok(VLetter::Zero),
            '1' => Ok(VLetter::One),
            '2' => Ok(VLetter::Two),
            other => Err(Error::InvalidVerticalLetter(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            VLetter::Zero => '0',
            VLetter::One => '1',
            VLetter::Two => '2',
        }
    }
}

impl From<Letter> for VLetter {
    fn from(l: Letter) -> VLetter {
        match l {
            Letter::One => VLetter::One,
            Letter::Two => VLetter::Two,
        }
    }
}

/// A word over {0,1,2} that is empty or does not start with 0.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VerticalWord(Vec<VLetter>);

impl VerticalWord {
    pub fn new(letters: Vec<VLetter>) -> Result<VerticalWord> {
        if letters.first() == Some(&VLetter::Zero) {
            return Err(Error::LeadingZero {
                side: Side::Left,
                level: 0,
            });
        }
        Ok(VerticalWord(letters))
    }

    pub fn empty() -> VerticalWord {
        VerticalWord(Vec::new())
    }

    pub fn letters(&self) -> &[VLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No 0 anywhere.
    pub fn is_pure(&self) -> bool {
        !self.0.contains(&VLetter::Zero)
    }

    pub fn push(&mut self, l: VLetter) {
        debug_assert!(!(self.0.is_empty() && l == VLetter::Zero));
        self.0.push(l);
    }

    pub fn prefix(&self, n: usize) -> VerticalWord {
        VerticalWord(self.0[..n].to_vec())
    }

    /// Swaps 1 and 2, leaving 0 alone.
    pub fn complement(&self) -> VerticalWord {
        VerticalWord(
            self.0
                .iter()
                .map(|l| match l {
                    VLetter::One => VLetter::Two,
                    VLetter::Two => VLetter::One,
                    VLetter::Zero => VLetter::Zero,
                })
                .collect(),
        )
    }
}

impl From<&Word> for VerticalWord {
    fn from(w: &Word) -> VerticalWord {
        VerticalWord(w.iter().map(VLetter::from).collect())
    }
}

impl FromStr for VerticalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<VerticalWord> {
        let letters = s.chars().map(VLetter::from_char).collect::<Result<Vec<_>>>()?;
        VerticalWord::new(letters)
    }
}

impl fmt::Display for VerticalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() && f.alternate() {
            return f.write_str("ε");
        }
        let s: String = self.0.iter().map(|l| l.to_char()).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for VerticalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VerticalWord({self})")
    }
}

impl Serialize for VerticalWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A frontier pair `LEFT|RIGHT` of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VerticalRep {
    pub left: VerticalWord,
    pub right: VerticalWord,
}

impl VerticalRep {
    pub fn new(left: VerticalWord, right: VerticalWord) -> Result<VerticalRep> {
        if left.len() != right.len() {
            return Err(Error::LengthMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        Ok(VerticalRep { left, right })
    }

    pub fn height(&self) -> usize {
        self.left.len()
    }
}

impl fmt::Display for VerticalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left, self.right)
    }
}

impl FromStr for VerticalRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<VerticalRep> {
        let (l, r) = s.split_once('|').unwrap_or((s, ""));
        let parse = |text: &str, side| {
            text.parse::<VerticalWord>().map_err(|e| match e {
                Error::LeadingZero { level, .. } => Error::LeadingZero { side, level },
                other => other,
            })
        };
        VerticalRep::new(parse(l, Side::Left)?, parse(r, Side::Right)?)
    }
}

impl Serialize for VerticalRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rooting {
    Single,
    Double,
}

/// Ψ read off an already computed tower.
pub fn left_frontier_of(t: &DerivativeTower) -> VerticalWord {
    let levels = t.levels();
    let mut out = Vec::with_capacity(levels.len());
    for (i, level) in levels.iter().enumerate() {
        let first = level.get(0);
        let zero = i > 0 && first == Letter::Two && {
            let above = &levels[i - 1];
            above.get(0) != above.get(1)
        };
        out.push(if zero { VLetter::Zero } else { first.into() });
    }
    VerticalWord(out)
}

pub fn left_frontier(w: &Word) -> Result<VerticalWord> {
    Ok(left_frontier_of(&tower(w)?))
}

pub fn right_frontier(w: &Word) -> Result<VerticalWord> {
    left_frontier(&w.reversal())
}

pub fn encode(w: &Word) -> Result<VerticalRep> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let t = tower(w)?;
    Ok(VerticalRep {
        left: left_frontier_of(&t),
        right: left_frontier_of(&t.reversed()),
    })
}

/// Builds the primitive `[pre] core [post]` of `v`, where the core has run lengths `v`
/// and starts with `core_start`.
fn primitive_level(v: &Word, pre: Option<Letter>, core_start: Letter, post: Option<Letter>) -> Word {
    let mut level = Word::with_capacity(2 * v.len() + 2);
    if let Some(p) = pre {
        level.push(p);
    }
    level = level.concat(&word_from_rle(v, core_start));
    if let Some(p) = post {
        level.push(p);
    }
    level
}

/// The unique C∞-word with the given frontier pair.
pub fn decode(rep: &VerticalRep) -> Result<Word> {
    let (left, right) = (rep.left.letters(), rep.right.letters());
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let k = left.len();
    if k == 0 {
        return Ok(Word::new());
    }
    if left[0] == VLetter::Zero {
        return Err(Error::LeadingZero { side: Side::Left, level: 0 });
    }
    if right[0] == VLetter::Zero {
        return Err(Error::LeadingZero { side: Side::Right, level: 0 });
    }

    let l = left[k - 1].effective();
    let r = right[k - 1].effective();
    let mut level: Word = if l == r { [l].into_iter().collect() } else { [l, r].into_iter().collect() };

    for i in (0..k - 1).rev() {
        let v = level;
        let prepend = left[i + 1] == VLetter::Zero || v.first() == Some(Letter::One);
        let append = right[i + 1] == VLetter::Zero || v.last() == Some(Letter::One);
        let first = left[i].effective();
        let last = right[i].effective();
        let core_start = if prepend { first.complement() } else { first };
        let core_end = core_start_to_end(&v, core_start);
        let wanted_end = if append { last.complement() } else { last };
        if core_end != wanted_end {
            return Err(Error::InvalidRep { level: i });
        }
        level = primitive_level(&v, prepend.then_some(first), core_start, append.then_some(last));
    }
    debug_assert_eq!(encode(&level).as_ref(), Ok(rep));
    Ok(level)
}

/// Last letter of `word_from_rle(v, start)` without building it.
fn core_start_to_end(v: &Word, start: Letter) -> Letter {
    if v.len() % 2 == 1 {
        start
    } else {
        start.complement()
    }
}

/// The shortest word of the given rooting whose left frontier is `u0`.
pub fn min_word(u0: &VerticalWord, rooting: Rooting) -> Result<Word> {
    let u = u0.letters();
    let k = u.len();
    if k == 0 {
        return Err(Error::EmptyWord);
    }
    let top = u[k - 1].effective();
    let mut level: Word = match rooting {
        Rooting::Single => [top].into_iter().collect(),
        Rooting::Double => [top, top.complement()].into_iter().collect(),
    };
    for i in (0..k - 1).rev() {
        let v = level;
        let first = u[i].effective();
        let prepend = u[i + 1] == VLetter::Zero || v.first() == Some(Letter::One);
        let core_start = if prepend { first.complement() } else { first };
        let post = (v.last() == Some(Letter::One))
            .then(|| core_start_to_end(&v, core_start).complement());
        level = primitive_level(&v, prepend.then_some(first), core_start, post);
    }
    Ok(level)
}
