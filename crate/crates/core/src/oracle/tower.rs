use crate::word::{word_from_rle, Letter, Word};

#[derive(Debug, Clone, Default)]
struct Level {
    // Run lengths of this level; only 1 and 2 are ever stored.
    runs: Vec<u8>,
    first: Option<Letter>,
    last: Option<Letter>,
    len: usize,
}

#[derive(Debug, Clone, Copy)]
enum Change {
    Bumped(usize),
    Pushed { level: usize, prev_last: Option<Letter> },
}

/// Derivative tower of a growing word, updated letter by letter.
///
/// Appending a letter to a level either lengthens its last run (1 → 2) or opens a
/// new run; in both cases the next level changes by at most one appended letter,
/// so an append walks up the tower and stops at the first level left unchanged.
#[derive(Debug, Clone, Default)]
pub struct IncrementalTower {
    levels: Vec<Level>,
    frames: Vec<Vec<Change>>,
}

impl IncrementalTower {
    pub fn new() -> IncrementalTower {
        IncrementalTower::default()
    }

    pub fn len(&self) -> usize {
        self.levels.first().map_or(0, |l| l.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn height(&self) -> usize {
        self.levels.iter().take_while(|l| l.len > 0).count()
    }

    /// Appends `letter`; returns false (and leaves the tower untouched) when the
    /// extended word is not C∞.
    pub fn push(&mut self, letter: Letter) -> bool {
        let mut changes = Vec::new();
        let mut level = 0;
        let mut letter = letter;
        loop {
            if level == self.levels.len() {
                self.levels.push(Level::default());
            }
            let l = &mut self.levels[level];
            let carry = match l.last {
                None => {
                    l.runs.push(1);
                    l.first = Some(letter);
                    l.last = Some(letter);
                    l.len = 1;
                    changes.push(Change::Pushed { level, prev_last: None });
                    None
                }
                Some(last) if last == letter => {
                    let run = l.runs.last_mut().expect("non-empty level has a run");
                    if *run == 2 {
                        self.rollback(changes);
                        return false;
                    }
                    *run = 2;
                    l.len += 1;
                    changes.push(Change::Bumped(level));
                    // The trailing 1 was erased by the derivative; as a 2 it shows up.
                    Some(Letter::Two)
                }
                Some(last) => {
                    let exposed = l.runs.len() >= 2 && l.runs.last() == Some(&1);
                    l.runs.push(1);
                    l.last = Some(letter);
                    l.len += 1;
                    changes.push(Change::Pushed {
                        level,
                        prev_last: Some(last),
                    });
                    // A trailing 1 that is no longer last stops being erased.
                    exposed.then_some(Letter::One)
                }
            };
            match carry {
                Some(next) => {
                    letter = next;
                    level += 1;
                }
                None => break,
            }
        }
        self.frames.push(changes);
        true
    }

    /// Undoes the most recent successful [`push`](Self::push).
    pub fn pop(&mut self) {
        if let Some(changes) = self.frames.pop() {
            self.rollback(changes);
        }
    }

    fn rollback(&mut self, changes: Vec<Change>) {
        for change in changes.into_iter().rev() {
            match change {
                Change::Bumped(i) => {
                    let l = &mut self.levels[i];
                    *l.runs.last_mut().unwrap() = 1;
                    l.len -= 1;
                }
                Change::Pushed { level, prev_last } => {
                    let l = &mut self.levels[level];
                    l.runs.pop();
                    l.len -= 1;
                    l.last = prev_last;
                    if prev_last.is_none() {
                        l.first = None;
                    }
                }
            }
        }
    }

    /// True when the current word is single-rooted and both of its frontiers are 0-free.
    pub fn is_single_rooted_minimal(&self) -> bool {
        let h = self.height();
        if h == 0 || self.levels[h - 1].len != 1 {
            return false;
        }
        self.levels[..h].windows(2).all(|pair| {
            let (below, above) = (&pair[0], &pair[1]);
            let left_zero = below.runs.first() == Some(&1) && above.first == Some(Letter::Two);
            let right_zero = below.runs.last() == Some(&1) && above.last == Some(Letter::Two);
            !left_zero && !right_zero
        })
    }

    /// The non-empty levels as words, for cross-checking.
    pub fn levels(&self) -> Vec<Word> {
        self.levels
            .iter()
            .take_while(|l| l.len > 0)
            .map(|l| {
                let runs: Word = l.runs.iter().map(|&r| Letter::from_bit(r == 2)).collect();
                word_from_rle(&runs, l.first.expect("non-empty level"))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::tower;

    fn feed(s: &str) -> (IncrementalTower, bool) {
        let mut t = IncrementalTower::new();
        let mut ok = true;
        for c in s.chars() {
            ok &= t.push(Letter::from_char(c).unwrap());
        }
        (t, ok)
    }

    #[test]
    fn matches_recomputed_tower() {
        let (t, ok) = feed("21221211221");
        assert!(ok);
        assert_eq!(t.height(), 4);
        assert_eq!(t.levels(), tower(&"21221211221".parse().unwrap()).unwrap().levels());
    }

    #[test]
    fn rejects_and_rolls_back() {
        let (mut t, ok) = feed("211221");
        assert!(ok);
        let before = t.levels();
        // 2112211 has derivative 222
        assert!(!t.push(Letter::One));
        assert_eq!(t.levels(), before);
        assert_eq!(t.len(), 6);
        assert!(t.push(Letter::Two));
    }

    #[test]
    fn pop_restores_previous_state() {
        let (mut t, _) = feed("12112");
        let before = t.levels();
        assert!(t.push(Letter::Two));
        t.pop();
        assert_eq!(t.levels(), before);
        assert_eq!(t.len(), 5);
    }
}
