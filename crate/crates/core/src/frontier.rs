//! The frontier maps Γs, Γd, Θ = Γs∘Γd and Π = Γd∘Γs, evaluated either
//! directly (build the minimal word, read its right frontier) or through
//! the recursive formulae over memoized per-length tables.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::vertical::{min_word, right_frontier, Rooting, VLetter, VerticalWord};
use crate::word::Letter;

/// Longest frontier a table key can hold.
pub const MAX_KEY_LEN: usize = 31;

/// A 0-free frontier packed as `(bits, len)`; letter `i` sits at bit `len - 1 - i`
/// and a set bit is the letter 2, so keys of one length sort lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PureFrontier {
    len: u32,
    bits: u64,
}

impl PureFrontier {
    pub const EMPTY: PureFrontier = PureFrontier { len: 0, bits: 0 };

    pub fn from_key(bits: u64, len: usize) -> PureFrontier {
        debug_assert!(len < 64 && (len == 63 || bits >> len == 0));
        PureFrontier {
            len: len as u32,
            bits,
        }
    }

    #[inline]
    pub fn key(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> Letter {
        Letter::from_bit((self.bits >> (self.len() - 1 - i)) & 1 == 1)
    }

    pub fn last(self) -> Option<Letter> {
        (self.len > 0).then(|| Letter::from_bit(self.bits & 1 == 1))
    }

    pub fn push(self, letter: Letter) -> PureFrontier {
        PureFrontier {
            len: self.len + 1,
            bits: (self.bits << 1) | letter.bit() as u64,
        }
    }

    /// Drops the last letter.
    pub fn parent(self) -> Option<(PureFrontier, Letter)> {
        let last = self.last()?;
        Some((
            PureFrontier {
                len: self.len - 1,
                bits: self.bits >> 1,
            },
            last,
        ))
    }

    pub fn complement(self) -> PureFrontier {
        PureFrontier {
            len: self.len,
            bits: self.bits ^ mask(self.len()),
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// All frontiers of length `n` in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = PureFrontier> {
        (0..1u64 << n).map(move |bits| PureFrontier::from_key(bits, n))
    }

    pub fn to_vertical(self) -> VerticalWord {
        VerticalWord::new(self.iter().map(VLetter::from).collect()).expect("no 0 letters")
    }
}

#[inline]
fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl TryFrom<&VerticalWord> for PureFrontier {
    type Error = Error;

    fn try_from(v: &VerticalWord) -> Result<PureFrontier> {
        if v.len() > 63 {
            return Err(Error::CapacityExceeded(format!(
                "frontier of length {} does not fit a 63-letter key",
                v.len()
            )));
        }
        v.letters()
            .iter()
            .enumerate()
            .try_fold(PureFrontier::EMPTY, |acc, (level, l)| match l {
                VLetter::Zero => Err(Error::NotPure { level }),
                VLetter::One => Ok(acc.push(Letter::One)),
                VLetter::Two => Ok(acc.push(Letter::Two)),
            })
    }
}

impl FromStr for PureFrontier {
    type Err = Error;

    fn from_str(s: &str) -> Result<PureFrontier> {
        PureFrontier::try_from(&s.parse::<VerticalWord>()?)
    }
}

impl fmt::Display for PureFrontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() && f.alternate() {
            return f.write_str("ε");
        }
        let s: String = self.iter().map(Letter::to_char).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for PureFrontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PureFrontier({self})")
    }
}

impl Serialize for PureFrontier {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Direct,
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontierFn {
    GammaS,
    GammaD,
    Theta,
    Pi,
}

impl FrontierFn {
    pub const ALL: [FrontierFn; 4] = [
        FrontierFn::GammaS,
        FrontierFn::GammaD,
        FrontierFn::Theta,
        FrontierFn::Pi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrontierFn::GammaS => "gamma-s",
            FrontierFn::GammaD => "gamma-d",
            FrontierFn::Theta => "theta",
            FrontierFn::Pi => "pi",
        }
    }
}

impl FromStr for FrontierFn {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<FrontierFn, String> {
        FrontierFn::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown frontier function {s:?}"))
    }
}

/// Images of one frontier under all four maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Images {
    pub gamma_s: PureFrontier,
    pub gamma_d: PureFrontier,
    pub theta: PureFrontier,
    pub pi: PureFrontier,
}

impl Images {
    const EMPTY: Images = Images {
        gamma_s: PureFrontier::EMPTY,
        gamma_d: PureFrontier::EMPTY,
        theta: PureFrontier::EMPTY,
        pi: PureFrontier::EMPTY,
    };

    pub fn get(&self, f: FrontierFn) -> PureFrontier {
        match f {
            FrontierFn::GammaS => self.gamma_s,
            FrontierFn::GammaD => self.gamma_d,
            FrontierFn::Theta => self.theta,
            FrontierFn::Pi => self.pi,
        }
    }
}

fn right_frontier_of_min(u0: &VerticalWord, rooting: Rooting) -> PureFrontier {
    if u0.is_empty() {
        return PureFrontier::EMPTY;
    }
    let w = min_word(u0, rooting).expect("non-empty frontier");
    let right = right_frontier(&w).expect("constructed words are C∞");
    PureFrontier::try_from(&right).expect("a right-minimal word has a 0-free right frontier")
}

/// Direct evaluation through word construction. Normative but slow for long inputs.
pub fn direct(f: FrontierFn, u0: &VerticalWord) -> PureFrontier {
    let gs = |u: &VerticalWord| right_frontier_of_min(u, Rooting::Single);
    let gd = |u: &VerticalWord| right_frontier_of_min(u, Rooting::Double);
    match f {
        FrontierFn::GammaS => gs(u0),
        FrontierFn::GammaD => gd(u0),
        FrontierFn::Theta => gs(&gd(u0).to_vertical()),
        FrontierFn::Pi => gd(&gs(u0).to_vertical()),
    }
}

pub fn direct_images(u0: &VerticalWord) -> Images {
    Images {
        gamma_s: direct(FrontierFn::GammaS, u0),
        gamma_d: direct(FrontierFn::GammaD, u0),
        theta: direct(FrontierFn::Theta, u0),
        pi: direct(FrontierFn::Pi, u0),
    }
}

/// Γs, Γd, Θ, Π over every 0-free frontier of length `0..=max_len`,
/// stored densely by `(length, key)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FrontierTables {
    max_len: usize,
    gamma_s: Vec<Vec<u32>>,
    gamma_d: Vec<Vec<u32>>,
    theta: Vec<Vec<u32>>,
    pi: Vec<Vec<u32>>,
}

impl fmt::Debug for FrontierTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrontierTables")
            .field("max_len", &self.max_len)
            .finish_non_exhaustive()
    }
}

/// Default ceiling on table memory.
pub const DEFAULT_TABLE_BUDGET: usize = 1 << 30;

/// Bytes needed for tables up to `max_len`.
pub fn table_bytes(max_len: usize) -> usize {
    4 * 4 * ((1usize << (max_len + 1)) - 1)
}

/// Tables at one length, used by [`step`].
struct Level<'a> {
    gamma_s: &'a [u32],
    gamma_d: &'a [u32],
    theta: &'a [u32],
    pi: &'a [u32],
}

/// Images of `prefix·x` from the images of `prefix` (length `n`) and the
/// tables at length `n`.
fn step(q: &Images, x: VLetter, t: &Level<'_>) -> Images {
    let n = q.gamma_s.len();
    let comp = |k: u64| k ^ mask(n);
    let gs = |k: u64| t.gamma_s[k as usize] as u64;
    let gd = |k: u64| t.gamma_d[k as usize] as u64;
    let th = |k: u64| t.theta[k as usize] as u64;
    let pi = |k: u64| t.pi[k as usize] as u64;
    let ext = |k: u64, l: Letter| PureFrontier::from_key(k, n).push(l);
    use Letter::{One, Two};

    let gd_u = q.gamma_d.key();
    let gdsgd = gd(gs(gd_u));
    match x {
        VLetter::One => Images {
            gamma_s: ext(gdsgd, One),
            gamma_d: ext(comp(gd(gs(gdsgd))), Two),
            theta: ext(th(q.theta.key()), Two),
            pi: ext(comp(q.pi.key()), Two),
        },
        VLetter::Two => Images {
            gamma_s: ext(comp(gd_u), Two),
            gamma_d: ext(gd(gs(gd(gs(comp(gd_u))))), One),
            theta: ext(th(comp(gs(q.gamma_s.key()))), One),
            pi: ext(pi(q.pi.key()), One),
        },
        VLetter::Zero => Images {
            gamma_s: ext(comp(gdsgd), Two),
            gamma_d: ext(gd(gs(gd(gs(comp(gdsgd))))), One),
            theta: ext(th(comp(q.theta.key())), One),
            pi: ext(q.pi.key(), One),
        },
    }
}

impl FrontierTables {
    pub fn build(max_len: usize) -> Result<FrontierTables> {
        FrontierTables::build_with_budget(max_len, DEFAULT_TABLE_BUDGET)
    }

    pub fn build_with_budget(max_len: usize, budget_bytes: usize) -> Result<FrontierTables> {
        if max_len > MAX_KEY_LEN {
            return Err(Error::CapacityExceeded(format!(
                "frontier tables support lengths up to {MAX_KEY_LEN}, asked for {max_len}"
            )));
        }
        let need = table_bytes(max_len);
        if need > budget_bytes {
            return Err(Error::CapacityExceeded(format!(
                "frontier tables up to length {max_len} need {need} bytes, budget is {budget_bytes}"
            )));
        }
        let mut t = FrontierTables {
            max_len: 0,
            gamma_s: vec![vec![0]],
            gamma_d: vec![vec![0]],
            theta: vec![vec![0]],
            pi: vec![vec![0]],
        };
        for n in 0..max_len {
            t.extend_level(n);
        }
        t.max_len = max_len;
        Ok(t)
    }

    fn level(&self, n: usize) -> Level<'_> {
        Level {
            gamma_s: &self.gamma_s[n],
            gamma_d: &self.gamma_d[n],
            theta: &self.theta[n],
            pi: &self.pi[n],
        }
    }

    fn images_at(&self, u: PureFrontier) -> Images {
        let (n, k) = (u.len(), u.key() as usize);
        let at = |table: &Vec<Vec<u32>>| PureFrontier::from_key(table[n][k] as u64, n);
        Images {
            gamma_s: at(&self.gamma_s),
            gamma_d: at(&self.gamma_d),
            theta: at(&self.theta),
            pi: at(&self.pi),
        }
    }

    /// Fills length `n + 1` from the complete length `n`.
    fn extend_level(&mut self, n: usize) {
        let size = 1usize << (n + 1);
        let mut next = [
            vec![0u32; size],
            vec![0u32; size],
            vec![0u32; size],
            vec![0u32; size],
        ];
        {
            let level = self.level(n);
            for u in PureFrontier::all_of_len(n) {
                let q = self.images_at(u);
                for x in [Letter::One, Letter::Two] {
                    let img = step(&q, x.into(), &level);
                    let k = u.push(x).key() as usize;
                    next[0][k] = img.gamma_s.key() as u32;
                    next[1][k] = img.gamma_d.key() as u32;
                    next[2][k] = img.theta.key() as u32;
                    next[3][k] = img.pi.key() as u32;
                }
            }
        }
        let [gs, gd, th, pi] = next;
        self.gamma_s.push(gs);
        self.gamma_d.push(gd);
        self.theta.push(th);
        self.pi.push(pi);
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of keys per function (lengths `1..=max_len`).
    pub fn keys_per_function(&self) -> usize {
        (1usize << (self.max_len + 1)) - 2
    }

    fn table(&self, f: FrontierFn) -> &Vec<Vec<u32>> {
        match f {
            FrontierFn::GammaS => &self.gamma_s,
            FrontierFn::GammaD => &self.gamma_d,
            FrontierFn::Theta => &self.theta,
            FrontierFn::Pi => &self.pi,
        }
    }

    /// Table lookup for a 0-free frontier; panics past `max_len`.
    #[inline]
    pub fn apply(&self, f: FrontierFn, u: PureFrontier) -> PureFrontier {
        let n = u.len();
        PureFrontier::from_key(self.table(f)[n][u.key() as usize] as u64, n)
    }

    pub fn gamma_s(&self, u: PureFrontier) -> PureFrontier {
        self.apply(FrontierFn::GammaS, u)
    }

    pub fn gamma_d(&self, u: PureFrontier) -> PureFrontier {
        self.apply(FrontierFn::GammaD, u)
    }

    pub fn theta(&self, u: PureFrontier) -> PureFrontier {
        self.apply(FrontierFn::Theta, u)
    }

    pub fn pi(&self, u: PureFrontier) -> PureFrontier {
        self.apply(FrontierFn::Pi, u)
    }

    /// Recursive evaluation on any frontier in Σ0++ of length up to `max_len + 1`.
    pub fn images(&self, u0: &VerticalWord) -> Result<Images> {
        if u0.len() > self.max_len + 1 {
            return Err(Error::CapacityExceeded(format!(
                "frontier of length {} needs tables up to length {}, have {}",
                u0.len(),
                u0.len() - 1,
                self.max_len
            )));
        }
        let mut q = Images::EMPTY;
        for (n, &x) in u0.letters().iter().enumerate() {
            q = step(&q, x, &self.level(n));
        }
        Ok(q)
    }

    pub fn eval(&self, f: FrontierFn, u0: &VerticalWord) -> Result<PureFrontier> {
        Ok(self.images(u0)?.get(f))
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(CACHE_MAGIC)?;
        out.write_all(&CACHE_VERSION.to_le_bytes())?;
        out.write_all(&(self.max_len as u32).to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 * self.keys_per_function());
        for f in FrontierFn::ALL {
            buf.clear();
            for level in &self.table(f)[1..] {
                for &v in level {
                    buf.extend_from_slice(&v.to_le_bytes());
                }
            }
            out.write_all(&buf)?;
        }
        out.flush()
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<FrontierTables> {
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        let mut header = [0u8; 12];
        input.read_exact(&mut header).map_err(io)?;
        if &header[..4] != CACHE_MAGIC {
            return Err(Error::Cache("bad magic, expected CINF".into()));
        }
        let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported format version {version}")));
        }
        let max_len = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
        if max_len > MAX_KEY_LEN {
            return Err(Error::Cache(format!("height {max_len} out of range")));
        }
        let mut t = FrontierTables {
            max_len,
            gamma_s: Vec::new(),
            gamma_d: Vec::new(),
            theta: Vec::new(),
            pi: Vec::new(),
        };
        let mut word = [0u8; 4];
        for f in FrontierFn::ALL {
            let mut levels = vec![vec![0u32]];
            for n in 1..=max_len {
                let mut level = Vec::with_capacity(1 << n);
                for _ in 0..1usize << n {
                    input.read_exact(&mut word).map_err(io)?;
                    let v = u32::from_le_bytes(word);
                    if (v as u64) >> n != 0 {
                        return Err(Error::Cache(format!(
                            "{} entry {v} does not fit length {n}",
                            f.name()
                        )));
                    }
                    level.push(v);
                }
                levels.push(level);
            }
            match f {
                FrontierFn::GammaS => t.gamma_s = levels,
                FrontierFn::GammaD => t.gamma_d = levels,
                FrontierFn::Theta => t.theta = levels,
                FrontierFn::Pi => t.pi = levels,
            }
        }
        if input.read(&mut word).map_err(io)? != 0 {
            return Err(Error::Cache("trailing bytes after the last section".into()));
        }
        Ok(t)
    }
}

pub const CACHE_MAGIC: &[u8; 4] = b"CINF";
pub const CACHE_VERSION: u32 = 1;

/// Evaluates one map; recursive mode builds the tables it needs.
pub fn evaluate(f: FrontierFn, u0: &VerticalWord, mode: Mode) -> Result<PureFrontier> {
    match mode {
        Mode::Direct => Ok(direct(f, u0)),
        Mode::Recursive => {
            let tables = FrontierTables::build(u0.len().saturating_sub(1))?;
            tables.eval(f, u0)
        }
    }
}

pub fn gamma_s(u0: &VerticalWord, mode: Mode) -> Result<PureFrontier> {
    evaluate(FrontierFn::GammaS, u0, mode)
}

pub fn gamma_d(u0: &VerticalWord, mode: Mode) -> Result<PureFrontier> {
    evaluate(FrontierFn::GammaD, u0, mode)
}

pub fn theta(u0: &VerticalWord, mode: Mode) -> Result<PureFrontier> {
    evaluate(FrontierFn::Theta, u0, mode)
}

pub fn pi(u0: &VerticalWord, mode: Mode) -> Result<PureFrontier> {
    evaluate(FrontierFn::Pi, u0, mode)
}

pub fn tabulate(k: usize) -> Result<FrontierTables> {
    if k == 0 {
        return Err(Error::CapacityExceeded("tabulation needs k ≥ 1".into()));
    }
    FrontierTables::build(k)
}
