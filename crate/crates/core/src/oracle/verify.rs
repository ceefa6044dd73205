//! Differential checks of the fast paths against brute force over all small inputs.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frontier::{direct_images, FrontierTables, Images, PureFrontier};
use crate::graph::MinimalGraphOf;
use crate::oracle::{enumerate_naive, enumerate_up_to, enumerate_with, EnumerationConfig};
use crate::vertical::{
    decode, encode, left_frontier_of, min_word, Rooting, VLetter, VerticalWord,
};
use crate::word::{
    derivative, is_cinfty, minimal_part, single_rooted_minimal_factors, tower, DerivativeTower,
    Letter, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of inputs examined.
    pub checked: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs `test` on every item in parallel; the counterexample is the first failing
/// item in input order.
fn run_check<T: Sync>(name: &str, items: &[T], test: impl Fn(&T) -> Option<String> + Sync) -> CheckResult {
    #[allow(clippy::redundant_closure)]
    let counterexample = items.par_iter().find_map_first(|item| test(item));
    CheckResult {
        name: name.to_string(),
        passed: counterexample.is_none(),
        checked: items.len() as u64,
        counterexample,
    }
}

fn single(name: &str, checked: u64, counterexample: Option<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: counterexample.is_none(),
        checked,
        counterexample,
    }
}

const LETTERS: [Letter; 2] = [Letter::One, Letter::Two];

fn begins_distinct(w: &Word) -> bool {
    w.len() >= 2 && w.get(0) != w.get(1)
}

fn ends_distinct(w: &Word) -> bool {
    let n = w.len();
    n >= 2 && w.get(n - 1) != w.get(n - 2)
}

/// No level below the root can be lengthened on the chosen side into another
/// primitive of the level above it.
fn longest_primitives(t: &DerivativeTower, left: bool) -> bool {
    t.levels().windows(2).all(|pair| {
        let (p, v) = (&pair[0], &pair[1]);
        LETTERS.iter().all(|&x| {
            let q = if left { p.prepended(x) } else { p.appended(x) };
            derivative(&q).as_ref() != Ok(v)
        })
    })
}

fn frontiers_pure(t: &DerivativeTower) -> (bool, bool) {
    (
        left_frontier_of(t).is_pure(),
        left_frontier_of(&t.reversed()).is_pure(),
    )
}

/// Single-rooted minimal factors of full height, by recomputing the tower of every factor.
fn brute_minimal_factors(w: &Word, k: usize) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    for s in 0..n {
        for e in s + 1..=n {
            let Ok(t) = tower(&w.factor(s, e)) else { continue };
            if t.height() == k && t.is_single_rooted() && frontiers_pure(&t) == (true, true) {
                out.push((s, e));
            }
        }
    }
    out
}

/// Checks over a list of C∞-words.
pub fn word_checks(words: &[Word]) -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(run_check("decode-encode-roundtrip", words, |w| {
        let rep = encode(w).ok()?;
        match decode(&rep) {
            Ok(back) if &back == w => None,
            other => Some(format!("{w}: {rep} decodes to {other:?}")),
        }
    }));

    let mut seen: HashMap<String, &Word> = HashMap::with_capacity(words.len());
    let mut clash = None;
    for w in words {
        let rep = encode(w).map(|r| r.to_string()).unwrap_or_default();
        if let Some(prev) = seen.insert(rep.clone(), w) {
            clash = Some(format!("{prev} and {w} share {rep}"));
            break;
        }
    }
    out.push(single("encode-injectivity", words.len() as u64, clash));

    out.push(run_check("unique-extension", words, |w| {
        let t = tower(w).ok()?;
        let expected = if t.is_single_rooted() { 1 } else { 2 };
        let brute = brute_minimal_factors(w, t.height());
        let fast: Vec<(usize, usize)> = single_rooted_minimal_factors(w)
            .ok()?
            .into_iter()
            .map(|f| (f.offset, f.offset + f.word.len()))
            .collect();
        (brute.len() != expected || fast != brute)
            .then(|| format!("{w}: expected {expected} factors, brute force {brute:?}, scan {fast:?}"))
    }));

    out.push(run_check("one-letter-extension-counts", words, |w| {
        let right = LETTERS.iter().filter(|&&x| is_cinfty(&w.appended(x))).count();
        let left = LETTERS.iter().filter(|&&x| is_cinfty(&w.prepended(x))).count();
        (!(1..=2).contains(&right) || !(1..=2).contains(&left))
            .then(|| format!("{w}: {left} left and {right} right extensions"))
    }));

    out.push(run_check("weakley-equivalence", words, |w| {
        let t = tower(w).ok()?;
        let ext = |x: Letter, y: Option<Letter>| {
            let mut e = w.prepended(x);
            if let Some(y) = y {
                e.push(y);
            }
            is_cinfty(&e)
        };
        let left_double = ext(Letter::One, None) && ext(Letter::Two, None);
        let right_double = LETTERS.iter().all(|&y| is_cinfty(&w.appended(y)));
        let full = LETTERS
            .iter()
            .all(|&x| LETTERS.iter().all(|&y| ext(x, Some(y))));
        let left_max = longest_primitives(&t, true);
        let right_max = longest_primitives(&t, false);
        let double_max = !t.is_single_rooted() && left_max && right_max;
        let longer = || t.levels().iter().filter(|l| l.len() > 1);
        let left_shape = longer().all(begins_distinct);
        let right_shape = longer().all(ends_distinct);
        let full_shape = t
            .levels()
            .iter()
            .all(|l| begins_distinct(l) && ends_distinct(l));
        let agree = |a: bool, b: bool, c: bool| a == b && b == c;
        (!agree(full, double_max, full_shape)
            || !agree(left_double, left_max, left_shape)
            || !agree(right_double, right_max, right_shape))
        .then(|| {
            format!(
                "{w}: full {full}/{double_max}/{full_shape}, left {left_double}/{left_max}/{left_shape}, right {right_double}/{right_max}/{right_shape}"
            )
        })
    }));

    out.push(run_check("min-max-lemma", words, |w| {
        let t = tower(w).ok()?;
        let longer = || t.levels().iter().filter(|l| l.len() > 1);
        let right_max = longer().all(ends_distinct);
        let left_max = longer().all(begins_distinct);
        for x in LETTERS {
            let right_min = tower(&w.appended(x)).ok().map(|t| frontiers_pure(&t).1);
            let left_min = tower(&w.prepended(x)).ok().map(|t| frontiers_pure(&t).0);
            if right_max && right_min != Some(true) {
                return Some(format!("{w} is right maximal but {w}{x:?} is not right minimal"));
            }
            if left_max && left_min != Some(true) {
                return Some(format!("{w} is left maximal but {x:?}{w} is not left minimal"));
            }
            if right_min == Some(true) && !right_max {
                return Some(format!("{w}{x:?} is right minimal but {w} is not right maximal"));
            }
            if left_min == Some(true) && !left_max {
                return Some(format!("{x:?}{w} is left minimal but {w} is not left maximal"));
            }
        }
        None
    }));

    let set: HashSet<&Word> = words.iter().collect();
    out.push(run_check("factor-closure", words, |w| {
        let n = w.len();
        if n < 2 {
            return None;
        }
        let (p, s) = (w.factor(0, n - 1), w.factor(1, n));
        (!set.contains(&p) || !set.contains(&s)).then(|| format!("{w}: a factor of length {} is missing", n - 1))
    }));

    out
}

/// Backtracking enumeration (incremental and recomputed) against naive filtering.
pub fn enumeration_checks(n_max: usize) -> Result<Vec<CheckResult>> {
    let lengths: Vec<usize> = (1..=n_max.min(16)).collect();
    let naive = run_check("backtracking-vs-naive", &lengths, |&n| {
        let fast = enumerate_with(EnumerationConfig::default(), n).ok()?;
        (fast != enumerate_naive(n).ok()?).then(|| format!("length {n}"))
    });
    let config = |incremental| EnumerationConfig {
        max_length: n_max.max(1),
        incremental,
    };
    let lengths: Vec<usize> = (1..=n_max.min(22)).collect();
    let modes = run_check("incremental-vs-recompute", &lengths, |&n| {
        let a = enumerate_with(config(true), n).ok()?;
        let b = enumerate_with(config(false), n).ok()?;
        (a != b).then(|| format!("length {n}"))
    });
    Ok(vec![naive, modes])
}

/// Single-rooted minimal words among `by_length` (index = length) number 2^k at
/// every height k whose longest such word fits.
pub fn census_check(by_length: &[Vec<Word>]) -> Result<CheckResult> {
    let n_max = by_length.len().saturating_sub(1);
    let mut found: HashMap<usize, HashSet<Word>> = HashMap::new();
    for w in by_length.iter().flatten().filter(|w| !w.is_empty()) {
        let t = tower(w)?;
        if t.is_single_rooted() && frontiers_pure(&t) == (true, true) {
            found.entry(t.height()).or_default().insert(w.clone());
        }
    }
    let mut checked = 0;
    for k in 1.. {
        let expected: HashSet<Word> = PureFrontier::all_of_len(k)
            .map(|u| min_word(&u.to_vertical(), Rooting::Single))
            .collect::<Result<_>>()?;
        if expected.iter().any(|w| w.len() > n_max) {
            break;
        }
        checked += 1;
        let got = found.remove(&k).unwrap_or_default();
        if got.len() != 1 << k || got != expected {
            return Ok(single(
                "single-rooted-minimal-census",
                checked,
                Some(format!("height {k}: {} words found, {} expected", got.len(), 1u64 << k)),
            ));
        }
    }
    Ok(single("single-rooted-minimal-census", checked, None))
}

/// All words of Σ0++ (first letter 1 or 2) with length `1..=max_len`.
pub fn sigma0_words(max_len: usize) -> Vec<VerticalWord> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<VLetter>> = vec![vec![VLetter::One], vec![VLetter::Two]];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            out.push(VerticalWord::new(w.clone()).expect("starts with 1 or 2"));
            for x in [VLetter::Zero, VLetter::One, VLetter::Two] {
                let mut e = w.clone();
                e.push(x);
                next.push(e);
            }
        }
        layer = next;
    }
    out
}

/// All 0-free frontiers with length `1..=max_len`.
pub fn pure_words(max_len: usize) -> Vec<PureFrontier> {
    (1..=max_len).flat_map(PureFrontier::all_of_len).collect()
}

fn recursion_vs_direct(name: &str, tables: &FrontierTables, items: &[VerticalWord]) -> CheckResult {
    run_check(name, items, |u| {
        let direct = direct_images(u);
        match tables.images(u) {
            Ok(rec) if rec == direct => None,
            other => Some(format!("{u}: direct {direct:?}, recursive {other:?}")),
        }
    })
}

/// Table-driven evaluation against construction of the minimal words.
pub fn frontier_checks(pure_max: usize, sigma0_max: usize) -> Result<Vec<CheckResult>> {
    let tables = FrontierTables::build(pure_max.max(sigma0_max).saturating_sub(1))?;
    let pure: Vec<VerticalWord> = pure_words(pure_max).into_iter().map(PureFrontier::to_vertical).collect();
    Ok(vec![
        recursion_vs_direct("recursive-vs-direct-pure", &tables, &pure),
        recursion_vs_direct("recursive-vs-direct-sigma0", &tables, &sigma0_words(sigma0_max)),
    ])
}

/// Direct images of every 0-free frontier up to a length, computed by construction.
struct DirectTable {
    by_len: Vec<Vec<Images>>,
}

impl DirectTable {
    fn build(max_len: usize) -> DirectTable {
        let by_len = (0..=max_len)
            .map(|n| {
                PureFrontier::all_of_len(n)
                    .collect::<Vec<_>>()
                    .par_iter()
                    .map(|u| direct_images(&u.to_vertical()))
                    .collect()
            })
            .collect();
        DirectTable { by_len }
    }

    fn of(&self, u: PureFrontier) -> &Images {
        &self.by_len[u.len()][u.key() as usize]
    }
    fn gs(&self, u: PureFrontier) -> PureFrontier {
        self.of(u).gamma_s
    }
    fn gd(&self, u: PureFrontier) -> PureFrontier {
        self.of(u).gamma_d
    }
    fn th(&self, u: PureFrontier) -> PureFrontier {
        self.of(u).theta
    }
    fn pi(&self, u: PureFrontier) -> PureFrontier {
        self.of(u).pi
    }
}

fn extended(u: &VerticalWord, x: VLetter) -> VerticalWord {
    let mut e = u.clone();
    e.push(x);
    e
}

/// The twelve one-letter recursion identities, every side evaluated by construction,
/// for each `u` in `words` (ε included implicitly for the 0-free letters).
pub fn recursion_identities(words: &[VerticalWord]) -> Vec<CheckResult> {
    use Letter::{One as L1, Two as L2};
    let max_len = words.iter().map(VerticalWord::len).max().unwrap_or(0);
    let d = DirectTable::build(max_len);
    let mut items: Vec<VerticalWord> = vec![VerticalWord::empty()];
    items.extend(words.iter().cloned());
    let prepared: Vec<(VerticalWord, Images, [Option<Images>; 3])> = items
        .into_par_iter()
        .map(|u| {
            let base = direct_images(&u);
            let ext = [VLetter::Zero, VLetter::One, VLetter::Two]
                .map(|x| (!(u.is_empty() && x == VLetter::Zero)).then(|| direct_images(&extended(&u, x))));
            (u, base, ext)
        })
        .collect();

    type Rhs<'a> = Box<dyn Fn(&Images) -> PureFrontier + Sync + 'a>;
    let gdsgd = |q: &Images| d.gd(d.gs(q.gamma_d));
    let identities: Vec<(&str, usize, crate::frontier::FrontierFn, Rhs)> = {
        use crate::frontier::FrontierFn::*;
        vec![
            ("gamma-s-1", 1, GammaS, Box::new(|q| gdsgd(q).push(L1))),
            ("gamma-s-2", 2, GammaS, Box::new(|q| q.gamma_d.complement().push(L2))),
            ("gamma-s-0", 0, GammaS, Box::new(|q| gdsgd(q).complement().push(L2))),
            ("gamma-d-1", 1, GammaD, Box::new(|q| d.gd(d.gs(gdsgd(q))).complement().push(L2))),
            ("gamma-d-2", 2, GammaD, Box::new(|q| d.gd(d.gs(d.gd(d.gs(q.gamma_d.complement())))).push(L1))),
            ("gamma-d-0", 0, GammaD, Box::new(|q| d.gd(d.gs(d.gd(d.gs(gdsgd(q).complement())))).push(L1))),
            ("pi-1", 1, Pi, Box::new(|q| q.pi.complement().push(L2))),
            ("pi-2", 2, Pi, Box::new(|q| d.pi(q.pi).push(L1))),
            ("pi-0", 0, Pi, Box::new(|q| q.pi.push(L1))),
            ("theta-1", 1, Theta, Box::new(|q| d.th(q.theta).push(L2))),
            ("theta-2", 2, Theta, Box::new(|q| d.th(d.gs(q.gamma_s).complement()).push(L1))),
            ("theta-2-alt", 2, Theta, Box::new(|q| d.gs(q.gamma_d.complement()).push(L1))),
            ("theta-0", 0, Theta, Box::new(|q| d.th(q.theta.complement()).push(L1))),
        ]
    };
    identities
        .iter()
        .map(|(name, x, f, rhs)| {
            run_check(&format!("identity-{name}"), &prepared, |(u, base, ext)| {
                let lhs = ext[*x].as_ref()?.get(*f);
                let rhs = rhs(base);
                (lhs != rhs).then(|| format!("u={u:#}: {lhs} vs {rhs}"))
            })
        })
        .collect()
}

/// The four 0-free recursions for Π, Γs and Γd, evaluated by construction.
pub fn composition_identities(max_len: usize) -> Vec<CheckResult> {
    let d = DirectTable::build(max_len + 1);
    let nodes: Vec<PureFrontier> = (0..=max_len).flat_map(PureFrontier::all_of_len).collect();
    let longer = |u: PureFrontier, x: Letter| u.push(x);
    vec![
        run_check("composition-pi-1", &nodes, |&u| {
            let (l, r) = (d.pi(longer(u, Letter::One)), d.pi(u).complement().push(Letter::Two));
            (l != r).then(|| format!("u={u:#}: {l} vs {r}"))
        }),
        run_check("composition-pi-2", &nodes, |&u| {
            let (l, r) = (d.pi(longer(u, Letter::Two)), d.pi(d.pi(u)).push(Letter::One));
            (l != r).then(|| format!("u={u:#}: {l} vs {r}"))
        }),
        run_check("composition-gamma-s", &nodes, |&u| {
            LETTERS.iter().find_map(|&x| {
                let (l, r) = (d.gs(longer(u, x)), d.pi(d.gs(u).push(x.complement())));
                (l != r).then(|| format!("u={u:#}, x={}: {l} vs {r}", x.to_char()))
            })
        }),
        run_check("composition-gamma-d", &nodes, |&u| {
            let (l, r) = (d.gd(u), d.pi(d.gs(u)));
            (l != r).then(|| format!("u={u:#}: {l} vs {r}"))
        }),
    ]
}

/// Exact number of label words in Σ0++ of each length that walk from the origin
/// to each node, by walking every label word.
fn brute_path_counts(tables: &FrontierTables, max_len: usize) -> Vec<Vec<u64>> {
    let mut counts: Vec<Vec<u64>> = (0..=max_len).map(|n| vec![0; 1 << n]).collect();
    fn go(tables: &FrontierTables, u: PureFrontier, max_len: usize, counts: &mut Vec<Vec<u64>>) {
        counts[u.len()][u.key() as usize] += 1;
        if u.len() == max_len {
            return;
        }
        go(tables, u.push(Letter::One), max_len, counts);
        go(tables, u.push(Letter::Two), max_len, counts);
        if !u.is_empty() {
            go(tables, tables.theta(u).push(Letter::Two), max_len, counts);
        }
    }
    go(tables, PureFrontier::EMPTY, max_len, &mut counts);
    counts
}

fn walk_label(tables: &FrontierTables, label: &VerticalWord) -> Option<PureFrontier> {
    let mut u = PureFrontier::EMPTY;
    for &x in label.letters() {
        u = match x {
            VLetter::One => u.push(Letter::One),
            VLetter::Two => u.push(Letter::Two),
            VLetter::Zero if !u.is_empty() => tables.theta(u).push(Letter::Two),
            VLetter::Zero => return None,
        };
    }
    Some(u)
}

/// The level DP of G against direct construction and path enumeration.
pub fn graph_checks(k_max: usize) -> Result<Vec<CheckResult>> {
    let g = MinimalGraphOf::<u64>::build(k_max)?;
    let t = g.tables();
    let nodes = pure_words(k_max);
    let inner = pure_words(k_max.saturating_sub(1));
    let len = |u| g.min_word_length(u).expect("within height");
    let direct_len = |u: PureFrontier, r| min_word(&u.to_vertical(), r).map(|w| w.len() as u64).unwrap_or(0);
    let mut out = vec![
        run_check("dp-vs-direct-single", &nodes, |&u| {
            let (a, b) = (len(u), direct_len(u, Rooting::Single));
            (a != b).then(|| format!("U={u}: dp {a}, direct {b}"))
        }),
        run_check("dp-vs-direct-double", &nodes, |&u| {
            let a = g.double_rooted_length(u).expect("within height");
            let b = direct_len(u, Rooting::Double);
            (a != b).then(|| format!("U={u}: dp {a}, direct {b}"))
        }),
        run_check("length-symmetry", &nodes, |&u| {
            (len(u) != len(t.gamma_s(u)) || len(t.theta(u)) != len(t.gamma_d(u)))
                .then(|| format!("U={u}"))
        }),
        run_check("complement-symmetry", &inner, |&u| {
            let (a, b) = (len(u.push(Letter::Two)), len(u.complement().push(Letter::Two)));
            (a != b).then(|| format!("U={u}: {a} vs {b}"))
        }),
        run_check("zero-one-twin", &inner, |&u| {
            let zero = min_word(&extended(&u.to_vertical(), VLetter::Zero), Rooting::Single).ok()?;
            let one = len(u.push(Letter::One));
            let n = zero.len();
            let twin = min_word(&u.push(Letter::One).to_vertical(), Rooting::Single).ok()?;
            let differ_last_only = n == twin.len()
                && n > 0
                && zero.factor(0, n - 1) == twin.factor(0, n - 1)
                && zero.get(n - 1) != twin.get(n - 1);
            (n as u64 != one || !differ_last_only).then(|| format!("U={u}: {zero} vs {twin}"))
        }),
    ];

    let brute = brute_path_counts(t, k_max);
    out.push(run_check("path-count-vs-enumeration", &nodes, |&u| {
        let (a, b) = (g.path_count(u).expect("within height"), brute[u.len()][u.key() as usize]);
        (a != b).then(|| format!("U={u}: dp {a}, enumerated {b}"))
    }));

    let small = pure_words(k_max.min(10));
    out.push(run_check("paths-to", &small, |&u| {
        let paths = g.paths_to(u, usize::MAX).ok()?;
        let count = g.path_count(u).ok()?;
        if paths.len() as u64 != count {
            return Some(format!("U={u}: {} labels, count {count}", paths.len()));
        }
        paths
            .iter()
            .find(|p| p.len() != u.len() || walk_label(t, p) != Some(u))
            .map(|p| format!("U={u}: label {p} does not lead to U"))
    }));
    Ok(out)
}

/// The minimal part of the right 0-extension of each single-rooted minimal word
/// is the single-rooted minimal word with left frontier Θ(U)2.
pub fn right_extension_check(max_len: usize) -> Result<CheckResult> {
    let tables = FrontierTables::build(max_len)?;
    let nodes = pure_words(max_len);
    Ok(run_check("right-extension-theorem", &nodes, |&u| {
        let zero_ext = min_word(&extended(&u.to_vertical(), VLetter::Zero), Rooting::Single).ok()?;
        let part = minimal_part(&zero_ext).ok()?.part.word;
        let expected = min_word(&tables.theta(u).push(Letter::Two).to_vertical(), Rooting::Single).ok()?;
        (part != expected).then(|| format!("U={u}: minimal part {part}, expected {expected}"))
    }))
}

/// Runs every differential check: words up to `n_max`, frontiers up to `k_max`.
pub fn verify_suite(n_max: usize, k_max: usize) -> Result<VerificationReport> {
    if n_max < 4 || k_max < 2 {
        return Err(Error::CapacityExceeded(format!(
            "verification needs n_max >= 4 and k_max >= 2, got {n_max} and {k_max}"
        )));
    }
    if k_max > 16 {
        return Err(Error::CapacityExceeded(format!("k_max {k_max} above 16")));
    }
    let by_length = enumerate_up_to(n_max)?;
    let words: Vec<Word> = by_length.iter().skip(1).flatten().cloned().collect();
    let mut checks = word_checks(&words);
    checks.extend(enumeration_checks(n_max)?);
    checks.push(census_check(&by_length)?);
    checks.extend(frontier_checks(k_max, k_max.min(8))?);
    let sigma0 = sigma0_words(k_max.min(8));
    checks.extend(recursion_identities(&sigma0));
    checks.extend(composition_identities(k_max));
    checks.extend(graph_checks(k_max)?);
    checks.push(right_extension_check(k_max.min(10))?);
    Ok(VerificationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = verify_suite(12, 6).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
            assert!(c.checked > 0, "{}", c.name);
        }
    }

    #[test]
    fn sigma0_counts() {
        // 2·3^(n-1) words of each length n
        assert_eq!(sigma0_words(3).len(), 2 + 6 + 18);
    }

    #[test]
    fn failing_check_carries_input() {
        let words: Vec<Word> = ["1", "12", "121"].iter().map(|s| s.parse().unwrap()).collect();
        let c = run_check("demo", &words, |w| (w.len() > 1).then(|| w.to_string()));
        assert!(!c.passed);
        assert_eq!(c.counterexample.as_deref(), Some("12"));
    }

    #[test]
    fn census_detects_missing_word() {
        let mut by_length = enumerate_up_to(8).unwrap();
        by_length[2].retain(|w| w.to_string() != "11");
        assert!(!census_check(&by_length).unwrap().passed);
    }
}
