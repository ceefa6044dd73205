//! Empirical probes of open conjectures about the graph G. A verdict is a
//! finite observation, never a proof.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frontier::{FrontierTables, PureFrontier};
use crate::graph::MinimalGraphOf;
use crate::oracle::{walk, EnumerationConfig, MAX_ENUMERATION_LENGTH};
use crate::vertical::{min_word, Rooting};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    ExhaustedBudget,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::ExhaustedBudget => "exhausted-budget",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub nodes: Vec<String>,
    pub labels: Vec<String>,
    pub lengths: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl ProbeReport {
    fn new(probe: &str, parameters: Value) -> ProbeReport {
        let parameters = match parameters {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        ProbeReport {
            probe: probe.to_string(),
            parameters,
            verdict: Verdict::Holds,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }
}

fn node_name(u: PureFrontier) -> String {
    format!("{u:#}")
}

/// Dense bitset over the nodes of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layer {
    len: usize,
    bits: Vec<u64>,
}

impl Layer {
    fn empty(len: usize) -> Layer {
        Layer {
            len,
            bits: vec![0; (1usize << len).div_ceil(64)],
        }
    }

    fn single(u: PureFrontier) -> Layer {
        let mut l = Layer::empty(u.len());
        l.insert(u.key());
        l
    }

    fn insert(&mut self, key: u64) {
        self.bits[(key / 64) as usize] |= 1 << (key % 64);
    }

    fn contains(&self, key: u64) -> bool {
        self.bits[(key / 64) as usize] >> (key % 64) & 1 == 1
    }

    fn keys(&self) -> impl Iterator<Item = u64> + '_ {
        let size = 1u64 << self.len;
        self.bits.iter().enumerate().flat_map(move |(i, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| i as u64 * 64 + b)
                .filter(move |&k| k < size)
        })
    }

    fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Nodes one edge further on.
    fn forward(&self, tables: &FrontierTables) -> Layer {
        let mut next = Layer::empty(self.len + 1);
        for key in self.keys() {
            next.insert(key << 1);
            next.insert(key << 1 | 1);
            if self.len > 0 {
                let th = tables.theta(PureFrontier::from_key(key, self.len));
                next.insert(th.key() << 1 | 1);
            }
        }
        next
    }
}

const UNREACHED: u64 = u64::MAX;

/// Nodes reachable from one start after a fixed number of steps, each with the
/// lexicographically least label (0 < 1 < 2) among the paths reaching it.
#[derive(Debug, Clone)]
struct LabeledLayer {
    len: usize,
    // Dense over keys: (rank of parent << 2) | edge code, or UNREACHED.
    best: Vec<u64>,
    // Dense over keys: rank of the node's least label.
    rank: Vec<u32>,
    // Keys in rank order.
    order: Vec<u32>,
}

impl LabeledLayer {
    fn start(u: PureFrontier) -> LabeledLayer {
        let size = 1usize << u.len();
        let mut best = vec![UNREACHED; size];
        let mut rank = vec![u32::MAX; size];
        best[u.key() as usize] = 0;
        rank[u.key() as usize] = 0;
        LabeledLayer {
            len: u.len(),
            best,
            rank,
            order: vec![u.key() as u32],
        }
    }

    fn reached(&self, key: u64) -> bool {
        self.best[key as usize] != UNREACHED
    }

    fn forward(&self, tables: &FrontierTables) -> LabeledLayer {
        let size = 1usize << (self.len + 1);
        let mut best = vec![UNREACHED; size];
        for (r, &key) in self.order.iter().enumerate() {
            let key = key as u64;
            let base = (r as u64) << 2;
            let mut offer = |child: u64, code: u64| {
                let slot = &mut best[child as usize];
                *slot = (*slot).min(base | code);
            };
            if self.len > 0 {
                let th = tables.theta(PureFrontier::from_key(key, self.len));
                offer(th.key() << 1 | 1, 0);
            }
            offer(key << 1, 1);
            offer(key << 1 | 1, 2);
        }
        let mut order: Vec<u32> = (0..size as u32).filter(|&k| best[k as usize] != UNREACHED).collect();
        order.sort_by_key(|&k| best[k as usize]);
        let mut rank = vec![u32::MAX; size];
        for (r, &k) in order.iter().enumerate() {
            rank[k as usize] = r as u32;
        }
        LabeledLayer {
            len: self.len + 1,
            best,
            rank,
            order,
        }
    }
}

fn label_of(layers: &[LabeledLayer], key: u64) -> String {
    let mut out = Vec::with_capacity(layers.len());
    let mut key = key;
    for d in (1..layers.len()).rev() {
        let v = layers[d].best[key as usize];
        out.push(match v & 3 {
            0 => '0',
            1 => '1',
            _ => '2',
        });
        key = layers[d - 1].order[(v >> 2) as usize] as u64;
    }
    out.iter().rev().collect()
}

/// Meet-in-the-middle search for common continuations of two nodes, with the
/// forward layers of every start node cached across queries.
#[derive(Debug)]
pub struct GlueingSearcher {
    tables: FrontierTables,
    cache: BTreeMap<(usize, u64), Vec<LabeledLayer>>,
}

/// Outcome of one glueing query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Glueing {
    Found {
        meet: PureFrontier,
        first: String,
        second: String,
    },
    Exhausted,
}

impl GlueingSearcher {
    /// Supports start nodes up to `max_node_len` and continuations up to `budget` letters.
    pub fn new(max_node_len: usize, budget: usize) -> Result<GlueingSearcher> {
        let need = (max_node_len + budget).saturating_sub(1).max(1);
        if max_node_len + budget > 26 {
            return Err(Error::CapacityExceeded(format!(
                "glueing search to node length {} (cap 26)",
                max_node_len + budget
            )));
        }
        Ok(GlueingSearcher {
            tables: FrontierTables::build(need)?,
            cache: BTreeMap::new(),
        })
    }

    fn ensure(&mut self, u: PureFrontier, depth: usize) {
        let tables = &self.tables;
        let layers = self
            .cache
            .entry((u.len(), u.key()))
            .or_insert_with(|| vec![LabeledLayer::start(u)]);
        while layers.len() <= depth {
            let next = layers.last().unwrap().forward(tables);
            layers.push(next);
        }
    }

    pub fn search(&mut self, a: PureFrontier, b: PureFrontier, budget: usize) -> Result<Glueing> {
        let reach = self.tables.max_len() + 1;
        if a.len().max(b.len()) + budget > reach {
            return Err(Error::CapacityExceeded(format!(
                "glueing search needs node length {}, searcher covers {reach}",
                a.len().max(b.len()) + budget
            )));
        }
        let top = a.len().max(b.len());
        for target in top..=a.len().min(b.len()) + budget {
            let (da, db) = (target - a.len(), target - b.len());
            if da.max(db) > budget {
                break;
            }
            self.ensure(a, da);
            self.ensure(b, db);
            let la = &self.cache[&(a.len(), a.key())][..=da];
            let lb = &self.cache[&(b.len(), b.key())][..=db];
            let (fa, fb) = (&la[da], &lb[db]);
            let meet = fa
                .order
                .iter()
                .map(|&k| k as u64)
                .filter(|&k| fb.reached(k))
                .min_by_key(|&k| (fa.rank[k as usize], fb.rank[k as usize]));
            if let Some(z) = meet {
                return Ok(Glueing::Found {
                    meet: PureFrontier::from_key(z, target),
                    first: label_of(la, z),
                    second: label_of(lb, z),
                });
            }
        }
        Ok(Glueing::Exhausted)
    }
}

fn glueing_witness(a: PureFrontier, b: PureFrontier, g: &Glueing) -> Witness {
    match g {
        Glueing::Found { meet, first, second } => Witness {
            kind: "glueing".into(),
            nodes: vec![node_name(a), node_name(b), node_name(*meet)],
            labels: vec![first.clone(), second.clone()],
            lengths: vec![first.len() as u64, second.len() as u64],
        },
        Glueing::Exhausted => Witness {
            kind: "no-glueing-within-budget".into(),
            nodes: vec![node_name(a), node_name(b)],
            labels: Vec::new(),
            lengths: Vec::new(),
        },
    }
}

/// Looks for a node `Z` reachable from `a` by continuation `V1` and from `b` by `V2`.
pub fn glueing_search(a: PureFrontier, b: PureFrontier, budget: usize) -> Result<ProbeReport> {
    let mut s = GlueingSearcher::new(a.len().max(b.len()), budget)?;
    let g = s.search(a, b, budget)?;
    let mut report = ProbeReport::new(
        "glueing",
        json!({"u1": node_name(a), "u2": node_name(b), "budget": budget}),
    );
    report.verdict = match g {
        Glueing::Found { .. } => Verdict::Holds,
        Glueing::Exhausted => Verdict::ExhaustedBudget,
    };
    report.witnesses.push(glueing_witness(a, b, &g));
    Ok(report)
}

/// Glueing search over every unordered pair of nodes of length at most `max_len`.
pub fn glueing_sweep(max_len: usize, budget: usize) -> Result<ProbeReport> {
    let mut s = GlueingSearcher::new(max_len, budget)?;
    let nodes: Vec<PureFrontier> = (0..=max_len).flat_map(PureFrontier::all_of_len).collect();
    let mut report = ProbeReport::new("glueing-sweep", json!({"max_len": max_len, "budget": budget}));
    let mut deepest: Option<(PureFrontier, PureFrontier, Glueing)> = None;
    let mut pairs = 0u64;
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i..] {
            pairs += 1;
            let g = s.search(a, b, budget)?;
            match &g {
                Glueing::Exhausted => {
                    report.verdict = Verdict::ExhaustedBudget;
                    report.witnesses.push(glueing_witness(a, b, &g));
                    report.notes.push(format!("{pairs} pairs examined before exhausting the budget"));
                    return Ok(report);
                }
                Glueing::Found { first, second, .. } => {
                    let depth = first.len().max(second.len());
                    let beats = match &deepest {
                        Some((_, _, Glueing::Found { first: f, second: s2, .. })) => depth > f.len().max(s2.len()),
                        _ => true,
                    };
                    if beats {
                        deepest = Some((a, b, g.clone()));
                    }
                }
            }
        }
    }
    report.notes.push(format!("all {pairs} pairs glue within depth {budget}"));
    if let Some((a, b, g)) = deepest {
        report.notes.push("witness is the first pair needing the deepest continuation".into());
        report.witnesses.push(glueing_witness(a, b, &g));
    }
    Ok(report)
}

/// Checks whether every node of length `m` is reachable from every node of length `k`.
pub fn reachability_probe(k: usize, m: usize) -> Result<ProbeReport> {
    if k == 0 || m <= k {
        return Err(Error::CapacityExceeded(format!(
            "reachability needs 1 <= k < m, got k={k}, m={m}"
        )));
    }
    if m > 26 || k + m > 36 {
        return Err(Error::CapacityExceeded(format!(
            "reachability from length {k} to {m} (caps m <= 26, k + m <= 36)"
        )));
    }
    let tables = FrontierTables::build(m - 1)?;
    let starts: Vec<PureFrontier> = PureFrontier::all_of_len(k).collect();
    let misses: Vec<Option<u64>> = starts
        .par_iter()
        .map(|&u| {
            let mut layer = Layer::single(u);
            while layer.len < m {
                layer = layer.forward(&tables);
            }
            (0..1u64 << m).find(|&z| !layer.contains(z))
        })
        .collect();
    let mut report = ProbeReport::new("reachability", json!({"k": k, "m": m}));
    match starts.iter().zip(&misses).find_map(|(u, z)| z.map(|z| (*u, z))) {
        Some((u, z)) => {
            report.verdict = Verdict::Fails;
            report.witnesses.push(Witness {
                kind: "unreachable".into(),
                nodes: vec![node_name(u), node_name(PureFrontier::from_key(z, m))],
                labels: Vec::new(),
                lengths: vec![k as u64, m as u64],
            });
            let failing = misses.iter().filter(|z| z.is_some()).count();
            report.notes.push(format!("{failing} of {} start nodes miss some target", starts.len()));
        }
        None => report.notes.push(format!(
            "each of the {} start nodes reaches all {} targets",
            starts.len(),
            1u64 << m
        )),
    }
    Ok(report)
}

/// Like [`reachability_probe`] but only counts reached targets per start node.
pub fn reach_counts(tables: &FrontierTables, u: PureFrontier, m: usize) -> u64 {
    let mut layer = Layer::single(u);
    while layer.len < m {
        layer = layer.forward(tables);
    }
    layer.count()
}

/// Default length bound for [`containment_probe`].
pub const DEFAULT_CONTAINMENT_CAP: usize = 40;

/// For each height from `k` to `h_max`, checks whether every C∞-word of that
/// height contains all single-rooted minimal words of height `k` as factors.
/// Words are enumerated up to `length_cap`; a height counts as settled only
/// when every word of length `length_cap` is already taller.
pub fn containment_probe(k: usize, h_max: usize, length_cap: usize) -> Result<ProbeReport> {
    if k == 0 {
        return Err(Error::EmptyWord);
    }
    if k > 16 || h_max < k {
        return Err(Error::CapacityExceeded(format!(
            "containment needs 1 <= k <= 16 and h_max >= k, got k={k}, h_max={h_max}"
        )));
    }
    if length_cap == 0 || length_cap > MAX_ENUMERATION_LENGTH {
        return Err(Error::CapacityExceeded(format!(
            "length cap {length_cap} outside 1..={MAX_ENUMERATION_LENGTH}"
        )));
    }
    let targets: Vec<Word> = PureFrontier::all_of_len(k)
        .map(|u| min_word(&u.to_vertical(), Rooting::Single))
        .collect::<Result<_>>()?;
    let heights = h_max - k + 1;
    // Shortest (then least) word of each height missing a target.
    let mut failures: Vec<Option<Word>> = vec![None; heights];
    let mut min_height_at_cap = usize::MAX;
    let config = EnumerationConfig {
        max_length: length_cap,
        incremental: true,
    };
    walk(config, length_cap, |v| {
        if v.word.len() == length_cap {
            min_height_at_cap = min_height_at_cap.min(v.height);
        }
        if v.height < k || v.height > h_max {
            return;
        }
        let slot = &mut failures[v.height - k];
        let better = slot.as_ref().is_none_or(|f| v.word.len() < f.len());
        if better && !targets.iter().all(|t| v.word.contains(t)) {
            *slot = Some(v.word.clone());
        }
    })?;
    let mut report = ProbeReport::new(
        "containment",
        json!({"k": k, "h_max": h_max, "length_cap": length_cap}),
    );
    report.verdict = Verdict::ExhaustedBudget;
    for (i, failure) in failures.into_iter().enumerate() {
        let h = k + i;
        let settled = min_height_at_cap > h;
        match failure {
            Some(w) => {
                report.notes.push(format!("height {h}: fails"));
                report.witnesses.push(Witness {
                    kind: "missing-factor".into(),
                    nodes: vec![w.to_string()],
                    labels: Vec::new(),
                    lengths: vec![h as u64, w.len() as u64],
                });
            }
            None if settled => {
                report.notes.push(format!("height {h}: holds"));
                report.verdict = Verdict::Holds;
                report.witnesses.push(Witness {
                    kind: "least-passing-height".into(),
                    nodes: Vec::new(),
                    labels: Vec::new(),
                    lengths: vec![h as u64],
                });
                return Ok(report);
            }
            None => {
                report
                    .notes
                    .push(format!("height {h}: not settled below length {length_cap}"));
                return Ok(report);
            }
        }
    }
    report.verdict = Verdict::Fails;
    Ok(report)
}

/// Compares minimal-word lengths across consecutive heights: single-rooted
/// root-2 words and double-rooted words must be strictly increasing in height;
/// root-1 words are only reported.
pub fn weakley_check(k_max: usize) -> Result<ProbeReport> {
    let g = MinimalGraphOf::<u64>::build(k_max.max(2))?;
    weakley_check_on(&g, k_max)
}

pub fn weakley_check_on(g: &MinimalGraphOf<u64>, k_max: usize) -> Result<ProbeReport> {
    if k_max < 2 {
        return Err(Error::CapacityExceeded(format!("weakley check needs k_max >= 2, got {k_max}")));
    }
    if k_max > g.height() {
        return Err(Error::CapacityExceeded(format!(
            "weakley check to height {k_max}, graph built to {}",
            g.height()
        )));
    }
    let mut report = ProbeReport::new("weakley", json!({"k_max": k_max}));
    // (shortest, longest) lengths with their nodes, per height.
    type Extremes = ((u64, PureFrontier), (u64, PureFrontier));
    let extremes = |k: usize, len: &dyn Fn(PureFrontier) -> u64, root: Option<Letter>| -> Extremes {
        let mut lo = (u64::MAX, PureFrontier::EMPTY);
        let mut hi = (0, PureFrontier::EMPTY);
        for u in PureFrontier::all_of_len(k) {
            if root.is_some_and(|r| u.last() != Some(r)) {
                continue;
            }
            let l = len(u);
            if l < lo.0 {
                lo = (l, u);
            }
            if l > hi.0 {
                hi = (l, u);
            }
        }
        (lo, hi)
    };
    let single = |u| g.min_word_length(u).expect("node within height");
    let double = |u| g.double_rooted_length(u).expect("node within height");
    type LengthOf<'a> = &'a dyn Fn(PureFrontier) -> u64;
    let forms: [(&str, LengthOf, Option<Letter>, bool); 3] = [
        ("root-2", &single, Some(Letter::Two), true),
        ("double-rooted", &double, None, true),
        ("root-1", &single, Some(Letter::One), false),
    ];
    for (name, len, root, asserted) in forms {
        let per_height: Vec<Extremes> = (1..=k_max).map(|k| extremes(k, len, root)).collect();
        for k in 1..k_max {
            let (_, (hi, hi_node)) = per_height[k - 1];
            let ((lo, lo_node), _) = per_height[k];
            if hi < lo {
                continue;
            }
            let kind = if asserted {
                report.verdict = Verdict::Fails;
                format!("{name}-counterexample")
            } else {
                report.notes.push(format!(
                    "{name}: a minimal word of height {} has length {lo}, shorter than or equal to length {hi} at height {k}",
                    k + 1
                ));
                format!("{name}-non-monotone")
            };
            report.witnesses.push(Witness {
                kind,
                nodes: vec![node_name(hi_node), node_name(lo_node)],
                labels: Vec::new(),
                lengths: vec![hi, lo],
            });
        }
    }
    if report.verdict == Verdict::Holds {
        report
            .notes
            .push(format!("root-2 and double-rooted lengths strictly increase in height up to {k_max}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(s: &str) -> PureFrontier {
        s.parse().unwrap()
    }

    #[test]
    fn glueing_one_two() {
        let r = glueing_search(pf("1"), pf("2"), 4).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let w = &r.witnesses[0];
        assert_eq!(w.nodes, ["1", "2", "22"]);
        assert_eq!(w.labels, ["0", "2"]);
    }

    #[test]
    fn glueing_same_node() {
        let r = glueing_search(pf("2122"), pf("2122"), 3).unwrap();
        let w = &r.witnesses[0];
        assert_eq!(w.nodes[2], "2122");
        assert_eq!(w.labels, ["", ""]);
    }

    #[test]
    fn reachability_small() {
        let r = reachability_probe(1, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witnesses[0].nodes, ["1", "21"]);
        let r = reachability_probe(1, 3).unwrap();
        assert_eq!(r.witnesses[0].nodes, ["1", "211"]);
        assert!(reachability_probe(2, 2).is_err());
    }

    #[test]
    fn containment_height_one() {
        let r = containment_probe(1, 2, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let at_two = r.witnesses.iter().find(|w| w.lengths[0] == 2).unwrap();
        assert_eq!(at_two.nodes, ["11"]);
        let r = containment_probe(1, 6, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.witnesses.last().unwrap().lengths, [3]);
    }

    #[test]
    fn weakley_small() {
        assert_eq!(weakley_check(2).unwrap().verdict, Verdict::Holds);
        assert_eq!(weakley_check(10).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn report_json_fields() {
        let r = reachability_probe(1, 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "fails");
        assert_eq!(v["parameters"]["m"], 2);
        assert!(v["witnesses"].is_array());
    }
}
