//! The graph G of minimal classes: nodes are 0-free frontiers, with edges
//! `U -1-> U1`, `U -2-> U2` and, for non-empty `U`, `U -0-> Θ(U)2`.
//!
//! Per-node path counts ||U|| and minimal-word lengths |U| are filled level by
//! level into dense arrays, generic over the unsigned counter type.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{PrimInt, Unsigned};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frontier::{table_bytes, FrontierTables, PureFrontier};
use crate::vertical::{min_word, Rooting, VLetter, VerticalWord};
use crate::word::Letter;

/// Unsigned counter used for path counts and lengths.
pub trait Count: PrimInt + Unsigned + Send + Sync + fmt::Debug + fmt::Display + Serialize + 'static {}

impl<T> Count for T where T: PrimInt + Unsigned + Send + Sync + fmt::Debug + fmt::Display + Serialize + 'static {}

pub type EdgeLabel = VLetter;

/// Height cap of [`GraphConfig::default`].
pub const DEFAULT_MAX_HEIGHT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphConfig {
    /// Highest node length the level DP will build.
    pub max_height: usize,
    pub memory_budget: usize,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            max_height: DEFAULT_MAX_HEIGHT,
            memory_budget: 2 << 30,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeStatsOf<T> {
    pub path_count: T,
    pub min_length: T,
    pub ones: T,
    pub twos: T,
}

/// Lengths of the single-rooted minimal words at one height sharing one root letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootLevelStats<T: Ord> {
    pub root: u8,
    pub nodes: u64,
    pub min_length: T,
    pub max_length: T,
    /// length → number of nodes with that length
    pub lengths: BTreeMap<T, u64>,
    pub ones: Option<u64>,
    pub twos: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelStatsOf<T: Ord> {
    pub height: usize,
    pub roots: Vec<RootLevelStats<T>>,
}

impl<T: Ord> LevelStatsOf<T> {
    pub fn root(&self, letter: Letter) -> &RootLevelStats<T> {
        &self.roots[(letter.value() - 1) as usize]
    }
}

#[derive(Clone)]
pub struct MinimalGraphOf<T: Count> {
    tables: FrontierTables,
    height: usize,
    path_count: Vec<Vec<T>>,
    min_length: Vec<Vec<T>>,
}

impl<T: Count> fmt::Debug for MinimalGraphOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinimalGraph")
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

/// Bytes the level DP up to `height` needs with counter type `T`.
pub fn graph_bytes<T>(height: usize) -> usize {
    table_bytes(height) + 2 * std::mem::size_of::<T>() * ((1usize << (height + 1)) - 1)
}

fn add<T: Count>(a: T, b: T, what: &'static str) -> Result<T> {
    a.checked_add(&b).ok_or(Error::Overflow(what))
}

impl<T: Count> MinimalGraphOf<T> {
    pub fn build(height: usize) -> Result<Self> {
        Self::build_with(height, GraphConfig::default())
    }

    pub fn build_with(height: usize, config: GraphConfig) -> Result<Self> {
        if height > config.max_height {
            return Err(Error::CapacityExceeded(format!(
                "graph height {height} above the configured maximum {}",
                config.max_height
            )));
        }
        let need = graph_bytes::<T>(height);
        if need > config.memory_budget {
            return Err(Error::CapacityExceeded(format!(
                "graph up to height {height} needs {need} bytes, budget is {}",
                config.memory_budget
            )));
        }
        let tables = FrontierTables::build_with_budget(height, config.memory_budget)?;
        Self::from_tables(tables, height)
    }

    /// Fills the DP over `tables`, which must cover `height`.
    pub fn from_tables(tables: FrontierTables, height: usize) -> Result<Self> {
        if tables.max_len() < height {
            return Err(Error::CapacityExceeded(format!(
                "tables cover length {}, graph needs {height}",
                tables.max_len()
            )));
        }
        let one = T::one();
        let mut path_count = vec![vec![one]];
        let mut min_length = vec![vec![T::zero()]];
        if height >= 1 {
            path_count.push(vec![one, one]);
            min_length.push(vec![one, one]);
        }
        let mut g = MinimalGraphOf {
            tables,
            height,
            path_count,
            min_length,
        };
        for n in 1..height {
            g.extend_level(n)?;
        }
        Ok(g)
    }

    fn extend_level(&mut self, n: usize) -> Result<()> {
        let t = &self.tables;
        let pc = &self.path_count[n];
        let ml = &self.min_length[n];
        let rows: Vec<[T; 4]> = PureFrontier::all_of_len(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|u| {
                let th = t.theta(u).key() as usize;
                let gd = t.gamma_d(u).key() as usize;
                let pi = t.pi(u).key() as usize;
                let k = u.key() as usize;
                let count1 = pc[k];
                let count2 = add(pc[k], pc[pi], "path count")?;
                let len2 = add(ml[th], pc[th], "minimal length")?;
                let len1 = add(len2, pc[gd], "minimal length")?;
                Ok([count1, count2, len1, len2])
            })
            .collect::<Result<_>>()?;
        let size = 1usize << (n + 1);
        let mut next_pc = vec![T::zero(); size];
        let mut next_ml = vec![T::zero(); size];
        for (k, [c1, c2, l1, l2]) in rows.into_iter().enumerate() {
            next_pc[2 * k] = c1;
            next_pc[2 * k + 1] = c2;
            next_ml[2 * k] = l1;
            next_ml[2 * k + 1] = l2;
        }
        self.path_count.push(next_pc);
        self.min_length.push(next_ml);
        Ok(())
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn tables(&self) -> &FrontierTables {
        &self.tables
    }

    fn check(&self, u: PureFrontier) -> Result<()> {
        if u.len() > self.height {
            return Err(Error::CapacityExceeded(format!(
                "node {u} is longer than the built height {}",
                self.height
            )));
        }
        Ok(())
    }

    fn check_nonempty(&self, u: PureFrontier) -> Result<()> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.check(u)
    }

    #[inline]
    fn pc(&self, u: PureFrontier) -> T {
        self.path_count[u.len()][u.key() as usize]
    }

    #[inline]
    fn ml(&self, u: PureFrontier) -> T {
        self.min_length[u.len()][u.key() as usize]
    }

    pub fn successors(&self, u: PureFrontier) -> Result<Vec<(EdgeLabel, PureFrontier)>> {
        self.check(u)?;
        Ok(successors_in(&self.tables, u))
    }

    /// ||U||: number of origin-to-U paths.
    pub fn path_count(&self, u: PureFrontier) -> Result<T> {
        self.check(u)?;
        Ok(self.pc(u))
    }

    /// |U|: length of the single-rooted minimal word with left frontier U.
    pub fn min_word_length(&self, u: PureFrontier) -> Result<T> {
        self.check_nonempty(u)?;
        Ok(self.ml(u))
    }

    /// Length of the double-rooted minimal word with left frontier U, |Θ(U)| + ||Θ(U)||.
    pub fn double_rooted_length(&self, u: PureFrontier) -> Result<T> {
        self.check_nonempty(u)?;
        let th = self.tables.theta(u);
        add(self.ml(th), self.pc(th), "double-rooted length")
    }

    /// Every label word of an origin-to-U path, sorted, walking inverse edges.
    pub fn paths_to(&self, u: PureFrontier, budget: usize) -> Result<Vec<VerticalWord>> {
        self.check_nonempty(u)?;
        let count = self.pc(u);
        if count.to_usize().is_none_or(|c| c > budget) {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut out: Vec<VerticalWord> = self
            .labels_into(u)
            .into_iter()
            .map(|l| VerticalWord::new(l).expect("paths from the origin start with 1 or 2"))
            .collect();
        out.sort();
        Ok(out)
    }

    fn labels_into(&self, u: PureFrontier) -> Vec<Vec<VLetter>> {
        let Some((w, last)) = u.parent() else {
            return vec![Vec::new()];
        };
        let mut out: Vec<Vec<VLetter>> = self
            .labels_into(w)
            .into_iter()
            .map(|mut l| {
                l.push(last.into());
                l
            })
            .collect();
        if last == Letter::Two && !w.is_empty() {
            // U2 is also the 0-successor of Π(U).
            out.extend(self.labels_into(self.tables.pi(w)).into_iter().map(|mut l| {
                l.push(VLetter::Zero);
                l
            }));
        }
        out
    }

    pub fn node_stats(&self, u: PureFrontier) -> Result<NodeStatsOf<T>> {
        self.check_nonempty(u)?;
        let (ones, twos) = letter_counts(u)?;
        let cast = |x: usize| T::from(x).ok_or(Error::Overflow("letter count"));
        Ok(NodeStatsOf {
            path_count: self.pc(u),
            min_length: self.ml(u),
            ones: cast(ones)?,
            twos: cast(twos)?,
        })
    }

    /// Length summaries at height `k`, split by root letter. Letter totals need
    /// one word construction per node and are computed only on request.
    pub fn level_stats(&self, k: usize, with_letters: bool) -> Result<LevelStatsOf<T>> {
        if k == 0 {
            return Err(Error::EmptyWord);
        }
        if k > self.height {
            return Err(Error::CapacityExceeded(format!(
                "level {k} is above the built height {}",
                self.height
            )));
        }
        let mut roots = Vec::with_capacity(2);
        for root in [Letter::One, Letter::Two] {
            let nodes: Vec<PureFrontier> = PureFrontier::all_of_len(k)
                .filter(|u| u.last() == Some(root))
                .collect();
            let mut lengths = BTreeMap::new();
            for &u in &nodes {
                *lengths.entry(self.ml(u)).or_insert(0u64) += 1;
            }
            let (ones, twos) = if with_letters {
                let (o, t) = nodes
                    .par_iter()
                    .map(|&u| {
                        let (o, t) = letter_counts(u).expect("non-empty node");
                        (o as u64, t as u64)
                    })
                    .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
                (Some(o), Some(t))
            } else {
                (None, None)
            };
            roots.push(RootLevelStats {
                root: root.value(),
                nodes: nodes.len() as u64,
                min_length: *lengths.keys().next().expect("2^(k-1) nodes per root"),
                max_length: *lengths.keys().next_back().expect("2^(k-1) nodes per root"),
                lengths,
                ones,
                twos,
            });
        }
        Ok(LevelStatsOf { height: k, roots })
    }

    pub fn dot(&self, max_height: usize) -> Result<String> {
        if max_height > self.height {
            return Err(Error::CapacityExceeded(format!(
                "DOT export to height {max_height} above the built height {}",
                self.height
            )));
        }
        Ok(dot_from_tables(&self.tables, max_height))
    }
}

/// Outgoing edges of `u`; the origin has no 0-edge.
pub fn successors_in(tables: &FrontierTables, u: PureFrontier) -> Vec<(EdgeLabel, PureFrontier)> {
    let mut out = vec![
        (VLetter::One, u.push(Letter::One)),
        (VLetter::Two, u.push(Letter::Two)),
    ];
    if !u.is_empty() {
        out.push((VLetter::Zero, tables.theta(u).push(Letter::Two)));
    }
    out
}

fn node_id(u: PureFrontier) -> String {
    format!("\"{u:#}\"")
}

fn dot_from_tables(tables: &FrontierTables, max_height: usize) -> String {
    let mut s = String::from("digraph G {\n    rankdir=TB;\n    node [shape=box];\n");
    for n in 0..=max_height {
        for u in PureFrontier::all_of_len(n) {
            let _ = writeln!(s, "    {};", node_id(u));
        }
    }
    for n in 0..=max_height {
        for u in PureFrontier::all_of_len(n) {
            for (label, v) in successors_in(tables, u) {
                if v.len() > max_height {
                    continue;
                }
                let style = if label == VLetter::Zero { ", style=dashed" } else { "" };
                let _ = writeln!(
                    s,
                    "    {} -> {} [label=\"{}\"{style}];",
                    node_id(u),
                    node_id(v),
                    label.to_char()
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Letter counts (ones, twos) of the single-rooted minimal word with left frontier `u`,
/// by direct construction.
pub fn letter_counts(u: PureFrontier) -> Result<(usize, usize)> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(min_word(&u.to_vertical(), Rooting::Single)?.letter_counts())
}

/// Fraction of letters equal to 1 in a word of counts `(ones, twos)`.
pub fn ones_fraction<F: num_traits::Float>(ones: usize, twos: usize) -> F {
    let total = ones + twos;
    if total == 0 {
        return F::zero();
    }
    F::from(ones).unwrap() / F::from(total).unwrap()
}

fn graph_for(u: PureFrontier) -> Result<MinimalGraphOf<u64>> {
    MinimalGraphOf::build(u.len())
}

pub fn successors(u: PureFrontier) -> Result<Vec<(EdgeLabel, PureFrontier)>> {
    graph_for(u)?.successors(u)
}

pub fn path_count(u: PureFrontier) -> Result<u64> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    graph_for(u)?.path_count(u)
}

pub fn paths_to(u: PureFrontier, budget: usize) -> Result<Vec<VerticalWord>> {
    graph_for(u)?.paths_to(u, budget)
}

pub fn min_word_length(u: PureFrontier) -> Result<u64> {
    graph_for(u)?.min_word_length(u)
}

pub fn level_stats(k: usize, with_letters: bool) -> Result<LevelStatsOf<u64>> {
    MinimalGraphOf::<u64>::build(k)?.level_stats(k, with_letters)
}

pub fn dot_export(max_height: usize) -> Result<String> {
    if max_height == 0 {
        return Err(Error::EmptyWord);
    }
    let tables = FrontierTables::build(max_height)?;
    Ok(dot_from_tables(&tables, max_height))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(s: &str) -> PureFrontier {
        s.parse().unwrap()
    }

    fn vws(list: &[&str]) -> Vec<VerticalWord> {
        let mut v: Vec<VerticalWord> = list.iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn successors_examples() {
        let succ = |s: &str| -> Vec<(char, String)> {
            successors(pf(s))
                .unwrap()
                .into_iter()
                .map(|(l, v)| (l.to_char(), v.to_string()))
                .collect()
        };
        assert_eq!(
            succ("2122"),
            [('1', "21221".into()), ('2', "21222".into()), ('0', "12212".into())]
        );
        assert_eq!(succ(""), [('1', "1".into()), ('2', "2".into())]);
        assert_eq!(succ("2"), [('1', "21".into()), ('2', "22".into()), ('0', "12".into())]);
    }

    #[test]
    fn path_count_examples() {
        assert_eq!(path_count(pf("2122")).unwrap(), 4);
        assert_eq!(path_count(pf("1")).unwrap(), 1);
        assert_eq!(path_count(pf("22")).unwrap(), 2);
    }

    #[test]
    fn paths_to_examples() {
        assert_eq!(
            paths_to(pf("2122"), 100).unwrap(),
            vws(&["2110", "1002", "2202", "2122"])
        );
        assert_eq!(paths_to(pf("1"), 100).unwrap(), vws(&["1"]));
        assert_eq!(paths_to(pf("22"), 100).unwrap(), vws(&["22", "10"]));
        assert_eq!(
            paths_to(pf("2122"), 3),
            Err(Error::BudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn min_word_length_examples() {
        assert_eq!(min_word_length(pf("2122")).unwrap(), 7);
        assert_eq!(min_word_length(pf("2")).unwrap(), 1);
        assert_eq!(min_word_length(pf("111")).unwrap(), 6);
    }

    #[test]
    fn letter_count_examples() {
        assert_eq!(letter_counts(pf("2122")).unwrap(), (3, 4));
        assert_eq!(letter_counts(pf("2")).unwrap(), (0, 1));
        assert_eq!(letter_counts(pf("111")).unwrap(), (4, 2));
        let g = MinimalGraphOf::<u32>::build(4).unwrap();
        let s = g.node_stats(pf("2122")).unwrap();
        assert_eq!(s, NodeStatsOf { path_count: 4, min_length: 7, ones: 3, twos: 4 });
    }

    #[test]
    fn level_stats_height_one() {
        let s = level_stats(1, true).unwrap();
        for r in &s.roots {
            assert_eq!((r.min_length, r.max_length), (1, 1));
            assert_eq!(r.nodes, 1);
        }
        assert_eq!(s.root(Letter::One).ones, Some(1));
        assert!(matches!(level_stats(21, false), Err(Error::CapacityExceeded(_))));
    }

    #[test]
    fn dot_counts() {
        let count = |h| {
            let d = dot_export(h).unwrap();
            let edges = d.lines().filter(|l| l.contains("->")).count();
            let nodes = d.lines().filter(|l| l.trim_end().ends_with("\";")).count();
            (nodes, edges)
        };
        assert_eq!(count(1), (3, 2));
        assert_eq!(count(2), (7, 8));
        assert!(dot_export(2).unwrap().contains("\"1\" -> \"22\" [label=\"0\", style=dashed];"));
    }

    #[test]
    fn narrow_counters_report_overflow() {
        assert!(matches!(
            MinimalGraphOf::<u8>::build(14),
            Err(Error::Overflow(_))
        ));
        assert!(MinimalGraphOf::<u16>::build(12).is_ok());
    }

    #[test]
    fn counter_types_agree() {
        let a = MinimalGraphOf::<u32>::build(10).unwrap();
        let b = MinimalGraphOf::<u128>::build(10).unwrap();
        for u in PureFrontier::all_of_len(10) {
            assert_eq!(a.min_word_length(u).unwrap() as u128, b.min_word_length(u).unwrap());
            assert_eq!(a.path_count(u).unwrap() as u128, b.path_count(u).unwrap());
        }
    }

    #[test]
    fn fraction() {
        assert_eq!(ones_fraction::<f64>(1, 3), 0.25);
        assert_eq!(ones_fraction::<f32>(0, 0), 0.0);
    }
}
