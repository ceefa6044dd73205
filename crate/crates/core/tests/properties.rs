use std::sync::OnceLock;

use cinfty::frontier::{FrontierTables, PureFrontier};
use cinfty::oracle::IncrementalTower;
use cinfty::vertical::{decode, encode, left_frontier, min_word, right_frontier, Rooting};
use cinfty::word::{
    classify, derivative, extend_to_maximal, height, is_cinfty, kolakoski, minimal_part,
    primitives, rle, tower, Letter, Word,
};
use cinfty::MinimalGraph;
use proptest::prelude::*;

/// Grows a C∞-word letter by letter, taking the preferred letter when it keeps
/// the word C∞ and the other one otherwise.
fn cinfty_word(prefs: &[bool]) -> Word {
    let mut t = IncrementalTower::new();
    let mut w = Word::new();
    for &p in prefs {
        let x = Letter::from_bit(p);
        let chosen = if t.push(x) {
            x
        } else {
            assert!(t.push(x.complement()), "every C∞-word extends to the right");
            x.complement()
        };
        w.push(chosen);
    }
    w
}

fn any_cinfty(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 1..=max_len).prop_map(|p| cinfty_word(&p))
}

fn any_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len)
        .prop_map(|bits| bits.into_iter().map(Letter::from_bit).collect())
}

fn any_frontier(max_len: usize) -> impl Strategy<Value = PureFrontier> {
    (1..=max_len).prop_flat_map(|n| (0..1u64 << n).prop_map(move |k| PureFrontier::from_key(k, n)))
}

const GRAPH_HEIGHT: usize = 16;

fn graph() -> &'static MinimalGraph {
    static G: OnceLock<MinimalGraph> = OnceLock::new();
    G.get_or_init(|| MinimalGraph::build(GRAPH_HEIGHT).unwrap())
}

fn tables() -> &'static FrontierTables {
    graph().tables()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn derivative_ignores_complement(w in any_word(40)) {
        prop_assert_eq!(derivative(&w), derivative(&w.complement()));
    }

    #[test]
    fn derivative_commutes_with_reversal(w in any_word(40)) {
        let d = derivative(&w).ok();
        let dr = derivative(&w.reversal()).ok();
        prop_assert_eq!(d.map(|x| x.reversal()), dr);
    }

    #[test]
    fn cinfty_closed_under_symmetries(w in any_cinfty(80)) {
        let h = height(&w).unwrap();
        prop_assert_eq!(height(&w.complement()).unwrap(), h);
        prop_assert_eq!(height(&w.reversal()).unwrap(), h);
    }

    #[test]
    fn rle_sums_to_length(w in any_word(60)) {
        prop_assert_eq!(rle(&w).runs().iter().sum::<usize>(), w.len());
    }

    #[test]
    fn primitives_differentiate_back(v in any_cinfty(40)) {
        let ps = primitives(&v).unwrap();
        prop_assert!(!ps.is_empty());
        for p in &ps {
            prop_assert_eq!(&derivative(p).unwrap(), &v);
            prop_assert!(is_cinfty(p));
        }
        prop_assert!(ps.windows(2).all(|pair| pair[0] < pair[1]));
    }

    #[test]
    fn vertical_round_trip(w in any_cinfty(120)) {
        let rep = encode(&w).unwrap();
        prop_assert_eq!(decode(&rep).unwrap(), w.clone());
        prop_assert_eq!(right_frontier(&w).unwrap(), left_frontier(&w.reversal()).unwrap());
        prop_assert_eq!(rep.left.len(), height(&w).unwrap());
    }

    #[test]
    fn incremental_tower_agrees(w in any_cinfty(100)) {
        let mut t = IncrementalTower::new();
        for x in w.iter() {
            prop_assert!(t.push(x));
        }
        prop_assert_eq!(t.levels(), tower(&w).unwrap().levels().to_vec());
    }

    #[test]
    fn height_never_drops_along_prefixes(w in any_cinfty(100)) {
        let mut t = IncrementalTower::new();
        let mut last = 0;
        for x in w.iter() {
            t.push(x);
            prop_assert!(t.height() >= last);
            last = t.height();
        }
    }

    #[test]
    fn factors_are_no_taller(w in any_cinfty(100), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (i, j) = (a.index(w.len()), b.index(w.len()));
        let (s, e) = (i.min(j), i.max(j) + 1);
        let f = w.factor(s, e);
        prop_assert!(height(&f).unwrap() <= height(&w).unwrap());
    }

    #[test]
    fn maximal_extension_contains_word(w in any_cinfty(60)) {
        let m = extend_to_maximal(&w).unwrap();
        prop_assert!(m.contains(&w));
        let c = classify(&m).unwrap();
        prop_assert!(c.maximal);
        let (tw, tm) = (tower(&w).unwrap(), tower(&m).unwrap());
        prop_assert_eq!(tw.height(), tm.height());
        prop_assert_eq!(tw.root(), tm.root());
    }

    #[test]
    fn minimal_part_is_full_height_factor(w in any_cinfty(60)) {
        let mp = minimal_part(&w).unwrap();
        let part = &mp.part.word;
        prop_assert_eq!(w.factor(mp.part.offset, mp.part.offset + part.len()), part.clone());
        let c = classify(part).unwrap();
        prop_assert!(c.minimal && c.single_rooted);
        prop_assert_eq!(height(part).unwrap(), height(&w).unwrap());
        prop_assert_eq!(mp.second.is_some(), !tower(&w).unwrap().is_single_rooted());
    }

    #[test]
    fn gamma_maps_are_involutions(u in any_frontier(GRAPH_HEIGHT)) {
        let t = tables();
        prop_assert_eq!(t.gamma_s(t.gamma_s(u)), u);
        prop_assert_eq!(t.gamma_d(t.gamma_d(u)), u);
        prop_assert_eq!(t.theta(t.pi(u)), u);
        prop_assert_eq!(t.pi(t.theta(u)), u);
    }

    #[test]
    fn gamma_d_commutes_with_complement(u in any_frontier(GRAPH_HEIGHT)) {
        let t = tables();
        prop_assert_eq!(t.gamma_d(u.complement()), t.gamma_d(u).complement());
        prop_assert_eq!(t.gamma_s(u).last(), u.last());
        prop_assert_eq!(t.gamma_d(u).last(), u.last().map(Letter::complement));
    }

    #[test]
    fn min_words_have_their_frontier(u in any_frontier(12)) {
        for rooting in [Rooting::Single, Rooting::Double] {
            let w = min_word(&u.to_vertical(), rooting).unwrap();
            prop_assert_eq!(left_frontier(&w).unwrap(), u.to_vertical());
            let t = tower(&w).unwrap();
            prop_assert_eq!(t.is_single_rooted(), rooting == Rooting::Single);
            prop_assert!(classify(&w).unwrap().minimal);
        }
    }

    #[test]
    fn graph_length_identities(u in any_frontier(GRAPH_HEIGHT - 1)) {
        let g = graph();
        let t = tables();
        let len = |v| g.min_word_length(v).unwrap();
        prop_assert_eq!(len(u), len(t.gamma_s(u)));
        prop_assert_eq!(len(t.theta(u)), len(t.gamma_d(u)));
        prop_assert_eq!(len(u.push(Letter::Two)), len(u.complement().push(Letter::Two)));
        prop_assert_eq!(g.double_rooted_length(u).unwrap(), len(u.push(Letter::Two)));
        // One more letter of frontier never shortens the word.
        prop_assert!(len(u.push(Letter::One)) > len(u));
        prop_assert!(len(u.push(Letter::Two)) >= len(u));
    }

    #[test]
    fn path_counts_follow_edges(u in any_frontier(GRAPH_HEIGHT - 1)) {
        let g = graph();
        let pc = |v| g.path_count(v).unwrap();
        prop_assert_eq!(pc(u.push(Letter::One)), pc(u));
        prop_assert_eq!(pc(u.push(Letter::Two)), pc(u) + pc(tables().pi(u)));
    }

    #[test]
    fn kolakoski_reads_itself(n in 1usize..4000) {
        let k = kolakoski(n);
        let runs: Word = rle(&k).runs().iter().map(|&r| Letter::from_bit(r == 2)).collect();
        // The last run may be cut short by the truncation.
        let m = runs.len() - 1;
        prop_assert_eq!(runs.factor(0, m), k.factor(0, m));
    }
}
