//! Randomized invariants checked with shrinking generators: whatever graph
//! and sequence come out, the replays, trees, pieces, and solvers must keep
//! their promises.

use std::collections::BTreeMap;

use proptest::prelude::*;

use twinwidth::families::gnp;
use twinwidth::ibp::{build_ibp, StabbingStructure};
use twinwidth::independent::k_independent_set;
use twinwidth::oracles::{bfs_distances, is_independent};
use twinwidth::sequence::{complement_sequence, trigraph_at};
use twinwidth::toolkit::{greedy_sequence, GreedyConfig};
use twinwidth::{build_union_tree, verify_sequence, ContractionSequence, EdgeColor, Graph};

fn graph_and_seq(max_n: usize) -> impl Strategy<Value = (Graph, ContractionSequence)> {
    (2..=max_n, 0..3usize, any::<u32>()).prop_map(|(n, pi, seed)| {
        let p = [0.15, 0.4, 0.7][pi];
        let g = gnp(n, p, seed as u64);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        (g, seq)
    })
}

proptest! {
    #[test]
    fn verified_width_is_the_running_maximum((g, seq) in graph_and_seq(12)) {
        let d = verify_sequence(&g, &seq).unwrap();
        let mut running = 0usize;
        for i in 0..=seq.len() {
            let (t, _) = trigraph_at(&g, &seq, i).unwrap();
            running = running.max(t.max_red_degree());
        }
        prop_assert_eq!(d, running);
    }

    #[test]
    fn complement_replays_carry_the_same_red_edges((g, seq) in graph_and_seq(10)) {
        let (gc, seqc) = complement_sequence(&g, &seq);
        prop_assert_eq!(
            verify_sequence(&gc, &seqc).unwrap(),
            verify_sequence(&g, &seq).unwrap()
        );
        for i in 0..=seq.len() {
            let (t, _) = trigraph_at(&g, &seq, i).unwrap();
            let (tc, _) = trigraph_at(&gc, &seqc, i).unwrap();
            let live: Vec<usize> = t.live_vertices().collect();
            for (idx, &a) in live.iter().enumerate() {
                for &b in &live[idx + 1..] {
                    let red = t.edge_color(a, b).unwrap() == Some(EdgeColor::Red);
                    let red_c = tc.edge_color(a, b).unwrap() == Some(EdgeColor::Red);
                    prop_assert_eq!(red, red_c, "step {}, pair {}-{}", i, a, b);
                }
            }
        }
    }

    #[test]
    fn union_tree_parts_occupy_contiguous_positions((_g, seq) in graph_and_seq(14)) {
        let tree = build_union_tree(&seq).unwrap();
        for node in 0..tree.node_count() {
            let (lo, hi) = tree.interval(node).unwrap();
            let part = tree.part(node).unwrap();
            prop_assert_eq!(hi - lo + 1, part.len());
            let mut positions: Vec<usize> =
                part.iter().map(|&v| tree.position_of(v).unwrap()).collect();
            positions.sort_unstable();
            prop_assert_eq!(positions, (lo..=hi).collect::<Vec<usize>>());
        }
    }

    #[test]
    fn independent_solutions_are_sound_and_monotone((g, seq) in graph_and_seq(14)) {
        let mut prev = 0usize;
        for k in 1..=g.n() {
            let sol = k_independent_set(&g, &seq, k).unwrap();
            prop_assert!(is_independent(&g, &sol));
            prop_assert!(sol.len() <= k);
            prop_assert!(sol.len() >= prev, "budget {} shrank the answer", k);
            prev = sol.len();
        }
    }

    #[test]
    fn pieces_partition_the_edges_and_sides_never_cross((g, seq) in graph_and_seq(12)) {
        let d = verify_sequence(&g, &seq).unwrap();
        let pieces = build_ibp(&g, &seq).unwrap();
        pieces.validate().unwrap();
        prop_assert!(pieces.bicliques().len() <= (d + 1) * (g.n() - 1));

        let mut covered: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &((a1, a2), (b1, b2)) in pieces.bicliques() {
            for pa in a1..=a2 {
                for pb in b1..=b2 {
                    let u = pieces.original_at(pa).unwrap();
                    let v = pieces.original_at(pb).unwrap();
                    *covered.entry((u.min(v), u.max(v))).or_default() += 1;
                }
            }
        }
        let edges: BTreeMap<(usize, usize), usize> = g
            .edges()
            .into_iter()
            .map(|(u, v)| ((u.min(v), u.max(v)), 1))
            .collect();
        prop_assert_eq!(covered, edges);

        let mut sides: Vec<(usize, usize)> = pieces
            .bicliques()
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        sides.sort_unstable();
        sides.dedup();
        for (i, &(a1, a2)) in sides.iter().enumerate() {
            for &(b1, b2) in &sides[i + 1..] {
                let crossing = a1 < b1 && b1 <= a2 && a2 < b2;
                prop_assert!(!crossing, "sides [{},{}] and [{},{}] cross", a1, a2, b1, b2);
            }
        }
    }

    #[test]
    fn stabbing_queries_agree_with_a_linear_scan(
        ops in proptest::collection::vec((0..4u8, 0..60usize, 0..12usize, 0..20usize), 1..120)
    ) {
        let mut tree = StabbingStructure::new();
        let mut plain: Vec<(usize, usize, usize)> = Vec::new();
        for (op, lo, len, id) in ops {
            let hi = lo + len;
            match op {
                0 => {
                    tree.insert(lo, hi, id).unwrap();
                    plain.push((lo, hi, id));
                }
                1 => {
                    let removed = tree.delete(lo, hi, id);
                    let pos = plain.iter().position(|&e| e == (lo, hi, id));
                    prop_assert_eq!(removed, pos.is_some());
                    if let Some(p) = pos {
                        plain.remove(p);
                    }
                }
                2 => {
                    let mut want: Vec<(usize, usize, usize)> = plain
                        .iter()
                        .copied()
                        .filter(|&(a, b, _)| a <= lo && lo <= b)
                        .collect();
                    want.sort_unstable();
                    prop_assert_eq!(tree.stab(lo), want);
                }
                _ => {
                    let mut want: Vec<(usize, usize, usize)> = plain
                        .iter()
                        .copied()
                        .filter(|&(a, b, _)| a <= hi && lo <= b)
                        .collect();
                    want.sort_unstable();
                    prop_assert_eq!(tree.intersecting(lo, hi), want);
                }
            }
            prop_assert_eq!(tree.len(), plain.len());
        }
    }

    #[test]
    fn traversal_distances_match_breadth_first_search(
        (g, seq) in graph_and_seq(12),
        pick in any::<prop::sample::Index>()
    ) {
        let pieces = build_ibp(&g, &seq).unwrap();
        let s = pick.index(g.n());
        let sp = pieces.sssp(s).unwrap();
        prop_assert_eq!(sp.distances(), &bfs_distances(&g, s).unwrap()[..]);
    }

    #[test]
    fn greedy_always_emits_a_full_checkable_sequence(
        n in 1..=20usize,
        pi in 0..3usize,
        seed in any::<u32>()
    ) {
        let g = gnp(n, [0.1, 0.5, 0.9][pi], seed as u64);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        prop_assert_eq!(seq.len(), n - 1);
        prop_assert!(seq.is_full());
        prop_assert!(verify_sequence(&g, &seq).is_ok());
    }

    #[test]
    fn text_formats_round_trip((g, seq) in graph_and_seq(14)) {
        let g_back = Graph::parse("prop", &g.to_text()).unwrap();
        prop_assert_eq!(&g_back, &g);
        let s_back = ContractionSequence::parse("prop", &seq.to_text()).unwrap();
        prop_assert_eq!(&s_back, &seq);
    }
}
