//! Pattern embedding along a contraction sequence.
//!
//! States are pairs (T, η): T a set of live trigraph vertices inducing a
//! connected subgraph of the red graph, η an assignment of pairwise disjoint
//! nonempty pattern-vertex sets to the members of T. An entry is kept when
//! some embedding of the assigned pattern vertices into the original graph
//! places the vertices of η(t) inside the part of t, for every t in T, and
//! respects the pattern edges (and non-edges, in induced mode) between every
//! assigned pair. One witness embedding is stored per state, first found
//! wins.
//!
//! A contraction of u and v into z invalidates the entries touching {u, v}.
//! New entries all contain z and are assembled by splitting z back into u
//! and v (or just one of them), distributing pattern vertices over the
//! resulting ground set, and decomposing it into red components of the
//! previous trigraph: each component must be a stored state, and pairs
//! across components are joined by black edges or non-edges only, so the
//! remaining constraints reduce to checks against the pattern adjacency.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles;
use crate::sequence::ContractionSequence;
use crate::setops::merge_sorted;
use crate::trigraph::{enumerate_red_connected_sets, EdgeColor, PreContractionView, Trigraph};

/// Largest pattern accepted by the convenience entry points. Table growth is
/// steeper than exponential in the pattern size, so the default is kept low;
/// the `_with` variant accepts anything up to the mask width.
pub const DEFAULT_PATTERN_CAP: usize = 8;

/// Hard ceiling imposed by the u16 image masks.
const MASK_CAP: usize = 16;

const UNSET: usize = usize::MAX;

/// Canonical state key: sorted live vertices and, in parallel, the set of
/// pattern vertices assigned to each as a bitmask.
type StateKey = (Vec<usize>, Vec<u16>);

/// Witness indexed by pattern vertex; UNSET where the state assigns nothing.
type Witness = Vec<usize>;

struct Table {
    entries: BTreeMap<StateKey, Witness>,
    member: BTreeMap<usize, BTreeSet<StateKey>>,
}

impl Table {
    fn new() -> Self {
        Table {
            entries: BTreeMap::new(),
            member: BTreeMap::new(),
        }
    }

    fn insert_first(&mut self, key: StateKey, witness: Witness) {
        if self.entries.contains_key(&key) {
            return;
        }
        for &t in &key.0 {
            self.member.entry(t).or_default().insert(key.clone());
        }
        self.entries.insert(key, witness);
    }

    fn remove_touching(&mut self, u: usize, v: usize) {
        let mut doomed: BTreeSet<StateKey> = BTreeSet::new();
        for x in [u, v] {
            if let Some(keys) = self.member.remove(&x) {
                doomed.extend(keys);
            }
        }
        for key in doomed {
            self.entries.remove(&key);
            for &t in &key.0 {
                if let Some(set) = self.member.get_mut(&t) {
                    set.remove(&key);
                    if set.is_empty() {
                        self.member.remove(&t);
                    }
                }
            }
        }
    }
}

/// Finds a set of vertices inducing a copy of `h`, guided by the sequence.
/// Returns the embedding as a vector indexed by pattern vertex, or `None`
/// when no induced copy exists.
pub fn induced_subgraph_isomorphism(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
) -> Result<Option<Vec<usize>>> {
    solve(g, seq, h, true, DEFAULT_PATTERN_CAP)
}

/// Finds an embedding of `h` preserving its edges but not necessarily its
/// non-edges. Same table machinery with the cross checks relaxed.
pub fn subgraph_isomorphism(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
) -> Result<Option<Vec<usize>>> {
    solve(g, seq, h, false, DEFAULT_PATTERN_CAP)
}

/// Mode and pattern cap exposed. The cap cannot exceed the image mask width
/// of 16 bits.
pub fn subgraph_isomorphism_with(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
    induced: bool,
    pattern_cap: usize,
) -> Result<Option<Vec<usize>>> {
    solve(g, seq, h, induced, pattern_cap)
}

fn solve(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
    induced: bool,
    pattern_cap: usize,
) -> Result<Option<Vec<usize>>> {
    let op = if induced {
        "induced subgraph isomorphism"
    } else {
        "subgraph isomorphism"
    };
    let k = h.n();
    let cap = pattern_cap.min(MASK_CAP);
    if k == 0 {
        return Err(Error::InvalidInput("pattern has no vertices".into()));
    }
    if k > cap {
        return Err(Error::SizeCapExceeded { op, size: k, cap });
    }
    if seq.base_n() != g.n() {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    seq.require_full(op)?;

    let hadj: Vec<u16> = (0..k)
        .map(|a| h.neighbors(a).iter().fold(0u16, |m, &b| m | 1 << b))
        .collect();
    let full: u16 = if k == MASK_CAP {
        u16::MAX
    } else {
        (1u16 << k) - 1
    };

    let mut table = Table::new();
    for v in 0..g.n() {
        for j in 0..k {
            let mut w = vec![UNSET; k];
            w[j] = v;
            if full == 1 << j {
                return Ok(Some(finish(g, h, w, induced)));
            }
            table.insert_first((vec![v], vec![1 << j]), w);
        }
    }

    let mut t = Trigraph::from_graph(g);
    for (idx, &(u, v)) in seq.steps().iter().enumerate() {
        let step_err = |e: Error| Error::MalformedSequence {
            step: idx + 1,
            reason: e.to_string(),
        };
        let z = seq.fresh_id(idx + 1);
        let u_adj = t.neighbors(u).map_err(step_err)?.clone();
        let v_adj = t.neighbors(v).map_err(step_err)?.clone();
        t.contract(u, v, z).map_err(step_err)?;
        let ctx = PreContractionView {
            t: &t,
            u,
            v,
            u_adj: &u_adj,
            v_adj: &v_adj,
        };

        let hosts = enumerate_red_connected_sets(&t, &[z], k, false)?;
        let mut staged: BTreeMap<StateKey, Witness> = BTreeMap::new();
        for host in &hosts {
            let t_minus: Vec<usize> = host.iter().copied().filter(|&x| x != z).collect();
            let splits: [&[usize]; 3] = [&[u, v], &[u], &[v]];
            for take in splits {
                let mut sorted_take = take.to_vec();
                sorted_take.sort_unstable();
                let members = merge_sorted(&t_minus, &sorted_take);
                if members.len() > k {
                    continue;
                }
                if let Some(w) = assemble(
                    &ctx,
                    &table,
                    &mut staged,
                    host,
                    z,
                    &members,
                    &hadj,
                    full,
                    induced,
                ) {
                    return Ok(Some(finish(g, h, w, induced)));
                }
            }
        }
        table.remove_touching(u, v);
        for (key, w) in staged {
            table.insert_first(key, w);
        }
    }
    Ok(None)
}

/// Internal consistency check on the witness before handing it out. The
/// verification is a direct edge-by-edge comparison against the original
/// graph, independent of the table machinery.
fn finish(g: &Graph, h: &Graph, w: Witness, induced: bool) -> Vec<usize> {
    assert!(
        oracles::embeds_pattern(g, h, &w, induced),
        "stored witness fails direct verification"
    );
    w
}

/// Every way to distribute pattern vertices over `members`, checked against
/// the stored states of the previous trigraph. Valid outcomes are staged
/// under the key with u and v folded into z; a fully covering outcome is
/// returned at once.
#[allow(clippy::too_many_arguments)]
fn assemble(
    ctx: &PreContractionView,
    table: &Table,
    staged: &mut BTreeMap<StateKey, Witness>,
    host: &[usize],
    z: usize,
    members: &[usize],
    hadj: &[u16],
    full: u16,
    induced: bool,
) -> Option<Witness> {
    // red components of the ground set in the previous trigraph
    let mut comp_of: Vec<usize> = (0..members.len()).collect();
    loop {
        let mut changed = false;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if ctx.prev_color(members[i], members[j]) == Some(EdgeColor::Red)
                    && comp_of[i] != comp_of[j]
                {
                    let lo = comp_of[i].min(comp_of[j]);
                    comp_of[i] = lo;
                    comp_of[j] = lo;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut comp_positions: Vec<Vec<usize>> = Vec::new();
    let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, &root) in comp_of.iter().enumerate() {
        let c = *comp_index.entry(root).or_insert_with(|| {
            comps.push(Vec::new());
            comp_positions.push(Vec::new());
            comps.len() - 1
        });
        comps[c].push(members[p]);
        comp_positions[c].push(p);
    }
    let mut cross: Vec<(usize, usize, bool)> = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if comp_index[&comp_of[i]] != comp_index[&comp_of[j]] {
                let black = ctx.prev_color(members[i], members[j]) == Some(EdgeColor::Black);
                cross.push((i, j, black));
            }
        }
    }

    let sc = Scaffold {
        table,
        host,
        z,
        members,
        comps: &comps,
        comp_positions: &comp_positions,
        cross: &cross,
        hadj,
        full,
        induced,
        u: ctx.u,
        v: ctx.v,
    };
    let mut masks = vec![0u16; members.len()];
    distribute(&sc, &mut masks, 0, full, staged)
}

struct Scaffold<'a> {
    table: &'a Table,
    host: &'a [usize],
    z: usize,
    members: &'a [usize],
    comps: &'a [Vec<usize>],
    comp_positions: &'a [Vec<usize>],
    cross: &'a [(usize, usize, bool)],
    hadj: &'a [u16],
    full: u16,
    induced: bool,
    u: usize,
    v: usize,
}

/// Depth-first distribution of the free pattern vertices, one ground-set
/// member at a time in id order. Branches that cannot give every remaining
/// member a nonempty image are cut.
fn distribute(
    sc: &Scaffold,
    masks: &mut Vec<u16>,
    idx: usize,
    free: u16,
    staged: &mut BTreeMap<StateKey, Witness>,
) -> Option<Witness> {
    if idx == sc.members.len() {
        return close_division(sc, masks, staged);
    }
    let remaining = sc.members.len() - idx - 1;
    let mut sub = free;
    while sub != 0 {
        if (free & !sub).count_ones() as usize >= remaining {
            masks[idx] = sub;
            if let Some(w) = distribute(sc, masks, idx + 1, free & !sub, staged) {
                return Some(w);
            }
        }
        sub = (sub - 1) & free;
    }
    None
}

/// A complete distribution: look up every red component among the stored
/// states, check the pairs across components against the pattern, then stage
/// the state with z standing in for u and v.
fn close_division(
    sc: &Scaffold,
    masks: &[u16],
    staged: &mut BTreeMap<StateKey, Witness>,
) -> Option<Witness> {
    let k = sc.hadj.len();
    let mut witness = vec![UNSET; k];
    for (c, verts) in sc.comps.iter().enumerate() {
        let key: StateKey = (
            verts.clone(),
            sc.comp_positions[c].iter().map(|&p| masks[p]).collect(),
        );
        let stored = sc.table.entries.get(&key)?;
        let mut cover = sc.comp_positions[c].iter().fold(0u16, |m, &p| m | masks[p]);
        while cover != 0 {
            let j = cover.trailing_zeros() as usize;
            cover &= cover - 1;
            witness[j] = stored[j];
        }
    }
    for &(i, j, black) in sc.cross {
        let (mx, my) = (masks[i], masks[j]);
        if black && !sc.induced {
            continue;
        }
        let mut rest = mx;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let hit = sc.hadj[a] & my;
            // a black edge joins every vertex of one part to every vertex of
            // the other, a non-edge joins none, so the pattern must agree
            // wholesale
            if (black && hit != my) || (!black && hit != 0) {
                return None;
            }
        }
    }

    let mut zmask = 0u16;
    for (p, &x) in sc.members.iter().enumerate() {
        if x == sc.u || x == sc.v {
            zmask |= masks[p];
        }
    }
    let mut key_masks = Vec::with_capacity(sc.host.len());
    for &x in sc.host {
        if x == sc.z {
            key_masks.push(zmask);
        } else {
            let p = sc.members.binary_search(&x).expect("host member survives");
            key_masks.push(masks[p]);
        }
    }
    let total = key_masks.iter().fold(0u16, |a, &b| a | b);
    if total == sc.full {
        return Some(witness);
    }
    let key = (sc.host.to_vec(), key_masks);
    staged.entry(key).or_insert(witness);
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gnp;
    use crate::graph::{complete, cycle, path};
    use crate::sequence::complement_sequence;
    use crate::toolkit::{greedy_sequence, GreedyConfig};

    fn seq_for(g: &Graph) -> ContractionSequence {
        greedy_sequence(g, &GreedyConfig::default()).expect("greedy sequence")
    }

    #[test]
    fn single_vertex_pattern_embeds_anywhere() {
        let g = cycle(4);
        let w = induced_subgraph_isomorphism(&g, &seq_for(&g), &complete(1))
            .unwrap()
            .expect("one vertex always fits");
        assert_eq!(w.len(), 1);
        assert!(w[0] < 4);
    }

    #[test]
    fn one_vertex_graph_hosts_one_vertex_pattern() {
        let g = complete(1);
        let seq = ContractionSequence::new(1);
        assert_eq!(
            induced_subgraph_isomorphism(&g, &seq, &complete(1)).unwrap(),
            Some(vec![0])
        );
    }

    #[test]
    fn triangle_not_in_square_either_mode() {
        let g = cycle(4);
        let seq = seq_for(&g);
        assert_eq!(
            induced_subgraph_isomorphism(&g, &seq, &complete(3)).unwrap(),
            None
        );
        assert_eq!(subgraph_isomorphism(&g, &seq, &complete(3)).unwrap(), None);
    }

    #[test]
    fn path_pattern_inside_square() {
        let g = cycle(4);
        let h = path(3);
        let w = induced_subgraph_isomorphism(&g, &seq_for(&g), &h)
            .unwrap()
            .expect("C4 contains an induced P3");
        assert!(oracles::embeds_pattern(&g, &h, &w, true));
    }

    #[test]
    fn two_isolated_pattern_vertices_vs_an_edge() {
        let g = complete(2);
        let seq = seq_for(&g);
        let h = Graph::empty(2);
        assert_eq!(induced_subgraph_isomorphism(&g, &seq, &h).unwrap(), None);
        let w = subgraph_isomorphism(&g, &seq, &h)
            .unwrap()
            .expect("edges may be ignored in subgraph mode");
        assert!(oracles::embeds_pattern(&g, &h, &w, false));
    }

    #[test]
    fn k4_hosts_triangle_and_square_as_subgraphs() {
        let g = complete(4);
        let seq = seq_for(&g);
        let w = subgraph_isomorphism(&g, &seq, &complete(3))
            .unwrap()
            .unwrap();
        assert!(oracles::embeds_pattern(&g, &complete(3), &w, false));
        let c4 = cycle(4);
        let w = subgraph_isomorphism(&g, &seq, &c4).unwrap().unwrap();
        assert!(oracles::embeds_pattern(&g, &c4, &w, false));
        // every 4-cycle in K4 has chords
        assert_eq!(induced_subgraph_isomorphism(&g, &seq, &c4).unwrap(), None);
    }

    #[test]
    fn matches_brute_force_search() {
        let mut case = 0u64;
        for n in [5usize, 6, 8] {
            for hn in 1..=4usize {
                for trial in 0..4u64 {
                    case += 1;
                    let g = gnp(n, 0.4, 900 + case);
                    let h = gnp(hn, 0.5, 7700 + case * 13 + trial);
                    let seq = seq_for(&g);
                    for induced in [true, false] {
                        let got =
                            subgraph_isomorphism_with(&g, &seq, &h, induced, DEFAULT_PATTERN_CAP)
                                .unwrap();
                        let want = oracles::brute_subiso(&g, &h, induced).unwrap();
                        assert_eq!(
                            got.is_some(),
                            want.is_some(),
                            "n={} hn={} trial={} induced={}",
                            n,
                            hn,
                            trial,
                            induced
                        );
                        if let Some(w) = got {
                            assert!(oracles::embeds_pattern(&g, &h, &w, induced));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_answer_survives_complementing_everything() {
        for trial in 0..12u64 {
            let g = gnp(7, 0.5, 3100 + trial);
            let h = gnp(3, 0.5, 4100 + trial);
            let seq = seq_for(&g);
            let (gc, seqc) = complement_sequence(&g, &seq);
            let hc = h.complement();
            let a = induced_subgraph_isomorphism(&g, &seq, &h).unwrap();
            let b = induced_subgraph_isomorphism(&gc, &seqc, &hc).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "trial={}", trial);
        }
    }

    #[test]
    fn induced_hit_implies_subgraph_hit() {
        for trial in 0..16u64 {
            let g = gnp(7, 0.45, 5100 + trial);
            let h = gnp(3, 0.5, 6100 + trial);
            let seq = seq_for(&g);
            if induced_subgraph_isomorphism(&g, &seq, &h)
                .unwrap()
                .is_some()
            {
                assert!(subgraph_isomorphism(&g, &seq, &h).unwrap().is_some());
            }
        }
    }

    #[test]
    fn repeated_runs_return_the_same_witness() {
        let g = gnp(8, 0.5, 12345);
        let h = path(3);
        let seq = seq_for(&g);
        let a = induced_subgraph_isomorphism(&g, &seq, &h).unwrap();
        let b = induced_subgraph_isomorphism(&g, &seq, &h).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oversized_patterns_are_rejected() {
        let g = path(9);
        let seq = seq_for(&g);
        match induced_subgraph_isomorphism(&g, &seq, &path(9)) {
            Err(Error::SizeCapExceeded {
                size: 9, cap: 8, ..
            }) => {}
            other => panic!("expected cap error, got {:?}", other),
        }
        match subgraph_isomorphism_with(&g, &seq, &path(17), false, 40) {
            Err(Error::SizeCapExceeded {
                size: 17, cap: 16, ..
            }) => {}
            other => panic!("expected mask-width error, got {:?}", other),
        }
        match induced_subgraph_isomorphism(&g, &seq, &Graph::empty(0)) {
            Err(Error::InvalidInput(_)) => {}
            other => panic!("expected input error, got {:?}", other),
        }
    }

    #[test]
    fn cap_override_admits_larger_patterns() {
        let g = path(9);
        let seq = seq_for(&g);
        let w = subgraph_isomorphism_with(&g, &seq, &path(9), true, 9)
            .unwrap()
            .expect("a path fits itself");
        assert!(oracles::embeds_pattern(&g, &path(9), &w, true));
    }
}
