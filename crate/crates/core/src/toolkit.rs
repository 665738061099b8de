//! Producers and transformers of contraction sequences.

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::is_independent;
use crate::sequence::{verify_sequence, ContractionSequence};
use crate::trigraph::Trigraph;

/// Default vertex cap for the exact search.
pub const DEFAULT_EXACT_CAP: usize = 10;
/// Default vertex cap for expanded power graphs.
pub const DEFAULT_POWER_CAP: usize = 4096;

/// Smallest `d` admitting a sequence whose intermediate trigraphs all have
/// red degree at most `d`, with a witness sequence. Exponential search over
/// vertex partitions with memoized dead ends; refuses graphs larger than
/// `n_cap`.
pub fn exact_twin_width(g: &Graph, n_cap: usize) -> Result<(usize, ContractionSequence)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if n > n_cap {
        return Err(Error::SizeCapExceeded {
            op: "exact_twin_width",
            size: n,
            cap: n_cap,
        });
    }
    for d in 0..n.max(1) {
        let mut dead: HashSet<Vec<Vec<usize>>> = HashSet::new();
        let t = Trigraph::from_graph(g);
        let parts: BTreeMap<usize, Vec<usize>> = (0..n).map(|v| (v, vec![v])).collect();
        let mut seq = ContractionSequence::new(n);
        if bounded_search(&t, &parts, d, &mut seq, &mut dead) {
            let check = verify_sequence(g, &seq)?;
            debug_assert!(check <= d);
            return Ok((check, seq));
        }
    }
    unreachable!("every graph has a sequence of red degree at most n-1");
}

fn partition_key(parts: &BTreeMap<usize, Vec<usize>>) -> Vec<Vec<usize>> {
    let mut key: Vec<Vec<usize>> = parts.values().cloned().collect();
    key.sort();
    key
}

fn bounded_search(
    t: &Trigraph,
    parts: &BTreeMap<usize, Vec<usize>>,
    d: usize,
    seq: &mut ContractionSequence,
    dead: &mut HashSet<Vec<Vec<usize>>>,
) -> bool {
    if t.live_count() <= 1 {
        return true;
    }
    let key = partition_key(parts);
    if dead.contains(&key) {
        return false;
    }
    let live: Vec<usize> = t.live_vertices().collect();
    for (i, &u) in live.iter().enumerate() {
        for &v in &live[i + 1..] {
            let (max_after, _) = t.eval_contract(u, v).expect("live pair");
            if max_after > d {
                continue;
            }
            let fresh = seq.push(u, v);
            let mut t2 = t.clone();
            t2.contract(u, v, fresh).expect("live pair");
            let mut parts2 = parts.clone();
            let mut merged = parts2.remove(&u).unwrap();
            merged.extend(parts2.remove(&v).unwrap());
            merged.sort_unstable();
            parts2.insert(fresh, merged);
            if bounded_search(&t2, &parts2, d, seq, dead) {
                return true;
            }
            seq.pop();
        }
    }
    dead.insert(key);
    false
}

impl ContractionSequence {
    fn pop(&mut self) {
        let steps_len = self.steps().len();
        debug_assert!(steps_len > 0);
        let base = self.base_n();
        let steps = self.steps()[..steps_len - 1].to_vec();
        *self = ContractionSequence::from_steps(base, steps);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidatePool {
    /// Score every live pair.
    AllPairs,
    /// Pairs within red distance 2 of each other, plus `sample` random live
    /// pairs; falls back to all pairs when that pool comes up empty.
    RedRadius2 { sample: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Prefer the smallest `(u, v)` pair.
    LexSmallest,
    /// Prefer the largest `(u, v)` pair.
    LexLargest,
}

#[derive(Debug, Clone, Copy)]
pub struct GreedyConfig {
    pub seed: u64,
    pub pool: CandidatePool,
    pub tie_break: TieBreak,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            seed: 0,
            pool: CandidatePool::AllPairs,
            tie_break: TieBreak::LexSmallest,
        }
    }
}

/// Full sequence chosen step by step: each contraction minimizes the
/// resulting maximum red degree, then the merged vertex's red degree, with
/// ties broken by pair order. Deterministic for a fixed config.
pub fn greedy_sequence(g: &Graph, cfg: &GreedyConfig) -> Result<ContractionSequence> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Trigraph::from_graph(g);
    let mut seq = ContractionSequence::new(n);
    let mut live: Vec<usize> = (0..n).collect();
    while live.len() > 1 {
        let candidates = gather_candidates(&t, &live, &cfg.pool, &mut rng);
        let mut best: Option<((usize, usize), (usize, usize))> = None;
        for &(u, v) in &candidates {
            let score = {
                let (max_after, fresh_red) = t.eval_contract(u, v).expect("live pair");
                (max_after, fresh_red)
            };
            let better = match &best {
                None => true,
                Some((bs, bp)) => {
                    score < *bs
                        || (score == *bs
                            && match cfg.tie_break {
                                TieBreak::LexSmallest => (u, v) < *bp,
                                TieBreak::LexLargest => (u, v) > *bp,
                            })
                }
            };
            if better {
                best = Some((score, (u, v)));
            }
        }
        let (_, (u, v)) = best.expect("candidate pool is never empty");
        let fresh = seq.push(u, v);
        t.contract(u, v, fresh).expect("live pair");
        live.retain(|&x| x != u && x != v);
        live.push(fresh);
    }
    Ok(seq)
}

fn gather_candidates(
    t: &Trigraph,
    live: &[usize],
    pool: &CandidatePool,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize)> {
    let all_pairs = |live: &[usize]| {
        let mut v: Vec<(usize, usize)> = Vec::new();
        let mut sorted = live.to_vec();
        sorted.sort_unstable();
        for (i, &a) in sorted.iter().enumerate() {
            for &b in &sorted[i + 1..] {
                v.push((a, b));
            }
        }
        v
    };
    match pool {
        CandidatePool::AllPairs => all_pairs(live),
        CandidatePool::RedRadius2 { sample } => {
            let mut set: HashSet<(usize, usize)> = HashSet::new();
            for &u in live {
                let ball = t.red_ball2(u).expect("live vertex");
                for &w in &ball {
                    if w != u {
                        set.insert((u.min(w), u.max(w)));
                    }
                }
            }
            let mut sorted = live.to_vec();
            sorted.sort_unstable();
            for _ in 0..*sample {
                if sorted.len() < 2 {
                    break;
                }
                let i = rng.gen_range(0..sorted.len());
                let j = rng.gen_range(0..sorted.len() - 1);
                let j = if j >= i { j + 1 } else { j };
                let (a, b) = (sorted[i].min(sorted[j]), sorted[i].max(sorted[j]));
                set.insert((a, b));
            }
            if set.is_empty() {
                return all_pairs(live);
            }
            let mut v: Vec<(usize, usize)> = set.into_iter().collect();
            v.sort_unstable();
            v
        }
    }
}

/// The interval graph on `n_blocks * k` vertices where `i` and `j` are
/// adjacent iff `|i - j| <= k - 1`, together with a sequence that merges
/// each length-`k` block back to front and then folds the block path left to
/// right. Its red degree never exceeds 2.
pub fn unit_interval_sequence(k: usize, n_blocks: usize) -> Result<(Graph, ContractionSequence)> {
    if k == 0 || n_blocks == 0 {
        return Err(Error::InvalidInput(
            "block length and block count must be positive".into(),
        ));
    }
    let n = k * n_blocks;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n.min(i + k) {
            g.add_edge(i, j).expect("interval edge");
        }
    }
    let mut seq = ContractionSequence::new(n);
    // group[i] is the current merged vertex of block i. Blocks are processed
    // back to front within a round: the growing group of block i must not
    // see stray singletons of block i+1, or a third red edge appears.
    let mut group: Vec<usize> = (0..n_blocks).map(|i| k * i + k - 1).collect();
    for r in 1..k {
        for (i, slot) in group.iter_mut().enumerate().rev() {
            let vertex = k * i + k - 1 - r;
            *slot = seq.push(vertex, *slot);
        }
    }
    let mut cur = group[0];
    for &next in &group[1..] {
        cur = seq.push(cur, next);
    }
    let _ = cur;
    Ok((g, seq))
}

/// A red-degree-0 sequence obtained by repeatedly contracting twins, or
/// `None` when the graph runs out of twins before collapsing (i.e. it is not
/// a cograph).
pub fn cograph_sequence(g: &Graph) -> Result<Option<ContractionSequence>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    let mut t = Trigraph::from_graph(g);
    let mut seq = ContractionSequence::new(n);
    let mut live: Vec<usize> = (0..n).collect();
    while live.len() > 1 {
        live.sort_unstable();
        let mut found = None;
        'scan: for (i, &u) in live.iter().enumerate() {
            for &v in &live[i + 1..] {
                let nu: Vec<usize> = t
                    .neighbors(u)
                    .expect("live")
                    .keys()
                    .copied()
                    .filter(|&x| x != v)
                    .collect();
                let nv: Vec<usize> = t
                    .neighbors(v)
                    .expect("live")
                    .keys()
                    .copied()
                    .filter(|&x| x != u)
                    .collect();
                if nu == nv {
                    found = Some((u, v));
                    break 'scan;
                }
            }
        }
        let Some((u, v)) = found else {
            return Ok(None);
        };
        let fresh = seq.push(u, v);
        t.contract(u, v, fresh).expect("twin pair");
        debug_assert_eq!(t.max_red_degree(), 0);
        live.retain(|&x| x != u && x != v);
        live.push(fresh);
    }
    Ok(Some(seq))
}

/// Replace vertex `u` of `outer` by a copy of `inner`.
///
/// Outer vertices other than `u` keep their relative order and occupy
/// `0..n1-1`; the copy occupies `n1-1..n1-1+n2`. The returned sequence first
/// collapses the copy with `inner_seq` (creating no red edges towards the
/// rest) and then follows `outer_seq` with `u` read as the collapsed copy.
/// Its verified red degree is exactly the max of the two inputs'.
pub fn substitute(
    outer: &Graph,
    outer_seq: &ContractionSequence,
    u: usize,
    inner: &Graph,
    inner_seq: &ContractionSequence,
) -> Result<(Graph, ContractionSequence)> {
    let n1 = outer.n();
    let n2 = inner.n();
    if u >= n1 {
        return Err(Error::UnknownVertex(u));
    }
    outer_seq.require_full("substitute")?;
    inner_seq.require_full("substitute")?;
    if outer_seq.base_n() != n1 || inner_seq.base_n() != n2 {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    if n2 == 0 {
        return Err(Error::InvalidInput("empty replacement graph".into()));
    }
    let n = n1 - 1 + n2;
    let rank = |w: usize| if w < u { w } else { w - 1 };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (a, b) in outer.edges() {
        if a != u && b != u {
            edges.push((rank(a), rank(b)));
        }
    }
    for &w in outer.neighbors(u) {
        for x in 0..n2 {
            edges.push((rank(w), n1 - 1 + x));
        }
    }
    for (a, b) in inner.edges() {
        edges.push((n1 - 1 + a, n1 - 1 + b));
    }
    let g = Graph::from_edges(n, edges)?;

    let mut seq = ContractionSequence::new(n);
    // fresh ids of the inner replay, indexed by inner step
    let mut inner_fresh: Vec<usize> = Vec::with_capacity(inner_seq.len());
    let map_inner = |x: usize, fresh: &[usize]| -> usize {
        if x < n2 {
            n1 - 1 + x
        } else {
            fresh[x - n2]
        }
    };
    for &(a, b) in inner_seq.steps() {
        let ma = map_inner(a, &inner_fresh);
        let mb = map_inner(b, &inner_fresh);
        inner_fresh.push(seq.push(ma, mb));
    }
    let copy_root = if n2 == 1 {
        n1 - 1
    } else {
        *inner_fresh.last().expect("inner steps")
    };
    let mut outer_fresh: Vec<usize> = Vec::with_capacity(outer_seq.len());
    let map_outer = |x: usize, fresh: &[usize]| -> usize {
        if x == u {
            copy_root
        } else if x < n1 {
            rank(x)
        } else {
            fresh[x - n1]
        }
    };
    for &(a, b) in outer_seq.steps() {
        let ma = map_outer(a, &outer_fresh);
        let mb = map_outer(b, &outer_fresh);
        outer_fresh.push(seq.push(ma, mb));
    }
    Ok((g, seq))
}

/// `t`-fold self-substitution. Vertices are the base-`n` numbers with `t`
/// digits; two of them are adjacent iff the digits at their first point of
/// difference are adjacent in `g`. The sequence collapses each block
/// recursively, then the n block roots; replaying never exceeds the input
/// sequence's red degree.
pub fn recursive_power(
    g: &Graph,
    seq: &ContractionSequence,
    t: u32,
    size_cap: usize,
) -> Result<(Graph, ContractionSequence)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    seq.require_full("recursive_power")?;
    if seq.base_n() != n {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    let size = (n as u128).checked_pow(t);
    let nt = match size {
        Some(s) if s <= size_cap as u128 => s as usize,
        _ => {
            return Err(Error::SizeCapExceeded {
                op: "recursive_power",
                size: usize::MAX,
                cap: size_cap,
            })
        }
    };
    if t == 0 {
        return Ok((Graph::empty(1), ContractionSequence::new(1)));
    }

    // digits of x, most significant first
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0usize; t as usize];
        for slot in d.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        d
    };
    let mut edges = Vec::new();
    for x in 0..nt {
        let dx = digits(x);
        for y in (x + 1)..nt {
            let dy = digits(y);
            let i = (0..t as usize).find(|&i| dx[i] != dy[i]).expect("x != y");
            if g.has_edge(dx[i], dy[i]) {
                edges.push((x, y));
            }
        }
    }
    let gt = Graph::from_edges(nt, edges)?;

    let mut out = ContractionSequence::new(nt);
    let root = emit_power_sequence(n, seq, 0, nt, &mut out);
    debug_assert!(nt == 1 || root == 2 * nt - 2);
    let _ = root;
    Ok((gt, out))
}

/// Emit the sequence for the block of `n^t` vertices starting at `base`,
/// returning the id of its final merged vertex.
fn emit_power_sequence(
    n: usize,
    seq: &ContractionSequence,
    base: usize,
    block: usize,
    out: &mut ContractionSequence,
) -> usize {
    if block == 1 {
        return base;
    }
    let sub = block / n;
    let mut roots = Vec::with_capacity(n);
    for x in 0..n {
        roots.push(emit_power_sequence(n, seq, base + x * sub, sub, out));
    }
    let mut fresh: Vec<usize> = Vec::with_capacity(seq.len());
    for &(a, b) in seq.steps() {
        let map = |x: usize, fresh: &[usize]| if x < n { roots[x] } else { fresh[x - n] };
        let ma = map(a, &fresh);
        let mb = map(b, &fresh);
        fresh.push(out.push(ma, mb));
    }
    *fresh.last().expect("n >= 2 here")
}

/// Independent set of `g` expanded to the `t`-th recursive power: all digit
/// strings over the set. Size `|set|^t`.
pub fn lift_independent_set(g: &Graph, set: &[usize], t: u32) -> Result<Vec<usize>> {
    if t == 0 {
        return Err(Error::InvalidInput(
            "power exponent must be positive".into(),
        ));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() {
        return Err(Error::ContractViolation("duplicate vertices in set".into()));
    }
    if !is_independent(g, &sorted) {
        return Err(Error::ContractViolation(
            "input set is not independent".into(),
        ));
    }
    for &v in &sorted {
        if v >= g.n() {
            return Err(Error::UnknownVertex(v));
        }
    }
    let n = g.n();
    let mut out = vec![0usize];
    for _ in 0..t {
        let mut next = Vec::with_capacity(out.len() * sorted.len());
        for &prefix in &out {
            for &d in &sorted {
                next.push(prefix * n + d);
            }
        }
        out = next;
    }
    Ok(out)
}

fn power_digits(n: usize, t: u32, mut x: usize) -> Vec<usize> {
    let mut d = vec![0usize; t as usize];
    for slot in d.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
    d
}

fn power_adjacent(g: &Graph, t: u32, x: usize, y: usize) -> bool {
    let dx = power_digits(g.n(), t, x);
    let dy = power_digits(g.n(), t, y);
    for i in 0..t as usize {
        if dx[i] != dy[i] {
            return g.has_edge(dx[i], dy[i]);
        }
    }
    false
}

/// Shrink an independent set of the `t`-th recursive power back to one of
/// `g` with at least `ceil(|set|^(1/t))` vertices: keep the first-digit
/// projection when it is already large enough, otherwise recurse into the
/// heaviest digit class.
pub fn extract_independent_set(g: &Graph, set: &[usize], t: u32) -> Result<Vec<usize>> {
    if t == 0 {
        return Err(Error::InvalidInput(
            "power exponent must be positive".into(),
        ));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    let mut cur: Vec<usize> = set.to_vec();
    cur.sort_unstable();
    cur.dedup();
    if cur.len() != set.len() {
        return Err(Error::ContractViolation("duplicate vertices in set".into()));
    }
    let nt = (n as u128).pow(t);
    for &v in &cur {
        if (v as u128) >= nt {
            return Err(Error::UnknownVertex(v));
        }
    }
    for (i, &x) in cur.iter().enumerate() {
        for &y in &cur[i + 1..] {
            if power_adjacent(g, t, x, y) {
                return Err(Error::ContractViolation(
                    "input set is not independent in the power graph".into(),
                ));
            }
        }
    }
    if cur.is_empty() {
        return Ok(Vec::new());
    }

    let mut level = t;
    loop {
        if level == 1 {
            return Ok(cur);
        }
        // smallest r with r^level >= |cur|
        let target = cur.len();
        let mut r = 1usize;
        while (r as u128).pow(level) < target as u128 {
            r += 1;
        }
        let block = n.pow(level - 1);
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &cur {
            classes.entry(x / block).or_default().push(x % block);
        }
        if classes.len() >= r {
            return Ok(classes.keys().copied().take(r).collect());
        }
        let (_, heaviest) = classes
            .into_iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))
            .expect("nonempty set");
        cur = heaviest;
        level -= 1;
    }
}

/// Graph with the same vertices and an edge between every pair at distance
/// between 1 and `r` in `g`.
pub fn power_graph(g: &Graph, r: usize) -> Result<Graph> {
    let n = g.n();
    let mut edges = Vec::new();
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if dist[u] == r {
                continue;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        for (v, &dv) in dist.iter().enumerate().skip(s + 1) {
            if dv != usize::MAX && (1..=r).contains(&dv) {
                edges.push((s, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};
    use crate::oracles::brute_alpha;

    #[test]
    fn exact_values_on_small_graphs() {
        let (d, seq) = exact_twin_width(&cycle(4), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(d, 0);
        assert_eq!(verify_sequence(&cycle(4), &seq).unwrap(), 0);
        let (d, seq) = exact_twin_width(&path(4), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(d, 1);
        assert_eq!(verify_sequence(&path(4), &seq).unwrap(), 1);
        let (d, _) = exact_twin_width(&path(1), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(d, 0);
    }

    #[test]
    fn exact_cap_is_enforced() {
        assert!(matches!(
            exact_twin_width(&path(11), DEFAULT_EXACT_CAP),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn greedy_handles_twin_rich_graphs() {
        let g = complete(7);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
        let g = cycle(4);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn greedy_pools_agree_on_tiny_inputs() {
        let g = path(6);
        let a = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        let b = greedy_sequence(
            &g,
            &GreedyConfig {
                seed: 7,
                pool: CandidatePool::RedRadius2 { sample: 10 },
                tie_break: TieBreak::LexSmallest,
            },
        )
        .unwrap();
        assert!(verify_sequence(&g, &a).unwrap() <= 2);
        assert!(verify_sequence(&g, &b).unwrap() <= 2);
    }

    #[test]
    fn unit_interval_red_degree_stays_low() {
        for (k, n) in [
            (1, 1),
            (1, 4),
            (2, 1),
            (2, 3),
            (3, 3),
            (4, 5),
            (5, 2),
            (3, 17),
            (7, 6),
            (10, 20),
            (25, 8),
        ] {
            let (g, seq) = unit_interval_sequence(k, n).unwrap();
            assert!(seq.is_full());
            let d = verify_sequence(&g, &seq).unwrap();
            assert!(d <= 2, "k={k} n={n}: d={d}");
        }
    }

    #[test]
    fn unit_interval_shape() {
        let (g, _) = unit_interval_sequence(3, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert!(g.has_edge(0, 2));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.degree(4), 4);
    }

    #[test]
    fn cograph_detection() {
        assert!(cograph_sequence(&path(4)).unwrap().is_none());
        let seq = cograph_sequence(&cycle(4)).unwrap().unwrap();
        assert_eq!(verify_sequence(&cycle(4), &seq).unwrap(), 0);
        let seq = cograph_sequence(&complete(5)).unwrap().unwrap();
        assert_eq!(verify_sequence(&complete(5), &seq).unwrap(), 0);
        assert!(cograph_sequence(&path(1)).unwrap().unwrap().is_empty());
    }

    #[test]
    fn substitute_identity_cases() {
        // replacing by K1 is an isomorphism
        let g1 = cycle(5);
        let (_, s1) = exact_twin_width(&g1, 10).unwrap();
        let k1 = Graph::empty(1);
        let (g, seq) = substitute(&g1, &s1, 2, &k1, &ContractionSequence::new(1)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 5);
        assert_eq!(
            verify_sequence(&g, &seq).unwrap(),
            verify_sequence(&g1, &s1).unwrap()
        );
    }

    #[test]
    fn substitute_edge_by_two_isolated() {
        // K2 with one endpoint replaced by 2K1 gives a path of two pendant
        // vertices hanging off the surviving endpoint.
        let k2 = complete(2);
        let (_, s_outer) = exact_twin_width(&k2, 10).unwrap();
        let e2 = Graph::empty(2);
        let (_, s_inner) = exact_twin_width(&e2, 10).unwrap();
        let (g, seq) = substitute(&k2, &s_outer, 0, &e2, &s_inner).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 2));
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn substitution_red_degree_is_max_of_inputs() {
        let g1 = path(5);
        let (d1, s1) = exact_twin_width(&g1, 10).unwrap();
        let g2 = path(4);
        let (d2, s2) = exact_twin_width(&g2, 10).unwrap();
        let (g, seq) = substitute(&g1, &s1, 3, &g2, &s2).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(verify_sequence(&g, &seq).unwrap(), d1.max(d2));
    }

    #[test]
    fn recursive_power_basics() {
        let g = cycle(5);
        let (_, s) = exact_twin_width(&g, 10).unwrap();
        let (g0, s0) = recursive_power(&g, &s, 0, DEFAULT_POWER_CAP).unwrap();
        assert_eq!(g0.n(), 1);
        assert!(s0.is_empty());
        let (g1, s1) = recursive_power(&g, &s, 1, DEFAULT_POWER_CAP).unwrap();
        assert_eq!(g1, g);
        assert_eq!(
            verify_sequence(&g1, &s1).unwrap(),
            verify_sequence(&g, &s).unwrap()
        );
        let (g2, s2) = recursive_power(&g, &s, 2, DEFAULT_POWER_CAP).unwrap();
        assert_eq!(g2.n(), 25);
        assert_eq!(
            verify_sequence(&g2, &s2).unwrap(),
            verify_sequence(&g, &s).unwrap()
        );
        // blocks are copies: 10-14 is the second block of C5^2
        assert!(g2.has_edge(10, 11));
        assert!(!g2.has_edge(10, 12));
        // across blocks, the first digit decides
        assert!(g2.has_edge(0, 5));
        assert!(g2.has_edge(4, 9));
        assert!(!g2.has_edge(0, 10));
    }

    #[test]
    fn power_alpha_is_squared() {
        let g = cycle(5);
        let (_, s) = exact_twin_width(&g, 10).unwrap();
        let (g2, _) = recursive_power(&g, &s, 2, DEFAULT_POWER_CAP).unwrap();
        let base = brute_alpha(&g).unwrap();
        assert_eq!(base.len(), 2);
        let lifted = lift_independent_set(&g, &base, 2).unwrap();
        assert_eq!(lifted.len(), 4);
        assert!(is_independent(&g2, &lifted));
        let back = extract_independent_set(&g, &lifted, 2).unwrap();
        assert!(back.len() >= 2);
        assert!(is_independent(&g, &back));
    }

    #[test]
    fn lift_rejects_dependent_input() {
        let g = path(3);
        assert!(matches!(
            lift_independent_set(&g, &[0, 1], 2),
            Err(Error::ContractViolation(_))
        ));
        assert_eq!(
            lift_independent_set(&g, &[], 2).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn extract_meets_root_bound() {
        let g = cycle(6);
        // alpha = 3; pack 9 vertices into the square and extract 3 back
        let base = brute_alpha(&g).unwrap();
        let lifted = lift_independent_set(&g, &base, 2).unwrap();
        assert_eq!(lifted.len(), 9);
        let back = extract_independent_set(&g, &lifted, 2).unwrap();
        assert!(back.len() >= 3);
        assert!(is_independent(&g, &back));
        // degenerate: one tuple exposes one vertex
        let back = extract_independent_set(&g, &lifted[..1], 2).unwrap();
        assert_eq!(back.len(), 1);
    }

    #[test]
    fn power_graph_examples() {
        let p4 = path(4);
        let g2 = power_graph(&p4, 2).unwrap();
        let mut edges = g2.edges();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let g3 = power_graph(&cycle(6), 3).unwrap();
        assert_eq!(g3.m(), 15);
        assert_eq!(power_graph(&p4, 1).unwrap(), p4);
        assert_eq!(power_graph(&p4, 0).unwrap(), Graph::empty(4));
    }
}
