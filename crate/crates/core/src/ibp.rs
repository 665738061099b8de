//! Interval biclique partitions and breadth-first search over them.
//!
//! A full contraction sequence orders the vertices by the leaf order of its
//! union tree, so every part that ever exists during the sequence occupies a
//! block of consecutive positions. Rewinding the sequence from the
//! single-vertex end and recording each black edge the moment it first
//! appears yields a family of complete bipartite pieces, one per recorded
//! edge, whose two sides are such blocks. The pieces tile the edge set: each
//! graph edge lies in exactly one of them. A sequence of width d records at
//! most d + 1 pieces per split, so the family has at most (d + 1)(n - 1)
//! members no matter how dense the graph is.
//!
//! Once the edge set is tiled this way, breadth-first search can charge its
//! work to pieces instead of edges. Two ordered structures drive it, one over
//! the piece sides and one over the undiscovered vertices. Taking a vertex u
//! out of the queue stabs the side structure at u's position, removes the
//! sides found (their partners stay, so each piece can still be crossed once
//! in the other direction), and sweeps the partner blocks for undiscovered
//! vertices. Every side is removed at most once and every vertex discovered
//! at most once, which bounds the whole run by O((n + |pieces|) log n).

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sequence::{verify_sequence, ContractionSequence};
use crate::trigraph::{EdgeColor, Trigraph};
use crate::union_tree::{build_union_tree, OrderedUnionTree};

/// Multiset of closed intervals supporting point and range queries.
///
/// Entries are keyed by `(lo, hi, id)` in a balanced ordered tree. The tree
/// is a treap whose heap priorities are a fixed hash of the key, so its shape
/// is a pure function of the stored set and runs reproduce exactly. Every
/// subtree caches the maximum `hi` below it, letting queries skip subtrees
/// that cannot contain a hit. Insert and delete take O(log n); queries take
/// O(log n) plus time proportional to the output.
#[derive(Debug, Clone, Default)]
pub struct StabbingStructure {
    root: Link,
    len: usize,
}

type Key = (usize, usize, usize);
type Link = Option<Box<Node>>;

#[derive(Debug, Clone)]
struct Node {
    key: Key,
    prio: u64,
    max_hi: usize,
    left: Link,
    right: Link,
}

/// splitmix64 over the packed key. Fixed constants keep tree shapes, and
/// with them every downstream byte, reproducible across runs.
fn prio_of(key: Key) -> u64 {
    let mut x = (key.0 as u64)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add((key.1 as u64).rotate_left(21))
        .wrapping_add((key.2 as u64).rotate_left(42))
        .wrapping_add(0x243f_6a88_85a3_08d3);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Node {
    fn boxed(key: Key) -> Box<Node> {
        Box::new(Node {
            key,
            prio: prio_of(key),
            max_hi: key.1,
            left: None,
            right: None,
        })
    }

    fn refresh(&mut self) {
        let mut m = self.key.1;
        if let Some(l) = &self.left {
            m = m.max(l.max_hi);
        }
        if let Some(r) = &self.right {
            m = m.max(r.max_hi);
        }
        self.max_hi = m;
    }
}

fn merge(a: Link, b: Link) -> Link {
    match (a, b) {
        (None, t) | (t, None) => t,
        (Some(mut a), Some(mut b)) => {
            if a.prio >= b.prio {
                a.right = merge(a.right.take(), Some(b));
                a.refresh();
                Some(a)
            } else {
                b.left = merge(Some(a), b.left.take());
                b.refresh();
                Some(b)
            }
        }
    }
}

/// Split into keys strictly below `key` and the rest.
fn split(t: Link, key: &Key) -> (Link, Link) {
    let Some(mut n) = t else {
        return (None, None);
    };
    if n.key < *key {
        let (mid, right) = split(n.right.take(), key);
        n.right = mid;
        n.refresh();
        (Some(n), right)
    } else {
        let (left, mid) = split(n.left.take(), key);
        n.left = mid;
        n.refresh();
        (left, Some(n))
    }
}

fn remove(t: Link, key: &Key) -> (Link, bool) {
    let Some(mut n) = t else {
        return (None, false);
    };
    if *key == n.key {
        return (merge(n.left.take(), n.right.take()), true);
    }
    let hit;
    if *key < n.key {
        let (rest, found) = remove(n.left.take(), key);
        n.left = rest;
        hit = found;
    } else {
        let (rest, found) = remove(n.right.take(), key);
        n.right = rest;
        hit = found;
    }
    n.refresh();
    (Some(n), hit)
}

fn stab_rec(t: &Link, p: usize, out: &mut Vec<Key>) {
    let Some(n) = t else {
        return;
    };
    if n.max_hi < p {
        return;
    }
    stab_rec(&n.left, p, out);
    // Keys right of this node start no earlier than it does, so once the
    // node itself starts past p the whole right side can be skipped.
    if n.key.0 <= p {
        if n.key.1 >= p {
            out.push(n.key);
        }
        stab_rec(&n.right, p, out);
    }
}

fn inter_rec(t: &Link, lo: usize, hi: usize, out: &mut Vec<Key>) {
    let Some(n) = t else {
        return;
    };
    if n.max_hi < lo {
        return;
    }
    inter_rec(&n.left, lo, hi, out);
    if n.key.0 <= hi {
        if n.key.1 >= lo {
            out.push(n.key);
        }
        inter_rec(&n.right, lo, hi, out);
    }
}

impl StabbingStructure {
    pub fn new() -> Self {
        StabbingStructure::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Store the closed interval `[lo, hi]` under `id`. Equal keys are kept
    /// as separate entries.
    pub fn insert(&mut self, lo: usize, hi: usize, id: usize) -> Result<()> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval [{lo}, {hi}] is inverted"
            )));
        }
        let key = (lo, hi, id);
        let (left, right) = split(self.root.take(), &key);
        self.root = merge(merge(left, Some(Node::boxed(key))), right);
        self.len += 1;
        Ok(())
    }

    /// Remove one entry with exactly this key; reports whether one existed.
    pub fn delete(&mut self, lo: usize, hi: usize, id: usize) -> bool {
        let (rest, hit) = remove(self.root.take(), &(lo, hi, id));
        self.root = rest;
        if hit {
            self.len -= 1;
        }
        hit
    }

    /// All entries whose interval contains `p`, in key order.
    pub fn stab(&self, p: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        stab_rec(&self.root, p, &mut out);
        out
    }

    /// All entries whose interval meets `[lo, hi]`, in key order.
    pub fn intersecting(&self, lo: usize, hi: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        inter_rec(&self.root, lo, hi, &mut out);
        out
    }
}

/// Two inclusive position blocks with every cross pair an edge.
pub type Biclique = ((usize, usize), (usize, usize));

/// Complete bipartite pieces that tile a graph's edge set.
///
/// Positions come from relabeling the vertices by the union tree's leaf
/// order. Each piece pairs two disjoint inclusive position blocks; every
/// position in one block is adjacent to every position in the other, and
/// each edge of the source graph lies in exactly one piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBicliquePartition {
    n: usize,
    /// original id -> position
    pos_of: Vec<usize>,
    /// position -> original id
    orig_at: Vec<usize>,
    bicliques: Vec<Biclique>,
}

/// Left-to-right leaf order of a union tree, as a map from original vertex
/// id to position. Every part formed by the underlying sequence occupies a
/// contiguous run of positions under this order.
pub fn relabel_by_union_tree(tree: &OrderedUnionTree) -> Vec<usize> {
    tree.permutation().to_vec()
}

/// Tile the edge set of `g` by replaying `seq` and recording, back to front,
/// each black edge at the split where it first appears.
///
/// Reading the sequence backwards, the vertex contracted at a step splits
/// into its two children. A black edge of the finer trigraph is new when it
/// was not already black between the coarser parts: the edge between the two
/// children counts, and an edge from a child to a bystander counts exactly
/// when the merged vertex saw that bystander in red. Each recorded edge
/// contributes the biclique of its endpoints' position blocks.
pub fn build_ibp(g: &Graph, seq: &ContractionSequence) -> Result<IntervalBicliquePartition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if seq.base_n() != n {
        return Err(Error::InvalidInput(format!(
            "sequence is over {} vertices, graph has {}",
            seq.base_n(),
            n
        )));
    }
    seq.require_full("interval biclique partition")?;
    let d = verify_sequence(g, seq)?;
    let tree = build_union_tree(seq)?;

    let mut per_step: Vec<Vec<Biclique>> = Vec::with_capacity(seq.len());
    let mut t = Trigraph::from_graph(g);
    for (i, &(u, v)) in seq.steps().iter().enumerate() {
        let uv = t.edge_color(u, v)?;
        let black_partners = |adj: &std::collections::BTreeMap<usize, EdgeColor>| {
            adj.iter()
                .filter(|&(&y, &c)| c == EdgeColor::Black && y != u && y != v)
                .map(|(&y, _)| y)
                .collect::<Vec<usize>>()
        };
        let u_black = black_partners(t.neighbors(u)?);
        let v_black = black_partners(t.neighbors(v)?);
        let z = seq.fresh_id(i + 1);
        t.contract(u, v, z)?;

        let mut recs = Vec::new();
        if uv == Some(EdgeColor::Black) {
            recs.push((tree.interval(u)?, tree.interval(v)?));
        }
        for (side, partners) in [(u, &u_black), (v, &v_black)] {
            for &y in partners {
                // A black survivor edge means the merged vertex keeps black
                // too, and then the edge was already recorded higher up.
                if t.edge_color(z, y)? == Some(EdgeColor::Red) {
                    recs.push((tree.interval(side)?, tree.interval(y)?));
                }
            }
        }
        debug_assert!(
            recs.len() <= d + 1,
            "split {} recorded {} pieces with width {}",
            i + 1,
            recs.len(),
            d
        );
        per_step.push(recs);
    }

    let mut bicliques = Vec::new();
    for recs in per_step.iter().rev() {
        bicliques.extend(recs.iter().copied());
    }
    debug_assert!(bicliques.len() <= (d + 1) * (n - 1));

    let mut orig_at = Vec::with_capacity(n);
    for p in 0..n {
        orig_at.push(tree.original_at(p)?);
    }
    Ok(IntervalBicliquePartition {
        n,
        pos_of: relabel_by_union_tree(&tree),
        orig_at,
        bicliques,
    })
}

/// The partition a complete graph gets from the chain sequence that merges
/// the last two vertices and then keeps prepending the next one: block `[k]`
/// against block `[k+1, n-1]` for every k. Built directly so callers can
/// reach sizes where the graph itself would be far too dense to materialize.
pub fn clique_chain(n: usize) -> Result<IntervalBicliquePartition> {
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    let bicliques = (0..n.saturating_sub(1))
        .map(|k| ((k, k), (k + 1, n - 1)))
        .collect();
    Ok(IntervalBicliquePartition {
        n,
        pos_of: (0..n).collect(),
        orig_at: (0..n).collect(),
        bicliques,
    })
}

/// Breadth-first distances and parents from one source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPaths {
    source: usize,
    dist: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
}

impl ShortestPaths {
    pub fn source(&self) -> usize {
        self.source
    }

    /// Hop count from the source, `None` when unreachable.
    pub fn distance(&self, v: usize) -> Result<Option<usize>> {
        self.dist.get(v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Previous vertex on one shortest path; `None` at the source and on
    /// unreachable vertices.
    pub fn parent(&self, v: usize) -> Result<Option<usize>> {
        self.parent.get(v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn distances(&self) -> &[Option<usize>] {
        &self.dist
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// One `<v> <dist>` line per vertex, `INF` for unreachable ones.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, entry) in self.dist.iter().enumerate() {
            match entry {
                Some(x) => {
                    let _ = writeln!(s, "{v} {x}");
                }
                None => {
                    let _ = writeln!(s, "{v} INF");
                }
            }
        }
        s
    }
}

/// Structure traffic of one traversal, used to check that sides leave the
/// side structure at most once each.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalStats {
    /// Side entries removed from the side structure.
    pub side_deletions: usize,
    /// Removals that found nothing; always zero when each side is deleted
    /// at most once.
    pub failed_deletions: usize,
    /// Stabbing queries issued, one per dequeued vertex.
    pub queries: usize,
}

impl IntervalBicliquePartition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    /// Position of an original vertex under the relabeling.
    pub fn position_of(&self, orig: usize) -> Result<usize> {
        self.pos_of
            .get(orig)
            .copied()
            .ok_or(Error::UnknownVertex(orig))
    }

    /// Original vertex sitting at a position.
    pub fn original_at(&self, pos: usize) -> Result<usize> {
        self.orig_at
            .get(pos)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("position {pos} out of range")))
    }

    /// The permutation original id -> position.
    pub fn permutation(&self) -> &[usize] {
        &self.pos_of
    }

    /// Structural checks: blocks in range and not inverted, the two sides of
    /// each piece disjoint, the relabeling a bijection.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidInput(msg);
        if self.pos_of.len() != self.n || self.orig_at.len() != self.n {
            return Err(bad("relabeling length disagrees with n".into()));
        }
        for (orig, &pos) in self.pos_of.iter().enumerate() {
            if pos >= self.n || self.orig_at[pos] != orig {
                return Err(bad(format!("relabeling is not a bijection at {orig}")));
            }
        }
        for (i, &((a1, a2), (b1, b2))) in self.bicliques.iter().enumerate() {
            if a1 > a2 || b1 > b2 {
                return Err(bad(format!("piece {i} has an inverted block")));
            }
            if a2 >= self.n || b2 >= self.n {
                return Err(bad(format!("piece {i} leaves the position range")));
            }
            if a1 <= b2 && b1 <= a2 {
                return Err(bad(format!("piece {i} has overlapping sides")));
            }
        }
        Ok(())
    }

    /// Breadth-first search from `source` over the pieces.
    pub fn sssp(&self, source: usize) -> Result<ShortestPaths> {
        Ok(self.sssp_with_stats(source)?.0)
    }

    /// Like [`Self::sssp`], also reporting structure traffic.
    ///
    /// Side entries 2i and 2i+1 belong to piece i and pair with each other.
    /// Dequeuing a vertex removes the sides containing it, then sweeps their
    /// partner blocks for undiscovered vertices. A removed side's partner
    /// stays, so the piece can still be crossed once in the other direction.
    pub fn sssp_with_stats(&self, source: usize) -> Result<(ShortestPaths, TraversalStats)> {
        let n = self.n;
        if source >= n {
            return Err(Error::UnknownVertex(source));
        }

        let mut sides: Vec<(usize, usize)> = Vec::with_capacity(2 * self.bicliques.len());
        for &(a, b) in &self.bicliques {
            sides.push(a);
            sides.push(b);
        }
        let mut live_sides = StabbingStructure::new();
        for (e, &(lo, hi)) in sides.iter().enumerate() {
            live_sides.insert(lo, hi, e)?;
        }
        let src_pos = self.pos_of[source];
        let mut undiscovered = StabbingStructure::new();
        for p in 0..n {
            if p != src_pos {
                undiscovered.insert(p, p, p)?;
            }
        }

        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([src_pos]);
        let mut stats = TraversalStats::default();
        while let Some(pu) = queue.pop_front() {
            let u = self.orig_at[pu];
            let du = dist[u].expect("queued vertices have a distance");
            stats.queries += 1;
            let hit = live_sides.stab(pu);
            for &(lo, hi, e) in &hit {
                if live_sides.delete(lo, hi, e) {
                    stats.side_deletions += 1;
                } else {
                    stats.failed_deletions += 1;
                }
            }
            for &(_, _, e) in &hit {
                let (plo, phi) = sides[e ^ 1];
                for (w, _, _) in undiscovered.intersecting(plo, phi) {
                    undiscovered.delete(w, w, w);
                    let v = self.orig_at[w];
                    dist[v] = Some(du + 1);
                    parent[v] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        Ok((
            ShortestPaths {
                source,
                dist,
                parent,
            },
            stats,
        ))
    }

    /// Distance matrix, one fresh traversal per source.
    pub fn apsp(&self) -> Result<Vec<Vec<Option<usize>>>> {
        (0..self.n).map(|s| Ok(self.sssp(s)?.dist)).collect()
    }

    /// Largest finite distance, `None` when some pair is unreachable.
    pub fn diameter(&self) -> Result<Option<usize>> {
        let mut best = 0usize;
        for s in 0..self.n {
            let paths = self.sssp(s)?;
            for &entry in paths.distances() {
                match entry {
                    None => return Ok(None),
                    Some(x) => best = best.max(x),
                }
            }
        }
        Ok(Some(best))
    }

    /// Serialize as a header line `b tww <n> <count>`, one `<a1> <a2> <b1>
    /// <b2>` line per piece, then the relabeling as `pi <orig> <pos>` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "b tww {} {}", self.n, self.bicliques.len());
        for &((a1, a2), (b1, b2)) in &self.bicliques {
            let _ = writeln!(s, "{a1} {a2} {b1} {b2}");
        }
        for (orig, &pos) in self.pos_of.iter().enumerate() {
            let _ = writeln!(s, "pi {orig} {pos}");
        }
        s
    }

    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            file: name.to_string(),
            line,
            msg,
        };
        let mut header: Option<(usize, usize)> = None;
        let mut bicliques = Vec::new();
        let mut pos_of: Vec<Option<usize>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            let first = tok.next().unwrap_or_default();
            if first == "b" {
                if header.is_some() {
                    return Err(err(lineno, "duplicate b line".into()));
                }
                if tok.next() != Some("tww") {
                    return Err(err(lineno, "expected 'b tww <n> <count>'".into()));
                }
                let n: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex count".into()))?;
                let count: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "bad piece count".into()))?;
                header = Some((n, count));
                pos_of = vec![None; n];
                continue;
            }
            if header.is_none() {
                return Err(err(lineno, "record before b line".into()));
            }
            if first == "pi" {
                let orig: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex id".into()))?;
                let pos: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "bad position".into()))?;
                if orig >= pos_of.len() {
                    return Err(err(lineno, format!("vertex {orig} out of range")));
                }
                if pos_of[orig].is_some() {
                    return Err(err(lineno, format!("vertex {orig} relabeled twice")));
                }
                pos_of[orig] = Some(pos);
                continue;
            }
            let mut nums = Vec::with_capacity(4);
            for t in std::iter::once(first).chain(tok) {
                nums.push(
                    t.parse::<usize>()
                        .map_err(|_| err(lineno, format!("bad endpoint '{t}'")))?,
                );
            }
            if nums.len() != 4 {
                return Err(err(lineno, "piece lines need four endpoints".into()));
            }
            bicliques.push(((nums[0], nums[1]), (nums[2], nums[3])));
        }
        let (n, count) = header.ok_or_else(|| err(0, "missing b line".into()))?;
        if bicliques.len() != count {
            return Err(err(
                0,
                format!(
                    "header declares {count} pieces, file has {}",
                    bicliques.len()
                ),
            ));
        }
        let mut orig_at = vec![usize::MAX; n];
        let mut filled = Vec::with_capacity(n);
        for (orig, pos) in pos_of.iter().enumerate() {
            let pos = pos.ok_or_else(|| err(0, format!("vertex {orig} has no position")))?;
            if pos >= n {
                return Err(err(0, format!("position {pos} out of range")));
            }
            orig_at[pos] = orig;
            filled.push(pos);
        }
        let ibp = IntervalBicliquePartition {
            n,
            pos_of: filled,
            orig_at,
            bicliques,
        };
        ibp.validate().map_err(|e| err(0, e.to_string()))?;
        Ok(ibp)
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        IntervalBicliquePartition::parse(&path.display().to_string(), &text)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// 64-bit digest of the labeled partition, for run reports.
    pub fn digest(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        let mut eat = |x: usize| {
            h ^= x as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        eat(self.n);
        for &p in &self.pos_of {
            eat(p);
        }
        for &((a1, a2), (b1, b2)) in &self.bicliques {
            eat(a1);
            eat(a2);
            eat(b1);
            eat(b2);
        }
        h
    }
}

/// Build the partition for `g` under `seq`, then run one traversal.
pub fn sssp(g: &Graph, seq: &ContractionSequence, source: usize) -> Result<ShortestPaths> {
    build_ibp(g, seq)?.sssp(source)
}

/// Build the partition once, then run a traversal from every source.
pub fn apsp(g: &Graph, seq: &ContractionSequence) -> Result<Vec<Vec<Option<usize>>>> {
    build_ibp(g, seq)?.apsp()
}

/// Largest finite distance in `g`, `None` when `g` is disconnected.
pub fn diameter(g: &Graph, seq: &ContractionSequence) -> Result<Option<usize>> {
    build_ibp(g, seq)?.diameter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gnp;
    use crate::graph::{complete, cycle, path};
    use crate::oracles::bfs_distances;
    use crate::toolkit::{exact_twin_width, greedy_sequence, unit_interval_sequence, GreedyConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn suffix_chain(n: usize) -> ContractionSequence {
        let mut seq = ContractionSequence::new(n);
        if n >= 2 {
            let mut prev = seq.push(n - 2, n - 1);
            for k in (0..n - 2).rev() {
                prev = seq.push(k, prev);
            }
        }
        seq
    }

    fn edge_cover_counts(ibp: &IntervalBicliquePartition) -> BTreeMap<(usize, usize), usize> {
        let mut count = BTreeMap::new();
        for &((a1, a2), (b1, b2)) in ibp.bicliques() {
            for p in a1..=a2 {
                for q in b1..=b2 {
                    let u = ibp.original_at(p).unwrap();
                    let v = ibp.original_at(q).unwrap();
                    *count.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
                }
            }
        }
        count
    }

    fn assert_exact_partition(g: &Graph, ibp: &IntervalBicliquePartition) {
        let cover = edge_cover_counts(ibp);
        for (e, c) in &cover {
            assert_eq!(*c, 1, "edge {e:?} covered {c} times");
        }
        let edges: Vec<(usize, usize)> = g.edges();
        assert_eq!(cover.keys().copied().collect::<Vec<_>>(), edges);
    }

    fn assert_laminar_sides(ibp: &IntervalBicliquePartition) {
        let mut sides = Vec::new();
        for &(a, b) in ibp.bicliques() {
            sides.push(a);
            sides.push(b);
        }
        sides.sort();
        sides.dedup();
        for (i, &(a1, a2)) in sides.iter().enumerate() {
            for &(b1, b2) in &sides[i + 1..] {
                let crossing = a1 < b1 && b1 <= a2 && a2 < b2;
                assert!(!crossing, "sides [{a1},{a2}] and [{b1},{b2}] cross");
            }
        }
    }

    fn assert_matches_bfs(g: &Graph, ibp: &IntervalBicliquePartition) {
        for s in 0..g.n() {
            let (paths, stats) = ibp.sssp_with_stats(s).unwrap();
            assert_eq!(
                paths.distances(),
                bfs_distances(g, s).unwrap(),
                "source {s}"
            );
            assert_eq!(stats.failed_deletions, 0);
            assert!(stats.side_deletions <= 2 * ibp.bicliques().len());
            assert_eq!(paths.parent(s).unwrap(), None);
            for v in 0..g.n() {
                match paths.parent(v).unwrap() {
                    Some(p) => {
                        assert!(g.has_edge(p, v));
                        assert_eq!(
                            paths.distance(v).unwrap().unwrap(),
                            paths.distance(p).unwrap().unwrap() + 1
                        );
                    }
                    None => {
                        assert!(v == s || paths.distance(v).unwrap().is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn edgeless_graphs_have_no_pieces() {
        let g = Graph::empty(5);
        let seq = ContractionSequence::from_steps(5, vec![(0, 1), (5, 2), (6, 3), (7, 4)]);
        let ibp = build_ibp(&g, &seq).unwrap();
        assert!(ibp.bicliques().is_empty());
        let paths = ibp.sssp(2).unwrap();
        assert_eq!(paths.distance(2).unwrap(), Some(0));
        for v in [0, 1, 3, 4] {
            assert_eq!(paths.distance(v).unwrap(), None);
        }

        let one = build_ibp(&complete(1), &ContractionSequence::new(1)).unwrap();
        assert!(one.bicliques().is_empty());
        assert_eq!(one.diameter().unwrap(), Some(0));
    }

    #[test]
    fn clique_chain_matches_the_rewound_partition() {
        for n in [2usize, 3, 6, 9] {
            let g = complete(n);
            let seq = suffix_chain(n);
            assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
            let built = build_ibp(&g, &seq).unwrap();
            let direct = clique_chain(n).unwrap();
            assert_eq!(built, direct, "n = {n}");
            assert_eq!(built.bicliques().len(), n - 1);
            assert_exact_partition(&g, &built);
        }
        let b6 = clique_chain(6).unwrap();
        assert_eq!(b6.bicliques()[0], ((0, 0), (1, 5)));
        assert_eq!(b6.bicliques()[4], ((4, 4), (5, 5)));
    }

    #[test]
    fn path_pieces_tile_its_three_edges() {
        let g = path(4);
        let (d, seq) = exact_twin_width(&g, 8).unwrap();
        assert_eq!(d, 1);
        let ibp = build_ibp(&g, &seq).unwrap();
        assert!(ibp.bicliques().len() <= (d + 1) * 3);
        assert_exact_partition(&g, &ibp);
        assert_laminar_sides(&ibp);
    }

    #[test]
    fn random_pieces_tile_the_edge_set_exactly() {
        for n in [8usize, 10, 12] {
            for (i, p) in [0.15, 0.3, 0.55].iter().enumerate() {
                let g = gnp(n, *p, 500 + n as u64 * 13 + i as u64);
                let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
                let d = verify_sequence(&g, &seq).unwrap();
                let ibp = build_ibp(&g, &seq).unwrap();
                assert!(ibp.bicliques().len() <= (d + 1) * (n - 1));
                assert_exact_partition(&g, &ibp);
                assert_laminar_sides(&ibp);
                ibp.validate().unwrap();
            }
        }
    }

    #[test]
    fn blocky_interval_graphs_tile_exactly_too() {
        let (g, seq) = unit_interval_sequence(3, 5).unwrap();
        let ibp = build_ibp(&g, &seq).unwrap();
        let d = verify_sequence(&g, &seq).unwrap();
        assert!(ibp.bicliques().len() <= (d + 1) * (g.n() - 1));
        assert_exact_partition(&g, &ibp);
        assert_laminar_sides(&ibp);
        assert_matches_bfs(&g, &ibp);
    }

    #[test]
    fn traversals_match_plain_breadth_first_search() {
        for n in [9usize, 12] {
            for (i, p) in [0.12, 0.3, 0.6].iter().enumerate() {
                let g = gnp(n, *p, 900 + n as u64 * 17 + i as u64);
                let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
                let ibp = build_ibp(&g, &seq).unwrap();
                assert_matches_bfs(&g, &ibp);
            }
        }
    }

    #[test]
    fn path_endpoint_distances_count_up() {
        let g = path(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (4, 2), (5, 3)]);
        let paths = sssp(&g, &seq, 0).unwrap();
        assert_eq!(paths.distances(), &[Some(0), Some(1), Some(2), Some(3)],);
        assert_eq!(paths.to_text(), "0 0\n1 1\n2 2\n3 3\n");
    }

    #[test]
    fn complete_graphs_are_all_distance_one() {
        let ibp = clique_chain(7).unwrap();
        let paths = ibp.sssp(3).unwrap();
        for v in 0..7 {
            assert_eq!(paths.distance(v).unwrap(), Some(usize::from(v != 3)));
        }
        assert_eq!(ibp.diameter().unwrap(), Some(1));
    }

    #[test]
    fn disconnected_pairs_report_infinity() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
        let ibp = build_ibp(&g, &seq).unwrap();
        assert_exact_partition(&g, &ibp);
        let paths = ibp.sssp(0).unwrap();
        assert_eq!(paths.distances(), &[Some(0), Some(1), None, None]);
        assert!(paths.to_text().contains("2 INF"));
        assert_eq!(ibp.diameter().unwrap(), None);
        assert_eq!(diameter(&g, &seq).unwrap(), None);
    }

    #[test]
    fn six_cycle_diameter_is_three() {
        let g = cycle(6);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        assert_eq!(diameter(&g, &seq).unwrap(), Some(3));
    }

    #[test]
    fn distance_matrix_agrees_with_the_oracle() {
        let g = gnp(10, 0.25, 77);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        let matrix = apsp(&g, &seq).unwrap();
        for (s, row) in matrix.iter().enumerate() {
            assert_eq!(*row, bfs_distances(&g, s).unwrap());
        }
    }

    #[test]
    fn relabeling_is_the_leaf_order() {
        let seq = suffix_chain(5);
        let tree = build_union_tree(&seq).unwrap();
        assert_eq!(relabel_by_union_tree(&tree), tree.permutation());
        assert_eq!(relabel_by_union_tree(&tree), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn files_round_trip() {
        let g = gnp(9, 0.3, 5);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        let ibp = build_ibp(&g, &seq).unwrap();
        let text = ibp.to_text();
        let back = IntervalBicliquePartition::parse("mem", &text).unwrap();
        assert_eq!(back, ibp);
        assert_eq!(back.digest(), ibp.digest());
    }

    #[test]
    fn parser_rejects_malformed_files() {
        let bad = [
            "b tww 2\n",
            "0 0 1 1\nb tww 2 1\npi 0 0\npi 1 1\n",
            "b tww 2 1\n0 0 1 1\npi 0 0\n",
            "b tww 2 1\n0 0 1 1 5\npi 0 0\npi 1 1\n",
            "b tww 2 2\n0 0 1 1\npi 0 0\npi 1 1\n",
            "b tww 2 1\n0 1 1 1\npi 0 0\npi 1 1\n",
            "b tww 2 1\n0 0 1 2\npi 0 0\npi 1 1\n",
            "b tww 2 1\n1 0 1 1\npi 0 0\npi 1 1\n",
            "b tww 2 1\n0 0 1 1\npi 0 0\npi 1 0\n",
            "b tww 2 1\n0 0 1 1\npi 0 1\npi 1 1\n",
        ];
        for text in bad {
            assert!(
                IntervalBicliquePartition::parse("mem", text).is_err(),
                "accepted {text:?}"
            );
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = path(4);
        let partial = ContractionSequence::from_steps(4, vec![(0, 1)]);
        assert!(build_ibp(&g, &partial).is_err());
        assert!(build_ibp(&g, &suffix_chain(5)).is_err());
        assert!(build_ibp(&Graph::empty(0), &ContractionSequence::new(0)).is_err());
        assert!(clique_chain(0).is_err());
        let ibp = clique_chain(3).unwrap();
        assert!(matches!(ibp.sssp(3), Err(Error::UnknownVertex(3))));
    }

    #[test]
    fn repeated_runs_agree() {
        let g = gnp(11, 0.3, 42);
        let seq = greedy_sequence(&g, &GreedyConfig::default()).unwrap();
        let a = build_ibp(&g, &seq).unwrap();
        let b = build_ibp(&g, &seq).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.sssp(0).unwrap().to_text(), b.sssp(0).unwrap().to_text());
    }

    #[test]
    fn stabbing_matches_a_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tree = StabbingStructure::new();
        let mut live: Vec<(usize, usize, usize)> = Vec::new();
        let mut next_id = 0usize;
        for _ in 0..800 {
            match rng.gen_range(0..100) {
                0..=44 => {
                    let a = rng.gen_range(0..40usize);
                    let b = rng.gen_range(0..40usize);
                    let (lo, hi) = (a.min(b), a.max(b));
                    tree.insert(lo, hi, next_id).unwrap();
                    live.push((lo, hi, next_id));
                    next_id += 1;
                }
                45..=69 => {
                    if live.is_empty() {
                        continue;
                    }
                    let i = rng.gen_range(0..live.len());
                    let (lo, hi, id) = live.swap_remove(i);
                    assert!(tree.delete(lo, hi, id));
                    assert!(!tree.delete(lo, hi, id));
                }
                70..=89 => {
                    let p = rng.gen_range(0..40usize);
                    let mut want: Vec<_> = live
                        .iter()
                        .copied()
                        .filter(|&(lo, hi, _)| lo <= p && p <= hi)
                        .collect();
                    want.sort();
                    assert_eq!(tree.stab(p), want);
                }
                _ => {
                    let a = rng.gen_range(0..40usize);
                    let b = rng.gen_range(0..40usize);
                    let (lo, hi) = (a.min(b), a.max(b));
                    let mut want: Vec<_> = live
                        .iter()
                        .copied()
                        .filter(|&(l, h, _)| l <= hi && h >= lo)
                        .collect();
                    want.sort();
                    assert_eq!(tree.intersecting(lo, hi), want);
                }
            }
            assert_eq!(tree.len(), live.len());
        }
        assert!(tree.insert(3, 2, 0).is_err());
    }
}
