use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Black,
    Red,
}

/// Graph with black and white... black and red edges, supporting vertex
/// contractions. Original vertices occupy ids `0..n`; contractions introduce
/// fresh ids above that, and consumed ids stay permanently dead.
///
/// Adjacency is one ordered map per vertex, so neighbor iteration is sorted
/// and all derived orders are deterministic. A multiset of red degrees is
/// maintained so the global maximum red degree is O(1) and a contraction can
/// be scored without mutating the trigraph.
#[derive(Debug, Clone)]
pub struct Trigraph {
    adj: Vec<BTreeMap<usize, EdgeColor>>,
    created: Vec<bool>,
    alive: Vec<bool>,
    n_alive: usize,
    red_deg: Vec<usize>,
    /// red degree -> number of live vertices with that red degree
    red_counts: BTreeMap<usize, usize>,
}

impl Trigraph {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut t = Trigraph {
            adj: vec![BTreeMap::new(); n],
            created: vec![true; n],
            alive: vec![true; n],
            n_alive: n,
            red_deg: vec![0; n],
            red_counts: BTreeMap::new(),
        };
        if n > 0 {
            t.red_counts.insert(0, n);
        }
        for (u, v) in g.edges() {
            t.adj[u].insert(v, EdgeColor::Black);
            t.adj[v].insert(u, EdgeColor::Black);
        }
        t
    }

    /// Build a trigraph with explicit edge colors (mainly for tests and for
    /// replaying from intermediate states).
    pub fn with_colored_edges(
        n: usize,
        black: &[(usize, usize)],
        red: &[(usize, usize)],
    ) -> Result<Self> {
        let mut t = Trigraph {
            adj: vec![BTreeMap::new(); n],
            created: vec![true; n],
            alive: vec![true; n],
            n_alive: n,
            red_deg: vec![0; n],
            red_counts: BTreeMap::new(),
        };
        if n > 0 {
            t.red_counts.insert(0, n);
        }
        for (list, color) in [(black, EdgeColor::Black), (red, EdgeColor::Red)] {
            for &(u, v) in list {
                if u >= n || v >= n || u == v {
                    return Err(Error::InvalidInput(format!("bad edge {u} {v}")));
                }
                if t.adj[u].insert(v, color).is_some() {
                    return Err(Error::InvalidInput(format!("duplicate edge {u} {v}")));
                }
                t.adj[v].insert(u, color);
                if color == EdgeColor::Red {
                    let du = t.red_deg[u] + 1;
                    t.set_red_deg(u, du);
                    let dv = t.red_deg[v] + 1;
                    t.set_red_deg(v, dv);
                }
            }
        }
        Ok(t)
    }

    fn set_red_deg(&mut self, v: usize, new: usize) {
        let old = self.red_deg[v];
        if old == new {
            return;
        }
        if let Some(c) = self.red_counts.get_mut(&old) {
            *c -= 1;
            if *c == 0 {
                self.red_counts.remove(&old);
            }
        }
        *self.red_counts.entry(new).or_insert(0) += 1;
        self.red_deg[v] = new;
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    fn check_alive(&self, v: usize) -> Result<()> {
        if v >= self.created.len() || !self.created[v] {
            Err(Error::UnknownVertex(v))
        } else if !self.alive[v] {
            Err(Error::StaleVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn live_count(&self) -> usize {
        self.n_alive
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    pub fn edge_color(&self, u: usize, v: usize) -> Result<Option<EdgeColor>> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        Ok(self.adj[u].get(&v).copied())
    }

    /// Sorted neighbor map of a live vertex.
    pub fn neighbors(&self, v: usize) -> Result<&BTreeMap<usize, EdgeColor>> {
        self.check_alive(v)?;
        Ok(&self.adj[v])
    }

    pub fn red_neighbors(&self, v: usize) -> Result<impl Iterator<Item = usize> + '_> {
        self.check_alive(v)?;
        Ok(self.adj[v]
            .iter()
            .filter(|(_, &c)| c == EdgeColor::Red)
            .map(|(&w, _)| w))
    }

    pub fn red_degree(&self, v: usize) -> Result<usize> {
        self.check_alive(v)?;
        Ok(self.red_deg[v])
    }

    pub fn total_degree(&self, v: usize) -> Result<usize> {
        self.check_alive(v)?;
        Ok(self.adj[v].len())
    }

    /// Maximum red degree over live vertices.
    pub fn max_red_degree(&self) -> usize {
        self.red_counts
            .last_key_value()
            .map(|(&d, _)| d)
            .unwrap_or(0)
    }

    /// Vertices at red distance at most 2 from `v`, including `v`.
    pub fn red_ball2(&self, v: usize) -> Result<BTreeSet<usize>> {
        self.check_alive(v)?;
        let mut ball = BTreeSet::new();
        ball.insert(v);
        for (&w, &c) in &self.adj[v] {
            if c == EdgeColor::Red {
                ball.insert(w);
                for (&x, &cx) in &self.adj[w] {
                    if cx == EdgeColor::Red {
                        ball.insert(x);
                    }
                }
            }
        }
        Ok(ball)
    }

    /// Merge `u` and `v` into the new vertex `fresh`.
    ///
    /// For every other vertex `x`: the edge `fresh x` is black when both
    /// `ux` and `vx` were black, absent when both were absent, and red
    /// otherwise. `u` and `v` die.
    pub fn contract(&mut self, u: usize, v: usize, fresh: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidContraction {
                u,
                v,
                reason: "cannot contract a vertex with itself".into(),
            });
        }
        for x in [u, v] {
            self.check_alive(x).map_err(|e| Error::InvalidContraction {
                u,
                v,
                reason: e.to_string(),
            })?;
        }
        if fresh < self.created.len() && self.created[fresh] {
            return Err(Error::InvalidContraction {
                u,
                v,
                reason: format!("fresh id {fresh} already in use"),
            });
        }
        while self.created.len() <= fresh {
            self.adj.push(BTreeMap::new());
            self.created.push(false);
            self.alive.push(false);
            self.red_deg.push(0);
        }

        let u_map = std::mem::take(&mut self.adj[u]);
        let v_map = std::mem::take(&mut self.adj[v]);

        // Kill u and v first so the degree multiset only tracks live vertices.
        self.set_red_deg(u, 0);
        self.set_red_deg(v, 0);
        if let Some(c) = self.red_counts.get_mut(&0) {
            *c -= 2;
            if *c == 0 {
                self.red_counts.remove(&0);
            }
        }
        self.alive[u] = false;
        self.alive[v] = false;
        self.n_alive -= 1;

        let mut fresh_map = BTreeMap::new();
        let mut fresh_red = 0usize;
        let mut xs: Vec<usize> = u_map.keys().chain(v_map.keys()).copied().collect();
        xs.sort_unstable();
        xs.dedup();
        for x in xs {
            if x == u || x == v {
                continue;
            }
            let cu = u_map.get(&x).copied();
            let cv = v_map.get(&x).copied();
            let color = match (cu, cv) {
                (Some(EdgeColor::Black), Some(EdgeColor::Black)) => EdgeColor::Black,
                _ => EdgeColor::Red,
            };
            let mut deg = self.red_deg[x];
            if cu == Some(EdgeColor::Red) {
                deg -= 1;
            }
            if cv == Some(EdgeColor::Red) {
                deg -= 1;
            }
            self.adj[x].remove(&u);
            self.adj[x].remove(&v);
            self.adj[x].insert(fresh, color);
            if color == EdgeColor::Red {
                deg += 1;
                fresh_red += 1;
            }
            self.set_red_deg(x, deg);
            fresh_map.insert(x, color);
        }

        self.adj[fresh] = fresh_map;
        self.created[fresh] = true;
        self.alive[fresh] = true;
        *self.red_counts.entry(0).or_insert(0) += 1;
        self.set_red_deg(fresh, fresh_red);
        Ok(())
    }

    /// Score `contract(u, v)` without performing it: returns the maximum red
    /// degree the trigraph would have afterwards and the red degree of the
    /// merged vertex.
    pub fn eval_contract(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        if u == v {
            return Err(Error::InvalidContraction {
                u,
                v,
                reason: "cannot contract a vertex with itself".into(),
            });
        }
        let mut counts = self.red_counts.clone();
        let dec = |counts: &mut BTreeMap<usize, usize>, d: usize| {
            if let Some(c) = counts.get_mut(&d) {
                *c -= 1;
                if *c == 0 {
                    counts.remove(&d);
                }
            }
        };
        dec(&mut counts, self.red_deg[u]);
        dec(&mut counts, self.red_deg[v]);

        let mut fresh_red = 0usize;
        let mut xs: Vec<usize> = self.adj[u]
            .keys()
            .chain(self.adj[v].keys())
            .copied()
            .collect();
        xs.sort_unstable();
        xs.dedup();
        for x in xs {
            if x == u || x == v {
                continue;
            }
            let cu = self.adj[u].get(&x).copied();
            let cv = self.adj[v].get(&x).copied();
            let color = match (cu, cv) {
                (Some(EdgeColor::Black), Some(EdgeColor::Black)) => EdgeColor::Black,
                _ => EdgeColor::Red,
            };
            let mut deg = self.red_deg[x];
            if cu == Some(EdgeColor::Red) {
                deg -= 1;
            }
            if cv == Some(EdgeColor::Red) {
                deg -= 1;
            }
            if color == EdgeColor::Red {
                deg += 1;
                fresh_red += 1;
            }
            dec(&mut counts, self.red_deg[x]);
            *counts.entry(deg).or_insert(0) += 1;
        }
        *counts.entry(fresh_red).or_insert(0) += 1;
        let max = counts.last_key_value().map(|(&d, _)| d).unwrap_or(0);
        Ok((max, fresh_red))
    }
}

/// Color lookups in the trigraph as it was just before the current
/// contraction: edges between surviving vertices are untouched, and the two
/// consumed endpoints answer from their saved adjacency maps.
pub struct PreContractionView<'a> {
    pub t: &'a Trigraph,
    pub u: usize,
    pub v: usize,
    pub u_adj: &'a BTreeMap<usize, EdgeColor>,
    pub v_adj: &'a BTreeMap<usize, EdgeColor>,
}

impl PreContractionView<'_> {
    pub fn prev_color(&self, x: usize, y: usize) -> Option<EdgeColor> {
        if x == y {
            return None;
        }
        if x == self.u {
            return self.u_adj.get(&y).copied();
        }
        if y == self.u {
            return self.u_adj.get(&x).copied();
        }
        if x == self.v {
            return self.v_adj.get(&y).copied();
        }
        if y == self.v {
            return self.v_adj.get(&x).copied();
        }
        self.t
            .edge_color(x, y)
            .expect("surviving vertices stay alive")
    }
}

/// All sets of at most `k` live vertices that are connected in the red graph
/// and intersect `roots`, found by exhausting red walks of length at most
/// `2k - 3` from each root and deduplicating the visited vertex sets.
///
/// With maximum red degree `d` the result has at most
/// `(d^(2k-2) + 1) * |roots|` sets. When `forbid_black_inside` is set,
/// branches whose vertex set would span a black edge are abandoned (the sets
/// they lead to cannot host an independent set with one pick per part).
/// The result is sorted lexicographically.
pub fn enumerate_red_connected_sets(
    t: &Trigraph,
    roots: &[usize],
    k: usize,
    forbid_black_inside: bool,
) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let max_len = if k >= 2 { 2 * k - 3 } else { 0 };

    let mut sorted_roots = roots.to_vec();
    sorted_roots.sort_unstable();
    sorted_roots.dedup();

    struct Walker<'a> {
        t: &'a Trigraph,
        k: usize,
        max_len: usize,
        forbid_black: bool,
        set: Vec<usize>,
        seen: HashSet<Vec<usize>>,
        out: Vec<Vec<usize>>,
    }
    impl Walker<'_> {
        fn go(&mut self, end: usize, len: usize) {
            if self.seen.insert(self.set.clone()) {
                self.out.push(self.set.clone());
            }
            if len == self.max_len {
                return;
            }
            let nexts: Vec<usize> = self.t.adj[end]
                .iter()
                .filter(|(_, &c)| c == EdgeColor::Red)
                .map(|(&w, _)| w)
                .collect();
            for w in nexts {
                match self.set.binary_search(&w) {
                    Ok(_) => self.go(w, len + 1),
                    Err(pos) => {
                        if self.set.len() == self.k {
                            continue;
                        }
                        if self.forbid_black
                            && self
                                .set
                                .iter()
                                .any(|&x| self.t.adj[w].get(&x) == Some(&EdgeColor::Black))
                        {
                            continue;
                        }
                        self.set.insert(pos, w);
                        self.go(w, len + 1);
                        self.set.remove(pos);
                    }
                }
            }
        }
    }

    let mut walker = Walker {
        t,
        k,
        max_len,
        forbid_black: forbid_black_inside,
        set: Vec::new(),
        seen: HashSet::new(),
        out: Vec::new(),
    };
    for &r in &sorted_roots {
        t.check_alive(r)?;
        walker.set = vec![r];
        walker.go(r, 0);
    }
    let mut out = walker.out;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn contract_path_endpoints() {
        // 0-1-2-3; merging 0 and 1 leaves a red edge to 2 only.
        let g = graph::path(4);
        let mut t = Trigraph::from_graph(&g);
        t.contract(0, 1, 4).unwrap();
        assert_eq!(t.edge_color(4, 2).unwrap(), Some(EdgeColor::Red));
        assert_eq!(t.edge_color(4, 3).unwrap(), None);
        assert_eq!(t.edge_color(2, 3).unwrap(), Some(EdgeColor::Black));
        assert_eq!(t.red_degree(4).unwrap(), 1);
        assert_eq!(t.max_red_degree(), 1);
        assert_eq!(t.live_count(), 3);
    }

    #[test]
    fn contract_false_twins_stays_black() {
        // C4: 0-1-2-3-0; 0 and 2 share exactly {1, 3}.
        let g = graph::cycle(4);
        let mut t = Trigraph::from_graph(&g);
        t.contract(0, 2, 4).unwrap();
        assert_eq!(t.edge_color(4, 1).unwrap(), Some(EdgeColor::Black));
        assert_eq!(t.edge_color(4, 3).unwrap(), Some(EdgeColor::Black));
        assert_eq!(t.max_red_degree(), 0);
    }

    #[test]
    fn contract_mixed_neighborhoods() {
        // Vertices: u=0 v=1, u1=2 u2=3, x1..x7=4..10, v1=11 v2=12.
        // u: black {3,4,5,7,9,10}, red {2,6,8};
        // v: black {4,5,6,9,10,11,12}, red {7,8}.
        let black = [
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 7),
            (0, 9),
            (0, 10),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 9),
            (1, 10),
            (1, 11),
            (1, 12),
        ];
        let red = [(0, 2), (0, 6), (0, 8), (1, 7), (1, 8)];
        let mut t = Trigraph::with_colored_edges(13, &black, &red).unwrap();
        t.contract(0, 1, 13).unwrap();
        let expect_black = [4, 5, 9, 10];
        let expect_red = [2, 3, 6, 7, 8, 11, 12];
        for x in expect_black {
            assert_eq!(
                t.edge_color(13, x).unwrap(),
                Some(EdgeColor::Black),
                "x={x}"
            );
        }
        for x in expect_red {
            assert_eq!(t.edge_color(13, x).unwrap(), Some(EdgeColor::Red), "x={x}");
        }
        assert_eq!(t.red_degree(13).unwrap(), 7);
    }

    #[test]
    fn stale_and_unknown_ids_are_distinct_errors() {
        let g = graph::path(3);
        let mut t = Trigraph::from_graph(&g);
        t.contract(0, 1, 3).unwrap();
        assert!(matches!(t.red_degree(0), Err(Error::StaleVertex(0))));
        assert!(matches!(t.red_degree(9), Err(Error::UnknownVertex(9))));
        assert!(matches!(
            t.contract(0, 2, 4),
            Err(Error::InvalidContraction { .. })
        ));
        assert!(matches!(
            t.contract(2, 2, 4),
            Err(Error::InvalidContraction { .. })
        ));
        // fresh id collision
        assert!(matches!(
            t.contract(2, 3, 3),
            Err(Error::InvalidContraction { .. })
        ));
    }

    #[test]
    fn eval_matches_real_contract() {
        let g = graph::cycle(5);
        let t = Trigraph::from_graph(&g);
        for u in 0..5 {
            for v in (u + 1)..5 {
                let (max, fresh) = t.eval_contract(u, v).unwrap();
                let mut t2 = t.clone();
                t2.contract(u, v, 5).unwrap();
                assert_eq!(max, t2.max_red_degree(), "pair {u},{v}");
                assert_eq!(fresh, t2.red_degree(5).unwrap(), "pair {u},{v}");
            }
        }
    }

    #[test]
    fn enumerate_on_red_path() {
        // red path 0-1-2
        let t = Trigraph::with_colored_edges(3, &[], &[(0, 1), (1, 2)]).unwrap();
        let sets = enumerate_red_connected_sets(&t, &[1], 2, false).unwrap();
        assert_eq!(sets, vec![vec![0, 1], vec![1], vec![1, 2]]);
        let all = enumerate_red_connected_sets(&t, &[0, 1, 2], 3, false).unwrap();
        assert_eq!(
            all,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 1, 2],
                vec![1],
                vec![1, 2],
                vec![2]
            ]
        );
    }

    #[test]
    fn enumerate_prunes_black_edges() {
        // red path 0-1-2 plus black chord 0-2
        let t = Trigraph::with_colored_edges(3, &[(0, 2)], &[(0, 1), (1, 2)]).unwrap();
        let sets = enumerate_red_connected_sets(&t, &[1], 3, true).unwrap();
        assert_eq!(sets, vec![vec![0, 1], vec![1], vec![1, 2]]);
    }

    #[test]
    fn enumeration_respects_count_bound() {
        // star with 3 red legs: d = 3
        let t = Trigraph::with_colored_edges(4, &[], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = t.max_red_degree();
        for k in 1..=3usize {
            let sets = enumerate_red_connected_sets(&t, &[0], k, false).unwrap();
            let bound = d.pow(2 * k as u32 - 2) + 1;
            assert!(sets.len() <= bound, "k={k}: {} > {bound}", sets.len());
            for s in &sets {
                assert!(s.len() <= k);
                assert!(s.contains(&0));
            }
        }
    }
}
