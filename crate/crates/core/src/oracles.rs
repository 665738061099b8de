//! Small brute-force references. Everything here works straight off the
//! `Graph` adjacency and shares no code with the sequence-driven solvers, so
//! the two sides can be tested against each other.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn cap(op: &'static str, size: usize, max: usize) -> Result<()> {
    if size > max {
        Err(Error::SizeCapExceeded { op, size, cap: max })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut rows = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

fn mask_to_set(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if u == v || g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

pub fn is_dominating(g: &Graph, set: &[usize]) -> bool {
    let mut covered = vec![false; g.n()];
    for &u in set {
        covered[u] = true;
        for &v in g.neighbors(u) {
            covered[v] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

pub fn is_clique(g: &Graph, set: &[usize]) -> bool {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Maximum independent set by exhausting all vertex subsets; `n <= 20`.
/// Returns the witness with the lowest bitmask among the maximum ones.
pub fn brute_alpha(g: &Graph) -> Result<Vec<usize>> {
    cap("brute_alpha", g.n(), 20)?;
    let rows = adjacency_masks(g);
    let n = g.n();
    let mut best = 0u64;
    for mask in 0u64..(1 << n) {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let mut ok = true;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rows[v] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = mask;
        }
    }
    Ok(mask_to_set(best))
}

/// Maximum clique via the complement; `n <= 20`.
pub fn brute_omega(g: &Graph) -> Result<Vec<usize>> {
    cap("brute_omega", g.n(), 20)?;
    brute_alpha(&g.complement())
}

/// Minimum dominating set; subsets are tried by increasing size and then
/// lexicographically, stopping at the first hit. `n <= 16`.
pub fn brute_gamma(g: &Graph) -> Result<Vec<usize>> {
    cap("brute_gamma", g.n(), 16)?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut closed = vec![0u64; n];
    for (v, ball) in closed.iter_mut().enumerate() {
        *ball = 1 << v;
        for &w in g.neighbors(v) {
            *ball |= 1 << w;
        }
    }
    let full = (1u64 << n) - 1;
    fn search(
        closed: &[u64],
        n: usize,
        full: u64,
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        covered: u64,
    ) -> bool {
        if chosen.len() == size {
            return covered == full;
        }
        let need = size - chosen.len();
        for v in start..n {
            if n - v < need {
                break;
            }
            chosen.push(v);
            if search(closed, n, full, size, v + 1, chosen, covered | closed[v]) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for size in 1..=n {
        let mut chosen = Vec::with_capacity(size);
        if search(&closed, n, full, size, 0, &mut chosen, 0) {
            return Ok(chosen);
        }
    }
    unreachable!("the full vertex set dominates");
}

/// Chromatic number with an optimal coloring, by dynamic programming over
/// subsets covered by independent sets; `n <= 12`.
pub fn brute_chi(g: &Graph) -> Result<Vec<usize>> {
    cap("brute_chi", g.n(), 12)?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows = adjacency_masks(g);
    let total = 1usize << n;
    let mut independent = vec![false; total];
    independent[0] = true;
    for mask in 1..total {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask] = independent[rest] && (rows[v] as usize & rest) == 0;
    }
    let mut dp = vec![u32::MAX; total];
    let mut pick = vec![0usize; total];
    dp[0] = 0;
    for mask in 1..total {
        // try every independent subset of `mask` containing its lowest vertex
        let low = 1usize << mask.trailing_zeros();
        let mut sub = mask;
        while sub != 0 {
            if sub & low != 0 && independent[sub] && dp[mask ^ sub] != u32::MAX {
                let cand = dp[mask ^ sub] + 1;
                if cand < dp[mask] {
                    dp[mask] = cand;
                    pick[mask] = sub;
                }
            }
            sub = (sub - 1) & mask;
        }
    }
    let mut colors = vec![0usize; n];
    let mut mask = total - 1;
    let mut color = 0usize;
    while mask != 0 {
        color += 1;
        let class = pick[mask];
        for v in mask_to_set(class as u64) {
            colors[v] = color;
        }
        mask ^= class;
    }
    debug_assert_eq!(color as u32, dp[total - 1]);
    Ok(colors)
}

/// Exhaustive search for a copy of `h` in `g` as an (induced) subgraph.
/// Pattern vertices are mapped in id order; the first witness in that
/// lexicographic order is returned. Pattern size capped at 5.
pub fn brute_subiso(g: &Graph, h: &Graph, induced: bool) -> Result<Option<Vec<usize>>> {
    cap("brute_subiso", h.n(), 5)?;
    let k = h.n();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if g.n() < k {
        return Ok(None);
    }
    fn extend(g: &Graph, h: &Graph, induced: bool, map: &mut Vec<usize>) -> bool {
        let j = map.len();
        if j == h.n() {
            return true;
        }
        'cand: for cand in 0..g.n() {
            if map.contains(&cand) {
                continue;
            }
            for (jj, &img) in map.iter().enumerate() {
                let he = h.has_edge(j, jj);
                let ge = g.has_edge(cand, img);
                if he && !ge {
                    continue 'cand;
                }
                if induced && !he && ge {
                    continue 'cand;
                }
            }
            map.push(cand);
            if extend(g, h, induced, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    let mut map = Vec::with_capacity(k);
    if extend(g, h, induced, &mut map) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Check that `image[j]` hosts pattern vertex `j`, honoring non-edges when
/// `induced` is set.
pub fn embeds_pattern(g: &Graph, h: &Graph, image: &[usize], induced: bool) -> bool {
    if image.len() != h.n() {
        return false;
    }
    for (a, &ga) in image.iter().enumerate() {
        for (b, &gb) in image.iter().enumerate().skip(a + 1) {
            if ga == gb {
                return false;
            }
            let he = h.has_edge(a, b);
            let ge = g.has_edge(ga, gb);
            if he && !ge {
                return false;
            }
            if induced && !he && ge {
                return false;
            }
        }
    }
    true
}

/// Hop distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<usize>>> {
    if source >= g.n() {
        return Err(Error::UnknownVertex(source));
    }
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, Graph};

    #[test]
    fn alpha_of_c5_and_petersen() {
        assert_eq!(brute_alpha(&cycle(5)).unwrap().len(), 2);
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(brute_alpha(&petersen).unwrap().len(), 4);
    }

    #[test]
    fn gamma_examples() {
        // star: center dominates everything
        let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        assert_eq!(brute_gamma(&star).unwrap(), vec![0]);
        assert_eq!(brute_gamma(&cycle(6)).unwrap().len(), 2);
        assert_eq!(brute_gamma(&path(2)).unwrap().len(), 1);
    }

    #[test]
    fn chi_examples() {
        let colors = brute_chi(&complete(4)).unwrap();
        let distinct: std::collections::BTreeSet<_> = colors.iter().collect();
        assert_eq!(distinct.len(), 4);
        let colors = brute_chi(&cycle(5)).unwrap();
        let distinct: std::collections::BTreeSet<_> = colors.iter().collect();
        assert_eq!(distinct.len(), 3);
        for (u, v) in cycle(5).edges() {
            assert_ne!(colors[u], colors[v]);
        }
        assert_eq!(brute_chi(&path(1)).unwrap(), vec![1]);
    }

    #[test]
    fn omega_of_wheel() {
        // wheel on 6: hub + C5; omega = 3
        let mut g = cycle(5);
        let mut edges = g.edges();
        edges.extend((0..5).map(|v| (v, 5)));
        g = Graph::from_edges(6, edges).unwrap();
        assert_eq!(brute_omega(&g).unwrap().len(), 3);
    }

    #[test]
    fn subiso_induced_vs_subgraph() {
        // P4 contains P3 both ways, C4 contains P3 induced? C4's P3 = yes.
        let p4 = path(4);
        let p3 = path(3);
        let w = brute_subiso(&p4, &p3, true).unwrap().unwrap();
        assert!(embeds_pattern(&p4, &p3, &w, true));
        // K3 in C4: none at all
        assert!(brute_subiso(&cycle(4), &complete(3), false)
            .unwrap()
            .is_none());
        // 2K1 inside K2: as a plain subgraph only.
        let k2 = complete(2);
        let e2 = Graph::empty(2);
        assert!(brute_subiso(&k2, &e2, true).unwrap().is_none());
        let w = brute_subiso(&k2, &e2, false).unwrap().unwrap();
        assert!(embeds_pattern(&k2, &e2, &w, false));
    }

    #[test]
    fn bfs_handles_disconnection() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = bfs_distances(&g, 0).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), None, None]);
    }

    #[test]
    fn caps_are_enforced() {
        let g = Graph::empty(21);
        assert!(matches!(
            brute_alpha(&g),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert!(matches!(
            brute_subiso(&Graph::empty(3), &Graph::empty(6), true),
            Err(Error::SizeCapExceeded { .. })
        ));
    }
}
