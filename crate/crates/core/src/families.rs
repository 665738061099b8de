//! Seeded graph generators used by tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Erdős-Rényi graph: every pair is an edge independently with probability
/// `p`. Pairs are drawn in a fixed order, so a seed pins the graph exactly.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated pairs are valid")
}

/// The `rows x cols` grid with vertex `r * cols + c` at row `r`, column `c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let n = rows * cols;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(n, edges).expect("grid pairs are valid")
}

/// Random cograph on `n` vertices, generated by a random cotree: split the
/// vertex range in two, recurse, and connect the sides completely or not at
/// all with equal probability.
pub fn random_cograph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    cotree(&mut rng, 0, n, &mut edges);
    Graph::from_edges(n, edges).expect("cotree pairs are valid")
}

fn cotree(rng: &mut ChaCha8Rng, lo: usize, hi: usize, edges: &mut Vec<(usize, usize)>) {
    if hi - lo <= 1 {
        return;
    }
    let mid = rng.gen_range(lo + 1..hi);
    cotree(rng, lo, mid, edges);
    cotree(rng, mid, hi, edges);
    if rng.gen_bool(0.5) {
        for a in lo..mid {
            for b in mid..hi {
                edges.push((a, b));
            }
        }
    }
}

/// Whether `g` contains a triangle.
pub fn has_triangle(g: &Graph) -> bool {
    for (u, v) in g.edges() {
        let (mut i, mut j) = (0, 0);
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
    }
    false
}

/// Triangle-free graph by rejection: redraw G(n, p) from the seeded stream
/// until no triangle remains. Errors when `attempts` draws all fail, which
/// signals that `p` is too large for `n`.
pub fn random_triangle_free(n: usize, p: f64, seed: u64, attempts: usize) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts.max(1) {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p.clamp(0.0, 1.0)) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("generated pairs are valid");
        if !has_triangle(&g) {
            return Ok(g);
        }
    }
    Err(Error::InvalidInput(format!(
        "no triangle-free draw in {attempts} attempts (n={n}, p={p})"
    )))
}
