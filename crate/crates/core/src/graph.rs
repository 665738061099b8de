use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Simple undirected graph on vertex ids `0..n`.
///
/// Neighbor lists are kept sorted, so adjacency tests are binary searches and
/// every iteration order is deterministic. Self loops and parallel edges are
/// rejected at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidInput(format!("duplicate edge {u} {v}")));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edge");
                }
            }
        }
        g
    }

    /// Subgraph induced by `verts` (need not be sorted); vertex `verts[i]`
    /// becomes id `i` of the result.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            if u >= self.n() {
                return Err(Error::UnknownVertex(u));
            }
            for (j, &v) in verts.iter().enumerate() {
                if i < j && self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Parse the `p tww` text format:
    ///
    /// ```text
    /// c optional comment
    /// p tww <n> <m>
    /// e <u> <v>
    /// ```
    ///
    /// Vertex ids are 0-based. The declared edge count must match.
    pub fn parse(name: &str, text: &str) -> Result<Graph> {
        let err = |line: usize, msg: String| Error::Parse {
            file: name.to_string(),
            line,
            msg,
        };
        let mut g: Option<Graph> = None;
        let mut declared_m = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("p") => {
                    if g.is_some() {
                        return Err(err(lineno, "duplicate p line".into()));
                    }
                    if tok.next() != Some("tww") {
                        return Err(err(lineno, "expected 'p tww <n> <m>'".into()));
                    }
                    let n: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(lineno, "bad vertex count".into()))?;
                    declared_m = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(lineno, "bad edge count".into()))?;
                    g = Some(Graph::empty(n));
                }
                Some("e") => {
                    let g = g
                        .as_mut()
                        .ok_or_else(|| err(lineno, "e line before p line".into()))?;
                    let u: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(lineno, "bad endpoint".into()))?;
                    let v: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(lineno, "bad endpoint".into()))?;
                    g.add_edge(u, v).map_err(|e| err(lineno, e.to_string()))?;
                }
                Some(other) => {
                    return Err(err(lineno, format!("unknown record '{other}'")));
                }
                None => {}
            }
        }
        let g = g.ok_or_else(|| err(0, "missing p line".into()))?;
        if g.m() != declared_m {
            return Err(err(
                0,
                format!("header declares {declared_m} edges, file has {}", g.m()),
            ));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p tww {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    pub fn read_file(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path)?;
        Graph::parse(&path.display().to_string(), &text)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Order-insensitive 64-bit digest of the labeled graph, for run reports.
    pub fn digest(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.n() as u64);
        for (u, v) in self.edges() {
            eat(u as u64);
            eat(v as u64);
        }
        h
    }
}

/// Path on `n` vertices: 0-1-2-...-(n-1).
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = path(n);
    g.add_edge(n - 1, 0).unwrap();
    g
}

pub fn complete(n: usize) -> Graph {
    Graph::empty(n).complement()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text() {
        let g = cycle(5);
        let h = Graph::parse("mem", &g.to_text()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::empty(3);
        assert!(g.add_edge(1, 1).is_err());
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(0, 7).is_err());
    }

    #[test]
    fn parse_errors_name_line() {
        let text = "p tww 3 1\ne 0 9\n";
        match Graph::parse("bad.tww", text) {
            Err(Error::Parse { file, line, .. }) => {
                assert_eq!(file, "bad.tww");
                assert_eq!(line, 2);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn edge_count_must_match_header() {
        let text = "p tww 3 2\ne 0 1\n";
        assert!(Graph::parse("bad.tww", text).is_err());
    }

    #[test]
    fn complement_of_path() {
        let g = path(4);
        let c = g.complement();
        assert_eq!(c.m(), 3);
        assert!(c.has_edge(0, 2));
        assert!(c.has_edge(0, 3));
        assert!(c.has_edge(1, 3));
    }
}
