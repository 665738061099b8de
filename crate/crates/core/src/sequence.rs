use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trigraph::{EdgeColor, Trigraph};

/// Contraction sequence over a graph with `base_n` original vertices.
///
/// Step `i` (1-based) contracts the pair in `steps[i-1]` and implicitly
/// names the merged vertex `base_n + i - 1`. A sequence with fewer than
/// `base_n - 1` steps is a valid prefix; operations that need the full
/// sequence say so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionSequence {
    base_n: usize,
    steps: Vec<(usize, usize)>,
}

impl ContractionSequence {
    pub fn new(base_n: usize) -> Self {
        ContractionSequence {
            base_n,
            steps: Vec::new(),
        }
    }

    pub fn from_steps(base_n: usize, steps: Vec<(usize, usize)>) -> Self {
        ContractionSequence { base_n, steps }
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Id of the vertex created by 1-based step `i`.
    pub fn fresh_id(&self, i: usize) -> usize {
        self.base_n + i - 1
    }

    pub fn push(&mut self, u: usize, v: usize) -> usize {
        self.steps.push((u, v));
        self.base_n + self.steps.len() - 1
    }

    pub fn is_full(&self) -> bool {
        self.base_n > 0 && self.steps.len() == self.base_n - 1
    }

    pub fn require_full(&self, op: &'static str) -> Result<()> {
        if self.base_n == 0 || self.is_full() {
            Ok(())
        } else {
            Err(Error::PartialSequence {
                op,
                steps: self.steps.len(),
                required: self.base_n.saturating_sub(1),
            })
        }
    }

    /// Parse the `s tww` text format:
    ///
    /// ```text
    /// c optional comment
    /// s tww <n>
    /// <u> <v>
    /// ```
    ///
    /// one contraction per line; the i-th line merges into vertex `n + i - 1`.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            file: name.to_string(),
            line,
            msg,
        };
        let mut seq: Option<ContractionSequence> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('s') {
                if seq.is_some() {
                    return Err(err(lineno, "duplicate s line".into()));
                }
                let mut tok = line.split_whitespace();
                tok.next();
                if tok.next() != Some("tww") {
                    return Err(err(lineno, "expected 's tww <n>'".into()));
                }
                let n: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex count".into()))?;
                seq = Some(ContractionSequence::new(n));
                continue;
            }
            let seq = seq
                .as_mut()
                .ok_or_else(|| err(lineno, "contraction before s line".into()))?;
            let mut tok = line.split_whitespace();
            let u: usize = tok
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(lineno, "bad vertex id".into()))?;
            let v: usize = tok
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(lineno, "bad vertex id".into()))?;
            if seq.len() >= seq.base_n().saturating_sub(1) {
                return Err(err(lineno, "more steps than vertices allow".into()));
            }
            seq.push(u, v);
        }
        seq.ok_or_else(|| err(0, "missing s line".into()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "s tww {}", self.base_n);
        for &(u, v) in &self.steps {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ContractionSequence::parse(&path.display().to_string(), &text)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn digest(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.base_n as u64);
        for &(u, v) in &self.steps {
            eat(u as u64);
            eat(v as u64);
        }
        h
    }
}

/// Map from each live vertex to the sorted original vertices merged into it.
pub type VertexPartition = BTreeMap<usize, Vec<usize>>;

fn check_base(g: &Graph, seq: &ContractionSequence) -> Result<()> {
    if g.n() != seq.base_n() {
        return Err(Error::InvalidInput(format!(
            "sequence is over {} vertices but graph has {}",
            seq.base_n(),
            g.n()
        )));
    }
    Ok(())
}

/// Replay the whole sequence and return the maximum red degree attained in
/// any intermediate trigraph. Prefixes are allowed.
pub fn verify_sequence(g: &Graph, seq: &ContractionSequence) -> Result<usize> {
    check_base(g, seq)?;
    let mut t = Trigraph::from_graph(g);
    let mut max = 0usize;
    for (i, &(u, v)) in seq.steps().iter().enumerate() {
        t.contract(u, v, seq.fresh_id(i + 1))
            .map_err(|e| Error::MalformedSequence {
                step: i + 1,
                reason: e.to_string(),
            })?;
        max = max.max(t.max_red_degree());
    }
    Ok(max)
}

/// Trigraph and partition after the first `i` contractions (`0 <= i <= len`).
pub fn trigraph_at(
    g: &Graph,
    seq: &ContractionSequence,
    i: usize,
) -> Result<(Trigraph, VertexPartition)> {
    check_base(g, seq)?;
    if i > seq.len() {
        return Err(Error::StepOutOfRange {
            index: i,
            len: seq.len(),
        });
    }
    let mut t = Trigraph::from_graph(g);
    let mut parts: VertexPartition = (0..g.n()).map(|v| (v, vec![v])).collect();
    for (j, &(u, v)) in seq.steps()[..i].iter().enumerate() {
        let fresh = seq.fresh_id(j + 1);
        t.contract(u, v, fresh)
            .map_err(|e| Error::MalformedSequence {
                step: j + 1,
                reason: e.to_string(),
            })?;
        let mut merged = parts.remove(&u).ok_or(Error::StaleVertex(u))?;
        let mut right = parts.remove(&v).ok_or(Error::StaleVertex(v))?;
        merged.append(&mut right);
        merged.sort_unstable();
        parts.insert(fresh, merged);
    }
    Ok((t, parts))
}

/// The same steps applied to the complement graph. Replaying them there
/// produces, step by step, the complement trigraph with identical red edges.
pub fn complement_sequence(g: &Graph, seq: &ContractionSequence) -> (Graph, ContractionSequence) {
    (g.complement(), seq.clone())
}

/// Adjacency snapshots taken just before one contraction, enough to undo it.
#[derive(Debug, Clone)]
pub struct StepLog {
    pub u: usize,
    pub v: usize,
    pub fresh: usize,
    pub u_adj: BTreeMap<usize, EdgeColor>,
    pub v_adj: BTreeMap<usize, EdgeColor>,
}

impl StepLog {
    /// Color of the merged edge `fresh x` implied by the snapshots.
    pub fn merged_color(&self, x: usize) -> Option<EdgeColor> {
        let cu = self.u_adj.get(&x).copied();
        let cv = self.v_adj.get(&x).copied();
        match (cu, cv) {
            (None, None) => None,
            (Some(EdgeColor::Black), Some(EdgeColor::Black)) => Some(EdgeColor::Black),
            _ => Some(EdgeColor::Red),
        }
    }
}

/// Replay the sequence, keeping per-step snapshots of the contracted pair's
/// adjacency. The rewinding algorithms walk this log backwards. Memory is
/// proportional to the total degree of all contracted pairs.
pub fn replay_with_log(g: &Graph, seq: &ContractionSequence) -> Result<(Trigraph, Vec<StepLog>)> {
    check_base(g, seq)?;
    let mut t = Trigraph::from_graph(g);
    let mut log = Vec::with_capacity(seq.len());
    for (i, &(u, v)) in seq.steps().iter().enumerate() {
        let fresh = seq.fresh_id(i + 1);
        let u_adj = t
            .neighbors(u)
            .map_err(|e| Error::MalformedSequence {
                step: i + 1,
                reason: e.to_string(),
            })?
            .clone();
        let v_adj = t
            .neighbors(v)
            .map_err(|e| Error::MalformedSequence {
                step: i + 1,
                reason: e.to_string(),
            })?
            .clone();
        t.contract(u, v, fresh)
            .map_err(|e| Error::MalformedSequence {
                step: i + 1,
                reason: e.to_string(),
            })?;
        log.push(StepLog {
            u,
            v,
            fresh,
            u_adj,
            v_adj,
        });
    }
    Ok((t, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn verify_twin_contractions_of_c4() {
        let g = graph::cycle(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 2), (1, 3), (4, 5)]);
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn verify_left_to_right_path() {
        let g = graph::path(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (4, 2), (5, 3)]);
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 1);
    }

    #[test]
    fn verify_prefix_is_allowed() {
        let g = graph::path(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 1)]);
        assert_eq!(verify_sequence(&g, &seq).unwrap(), 1);
        assert!(seq.require_full("x").is_err());
    }

    #[test]
    fn malformed_sequence_reports_step() {
        let g = graph::path(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (0, 2)]);
        match verify_sequence(&g, &seq) {
            Err(Error::MalformedSequence { step, .. }) => assert_eq!(step, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sequence_text_roundtrip() {
        let seq = ContractionSequence::from_steps(4, vec![(0, 2), (1, 3), (4, 5)]);
        let back = ContractionSequence::parse("mem", &seq.to_text()).unwrap();
        assert_eq!(seq, back);
        assert_eq!(seq.to_text(), "s tww 4\n0 2\n1 3\n4 5\n");
    }

    #[test]
    fn partition_tracks_merges() {
        let g = graph::path(4);
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (4, 2)]);
        let (t, parts) = trigraph_at(&g, &seq, 2).unwrap();
        assert_eq!(t.live_count(), 2);
        assert_eq!(parts[&5], vec![0, 1, 2]);
        assert_eq!(parts[&3], vec![3]);
    }

    #[test]
    fn complement_replay_has_same_red_edges() {
        let g = graph::path(5);
        let seq = ContractionSequence::from_steps(5, vec![(0, 1), (5, 2), (3, 4)]);
        let (gc, seqc) = complement_sequence(&g, &seq);
        for i in 0..=seq.len() {
            let (t, _) = trigraph_at(&g, &seq, i).unwrap();
            let (tc, _) = trigraph_at(&gc, &seqc, i).unwrap();
            let live: Vec<usize> = t.live_vertices().collect();
            for (a, &u) in live.iter().enumerate() {
                for &v in &live[a + 1..] {
                    let red = t.edge_color(u, v).unwrap() == Some(EdgeColor::Red);
                    let redc = tc.edge_color(u, v).unwrap() == Some(EdgeColor::Red);
                    assert_eq!(red, redc, "step {i}, pair {u} {v}");
                }
            }
        }
    }

    #[test]
    fn log_snapshots_reconstruct_merged_colors() {
        let g = graph::cycle(5);
        let seq = ContractionSequence::from_steps(5, vec![(0, 1), (2, 5)]);
        let (t, log) = replay_with_log(&g, &seq).unwrap();
        let last = log.last().unwrap();
        for w in t.live_vertices() {
            if w == last.fresh {
                continue;
            }
            assert_eq!(
                t.edge_color(last.fresh, w).unwrap(),
                last.merged_color(w),
                "w={w}"
            );
        }
    }
}
