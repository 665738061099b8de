//! Split-driven coloring and homogeneous pair extraction.
//!
//! Both algorithms run the contraction sequence backwards: starting from the
//! single surviving vertex, each step splits a vertex z back into the pair
//! u, v it came from. For triangle-free graphs this yields a proper coloring
//! with at most d+2 colors, d being the verified maximum red degree: u keeps
//! the color of z, and v either keeps it too (when uv is a non-edge) or
//! takes the smallest color absent from its at most d+1 neighbors. If z has
//! a black edge while uv is an edge, the input contains a triangle and the
//! run aborts naming one.
//!
//! Without the triangle-free promise the same scheme colors a graph with no
//! clique of size t using tuples: whenever a vertex first becomes incident
//! to a black edge, the original vertices it represents span a graph with no
//! clique of size t-1, which is colored recursively (restricting the
//! sequence to that subtree) and prefixed with the vertex's current color.
//! Tuples are padded with trailing 1 entries to the uniform length t-2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sequence::{verify_sequence, ContractionSequence};
use crate::trigraph::{EdgeColor, Trigraph};

/// A proper coloring by fixed-length tuples of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    colors: BTreeMap<usize, Vec<u32>>,
}

impl ColorAssignment {
    pub fn color(&self, v: usize) -> Option<&[u32]> {
        self.colors.get(&v).map(|t| t.as_slice())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Length of every tuple (they are uniform).
    pub fn tuple_len(&self) -> usize {
        self.colors.values().next().map_or(0, |t| t.len())
    }

    /// Number of distinct tuples in use.
    pub fn palette_size(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    pub fn max_entry(&self) -> u32 {
        self.colors
            .values()
            .flat_map(|t| t.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// No edge joins two vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        for (u, v) in g.edges() {
            if self.colors.get(&u) == self.colors.get(&v) {
                return false;
            }
        }
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u32])> {
        self.colors.iter().map(|(&v, t)| (v, t.as_slice()))
    }

    /// One `<vertex> <c1,c2,..>` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, tuple) in &self.colors {
            let joined = tuple
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "{} {}", v, joined);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Complete,
    Anticomplete,
}

/// Two disjoint vertex sets with either all edges or no edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhPair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub kind: PairKind,
}

/// What one backward split needs to know, captured on a forward replay.
struct SplitRec {
    u: usize,
    v: usize,
    z: usize,
    /// uv is an edge of either color just before the contraction.
    uv_edge: bool,
    /// All neighbors of v just before the contraction.
    v_neighbors: Vec<usize>,
    /// Black neighbors of u and of v just before the contraction.
    u_black: Vec<usize>,
    v_black: Vec<usize>,
    /// Some black neighbor of z just after the contraction, if any.
    z_black: Option<usize>,
}

fn replay(
    g: &Graph,
    seq: &ContractionSequence,
    want_snaps: bool,
) -> Result<(Vec<SplitRec>, Vec<Trigraph>)> {
    let mut t = Trigraph::from_graph(g);
    let mut recs = Vec::with_capacity(seq.len());
    let mut snaps = Vec::new();
    for (idx, &(u, v)) in seq.steps().iter().enumerate() {
        let step_err = |e: Error| Error::MalformedSequence {
            step: idx + 1,
            reason: e.to_string(),
        };
        let z = seq.fresh_id(idx + 1);
        let u_adj = t.neighbors(u).map_err(step_err)?;
        let uv_edge = u_adj.contains_key(&v);
        let u_black: Vec<usize> = u_adj
            .iter()
            .filter(|&(_, &c)| c == EdgeColor::Black)
            .map(|(&w, _)| w)
            .collect();
        let v_adj = t.neighbors(v).map_err(step_err)?;
        let v_neighbors: Vec<usize> = v_adj.keys().copied().collect();
        let v_black: Vec<usize> = v_adj
            .iter()
            .filter(|&(_, &c)| c == EdgeColor::Black)
            .map(|(&w, _)| w)
            .collect();
        if want_snaps {
            snaps.push(t.clone());
        }
        t.contract(u, v, z).map_err(step_err)?;
        let z_black = t
            .neighbors(z)?
            .iter()
            .find(|&(_, &c)| c == EdgeColor::Black)
            .map(|(&w, _)| w);
        recs.push(SplitRec {
            u,
            v,
            z,
            uv_edge,
            v_neighbors,
            u_black,
            v_black,
            z_black,
        });
    }
    Ok((recs, snaps))
}

/// Original vertices behind every id the sequence ever creates.
fn parts_of(seq: &ContractionSequence, n: usize) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for &(u, v) in seq.steps() {
        let mut bag = parts[u].clone();
        bag.extend_from_slice(&parts[v]);
        bag.sort_unstable();
        parts.push(bag);
    }
    parts
}

fn smallest_missing(used: &BTreeSet<u32>) -> u32 {
    let mut c = 1;
    while used.contains(&c) {
        c += 1;
    }
    c
}

/// Backward single-integer coloring. `names` translates local vertex ids to
/// the caller's ids in error messages. With `check_steps`, properness of the
/// partial coloring is re-verified against every intermediate trigraph.
fn tf_colors(
    g: &Graph,
    seq: &ContractionSequence,
    names: &[usize],
    check_steps: bool,
) -> Result<BTreeMap<usize, u32>> {
    let n = g.n();
    let (recs, snaps) = replay(g, seq, check_steps)?;
    let parts = parts_of(seq, n);
    let root = if n == 1 { 0 } else { seq.fresh_id(seq.len()) };
    let mut colors: BTreeMap<usize, u32> = BTreeMap::new();
    colors.insert(root, 1);
    for (k, rec) in recs.iter().enumerate().rev() {
        let cz = colors.remove(&rec.z).expect("split vertex is colored");
        colors.insert(rec.u, cz);
        if !rec.uv_edge {
            colors.insert(rec.v, cz);
        } else if let Some(y) = rec.z_black {
            let (a, b) = edge_across(g, &parts[rec.u], &parts[rec.v])
                .expect("an edge between the parts makes uv an edge");
            let c = parts[y][0];
            return Err(Error::ContractViolation(format!(
                "vertices {}, {} and {} form a triangle",
                names[a], names[b], names[c]
            )));
        } else {
            let used: BTreeSet<u32> = rec.v_neighbors.iter().map(|w| colors[w]).collect();
            colors.insert(rec.v, smallest_missing(&used));
        }
        if check_steps {
            assert_partial_proper(&snaps[k], &colors)?;
        }
    }
    Ok(colors)
}

/// Some original edge with one end in each part.
fn edge_across(g: &Graph, pu: &[usize], pv: &[usize]) -> Option<(usize, usize)> {
    for &a in pu {
        for &b in pv {
            if g.has_edge(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

fn assert_partial_proper(t: &Trigraph, colors: &BTreeMap<usize, u32>) -> Result<()> {
    for (&x, &cx) in colors {
        for &y in t.neighbors(x)?.keys() {
            if y > x && colors[&y] == cx {
                return Err(Error::ContractViolation(format!(
                    "intermediate coloring reuses {} across the edge {}-{}",
                    cx, x, y
                )));
            }
        }
    }
    Ok(())
}

/// The contraction sequence restricted to the subtree below `x`: the induced
/// graph on its original vertices plus the steps that happen inside it,
/// relabeled to a fresh instance.
fn induced_instance(
    g: &Graph,
    seq: &ContractionSequence,
    x: usize,
    parts: &[Vec<usize>],
) -> Result<(Graph, ContractionSequence)> {
    let px = &parts[x];
    let sub_g = g.induced(px)?;
    let k = px.len();
    let mut sub_seq = ContractionSequence::new(k);
    if k == 1 {
        return Ok((sub_g, sub_seq));
    }
    let n = g.n();
    let steps = seq.steps();
    let mut desc: BTreeSet<usize> = BTreeSet::new();
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        if a >= n {
            desc.insert(a);
            let (ua, va) = steps[a - n];
            stack.push(ua);
            stack.push(va);
        }
    }
    let mut map: BTreeMap<usize, usize> = px.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    for (j, &(uj, vj)) in steps.iter().enumerate() {
        let zj = n + j;
        if desc.contains(&zj) {
            let fresh = sub_seq.push(map[&uj], map[&vj]);
            map.insert(zj, fresh);
        }
    }
    Ok((sub_g, sub_seq))
}

/// Tuple coloring for a graph promised to have no clique of size `t`.
/// Returns one tuple of length exactly t-2 per original vertex.
fn kt_colors(
    g: &Graph,
    seq: &ContractionSequence,
    t: usize,
    names: &[usize],
) -> Result<BTreeMap<usize, Vec<u32>>> {
    let n = g.n();
    if t == 3 {
        let flat = tf_colors(g, seq, names, false)?;
        return Ok(flat.into_iter().map(|(v, c)| (v, vec![c])).collect());
    }
    let (recs, _) = replay(g, seq, false)?;
    let parts = parts_of(seq, n);
    let root = if n == 1 { 0 } else { seq.fresh_id(seq.len()) };
    let mut first: BTreeMap<usize, u32> = BTreeMap::new();
    first.insert(root, 1);
    let mut permanent: BTreeSet<usize> = BTreeSet::new();
    let mut fixed: BTreeMap<usize, Vec<u32>> = BTreeMap::new();

    // permanently color the original vertices behind `x` by recursing one
    // clique size down and prefixing x's current color
    let trigger = |x: usize,
                   first: &BTreeMap<usize, u32>,
                   permanent: &mut BTreeSet<usize>,
                   fixed: &mut BTreeMap<usize, Vec<u32>>|
     -> Result<()> {
        permanent.insert(x);
        let (sub_g, sub_seq) = induced_instance(g, seq, x, &parts)?;
        let sub_names: Vec<usize> = parts[x].iter().map(|&o| names[o]).collect();
        let inner = kt_colors(&sub_g, &sub_seq, t - 1, &sub_names)?;
        let prefix = first[&x];
        for (i, &orig) in parts[x].iter().enumerate() {
            let mut tuple = Vec::with_capacity(t - 2);
            tuple.push(prefix);
            tuple.extend_from_slice(&inner[&i]);
            fixed.insert(orig, tuple);
        }
        Ok(())
    };

    for rec in recs.iter().rev() {
        if permanent.remove(&rec.z) {
            let fc = first.remove(&rec.z).expect("split vertex is colored");
            first.insert(rec.u, fc);
            first.insert(rec.v, fc);
            permanent.insert(rec.u);
            permanent.insert(rec.v);
        } else {
            let cz = first.remove(&rec.z).expect("split vertex is colored");
            first.insert(rec.u, cz);
            if !rec.uv_edge {
                first.insert(rec.v, cz);
            } else {
                let used: BTreeSet<u32> = rec.v_neighbors.iter().map(|w| first[w]).collect();
                first.insert(rec.v, smallest_missing(&used));
            }
        }
        // vertices incident to a black edge for the first time get their
        // original vertices colored for good
        if !rec.u_black.is_empty() && !permanent.contains(&rec.u) {
            trigger(rec.u, &first, &mut permanent, &mut fixed)?;
        }
        if !rec.v_black.is_empty() && !permanent.contains(&rec.v) {
            trigger(rec.v, &first, &mut permanent, &mut fixed)?;
        }
        for &w in rec.u_black.iter().chain(rec.v_black.iter()) {
            if !permanent.contains(&w) {
                trigger(w, &first, &mut permanent, &mut fixed)?;
            }
        }
    }

    let mut out: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for w in 0..n {
        let mut tuple = fixed.remove(&w).unwrap_or_else(|| vec![first[&w]]);
        tuple.resize(t - 2, 1);
        out.insert(w, tuple);
    }
    Ok(out)
}

fn common_checks(g: &Graph, seq: &ContractionSequence) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if seq.base_n() != g.n() {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    seq.require_full("coloring")?;
    verify_sequence(g, seq)
}

/// Proper coloring of a triangle-free graph with at most d+2 colors, d
/// being the verified maximum red degree of the sequence.
pub fn color_triangle_free(g: &Graph, seq: &ContractionSequence) -> Result<ColorAssignment> {
    let d = common_checks(g, seq)?;
    let names: Vec<usize> = (0..g.n()).collect();
    let flat = tf_colors(g, seq, &names, false)?;
    let assignment = ColorAssignment {
        colors: flat.into_iter().map(|(v, c)| (v, vec![c])).collect(),
    };
    debug_assert!(assignment.palette_size() <= d + 2);
    ensure_proper(g, &assignment)?;
    Ok(assignment)
}

/// Proper coloring of a graph with no clique of size `t`, using at most
/// (d+2)^(t-2) tuple colors.
pub fn color_kt_free(g: &Graph, seq: &ContractionSequence, t: usize) -> Result<ColorAssignment> {
    if t < 3 {
        return Err(Error::InvalidInput(
            "clique bound must be at least 3".into(),
        ));
    }
    common_checks(g, seq)?;
    let names: Vec<usize> = (0..g.n()).collect();
    let colors = kt_colors(g, seq, t, &names)?;
    let assignment = ColorAssignment { colors };
    ensure_proper(g, &assignment)?;
    Ok(assignment)
}

fn ensure_proper(g: &Graph, assignment: &ColorAssignment) -> Result<()> {
    for (u, v) in g.edges() {
        if assignment.color(u) == assignment.color(v) {
            return Err(Error::ContractViolation(format!(
                "edge {}-{} is monochromatic, the clique promise must not hold",
                u, v
            )));
        }
    }
    Ok(())
}

/// Two disjoint vertex sets, each of size at least n/(d+4), joined by all
/// possible edges or none. Scans the contractions for the first part whose
/// weight reaches n/(d+4); everything outside that part and outside the at
/// most d red-neighbor parts is homogeneous to it, and the majority side
/// becomes the partner set.
pub fn eh_pair(g: &Graph, seq: &ContractionSequence) -> Result<EhPair> {
    let n = g.n();
    let d = common_checks(g, seq)?;
    let reaches = |w: usize| w * (d + 4) >= n;

    if reaches(1) {
        // every single vertex already meets the degenerate threshold
        let x = vec![0];
        let comp: Vec<usize> = g.neighbors(0).to_vec();
        let anti: Vec<usize> = (1..n).filter(|&w| !g.has_edge(0, w)).collect();
        return Ok(pick_majority(x, comp, anti));
    }

    let mut t = Trigraph::from_graph(g);
    let parts = parts_of(seq, n);
    let mut live: BTreeSet<usize> = (0..n).collect();
    for (idx, &(u, v)) in seq.steps().iter().enumerate() {
        let step_err = |e: Error| Error::MalformedSequence {
            step: idx + 1,
            reason: e.to_string(),
        };
        let z = seq.fresh_id(idx + 1);
        t.contract(u, v, z).map_err(step_err)?;
        live.remove(&u);
        live.remove(&v);
        live.insert(z);
        if !reaches(parts[z].len()) {
            continue;
        }
        let red: BTreeSet<usize> = t
            .neighbors(z)?
            .iter()
            .filter(|&(_, &c)| c == EdgeColor::Red)
            .map(|(&w, _)| w)
            .collect();
        let mut comp = Vec::new();
        let mut anti = Vec::new();
        for &p in &live {
            if p == z || red.contains(&p) {
                continue;
            }
            match t.edge_color(z, p)? {
                Some(EdgeColor::Black) => comp.extend_from_slice(&parts[p]),
                None => anti.extend_from_slice(&parts[p]),
                Some(EdgeColor::Red) => unreachable!("red neighbors are excluded"),
            }
        }
        comp.sort_unstable();
        anti.sort_unstable();
        return Ok(pick_majority(parts[z].clone(), comp, anti));
    }
    unreachable!("the final part contains every vertex");
}

fn pick_majority(x: Vec<usize>, comp: Vec<usize>, anti: Vec<usize>) -> EhPair {
    if comp.len() >= anti.len() {
        EhPair {
            x,
            y: comp,
            kind: PairKind::Complete,
        }
    } else {
        EhPair {
            x,
            y: anti,
            kind: PairKind::Anticomplete,
        }
    }
}
