//! Independent set solvers driven by a contraction sequence.
//!
//! Partial solutions are pairs (T, S): T a set of live trigraph vertices
//! inducing a connected subgraph of the red graph, S an independent set of
//! the original graph drawn from the parts that T represents, hitting every
//! part. One optimum S is kept per realizable T (per (T, size) in weighted
//! mode). A contraction of u and v into z invalidates exactly the entries
//! touching {u, v}; the new entries, all containing z, are assembled from
//! old ones, because red edges between surviving vertices are never removed
//! and every new red edge is incident to z.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sequence::ContractionSequence;
use crate::setops::{contains, disjoint, map_forward, merge_sorted};
use crate::toolkit::{greedy_sequence, power_graph, GreedyConfig};
use crate::trigraph::{enumerate_red_connected_sets, EdgeColor, PreContractionView, Trigraph};

/// Upper bound on stored states for the unbounded solver before it gives up.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, Copy, Default)]
pub struct IsOptions {
    /// Generate candidate sets by enumerating red walks around the merged
    /// vertex instead of assembling them from existing table entries. Much
    /// slower; kept as a differential baseline.
    pub naive_enum: bool,
    /// Re-validate every table entry after every step.
    pub assert_invariants: bool,
}

/// An independent set of size at least `min(k, alpha(G))`, in time linear in
/// the sequence length for fixed `k` and red degree. Returns early as soon
/// as any stored set reaches size `k`.
pub fn k_independent_set(g: &Graph, seq: &ContractionSequence, k: usize) -> Result<Vec<usize>> {
    k_independent_set_with(g, seq, k, &IsOptions::default())
}

pub fn k_independent_set_with(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
    opts: &IsOptions,
) -> Result<Vec<usize>> {
    solve_unweighted(g, seq, k, true, None, opts, "k_independent_set")
}

/// A maximum independent set. The table is not capped by a target size, so
/// the cost is proportional to the number of realizable sets; `budget`
/// bounds how many may be stored at once before the solve aborts.
pub fn max_independent_set(
    g: &Graph,
    seq: &ContractionSequence,
    budget: usize,
) -> Result<Vec<usize>> {
    max_independent_set_with(g, seq, budget, &IsOptions::default())
}

pub fn max_independent_set_with(
    g: &Graph,
    seq: &ContractionSequence,
    budget: usize,
    opts: &IsOptions,
) -> Result<Vec<usize>> {
    solve_unweighted(
        g,
        seq,
        usize::MAX,
        false,
        Some(budget),
        opts,
        "max_independent_set",
    )
}

/// Among independent sets of size exactly `min(k, alpha(G))`, one of maximum
/// total weight. Weights may be negative; sizes always beat weight.
pub fn weighted_k_independent_set(
    g: &Graph,
    weights: &[f64],
    seq: &ContractionSequence,
    k: usize,
) -> Result<Vec<usize>> {
    solve_weighted(g, weights, seq, k, &IsOptions::default())
}

/// A clique of size at least `min(k, omega(G))`: the independent set solver
/// run on the complement, whose replay has the same red edges.
pub fn k_clique(g: &Graph, seq: &ContractionSequence, k: usize) -> Result<Vec<usize>> {
    let gc = g.complement();
    k_independent_set(&gc, seq, k)
}

/// Vertices pairwise at distance at least `r`, at least `min(k, optimum)` of
/// them: independent in the (r-1)-th power graph. A sequence for the power
/// graph may be supplied; otherwise a greedy one is computed.
pub fn r_scattered_set(
    g: &Graph,
    r: usize,
    k: usize,
    seq_for_power: Option<&ContractionSequence>,
) -> Result<Vec<usize>> {
    if r == 0 {
        return Err(Error::InvalidInput(
            "distance bound must be positive".into(),
        ));
    }
    if r == 1 {
        // any vertices qualify
        return Ok((0..g.n().min(k)).collect());
    }
    let gp = power_graph(g, r - 1)?;
    match seq_for_power {
        Some(seq) => k_independent_set(&gp, seq, k),
        None => {
            let seq = greedy_sequence(&gp, &GreedyConfig::default())?;
            k_independent_set(&gp, &seq, k)
        }
    }
}

type Key = Vec<usize>;

struct Table<P> {
    entries: BTreeMap<Key, P>,
    member: BTreeMap<usize, BTreeSet<Key>>,
}

impl<P> Table<P> {
    fn new() -> Self {
        Table {
            entries: BTreeMap::new(),
            member: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: Key, payload: P) {
        for &t in &key {
            self.member.entry(t).or_default().insert(key.clone());
        }
        self.entries.insert(key, payload);
    }

    fn keys_with(&self, w: usize) -> Vec<Key> {
        self.member
            .get(&w)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// Drop every entry whose key touches `u` or `v`.
    fn remove_touching(&mut self, u: usize, v: usize) {
        let mut doomed: BTreeSet<Key> = BTreeSet::new();
        for w in [u, v] {
            if let Some(keys) = self.member.remove(&w) {
                doomed.extend(keys);
            }
        }
        for key in doomed {
            self.entries.remove(&key);
            for &t in &key {
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

/// No edge of either color between the two vertex sets in the view taken
/// just before the current contraction.
fn compatible(ctx: &PreContractionView, a: &[usize], b: &[usize]) -> bool {
    for &x in a {
        for &y in b {
            if ctx.prev_color(x, y).is_some() {
                return false;
            }
        }
    }
    true
}

/// Larger set first, then lexicographically smallest.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

enum StepOutcome<P> {
    Done(Vec<usize>),
    Entries(BTreeMap<Key, P>),
}

fn solve_unweighted(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
    early_exit: bool,
    budget: Option<usize>,
    opts: &IsOptions,
    op: &'static str,
) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("target size must be positive".into()));
    }
    if seq.base_n() != n {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    seq.require_full(op)?;

    let mut t = Trigraph::from_graph(g);
    let mut table: Table<Vec<usize>> = Table::new();
    for v in 0..n {
        table.insert(vec![v], vec![v]);
    }
    let mut parts: BTreeMap<usize, Vec<usize>> = if opts.assert_invariants {
        (0..n).map(|v| (v, vec![v])).collect()
    } else {
        BTreeMap::new()
    };

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
        let t_cap = k.min(t.live_count());
        let outcome = if opts.naive_enum {
            step_naive(&ctx, &table, z, t_cap, k, early_exit)?
        } else {
            step_positive(&ctx, &table, z, t_cap, k, early_exit)?
        };
        let produced = match outcome {
            StepOutcome::Done(mut s) => {
                // assembled unions may overshoot the target; any subset of an
                // independent set is independent
                s.truncate(k);
                return Ok(s);
            }
            StepOutcome::Entries(map) => map,
        };
        table.remove_touching(u, v);
        for (key, s) in produced {
            table.insert(key, s);
        }
        if let Some(b) = budget {
            if table.entries.len() > b {
                return Err(Error::StateBudgetExceeded { budget: b });
            }
        }
        if opts.assert_invariants {
            let mut bag = parts.remove(&u).expect("tracked part");
            bag.extend(parts.remove(&v).expect("tracked part"));
            bag.sort_unstable();
            parts.insert(z, bag);
            validate_table(g, &t, &table.entries, &parts)?;
        }
    }

    let root = if n == 1 { 0 } else { seq.fresh_id(seq.len()) };
    Ok(table
        .entries
        .get(&vec![root])
        .expect("the final vertex is always realizable")
        .clone())
}

/// New entries assembled from surviving ones. Every candidate T containing z
/// shatters, once z is split back into u and v, into red components of the
/// previous trigraph: one or two of them contain u or v (the cores), and the
/// rest each touch a new red neighbor of z (the attachments). Cores and
/// pools are therefore read straight off the member index.
fn step_positive(
    ctx: &PreContractionView,
    table: &Table<Vec<usize>>,
    z: usize,
    t_cap: usize,
    s_target: usize,
    early_exit: bool,
) -> Result<StepOutcome<Vec<usize>>> {
    let (u, v) = (ctx.u, ctx.v);
    let mut pool: BTreeSet<Key> = BTreeSet::new();
    for w in ctx.t.red_neighbors(z)? {
        for key in table.keys_with(w) {
            if !contains(&key, u) && !contains(&key, v) {
                pool.insert(key);
            }
        }
    }
    let pool: Vec<Key> = pool.into_iter().collect();

    let keys_u = table.keys_with(u);
    let cores_uv: Vec<&Key> = keys_u.iter().filter(|kk| contains(kk, v)).collect();
    let cores_u: Vec<&Key> = keys_u.iter().filter(|kk| !contains(kk, v)).collect();
    let keys_v = table.keys_with(v);
    let cores_v: Vec<&Key> = keys_v.iter().filter(|kk| !contains(kk, u)).collect();

    // (consumed previous vertices, new key, solution)
    let mut bases: Vec<(Key, Key, Vec<usize>)> = Vec::new();
    let mut push_base = |key: Key, s: Vec<usize>| {
        let m = map_forward(&key, u, v, z);
        if m.len() <= t_cap {
            bases.push((key, m, s));
        }
    };
    for key in cores_uv {
        push_base(key.clone(), table.entries[key].clone());
    }
    for a in &cores_u {
        for b in &cores_v {
            if !disjoint(a, b) || !compatible(ctx, a, b) {
                continue;
            }
            push_base(
                merge_sorted(a, b),
                merge_sorted(&table.entries[*a], &table.entries[*b]),
            );
        }
        push_base((*a).clone(), table.entries[*a].clone());
    }
    for b in cores_v {
        push_base(b.clone(), table.entries[b].clone());
    }

    let mut produced: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for (consumed, m, s) in bases {
        if let Some(hit) = extend(
            ctx,
            table,
            &pool,
            0,
            consumed,
            m,
            s,
            &mut produced,
            t_cap,
            s_target,
            early_exit,
        ) {
            return Ok(StepOutcome::Done(hit));
        }
    }
    Ok(StepOutcome::Entries(produced))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    ctx: &PreContractionView,
    table: &Table<Vec<usize>>,
    pool: &[Key],
    start: usize,
    consumed: Key,
    m: Key,
    s: Vec<usize>,
    produced: &mut BTreeMap<Key, Vec<usize>>,
    t_cap: usize,
    s_target: usize,
    early_exit: bool,
) -> Option<Vec<usize>> {
    if early_exit && s.len() >= s_target {
        return Some(s);
    }
    match produced.get_mut(&m) {
        Some(cur) => {
            if better(&s, cur) {
                *cur = s.clone();
            }
        }
        None => {
            produced.insert(m.clone(), s.clone());
        }
    }
    for (i, key) in pool.iter().enumerate().skip(start) {
        if m.len() + key.len() > t_cap
            || !disjoint(key, &consumed)
            || !compatible(ctx, key, &consumed)
        {
            continue;
        }
        if let Some(hit) = extend(
            ctx,
            table,
            pool,
            i + 1,
            merge_sorted(&consumed, key),
            merge_sorted(&m, key),
            merge_sorted(&s, &table.entries[key]),
            produced,
            t_cap,
            s_target,
            early_exit,
        ) {
            return Some(hit);
        }
    }
    None
}

/// Literal update rule: enumerate every red-connected T containing z, then
/// try the three ways its solution can meet the two merged parts.
fn step_naive(
    ctx: &PreContractionView,
    table: &Table<Vec<usize>>,
    z: usize,
    t_cap: usize,
    s_target: usize,
    early_exit: bool,
) -> Result<StepOutcome<Vec<usize>>> {
    let (u, v) = (ctx.u, ctx.v);
    let mut produced: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for tset in enumerate_red_connected_sets(ctx.t, &[z], t_cap, true)? {
        let rest: Vec<usize> = tset.iter().copied().filter(|&x| x != z).collect();
        let mut best: Option<Vec<usize>> = None;
        for variant in [vec![u, v], vec![u], vec![v]] {
            let y = merge_sorted(&rest, &variant);
            if let Some(s) = union_dec(ctx, table, &y) {
                if best.as_deref().is_none_or(|b| better(&s, b)) {
                    best = Some(s);
                }
            }
        }
        if let Some(s) = best {
            if early_exit && s.len() >= s_target {
                return Ok(StepOutcome::Done(s));
            }
            produced.insert(tset, s);
        }
    }
    Ok(StepOutcome::Entries(produced))
}

/// Decompose `y` into red components of the previous trigraph, look each one
/// up, and union the solutions; fails when a component is unrealizable or a
/// black edge runs between two components.
fn union_dec(
    ctx: &PreContractionView,
    table: &Table<Vec<usize>>,
    y: &[usize],
) -> Option<Vec<usize>> {
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &x in y {
        if comp_of.contains_key(&x) {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![x];
        let mut comp = Vec::new();
        comp_of.insert(x, id);
        while let Some(a) = stack.pop() {
            comp.push(a);
            for &b in y {
                if !comp_of.contains_key(&b) && ctx.prev_color(a, b) == Some(EdgeColor::Red) {
                    comp_of.insert(b, id);
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    let mut s: Vec<usize> = Vec::new();
    for comp in &comps {
        s = merge_sorted(&s, table.entries.get(comp)?);
    }
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            for &x in a {
                for &y2 in b {
                    debug_assert_ne!(ctx.prev_color(x, y2), Some(EdgeColor::Red));
                    if ctx.prev_color(x, y2) == Some(EdgeColor::Black) {
                        return None;
                    }
                }
            }
        }
    }
    Some(s)
}

fn validate_table(
    g: &Graph,
    t: &Trigraph,
    entries: &BTreeMap<Key, Vec<usize>>,
    parts: &BTreeMap<usize, Vec<usize>>,
) -> Result<()> {
    let fail = |msg: String| Err(Error::ContractViolation(msg));
    for (key, s) in entries {
        // T connected in the red graph
        if key.len() > 1 {
            let mut seen = vec![key[0]];
            let mut stack = vec![key[0]];
            while let Some(a) = stack.pop() {
                for &b in key.iter() {
                    if !seen.contains(&b) && t.edge_color(a, b)? == Some(EdgeColor::Red) {
                        seen.push(b);
                        stack.push(b);
                    }
                }
            }
            if seen.len() != key.len() {
                return fail(format!("stored set {key:?} is not red-connected"));
            }
        }
        // S independent, inside the parts of T, hitting each part
        for (i, &x) in s.iter().enumerate() {
            for &y in &s[i + 1..] {
                if g.has_edge(x, y) {
                    return fail(format!("stored solution {s:?} spans edge {x}-{y}"));
                }
            }
        }
        let mut covered = 0;
        for w in key {
            let bag = &parts[w];
            let hits = s.iter().filter(|x| bag.contains(x)).count();
            if hits == 0 {
                return fail(format!("stored solution {s:?} misses part {w}"));
            }
            covered += hits;
        }
        if covered != s.len() {
            return fail(format!("stored solution {s:?} leaks outside its parts"));
        }
    }
    Ok(())
}

type JTable = BTreeMap<usize, (f64, Vec<usize>)>;

fn merge_weighted(into: &mut JTable, j: usize, w: f64, s: Vec<usize>) {
    match into.get_mut(&j) {
        Some((bw, bs)) => {
            if w > *bw || (w == *bw && s < *bs) {
                *bw = w;
                *bs = s;
            }
        }
        None => {
            into.insert(j, (w, s));
        }
    }
}

fn convolve(a: &JTable, b: &JTable, k: usize) -> JTable {
    let mut out = JTable::new();
    for (&ja, (wa, sa)) in a {
        for (&jb, (wb, sb)) in b {
            let j = ja + jb;
            if j <= k {
                merge_weighted(&mut out, j, wa + wb, merge_sorted(sa, sb));
            }
        }
    }
    out
}

fn solve_weighted(
    g: &Graph,
    weights: &[f64],
    seq: &ContractionSequence,
    k: usize,
    opts: &IsOptions,
) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("target size must be positive".into()));
    }
    if weights.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} vertices",
            weights.len(),
            n
        )));
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::InvalidInput("weights must be finite".into()));
    }
    if seq.base_n() != n {
        return Err(Error::InvalidInput(
            "sequence does not match its graph".into(),
        ));
    }
    seq.require_full("weighted_k_independent_set")?;

    let mut t = Trigraph::from_graph(g);
    let mut table: Table<JTable> = Table::new();
    for (v, &wv) in weights.iter().enumerate() {
        table.insert(vec![v], JTable::from([(1, (wv, vec![v]))]));
    }

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
        let t_cap = k.min(t.live_count());
        let produced = if opts.naive_enum {
            step_naive_weighted(&ctx, &table, z, t_cap, k)?
        } else {
            step_positive_weighted(&ctx, &table, z, t_cap, k)?
        };
        table.remove_touching(u, v);
        for (key, jt) in produced {
            table.insert(key, jt);
        }
    }

    let root = if n == 1 { 0 } else { seq.fresh_id(seq.len()) };
    let jt = table
        .entries
        .get(&vec![root])
        .expect("the final vertex is always realizable");
    let (_, (_, s)) = jt.iter().next_back().expect("nonempty size table");
    Ok(s.clone())
}

fn step_positive_weighted(
    ctx: &PreContractionView,
    table: &Table<JTable>,
    z: usize,
    t_cap: usize,
    k: usize,
) -> Result<BTreeMap<Key, JTable>> {
    let (u, v) = (ctx.u, ctx.v);
    let mut pool: BTreeSet<Key> = BTreeSet::new();
    for w in ctx.t.red_neighbors(z)? {
        for key in table.keys_with(w) {
            if !contains(&key, u) && !contains(&key, v) {
                pool.insert(key);
            }
        }
    }
    let pool: Vec<Key> = pool.into_iter().collect();

    let keys_u = table.keys_with(u);
    let cores_uv: Vec<&Key> = keys_u.iter().filter(|kk| contains(kk, v)).collect();
    let cores_u: Vec<&Key> = keys_u.iter().filter(|kk| !contains(kk, v)).collect();
    let keys_v = table.keys_with(v);
    let cores_v: Vec<&Key> = keys_v.iter().filter(|kk| !contains(kk, u)).collect();

    let mut bases: Vec<(Key, Key, JTable)> = Vec::new();
    let mut push_base = |key: Key, jt: JTable| {
        let m = map_forward(&key, u, v, z);
        if m.len() <= t_cap && !jt.is_empty() {
            bases.push((key, m, jt));
        }
    };
    for key in cores_uv {
        push_base(key.clone(), table.entries[key].clone());
    }
    for a in &cores_u {
        for b in &cores_v {
            if !disjoint(a, b) || !compatible(ctx, a, b) {
                continue;
            }
            push_base(
                merge_sorted(a, b),
                convolve(&table.entries[*a], &table.entries[*b], k),
            );
        }
        push_base((*a).clone(), table.entries[*a].clone());
    }
    for b in cores_v {
        push_base(b.clone(), table.entries[b].clone());
    }

    let mut produced: BTreeMap<Key, JTable> = BTreeMap::new();
    for (consumed, m, jt) in bases {
        extend_weighted(
            ctx,
            table,
            &pool,
            0,
            consumed,
            m,
            jt,
            &mut produced,
            t_cap,
            k,
        );
    }
    Ok(produced)
}

#[allow(clippy::too_many_arguments)]
fn extend_weighted(
    ctx: &PreContractionView,
    table: &Table<JTable>,
    pool: &[Key],
    start: usize,
    consumed: Key,
    m: Key,
    jt: JTable,
    produced: &mut BTreeMap<Key, JTable>,
    t_cap: usize,
    k: usize,
) {
    let slot = produced.entry(m.clone()).or_default();
    for (&j, (w, s)) in &jt {
        merge_weighted(slot, j, *w, s.clone());
    }
    for (i, key) in pool.iter().enumerate().skip(start) {
        if m.len() + key.len() > t_cap
            || !disjoint(key, &consumed)
            || !compatible(ctx, key, &consumed)
        {
            continue;
        }
        let joined = convolve(&jt, &table.entries[key], k);
        if joined.is_empty() {
            continue;
        }
        extend_weighted(
            ctx,
            table,
            pool,
            i + 1,
            merge_sorted(&consumed, key),
            merge_sorted(&m, key),
            joined,
            produced,
            t_cap,
            k,
        );
    }
}

fn step_naive_weighted(
    ctx: &PreContractionView,
    table: &Table<JTable>,
    z: usize,
    t_cap: usize,
    k: usize,
) -> Result<BTreeMap<Key, JTable>> {
    let (u, v) = (ctx.u, ctx.v);
    let mut produced: BTreeMap<Key, JTable> = BTreeMap::new();
    for tset in enumerate_red_connected_sets(ctx.t, &[z], t_cap, true)? {
        let rest: Vec<usize> = tset.iter().copied().filter(|&x| x != z).collect();
        let mut merged = JTable::new();
        for variant in [vec![u, v], vec![u], vec![v]] {
            let y = merge_sorted(&rest, &variant);
            if let Some(jt) = union_dec_weighted(ctx, table, &y, k) {
                for (j, (w, s)) in jt {
                    merge_weighted(&mut merged, j, w, s);
                }
            }
        }
        if !merged.is_empty() {
            produced.insert(tset, merged);
        }
    }
    Ok(produced)
}

fn union_dec_weighted(
    ctx: &PreContractionView,
    table: &Table<JTable>,
    y: &[usize],
    k: usize,
) -> Option<JTable> {
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &x in y {
        if comp_of.contains_key(&x) {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![x];
        let mut comp = Vec::new();
        comp_of.insert(x, id);
        while let Some(a) = stack.pop() {
            comp.push(a);
            for &b in y {
                if !comp_of.contains_key(&b) && ctx.prev_color(a, b) == Some(EdgeColor::Red) {
                    comp_of.insert(b, id);
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            for &x in a {
                for &y2 in b {
                    if ctx.prev_color(x, y2) == Some(EdgeColor::Black) {
                        return None;
                    }
                }
            }
        }
    }
    let mut jt: Option<JTable> = None;
    for comp in &comps {
        let entry = table.entries.get(comp)?;
        jt = Some(match jt {
            None => entry.clone(),
            Some(cur) => convolve(&cur, entry, k),
        });
    }
    jt
}
