//! Dominating set solvers driven by a contraction sequence.
//!
//! Partial solutions are profiles (T, D, M) over live trigraph vertices:
//! T a set inducing a connected subgraph of the red graph, D the members of
//! T whose parts the solution intersects, M the members whose parts it fully
//! dominates. A profile also keeps the radius-2 red ball of every D-member
//! inside T, so that everything a solution vertex can still influence stays
//! in view. One minimum realizing set is stored per profile.
//!
//! A contraction of u and v into z invalidates the entries touching {u, v}
//! and those whose D moved into the radius-2 red ball of z (their frozen
//! ground set can no longer contain that ball). New entries all contain z:
//! splitting z back into u and v decomposes the ground set into red
//! components of the previous trigraph, so candidates are assembled from
//! stored entries covering u and v plus entries touching the new red
//! neighbors of z. Hit and dominated sets of the assembled profile follow
//! mechanically: a part is dominated when its own component says so or when
//! it has a black edge to a hit part, since a black edge joins every vertex
//! of one part to every vertex of the other.
//!
//! Ground sets are capped at (d*d + 1) * k vertices, d being the verified
//! maximum red degree: a union of k radius-2 red balls cannot be larger, so
//! any bigger ground set has a member outside all of them whose removal is
//! immaterial. The one-over-the-cap case is recovered by extending a
//! cap-sized stored entry with a single red neighbor lying outside the red
//! balls of its hit parts; such a vertex is dominated exactly when it has a
//! black edge to a hit part, which pins down the extended profile.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sequence::{verify_sequence, ContractionSequence};
use crate::setops::{contains, disjoint, map_forward, merge_sorted};
use crate::toolkit::{greedy_sequence, power_graph, GreedyConfig};
use crate::trigraph::{EdgeColor, PreContractionView, Trigraph};

#[derive(Debug, Clone, Copy, Default)]
pub struct DsOptions {
    /// Re-validate every table entry against the original graph after every
    /// step.
    pub assert_invariants: bool,
}

/// (ground set, hit parts, dominated parts), each sorted.
type ProfileKey = (Vec<usize>, Vec<usize>, Vec<usize>);

/// A profile key flattened out with its stored solution appended.
type KeyedSolution = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

struct Table {
    entries: BTreeMap<ProfileKey, Vec<usize>>,
    member: BTreeMap<usize, BTreeSet<ProfileKey>>,
}

impl Table {
    fn new() -> Self {
        Table {
            entries: BTreeMap::new(),
            member: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: ProfileKey, s: Vec<usize>) {
        for &t in &key.0 {
            self.member.entry(t).or_default().insert(key.clone());
        }
        self.entries.insert(key, s);
    }

    fn remove(&mut self, key: &ProfileKey) {
        self.entries.remove(key);
        for &t in &key.0 {
            if let Some(set) = self.member.get_mut(&t) {
                set.remove(key);
                if set.is_empty() {
                    self.member.remove(&t);
                }
            }
        }
    }

    fn keys_with(&self, x: usize) -> Vec<ProfileKey> {
        self.member
            .get(&x)
            .map(|set| set.iter().cloned().collect())
            .unwrap_or_default()
    }

    fn remove_touching(&mut self, u: usize, v: usize) {
        let mut doomed: BTreeSet<ProfileKey> = BTreeSet::new();
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

/// Smaller set first, then lexicographically smallest.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a < b)
}

fn stage_best(staged: &mut BTreeMap<ProfileKey, Vec<usize>>, key: ProfileKey, s: Vec<usize>) {
    match staged.get_mut(&key) {
        None => {
            staged.insert(key, s);
        }
        Some(old) => {
            if better(&s, old) {
                *old = s;
            }
        }
    }
}

/// A dominating set of size at most `k`, minimum among those, or `None`.
pub fn k_dominating_set(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    k_dominating_set_with(g, seq, k, &DsOptions::default())
}

pub fn k_dominating_set_with(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
    opts: &DsOptions,
) -> Result<Option<Vec<usize>>> {
    solve(g, seq, k, opts)
}

/// Every vertex within distance `r` of the returned set: solved on the
/// r-th power graph with the supplied sequence, or a greedy one.
pub fn k_r_dominating_set(
    g: &Graph,
    r: usize,
    k: usize,
    seq_for_power: Option<&ContractionSequence>,
) -> Result<Option<Vec<usize>>> {
    if r == 0 {
        return Err(Error::InvalidInput(
            "domination radius must be positive".into(),
        ));
    }
    let pg = power_graph(g, r)?;
    match seq_for_power {
        Some(seq) => k_dominating_set(&pg, seq, k),
        None => {
            let seq = greedy_sequence(&pg, &GreedyConfig::default())?;
            k_dominating_set(&pg, &seq, k)
        }
    }
}

fn solve(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
    opts: &DsOptions,
) -> Result<Option<Vec<usize>>> {
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
    seq.require_full("dominating set")?;
    let d = verify_sequence(g, seq)?;
    let cap = (d * d + 1) * k;

    let mut t = Trigraph::from_graph(g);
    let mut table = Table::new();
    for v in 0..n {
        table.insert((vec![v], vec![v], vec![v]), vec![v]);
        table.insert((vec![v], vec![], vec![]), vec![]);
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
        let red_z: Vec<usize> = t
            .neighbors(z)?
            .iter()
            .filter(|&(_, &c)| c == EdgeColor::Red)
            .map(|(&w, _)| w)
            .collect();
        let ball_z = t.red_ball2(z)?;

        let mut staged: BTreeMap<ProfileKey, Vec<usize>> = BTreeMap::new();
        assemble(&ctx, &table, z, &red_z, cap, k, &mut staged);
        extend_past_cap(&ctx, &table, z, cap, k, &mut staged);

        table.remove_touching(u, v);
        // parts whose red ball swallowed z can no longer be hit parts of a
        // frozen ground set excluding z
        for &w in &ball_z {
            if w == z {
                continue;
            }
            for key in table.keys_with(w) {
                if contains(&key.1, w) {
                    table.remove(&key);
                }
            }
        }
        for (key, s) in staged {
            table.insert(key, s);
        }

        if opts.assert_invariants {
            let mut bag = parts.remove(&u).expect("tracked part");
            bag.extend(parts.remove(&v).expect("tracked part"));
            bag.sort_unstable();
            parts.insert(z, bag);
            validate_table(g, &t, &table.entries, &parts, k, cap)?;
        }
    }

    let root = if n == 1 { 0 } else { seq.fresh_id(seq.len()) };
    Ok(table
        .entries
        .get(&(vec![root], vec![root], vec![root]))
        .cloned())
}

/// No red edge between the two vertex sets in the previous trigraph.
fn no_red_between(ctx: &PreContractionView, a: &[usize], b: &[usize]) -> bool {
    for &x in a {
        for &y in b {
            if ctx.prev_color(x, y) == Some(EdgeColor::Red) {
                return false;
            }
        }
    }
    true
}

/// New entries assembled from stored ones. Splitting z back into u and v
/// turns a candidate ground set into red components of the previous
/// trigraph: one or two of them cover u and v (the cores), the rest each
/// touch a new red neighbor of z. Every subset of the pool that is pairwise
/// disjoint and red-disconnected from the rest yields a candidate.
fn assemble(
    ctx: &PreContractionView,
    table: &Table,
    z: usize,
    red_z: &[usize],
    cap: usize,
    k: usize,
    staged: &mut BTreeMap<ProfileKey, Vec<usize>>,
) {
    let (u, v) = (ctx.u, ctx.v);
    let keys_u = table.keys_with(u);
    let keys_v = table.keys_with(v);
    let mut pool: BTreeSet<ProfileKey> = BTreeSet::new();
    for &w in red_z {
        for key in table.keys_with(w) {
            if !contains(&key.0, u) && !contains(&key.0, v) {
                pool.insert(key);
            }
        }
    }
    let pool: Vec<ProfileKey> = pool.into_iter().collect();

    let mut bases: Vec<KeyedSolution> = Vec::new();
    for key in &keys_u {
        if contains(&key.0, v) {
            let s = table.entries[key].clone();
            bases.push((key.0.clone(), key.1.clone(), key.2.clone(), s));
        }
    }
    for ku in &keys_u {
        if contains(&ku.0, v) {
            continue;
        }
        for kv in &keys_v {
            if contains(&kv.0, u) || !disjoint(&ku.0, &kv.0) || !no_red_between(ctx, &ku.0, &kv.0) {
                continue;
            }
            let su = &table.entries[ku];
            let sv = &table.entries[kv];
            if su.len() + sv.len() > k {
                continue;
            }
            bases.push((
                merge_sorted(&ku.0, &kv.0),
                merge_sorted(&ku.1, &kv.1),
                merge_sorted(&ku.2, &kv.2),
                merge_sorted(su, sv),
            ));
        }
    }

    for (tu, dp, mp, s) in bases {
        if tu.len() - 1 > cap {
            // even with u and v folded together the ground set is too big
            continue;
        }
        grow(ctx, table, z, &pool, 0, &tu, &dp, &mp, &s, cap, k, staged);
    }
}

/// Depth-first closure over pool entries in index order, emitting a
/// candidate at every node.
#[allow(clippy::too_many_arguments)]
fn grow(
    ctx: &PreContractionView,
    table: &Table,
    z: usize,
    pool: &[ProfileKey],
    start: usize,
    tu: &[usize],
    dp: &[usize],
    mp: &[usize],
    s: &[usize],
    cap: usize,
    k: usize,
    staged: &mut BTreeMap<ProfileKey, Vec<usize>>,
) {
    finalize(ctx, z, tu, dp, mp, s, cap, k, staged);
    for (i, key) in pool.iter().enumerate().skip(start) {
        let extra = &table.entries[key];
        if s.len() + extra.len() > k
            || tu.len() - 2 + key.0.len() + 1 > cap
            || !disjoint(tu, &key.0)
            || !no_red_between(ctx, tu, &key.0)
        {
            continue;
        }
        let tu2 = merge_sorted(tu, &key.0);
        let dp2 = merge_sorted(dp, &key.1);
        let mp2 = merge_sorted(mp, &key.2);
        let s2 = merge_sorted(s, extra);
        grow(
            ctx,
            table,
            z,
            pool,
            i + 1,
            &tu2,
            &dp2,
            &mp2,
            &s2,
            cap,
            k,
            staged,
        );
    }
}

/// One-over-the-cap recovery: a stored entry of maximum ground size grows by
/// a single red neighbor w outside the radius-2 red balls of its hit parts.
/// Such a w has no red edge into the hit parts, so its part is dominated
/// exactly when some hit part sees it over a black edge.
fn extend_past_cap(
    ctx: &PreContractionView,
    table: &Table,
    z: usize,
    cap: usize,
    k: usize,
    staged: &mut BTreeMap<ProfileKey, Vec<usize>>,
) {
    let (u, v) = (ctx.u, ctx.v);
    let mut cores: BTreeSet<ProfileKey> = BTreeSet::new();
    for x in [u, v] {
        for key in table.keys_with(x) {
            if key.0.len() == cap {
                cores.insert(key);
            }
        }
    }
    for key in cores {
        let (t0, d0, m0) = (&key.0, &key.1, &key.2);
        let s0 = &table.entries[&key];
        let has_u = contains(t0, u);
        let has_v = contains(t0, v);
        let cands: Vec<usize> = if has_u && has_v {
            let mut nb: BTreeSet<usize> = BTreeSet::new();
            for &a in t0 {
                for w in prev_red_neighbors(ctx, z, a) {
                    if !contains(t0, w) {
                        nb.insert(w);
                    }
                }
            }
            nb.into_iter().collect()
        } else {
            let w = if has_u { v } else { u };
            if t0
                .iter()
                .any(|&a| ctx.prev_color(a, w) == Some(EdgeColor::Red))
            {
                vec![w]
            } else {
                Vec::new()
            }
        };
        if cands.is_empty() {
            continue;
        }
        let mut forbidden: BTreeSet<usize> = BTreeSet::new();
        for &a in d0 {
            forbidden.extend(prev_red_ball2(ctx, z, a));
        }
        for w in cands {
            if forbidden.contains(&w) {
                continue;
            }
            let mut t_prime = t0.clone();
            let pos = t_prime.binary_search(&w).unwrap_err();
            t_prime.insert(pos, w);
            let dominated = d0
                .iter()
                .any(|&b| ctx.prev_color(w, b) == Some(EdgeColor::Black));
            let m_prime = if dominated {
                merge_sorted(m0, &[w])
            } else {
                m0.clone()
            };
            finalize(ctx, z, &t_prime, d0, &m_prime, s0, cap, k, staged);
        }
    }
}

/// Map a candidate assembly onto the current trigraph and stage it. The new
/// hit and dominated sets follow from the assembled ones: domination is
/// inherited or enters over a black edge from a hit part, and z aggregates
/// the status of u and v. Candidates whose hit parts have red-ball overshoot
/// are not profiles and are discarded.
#[allow(clippy::too_many_arguments)]
fn finalize(
    ctx: &PreContractionView,
    z: usize,
    tu: &[usize],
    dp: &[usize],
    mp: &[usize],
    s: &[usize],
    cap: usize,
    k: usize,
    staged: &mut BTreeMap<ProfileKey, Vec<usize>>,
) {
    let (u, v) = (ctx.u, ctx.v);
    let t_new = map_forward(tu, u, v, z);
    if t_new.len() > cap || s.len() > k {
        return;
    }
    let covered = |a: usize| {
        contains(mp, a)
            || dp
                .iter()
                .any(|&b| ctx.prev_color(a, b) == Some(EdgeColor::Black))
    };
    let mut d_new: Vec<usize> = dp.iter().copied().filter(|&a| a != u && a != v).collect();
    if contains(dp, u) || contains(dp, v) {
        d_new.push(z);
    }
    debug_assert!(d_new.len() <= k, "hit parts outnumber the solution");
    let mut m_new: Vec<usize> = Vec::new();
    for &a in &t_new {
        if a != z && covered(a) {
            m_new.push(a);
        }
    }
    if covered(u) && covered(v) {
        m_new.push(z);
    }
    for &a in &d_new {
        let ball = ctx.t.red_ball2(a).expect("ground set members are alive");
        if !ball.iter().all(|&b| contains(&t_new, b)) {
            return;
        }
    }
    stage_best(staged, (t_new, d_new, m_new), s.to_vec());
}

/// Red neighbors of `a` in the trigraph as it was before the current
/// contraction.
fn prev_red_neighbors(ctx: &PreContractionView, z: usize, a: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    if a == ctx.u || a == ctx.v {
        let adj = if a == ctx.u { ctx.u_adj } else { ctx.v_adj };
        for (&b, &c) in adj {
            if c == EdgeColor::Red {
                out.push(b);
            }
        }
        return out;
    }
    for (&b, &c) in ctx.t.neighbors(a).expect("surviving vertices stay alive") {
        if b != z && c == EdgeColor::Red {
            out.push(b);
        }
    }
    if ctx.u_adj.get(&a) == Some(&EdgeColor::Red) {
        out.push(ctx.u);
    }
    if ctx.v_adj.get(&a) == Some(&EdgeColor::Red) {
        out.push(ctx.v);
    }
    out.sort_unstable();
    out
}

fn prev_red_ball2(ctx: &PreContractionView, z: usize, a: usize) -> BTreeSet<usize> {
    let mut ball: BTreeSet<usize> = BTreeSet::new();
    ball.insert(a);
    for b in prev_red_neighbors(ctx, z, a) {
        ball.insert(b);
        for c in prev_red_neighbors(ctx, z, b) {
            ball.insert(c);
        }
    }
    ball
}

/// Every stored S must realize its profile on the original graph and every
/// key must be a well-formed profile of the current trigraph.
fn validate_table(
    g: &Graph,
    t: &Trigraph,
    entries: &BTreeMap<ProfileKey, Vec<usize>>,
    parts: &BTreeMap<usize, Vec<usize>>,
    k: usize,
    cap: usize,
) -> Result<()> {
    let fail = |msg: String| Err(Error::ContractViolation(msg));
    for ((tk, dk, mk), s) in entries {
        if tk.len() > cap || dk.len() > k || s.len() > k {
            return fail(format!("oversized profile {:?}", tk));
        }
        if !dk.iter().all(|x| contains(tk, *x)) || !mk.iter().all(|x| contains(tk, *x)) {
            return fail(format!("hit or dominated parts escape {:?}", tk));
        }
        // ground set connected in the red graph
        if tk.len() > 1 {
            let mut seen = vec![tk[0]];
            let mut stack = vec![tk[0]];
            while let Some(a) = stack.pop() {
                for (&b, &c) in t.neighbors(a)? {
                    if c == EdgeColor::Red && contains(tk, b) && !seen.contains(&b) {
                        seen.push(b);
                        stack.push(b);
                    }
                }
            }
            if seen.len() != tk.len() {
                return fail(format!("ground set {:?} not red-connected", tk));
            }
        }
        for &a in dk {
            let ball = t.red_ball2(a)?;
            if !ball.iter().all(|&b| contains(tk, b)) {
                return fail(format!("red ball of {} escapes {:?}", a, tk));
            }
        }
        // the stored set realizes the profile on the original graph
        let mut ground: BTreeSet<usize> = BTreeSet::new();
        for &a in tk {
            ground.extend(parts[&a].iter().copied());
        }
        if !s.iter().all(|x| ground.contains(x)) {
            return fail(format!("solution escapes the parts of {:?}", tk));
        }
        let mut dominated: BTreeSet<usize> = BTreeSet::new();
        for &x in s {
            dominated.insert(x);
            dominated.extend(g.neighbors(x).iter().copied());
        }
        for &a in tk {
            let hit = parts[&a].iter().any(|x| s.binary_search(x).is_ok());
            if hit != contains(dk, a) {
                return fail(format!("hit status of {} wrong in {:?}", a, tk));
            }
            let full = parts[&a].iter().all(|x| dominated.contains(x));
            if full != contains(mk, a) {
                return fail(format!("domination status of {} wrong in {:?}", a, tk));
            }
        }
    }
    Ok(())
}
