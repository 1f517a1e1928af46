//! Distance measures on a periodic trellis: active burst distances, free
//! distance, slope, and catastrophicity.
//!
//! All searches run on the period-unrolled state graph whose nodes are
//! `(phase, state)` pairs. An `l`-loop leaves state 0, returns to state 0
//! after exactly `l` edges and never takes an idle edge (zero-weight edge
//! from state 0 to state 0). Loops may pass through state 0 on the way.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::trellis::Trellis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("loop length must be at least 1")]
    ZeroLength,
    #[error("state graph with {0} nodes is too large for an exact cycle-mean search")]
    TooLarge(usize),
}

/// Node cap for the quadratic-memory minimum cycle mean search.
pub const MAX_SLOPE_NODES: usize = 1 << 11;

const INF: u32 = u32::MAX;

/// One traversed edge; `phase` is the section index the edge was taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub phase: usize,
    pub from: usize,
    pub input: usize,
    pub to: usize,
    pub weight: u32,
}

/// Minimum `l`-loop weights for `l = 1..=lmax` starting at `phase`.
fn loop_profile_from(tr: &Trellis, phase: usize, lmax: usize) -> (Vec<Option<u32>>, u32) {
    let s_count = tr.num_states();
    let mut dist = vec![INF; s_count];
    dist[0] = 0;
    let mut next = vec![INF; s_count];
    let mut profile = Vec::with_capacity(lmax);
    for step in 0..lmax {
        let t = phase + step;
        next.fill(INF);
        for (s, &d) in dist.iter().enumerate() {
            if d == INF {
                continue;
            }
            for x in 0..tr.num_inputs() {
                if tr.is_idle(t, s, x) {
                    continue;
                }
                let to = tr.next_state(t, s, x);
                let w = d + tr.weight(t, s, x);
                if w < next[to] {
                    next[to] = w;
                }
            }
        }
        std::mem::swap(&mut dist, &mut next);
        profile.push((dist[0] != INF).then_some(dist[0]));
    }
    // every loop longer than lmax has one of these paths as a prefix
    let prefix_bound = dist.iter().copied().min().unwrap_or(INF);
    (profile, prefix_bound)
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Active burst distances `d_l` for `l = 1..=lmax`, minimized over start
/// phases. `None` marks lengths without any loop.
pub fn burst_profile(tr: &Trellis, lmax: usize, exec: Execution) -> Vec<Option<u32>> {
    let per_phase = exec.map(0..tr.period(), |p| loop_profile_from(tr, p, lmax).0);
    (0..lmax)
        .map(|l| per_phase.iter().map(|prof| prof[l]).fold(None, min_opt))
        .collect()
}

/// Active burst distance of order `ell`; `None` is the infinite sentinel.
pub fn active_burst_distance(tr: &Trellis, ell: usize) -> Result<Option<u32>, DistanceError> {
    if ell == 0 {
        return Err(DistanceError::ZeroLength);
    }
    Ok(burst_profile(tr, ell, Execution::default())[ell - 1])
}

/// Default search horizon `8 (nu + 1) tau` for loop-based distance searches.
pub fn default_loop_horizon(tr: &Trellis) -> usize {
    8 * (tr.state_digits() + 1) * tr.period()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeDistance {
    /// Minimum weight of a nonzero finite-weight code sequence.
    pub d_free: Option<u32>,
    /// Time phase at which the certificate path starts.
    pub start_phase: usize,
    /// Edges of a minimum-weight code sequence. When `ends_in_zero_cycle`
    /// is set the encoder continues forever on zero-weight edges from the
    /// last state instead of returning to state 0.
    pub certificate: Vec<PathStep>,
    pub ends_in_zero_cycle: bool,
    /// Smallest loop weight over `l <= horizon` and the length achieving it.
    pub loop_min: Option<u32>,
    pub loop_length: Option<usize>,
    pub horizon: usize,
    /// Set when every loop longer than the horizon provably weighs at least `loop_min`.
    pub stabilized: bool,
}

/// Nodes `(phase, state)` that admit an infinite walk on zero-label edges.
fn zero_sustainable(tr: &Trellis) -> Vec<bool> {
    let (tau, s_count) = (tr.period(), tr.num_states());
    let node = |p: usize, s: usize| p * s_count + s;
    let total = tau * s_count;
    let mut out_deg = vec![0usize; total];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); total];
    for p in 0..tau {
        for s in 0..s_count {
            for x in 0..tr.num_inputs() {
                if tr.weight(p, s, x) == 0 {
                    let to = node((p + 1) % tau, tr.next_state(p, s, x));
                    out_deg[node(p, s)] += 1;
                    preds[to].push(node(p, s));
                }
            }
        }
    }
    let mut alive = vec![true; total];
    let mut queue: VecDeque<usize> = (0..total).filter(|&v| out_deg[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in &preds[v] {
            out_deg[u] -= 1;
            if out_deg[u] == 0 && alive[u] {
                queue.push_back(u);
            }
        }
    }
    alive
}

/// Exact free distance by a shortest-path search over `(phase, state, emitted)`
/// where `emitted` records whether a nonzero label has been produced. A code
/// sequence has finite weight exactly when it ends in a zero-weight cycle, so
/// the search stops at the first node that can idle forever. This also covers
/// catastrophic encoders, whose minimum-weight sequences need not return to
/// state 0. The loop-based minimum up to `horizon` is reported alongside.
pub fn free_distance(tr: &Trellis, horizon: usize, exec: Execution) -> FreeDistance {
    let (tau, s_count, q_k) = (tr.period(), tr.num_states(), tr.num_inputs());
    let sustain = zero_sustainable(tr);
    let node = |flag: usize, p: usize, s: usize| (flag * tau + p) * s_count + s;
    let total = 2 * tau * s_count;
    let mut dist = vec![INF; total];
    let mut pred: Vec<Option<(usize, PathStep)>> = vec![None; total];
    let mut heap = BinaryHeap::new();
    for p in 0..tau {
        dist[node(0, p, 0)] = 0;
        heap.push(Reverse((0u32, node(0, p, 0))));
    }
    let mut found = None;
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        let flag = v / (tau * s_count);
        let p = (v / s_count) % tau;
        let s = v % s_count;
        if flag == 1 && sustain[p * s_count + s] {
            found = Some(v);
            break;
        }
        for x in 0..q_k {
            let w = tr.weight(p, s, x);
            let to_state = tr.next_state(p, s, x);
            let next_flag = if flag == 1 || w > 0 { 1 } else { 0 };
            let to = node(next_flag, (p + 1) % tau, to_state);
            let nd = d + w;
            if nd < dist[to] {
                dist[to] = nd;
                pred[to] = Some((
                    v,
                    PathStep {
                        phase: p,
                        from: s,
                        input: x,
                        to: to_state,
                        weight: w,
                    },
                ));
                heap.push(Reverse((nd, to)));
            }
        }
    }

    let mut certificate = Vec::new();
    let mut start_phase = 0;
    let mut ends_in_zero_cycle = false;
    if let Some(end) = found {
        let mut v = end;
        while let Some((u, step)) = pred[v] {
            certificate.push(step);
            v = u;
        }
        certificate.reverse();
        // drop the leading idle prefix spent waiting at state 0
        let lead = certificate
            .iter()
            .take_while(|st| st.from == 0 && st.to == 0 && st.weight == 0)
            .count();
        certificate.drain(..lead);
        start_phase = certificate.first().map_or(0, |st| st.phase);
        ends_in_zero_cycle = end % s_count != 0;
    }

    let per_phase = exec.map(0..tau, |p| loop_profile_from(tr, p, horizon));
    let mut loop_min = None;
    let mut loop_length = None;
    for l in 0..horizon {
        let best = per_phase
            .iter()
            .map(|(prof, _)| prof[l])
            .fold(None, min_opt);
        if let Some(b) = best {
            if loop_min.is_none_or(|m| b < m) {
                loop_min = Some(b);
                loop_length = Some(l + 1);
            }
        }
    }
    let prefix_bound = per_phase.iter().map(|(_, b)| *b).min().unwrap_or(INF);
    let stabilized = loop_min.is_some_and(|m| prefix_bound >= m);

    FreeDistance {
        d_free: found.map(|v| dist[v]),
        start_phase,
        certificate,
        ends_in_zero_cycle,
        loop_min,
        loop_length,
        horizon,
        stabilized,
    }
}

/// Slope of the active burst distance: the minimum mean edge weight over
/// cycles of the period-unrolled graph, idle edges removed (Karp's
/// algorithm, exact).
pub fn slope(tr: &Trellis) -> Result<Option<Ratio<i64>>, DistanceError> {
    let (tau, s_count) = (tr.period(), tr.num_states());
    let total = tau * s_count;
    if total > MAX_SLOPE_NODES {
        return Err(DistanceError::TooLarge(total));
    }
    let mut edges = Vec::with_capacity(total * tr.num_inputs());
    for p in 0..tau {
        for s in 0..s_count {
            for x in 0..tr.num_inputs() {
                if tr.is_idle(p, s, x) {
                    continue;
                }
                let to = ((p + 1) % tau) * s_count + tr.next_state(p, s, x);
                edges.push((p * s_count + s, to, tr.weight(p, s, x) as i64));
            }
        }
    }
    const NONE: i64 = i64::MAX;
    // d[k][v]: minimum weight of a k-edge walk ending at v, from any start
    let mut d = vec![vec![NONE; total]; total + 1];
    d[0].fill(0);
    for k in 1..=total {
        let (prev, cur) = d.split_at_mut(k);
        let (prev, cur) = (&prev[k - 1], &mut cur[0]);
        for &(u, v, w) in &edges {
            if prev[u] != NONE && prev[u] + w < cur[v] {
                cur[v] = prev[u] + w;
            }
        }
    }
    let n = total as i64;
    let mut best: Option<Ratio<i64>> = None;
    for v in 0..total {
        if d[total][v] == NONE {
            continue;
        }
        let worst = (0..total)
            .filter(|&k| d[k][v] != NONE)
            .map(|k| Ratio::new(d[total][v] - d[k][v], n - k as i64))
            .max();
        if let Some(w) = worst {
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catastrophicity {
    pub catastrophic: bool,
    /// A cycle of zero-weight edges carrying a nonzero input, when one exists.
    pub witness: Vec<PathStep>,
}

/// An encoder is catastrophic iff its unrolled graph has a cycle whose edges
/// all emit zero while some edge consumes a nonzero input.
pub fn catastrophicity(tr: &Trellis) -> Catastrophicity {
    let (tau, s_count) = (tr.period(), tr.num_states());
    let total = tau * s_count;
    let mut adj: Vec<Vec<(usize, PathStep)>> = vec![Vec::new(); total];
    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for p in 0..tau {
        for s in 0..s_count {
            for x in 0..tr.num_inputs() {
                if tr.weight(p, s, x) != 0 {
                    continue;
                }
                let to_state = tr.next_state(p, s, x);
                let to = ((p + 1) % tau) * s_count + to_state;
                let step = PathStep {
                    phase: p,
                    from: s,
                    input: x,
                    to: to_state,
                    weight: 0,
                };
                adj[p * s_count + s].push((to, step));
                radj[to].push(p * s_count + s);
            }
        }
    }
    let comp = strongly_connected(&adj, &radj);
    for u in 0..total {
        for &(v, step) in &adj[u] {
            if step.input != 0 && comp[u] == comp[v] {
                let mut witness = vec![step];
                witness.extend(bfs_path(&adj, v, u));
                return Catastrophicity {
                    catastrophic: true,
                    witness,
                };
            }
        }
    }
    Catastrophicity {
        catastrophic: false,
        witness: Vec::new(),
    }
}

/// Kosaraju, iterative.
fn strongly_connected(adj: &[Vec<(usize, PathStep)>], radj: &[Vec<usize>]) -> Vec<usize> {
    let total = adj.len();
    let mut order = Vec::with_capacity(total);
    let mut seen = vec![false; total];
    for root in 0..total {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < adj[v].len() {
                stack.push((v, i + 1));
                let w = adj[v][i].0;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; total];
    let mut next_id = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next_id;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &radj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next_id;
                    stack.push(w);
                }
            }
        }
        next_id += 1;
    }
    comp
}

fn bfs_path(adj: &[Vec<(usize, PathStep)>], from: usize, to: usize) -> Vec<PathStep> {
    if from == to {
        return Vec::new();
    }
    let mut prev: Vec<Option<(usize, PathStep)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(w, step) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, step));
                if w == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while let Some((p, st)) = prev[cur] {
                        path.push(st);
                        cur = p;
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(w);
            }
        }
    }
    Vec::new()
}

/// Upper bounds for unit-memory `[n, k]` codes: `d_free <= 2n - k + 1`
/// (only when the memory is 1) and `slope <= n - k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub d_free: Option<u32>,
    pub slope: u32,
}

pub fn unit_memory_bounds(n: usize, k: usize, memory: usize) -> Bounds {
    Bounds {
        d_free: (memory == 1).then_some((2 * n - k + 1) as u32),
        slope: (n - k) as u32,
    }
}
