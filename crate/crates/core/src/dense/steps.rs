//! The weight-shaping stages of the dense pipeline, in running order:
//! base weights, big-side equalization, conflict lists, small-side
//! quarter adjustment, and the finishing rounding pass.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::graph::{Graph, SpanningSubgraph};
use crate::rounding;

use super::params::{b_weight_cap, target_weight, weight_interval};
use super::state::{PipelineState, Side};

/// Put weight 1 on the deterministic big-side core and on every active
/// crossing edge; everything else stays at 0.
///
/// A big-big edge joins blocks `a` and `b`; it is kept exactly when
/// `a + b` clears the number of blocks, so higher blocks reach further
/// down. Small-small edges enter later at half weight.
pub fn apply_base_weights(g: &Graph, st: &mut PipelineState) {
    let blocks = st.params.b_blocks as u64;
    for e in 0..g.edge_count() {
        let (u, v) = g.edge(e as u32);
        let keep = match (st.side[u as usize], st.side[v as usize]) {
            (Side::Big(a), Side::Big(b)) => u64::from(a) + u64::from(b) >= blocks + 1,
            (Side::Big(_), Side::Small(_)) | (Side::Small(_), Side::Big(_)) => st.active[e],
            (Side::Small(_), Side::Small(_)) => false,
        };
        if keep {
            st.set_edge(g, e, 4);
        }
    }
}

/// Incident crossing edges of `v` that still carry weight and may be
/// dropped: active, removable, ascending edge index.
fn droppable(g: &Graph, st: &PipelineState, v: u32) -> Vec<usize> {
    let mut ids: Vec<usize> = g
        .neighbors(v)
        .iter()
        .map(|&(_, e)| e as usize)
        .filter(|&e| st.active[e] && st.removable[e] && st.quarters[e] == 4)
        .collect();
    ids.sort_unstable();
    ids
}

/// Equalize big-side weights, then enforce the per-integer cap.
///
/// The first pass steers every big-side vertex down to the floor of its
/// target; a vertex whose target is unreachable (below the weight its
/// droppable edges could shed, or above its current weight) is left
/// untouched so the rebalance below still has edges to spend, and the
/// miss is counted. The second pass is the bucket shift: when every
/// target was hit, each full bucket of width `floor(sqrt(delta))` spills
/// round-robin into the bucket below it, lowest target first. Finally an
/// overflow sweep moves vertices off any integer weight held by more
/// than the cap, highest weights first, and freezes the big side.
pub fn equalize_b_weights(g: &Graph, st: &mut PipelineState) {
    let targets: Vec<Option<i64>> = (0..g.n() as u32)
        .map(|v| match st.side[v as usize] {
            Side::Big(i) => {
                Some(target_weight(&st.params, g.degree(v), i as usize).floor() as i64)
            }
            Side::Small(_) => None,
        })
        .collect();
    equalize_with(g, st, &targets);
}

/// Equalization with explicit integer targets, `None` off the big side.
/// Split out so the reachable-target path can be exercised on hosts far
/// too small for the real target formula to be positive.
pub(crate) fn equalize_with(g: &Graph, st: &mut PipelineState, targets: &[Option<i64>]) {
    let mut removals = vec![0usize; g.n()];

    // First pass: hit the targets that are reachable.
    for v in 0..g.n() as u32 {
        let Some(t) = targets[v as usize] else { continue };
        debug_assert_eq!(st.wq[v as usize] % 4, 0);
        let w = st.wq[v as usize] / 4;
        let ids = droppable(g, st, v);
        if t > w || t < w - ids.len() as i64 {
            st.target_misses += 1;
            continue;
        }
        let drop = (w - t) as usize;
        for &e in ids.iter().take(drop) {
            st.set_edge(g, e, 0);
        }
        removals[v as usize] += drop;
        st.equalize_removed += drop;
    }

    // Bucket shift: only meaningful when the first pass missed nothing,
    // since it relies on weights sitting at their targets.
    let q = st.params.bucket as i64;
    if st.target_misses == 0 && q >= 1 {
        let snapshot: Vec<(i64, u32)> = (0..g.n() as u32)
            .filter(|&v| targets[v as usize].is_some())
            .map(|v| (st.wq[v as usize] / 4, v))
            .collect();
        let max_bucket = snapshot.iter().map(|&(w, _)| w / q + 1).max().unwrap_or(0);
        for j in (2..=max_bucket).rev() {
            let mut members: Vec<(i64, u32)> = snapshot
                .iter()
                .copied()
                .filter(|&(w, _)| w / q + 1 == j)
                .collect();
            members.sort_unstable();
            for (t, &(w, v)) in members.iter().enumerate() {
                let goal = (j - 2) * q + (t as i64 % q);
                let dropped = reduce_to(g, st, v, w - goal);
                removals[v as usize] += dropped;
                if (dropped as i64) < w - goal {
                    st.rebalance_misses += 1;
                }
            }
        }
    }

    // Overflow sweep: push vertices off over-full integer weights,
    // highest weight first; a vertex moves to the nearest under-cap
    // weight below it that its droppable edges can still reach.
    let cap = b_weight_cap(&st.params);
    let max_w = (0..g.n() as u32)
        .filter(|&v| targets[v as usize].is_some())
        .map(|v| st.wq[v as usize] / 4)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let mut loads: Vec<Vec<u32>> = vec![Vec::new(); max_w + 1];
    for v in 0..g.n() as u32 {
        if targets[v as usize].is_some() {
            loads[(st.wq[v as usize] / 4).max(0) as usize].push(v);
        }
    }
    for t in (0..=max_w).rev() {
        while loads[t].len() > cap {
            // The vertex with the most droppable weight moves furthest;
            // prefer it so light vertices keep their slack.
            let (pos, mobility) = match loads[t]
                .iter()
                .enumerate()
                .map(|(idx, &v)| (droppable(g, st, v).len(), idx))
                .max_by_key(|&(mob, idx)| (mob, std::cmp::Reverse(loads[t][idx])))
            {
                Some((mob, idx)) if mob > 0 => (idx, mob),
                _ => {
                    st.rebalance_misses += 1;
                    break;
                }
            };
            let reach = t.saturating_sub(mobility);
            let Some(dest) = (reach..t).rev().find(|&d| loads[d].len() < cap) else {
                st.rebalance_misses += 1;
                break;
            };
            let v = loads[t].swap_remove(pos);
            let dropped = reduce_to(g, st, v, (t - dest) as i64);
            debug_assert_eq!(dropped, t - dest);
            removals[v as usize] += dropped;
            loads[dest].push(v);
            st.rebalance_moves += 1;
        }
    }

    // The combined removal budget per vertex; at desk scale the bound
    // exceeds the degree, so only synthetic targets can get close.
    for v in 0..g.n() as u32 {
        if targets[v as usize].is_some() {
            let budget = 27.0 * (g.degree(v) as f64).sqrt() * (g.n() as f64).ln();
            debug_assert!((removals[v as usize] as f64) <= budget.ceil());
        }
    }

    st.b_cap_ok = loads.iter().all(|l| l.len() <= cap);
    st.frozen_b = st.wq.clone();
}

/// Drop up to `units` droppable edges at `v`, returning how many fell.
fn reduce_to(g: &Graph, st: &mut PipelineState, v: u32, units: i64) -> usize {
    if units <= 0 {
        return 0;
    }
    let ids = droppable(g, st, v);
    let drop = ids.len().min(units as usize);
    for &e in ids.iter().take(drop) {
        st.set_edge(g, e, 0);
    }
    drop
}

/// Fill in the conflict lists: two small-side vertices conflict exactly
/// when their expected-weight intervals intersect.
pub fn build_conflicts(g: &Graph, st: &mut PipelineState) {
    let small = st.small_vertices();
    let spans: Vec<(u32, f64, f64)> = small
        .iter()
        .map(|&v| {
            let Side::Small(j) = st.side[v as usize] else { unreachable!() };
            let (lo, hi) = weight_interval(&st.params, g.degree(v), j as usize);
            (v, lo, hi)
        })
        .collect();
    for (a, &(v, lo_v, hi_v)) in spans.iter().enumerate() {
        for &(u, lo_u, hi_u) in spans.iter().skip(a + 1) {
            if lo_v <= hi_u && lo_u <= hi_v {
                st.conflicts[v as usize].push(u);
                st.conflicts[u as usize].push(v);
            }
        }
    }
}

/// Steer every small-side vertex into a two-value weight window.
///
/// Small-small edges start at half weight. Vertices are processed in
/// ascending order; at each one, edges to unprocessed neighbors may gain
/// a quarter, and edges to processed neighbors may move a quarter in
/// whichever direction keeps the neighbor inside its own window. The
/// reachable totals form a contiguous quarter progression; among the
/// aligned twelve-quarter windows inside it, the vertex takes one chosen
/// by fewest earlier conflicting neighbors (ties to the lowest) and
/// parks its weight on the window's bottom two quarters. Distinct
/// windows are at least eleven quarters apart, so equal final weights
/// force equal windows.
pub fn quarter_adjust(g: &Graph, st: &mut PipelineState) {
    let small = st.small_vertices();
    for &v in &small {
        for &(u, e) in g.neighbors(v) {
            if u > v && st.side[u as usize].is_small() {
                st.set_edge(g, e as usize, 2);
            }
        }
    }

    for &v in &small {
        let mut forward: Vec<usize> = Vec::new();
        let mut back_up: Vec<usize> = Vec::new(); // neighbor parked at window bottom
        let mut back_down: Vec<usize> = Vec::new(); // neighbor parked at window top
        for &(u, e) in g.neighbors(v) {
            if !st.side[u as usize].is_small() {
                continue;
            }
            if u > v {
                forward.push(e as usize);
            } else if let Some(b) = st.window[u as usize] {
                let wu = st.wq[u as usize];
                debug_assert!(wu == 12 * b || wu == 12 * b + 1);
                if wu == 12 * b {
                    back_up.push(e as usize);
                } else {
                    back_down.push(e as usize);
                }
            }
        }
        forward.sort_unstable();
        back_up.sort_unstable();
        back_down.sort_unstable();

        let c = st.wq[v as usize];
        let lo = c - back_down.len() as i64;
        let hi = c + forward.len() as i64 + back_up.len() as i64;
        if hi - lo + 1 < 34 {
            st.small_progressions += 1;
        }
        let b_min = lo.div_euclid(12) + i64::from(lo.rem_euclid(12) != 0);
        let b_max = (hi - 11).div_euclid(12);
        if b_min > b_max {
            st.unwindowed += 1;
            continue;
        }

        let mut taken: HashMap<i64, usize> = HashMap::new();
        for &u in &st.conflicts[v as usize] {
            if let Some(b) = st.window[u as usize] {
                *taken.entry(b).or_insert(0) += 1;
            }
        }
        let base = (b_min..=b_max)
            .min_by_key(|b| (*taken.get(b).unwrap_or(&0), *b))
            .unwrap();

        // Park on whichever of the window's two bottom quarters is
        // nearer, preferring the lower on a tie.
        let target = if (12 * base - c).abs() <= (12 * base + 1 - c).abs() {
            12 * base
        } else {
            12 * base + 1
        };
        let mut delta = target - c;
        if delta > 0 {
            for &e in forward.iter().chain(&back_up) {
                if delta == 0 {
                    break;
                }
                st.set_edge(g, e, st.quarters[e] + 1);
                delta -= 1;
            }
        } else {
            for &e in &back_down {
                if delta == 0 {
                    break;
                }
                st.set_edge(g, e, st.quarters[e] - 1);
                delta += 1;
            }
        }
        debug_assert_eq!(st.wq[v as usize], target);
        st.window[v as usize] = Some(base);

        // Nothing processed so far may have drifted out of its window.
        debug_assert!(small.iter().take_while(|&&u| u <= v).all(|&u| {
            st.window[u as usize]
                .is_none_or(|b| st.wq[u as usize] == 12 * b || st.wq[u as usize] == 12 * b + 1)
        }));
    }
}

/// What the finishing pass measured on its way to the subgraph.
#[derive(Debug, Clone)]
pub struct FinishReport {
    /// Every small-side vertex landed within one of its fractional total.
    pub wz_ok: bool,
    /// Big-side weights never moved after the freeze.
    pub b_frozen: bool,
    /// Equal-weight small pairs that shared a window, as the separation
    /// argument demands; `None` when there were no comparable collisions.
    pub collisions_share_windows: Option<bool>,
    /// Equal-weight small pairs whose members were mutual conflicts;
    /// checked only between vertices still inside their intervals.
    pub collisions_conflict: Option<bool>,
    /// Small-side vertices whose weight escaped its expected interval.
    pub interval_escapes: usize,
}

/// Round the small-side fractional weights to a spanning subgraph and
/// check the finishing invariants.
pub fn finalize<'g>(g: &'g Graph, st: &mut PipelineState) -> (SpanningSubgraph<'g>, FinishReport) {
    let small = st.small_vertices();
    let index: HashMap<u32, u32> = small
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut sub_edges: Vec<(u32, u32)> = Vec::new();
    let mut sub_ids: Vec<usize> = Vec::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.edge(e as u32);
        if st.side[u as usize].is_small() && st.side[v as usize].is_small() {
            sub_edges.push((index[&u], index[&v]));
            sub_ids.push(e);
        }
    }

    let mut bits = vec![false; g.edge_count()];
    if !sub_edges.is_empty() {
        let sub =
            Graph::new(small.len(), &sub_edges).expect("small side inherits a simple graph");
        let z: Vec<BigRational> = sub_ids
            .iter()
            .map(|&e| BigRational::new(BigInt::from(st.quarters[e]), BigInt::from(4)))
            .collect();
        let rounded = rounding::round_weights(&sub, &z);
        for (slot, &e) in sub_ids.iter().enumerate() {
            bits[e] = rounded.contains(slot as u32);
        }
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.edge(e as u32);
        if !(st.side[u as usize].is_small() && st.side[v as usize].is_small()) {
            debug_assert!(st.quarters[e] == 0 || st.quarters[e] == 4);
            bits[e] = st.quarters[e] == 4;
        }
    }
    let h = SpanningSubgraph::from_bits(g, &bits);

    // Quarter arithmetic: the rounded degree must sit in the half-open
    // unit window around the fractional total, and the big side must be
    // exactly its frozen weights.
    let mut wz_ok = true;
    let mut b_frozen = true;
    for v in 0..g.n() as u32 {
        let dq = 4 * i64::from(h.degree(v));
        let w = st.wq[v as usize];
        match st.side[v as usize] {
            Side::Small(_) => wz_ok &= dq > w - 4 && dq <= w + 4,
            Side::Big(_) => {
                b_frozen &= w == st.frozen_b[v as usize] && dq == w;
            }
        }
    }

    // Collision structure: equal final weights on the small side force
    // equal windows (separation), and conflict-list membership wherever
    // both weights stayed inside their intervals.
    let mut inside = vec![false; g.n()];
    for &v in &small {
        let Side::Small(j) = st.side[v as usize] else { unreachable!() };
        let (lo, hi) = weight_interval(&st.params, g.degree(v), j as usize);
        let w = st.wq[v as usize] as f64 / 4.0;
        inside[v as usize] = lo <= w && w <= hi;
    }
    st.interval_escapes = small.iter().filter(|&&v| !inside[v as usize]).count();

    let mut by_degree: HashMap<u32, Vec<u32>> = HashMap::new();
    for &v in &small {
        by_degree.entry(h.degree(v)).or_default().push(v);
    }
    let mut share_windows: Option<bool> = None;
    let mut conflict_ok: Option<bool> = None;
    for group in by_degree.values() {
        for (a, &v) in group.iter().enumerate() {
            for &u in group.iter().skip(a + 1) {
                if let (Some(bu), Some(bv)) = (st.window[u as usize], st.window[v as usize]) {
                    let same = bu == bv;
                    share_windows = Some(share_windows.unwrap_or(true) && same);
                }
                if inside[u as usize] && inside[v as usize] {
                    let listed = st.conflicts[v as usize].contains(&u);
                    conflict_ok = Some(conflict_ok.unwrap_or(true) && listed);
                }
            }
        }
    }

    let report = FinishReport {
        wz_ok,
        b_frozen,
        collisions_share_windows: share_windows,
        collisions_conflict: conflict_ok,
        interval_escapes: st.interval_escapes,
    };
    (h, report)
}
