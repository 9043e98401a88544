//! Mutable state threaded through the dense pipeline: the vertex
//! partition, the edge labels, and the quarter-unit edge weights.
//!
//! Weights live on a quarter grid throughout, stored as integers in
//! `0..=4`, so every conservation check is exact integer arithmetic; the
//! finishing stage is the only place rationals appear. Edges inside the
//! big side and between the sides only ever hold `0` or `4` quarters;
//! small-side internal edges move on the full grid.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

use super::params::{active_probability, removable_probability, PipelineParams};

/// Which side of the partition a vertex landed on. Block and slice
/// indices are 1-based to match the interval arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Big-side block `1..=b_blocks`.
    Big(u32),
    /// Small-side slice `1..=k`.
    Small(u32),
}

impl Side {
    /// True for small-side vertices.
    pub fn is_small(self) -> bool {
        matches!(self, Side::Small(_))
    }
}

/// Everything the pipeline stages read and write between the initial
/// draw and the finished subgraph.
#[derive(Debug, Clone)]
pub struct PipelineState {
    /// The shared constants of this run.
    pub params: PipelineParams,
    /// Uniform draw that placed each vertex.
    pub x: Vec<f64>,
    /// Side and block of each vertex.
    pub side: Vec<Side>,
    /// Per-edge active label; meaningful only on small-to-big edges.
    pub active: Vec<bool>,
    /// Per-edge removable label; meaningful only on small-to-big edges.
    pub removable: Vec<bool>,
    /// Per-edge weight in quarters, `0..=4`.
    pub quarters: Vec<i8>,
    /// Per-vertex total incident weight in quarters, kept in sync with
    /// `quarters` by every mutation.
    pub wq: Vec<i64>,
    /// Per-slice flag: the active probability for slice `i` (1-based)
    /// had to be clamped.
    pub active_clamped: Vec<bool>,
    /// Some removable probability had to be clamped.
    pub removable_clamped: bool,
    /// Big-side vertices whose equalization target was unreachable.
    pub target_misses: usize,
    /// Edges dropped while steering big-side weights to their targets.
    pub equalize_removed: usize,
    /// Vertices moved by the overflow rebalance, and those it gave up on.
    pub rebalance_moves: usize,
    /// Overflow moves that ran out of droppable edges.
    pub rebalance_misses: usize,
    /// Big-side weights frozen after equalization (quarters), for the
    /// no-later-change assertion.
    pub frozen_b: Vec<i64>,
    /// Whether the per-integer big-side weight cap held.
    pub b_cap_ok: bool,
    /// Chosen weight window base per vertex, in quarters: a window with
    /// base `b` spans quarters `12b ..= 12b + 11`, and the vertex is
    /// steered into `{12b, 12b + 1}`. `None` off the small side and for
    /// vertices no window fit.
    pub window: Vec<Option<i64>>,
    /// Conflict lists over small-side vertices; empty elsewhere.
    pub conflicts: Vec<Vec<u32>>,
    /// Small-side vertices whose reachable-weight progression was too
    /// short for the sharing guarantee (below 34 values).
    pub small_progressions: usize,
    /// Small-side vertices that could not be given any window at all.
    pub unwindowed: usize,
    /// Small-side vertices whose final weight left its expected
    /// interval; filled by the finishing pass.
    pub interval_escapes: usize,
}

impl PipelineState {
    /// Recompute one vertex's incident weight from scratch, in quarters.
    pub fn recount(&self, g: &Graph, v: u32) -> i64 {
        g.neighbors(v)
            .iter()
            .map(|&(_, e)| i64::from(self.quarters[e as usize]))
            .sum()
    }

    /// Set edge `e` to `q` quarters, keeping the per-vertex totals exact.
    pub fn set_edge(&mut self, g: &Graph, e: usize, q: i8) {
        debug_assert!((0..=4).contains(&q));
        let (u, v) = g.edge(e as u32);
        let dq = i64::from(q) - i64::from(self.quarters[e]);
        self.quarters[e] = q;
        self.wq[u as usize] += dq;
        self.wq[v as usize] += dq;
    }

    /// Indices of small-side vertices in ascending order.
    pub fn small_vertices(&self) -> Vec<u32> {
        (0..self.side.len() as u32)
            .filter(|&v| self.side[v as usize].is_small())
            .collect()
    }

    /// Exact integer conservation check: every per-vertex total matches a
    /// fresh recount, and twice the edge total matches the vertex total.
    pub fn conserved(&self, g: &Graph) -> bool {
        let vertex_total: i64 = self.wq.iter().sum();
        let edge_total: i64 = self.quarters.iter().map(|&q| i64::from(q)).sum();
        vertex_total == 2 * edge_total
            && (0..g.n() as u32).all(|v| self.recount(g, v) == self.wq[v as usize])
    }
}

/// Place a vertex from its uniform draw: big-side blocks carve up
/// `[0, (delta-s*)/delta)` in slabs of width `1/delta`, and the small
/// side splits the remainder into `k` equal slices, the last one closed
/// at 1.
pub fn place_vertex(p: &PipelineParams, x: f64) -> Side {
    let d = p.delta as f64;
    let b_frac = p.b_blocks as f64 / d;
    if x < b_frac {
        let i = ((x * d).floor() as usize + 1).min(p.b_blocks);
        Side::Big(i as u32)
    } else {
        let width = p.s_star as f64 / (d * p.k as f64);
        let j = (((x - b_frac) / width).floor() as usize + 1).min(p.k);
        Side::Small(j as u32)
    }
}

/// Draw the partition and the edge labels for one attempt.
///
/// Every edge consumes two draws whether or not it crosses between the
/// sides, so the stream a given seed produces does not depend on where
/// the vertices landed.
pub fn partition_and_label(g: &Graph, params: &PipelineParams, seed: u64) -> PipelineState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let side: Vec<Side> = x.iter().map(|&xv| place_vertex(params, xv)).collect();

    let mut active = vec![false; g.edge_count()];
    let mut removable = vec![false; g.edge_count()];
    let mut active_clamped = vec![false; params.k + 1];
    let mut removable_clamped = false;
    for e in 0..g.edge_count() {
        let (da, dr): (f64, f64) = (rng.random(), rng.random());
        let (u, v) = g.edge(e as u32);
        let (b, s) = match (side[u as usize], side[v as usize]) {
            (Side::Big(_), Side::Small(j)) => (u, j),
            (Side::Small(j), Side::Big(_)) => (v, j),
            _ => continue,
        };
        let (pa, ca) = active_probability(params, s as usize);
        let (pr, cr) = removable_probability(params, g.degree(b));
        active_clamped[s as usize] |= ca;
        removable_clamped |= cr;
        active[e] = da < pa;
        removable[e] = dr < pr;
    }

    PipelineState {
        params: params.clone(),
        x,
        side,
        active,
        removable,
        quarters: vec![0; g.edge_count()],
        wq: vec![0; n],
        active_clamped,
        removable_clamped,
        target_misses: 0,
        equalize_removed: 0,
        rebalance_moves: 0,
        rebalance_misses: 0,
        frozen_b: Vec::new(),
        b_cap_ok: true,
        window: vec![None; n],
        conflicts: vec![Vec::new(); n],
        small_progressions: 0,
        unwindowed: 0,
        interval_escapes: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::params::choose_parameters;
    use crate::generate::random_regular;

    #[test]
    fn placement_respects_the_slab_boundaries() {
        let p = choose_parameters(2000, 800, 0.24).unwrap();
        // b_blocks = 644, so the big side owns [0, 0.805).
        assert_eq!(place_vertex(&p, 0.0), Side::Big(1));
        assert_eq!(place_vertex(&p, 1.0 / 800.0 - 1e-12), Side::Big(1));
        assert_eq!(place_vertex(&p, 1.0 / 800.0), Side::Big(2));
        assert_eq!(place_vertex(&p, 0.805 - 1e-12), Side::Big(644));
        // The small side splits [0.805, 1] into k = 3 slices of width
        // 156/2400 = 0.065.
        assert_eq!(place_vertex(&p, 0.805), Side::Small(1));
        assert_eq!(place_vertex(&p, 0.805 + 0.065), Side::Small(2));
        assert_eq!(place_vertex(&p, 0.999), Side::Small(3));
        assert_eq!(place_vertex(&p, 1.0), Side::Small(3));
    }

    #[test]
    fn small_side_size_concentrates() {
        // |S| is binomial(n, s*/delta); stay within five standard
        // deviations so a seed change cannot plausibly break the test.
        let g = random_regular(400, 50, 7).unwrap();
        let p = choose_parameters(400, 50, 0.24).unwrap();
        assert_eq!(p.s_star, 22);
        let st = partition_and_label(&g, &p, 11);
        let small = st.small_vertices().len() as f64;
        let mean = 400.0 * 22.0 / 50.0;
        let sd = (400.0f64 * 0.44 * 0.56).sqrt();
        assert!((small - mean).abs() < 5.0 * sd, "|S| = {small} vs mean {mean}");
        assert!(st.conserved(&g));
    }

    #[test]
    fn labels_exist_only_on_crossing_edges() {
        let g = random_regular(200, 40, 3).unwrap();
        let p = choose_parameters(200, 40, 0.2).unwrap();
        let st = partition_and_label(&g, &p, 5);
        for e in 0..g.edge_count() {
            let (u, v) = g.edge(e as u32);
            let crossing =
                st.side[u as usize].is_small() != st.side[v as usize].is_small();
            if !crossing {
                assert!(!st.active[e] && !st.removable[e]);
            }
        }
    }

    #[test]
    fn edge_updates_keep_totals_in_sync() {
        let g = random_regular(30, 6, 1).unwrap();
        let p = choose_parameters(30, 6, 0.2).unwrap();
        let mut st = partition_and_label(&g, &p, 2);
        st.set_edge(&g, 0, 4);
        st.set_edge(&g, 5, 3);
        st.set_edge(&g, 5, 1);
        assert!(st.conserved(&g));
        let (u, v) = g.edge(0);
        assert_eq!(st.recount(&g, u), st.wq[u as usize]);
        assert_eq!(st.recount(&g, v), st.wq[v as usize]);
    }
}
