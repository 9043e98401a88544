//! Rounds fractional edge weights to 0/1 while every vertex sum moves by
//! less than one (reaching exactly +1 only through the half-weight odd
//! cycle case).
//!
//! All arithmetic is exact rational: whether a weight sits on a boundary is
//! an equality test, and floating point would corrupt it. The algorithm
//! runs in three phases over the *floating* edges (weights strictly inside
//! `(0,1)`):
//!
//! 1. While some floating component carries an even cycle or two distinct
//!    cycles, its edge incidence vectors are linearly dependent; shift the
//!    weights along an explicit dependence (alternating signs around
//!    cycles, connected through tree paths) until a weight hits 0 or 1.
//!    Every vertex sum is conserved exactly. Afterwards each floating
//!    component is a tree or carries exactly one, odd, cycle.
//! 2. While a component is neither a single edge nor a pure odd cycle, it
//!    has a leaf; shift along a leaf-to-leaf path (alternating signs) or a
//!    leaf-to-cycle lollipop (doubled signs on the path, single around the
//!    cycle). Every vertex with two or more floating edges keeps its sum
//!    exactly; only the leaf endpoints drift, and their drift is bounded
//!    by their single floating weight's remaining travel.
//! 3. What remains — single edges and odd cycles — rounds to the nearer of
//!    0 and 1, with exact halves rounding up.
//!
//! Each shift fixes at least one weight, so at most one pass per edge is
//! ever needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

use crate::graph::{Graph, SpanningSubgraph};

/// Checks weights: one per edge, each within `[0,1]`.
pub fn validate_weights(g: &Graph, z: &[BigRational]) {
    assert_eq!(z.len(), g.edge_count(), "one weight per edge");
    assert!(
        z.iter().all(|w| !w.is_negative() && *w <= BigRational::one()),
        "weights must lie in [0,1]"
    );
}

/// Rounds the weights and returns the subgraph of weight-1 edges. For every
/// vertex `v` the result satisfies
/// `sum z(e) - 1 < sum x(e) <= sum z(e) + 1` over the edges at `v`.
pub fn round_weights<'g>(g: &'g Graph, z: &[BigRational]) -> SpanningSubgraph<'g> {
    let mut state = RoundingState::new(g, z);
    state.cancel_dependences();
    state.drain_leaf_paths();
    state.round_remnants();
    state.into_subgraph()
}

/// Per-vertex audit of a rounding against its fractional input.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// `sum x - sum z` for each vertex.
    pub deviations: Vec<BigRational>,
    /// Vertices where the deviation leaves `(-1, +1]`.
    pub violations: Vec<u32>,
}

/// Compares a binary subgraph against fractional weights vertex by vertex.
pub fn verify_bound(g: &Graph, z: &[BigRational], h: &SpanningSubgraph) -> BoundReport {
    validate_weights(g, z);
    let mut deviations = vec![BigRational::zero(); g.n()];
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        let x = if h.contains(e) { BigRational::one() } else { BigRational::zero() };
        let delta = x - &z[e as usize];
        deviations[u as usize] += &delta;
        deviations[v as usize] += delta;
    }
    let one = BigRational::one();
    let violations = deviations
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > one || **d <= -one.clone())
        .map(|(v, _)| v as u32)
        .collect();
    BoundReport { deviations, violations }
}

/// Weights mid-rounding: each is either fixed at 0/1 or still floating
/// strictly inside `(0,1)`.
pub struct RoundingState<'g> {
    g: &'g Graph,
    x: Vec<BigRational>,
    fixed: Vec<bool>,
}

/// Spanning-forest snapshot of the floating subgraph.
struct Forest {
    /// BFS parent edge of each vertex (`u32::MAX` at roots/unreached).
    parent_edge: Vec<u32>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    /// Component id per vertex (`u32::MAX` where no floating edge).
    comp: Vec<u32>,
    /// Floating non-tree edges, grouped by component.
    chords: Vec<Vec<u32>>,
    /// Floating edge count per component.
    edge_count: Vec<usize>,
    /// Vertex count per component.
    vertex_count: Vec<usize>,
    /// One leaf (floating degree 1) per component, if any.
    leaf: Vec<Option<u32>>,
    /// A second, distinct leaf per component, if any.
    second_leaf: Vec<Option<u32>>,
}

impl<'g> RoundingState<'g> {
    /// Starts from the given weights; boundary values are fixed at once.
    pub fn new(g: &'g Graph, z: &[BigRational]) -> Self {
        validate_weights(g, z);
        let x: Vec<BigRational> = z.to_vec();
        let fixed = x.iter().map(|w| w.is_zero() || w.is_one()).collect();
        RoundingState { g, x, fixed }
    }

    /// Current weight of an edge.
    pub fn weight(&self, e: u32) -> &BigRational {
        &self.x[e as usize]
    }

    /// Edges still strictly between 0 and 1.
    pub fn floating_edges(&self) -> Vec<u32> {
        (0..self.g.edge_count() as u32).filter(|&e| !self.fixed[e as usize]).collect()
    }

    /// Exact current weight sum at a vertex.
    pub fn vertex_sum(&self, v: u32) -> BigRational {
        self.g
            .neighbors(v)
            .iter()
            .map(|&(_, e)| &self.x[e as usize])
            .fold(BigRational::zero(), |acc, w| acc + w)
    }

    /// Consumes the state; all weights must be fixed.
    pub fn into_subgraph(self) -> SpanningSubgraph<'g> {
        assert!(self.fixed.iter().all(|&f| f), "rounding incomplete");
        let bits: Vec<bool> = self.x.iter().map(|w| w.is_one()).collect();
        SpanningSubgraph::from_bits(self.g, &bits)
    }

    fn forest(&self) -> Forest {
        let n = self.g.n();
        let mut f = Forest {
            parent_edge: vec![u32::MAX; n],
            parent: vec![u32::MAX; n],
            depth: vec![0; n],
            comp: vec![u32::MAX; n],
            chords: Vec::new(),
            edge_count: Vec::new(),
            vertex_count: Vec::new(),
            leaf: Vec::new(),
            second_leaf: Vec::new(),
        };
        let mut float_degree = vec![0usize; n];
        for e in self.floating_edges() {
            let (u, v) = self.g.edge(e);
            float_degree[u as usize] += 1;
            float_degree[v as usize] += 1;
        }
        let mut tree_edge = vec![false; self.g.edge_count()];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n as u32 {
            if float_degree[start as usize] == 0 || f.comp[start as usize] != u32::MAX {
                continue;
            }
            let id = f.chords.len() as u32;
            f.chords.push(Vec::new());
            f.edge_count.push(0);
            f.vertex_count.push(0);
            f.leaf.push(None);
            f.second_leaf.push(None);
            f.comp[start as usize] = id;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                f.vertex_count[id as usize] += 1;
                if float_degree[v as usize] == 1 {
                    let slot =
                        if f.leaf[id as usize].is_none() { &mut f.leaf } else { &mut f.second_leaf };
                    if slot[id as usize].is_none() {
                        slot[id as usize] = Some(v);
                    }
                }
                for &(u, e) in self.g.neighbors(v) {
                    if self.fixed[e as usize] {
                        continue;
                    }
                    if f.comp[u as usize] == u32::MAX {
                        f.comp[u as usize] = id;
                        f.parent[u as usize] = v;
                        f.parent_edge[u as usize] = e;
                        f.depth[u as usize] = f.depth[v as usize] + 1;
                        tree_edge[e as usize] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        for e in self.floating_edges() {
            let (u, _) = self.g.edge(e);
            f.edge_count[f.comp[u as usize] as usize] += 1;
            if !tree_edge[e as usize] {
                f.chords[f.comp[u as usize] as usize].push(e);
            }
        }
        f
    }

    /// Tree path from `v` up to its ancestor `top`, as edge indices.
    fn path_up(&self, forest: &Forest, mut v: u32, top: u32) -> Vec<u32> {
        let mut edges = Vec::new();
        while v != top {
            edges.push(forest.parent_edge[v as usize]);
            v = forest.parent[v as usize];
        }
        edges
    }

    fn lca(&self, forest: &Forest, mut a: u32, mut b: u32) -> u32 {
        while forest.depth[a as usize] > forest.depth[b as usize] {
            a = forest.parent[a as usize];
        }
        while forest.depth[b as usize] > forest.depth[a as usize] {
            b = forest.parent[b as usize];
        }
        while a != b {
            a = forest.parent[a as usize];
            b = forest.parent[b as usize];
        }
        a
    }

    /// The cycle closed by a chord, as a walk: the chord `u-v`, the path
    /// `v -> lca`, then `lca -> u`. Returns (ordered edges, start vertex u).
    fn fundamental_cycle(&self, forest: &Forest, chord: u32) -> (Vec<u32>, u32) {
        let (u, v) = self.g.edge(chord);
        let top = self.lca(forest, u, v);
        let mut edges = vec![chord];
        edges.extend(self.path_up(forest, v, top));
        let mut up = self.path_up(forest, u, top);
        up.reverse();
        edges.extend(up);
        (edges, u)
    }

    /// Adds `sign * 2 * (-1)^i` on the `i`-th edge of a cyclic walk.
    /// For an even cycle every vertex cancels; for an odd one the start
    /// vertex is left with `2 * sign` and everything else cancels.
    fn add_alternating(coeffs: &mut HashMap<u32, i64>, edges: &[u32], sign: i64, weight: i64) {
        for (i, &e) in edges.iter().enumerate() {
            let c = if i % 2 == 0 { weight } else { -weight };
            *coeffs.entry(e).or_insert(0) += sign * c;
        }
    }

    /// A nonzero integer combination of floating incidence columns summing
    /// to zero at every vertex, supported inside one dependent component:
    /// an even fundamental cycle alone, or two odd ones linked by a tree
    /// path. None if every component is a tree or odd-unicyclic.
    fn dependence(&self, forest: &Forest) -> Option<HashMap<u32, i64>> {
        for id in 0..forest.chords.len() {
            let chords = &forest.chords[id];
            if chords.is_empty() {
                continue;
            }
            let mut odd: Vec<(Vec<u32>, u32)> = Vec::new();
            for &chord in chords {
                let (edges, start) = self.fundamental_cycle(forest, chord);
                if edges.len() % 2 == 0 {
                    let mut coeffs = HashMap::new();
                    Self::add_alternating(&mut coeffs, &edges, 1, 1);
                    return Some(coeffs);
                }
                odd.push((edges, start));
                if odd.len() == 2 {
                    break;
                }
            }
            if odd.len() < 2 {
                continue; // exactly one cycle, odd: independent columns
            }
            // Two odd cycles: each leaves defect +2 at its start; cancel
            // the defects through the tree path between the starts.
            let mut coeffs = HashMap::new();
            let (c1, r1) = &odd[0];
            let (c2, r2) = &odd[1];
            Self::add_alternating(&mut coeffs, c1, 1, 1);
            if r1 == r2 {
                Self::add_alternating(&mut coeffs, c2, -1, 1);
            } else {
                let top = self.lca(forest, *r1, *r2);
                let mut path = self.path_up(forest, *r1, top);
                let mut down = self.path_up(forest, *r2, top);
                down.reverse();
                path.extend(down);
                // Path coefficients alternate -2, +2, ... from r1; the far
                // end then shows -2 (odd length) or +2 (even), and the
                // second cycle's sign is chosen to cancel it.
                Self::add_alternating(&mut coeffs, &path, -1, 2);
                let end_coeff = if (path.len() - 1) % 2 == 0 { -2i64 } else { 2 };
                Self::add_alternating(&mut coeffs, c2, -end_coeff / 2, 1);
            }
            coeffs.retain(|_, c| *c != 0);
            debug_assert!(!coeffs.is_empty());
            return Some(coeffs);
        }
        None
    }

    /// Moves `x` along the direction until the first weight hits a
    /// boundary; smaller steps win, ties prefer the positive direction.
    /// Fixes at least one weight. `drifters` names the vertices allowed to
    /// change their sum (empty in phase 1).
    fn shift(&mut self, coeffs: &HashMap<u32, i64>, drifters: &[u32]) {
        debug_assert!(!coeffs.is_empty());
        let mut support: Vec<(u32, i64)> = coeffs.iter().map(|(&e, &c)| (e, c)).collect();
        support.sort_unstable();
        // Conservation is checked only on the vertices the shift touches;
        // everything else is untouched by construction.
        #[cfg(debug_assertions)]
        let sums_before: Vec<(u32, BigRational)> = {
            let mut touched: Vec<u32> = support
                .iter()
                .flat_map(|&(e, _)| {
                    let (u, v) = self.g.edge(e);
                    [u, v]
                })
                .collect();
            touched.sort_unstable();
            touched.dedup();
            touched.into_iter().map(|v| (v, self.vertex_sum(v))).collect()
        };
        let mut up: Option<BigRational> = None; // max step in + direction
        let mut down: Option<BigRational> = None;
        for &(e, c) in &support {
            debug_assert!(!self.fixed[e as usize]);
            let w = &self.x[e as usize];
            let scale = BigRational::from_integer(BigInt::from(c.abs()));
            let to_one = (BigRational::one() - w) / &scale;
            let to_zero = w / &scale;
            let (u_cap, d_cap) = if c > 0 { (to_one, to_zero) } else { (to_zero, to_one) };
            if up.as_ref().is_none_or(|cur| u_cap < *cur) {
                up = Some(u_cap);
            }
            if down.as_ref().is_none_or(|cur| d_cap < *cur) {
                down = Some(d_cap);
            }
        }
        let up = up.expect("nonempty support");
        let down = down.expect("nonempty support");
        let step = if up <= down { up } else { -down };
        debug_assert!(!step.is_zero(), "floating weights sit strictly inside (0,1)");
        let mut newly_fixed = 0;
        for &(e, c) in &support {
            let delta = &step * BigRational::from_integer(BigInt::from(c));
            let w = &self.x[e as usize] + delta;
            debug_assert!(!w.is_negative() && w <= BigRational::one());
            if w.is_zero() || w.is_one() {
                self.fixed[e as usize] = true;
                newly_fixed += 1;
            }
            self.x[e as usize] = w;
        }
        assert!(newly_fixed > 0, "every shift must fix a weight");
        #[cfg(debug_assertions)]
        for (v, before) in sums_before {
            if !drifters.contains(&v) {
                debug_assert_eq!(self.vertex_sum(v), before, "vertex {v} drifted");
            }
        }
        #[cfg(not(debug_assertions))]
        let _ = drifters;
    }

    /// Phase 1: cancel all linear dependences among floating incidence
    /// columns. Afterwards every floating component is a tree or contains
    /// exactly one cycle, which is odd; every vertex sum is unchanged.
    pub fn cancel_dependences(&mut self) {
        loop {
            let forest = self.forest();
            let Some(coeffs) = self.dependence(&forest) else {
                return;
            };
            self.shift(&coeffs, &[]);
        }
    }

    /// Phase 2: shrink trees and lollipops by leaf paths until only single
    /// edges and odd cycles float. Vertices with two or more floating
    /// edges keep their sums exactly.
    pub fn drain_leaf_paths(&mut self) {
        loop {
            let forest = self.forest();
            let mut acted = false;
            for id in 0..forest.edge_count.len() {
                let (m, n) = (forest.edge_count[id], forest.vertex_count[id]);
                if m == 1 {
                    continue; // single edge: phase 3
                }
                assert!(
                    forest.chords[id].len() <= 1,
                    "dependence survived phase 1; this contradicts the design"
                );
                let mut coeffs = HashMap::new();
                let drifters: Vec<u32>;
                if m == n - 1 {
                    // Tree with >= 2 edges: two leaves must exist.
                    let (Some(a), Some(b)) = (forest.leaf[id], forest.second_leaf[id]) else {
                        panic!("tree component without two leaves; this contradicts the design");
                    };
                    let top = self.lca(&forest, a, b);
                    let mut path = self.path_up(&forest, a, top);
                    let mut down = self.path_up(&forest, b, top);
                    down.reverse();
                    path.extend(down);
                    Self::add_alternating(&mut coeffs, &path, 1, 1);
                    drifters = vec![a, b];
                } else {
                    // Unicyclic (odd cycle). A pure cycle waits for phase
                    // 3; otherwise hang a doubled path from a leaf to the
                    // cycle and alternate singly around the cycle.
                    debug_assert_eq!(m, n);
                    let Some(leaf) = forest.leaf[id] else {
                        continue; // pure odd cycle
                    };
                    let chord = forest.chords[id][0];
                    let (cycle, _) = self.fundamental_cycle(&forest, chord);
                    let on_cycle = self.cycle_vertices(&cycle);
                    let (path, attach) = self.leaf_to_set_path(leaf, &on_cycle);
                    // Re-walk the cycle starting at the attachment vertex
                    // so its +2 defect lands exactly there.
                    let cycle = Self::rotate_cycle(self.g, &cycle, attach);
                    Self::add_alternating(&mut coeffs, &cycle, 1, 1);
                    Self::add_alternating(&mut coeffs, &path, -1, 2);
                    coeffs.retain(|_, c| *c != 0);
                    drifters = vec![leaf];
                }
                self.shift(&coeffs, &drifters);
                acted = true;
                break;
            }
            if !acted {
                return;
            }
        }
    }

    fn cycle_vertices(&self, cycle: &[u32]) -> Vec<bool> {
        let mut on = vec![false; self.g.n()];
        for &e in cycle {
            let (u, v) = self.g.edge(e);
            on[u as usize] = true;
            on[v as usize] = true;
        }
        on
    }

    /// BFS over floating edges from `leaf` to the first vertex marked in
    /// `target`; returns (path edges ordered from the target end to the
    /// leaf, the target vertex reached).
    fn leaf_to_set_path(&self, leaf: u32, target: &[bool]) -> (Vec<u32>, u32) {
        let mut prev: Vec<Option<(u32, u32)>> = vec![None; self.g.n()];
        let mut seen = vec![false; self.g.n()];
        seen[leaf as usize] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(leaf);
        while let Some(v) = queue.pop_front() {
            if target[v as usize] {
                let mut path = Vec::new();
                let mut at = v;
                while let Some((p, e)) = prev[at as usize] {
                    path.push(e);
                    at = p;
                }
                return (path, v);
            }
            for &(u, e) in self.g.neighbors(v) {
                if !self.fixed[e as usize] && !seen[u as usize] {
                    seen[u as usize] = true;
                    prev[u as usize] = Some((v, e));
                    queue.push_back(u);
                }
            }
        }
        panic!("leaf is disconnected from its own cycle; this contradicts the design");
    }

    /// Reorders a cyclic edge walk to start and end at `start`.
    fn rotate_cycle(g: &Graph, cycle: &[u32], start: u32) -> Vec<u32> {
        // Walk vertices: find the position whose step begins at `start`.
        let len = cycle.len();
        let mut verts = Vec::with_capacity(len);
        // Reconstruct the vertex sequence of the walk.
        let (a0, b0) = g.edge(cycle[0]);
        let (a1, b1) = g.edge(cycle[1]);
        let mut at = if a0 == a1 || a0 == b1 { b0 } else { a0 };
        for &e in cycle {
            verts.push(at);
            let (u, v) = g.edge(e);
            at = if u == at { v } else { u };
        }
        let pos = verts.iter().position(|&v| v == start).expect("start lies on the cycle");
        let mut rotated = Vec::with_capacity(len);
        rotated.extend_from_slice(&cycle[pos..]);
        rotated.extend_from_slice(&cycle[..pos]);
        rotated
    }

    /// Phase 3: round the remaining floating weights (single edges and odd
    /// cycles) to the nearer of 0 and 1; exactly 1/2 rounds to 1.
    pub fn round_remnants(&mut self) {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for e in self.floating_edges() {
            self.x[e as usize] = if self.x[e as usize] >= half {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            self.fixed[e as usize] = true;
        }
    }
}
