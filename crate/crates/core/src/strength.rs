//! Irregular edge weightings and the transfer from weighting strength to
//! low degree multiplicity.
//!
//! An irregular weighting assigns each edge an integer weight in `[1, s]`
//! so that all weighted vertex degrees are pairwise distinct; the least
//! such `s` is the weighting strength of the graph. Dividing every weight
//! by `s` yields fractional edge values in `[0, 1]` whose vertex sums are
//! distinct multiples of `1/s`, and rounding those to a subgraph keeps
//! each vertex within one of its fractional sum. A vertex of final degree
//! `k` therefore has weighted degree in a window of `2s` consecutive
//! integers, so at most `2s` vertices can share any degree — less on
//! bipartite hosts, where the rounding can be done exactly (the window
//! narrows to `2s-1` integers), and on regular hosts, where shifting all
//! weights down by one drops the effective strength first.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{Graph, SpanningSubgraph};
use crate::rounding;

/// Default cap on the strength searched for by [`irregularity_strength`].
pub const DEFAULT_STRENGTH_CAP: u32 = 6;

/// Largest edge count the exhaustive strength search accepts.
pub const STRENGTH_EDGE_CAP: usize = 12;

/// Errors from the strength search and the transfer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrengthError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph has {edges} edges, above the search cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("edge ({0}, {1}) is isolated")]
    IsolatedEdge(u32, u32),
    #[error("graph has {0} isolated vertices; at most one is allowed")]
    TooManyIsolatedVertices(usize),
    #[error("no irregular weighting with strength <= {cap}")]
    CapExceeded { cap: u32 },
    #[error("invalid weighting: {0}")]
    BadWeighting(&'static str),
    #[error("bipartite degree system was infeasible; this cannot happen for a valid weighting")]
    FlowInfeasible,
}

/// An edge weighting in `[1, s]` whose weighted vertex degrees are
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularWeighting {
    pub s: u32,
    /// Per-edge weights, indexed like the host's edge list.
    pub w: Vec<u32>,
}

impl IrregularWeighting {
    /// Weighted degree of every vertex.
    pub fn vertex_sums(&self, g: &Graph) -> Vec<u64> {
        let mut sums = vec![0u64; g.n()];
        for (e, &wt) in self.w.iter().enumerate() {
            let (u, v) = g.edge(e as u32);
            sums[u as usize] += wt as u64;
            sums[v as usize] += wt as u64;
        }
        sums
    }

    /// Checks shape, range, and pairwise distinctness of the sums.
    pub fn validate(&self, g: &Graph) -> Result<(), StrengthError> {
        if self.w.len() != g.edge_count() {
            return Err(StrengthError::BadWeighting("one weight per edge required"));
        }
        if self.s == 0 {
            return Err(StrengthError::BadWeighting("strength must be positive"));
        }
        if self.w.iter().any(|&wt| wt < 1 || wt > self.s) {
            return Err(StrengthError::BadWeighting("weights must lie in [1, s]"));
        }
        let mut sums = self.vertex_sums(g);
        sums.sort_unstable();
        if sums.windows(2).any(|p| p[0] == p[1]) {
            return Err(StrengthError::BadWeighting("weighted degrees must be distinct"));
        }
        Ok(())
    }
}

/// Finds the least `s <= cap` admitting an irregular weighting, by
/// backtracking over edge weights in increasing order with collision
/// pruning on finished vertices. Requires at most one isolated vertex, no
/// isolated edge, and at most [`STRENGTH_EDGE_CAP`] edges.
pub fn irregularity_strength(
    g: &Graph,
    cap: u32,
) -> Result<IrregularWeighting, StrengthError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(StrengthError::NoEdges);
    }
    if m > STRENGTH_EDGE_CAP {
        return Err(StrengthError::TooManyEdges { edges: m, cap: STRENGTH_EDGE_CAP });
    }
    let isolated = (0..g.n() as u32).filter(|&v| g.degree(v) == 0).count();
    if isolated > 1 {
        return Err(StrengthError::TooManyIsolatedVertices(isolated));
    }
    for e in 0..m as u32 {
        let (u, v) = g.edge(e);
        if g.degree(u) == 1 && g.degree(v) == 1 {
            return Err(StrengthError::IsolatedEdge(u, v));
        }
    }
    // Visit edges by (larger endpoint, smaller endpoint) so low-numbered
    // vertices finish early and prune collisions close to the root.
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edge(e);
        (v, u)
    });
    for s in 1..=cap {
        let mut search = StrengthSearch {
            g,
            order: &order,
            s,
            w: vec![0; m],
            remaining: (0..g.n() as u32).map(|v| g.degree(v) as u32).collect(),
            sums: vec![0; g.n()],
            taken: 0,
        };
        if search.assign(0) {
            let weighting = IrregularWeighting { s, w: search.w };
            debug_assert!(weighting.validate(g).is_ok());
            return Ok(weighting);
        }
    }
    Err(StrengthError::CapExceeded { cap })
}

struct StrengthSearch<'a> {
    g: &'a Graph,
    order: &'a [u32],
    s: u32,
    w: Vec<u32>,
    remaining: Vec<u32>,
    sums: Vec<u64>,
    /// Bitmask of weighted degrees already finished (sums fit in u128:
    /// at most 11 incident edges of weight at most 6).
    taken: u128,
}

impl StrengthSearch<'_> {
    fn assign(&mut self, pos: usize) -> bool {
        let Some(&e) = self.order.get(pos) else {
            return true;
        };
        let (u, v) = self.g.edge(e);
        for wt in 1..=self.s {
            self.w[e as usize] = wt;
            let mut ok = true;
            let mut finished: [Option<u32>; 2] = [None, None];
            for (slot, x) in [u, v].into_iter().enumerate() {
                self.sums[x as usize] += wt as u64;
                self.remaining[x as usize] -= 1;
                if self.remaining[x as usize] == 0 {
                    let bit = 1u128 << self.sums[x as usize];
                    if self.taken & bit != 0 {
                        ok = false;
                    } else {
                        self.taken |= bit;
                        finished[slot] = Some(x);
                    }
                }
            }
            if ok && self.assign(pos + 1) {
                return true;
            }
            for x in finished.into_iter().flatten() {
                self.taken &= !(1u128 << self.sums[x as usize]);
            }
            for x in [u, v] {
                self.sums[x as usize] -= wt as u64;
                self.remaining[x as usize] += 1;
            }
        }
        self.w[e as usize] = 0;
        false
    }
}

/// Which transfer was applied, by host shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferRoute {
    /// Fractional rounding of w/s; multiplicity at most 2s.
    General,
    /// Exact integral solve between the sides; at most 2s-1.
    Bipartite,
    /// Weights shifted down one, then rounded; at most 2s-2.
    Regular,
    /// Weights shifted down one, then solved exactly; at most 2s-3.
    RegularBipartite,
}

impl std::fmt::Display for TransferRoute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TransferRoute::General => "general",
            TransferRoute::Bipartite => "bipartite",
            TransferRoute::Regular => "regular",
            TransferRoute::RegularBipartite => "regular-bipartite",
        };
        f.write_str(name)
    }
}

/// Outcome of [`strength_to_subgraph`].
#[derive(Debug, Clone)]
pub struct StrengthTransfer<'g> {
    pub subgraph: SpanningSubgraph<'g>,
    pub route: TransferRoute,
    /// Strength of the weighting that was transferred.
    pub s: u32,
    /// The multiplicity bound guaranteed by the route.
    pub bound: u32,
    pub max_multiplicity: usize,
}

/// Converts an irregular weighting into a spanning subgraph whose maximum
/// degree multiplicity is bounded by the route-specific function of the
/// strength. Routes are chosen from the host's shape: regular hosts (with
/// `s >= 2`) first replace every `w(e)` by `w(e) - 1` and `s` by `s - 1`
/// (all weighted degrees shift by the common degree, so distinctness
/// survives); bipartite hosts solve the degree windows
/// `floor(sum/s) <= deg <= ceil(sum/s)` exactly by an integral flow.
pub fn strength_to_subgraph<'g>(
    g: &'g Graph,
    weighting: &IrregularWeighting,
) -> Result<StrengthTransfer<'g>, StrengthError> {
    weighting.validate(g)?;
    let s = weighting.s;
    let sides = g.bipartition();
    let shift = g.regular_degree().is_some() && s >= 2;
    let (weights, s_eff) = if shift {
        (weighting.w.iter().map(|&wt| wt - 1).collect::<Vec<u32>>(), s - 1)
    } else {
        (weighting.w.clone(), s)
    };
    let (route, bound) = match (shift, sides.is_some()) {
        (false, false) => (TransferRoute::General, 2 * s),
        (false, true) => (TransferRoute::Bipartite, 2 * s - 1),
        (true, false) => (TransferRoute::Regular, 2 * s - 2),
        (true, true) => (TransferRoute::RegularBipartite, 2 * s - 3),
    };
    let subgraph = match sides {
        Some(side) => bipartite_integral(g, &weights, s_eff, &side)?,
        None => {
            let z: Vec<BigRational> = weights
                .iter()
                .map(|&wt| BigRational::new(BigInt::from(wt), BigInt::from(s_eff)))
                .collect();
            rounding::round_weights(g, &z)
        }
    };
    let max_multiplicity = subgraph.degree_profile().max_multiplicity();
    Ok(StrengthTransfer { subgraph, route, s, bound, max_multiplicity })
}

/// Solves the bipartite degree-window system exactly: pick edges so every
/// vertex `v` ends with degree in `[floor(sum_v/s), ceil(sum_v/s)]`, where
/// `sum_v` is the weighted degree. The fractional solution `w/s` sits in
/// these windows, and on a bipartite host the system always has an
/// integral point, found here by a circulation with lower bounds.
fn bipartite_integral<'g>(
    g: &'g Graph,
    weights: &[u32],
    s: u32,
    side: &[u8],
) -> Result<SpanningSubgraph<'g>, StrengthError> {
    let n = g.n();
    let mut sums = vec![0u64; n];
    for (e, &wt) in weights.iter().enumerate() {
        let (u, v) = g.edge(e as u32);
        sums[u as usize] += wt as u64;
        sums[v as usize] += wt as u64;
    }
    let lo = |v: usize| (sums[v] / s as u64) as i64;
    let hi = |v: usize| sums[v].div_ceil(s as u64) as i64;
    // Nodes: vertices, the two side hubs, and the circulation terminals.
    let hub_l = n;
    let hub_r = n + 1;
    let circ_s = n + 2;
    let circ_t = n + 3;
    let mut flow = Flow::new(n + 4);
    let mut excess = vec![0i64; n + 4];
    let mut bounded = |flow: &mut Flow, a: usize, b: usize, l: i64, c: i64| {
        excess[b] += l;
        excess[a] -= l;
        if c > l {
            flow.add(a, b, c - l);
        }
    };
    for v in 0..n {
        if side[v] == 0 {
            bounded(&mut flow, hub_l, v, lo(v), hi(v));
        } else {
            bounded(&mut flow, v, hub_r, lo(v), hi(v));
        }
    }
    let mut edge_arcs = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        let (from, to) = if side[u as usize] == 0 { (u, v) } else { (v, u) };
        edge_arcs.push(flow.add(from as usize, to as usize, 1));
    }
    flow.add(hub_r, hub_l, i64::MAX / 4);
    let mut need = 0;
    for (node, &x) in excess.iter().enumerate() {
        match x.cmp(&0) {
            std::cmp::Ordering::Greater => {
                flow.add(circ_s, node, x);
                need += x;
            }
            std::cmp::Ordering::Less => {
                flow.add(node, circ_t, -x);
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    if flow.max_flow(circ_s, circ_t) < need {
        return Err(StrengthError::FlowInfeasible);
    }
    let bits: Vec<bool> = edge_arcs.iter().map(|&a| flow.cap[a] == 0).collect();
    let h = SpanningSubgraph::from_bits(g, &bits);
    for v in 0..n {
        let deg = h.degree(v as u32) as i64;
        assert!(
            lo(v) <= deg && deg <= hi(v),
            "flow left vertex {v} outside its window"
        );
    }
    Ok(h)
}

/// Plain Dinic max-flow on a small handmade network.
struct Flow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Adds a forward arc and its residual twin; returns the forward index.
    fn add(&mut self, a: usize, b: usize, c: i64) -> usize {
        let id = self.to.len();
        self.adj[a].push(id);
        self.to.push(b);
        self.cap.push(c);
        self.adj[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let u = self.to[e];
                if self.cap[e] > 0 && self.level[u] < 0 {
                    self.level[u] = self.level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, f: i64) -> i64 {
        if v == t {
            return f;
        }
        while self.iter[v] < self.adj[v].len() {
            let e = self.adj[v][self.iter[v]];
            let u = self.to[e];
            if self.cap[e] > 0 && self.level[u] == self.level[v] + 1 {
                let d = self.dfs(u, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, i64::MAX / 4);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}
