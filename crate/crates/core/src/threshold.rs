//! Randomized spanning subgraphs from uniform vertex weights, and the two
//! sampling pipelines built on them.
//!
//! The basic draw assigns every vertex an independent weight `x(v)` uniform
//! in `[0,1]` and keeps edge `uv` exactly when `x(u) + x(v) > 1`. For a
//! vertex of degree `d` each subgraph degree `0..=d` then occurs with
//! probability exactly `1/(d+1)`: conditioned on the neighbor weights, the
//! kept count is the rank of `1 - x(v)` among them, and all ranks are
//! equally likely.
//!
//! [`sample_balanced_regular`] resamples until a regular host's degree
//! profile is pointwise within a factor `1 ± eps` of the even split
//! `n/(d+1)`. [`sample_low_multiplicity`] handles hosts that are merely of
//! minimum degree `delta`: it first peels edges joining two above-minimum
//! vertices, splits vertices of very large degree into bounded-degree
//! copies, and then resamples until a tracked `n`-vertex set has every
//! degree count below `(1+eps)n/(delta+1)`; pulling the edges back yields
//! maximum multiplicity at most `(1+2eps)n/(delta+1)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{equitable_coloring, ColoringError};
use crate::graph::{Graph, SpanningSubgraph};

/// Default resampling budget for both pipelines.
pub const DEFAULT_RETRIES: u32 = 200;

/// Errors from the sampling pipelines.
#[derive(Debug, Error, PartialEq)]
pub enum ThresholdError {
    #[error("eps must lie strictly between 0 and 1/3, got {0}")]
    BadEpsilon(f64),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has an isolated vertex; minimum degree 1 is required")]
    MinDegreeZero,
    #[error("tracked vertex {0} has degree above the split cutoff")]
    TrackedVertexSplit(u32),
    #[error("coloring failed: {0}")]
    Coloring(#[from] ColoringError),
}

/// The per-vertex uniform weights behind one threshold draw.
#[derive(Debug, Clone)]
pub struct ThresholdAssignment {
    /// Weight of each vertex, in `[0,1]`.
    pub x: Vec<f64>,
    /// Seed the weights were drawn from (`u64::MAX` for explicit weights).
    pub seed: u64,
}

impl ThresholdAssignment {
    /// Draws `n` independent uniform weights from the seed.
    pub fn sample(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ThresholdAssignment { x: (0..n).map(|_| rng.random::<f64>()).collect(), seed }
    }

    /// Wraps explicit weights; panics unless all lie in `[0,1]`.
    pub fn from_weights(x: Vec<f64>) -> Self {
        assert!(x.iter().all(|&w| (0.0..=1.0).contains(&w)), "weights must lie in [0,1]");
        ThresholdAssignment { x, seed: u64::MAX }
    }

    /// The subgraph keeping each edge `uv` with `x(u) + x(v) > 1`.
    pub fn induce<'g>(&self, g: &'g Graph) -> SpanningSubgraph<'g> {
        assert_eq!(self.x.len(), g.n(), "one weight per vertex");
        let mut h = SpanningSubgraph::empty(g);
        for e in 0..g.edge_count() as u32 {
            let (u, v) = g.edge(e);
            if self.x[u as usize] + self.x[v as usize] > 1.0 {
                h.insert(e);
            }
        }
        h
    }
}

/// One seeded threshold draw over `g`.
pub fn threshold_subgraph(g: &Graph, seed: u64) -> SpanningSubgraph<'_> {
    ThresholdAssignment::sample(g.n(), seed).induce(g)
}

/// Repeatedly deletes edges whose endpoints both have degree above `delta`
/// (one pass suffices: deletions only shrink degrees, so no new deletable
/// edge ever appears). In the result every edge has an endpoint of degree
/// exactly `delta`, the minimum degree stays at least `delta`, and the
/// vertices of larger degree form an independent set.
pub fn peel_high_degree_edges(g: &Graph, delta: usize) -> Graph {
    peel_with_map(g, delta).0
}

/// The peel plus, for each surviving edge, its index in the input graph.
fn peel_with_map(g: &Graph, delta: usize) -> (Graph, Vec<u32>) {
    let mut degree = g.degrees();
    let mut kept = Vec::with_capacity(g.edge_count());
    let mut pairs = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        if degree[u as usize] as usize > delta && degree[v as usize] as usize > delta {
            degree[u as usize] -= 1;
            degree[v as usize] -= 1;
        } else {
            kept.push(e);
            pairs.push((u, v));
        }
    }
    let peeled = Graph::new(g.n(), &pairs).expect("subset of valid edges");
    (peeled, kept)
}

/// Witness that a graph was rebuilt with its high-degree vertices split
/// into bounded-degree copies.
#[derive(Debug, Clone)]
pub struct SplitCertificate {
    /// The graph that was split (already peeled by the caller).
    pub original: Graph,
    /// The rebuilt graph, same edges, split vertices.
    pub split: Graph,
    /// For each split-graph vertex, the original vertex it came from.
    pub vertex_map: Vec<u32>,
    /// For each split-graph edge index, the original edge index (the
    /// construction keeps edge order, so this is the identity).
    pub edge_map: Vec<u32>,
    /// Original vertices whose degree exceeded the cutoff and were split.
    pub split_vertices: Vec<u32>,
}

impl SplitCertificate {
    /// First copy of each original vertex in the split graph.
    pub fn first_copy(&self) -> Vec<u32> {
        let mut first = vec![u32::MAX; self.original.n()];
        for (sv, &ov) in self.vertex_map.iter().enumerate() {
            if first[ov as usize] == u32::MAX {
                first[ov as usize] = sv as u32;
            }
        }
        first
    }
}

/// Replaces every vertex of degree above `cap` by `floor(deg/delta)` copies,
/// partitioning its incident edges into chunks of sizes in `[delta,
/// 2*delta-1]` (greedy `delta`-chunks, short tail merged into the last).
/// Expects a peeled input of minimum degree at least `delta` and `cap >=
/// delta`; then the result has minimum degree `delta` and maximum degree at
/// most `cap`.
pub fn split_high_degree_vertices(g: &Graph, delta: usize, cap: usize) -> SplitCertificate {
    assert!(delta >= 1 && cap >= delta, "need 1 <= delta <= cap");
    let mut vertex_map: Vec<u32> = Vec::new();
    // Where each original vertex's copies begin, and how the incident edge
    // list is chunked: edge i of v goes to copy floor(i/delta), clamped to
    // the last copy.
    let mut base = vec![0u32; g.n()];
    let mut copies = vec![1usize; g.n()];
    let mut split_vertices = Vec::new();
    for v in 0..g.n() as u32 {
        let deg = g.degree(v) as usize;
        base[v as usize] = vertex_map.len() as u32;
        if deg > cap {
            split_vertices.push(v);
            copies[v as usize] = deg / delta;
        }
        for _ in 0..copies[v as usize] {
            vertex_map.push(v);
        }
    }
    // Assign each endpoint slot: the j-th incident edge of v (in adjacency
    // order) lands in copy min(j / delta, copies - 1).
    let mut seen = vec![0usize; g.n()];
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        let endpoint = |w: u32, seen: &mut Vec<usize>| {
            let j = seen[w as usize];
            seen[w as usize] = j + 1;
            let copy = (j / delta).min(copies[w as usize] - 1);
            base[w as usize] + copy as u32
        };
        pairs.push((endpoint(u, &mut seen), endpoint(v, &mut seen)));
    }
    let split = Graph::new(vertex_map.len(), &pairs)
        .expect("distinct original edges stay distinct across copies");
    let edge_map = (0..g.edge_count() as u32).collect();
    SplitCertificate { original: g.clone(), split, vertex_map, edge_map, split_vertices }
}

/// Governing inequality for the regular sampler:
/// `(d+1)(d^2+1) * 2 * exp(-eps^2 * floor(n/(d^2+1)) / (3(d+1)))`.
pub fn regular_condition(n: usize, d: usize, eps: f64) -> f64 {
    let classes = d * d + 1;
    let class_size = (n / classes) as f64;
    ((d + 1) * classes) as f64 * 2.0 * (-eps * eps * class_size / (3.0 * (d as f64 + 1.0))).exp()
}

/// Governing inequality for the minimum-degree sampler on a host of the
/// given maximum degree:
/// `(max_degree+1)(delta*max_degree+1) * exp(-eps^2 * floor(n/(delta*max_degree+1)) / (3(delta+1)))`.
pub fn min_degree_condition(n: usize, delta: usize, max_degree: usize, eps: f64) -> f64 {
    let classes = delta * max_degree + 1;
    let class_size = (n / classes) as f64;
    ((max_degree + 1) * classes) as f64
        * (-eps * eps * class_size / (3.0 * (delta as f64 + 1.0))).exp()
}

/// The same inequality with the max degree replaced by the split cutoff
/// `D = delta(delta+1)/eps` (kept real-valued):
/// `(D+1)(delta*D+1) * exp(-eps^2 * floor(n/(delta*D+1)) / (3(delta+1)))`.
pub fn split_condition(n: usize, delta: usize, eps: f64) -> f64 {
    let d = delta as f64 * (delta as f64 + 1.0) / eps;
    let classes = delta as f64 * d + 1.0;
    (d + 1.0) * classes
        * (-eps * eps * (n as f64 / classes).floor() / (3.0 * (delta as f64 + 1.0))).exp()
}

fn check_eps(eps: f64) -> Result<(), ThresholdError> {
    if eps > 0.0 && eps < 1.0 / 3.0 {
        Ok(())
    } else {
        Err(ThresholdError::BadEpsilon(eps))
    }
}

/// Outcome of the regular-host sampler.
#[derive(Debug, Clone)]
pub struct BalancedRegularRun<'g> {
    /// The best subgraph drawn (the first conforming one on success).
    pub subgraph: SpanningSubgraph<'g>,
    /// Whether every degree count came within the tolerance.
    pub succeeded: bool,
    /// Draws consumed.
    pub attempts: u32,
    /// Largest achieved `|count(k) - n/(d+1)|`.
    pub max_deviation: f64,
    /// The tolerance `eps * n/(d+1)` that was chased.
    pub target_deviation: f64,
    /// Value of the governing inequality's left side.
    pub condition_value: f64,
    /// Whether that value is below 1.
    pub condition_holds: bool,
    /// Classes used to color the distance-2 closure (`d^2 + 1`).
    pub classes: usize,
}

/// Resamples threshold subgraphs of a `d`-regular host until every degree
/// count `0..=d` lies within `eps * n/(d+1)` of `n/(d+1)`, or the budget is
/// spent (then the closest draw is returned with `succeeded = false`).
/// Deterministic in `(g, eps, seed)`.
pub fn sample_balanced_regular(
    g: &Graph,
    eps: f64,
    seed: u64,
    max_retries: u32,
) -> Result<BalancedRegularRun<'_>, ThresholdError> {
    check_eps(eps)?;
    let d = g.regular_degree().ok_or(ThresholdError::NotRegular)?;
    let classes = d * d + 1;
    // The balanced coloring of the distance-2 closure underlies the
    // concentration guarantee; building it also validates that it exists.
    let coloring = equitable_coloring(&g.distance_two_closure(), classes, seed)?;
    debug_assert_eq!(coloring.colors.len(), g.n());
    let even = g.n() as f64 / (d as f64 + 1.0);
    let target = eps * even;
    let condition_value = regular_condition(g.n(), d, eps);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, SpanningSubgraph)> = None;
    let mut attempts = 0;
    let mut succeeded = false;
    while attempts < max_retries {
        attempts += 1;
        let h = threshold_subgraph(g, rng.random());
        let profile = h.degree_profile();
        let dev = (0..=d)
            .map(|k| (profile.count(k) as f64 - even).abs())
            .fold(0.0f64, f64::max);
        if best.as_ref().is_none_or(|(b, _)| dev < *b) {
            best = Some((dev, h));
        }
        if dev <= target {
            succeeded = true;
            break;
        }
    }
    let (max_deviation, subgraph) = best.expect("at least one attempt");
    Ok(BalancedRegularRun {
        subgraph,
        succeeded,
        attempts,
        max_deviation,
        target_deviation: target,
        condition_value,
        condition_holds: condition_value < 1.0,
        classes,
    })
}

/// Outcome of the minimum-degree pipeline.
#[derive(Debug, Clone)]
pub struct LowMultiplicityRun<'g> {
    /// Subgraph of the original host, pulled back through peel and split.
    pub subgraph: SpanningSubgraph<'g>,
    /// Whether the tracked profile bound was met.
    pub succeeded: bool,
    /// Draws consumed.
    pub attempts: u32,
    /// Largest degree count over the tracked set in the returned draw.
    pub max_tracked_count: usize,
    /// The cap `(1+eps) * tracked/(delta+1)` the sampler chased.
    pub tracked_cap: f64,
    /// Maximum multiplicity of the returned subgraph.
    pub max_multiplicity: usize,
    /// The guarantee `(1+2eps) * n/(delta+1)` implied on success.
    pub multiplicity_bound: f64,
    /// Governing inequality evaluated on the graph actually sampled.
    pub condition_direct: f64,
    /// The same inequality with the worst-case split cutoff in place of the
    /// max degree.
    pub condition_split: f64,
    /// How many vertices were split.
    pub split_count: usize,
    /// Size of the tracked vertex set.
    pub tracked: usize,
    /// Classes used on the conflict graph (`delta * max_degree + 1`).
    pub classes: usize,
}

/// The minimum-degree pipeline: peel, split when the max degree exceeds
/// `D = delta(delta+1)/eps`, then resample threshold subgraphs until every
/// degree count over a tracked `n`-vertex set is at most
/// `(1+eps) n/(delta+1)`; edges map back to the original host. On success
/// the returned subgraph has maximum multiplicity at most
/// `(1+2eps) n/(delta+1)`.
///
/// `tracked` optionally names original vertices to track instead of the
/// default (every unsplit vertex plus one copy of each split one); they
/// must survive the split unsplit, and the profile cap then scales with
/// their number.
pub fn sample_low_multiplicity<'g>(
    g: &'g Graph,
    eps: f64,
    tracked: Option<&[u32]>,
    seed: u64,
    max_retries: u32,
) -> Result<LowMultiplicityRun<'g>, ThresholdError> {
    check_eps(eps)?;
    let delta = g.min_degree();
    if delta == 0 {
        return Err(ThresholdError::MinDegreeZero);
    }
    let cutoff = (delta as f64 * (delta as f64 + 1.0) / eps).floor() as usize;
    let (peeled, kept) = peel_with_map(g, delta);
    let cert = split_high_degree_vertices(&peeled, delta, cutoff);
    let work = &cert.split;
    let first_copy = cert.first_copy();

    // Tracked set: by default all unsplit vertices plus the first copy of
    // each split one — exactly n vertices of the working graph.
    let tracked_work: Vec<u32> = match tracked {
        Some(list) => {
            for &v in list {
                if cert.split_vertices.binary_search(&v).is_ok() {
                    return Err(ThresholdError::TrackedVertexSplit(v));
                }
            }
            list.iter().map(|&v| first_copy[v as usize]).collect()
        }
        None => (0..g.n() as u32).map(|v| first_copy[v as usize]).collect(),
    };

    let max_degree = work.max_degree();
    let classes = delta * max_degree + 1;
    let coloring = equitable_coloring(&work.distance_two_closure(), classes, seed)?;
    debug_assert_eq!(coloring.colors.len(), work.n());

    let cap = (1.0 + eps) * tracked_work.len() as f64 / (delta as f64 + 1.0);
    let condition_direct = min_degree_condition(work.n(), delta, max_degree, eps);
    let condition_split = split_condition(g.n(), delta, eps);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, SpanningSubgraph)> = None;
    let mut attempts = 0;
    let mut succeeded = false;
    while attempts < max_retries {
        attempts += 1;
        let h = threshold_subgraph(work, rng.random());
        let mut counts = vec![0usize; max_degree + 1];
        for &v in &tracked_work {
            counts[h.degree(v) as usize] += 1;
        }
        let worst = counts.into_iter().max().unwrap_or(0);
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, h));
        }
        if (worst as f64) <= cap {
            succeeded = true;
            break;
        }
    }
    let (max_tracked_count, h_work) = best.expect("at least one attempt");

    // Pull the draw back: split edge -> peeled edge (identity) -> original.
    let mut subgraph = SpanningSubgraph::empty(g);
    for se in h_work.selected_edges() {
        subgraph.insert(kept[cert.edge_map[se as usize] as usize]);
    }

    Ok(LowMultiplicityRun {
        max_multiplicity: subgraph.degree_profile().max_multiplicity(),
        subgraph,
        succeeded,
        attempts,
        max_tracked_count,
        tracked_cap: cap,
        multiplicity_bound: (1.0 + 2.0 * eps) * g.n() as f64 / (delta as f64 + 1.0),
        condition_direct,
        condition_split,
        split_count: cert.split_vertices.len(),
        tracked: tracked_work.len(),
        classes,
    })
}
