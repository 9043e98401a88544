//! Spanning subgraphs whose per-vertex degrees land in small prescribed
//! sets, and the two multiplicity-bounding constructions built on them.
//!
//! The primitive is a solver for degree sets of the shape
//! `S(v) = {a(v), a(v)+1, b(v), b(v)+1}` (valid when
//! `a <= floor(deg/2) <= b < deg`, `2b <= deg + a + 2`, and `b <= 2a+3`).
//! It first halves all degrees at once — alternate edges along an Euler
//! circuit (odd-degree vertices paired up by virtual edges), which puts
//! every degree within one of `deg/2` — and then walks alternating
//! add/remove paths to pull stragglers into their sets: the walk's interior
//! degrees are untouched, its far endpoint may only move closer to (or stay
//! in) its own set, and the near endpoint strictly improves, so the total
//! distance to the sets strictly falls with every repair.
//!
//! [`regular_split`] covers a `d`-regular host with `ceil(d/4)` interleaved
//! degree sets: no integer lies in more than two of them, so the best part
//! bound `2 * ceil(n / ceil(d/4))` follows. [`general_split`] sorts by
//! degree and works blockwise with the same effect, four sets deep.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, SpanningSubgraph};

/// Per-vertex degree-set prescription: vertex `v` may end with degree in
/// `{a[v], a[v]+1, b[v], b[v]+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpec {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl DegreeSpec {
    /// The allowed degrees of `v` (possibly with repeats when `b <= a+1`).
    pub fn allowed(&self, v: u32) -> [u32; 4] {
        let (a, b) = (self.a[v as usize], self.b[v as usize]);
        [a, a + 1, b, b + 1]
    }

    /// Whether `deg` is an allowed final degree for `v`.
    pub fn contains(&self, v: u32, deg: u32) -> bool {
        self.allowed(v).contains(&deg)
    }

    /// Distance from `deg` to the allowed set of `v`.
    fn dist(&self, v: u32, deg: u32) -> u32 {
        self.allowed(v).iter().map(|&s| s.abs_diff(deg)).min().expect("four candidates")
    }
}

/// One vertex's failed prescription inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecViolation {
    pub v: u32,
    /// Which inequality failed, in source form.
    pub rule: &'static str,
}

/// Checks the validity inequalities vertex by vertex; empty means valid.
pub fn validate_spec(g: &Graph, spec: &DegreeSpec) -> Vec<SpecViolation> {
    assert_eq!(spec.a.len(), g.n());
    assert_eq!(spec.b.len(), g.n());
    let mut out = Vec::new();
    for v in 0..g.n() as u32 {
        let deg = g.degree(v) as u32;
        let (a, b) = (spec.a[v as usize], spec.b[v as usize]);
        if !(a <= deg / 2) {
            out.push(SpecViolation { v, rule: "a <= floor(deg/2)" });
        }
        if !(deg / 2 <= b) {
            out.push(SpecViolation { v, rule: "floor(deg/2) <= b" });
        }
        if !(b < deg) {
            out.push(SpecViolation { v, rule: "b < deg" });
        }
        if !(2 * b <= deg + a + 2) {
            out.push(SpecViolation { v, rule: "2b <= deg + a + 2" });
        }
        if !(b <= 2 * a + 3) {
            out.push(SpecViolation { v, rule: "b <= 2a + 3" });
        }
    }
    out
}

/// Errors from the solver and the split constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("degree-set prescription is invalid at {0} vertices")]
    InvalidSpec(usize),
    #[error("repair budget exhausted with {unresolved} vertices off their sets")]
    BudgetExhausted { unresolved: usize },
    #[error("exhaustive search found no subgraph meeting the prescription")]
    Infeasible,
}

/// Default repair budget used by the split constructions.
pub fn default_budget(g: &Graph) -> u32 {
    16 * g.n() as u32 + 512
}

const RESTARTS: u32 = 6;

/// Finds a spanning subgraph with every degree in its prescribed set.
/// Deterministic in `(g, spec, seed)`. `budget` caps the total number of
/// repair walks across restarts; small instances (≤ 20 edges) fall back to
/// exhaustive search before giving up.
pub fn solve_degree_set<'g>(
    g: &'g Graph,
    spec: &DegreeSpec,
    seed: u64,
    budget: u32,
) -> Result<SpanningSubgraph<'g>, IntervalError> {
    let violations = validate_spec(g, spec);
    if !violations.is_empty() {
        return Err(IntervalError::InvalidSpec(violations.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut walks_left = budget;
    let mut best_unresolved = usize::MAX;
    for _ in 0..RESTARTS {
        // Shuffled adjacency drives both the Euler start and the walk
        // search, so restarts genuinely explore different repairs.
        let mut adj: Vec<Vec<(u32, u32)>> =
            (0..g.n() as u32).map(|v| g.neighbors(v).to_vec()).collect();
        for list in &mut adj {
            list.shuffle(&mut rng);
        }
        let mut h = euler_halving(g, &adj);
        let unresolved = repair(g, spec, &adj, &mut h, &mut rng, &mut walks_left);
        if unresolved == 0 {
            debug_assert!((0..g.n() as u32).all(|v| spec.contains(v, h.degree(v))));
            return Ok(h);
        }
        best_unresolved = best_unresolved.min(unresolved);
        if walks_left == 0 {
            break;
        }
    }
    if g.edge_count() <= 20 {
        return exhaustive(g, spec);
    }
    Err(IntervalError::BudgetExhausted { unresolved: best_unresolved })
}

/// Halve all degrees at once: pair odd-degree vertices within each
/// component by virtual edges, walk an Euler circuit of the augmented
/// multigraph, and keep every other real edge. Each degree lands within
/// one of `deg/2` (exactly `floor`/`ceil` except at the start of an
/// odd-length circuit, where it may slip by one more).
fn euler_halving<'g>(g: &'g Graph, adj: &[Vec<(u32, u32)>]) -> SpanningSubgraph<'g> {
    let n = g.n();
    let real = g.edge_count() as u32;
    // Multigraph slots: (neighbor, edge id), ids >= `real` are virtual.
    let mut slots: Vec<Vec<(u32, u32)>> = adj.to_vec();
    let mut comp = vec![u32::MAX; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut virtual_id = real;
    for start in 0..n as u32 {
        if comp[start as usize] != u32::MAX {
            continue;
        }
        comp[start as usize] = start;
        order.push(start);
        let mut stack = vec![start];
        let mut odd: Vec<u32> = Vec::new();
        while let Some(v) = stack.pop() {
            if g.degree(v) % 2 == 1 {
                odd.push(v);
            }
            for &(u, _) in g.neighbors(v) {
                if comp[u as usize] == u32::MAX {
                    comp[u as usize] = start;
                    stack.push(u);
                }
            }
        }
        // Odd-degree vertices come in pairs within a component.
        for pair in odd.chunks_exact(2) {
            slots[pair[0] as usize].push((pair[1], virtual_id));
            slots[pair[1] as usize].push((pair[0], virtual_id));
            virtual_id += 1;
        }
    }
    // Edge-used flags, indexed real ids directly and virtual ids hashed.
    let mut used_real = vec![false; real as usize];
    let mut used_virtual = std::collections::HashSet::new();
    let mut h = SpanningSubgraph::empty(g);
    let mut cursor = vec![0usize; n];
    for &start in &order {
        // Hierholzer over this component, then alternate selection.
        let mut stack: Vec<(u32, Option<u32>)> = vec![(start, None)];
        let mut walk: Vec<u32> = Vec::new(); // edge ids in circuit order
        while let Some(&(v, via)) = stack.last() {
            let list = &slots[v as usize];
            let mut advanced = false;
            while cursor[v as usize] < list.len() {
                let (u, id) = list[cursor[v as usize]];
                cursor[v as usize] += 1;
                let used = if id < real {
                    used_real[id as usize]
                } else {
                    used_virtual.contains(&id)
                };
                if used {
                    continue;
                }
                if id < real {
                    used_real[id as usize] = true;
                } else {
                    used_virtual.insert(id);
                }
                stack.push((u, Some(id)));
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
                if let Some(id) = via {
                    walk.push(id);
                }
            }
        }
        for (i, &id) in walk.iter().enumerate() {
            if i % 2 == 0 && id < real {
                h.insert(id);
            }
        }
    }
    h
}

/// Pulls every off-set degree toward its set by alternating walks; returns
/// the number of vertices still off their sets when the budget or the
/// search gives out.
fn repair(
    g: &Graph,
    spec: &DegreeSpec,
    adj: &[Vec<(u32, u32)>],
    h: &mut SpanningSubgraph,
    rng: &mut ChaCha8Rng,
    walks_left: &mut u32,
) -> usize {
    loop {
        let worst = (0..g.n() as u32)
            .map(|v| (spec.dist(v, h.degree(v)), v))
            .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
        let Some((dist, v)) = worst else {
            return 0;
        };
        if dist == 0 {
            return 0;
        }
        if *walks_left == 0 {
            break;
        }
        *walks_left -= 1;
        // Move toward the nearer side of the set; break exact ties randomly
        // so restarts explore both directions.
        let deg = h.degree(v);
        let up_dist = spec.allowed(v).iter().map(|&s| s.abs_diff(deg + 1)).min().unwrap();
        let down_dist = if deg == 0 {
            u32::MAX
        } else {
            spec.allowed(v).iter().map(|&s| s.abs_diff(deg - 1)).min().unwrap()
        };
        let go_up = match up_dist.cmp(&down_dist) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => rng.random_bool(0.5),
        };
        if !alternating_walk(g, spec, adj, h, v, go_up) {
            // Try the other direction before declaring this restart stuck.
            if !alternating_walk(g, spec, adj, h, v, !go_up) {
                break;
            }
        }
    }
    (0..g.n() as u32).filter(|&v| spec.dist(v, h.degree(v)) > 0).count()
}

/// Searches (BFS, shortest first) for an alternating add/remove walk that
/// starts at `v` — first step adds an incident edge if `grow`, removes one
/// otherwise — and ends at a vertex whose distance to its own set does not
/// grow under the final ±1. Interior degrees cancel exactly. Applies the
/// walk and returns true on success.
fn alternating_walk(
    g: &Graph,
    spec: &DegreeSpec,
    adj: &[Vec<(u32, u32)>],
    h: &mut SpanningSubgraph,
    v: u32,
    grow: bool,
) -> bool {
    // State: (vertex, arrived-by-add); `prev` remembers (state, edge).
    let idx = |u: u32, add: bool| (u as usize) << 1 | add as usize;
    let mut prev: Vec<Option<(u32, bool, u32)>> = vec![None; 2 * g.n()];
    let mut seen = vec![false; 2 * g.n()];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((v, !grow)); // pretend-state whose next step matches
    seen[idx(v, !grow)] = true;
    let start_state = (v, !grow);
    while let Some((u, arrived_add)) = queue.pop_front() {
        let next_add = !arrived_add;
        for &(w, e) in &adj[u as usize] {
            if h.contains(e) == next_add {
                continue; // add wants absent edges, remove wants present
            }
            let state = idx(w, next_add);
            if seen[state] {
                continue;
            }
            seen[state] = true;
            prev[state] = Some((u, arrived_add, e));
            // May the walk stop here? The final step changes w by +1 (add)
            // or -1 (remove); its set distance must not grow, and the walk
            // must not be the degenerate closed one ending where it began.
            let deg = h.degree(w);
            let ok = if next_add {
                w != v && spec.dist(w, deg + 1) <= spec.dist(w, deg)
            } else {
                w != v && deg > 0 && spec.dist(w, deg - 1) <= spec.dist(w, deg)
            };
            if ok {
                if let Some(walk) = reconstruct(&prev, start_state, (w, next_add)) {
                    apply_walk(h, &walk);
                    return true;
                }
                // A repeated edge invalidates this endpoint; keep searching.
            }
            queue.push_back((w, next_add));
        }
    }
    false
}

/// Walks `prev` back to the start, returning (edge, insert?) steps in
/// application order, or None if an edge repeats.
fn reconstruct(
    prev: &[Option<(u32, bool, u32)>],
    start: (u32, bool),
    end: (u32, bool),
) -> Option<Vec<(u32, bool)>> {
    let mut steps = Vec::new();
    let mut at = end;
    while at != start {
        let (pv, p_add, e) = prev[(at.0 as usize) << 1 | at.1 as usize]?;
        steps.push((e, at.1));
        at = (pv, p_add);
    }
    let mut ids: Vec<u32> = steps.iter().map(|&(e, _)| e).collect();
    ids.sort_unstable();
    ids.windows(2).all(|w| w[0] != w[1]).then(|| {
        steps.reverse();
        steps
    })
}

fn apply_walk(h: &mut SpanningSubgraph, walk: &[(u32, bool)]) {
    for &(e, insert) in walk {
        if insert {
            debug_assert!(!h.contains(e));
            h.insert(e);
        } else {
            debug_assert!(h.contains(e));
            h.remove(e);
        }
    }
}

/// Exhaustive fallback for tiny graphs: first subgraph meeting the
/// prescription.
fn exhaustive<'g>(g: &'g Graph, spec: &DegreeSpec) -> Result<SpanningSubgraph<'g>, IntervalError> {
    let m = g.edge_count();
    assert!(m <= 20);
    for mask in 0u32..(1u32 << m) {
        let mut degrees = vec![0u32; g.n()];
        for e in 0..m as u32 {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edge(e);
                degrees[u as usize] += 1;
                degrees[v as usize] += 1;
            }
        }
        if (0..g.n() as u32).all(|v| spec.contains(v, degrees[v as usize])) {
            let bits: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
            return Ok(SpanningSubgraph::from_bits(g, &bits));
        }
    }
    Err(IntervalError::Infeasible)
}

/// Outcome of a split construction.
#[derive(Debug, Clone)]
pub struct SplitRun<'g> {
    pub subgraph: SpanningSubgraph<'g>,
    /// True when the degree regime made the host itself good enough.
    pub trivial: bool,
    /// The prescription that was solved (empty in the trivial regime).
    pub spec: Option<DegreeSpec>,
    /// Number of parts / block width used.
    pub parts: usize,
    /// Count bound from the part sizes (`n` in the trivial regime).
    pub part_bound: usize,
    /// The asymptotic form of the bound.
    pub asymptotic_bound: f64,
    /// Measured maximum multiplicity of the returned subgraph.
    pub max_multiplicity: usize,
}

/// For a `d`-regular host with `d > 8`: split vertices into `k = ceil(d/4)`
/// index-contiguous parts of size at most `ceil(n/k)` and prescribe part
/// `i` (1-based) the set built from `a = ceil(d/2) - i`,
/// `b = ceil(d/2) + k - i`. No integer lies in more than two of the sets,
/// so the result has maximum multiplicity at most `2*ceil(n/k)`, which is
/// below `8n/d + 2`. For `d <= 8` the host itself is returned (its own
/// multiplicity is within the trivial bound).
pub fn regular_split(g: &Graph, seed: u64) -> Result<SplitRun<'_>, IntervalError> {
    let d = g.regular_degree().ok_or(IntervalError::NotRegular)?;
    let n = g.n();
    if d <= 8 {
        let subgraph = SpanningSubgraph::full(g);
        return Ok(SplitRun {
            max_multiplicity: subgraph.degree_profile().max_multiplicity(),
            subgraph,
            trivial: true,
            spec: None,
            parts: 1,
            part_bound: n,
            asymptotic_bound: if d == 0 { n as f64 } else { 8.0 * n as f64 / d as f64 + 2.0 },
        });
    }
    let k = d.div_ceil(4);
    let chunk = n.div_ceil(k);
    let half = d.div_ceil(2) as u32;
    let mut spec = DegreeSpec { a: vec![0; n], b: vec![0; n] };
    for v in 0..n {
        let part = (v / chunk + 1) as u32; // 1-based part index
        spec.a[v] = half - part;
        spec.b[v] = half + k as u32 - part;
    }
    assert_overlap(&spec, 2);
    let subgraph = solve_degree_set(g, &spec, seed, default_budget(g))?;
    let max_multiplicity = subgraph.degree_profile().max_multiplicity();
    let part_bound = 2 * chunk;
    debug_assert!(max_multiplicity <= part_bound);
    Ok(SplitRun {
        subgraph,
        trivial: false,
        spec: Some(spec),
        parts: k,
        part_bound,
        asymptotic_bound: 8.0 * n as f64 / d as f64 + 2.0,
        max_multiplicity,
    })
}

/// For a host of minimum degree `delta > 16`: sort vertices by
/// nonincreasing degree (ties by index), cut into blocks of
/// `k = ceil(delta/4)` consecutive vertices, and prescribe the `j`-th
/// vertex of each block (degree `f`, 1-based `j`) the set built from
/// `a = ceil(f/2) - j`, `b = ceil(f/2) + k - j`. Within a block all four
/// set-defining sequences strictly decrease, so an integer lies in at most
/// four sets per block and the multiplicity is at most `4*ceil(n/k)`,
/// which is below `16n/delta + 4`. For `delta <= 16` the host itself is
/// returned.
pub fn general_split(g: &Graph, seed: u64) -> Result<SplitRun<'_>, IntervalError> {
    let delta = g.min_degree();
    let n = g.n();
    if delta <= 16 {
        let subgraph = SpanningSubgraph::full(g);
        return Ok(SplitRun {
            max_multiplicity: subgraph.degree_profile().max_multiplicity(),
            subgraph,
            trivial: true,
            spec: None,
            parts: 1,
            part_bound: n,
            asymptotic_bound: if delta == 0 {
                n as f64
            } else {
                16.0 * n as f64 / delta as f64 + 4.0
            },
        });
    }
    let k = delta.div_ceil(4);
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut spec = DegreeSpec { a: vec![0; n], b: vec![0; n] };
    for block in order.chunks(k) {
        let degrees: Vec<usize> = block.iter().map(|&v| g.degree(v)).collect();
        for (&v, (a, b)) in block.iter().zip(block_targets(&degrees, k)) {
            spec.a[v as usize] = a;
            spec.b[v as usize] = b;
        }
        block_overlap_check(&degrees, k);
    }
    let subgraph = solve_degree_set(g, &spec, seed, default_budget(g))?;
    let max_multiplicity = subgraph.degree_profile().max_multiplicity();
    let blocks = n.div_ceil(k);
    let part_bound = 4 * blocks;
    debug_assert!(max_multiplicity <= part_bound);
    Ok(SplitRun {
        subgraph,
        trivial: false,
        spec: Some(spec),
        parts: k,
        part_bound,
        asymptotic_bound: 16.0 * n as f64 / delta as f64 + 4.0,
        max_multiplicity,
    })
}

/// Per-block prescriptions: the `j`-th vertex (1-based) of a block with
/// nonincreasing degrees `f` gets `a = ceil(f_j/2) - j`,
/// `b = ceil(f_j/2) + k - j`.
fn block_targets(f: &[usize], k: usize) -> impl Iterator<Item = (u32, u32)> + '_ {
    f.iter().enumerate().map(move |(i, &deg)| {
        let j = (i + 1) as u32;
        let half = deg.div_ceil(2) as u32;
        (half - j, half + k as u32 - j)
    })
}

/// The four sequences a_j, a_j+1, b_j, b_j+1 must each strictly decrease
/// down a block, which is what caps set overlap at four.
fn block_overlap_check(f: &[usize], k: usize) {
    let targets: Vec<(u32, u32)> = block_targets(f, k).collect();
    for w in targets.windows(2) {
        assert!(w[0].0 > w[1].0 && w[0].1 > w[1].1, "block sequences must strictly decrease");
    }
}

/// Sweeps all integers covered by the prescription and asserts none lies
/// in more than `cap` distinct (a,b)-sets.
fn assert_overlap(spec: &DegreeSpec, cap: usize) {
    let mut sets: Vec<(u32, u32)> = spec.a.iter().zip(&spec.b).map(|(&a, &b)| (a, b)).collect();
    sets.sort_unstable();
    sets.dedup();
    let hi = sets.iter().map(|&(_, b)| b + 1).max().unwrap_or(0);
    for t in 0..=hi {
        let hit = sets
            .iter()
            .filter(|&&(a, b)| t == a || t == a + 1 || t == b || t == b + 1)
            .count();
        assert!(hit <= cap, "integer {t} lies in {hit} sets");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn validity_examples() {
        // Single-vertex-degree shapes, checked through tiny hosts.
        let star7 = generate::star(7).unwrap(); // center degree 7
        let mut spec = DegreeSpec { a: vec![3; 8], b: vec![3; 8] };
        // Leaves have degree 1; give them a harmless (0,0) prescription.
        for v in 1..8 {
            spec.a[v] = 0;
            spec.b[v] = 0;
        }
        let center_bad: Vec<_> =
            validate_spec(&star7, &spec).into_iter().filter(|viol| viol.v == 0).collect();
        assert!(center_bad.is_empty(), "{center_bad:?}");
        // deg=4 with a=0: b=3 sits exactly on both slack inequalities.
        let c4 = generate::cycle(4).unwrap();
        let g4 = c4.distance_two_closure(); // K4: every degree is 3
        let ok = DegreeSpec { a: vec![0; 4], b: vec![2; 4] };
        assert!(validate_spec(&g4, &ok).is_empty());
        // b = deg breaks both "b < deg" and the averaged slack inequality.
        let bad = DegreeSpec { a: vec![0; 4], b: vec![3; 4] };
        let viols = validate_spec(&g4, &bad);
        assert_eq!(viols.len(), 8);
        assert!(viols.iter().any(|v| v.rule == "b < deg"));
        assert!(viols.iter().any(|v| v.rule == "2b <= deg + a + 2"));
    }

    #[test]
    fn solver_trivial_cases() {
        // C4 with S = {0,1,2}: anything qualifies, including what the
        // halving phase returns directly.
        let c4 = generate::cycle(4).unwrap();
        let spec = DegreeSpec { a: vec![0; 4], b: vec![1; 4] };
        let h = solve_degree_set(&c4, &spec, 0, 64).unwrap();
        for v in 0..4 {
            assert!(spec.contains(v, h.degree(v)));
        }
        // C4 with S = {1,2}: the full host qualifies and so must whatever
        // the solver returns.
        let spec = DegreeSpec { a: vec![1; 4], b: vec![1; 4] };
        let h = solve_degree_set(&c4, &spec, 0, 64).unwrap();
        for v in 0..4 {
            assert!(spec.contains(v, h.degree(v)));
        }
    }

    #[test]
    fn solver_matches_exhaustive_existence_on_k4() {
        let k4 = generate::complete(4).unwrap();
        let spec = DegreeSpec { a: vec![1; 4], b: vec![1; 4] };
        // Independent existence check: scan all 64 subsets directly.
        let mut exists = false;
        'outer: for mask in 0u32..64 {
            let mut deg = [0u32; 4];
            for e in 0..6 {
                if mask >> e & 1 == 1 {
                    let (u, v) = k4.edge(e);
                    deg[u as usize] += 1;
                    deg[v as usize] += 1;
                }
            }
            if deg.iter().all(|&d| d == 1 || d == 2) {
                exists = true;
                break 'outer;
            }
        }
        assert!(exists);
        let h = solve_degree_set(&k4, &spec, 1, 64).unwrap();
        for v in 0..4 {
            assert!(spec.contains(v, h.degree(v)), "degree {}", h.degree(v));
        }
    }

    #[test]
    fn solver_repairs_gap_degrees() {
        // 8-regular host with S = {2,3,6,7}: the halving phase lands every
        // vertex on 4, squarely in the gap, forcing repairs.
        let g = generate::random_regular(16, 8, 3).unwrap();
        let spec = DegreeSpec { a: vec![2; 16], b: vec![6; 16] };
        assert!(validate_spec(&g, &spec).is_empty());
        let h = solve_degree_set(&g, &spec, 5, default_budget(&g)).unwrap();
        for v in 0..16 {
            assert!(spec.contains(v, h.degree(v)), "vertex {v} degree {}", h.degree(v));
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let g = generate::random_regular(20, 10, 8).unwrap();
        let spec = DegreeSpec { a: vec![2; 20], b: vec![7; 20] };
        let a = solve_degree_set(&g, &spec, 9, default_budget(&g)).unwrap();
        let b = solve_degree_set(&g, &spec, 9, default_budget(&g)).unwrap();
        assert_eq!(a.selected_edges(), b.selected_edges());
    }

    #[test]
    fn twelve_regular_prescriptions() {
        // d = 12: k = 3, parts get (a, b) = (5, 8), (4, 7), (3, 6), i.e.
        // sets {5,6,8,9}, {4,5,7,8}, {3,4,6,7}.
        let g = generate::random_regular(30, 12, 17).unwrap();
        let run = regular_split(&g, 2).unwrap();
        assert!(!run.trivial);
        assert_eq!(run.parts, 3);
        let spec = run.spec.as_ref().unwrap();
        let chunk = 10; // ceil(30/3)
        assert_eq!((spec.a[0], spec.b[0]), (5, 8));
        assert_eq!((spec.a[chunk], spec.b[chunk]), (4, 7));
        assert_eq!((spec.a[2 * chunk], spec.b[2 * chunk]), (3, 6));
        // Membership and the part bound.
        for v in 0..30u32 {
            assert!(spec.contains(v, run.subgraph.degree(v)));
        }
        assert!(run.max_multiplicity <= run.part_bound);
        assert_eq!(run.part_bound, 20);
        assert!((run.asymptotic_bound - (8.0 * 30.0 / 12.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn low_degree_regular_hosts_are_trivial() {
        let g = generate::random_regular(12, 8, 1).unwrap();
        let run = regular_split(&g, 0).unwrap();
        assert!(run.trivial);
        assert_eq!(run.subgraph.edge_count(), g.edge_count());
        assert!(regular_split(&generate::path(5).unwrap(), 0).is_err());
    }

    #[test]
    fn ten_regular_split_meets_the_asymptotic_bound() {
        let g = generate::random_regular(60, 10, 4).unwrap();
        let run = regular_split(&g, 11).unwrap();
        // k = 3, chunk = 20: bound 40 <= 8*60/10 + 2 = 50.
        assert_eq!(run.part_bound, 40);
        assert!(run.max_multiplicity <= run.part_bound);
        assert!((run.max_multiplicity as f64) < run.asymptotic_bound);
    }

    #[test]
    fn block_target_formula() {
        // Degrees (20,20,18,18,17) with k = 5 in one block.
        let targets: Vec<(u32, u32)> = block_targets(&[20, 20, 18, 18, 17], 5).collect();
        let a: Vec<u32> = targets.iter().map(|&(a, _)| a).collect();
        let b: Vec<u32> = targets.iter().map(|&(_, b)| b).collect();
        assert_eq!(a, vec![9, 8, 6, 5, 4]);
        assert_eq!(b, vec![14, 13, 11, 10, 9]);
        block_overlap_check(&[20, 20, 18, 18, 17], 5);
        // Equal degrees: a decreases by exactly 1 down the block.
        let eq: Vec<u32> = block_targets(&[20; 5], 5).map(|(a, _)| a).collect();
        assert_eq!(eq, vec![9, 8, 7, 6, 5]);
    }

    #[test]
    fn general_split_on_a_min_degree_host() {
        let g = generate::er_min_degree(80, 20, 6).unwrap();
        let run = general_split(&g, 13).unwrap();
        assert!(!run.trivial);
        let spec = run.spec.as_ref().unwrap();
        for v in 0..80u32 {
            assert!(spec.contains(v, run.subgraph.degree(v)), "vertex {v}");
        }
        assert!(run.max_multiplicity <= run.part_bound);
        assert!(run.part_bound as f64 <= run.asymptotic_bound);
    }

    #[test]
    fn low_min_degree_hosts_are_trivial() {
        let g = generate::er_min_degree(30, 5, 2).unwrap();
        let run = general_split(&g, 0).unwrap();
        assert!(run.trivial);
        assert_eq!(run.subgraph.edge_count(), g.edge_count());
    }
}
