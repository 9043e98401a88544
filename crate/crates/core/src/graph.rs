//! Simple undirected graphs with stable edge indices, spanning subgraphs,
//! and degree-multiplicity profiles.
//!
//! Edges are stored in construction order and identified by their index in
//! that order; every other module addresses edges through these indices, so
//! subgraphs, weightings, and stored outputs all stay aligned with the host
//! graph.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Errors raised when building a [`Graph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("bad edge list: {0}")]
    Parse(String),
}

/// An immutable simple graph: `n` vertices, an indexed edge list, and an
/// adjacency table carrying `(neighbor, edge index)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<(u32, u32)>>,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs; rejects loops, duplicates,
    /// and out-of-range endpoints. Each pair is normalized to `(min, max)`
    /// but the list order — and with it the edge indexing — is preserved.
    pub fn new(n: usize, pairs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        let mut seen = HashSet::with_capacity(pairs.len());
        let mut adj = vec![Vec::new(); n];
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            let (u, v) = (a.min(b), a.max(b));
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            edges.push((u, v));
            adj[u as usize].push((v, idx as u32));
            adj[v as usize].push((u, idx as u32));
        }
        Ok(Graph { n, edges, adj })
    }

    /// Like [`Graph::new`] but sorts the pairs lexicographically first, so
    /// the edge indexing matches the canonical serialized form.
    pub fn new_sorted(n: usize, pairs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut normalized: Vec<(u32, u32)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        normalized.sort_unstable();
        Graph::new(n, &normalized)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The indexed edge list, each pair normalized to `(min, max)`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Endpoints of edge `e`.
    pub fn edge(&self, e: u32) -> (u32, u32) {
        self.edges[e as usize]
    }

    /// `(neighbor, edge index)` pairs incident to `v`, in insertion order.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// All degrees, indexed by vertex.
    pub fn degrees(&self) -> Vec<u32> {
        self.adj.iter().map(|a| a.len() as u32).collect()
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree exactly `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree();
        (d == self.max_degree() && self.n > 0).then_some(d)
    }

    /// Two-colors the vertices if the graph is bipartite; `None` when an odd
    /// cycle exists. Isolated vertices land on side 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = Vec::new();
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push(start as u32);
            while let Some(v) = queue.pop() {
                for &(u, _) in self.neighbors(v) {
                    if side[u as usize] == u8::MAX {
                        side[u as usize] = 1 - side[v as usize];
                        queue.push(u);
                    } else if side[u as usize] == side[v as usize] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// True when the graph has one connected component (vacuously for n <= 1).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in self.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Disjoint union; vertices of `other` are shifted up by `self.n()`.
    /// When both operands are canonically sorted the result is too.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n as u32;
        let mut pairs = self.edges.clone();
        pairs.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, &pairs).expect("union of valid graphs is valid")
    }

    /// The graph joining every pair of vertices at distance 1 or 2, i.e.
    /// neighbors plus vertices sharing a common neighbor.
    pub fn distance_two_closure(&self) -> Graph {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut mark = vec![false; self.n];
        for v in 0..self.n as u32 {
            let mut touched = Vec::new();
            for &(u, _) in self.neighbors(v) {
                if u > v && !mark[u as usize] {
                    mark[u as usize] = true;
                    touched.push(u);
                }
                for &(w, _) in self.neighbors(u) {
                    if w > v && !mark[w as usize] {
                        mark[w as usize] = true;
                        touched.push(w);
                    }
                }
            }
            for u in touched {
                pairs.push((v, u));
                mark[u as usize] = false;
            }
        }
        Graph::new_sorted(self.n, &pairs).expect("closure edges are distinct by the marks")
    }
}

/// A spanning subgraph of a host [`Graph`]: same vertex set, a selected
/// subset of the edges. Degrees are maintained incrementally under edge
/// toggles so exhaustive scans stay cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningSubgraph<'g> {
    parent: &'g Graph,
    selected: Vec<bool>,
    degrees: Vec<u32>,
    selected_count: usize,
}

impl<'g> SpanningSubgraph<'g> {
    /// The edgeless spanning subgraph.
    pub fn empty(parent: &'g Graph) -> Self {
        SpanningSubgraph {
            parent,
            selected: vec![false; parent.edge_count()],
            degrees: vec![0; parent.n()],
            selected_count: 0,
        }
    }

    /// The subgraph selecting every edge of the host.
    pub fn full(parent: &'g Graph) -> Self {
        let mut h = SpanningSubgraph::empty(parent);
        for e in 0..parent.edge_count() as u32 {
            h.insert(e);
        }
        h
    }

    /// Builds from a selection bit per host edge.
    pub fn from_bits(parent: &'g Graph, bits: &[bool]) -> Self {
        assert_eq!(bits.len(), parent.edge_count(), "one bit per host edge");
        let mut h = SpanningSubgraph::empty(parent);
        for (e, &keep) in bits.iter().enumerate() {
            if keep {
                h.insert(e as u32);
            }
        }
        h
    }

    /// Builds from a list of host edge indices.
    pub fn from_edge_indices(parent: &'g Graph, indices: &[u32]) -> Self {
        let mut h = SpanningSubgraph::empty(parent);
        for &e in indices {
            assert!((e as usize) < parent.edge_count(), "edge index {e} out of range");
            h.insert(e);
        }
        h
    }

    /// The host graph.
    pub fn parent(&self) -> &'g Graph {
        self.parent
    }

    /// Whether edge `e` is selected.
    pub fn contains(&self, e: u32) -> bool {
        self.selected[e as usize]
    }

    /// Selects edge `e`; no-op if already selected.
    pub fn insert(&mut self, e: u32) {
        if !self.selected[e as usize] {
            self.toggle(e);
        }
    }

    /// Deselects edge `e`; no-op if already absent.
    pub fn remove(&mut self, e: u32) {
        if self.selected[e as usize] {
            self.toggle(e);
        }
    }

    /// Flips edge `e`, updating both endpoint degrees.
    pub fn toggle(&mut self, e: u32) {
        let (u, v) = self.parent.edge(e);
        let sel = &mut self.selected[e as usize];
        if *sel {
            *sel = false;
            self.degrees[u as usize] -= 1;
            self.degrees[v as usize] -= 1;
            self.selected_count -= 1;
        } else {
            *sel = true;
            self.degrees[u as usize] += 1;
            self.degrees[v as usize] += 1;
            self.selected_count += 1;
        }
    }

    /// Degree of `v` in the subgraph.
    pub fn degree(&self, v: u32) -> u32 {
        self.degrees[v as usize]
    }

    /// All subgraph degrees, indexed by vertex.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of selected edges.
    pub fn edge_count(&self) -> usize {
        self.selected_count
    }

    /// Selected edge indices in increasing order.
    pub fn selected_edges(&self) -> Vec<u32> {
        (0..self.selected.len() as u32).filter(|&e| self.selected[e as usize]).collect()
    }

    /// Number of vertices with odd subgraph degree (always even).
    pub fn odd_degree_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d % 2 == 1).count()
    }

    /// The degree-multiplicity profile of this subgraph, with one slot for
    /// every degree the host graph permits.
    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(&self.degrees, self.parent.max_degree())
    }
}

/// Degree multiplicities of a subgraph: `count(k)` is the number of vertices
/// of degree exactly `k`, for `0 <= k <= ` the host's maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    counts: Vec<usize>,
    max_multiplicity: usize,
}

impl DegreeProfile {
    /// Tallies a degree sequence into a profile with slots `0..=max_degree`.
    pub fn from_degrees(degrees: &[u32], max_degree: usize) -> Self {
        let mut counts = vec![0usize; max_degree + 1];
        for &d in degrees {
            counts[d as usize] += 1;
        }
        let max_multiplicity = counts.iter().copied().max().unwrap_or(0);
        DegreeProfile { counts, max_multiplicity }
    }

    /// Number of vertices of degree exactly `k` (0 beyond the table).
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// The multiplicity counts, indexed by degree.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The largest multiplicity over all degrees.
    pub fn max_multiplicity(&self) -> usize {
        self.max_multiplicity
    }

    /// Number of degrees that occur at least once.
    pub fn distinct_degrees(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Serializes as CSV: a `k,count` header, one row per occupied degree,
    /// and a trailing `# m(H)=...` comment carrying the maximum multiplicity.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,count\n");
        for (k, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                out.push_str(&format!("{k},{c}\n"));
            }
        }
        out.push_str(&format!("# m(H)={}\n", self.max_multiplicity));
        out
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let occupied: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| format!("{k}:{c}"))
            .collect();
        write!(f, "{{{}}} m={}", occupied.join(" "), self.max_multiplicity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange(3, 3)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.regular_degree(), Some(2));
        let nbrs: Vec<u32> = g.neighbors(1).iter().map(|&(u, _)| u).collect();
        assert_eq!(nbrs, vec![0, 2]);
    }

    #[test]
    fn single_edge_of_cycle_has_two_repeats() {
        // Brute force over all 16 subgraphs of a 4-cycle: the minimum of the
        // maximum multiplicity is 2, met e.g. by a single selected edge.
        let g = generate::cycle(4).unwrap();
        let mut best = usize::MAX;
        for mask in 0u32..16 {
            let bits: Vec<bool> = (0..4).map(|e| mask >> e & 1 == 1).collect();
            let h = SpanningSubgraph::from_bits(&g, &bits);
            best = best.min(h.degree_profile().max_multiplicity());
        }
        assert_eq!(best, 2);
        let mut h = SpanningSubgraph::empty(&g);
        h.insert(0);
        let profile = h.degree_profile();
        assert_eq!(profile.count(0), 2);
        assert_eq!(profile.count(1), 2);
        assert_eq!(profile.max_multiplicity(), 2);
    }

    #[test]
    fn profile_csv_lists_occupied_degrees_only() {
        let g = generate::star(3).unwrap();
        let h = SpanningSubgraph::full(&g);
        assert_eq!(h.degree_profile().to_csv(), "k,count\n1,3\n3,1\n# m(H)=3\n");
    }

    #[test]
    fn union_shifts_and_keeps_order() {
        let c4 = generate::cycle(4).unwrap();
        let g = c4.disjoint_union(&c4);
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.edge(4), (4, 5));
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn toggles_maintain_degrees() {
        let g = generate::complete(5).unwrap();
        let mut h = SpanningSubgraph::empty(&g);
        for e in 0..g.edge_count() as u32 {
            h.toggle(e);
        }
        assert_eq!(h.degrees(), &[4, 4, 4, 4, 4]);
        h.toggle(0);
        h.toggle(0);
        assert_eq!(h.degrees(), &[4, 4, 4, 4, 4]);
        assert_eq!(h.odd_degree_count(), 0);
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(generate::cycle(6).unwrap().bipartition().is_some());
        assert!(generate::cycle(5).unwrap().bipartition().is_none());
        let sides = generate::star(4).unwrap().bipartition().unwrap();
        assert_eq!(sides[0], 0);
        assert!(sides[1..].iter().all(|&s| s == 1));
    }

    #[test]
    fn distance_two_closure_adds_second_neighbors() {
        let closure = generate::path(4).unwrap().distance_two_closure();
        assert_eq!(closure.edge_count(), 5); // path edges plus 0-2 and 1-3
        assert_eq!(closure.degrees(), &[2, 3, 3, 2]);
        // On a 5-cycle every pair is within distance 2.
        assert_eq!(generate::cycle(5).unwrap().distance_two_closure().edge_count(), 10);
    }
}
