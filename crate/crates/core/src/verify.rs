//! Recomputed audit of a stored subgraph against its host.
//!
//! Given only the host and the kept edges, three things can be checked
//! outright: the profile's counts must tally to the vertex count, the
//! handshake between degrees and kept edges must balance, and — when the
//! host is small enough to enumerate — the measured multiplicity can
//! never undercut the exhaustive minimum. Everything else (slack bound,
//! distinct degrees) is recomputed and reported for the caller to read.

use crate::graph::{DegreeProfile, Graph, SpanningSubgraph};
use crate::oracle::{self, ENUM_EDGE_CAP};

/// Everything the audit recomputed, plus the hard-check verdicts.
#[derive(Debug, Clone)]
pub struct Audit {
    /// Vertices of the host.
    pub n: usize,
    /// Edges of the host.
    pub host_edges: usize,
    /// Minimum degree of the host.
    pub min_degree: usize,
    /// Edges kept by the subgraph.
    pub kept_edges: usize,
    /// Recomputed degree profile of the subgraph.
    pub profile: DegreeProfile,
    /// Largest multiplicity of the subgraph.
    pub max_multiplicity: usize,
    /// Degrees occurring at least once.
    pub distinct_degrees: usize,
    /// The profile's counts sum to `n`.
    pub counts_tally: bool,
    /// Degree sum equals twice the kept edge count.
    pub handshake: bool,
    /// Exhaustive minimum of the largest multiplicity, when the host is
    /// within the enumeration cap.
    pub oracle_minimum: Option<usize>,
    /// The subgraph's multiplicity is at least the exhaustive minimum —
    /// anything else means one of the two computations is wrong.
    pub oracle_consistent: Option<bool>,
    /// The slack bound `n/(min_degree+1) + 2`, for context.
    pub slack_bound: f64,
    /// Whether the exhaustive minimum stays within the slack bound, when
    /// the oracle ran.
    pub minimum_within_slack: Option<bool>,
}

impl Audit {
    /// True when every hard check passed.
    pub fn passed(&self) -> bool {
        self.counts_tally && self.handshake && self.oracle_consistent.unwrap_or(true)
    }

    /// The audit as `key,value` CSV lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        out.push_str(&format!("n,{}\n", self.n));
        out.push_str(&format!("host_edges,{}\n", self.host_edges));
        out.push_str(&format!("min_degree,{}\n", self.min_degree));
        out.push_str(&format!("kept_edges,{}\n", self.kept_edges));
        out.push_str(&format!("max_multiplicity,{}\n", self.max_multiplicity));
        out.push_str(&format!("distinct_degrees,{}\n", self.distinct_degrees));
        out.push_str(&format!("counts_tally,{}\n", self.counts_tally));
        out.push_str(&format!("handshake,{}\n", self.handshake));
        out.push_str(&format!("slack_bound,{:.3}\n", self.slack_bound));
        if let Some(m) = self.oracle_minimum {
            out.push_str(&format!("oracle_minimum,{m}\n"));
        }
        if let Some(c) = self.oracle_consistent {
            out.push_str(&format!("oracle_consistent,{c}\n"));
        }
        if let Some(w) = self.minimum_within_slack {
            out.push_str(&format!("minimum_within_slack,{w}\n"));
        }
        out.push_str(&format!("passed,{}\n", self.passed()));
        out
    }
}

/// Recompute a stored subgraph's profile and run every applicable check.
pub fn audit(g: &Graph, h: &SpanningSubgraph<'_>) -> Audit {
    let profile = h.degree_profile();
    let degree_sum: usize = (0..g.n() as u32).map(|v| h.degree(v) as usize).sum();
    let counts_tally = profile.counts().iter().sum::<usize>() == g.n();
    let handshake = degree_sum == 2 * h.edge_count();

    let (oracle_minimum, oracle_consistent, minimum_within_slack) =
        if g.edge_count() <= ENUM_EDGE_CAP && g.edge_count() > 0 {
            let slack = oracle::multiplicity_within_slack(g)
                .expect("cap was checked before enumerating");
            (
                Some(slack.minimum),
                Some(profile.max_multiplicity() >= slack.minimum),
                Some(slack.holds),
            )
        } else {
            (None, None, None)
        };

    Audit {
        n: g.n(),
        host_edges: g.edge_count(),
        min_degree: g.min_degree(),
        kept_edges: h.edge_count(),
        max_multiplicity: profile.max_multiplicity(),
        distinct_degrees: profile.distinct_degrees(),
        counts_tally,
        handshake,
        oracle_minimum,
        oracle_consistent,
        slack_bound: g.n() as f64 / (g.min_degree() as f64 + 1.0) + 2.0,
        minimum_within_slack,
        profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};

    #[test]
    fn audit_of_a_cycle_subgraph_passes() {
        let g = cycle(4).unwrap();
        let mut h = SpanningSubgraph::empty(&g);
        h.insert(0);
        let a = audit(&g, &h);
        assert!(a.passed());
        assert_eq!(a.kept_edges, 1);
        assert_eq!(a.max_multiplicity, 2);
        assert_eq!(a.oracle_minimum, Some(2));
        assert_eq!(a.oracle_consistent, Some(true));
        assert_eq!(a.minimum_within_slack, Some(true));
        assert!((a.slack_bound - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn audit_skips_the_oracle_beyond_the_cap() {
        let g = complete(9).unwrap(); // 36 edges, over the cap
        let h = SpanningSubgraph::full(&g);
        let a = audit(&g, &h);
        assert!(a.passed());
        assert_eq!(a.oracle_minimum, None);
        assert_eq!(a.oracle_consistent, None);
    }

    #[test]
    fn csv_carries_the_verdict() {
        let g = cycle(5).unwrap();
        let h = SpanningSubgraph::full(&g);
        let a = audit(&g, &h);
        let csv = a.to_csv();
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("passed,true\n"));
        assert!(csv.contains("oracle_minimum,"));
    }
}
