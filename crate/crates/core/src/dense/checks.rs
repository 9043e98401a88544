//! Concentration checks on a freshly labeled state.
//!
//! Each item compares a measured count against the closed-form window
//! the guarantees assume. An item whose window was computed from a
//! clamped probability cannot fail honestly — the window itself is
//! off-model — so it reports [`CheckOutcome::Measured`] instead, and
//! only genuine failures trigger a resample.

use crate::graph::Graph;

use super::params::{active_probability, target_weight};
use super::state::{PipelineState, Side};

/// Result of one concentration item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    /// The window held everywhere it applied.
    Pass,
    /// The window failed somewhere with no clamp involved.
    Fail,
    /// A clamped probability voided the window; the count was recorded
    /// but cannot count against the sample.
    Measured,
}

impl CheckOutcome {
    fn worst(self, other: CheckOutcome) -> CheckOutcome {
        use CheckOutcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Measured, _) | (_, Measured) => Measured,
            _ => Pass,
        }
    }
}

/// Outcome of the five concentration items on one labeled sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentrationReport {
    /// No integer window of bucket width catches too many target values.
    pub target_buckets: CheckOutcome,
    /// Every vertex sees the expected fraction of the small side.
    pub small_degrees: CheckOutcome,
    /// Big-side vertices reach the top blocks at the expected rate.
    pub upper_block_degrees: CheckOutcome,
    /// Small-side vertices carry the expected number of active edges,
    /// and not too many of them removable.
    pub slice_activity: CheckOutcome,
    /// Big-side vertices see every slice at the expected active rate and
    /// keep enough removable edges to pay for equalization.
    pub big_activity: CheckOutcome,
}

impl ConcentrationReport {
    /// The first genuinely failed item, if any.
    pub fn real_failure(&self) -> Option<&'static str> {
        [
            (self.target_buckets, "target buckets"),
            (self.small_degrees, "small-side degrees"),
            (self.upper_block_degrees, "upper-block degrees"),
            (self.slice_activity, "slice activity"),
            (self.big_activity, "big-side activity"),
        ]
        .into_iter()
        .find(|&(o, _)| o == CheckOutcome::Fail)
        .map(|(_, name)| name)
    }

    /// True when every item passed outright.
    pub fn all_pass(&self) -> bool {
        self.target_buckets == CheckOutcome::Pass
            && self.small_degrees == CheckOutcome::Pass
            && self.upper_block_degrees == CheckOutcome::Pass
            && self.slice_activity == CheckOutcome::Pass
            && self.big_activity == CheckOutcome::Pass
    }
}

/// Run the five concentration items against a labeled state.
pub fn concentration_report(g: &Graph, st: &PipelineState) -> ConcentrationReport {
    let p = &st.params;
    let n = g.n();
    let nf = n as f64;
    let df = p.delta as f64;
    let sf = p.s_star as f64;
    let kf = p.k as f64;
    let lnn = nf.ln();
    let any_active_clamp = st.active_clamped.iter().any(|&c| c);

    // Item: no integer window of bucket width may catch more target
    // values than the bucket bound allows.
    let mut targets: Vec<f64> = (0..n as u32)
        .filter_map(|v| match st.side[v as usize] {
            Side::Big(i) => Some(target_weight(p, g.degree(v), i as usize)),
            Side::Small(_) => None,
        })
        .collect();
    targets.sort_unstable_by(f64::total_cmp);
    let bucket_bound = p.bucket as f64 * nf / df + 4.0 * (nf / df * df.sqrt() * lnn).sqrt();
    let mut target_buckets = CheckOutcome::Pass;
    for j in 0..n {
        let lo = targets.partition_point(|&t| t < j as f64);
        let hi = targets.partition_point(|&t| t < (j + p.bucket) as f64);
        if (hi - lo) as f64 > bucket_bound {
            target_buckets = CheckOutcome::Fail;
            break;
        }
    }

    // Item: every vertex must see between half and one-and-a-half times
    // the expected small side.
    let mut small_degrees = CheckOutcome::Pass;
    for v in 0..n as u32 {
        let ds = g
            .neighbors(v)
            .iter()
            .filter(|&&(u, _)| st.side[u as usize].is_small())
            .count() as f64;
        let mean = sf * g.degree(v) as f64 / df;
        if ds < 0.5 * mean || ds > 1.5 * mean {
            small_degrees = CheckOutcome::Fail;
            break;
        }
    }

    // Item: a block-i vertex reaches blocks from the top-i band at rate
    // i/delta per neighbor.
    let mut upper_block_degrees = CheckOutcome::Pass;
    'outer: for v in 0..n as u32 {
        let Side::Big(i) = st.side[v as usize] else { continue };
        let cut = (p.b_blocks as u32 + 1).saturating_sub(i);
        let count = g
            .neighbors(v)
            .iter()
            .filter(|&&(u, _)| matches!(st.side[u as usize], Side::Big(j) if j >= cut))
            .count() as f64;
        let mean = i as f64 * g.degree(v) as f64 / df;
        let slack = 12.0 * mean.max(0.0).sqrt() * lnn;
        if (count - mean).abs() > slack {
            upper_block_degrees = CheckOutcome::Fail;
            break 'outer;
        }
    }

    // Per-vertex active and active-removable tallies, split by the slice
    // of the small endpoint, reused by the last two items.
    let mut active_to_slice = vec![vec![0u32; p.k + 1]; n];
    let mut active_removable = vec![0u32; n];
    for e in 0..g.edge_count() {
        if !st.active[e] {
            continue;
        }
        let (u, v) = g.edge(e as u32);
        let (b, s, j) = match (st.side[u as usize], st.side[v as usize]) {
            (Side::Big(_), Side::Small(j)) => (u, v, j),
            (Side::Small(j), Side::Big(_)) => (v, u, j),
            _ => continue,
        };
        active_to_slice[b as usize][j as usize] += 1;
        active_to_slice[s as usize][j as usize] += 1;
        if st.removable[e] {
            active_removable[b as usize] += 1;
            active_removable[s as usize] += 1;
        }
    }

    // Item: a slice-i vertex holds the expected number of active edges,
    // of which not too many are also removable.
    let mut slice_activity = CheckOutcome::Pass;
    for v in 0..n as u32 {
        let Side::Small(i) = st.side[v as usize] else { continue };
        let i = i as usize;
        let deg = g.degree(v) as f64;
        let mean = (df - 4.0 * sf * i as f64) * deg / df;
        let count = f64::from(active_to_slice[v as usize][i]);
        let outcome = if st.active_clamped[i] {
            CheckOutcome::Measured
        } else if (count - mean).abs() > deg.sqrt() * lnn {
            CheckOutcome::Fail
        } else {
            CheckOutcome::Pass
        };
        slice_activity = slice_activity.worst(outcome);

        let removable_cap = 33.0 * (df - 4.0 * sf * i as f64) * deg * lnn / (df.sqrt() * sf);
        let outcome = if st.active_clamped[i] || st.removable_clamped {
            CheckOutcome::Measured
        } else if f64::from(active_removable[v as usize]) > removable_cap {
            CheckOutcome::Fail
        } else {
            CheckOutcome::Pass
        };
        slice_activity = slice_activity.worst(outcome);
        if slice_activity == CheckOutcome::Fail {
            break;
        }
    }

    // Item: a big-side vertex sees each slice at its active rate, and
    // keeps enough removable weight for the equalization budget.
    let mut big_activity = CheckOutcome::Pass;
    for v in 0..n as u32 {
        let Side::Big(_) = st.side[v as usize] else { continue };
        let deg = g.degree(v) as f64;
        for i in 1..=p.k {
            let (_, clamped) = active_probability(p, i);
            let mean = sf * deg / (df * kf) * (df - 4.0 * sf * i as f64) / (df - sf);
            let count = f64::from(active_to_slice[v as usize][i]);
            let outcome = if clamped {
                CheckOutcome::Measured
            } else if (count - mean).abs() > (deg * sf / (df * kf)).sqrt() * lnn {
                CheckOutcome::Fail
            } else {
                CheckOutcome::Pass
            };
            big_activity = big_activity.worst(outcome);
        }
        let floor = 27.0 * deg.sqrt() * lnn;
        let outcome = if st.removable_clamped || any_active_clamp {
            CheckOutcome::Measured
        } else if f64::from(active_removable[v as usize]) < floor {
            CheckOutcome::Fail
        } else {
            CheckOutcome::Pass
        };
        big_activity = big_activity.worst(outcome);
        if big_activity == CheckOutcome::Fail {
            break;
        }
    }

    ConcentrationReport {
        target_buckets,
        small_degrees,
        upper_block_degrees,
        slice_activity,
        big_activity,
    }
}
