//! Exact maximum matching by phases of disjoint shortest augmenting paths.

use crate::abd::{build_abd_bounded, candidate_edges};
use crate::abt::double_to_aug_many;
use crate::ddfs::{maximal_double_paths, DdfsStats};
use crate::dist::{compute_dist, shortest_aug_length, DistOps};
use crate::error::{Error, Result};
use crate::graph::MatchingSystem;
use crate::graph::{augment_along, build_matching_system, greedy_maximal_matching, AlternatingPath, Graph, Matching};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseReport {
    /// Edges on every path of the phase, `2ℓ + 1`.
    pub path_len: u32,
    pub candidates: usize,
    pub paths: usize,
    /// Matching size after the phase.
    pub size: usize,
    pub dist_ops: DistOps,
    pub ddfs: DdfsStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McmResult {
    pub matching: Matching,
    pub phases: Vec<PhaseReport>,
}

/// A maximal set of vertex-disjoint shortest augmenting paths, or `None`
/// when `M` is maximum.
pub fn find_phase_paths(ms: &MatchingSystem<'_>) -> Result<Option<(Vec<AlternatingPath>, PhaseReport)>> {
    let dt = compute_dist(ms, None);
    let Some(l) = shortest_aug_length(&dt, ms) else {
        return Ok(None);
    };
    let h = build_abd_bounded(&dt, ms, Some(l + 2));
    let cands = candidate_edges(&dt, ms, l);
    let (dps, ddfs) = maximal_double_paths(&h, ms.graph, &cands);
    if dps.is_empty() {
        return Err(Error::Internal(format!(
            "shortest augmenting length {l} but no double path"
        )));
    }
    let paths = double_to_aug_many(&dt, ms, &dps)?;
    debug_assert!(paths.iter().all(|p| p.len() as u32 == 2 * l + 1));
    let report = PhaseReport {
        path_len: 2 * l + 1,
        candidates: cands.len(),
        paths: paths.len(),
        size: ms.matching.size() + paths.len(),
        dist_ops: dt.ops,
        ddfs,
    };
    Ok(Some((paths, report)))
}

/// Maximum matching, starting from `initial` or from the greedy maximal matching.
pub fn maximum_matching(g: &Graph, initial: Option<Matching>) -> Result<McmResult> {
    let mut m = initial.unwrap_or_else(|| greedy_maximal_matching(g));
    let mut phases = Vec::new();
    loop {
        let ms = build_matching_system(g, m)?;
        let Some((paths, report)) = find_phase_paths(&ms)? else {
            return Ok(McmResult {
                matching: ms.matching,
                phases,
            });
        };
        m = augment_along(&ms, &paths)?;
        phases.push(report);
    }
}
