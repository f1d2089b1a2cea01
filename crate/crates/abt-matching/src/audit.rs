//! Brute-force audit of the structure the exact and approximate drivers rely on.
//!
//! Distances, predecessor sets and shortest augmenting paths come from
//! exhaustive enumeration; only the distance table, the base tree, its
//! minimum incoming edges and the candidate edges come from the engine.

use crate::abd::candidate_edges;
use crate::abt::{build_abt, compute_mies};
use crate::dist::{compute_dist, p_set};
use crate::error::Result;
use crate::graph::{AlternatingPath, MatchingSystem, Parity, VertexId};
use crate::oracle::{all_shortest_aug_paths, enumerate_alternating_dists, OracleDistTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Every predecessor of `u` has a smaller orthodox distance.
    PredecessorCloser,
    /// `u'` precedes `u` iff the edge has the right type and `dist^ᾱ(u') + 1 = dist^α(u)`.
    PredecessorByDistance,
    /// `p_set` equals the enumerated predecessors.
    PredecessorSet,
    /// Base-tree parents are strictly closer than their children.
    TreeParentCloser,
    /// `dist^ρ(e)(u) + 1 ≥ dist^α(v)` for every edge `uv`, strictly off the EP edges.
    EdgeExtension,
    /// `dist^α(t) + dist^β(t) ≥ vlevel(mie(t))`.
    VolumeLowerBound,
    /// `dist^α(t) + dist^β(t) = vlevel(mie(t))`, and an incoming edge exists iff `dist^β` is finite.
    VolumeTight,
    /// `dist^β(t) > hlevel(mie(t))`.
    HeightBelowSecond,
    /// A free vertex ends a shortest augmenting path iff its incoming volume is `2ℓ + 5`.
    FreeEndpointVolume,
    /// Shortest augmenting paths use edges of volume at most `2ℓ + 5`.
    CriticalVolume,
    /// Shortest augmenting paths visit vertices with `dist^α ≤ ℓ + 2`.
    CriticalDepth,
    /// Every shortest augmenting path contains exactly one candidate edge.
    SingleCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    pub violations: Vec<Violation>,
    /// Vertices where the volume equality was checked with a finite `dist^β`.
    pub tight_volumes: usize,
    /// Shortest augmenting paths, each in one orientation.
    pub shortest_paths: usize,
}

struct Truth {
    d: OracleDistTable,
    pred: Vec<Vec<VertexId>>,
    shortest: Vec<AlternatingPath>,
}

fn rho(ms: &MatchingSystem<'_>, u: VertexId, v: VertexId) -> Parity {
    if ms.matching.contains(u, v) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

impl Truth {
    fn alpha(&self, v: VertexId) -> Option<(Parity, u32)> {
        match (self.d.get(v, Parity::Even), self.d.get(v, Parity::Odd)) {
            (Some(e), Some(o)) if o < e => Some((Parity::Odd, o)),
            (Some(e), _) => Some((Parity::Even, e)),
            (None, Some(o)) => Some((Parity::Odd, o)),
            (None, None) => None,
        }
    }

    fn beta(&self, v: VertexId) -> Option<u32> {
        self.alpha(v).and_then(|(a, _)| self.d.get(v, a.flip()))
    }

    fn vlevel(&self, ms: &MatchingSystem<'_>, u: VertexId, v: VertexId) -> Option<u32> {
        let r = rho(ms, u, v);
        Some(self.d.get(u, r)? + self.d.get(v, r)? + 1)
    }

    fn new(ms: &MatchingSystem<'_>) -> Result<Truth> {
        let n = ms.graph.n();
        let mut t = Truth {
            d: enumerate_alternating_dists(ms)?,
            pred: vec![Vec::new(); n],
            shortest: all_shortest_aug_paths(ms)?,
        };
        let alpha: Vec<_> = (0..n).map(|v| t.alpha(v)).collect();
        fn walk(
            ms: &MatchingSystem<'_>,
            alpha: &[Option<(Parity, u32)>],
            path: &mut Vec<VertexId>,
            len: u32,
            pred: &mut [Vec<VertexId>],
        ) {
            let v = *path.last().expect("walks start at a root");
            if path.len() > 1 && alpha[v] == Some((Parity::of(len), len)) {
                pred[v].push(path[path.len() - 2]);
            }
            let here = Parity::of(len);
            for &(w, _) in ms.graph.neighbors(v) {
                if !path.contains(&w) && rho(ms, v, w) == here {
                    path.push(w);
                    walk(ms, alpha, path, len + 1, pred);
                    path.pop();
                }
            }
        }
        for &u in &ms.free {
            walk(ms, &alpha, &mut vec![u], 2, &mut t.pred);
        }
        for p in t.pred.iter_mut() {
            p.sort_unstable();
            p.dedup();
        }
        Ok(t)
    }

    /// `ℓ` with shortest augmenting paths of length `2ℓ + 1`.
    fn ell(&self) -> Option<u32> {
        self.shortest.first().map(|p| (p.len() as u32 - 1) / 2)
    }
}

/// Checks every [`Check`] on one instance by exhaustive enumeration.
pub fn audit(ms: &MatchingSystem<'_>) -> Result<Audit> {
    let t = Truth::new(ms)?;
    let n = ms.graph.n();
    let dt = compute_dist(ms, None);
    let tree = build_abt(&dt, ms, &[])?;
    let mies = compute_mies(&tree, &dt, ms);
    let mut out = Audit {
        shortest_paths: t.shortest.len(),
        ..Audit::default()
    };
    let mut fail = |check: Check, detail: String| out.violations.push(Violation { check, detail });

    for u in 0..n {
        let Some((a, du)) = t.alpha(u) else { continue };
        for &p in &t.pred[u] {
            if t.alpha(p).is_none_or(|(_, dp)| dp >= du) {
                fail(Check::PredecessorCloser, format!("{p} -> {u}"));
            }
        }
        for &(w, _) in ms.graph.neighbors(u) {
            let by_distance = rho(ms, w, u) == a.flip() && t.d.get(w, a.flip()).is_some_and(|dw| dw + 1 == du);
            if by_distance != t.pred[u].contains(&w) {
                fail(Check::PredecessorByDistance, format!("{w} -> {u}"));
            }
        }
        let mut engine = p_set(&dt, ms, u);
        engine.sort_unstable();
        if engine != t.pred[u] {
            fail(
                Check::PredecessorSet,
                format!("P({u}) = {engine:?}, expected {:?}", t.pred[u]),
            );
        }
        if let Some(p) = tree.parent(u) {
            if t.alpha(p).is_none_or(|(_, dp)| dp >= du) {
                fail(Check::TreeParentCloser, format!("parent {p} of {u}"));
            }
        }
    }

    for &(u, v) in ms.graph.edges() {
        for (x, y) in [(u, v), (v, u)] {
            let Some(dx) = t.d.get(x, rho(ms, x, y)) else { continue };
            let Some((_, dy)) = t.alpha(y) else {
                fail(Check::EdgeExtension, format!("{y} unreachable past {x}"));
                continue;
            };
            if dx + 1 < dy || (dx + 1 == dy && !t.pred[y].contains(&x)) {
                fail(Check::EdgeExtension, format!("{x} -> {y}: {} vs {dy}", dx + 1));
            }
        }
    }

    for v in 0..n {
        let Some((_, a)) = t.alpha(v) else { continue };
        let beta = t.beta(v);
        let Some(e) = mies.get(v) else {
            if beta.is_some() {
                fail(
                    Check::VolumeTight,
                    format!("{v} has a finite second distance but no incoming edge"),
                );
            }
            continue;
        };
        let (y, z) = ms.graph.edge(e.edge);
        if t.vlevel(ms, y, z) != Some(e.level.vlevel) {
            fail(
                Check::VolumeTight,
                format!("incoming edge ({y}, {z}) of {v} has the wrong volume"),
            );
        }
        let Some(b) = beta else {
            fail(
                Check::VolumeTight,
                format!("{v} has an incoming edge but no second distance"),
            );
            continue;
        };
        out.tight_volumes += 1;
        if a + b < e.level.vlevel {
            fail(Check::VolumeLowerBound, format!("{v}: {a} + {b} < {}", e.level.vlevel));
        }
        if a + b != e.level.vlevel {
            fail(Check::VolumeTight, format!("{v}: {a} + {b} != {}", e.level.vlevel));
        }
        if b <= e.level.hlevel {
            fail(Check::HeightBelowSecond, format!("{v}: {b} <= {}", e.level.hlevel));
        }
    }

    let Some(l) = t.ell() else { return Ok(out) };
    for &u in &ms.free {
        let endpoint = t
            .shortest
            .iter()
            .any(|p| p.vertices.first() == Some(&u) || p.vertices.last() == Some(&u));
        let volume = mies.get(u).map(|e| e.level.vlevel);
        if (volume == Some(2 * l + 5)) != endpoint {
            fail(
                Check::FreeEndpointVolume,
                format!("free {u}: volume {volume:?}, endpoint {endpoint}"),
            );
        }
    }
    let cands: Vec<_> = candidate_edges(&dt, ms, l).iter().map(|c| c.edge).collect();
    for p in &t.shortest {
        for w in p.vertices.windows(2) {
            if t.vlevel(ms, w[0], w[1]).is_none_or(|vl| vl > 2 * l + 5) {
                fail(
                    Check::CriticalVolume,
                    format!("({}, {}) on {:?}", w[0], w[1], p.vertices),
                );
            }
        }
        for &v in &p.vertices {
            if t.alpha(v).is_none_or(|(_, d)| d > l + 2) {
                fail(Check::CriticalDepth, format!("{v} on {:?}", p.vertices));
            }
        }
        let hits = p.edges.iter().filter(|e| cands.contains(e)).count();
        if hits != 1 {
            fail(
                Check::SingleCandidate,
                format!("{hits} candidate edges on {:?}", p.vertices),
            );
        }
    }
    Ok(out)
}
