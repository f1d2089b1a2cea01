//! The alternating base DAG and the candidate edges fed to the double DFS.

use crate::dist::{edge_level, is_ep_edge, DistTable};
use crate::graph::{EdgeId, MatchingSystem, VertexId};

/// Edges `u -> v` for every non-free `u` and `v ∈ P(u)`, kept in CSR form.
///
/// `phi` is the orthodox distance, which strictly decreases along edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abd {
    pub phi: Vec<u32>,
    pub present: Vec<bool>,
    pub sink: Vec<bool>,
    out_start: Vec<usize>,
    out_adj: Vec<VertexId>,
}

impl Abd {
    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Out-neighbours in ascending id.
    pub fn out(&self, v: VertexId) -> &[VertexId] {
        self.out_start
            .get(v..v + 2)
            .map_or(&[][..], |w| &self.out_adj[w[0]..w[1]])
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.n())
            .flat_map(|u| self.out(u).iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Builds a DAG from explicit parts; out-lists are sorted here.
    pub fn from_parts(phi: Vec<u32>, sink: Vec<bool>, edges: &[(VertexId, VertexId)]) -> Abd {
        let n = phi.len();
        let present = vec![true; n];
        Abd::assemble(phi, present, sink, edges)
    }

    fn assemble(phi: Vec<u32>, present: Vec<bool>, sink: Vec<bool>, edges: &[(VertexId, VertexId)]) -> Abd {
        let n = phi.len();
        let mut out_start = vec![0usize; n + 1];
        for &(u, v) in edges {
            debug_assert!(phi[u] > phi[v], "edges must descend in phi");
            out_start[u + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
        }
        let mut fill = out_start.clone();
        let mut out_adj = vec![0; edges.len()];
        for &(u, v) in edges {
            out_adj[fill[u]] = v;
            fill[u] += 1;
        }
        for v in 0..n {
            out_adj[out_start[v]..out_start[v + 1]].sort_unstable();
        }
        Abd {
            phi,
            present,
            sink,
            out_start,
            out_adj,
        }
    }
}

/// The base DAG over every reached vertex.
pub fn build_abd(dt: &DistTable, ms: &MatchingSystem<'_>) -> Abd {
    build_abd_bounded(dt, ms, None)
}

/// The base DAG restricted to vertices with `dist^α ≤ max_alpha`.
pub fn build_abd_bounded(dt: &DistTable, ms: &MatchingSystem<'_>, max_alpha: Option<u32>) -> Abd {
    let g = ms.graph;
    let n = g.n();
    let mut phi = vec![u32::MAX; n];
    let mut present = vec![false; n];
    for v in 0..n {
        if let Some(d) = dt.orthodox_dist(v) {
            if max_alpha.is_none_or(|b| d <= b) {
                phi[v] = d;
                present[v] = true;
            }
        }
    }
    let sink: Vec<bool> = (0..n).map(|v| present[v] && ms.is_free(v)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        if !present[u] || sink[u] {
            continue;
        }
        for &(x, e) in g.neighbors(u) {
            if is_ep_edge(dt, ms, u, x, e) {
                edges.push((u, x));
            }
        }
    }
    Abd::assemble(phi, present, sink, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateEdge {
    pub edge: EdgeId,
    pub vlevel: u32,
    pub hlevel: u32,
}

/// Critical edges of volume `2ℓ + 5`, by ascending `(hlevel, edge id)`.
pub fn candidate_edges(dt: &DistTable, ms: &MatchingSystem<'_>, l: u32) -> Vec<CandidateEdge> {
    let g = ms.graph;
    let mut out = Vec::new();
    for e in 0..g.m() {
        let Ok(lv) = edge_level(dt, ms, e) else { continue };
        if lv.vlevel != 2 * l + 5 {
            continue;
        }
        let (y, z) = g.edge(e);
        if is_ep_edge(dt, ms, y, z, e) || is_ep_edge(dt, ms, z, y, e) {
            continue;
        }
        out.push(CandidateEdge {
            edge: e,
            vlevel: lv.vlevel,
            hlevel: lv.hlevel,
        });
    }
    out.sort_by_key(|c| (c.hlevel, c.edge));
    out
}
