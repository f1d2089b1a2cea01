//! Graphs, matchings and the matching system built on top of them.
//!
//! The super free vertex `f` and the length-two paths joining it to every
//! free vertex are never materialised; distance seeding simulates them.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Length parity of an alternating path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even = 0,
    Odd = 1,
}

impl Parity {
    #[inline]
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    #[inline]
    pub fn idx(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn of(len: u32) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Simple undirected graph with CSR adjacency.
///
/// Adjacency order of every vertex follows input edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    start: Vec<usize>,
    adj: Vec<(VertexId, EdgeId)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Graph> {
        let g = Graph::build(n, edges)?;
        g.check_simple()?;
        Ok(g)
    }

    fn build(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Graph> {
        let mut deg = vec![0usize; n + 1];
        for &(u, v) in &edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + deg[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![(0, 0); start[n]];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u]] = (v, e);
            fill[u] += 1;
            adj[fill[v]] = (u, e);
            fill[v] += 1;
        }
        Ok(Graph { n, edges, start, adj })
    }

    fn check_simple(&self) -> Result<()> {
        let mut seen = vec![usize::MAX; self.n];
        for v in 0..self.n {
            for &(x, _) in self.neighbors(v) {
                if seen[x] == v {
                    return Err(Error::ParallelEdge(v.min(x), v.max(x)));
                }
                seen[x] = v;
            }
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Graph {
        Graph::build(n, Vec::new()).expect("empty graph is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[self.start[v]..self.start[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.start[v + 1] - self.start[v]
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).iter().find(|&&(x, _)| x == b).map(|&(_, e)| e)
    }

    /// Edge list normalised to `u < v` and sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut es: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        es.sort_unstable();
        es
    }
}

/// A matching stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
}

impl Matching {
    pub fn empty(n: usize) -> Matching {
        Matching { mate: vec![None; n] }
    }

    /// Builds a matching from pairs, rejecting shared endpoints and non-edges.
    pub fn from_pairs(graph: &Graph, pairs: &[(VertexId, VertexId)]) -> Result<Matching> {
        let mut m = Matching::empty(graph.n());
        for &(u, v) in pairs {
            if graph.find_edge(u, v).is_none() {
                return Err(Error::EdgeNotInGraph(u, v));
            }
            if m.mate[u].is_some() {
                return Err(Error::NotAMatching(u));
            }
            if m.mate[v].is_some() {
                return Err(Error::NotAMatching(v));
            }
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.mate.len()
    }

    #[inline]
    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v]
    }

    #[inline]
    pub fn is_free(&self, v: VertexId) -> bool {
        self.mate[v].is_none()
    }

    #[inline]
    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.mate[u] == Some(v)
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    /// Matched pairs with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.n())
            .filter_map(|u| self.mate[u].filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    pub(crate) fn set_pair(&mut self, u: VertexId, v: VertexId) {
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
    }

    pub(crate) fn unset(&mut self, v: VertexId) {
        self.mate[v] = None;
    }

    pub(crate) fn grow(&mut self, n: usize) {
        self.mate.resize(n, None);
    }

    pub(crate) fn truncate(&mut self, n: usize) {
        self.mate.truncate(n);
    }

    /// True iff `mate` is an involution over edges of `graph`.
    pub fn is_valid_for(&self, graph: &Graph) -> bool {
        self.n() == graph.n()
            && (0..self.n()).all(|u| match self.mate[u] {
                None => true,
                Some(v) => v < self.n() && self.mate[v] == Some(u) && graph.find_edge(u, v).is_some(),
            })
    }
}

/// Graph, matching and the free vertex set `U`.
#[derive(Debug, Clone)]
pub struct MatchingSystem<'g> {
    pub graph: &'g Graph,
    pub matching: Matching,
    /// Free vertices in ascending order.
    pub free: Vec<VertexId>,
}

impl<'g> MatchingSystem<'g> {
    pub fn new(graph: &'g Graph, matching: Matching) -> Result<MatchingSystem<'g>> {
        build_matching_system(graph, matching)
    }

    /// `ρ(e)`: odd iff `e` is a matching edge.
    #[inline]
    pub fn rho(&self, e: EdgeId) -> Parity {
        let (u, v) = self.graph.edge(e);
        if self.matching.contains(u, v) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    #[inline]
    pub fn is_free(&self, v: VertexId) -> bool {
        self.matching.is_free(v)
    }
}

pub fn build_matching_system(graph: &Graph, matching: Matching) -> Result<MatchingSystem<'_>> {
    if matching.n() != graph.n() {
        return Err(Error::Internal(format!(
            "matching covers {} vertices, graph has {}",
            matching.n(),
            graph.n()
        )));
    }
    for u in 0..graph.n() {
        if let Some(v) = matching.mate(u) {
            if v >= graph.n() || matching.mate(v) != Some(u) {
                return Err(Error::NotAMatching(u));
            }
            if graph.find_edge(u, v).is_none() {
                return Err(Error::EdgeNotInGraph(u.min(v), u.max(v)));
            }
        }
    }
    let free = (0..graph.n()).filter(|&v| matching.is_free(v)).collect();
    Ok(MatchingSystem { graph, matching, free })
}

/// A path given by its vertices and the edges between consecutive ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl AlternatingPath {
    /// Resolves consecutive vertex pairs to edges.
    pub fn from_vertices(graph: &Graph, vertices: Vec<VertexId>) -> Result<AlternatingPath> {
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            match graph.find_edge(w[0], w[1]) {
                Some(e) => edges.push(e),
                None => return Err(Error::EdgeNotInGraph(w[0], w[1])),
            }
        }
        Ok(AlternatingPath { vertices, edges })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn reversed(&self) -> AlternatingPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        AlternatingPath { vertices, edges }
    }

    /// Orientation with the smaller endpoint first.
    pub fn canonical(&self) -> AlternatingPath {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) if b < a => self.reversed(),
            _ => self.clone(),
        }
    }
}

pub fn is_augmenting_path(ms: &MatchingSystem<'_>, path: &AlternatingPath) -> bool {
    let vs = &path.vertices;
    if vs.len() < 2 || path.edges.len() + 1 != vs.len() {
        return false;
    }
    let n = ms.graph.n();
    let mut seen = vec![false; n];
    for &v in vs {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for (i, &e) in path.edges.iter().enumerate() {
        if e >= ms.graph.m() {
            return false;
        }
        let (a, b) = ms.graph.edge(e);
        let (x, y) = (vs[i], vs[i + 1]);
        if !((a == x && b == y) || (a == y && b == x)) {
            return false;
        }
        let want = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
        if ms.rho(e) != want {
            return false;
        }
    }
    path.edges.len() % 2 == 1 && ms.is_free(vs[0]) && ms.is_free(vs[vs.len() - 1])
}

/// Symmetric difference of `M` with a set of disjoint augmenting paths.
pub fn augment_along(ms: &MatchingSystem<'_>, paths: &[AlternatingPath]) -> Result<Matching> {
    let mut used = vec![false; ms.graph.n()];
    for p in paths {
        if !is_augmenting_path(ms, p) {
            return Err(Error::NotAugmenting);
        }
        for &v in &p.vertices {
            if used[v] {
                return Err(Error::PathsOverlap(v));
            }
            used[v] = true;
        }
    }
    let mut m = ms.matching.clone();
    for p in paths {
        for i in (0..p.vertices.len() - 1).step_by(2) {
            m.set_pair(p.vertices[i], p.vertices[i + 1]);
        }
    }
    Ok(m)
}

/// Greedy maximal matching over edges in sorted `(min, max)` order.
pub fn greedy_maximal_matching(graph: &Graph) -> Matching {
    let mut m = Matching::empty(graph.n());
    for (u, v) in graph.sorted_edges() {
        if m.is_free(u) && m.is_free(v) {
            m.set_pair(u, v);
        }
    }
    m
}

/// Extends `m` greedily to a maximal matching, scanning edges in sorted order.
pub fn extend_to_maximal(graph: &Graph, mut m: Matching) -> Matching {
    for (u, v) in graph.sorted_edges() {
        if m.is_free(u) && m.is_free(v) {
            m.set_pair(u, v);
        }
    }
    m
}
