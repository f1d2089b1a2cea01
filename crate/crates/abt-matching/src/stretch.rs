//! Stretching a matching system at a hitting set, and undoing it.
//!
//! Fresh vertices get ids past the current vertex count. Original ids keep
//! all their edges, so a path that avoids the hitting set maps to itself.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{AlternatingPath, Graph, Matching, MatchingSystem, VertexId};

/// The matched edge `{v, w}` replaced by `v – x – y – w`, with `vx` and `yw` matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subdivision {
    pub v: VertexId,
    pub w: VertexId,
    pub x: VertexId,
    pub y: VertexId,
}

/// Free `v` gains the tail `v – a – b` with `va` matched; `b` is the new free end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extension {
    pub v: VertexId,
    pub a: VertexId,
    pub b: VertexId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StretchMap {
    /// Vertex count before stretching.
    pub base_n: usize,
    pub subdivisions: Vec<Subdivision>,
    pub extensions: Vec<Extension>,
}

impl StretchMap {
    pub fn is_identity(&self) -> bool {
        self.subdivisions.is_empty() && self.extensions.is_empty()
    }

    /// Image of a path of the unstretched system.
    pub fn map_path(&self, stretched: &Graph, path: &AlternatingPath) -> Result<AlternatingPath> {
        let sub: HashMap<(VertexId, VertexId), &Subdivision> = self
            .subdivisions
            .iter()
            .map(|s| ((s.v.min(s.w), s.v.max(s.w)), s))
            .collect();
        let ext: HashMap<VertexId, &Extension> = self.extensions.iter().map(|e| (e.v, e)).collect();
        let vs = &path.vertices;
        let mut out = Vec::with_capacity(vs.len() + 4);
        if let Some(e) = vs.first().and_then(|v| ext.get(v)) {
            out.extend([e.b, e.a]);
        }
        for (i, &s) in vs.iter().enumerate() {
            out.push(s);
            let Some(&t) = vs.get(i + 1) else { break };
            if let Some(d) = sub.get(&(s.min(t), s.max(t))) {
                if s == d.v {
                    out.extend([d.x, d.y]);
                } else {
                    out.extend([d.y, d.x]);
                }
            }
        }
        if vs.len() > 1 {
            if let Some(e) = vs.last().and_then(|v| ext.get(v)) {
                out.extend([e.a, e.b]);
            }
        }
        AlternatingPath::from_vertices(stretched, out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stretched {
    pub graph: Graph,
    pub matching: Matching,
    pub map: StretchMap,
}

/// Subdivides the matched edge of every matched `v ∈ B` and extends every free `v ∈ B`.
///
/// An edge with both ends in `B` is subdivided once.
pub fn length_stretch(ms: &MatchingSystem<'_>, hitting: &[VertexId]) -> Result<Stretched> {
    let g = ms.graph;
    let base_n = g.n();
    let mut b: Vec<VertexId> = hitting.to_vec();
    b.sort_unstable();
    b.dedup();
    if let Some(&v) = b.iter().find(|&&v| v >= base_n) {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut map = StretchMap {
        base_n,
        ..StretchMap::default()
    };
    let mut dropped = vec![false; g.m()];
    let mut next = base_n;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for &v in &b {
        match ms.matching.mate(v) {
            Some(w) => {
                let e = g.find_edge(v, w).ok_or(Error::EdgeNotInGraph(v, w))?;
                if dropped[e] {
                    continue;
                }
                dropped[e] = true;
                let (x, y) = (fresh(), fresh());
                map.subdivisions.push(Subdivision { v, w, x, y });
            }
            None => {
                let (a, b) = (fresh(), fresh());
                map.extensions.push(Extension { v, a, b });
            }
        }
    }
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| !dropped[e])
        .map(|(_, &p)| p)
        .collect();
    let mut m = ms.matching.clone();
    m.grow(next);
    for s in &map.subdivisions {
        edges.extend([(s.v, s.x), (s.x, s.y), (s.y, s.w)]);
        m.set_pair(s.v, s.x);
        m.set_pair(s.y, s.w);
    }
    for e in &map.extensions {
        edges.extend([(e.v, e.a), (e.a, e.b)]);
        m.set_pair(e.v, e.a);
    }
    let graph = Graph::new(next, edges)?;
    Ok(Stretched {
        graph,
        matching: m,
        map,
    })
}

/// Pulls a matching of the stretched graph back onto `base`.
pub fn recover(base: &Graph, stretched: &Matching, map: &StretchMap) -> Result<Matching> {
    let mut m = stretched.clone();
    for s in &map.subdivisions {
        match (m.contains(s.v, s.x), m.contains(s.y, s.w)) {
            (true, true) => {
                m.unset(s.x);
                m.unset(s.y);
                m.set_pair(s.v, s.w);
            }
            (false, false) => {
                m.unset(s.x);
                m.unset(s.y);
            }
            _ => return Err(Error::InconsistentSubdivision(s.v, s.w)),
        }
    }
    for e in &map.extensions {
        if m.contains(e.v, e.a) {
            m.unset(e.v);
        }
        m.unset(e.a);
        m.unset(e.b);
    }
    if let Some(v) = (map.base_n..m.n()).find(|&v| !m.is_free(v)) {
        return Err(Error::Internal(format!(
            "fresh vertex {v} still matched after recovery"
        )));
    }
    m.truncate(map.base_n);
    if !m.is_valid_for(base) {
        return Err(Error::Internal("recovered matching does not fit the base graph".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{augment_along, build_matching_system};

    fn p4() -> Graph {
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn p4_subdivided_at_b() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2)]).unwrap()).unwrap();
        let s = length_stretch(&ms, &[1]).unwrap();
        assert_eq!(s.graph.n(), 6);
        assert_eq!(s.graph.sorted_edges(), vec![(0, 1), (1, 4), (2, 3), (2, 5), (4, 5)]);
        assert_eq!(s.matching.pairs(), vec![(1, 4), (2, 5)]);
        let path = AlternatingPath::from_vertices(&g, vec![0, 1, 2, 3]).unwrap();
        let image = s.map.map_path(&s.graph, &path).unwrap();
        assert_eq!(image.vertices, vec![0, 1, 4, 5, 2, 3]);
        let sms = build_matching_system(&s.graph, s.matching.clone()).unwrap();
        let aug = augment_along(&sms, &[image]).unwrap();
        assert_eq!(recover(&g, &aug, &s.map).unwrap().pairs(), vec![(0, 1), (2, 3)]);
        assert_eq!(recover(&g, &s.matching, &s.map).unwrap().pairs(), vec![(1, 2)]);
    }

    #[test]
    fn free_vertex_gets_a_tail() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2)]).unwrap()).unwrap();
        let s = length_stretch(&ms, &[0]).unwrap();
        assert_eq!(s.map.extensions, vec![Extension { v: 0, a: 4, b: 5 }]);
        assert!(s.matching.contains(0, 4) && s.matching.is_free(5));
        let path = AlternatingPath::from_vertices(&g, vec![3, 2, 1, 0]).unwrap();
        let image = s.map.map_path(&s.graph, &path).unwrap();
        assert_eq!(image.vertices, vec![3, 2, 1, 0, 4, 5]);
        let sms = build_matching_system(&s.graph, s.matching.clone()).unwrap();
        let aug = augment_along(&sms, &[image]).unwrap();
        assert_eq!(recover(&g, &aug, &s.map).unwrap().pairs(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn empty_hitting_set_is_identity() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2)]).unwrap()).unwrap();
        let s = length_stretch(&ms, &[]).unwrap();
        assert!(s.map.is_identity());
        assert_eq!(s.graph, g);
        assert_eq!(recover(&g, &s.matching, &s.map).unwrap(), ms.matching);
    }

    #[test]
    fn one_sided_subdivision_is_rejected() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2)]).unwrap()).unwrap();
        let s = length_stretch(&ms, &[1, 2]).unwrap();
        assert_eq!(s.map.subdivisions.len(), 1);
        let mut bad = s.matching.clone();
        bad.unset(1);
        bad.unset(4);
        assert_eq!(recover(&g, &bad, &s.map), Err(Error::InconsistentSubdivision(1, 2)));
    }
}
