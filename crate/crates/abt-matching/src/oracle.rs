//! Exhaustive ground truth for small instances.
//!
//! Nothing here touches the distance engine. Every search walks simple paths
//! explicitly, so costs are exponential and guarded by size caps.

use crate::error::{Error, Result};
use crate::graph::{AlternatingPath, Graph, Matching, MatchingSystem, Parity, VertexId};

pub const MAX_PATH_N: usize = 14;
pub const MAX_BFS_N: usize = 8;
pub const MAX_MATCHING_N: usize = 20;

/// Alternating distances from the super free vertex; `None` is infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleDistTable {
    pub dist: Vec<[Option<u32>; 2]>,
}

impl OracleDistTable {
    pub fn get(&self, v: VertexId, p: Parity) -> Option<u32> {
        self.dist[v][p.idx()]
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

fn edge_parity(m: &Matching, u: VertexId, v: VertexId) -> Parity {
    if m.contains(u, v) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Distances by depth-first enumeration of every simple alternating path.
pub fn enumerate_alternating_dists(ms: &MatchingSystem<'_>) -> Result<OracleDistTable> {
    let g = ms.graph;
    guard(g.n(), MAX_PATH_N)?;
    let mut dist = vec![[None; 2]; g.n()];
    for &u in &ms.free {
        dfs_dists(g, &ms.matching, u, Parity::Even, 2, 1u64 << u, &mut dist);
    }
    Ok(OracleDistTable { dist })
}

fn dfs_dists(g: &Graph, m: &Matching, v: VertexId, theta: Parity, len: u32, seen: u64, dist: &mut [[Option<u32>; 2]]) {
    let slot = &mut dist[v][theta.idx()];
    if slot.is_none_or(|d| len < d) {
        *slot = Some(len);
    }
    for &(x, _) in g.neighbors(v) {
        if seen & (1 << x) == 0 && edge_parity(m, v, x) == theta {
            dfs_dists(g, m, x, theta.flip(), len + 1, seen | (1 << x), dist);
        }
    }
}

/// Distances by breadth-first search over `(vertex, parity, visited set)`.
pub fn bfs_alternating_dists(ms: &MatchingSystem<'_>) -> Result<OracleDistTable> {
    let g = ms.graph;
    guard(g.n(), MAX_BFS_N)?;
    let n = g.n();
    let mut dist = vec![[None; 2]; n];
    let mut seen_state = vec![false; (n * 2) << n];
    let idx = |v: usize, p: Parity, mask: u64| ((mask as usize) * n + v) * 2 + p.idx();
    let mut frontier: Vec<(usize, Parity, u64)> = Vec::new();
    for &u in &ms.free {
        let s = (u, Parity::Even, 1u64 << u);
        seen_state[idx(s.0, s.1, s.2)] = true;
        frontier.push(s);
    }
    let mut len = 2u32;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &(v, p, mask) in &frontier {
            if dist[v][p.idx()].is_none() {
                dist[v][p.idx()] = Some(len);
            }
            for x in 0..n {
                if mask & (1 << x) != 0 || g.find_edge(v, x).is_none() {
                    continue;
                }
                if edge_parity(&ms.matching, v, x) != p {
                    continue;
                }
                let s = (x, p.flip(), mask | (1 << x));
                let k = idx(s.0, s.1, s.2);
                if !seen_state[k] {
                    seen_state[k] = true;
                    next.push(s);
                }
            }
        }
        frontier = next;
        len += 1;
    }
    Ok(OracleDistTable { dist })
}

/// Maximum matching by branch and bound on the lowest undecided vertex.
pub fn brute_max_matching(graph: &Graph) -> Result<(usize, Matching)> {
    guard(graph.n(), MAX_MATCHING_N)?;
    let mut cur = Vec::new();
    let mut best = None;
    bb(graph, 0, &mut cur, &mut best);
    let best = best.unwrap_or_default();
    let m = Matching::from_pairs(graph, &best)?;
    Ok((best.len(), m))
}

/// `decided` has a bit for every vertex already matched or skipped.
fn bb(g: &Graph, decided: u32, cur: &mut Vec<(VertexId, VertexId)>, best: &mut Option<Vec<(VertexId, VertexId)>>) {
    let n = g.n();
    let open = (n as u32 - decided.count_ones()) as usize;
    if best.as_ref().is_some_and(|b| cur.len() + open / 2 <= b.len()) {
        return;
    }
    let Some(v) = (0..n).find(|&x| decided & (1 << x) == 0) else {
        *best = Some(cur.clone());
        return;
    };
    for &(x, _) in g.neighbors(v) {
        if decided & (1 << x) == 0 {
            cur.push((v, x));
            bb(g, decided | (1 << v) | (1 << x), cur, best);
            cur.pop();
        }
    }
    bb(g, decided | (1 << v), cur, best);
}

/// Every shortest augmenting path, smaller endpoint first, sorted.
pub fn all_shortest_aug_paths(ms: &MatchingSystem<'_>) -> Result<Vec<AlternatingPath>> {
    let g = ms.graph;
    guard(g.n(), MAX_PATH_N)?;
    let mut best = u32::MAX;
    let mut found: Vec<Vec<VertexId>> = Vec::new();
    let mut stack = Vec::new();
    for &u in &ms.free {
        stack.clear();
        stack.push(u);
        dfs_aug(ms, u, Parity::Even, 1u64 << u, &mut stack, &mut best, &mut found);
    }
    let mut out: Vec<AlternatingPath> = found
        .into_iter()
        .filter(|p| p.first() < p.last())
        .map(|p| AlternatingPath::from_vertices(g, p).expect("walked along edges"))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn dfs_aug(
    ms: &MatchingSystem<'_>,
    v: VertexId,
    theta: Parity,
    seen: u64,
    stack: &mut Vec<VertexId>,
    best: &mut u32,
    found: &mut Vec<Vec<VertexId>>,
) {
    let len = (stack.len() - 1) as u32;
    if len > *best {
        return;
    }
    if len > 0 && theta == Parity::Odd && ms.is_free(v) {
        if len < *best {
            *best = len;
            found.clear();
        }
        found.push(stack.clone());
        return;
    }
    if len >= *best {
        return;
    }
    for &(x, _) in ms.graph.neighbors(v) {
        if seen & (1 << x) == 0 && edge_parity(&ms.matching, v, x) == theta {
            stack.push(x);
            dfs_aug(ms, x, theta.flip(), seen | (1 << x), stack, best, found);
            stack.pop();
        }
    }
}

/// True iff `paths` is a maximal vertex-disjoint set of shortest augmenting paths.
pub fn is_maximal_disjoint_shortest_set(ms: &MatchingSystem<'_>, paths: &[AlternatingPath]) -> Result<bool> {
    let all = all_shortest_aug_paths(ms)?;
    let mut used = vec![false; ms.graph.n()];
    for p in paths {
        if !all.contains(&p.canonical()) {
            return Ok(false);
        }
        for &v in &p.vertices {
            if used[v] {
                return Ok(false);
            }
            used[v] = true;
        }
    }
    Ok(all.iter().all(|q| q.vertices.iter().any(|&v| used[v])))
}

pub const MAX_BLOSSOM_N: usize = 2000;

/// Maximum matching size by the textbook blossom search, one BFS per free vertex.
///
/// Shares nothing with the phase engine and runs in `O(n³)`.
pub fn blossom_max_matching(graph: &Graph) -> Result<(usize, Matching)> {
    let n = graph.n();
    guard(n, MAX_BLOSSOM_N)?;
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];
    let mut p = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];
    let mut queue = std::collections::VecDeque::new();

    fn lca(mate: &[usize], base: &[usize], p: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = p[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = p[mate[b]];
        }
    }

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        p: &mut [usize],
        blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            p[v] = child;
            child = mate[v];
            v = p[mate[v]];
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        used.iter_mut().for_each(|x| *x = false);
        p.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        queue.clear();
        queue.push_back(root);
        let mut end = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for &(to, _) in graph.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && p[mate[to]] != NONE) {
                    let cur = lca(&mate, &base, &p, v, to);
                    blossom.iter_mut().for_each(|x| *x = false);
                    mark_path(&mate, &base, &mut p, &mut blossom, v, cur, to);
                    mark_path(&mate, &base, &mut p, &mut blossom, to, cur, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if p[to] == NONE {
                    p[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        let mut v = end;
        while v != NONE {
            let pv = p[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    let m = Matching::from_pairs(graph, &pairs)?;
    Ok((pairs.len(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_matching_system;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;

    fn p4() -> Graph {
        Graph::new(4, vec![(A, B), (B, C), (C, D)]).unwrap()
    }

    /// u=0, a=1, b=2, c=3, d=4.
    fn c5() -> Graph {
        Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn table(t: &OracleDistTable) -> Vec<(Option<u32>, Option<u32>)> {
        t.dist
            .iter()
            .map(|d| (d[Parity::Odd.idx()], d[Parity::Even.idx()]))
            .collect()
    }

    #[test]
    fn p4_distances() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(B, C)]).unwrap()).unwrap();
        let t = enumerate_alternating_dists(&ms).unwrap();
        assert_eq!(
            table(&t),
            vec![
                (Some(5), Some(2)),
                (Some(3), Some(4)),
                (Some(3), Some(4)),
                (Some(5), Some(2))
            ]
        );
        assert_eq!(bfs_alternating_dists(&ms).unwrap(), t);
    }

    #[test]
    fn c5_distances() {
        let g = c5();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2), (3, 4)]).unwrap()).unwrap();
        let t = enumerate_alternating_dists(&ms).unwrap();
        assert_eq!(
            table(&t),
            vec![
                (None, Some(2)),
                (Some(3), Some(6)),
                (Some(5), Some(4)),
                (Some(5), Some(4)),
                (Some(3), Some(6)),
            ]
        );
        assert_eq!(bfs_alternating_dists(&ms).unwrap(), t);
    }

    #[test]
    fn single_edge_and_isolated_vertex() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let ms = build_matching_system(&g, Matching::empty(2)).unwrap();
        let t = enumerate_alternating_dists(&ms).unwrap();
        assert_eq!(table(&t), vec![(Some(3), Some(2)); 2]);

        let g = Graph::empty(1);
        let ms = build_matching_system(&g, Matching::empty(1)).unwrap();
        assert_eq!(table(&enumerate_alternating_dists(&ms).unwrap()), vec![(None, Some(2))]);
    }

    #[test]
    fn brute_sizes() {
        assert_eq!(brute_max_matching(&p4()).unwrap().0, 2);
        assert_eq!(brute_max_matching(&c5()).unwrap().0, 2);
        assert_eq!(brute_max_matching(&Graph::empty(4)).unwrap().0, 0);
        let (s, m) = brute_max_matching(&c5()).unwrap();
        assert!(m.is_valid_for(&c5()));
        assert_eq!(m.size(), s);
    }

    #[test]
    fn shortest_aug_paths() {
        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(B, C)]).unwrap()).unwrap();
        let all = all_shortest_aug_paths(&ms).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vertices, vec![A, B, C, D]);

        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let ms = build_matching_system(&g, Matching::empty(2)).unwrap();
        assert_eq!(all_shortest_aug_paths(&ms).unwrap()[0].vertices, vec![0, 1]);

        let g = c5();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(1, 2), (3, 4)]).unwrap()).unwrap();
        assert!(all_shortest_aug_paths(&ms).unwrap().is_empty());
        assert!(is_maximal_disjoint_shortest_set(&ms, &[]).unwrap());
    }

    #[test]
    fn maximality_of_two_p4s() {
        let g = Graph::new(8, vec![(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]).unwrap();
        let m = Matching::from_pairs(&g, &[(1, 2), (5, 6)]).unwrap();
        let ms = build_matching_system(&g, m).unwrap();
        let all = all_shortest_aug_paths(&ms).unwrap();
        assert_eq!(all.len(), 2);
        assert!(!is_maximal_disjoint_shortest_set(&ms, &all[..1]).unwrap());
        assert!(is_maximal_disjoint_shortest_set(&ms, &all).unwrap());

        let g = p4();
        let ms = build_matching_system(&g, Matching::from_pairs(&g, &[(B, C)]).unwrap()).unwrap();
        let p = AlternatingPath::from_vertices(&g, vec![A, B, C, D]).unwrap();
        assert!(is_maximal_disjoint_shortest_set(&ms, &[p]).unwrap());
    }

    #[test]
    fn blossom_agrees_with_brute_force() {
        let c5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(blossom_max_matching(&c5).unwrap().0, 2);
        assert_eq!(blossom_max_matching(&p4()).unwrap().0, 2);
        assert_eq!(blossom_max_matching(&Graph::empty(0)).unwrap().0, 0);
        let mut r = crate::gen::rng(3);
        for i in 0..400 {
            let g = crate::gen::gnp(&mut r, 2 + i % 15, 0.3);
            assert_eq!(
                blossom_max_matching(&g).unwrap().0,
                brute_max_matching(&g).unwrap().0,
                "{:?}",
                g.edges()
            );
        }
    }

    #[test]
    fn too_large_is_rejected() {
        let g = Graph::empty(15);
        let ms = build_matching_system(&g, Matching::empty(15)).unwrap();
        assert_eq!(
            enumerate_alternating_dists(&ms),
            Err(Error::TooLarge { n: 15, limit: 14 })
        );
    }
}
