//! Alternating distances from the super free vertex.
//!
//! Rounds are processed in increasing order. A vertex joins the tree the
//! first time a neighbour can extend a path to it, which fixes its orthodox
//! distance one round later. Unorthodox distances come from non-tree edges
//! collected per shrunk subtree: once a subtree's minimum non-tree edge is
//! known, its root's unorthodox distance is `vlevel(e) - dist^α(root)`.
//! A vertex whose unorthodox distance is fixed is contracted into its parent.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MatchingSystem, Parity, VertexId};
use crate::heap::{HeapId, PairingArena};
use crate::union_find::UnionFind;

const INF: u32 = u32::MAX;
const NO_PAR: u32 = u32::MAX;
/// Parent of a free vertex: the virtual midpoint towards `f`.
const VIRTUAL: u32 = u32::MAX - 1;

/// Operation counters of one `compute_dist` run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DistOps {
    pub queue_ops: u64,
    pub heap_ops: u64,
    pub union_find_ops: u64,
    pub edge_scans: u64,
}

impl DistOps {
    pub fn total(&self) -> u64 {
        self.queue_ops + self.heap_ops + self.union_find_ops + self.edge_scans
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLevel {
    pub vlevel: u32,
    pub hlevel: u32,
    /// `n' * vlevel + hlevel`.
    pub level: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistTable {
    dist: Vec<[u32; 2]>,
    par: Vec<u32>,
    pub round_bound: Option<u32>,
    /// `n' = |V| + 3`, so every height is below `n'`.
    pub n_prime: u64,
    pub ops: DistOps,
}

impl DistTable {
    pub fn n(&self) -> usize {
        self.dist.len()
    }

    #[inline]
    pub fn dist(&self, v: VertexId, p: Parity) -> Option<u32> {
        let d = self.dist[v][p.idx()];
        (d != INF).then_some(d)
    }

    /// `α(v)`; `None` if `v` is unreachable within the bound.
    pub fn orthodox(&self, v: VertexId) -> Option<Parity> {
        let [e, o] = self.dist[v];
        match (e, o) {
            (INF, INF) => None,
            _ if e < o => Some(Parity::Even),
            _ => Some(Parity::Odd),
        }
    }

    pub fn unorthodox(&self, v: VertexId) -> Option<Parity> {
        self.orthodox(v).map(Parity::flip)
    }

    /// `dist^α(v)`.
    pub fn orthodox_dist(&self, v: VertexId) -> Option<u32> {
        self.orthodox(v).and_then(|p| self.dist(v, p))
    }

    /// `dist^β(v)`.
    pub fn unorthodox_dist(&self, v: VertexId) -> Option<u32> {
        self.unorthodox(v).and_then(|p| self.dist(v, p))
    }

    /// Tree parent chosen during the run; `None` for free and unreached vertices.
    pub fn par(&self, v: VertexId) -> Option<VertexId> {
        match self.par[v] {
            NO_PAR | VIRTUAL => None,
            p => Some(p as usize),
        }
    }

    /// `v dist_odd dist_even par` per line, infinity and missing parents as `-`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let show = |d: Option<u32>| d.map_or("-".to_string(), |d| d.to_string());
        for v in 0..self.n() {
            let _ = writeln!(
                out,
                "{v} {} {} {}",
                show(self.dist(v, Parity::Odd)),
                show(self.dist(v, Parity::Even)),
                self.par(v).map_or("-".to_string(), |p| p.to_string())
            );
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct NKey {
    level: u64,
    lo: u32,
    hi: u32,
}

struct Run<'a, 'g> {
    ms: &'a MatchingSystem<'g>,
    n_prime: u64,
    dist: Vec<[u32; 2]>,
    par: Vec<u32>,
    uf: UnionFind,
    arena: PairingArena<NKey, ()>,
    nlist: Vec<HeapId>,
    queue: BinaryHeap<Reverse<(u32, u32, u8)>>,
    queue_ops: u64,
    edge_scans: u64,
}

impl Run<'_, '_> {
    fn push(&mut self, round: u32, v: usize, p: Parity) {
        self.queue_ops += 1;
        self.queue.push(Reverse((round, v as u32, p as u8)));
    }

    /// Offers `vlevel - dist^α(s)` as the unorthodox distance of root `s`.
    fn offer(&mut self, s: usize, vol: u32) {
        let [e, o] = self.dist[s];
        if e != INF && o != INF {
            return;
        }
        let (a, da) = if e != INF { (Parity::Even, e) } else { (Parity::Odd, o) };
        debug_assert!(da != INF);
        if vol > da {
            self.push(vol - da, s, a.flip());
        }
    }

    /// Pops non-tree edges that became internal to the shrunk set of `s`.
    fn drop_self_loops(&mut self, s: usize) -> Option<NKey> {
        while let Some((k, ())) = self.arena.peek(self.nlist[s]) {
            if self.uf.find(k.lo as usize) != self.uf.find(k.hi as usize) {
                return Some(k);
            }
            self.nlist[s] = self.arena.pop(self.nlist[s]).expect("peeked").1;
        }
        None
    }

    /// An unorthodox offer is stale once its edge turned internal or a smaller one arrived.
    fn still_offered(&mut self, v: usize, da: u32, r: u32) -> bool {
        if self.uf.find(v) != v {
            return false;
        }
        match self.drop_self_loops(v) {
            Some(k) => (k.level / self.n_prime) as u32 == r + da,
            None => false,
        }
    }

    fn scan(&mut self, v: usize, r: u32, theta: Parity) {
        let g = self.ms.graph;
        for &(x, e) in g.neighbors(v) {
            self.edge_scans += 1;
            let rho = self.ms.rho(e);
            if rho != theta {
                continue;
            }
            if self.par[x] == NO_PAR {
                self.par[x] = v as u32;
                self.push(r + 1, x, theta.flip());
                continue;
            }
            let dx = self.dist[x][rho.idx()];
            if dx == INF {
                continue;
            }
            // Tree edges never enter the lists; their level can tie with real candidates.
            if self.par[x] == v as u32 || self.par[v] == x as u32 {
                continue;
            }
            let xr = self.uf.find(x);
            let vr = self.uf.find(v);
            if xr == vr {
                continue;
            }
            let vol = r + dx + 1;
            let key = NKey {
                level: self.n_prime * vol as u64 + r as u64,
                lo: v.min(x) as u32,
                hi: v.max(x) as u32,
            };
            self.nlist[vr] = self.arena.push(self.nlist[vr], key, ());
            self.nlist[xr] = self.arena.push(self.nlist[xr], key, ());
            self.offer(vr, vol);
            self.offer(xr, vol);
        }
    }

    fn contract(&mut self, v: usize) {
        let p = self.par[v] as usize;
        let root = self.uf.find(p);
        let own = self.uf.find(v);
        debug_assert_eq!(own, v);
        self.uf.union(v, p, root);
        self.nlist[root] = self.arena.meld(self.nlist[root], self.nlist[v]);
        self.nlist[v] = HeapId::EMPTY;
        if let Some(k) = self.drop_self_loops(root) {
            let vol = (k.level / self.n_prime) as u32;
            self.offer(root, vol);
        }
    }
}

/// Alternating distances of every vertex, exact up to `round_bound`.
pub fn compute_dist(ms: &MatchingSystem<'_>, round_bound: Option<u32>) -> DistTable {
    let n = ms.graph.n();
    let mut run = Run {
        ms,
        n_prime: n as u64 + 3,
        dist: vec![[INF; 2]; n],
        par: vec![NO_PAR; n],
        uf: UnionFind::new(n),
        arena: PairingArena::with_capacity(2 * ms.graph.m()),
        nlist: vec![HeapId::EMPTY; n],
        queue: BinaryHeap::new(),
        queue_ops: 0,
        edge_scans: 0,
    };
    for &u in &ms.free {
        run.par[u] = VIRTUAL;
        run.push(2, u, Parity::Even);
    }
    let mut last_round = 0;
    while let Some(Reverse((r, v, p))) = run.queue.pop() {
        run.queue_ops += 1;
        if round_bound.is_some_and(|b| r > b) {
            break;
        }
        let v = v as usize;
        let theta = if p == 0 { Parity::Even } else { Parity::Odd };
        if run.dist[v][theta.idx()] != INF {
            continue;
        }
        let other = run.dist[v][theta.flip().idx()];
        if other != INF && !run.still_offered(v, other, r) {
            continue;
        }
        debug_assert!(r >= last_round, "rounds are fixed in nondecreasing order");
        last_round = r;
        run.dist[v][theta.idx()] = r;
        run.scan(v, r, theta);
        if other != INF && run.par[v] != VIRTUAL {
            run.contract(v);
        }
    }
    let ops = DistOps {
        queue_ops: run.queue_ops,
        heap_ops: run.arena.ops,
        union_find_ops: run.uf.ops,
        edge_scans: run.edge_scans,
    };
    DistTable {
        dist: run.dist,
        par: run.par,
        round_bound,
        n_prime: run.n_prime,
        ops,
    }
}

pub fn edge_level(dt: &DistTable, ms: &MatchingSystem<'_>, e: EdgeId) -> Result<EdgeLevel> {
    let (y, z) = ms.graph.edge(e);
    let rho = ms.rho(e);
    match (dt.dist(y, rho), dt.dist(z, rho)) {
        (Some(a), Some(b)) => {
            let vlevel = a + b + 1;
            let hlevel = a.max(b);
            Ok(EdgeLevel {
                vlevel,
                hlevel,
                level: dt.n_prime * vlevel as u64 + hlevel as u64,
            })
        }
        _ => Err(Error::Undefined(e)),
    }
}

/// True iff `{u, x}` (edge `e`) ends a shortest orthodox path at `u`.
#[inline]
pub fn is_ep_edge(dt: &DistTable, ms: &MatchingSystem<'_>, u: VertexId, x: VertexId, e: EdgeId) -> bool {
    let Some(a) = dt.orthodox(u) else { return false };
    let b = a.flip();
    ms.rho(e) == b && matches!((dt.dist(x, b), dt.dist(u, a)), (Some(dx), Some(du)) if dx + 1 == du)
}

/// `EP(v)`, in adjacency order.
pub fn ep_set(dt: &DistTable, ms: &MatchingSystem<'_>, v: VertexId) -> Result<Vec<EdgeId>> {
    if dt.orthodox(v).is_none() {
        return Err(Error::NoOrthodoxPath(v));
    }
    Ok(ms
        .graph
        .neighbors(v)
        .iter()
        .filter(|&&(x, e)| is_ep_edge(dt, ms, v, x, e))
        .map(|&(_, e)| e)
        .collect())
}

/// `P(v)` in adjacency order; empty for unreachable vertices.
pub fn p_set(dt: &DistTable, ms: &MatchingSystem<'_>, v: VertexId) -> Vec<VertexId> {
    ms.graph
        .neighbors(v)
        .iter()
        .filter(|&&(x, e)| is_ep_edge(dt, ms, v, x, e))
        .map(|&(x, _)| x)
        .collect()
}

/// `ℓ` such that shortest augmenting paths have length `2ℓ + 1`.
pub fn shortest_aug_length(dt: &DistTable, ms: &MatchingSystem<'_>) -> Option<u32> {
    if ms.free.len() < 2 {
        return None;
    }
    ms.free
        .iter()
        .filter_map(|&u| dt.dist(u, Parity::Odd))
        .min()
        .map(|d| (d - 3) / 2)
}
