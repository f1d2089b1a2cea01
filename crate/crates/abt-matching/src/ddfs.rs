//! Double depth-first search over a working copy of the base DAG.
//!
//! Each run starts two searches, one from `y` and one from `z`. The search
//! whose head has the larger `phi` moves, and `y` moves on ties. A head
//! claims only unclaimed vertices and backtracks only after every out-edge
//! of its vertex is spent. A side stuck at its floor steals the other
//! head's vertex, which becomes its new floor. A run ends in one of two
//! ways:
//!
//! * Both heads reach distinct sinks. Every claimed vertex is then removed,
//!   followed by the vertices left without a live out-edge.
//! * One side is stuck while the other head sits on its own floor `v`.
//!   Every claimed vertex then reaches a sink only through `v`, so all of
//!   them are shrunk into `v`.
//!
//! Every claimed vertex except the open stack segments is fully scanned,
//! and both outcomes rely on that. A stuck side may own no predecessor of
//! the other head. In that case the run is rolled back and answered by an
//! exact two-path search.

use std::collections::{HashMap, HashSet};

use crate::abd::{Abd, CandidateEdge};
use crate::abt::DoublePath;
use crate::graph::{Graph, VertexId};
use crate::union_find::UnionFind;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Y,
    Z,
}

impl Side {
    fn of(i: usize) -> Side {
        if i == 0 {
            Side::Y
        } else {
            Side::Z
        }
    }
}

/// Vertices in events are shrunk-set representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DdfsEvent {
    Advance {
        side: Side,
        from: VertexId,
        to: VertexId,
    },
    Backtrack {
        side: Side,
        from: VertexId,
    },
    Steal {
        side: Side,
        vertex: VertexId,
    },
    Bottleneck {
        vertex: VertexId,
    },
    Success,
    /// No predecessor of the other head was found; the exact search answers instead.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DdfsOutcome {
    /// `p` from `y` and `q` from `z`, both real base-DAG paths ending at sinks.
    /// `omissible` lists the real vertices removed by the run itself.
    Success {
        p: Vec<VertexId>,
        q: Vec<VertexId>,
        omissible: Vec<VertexId>,
    },
    /// `shrunk` lists the real vertices merged into `vertex`.
    Bottleneck { vertex: VertexId, shrunk: Vec<VertexId> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DdfsStats {
    pub runs: u64,
    pub successes: u64,
    pub bottlenecks: u64,
    pub fallbacks: u64,
    /// Candidates dropped because an endpoint was gone or both shared a set.
    pub skipped: u64,
    /// Edge inspections, counting pointer scans, predecessor lookups and pruning.
    pub visited_edges: u64,
}

enum Lockstep {
    Success([Vec<u32>; 2]),
    Bottleneck(usize),
    Anomaly,
}

/// The base DAG under removals and bottleneck shrinking.
///
/// A shrunk set is named by its representative, the bottleneck it was
/// shrunk into. Its out-edges are the representative's own edges; the other
/// members only have edges into the set.
#[derive(Debug, Clone)]
pub struct WorkingDag {
    phi: Vec<u32>,
    sink: Vec<bool>,
    out_start: Vec<usize>,
    out_adj: Vec<u32>,
    in_start: Vec<usize>,
    in_adj: Vec<u32>,
    removed: Vec<bool>,
    uf: UnionFind,
    mem_next: Vec<u32>,
    mem_tail: Vec<u32>,
    /// Every out-edge before `ptr[v]` is dead, or targets a vertex claimed by the current run.
    ptr: Vec<usize>,
    /// A real out-neighbour one step closer to the representative.
    toward: Vec<u32>,
    owner: Vec<u8>,
    stamp: Vec<u32>,
    tpar: Vec<u32>,
    entry: Vec<u32>,
    saved_ptr: Vec<usize>,
    seen: [Vec<(u32, u32)>; 2],
    claimed: Vec<u32>,
    pub stats: DdfsStats,
    trace: Option<Vec<DdfsEvent>>,
    exact_only: bool,
}

impl WorkingDag {
    pub fn new(h: &Abd) -> WorkingDag {
        let n = h.n();
        let mut out_start = vec![0usize; n + 1];
        let mut in_start = vec![0usize; n + 1];
        for (u, v) in h.edges() {
            out_start[u + 1] += 1;
            in_start[v + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
            in_start[v + 1] += in_start[v];
        }
        let mut out_adj = Vec::with_capacity(out_start[n]);
        let mut in_adj = vec![0u32; in_start[n]];
        let mut fill = in_start.clone();
        for u in 0..n {
            for &v in h.out(u) {
                out_adj.push(v as u32);
                in_adj[fill[v]] = u as u32;
                fill[v] += 1;
            }
        }
        WorkingDag {
            phi: h.phi.clone(),
            sink: h.sink.clone(),
            ptr: out_start[..n].to_vec(),
            out_start,
            out_adj,
            in_start,
            in_adj,
            removed: h.present.iter().map(|&p| !p).collect(),
            uf: UnionFind::new(n),
            mem_next: vec![NONE; n],
            mem_tail: (0..n as u32).collect(),
            toward: vec![NONE; n],
            owner: vec![0; n],
            stamp: vec![0; n],
            tpar: vec![NONE; n],
            entry: vec![NONE; n],
            saved_ptr: vec![0; n],
            seen: [vec![(NONE, NONE); n], vec![(NONE, NONE); n]],
            claimed: Vec::new(),
            stats: DdfsStats::default(),
            trace: None,
            exact_only: false,
        }
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Starts recording events; `take_trace` returns and clears them.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<DdfsEvent> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    /// Answers every run with the exact two-path search instead of the
    /// double DFS. Kept as a reference route for tests.
    pub fn use_exact_search(&mut self, on: bool) {
        self.exact_only = on;
    }

    pub fn is_removed(&self, v: VertexId) -> bool {
        self.removed[v]
    }

    pub fn rep(&mut self, v: VertexId) -> VertexId {
        self.uf.find(v)
    }

    fn log(&mut self, ev: DdfsEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(ev);
        }
    }

    fn out_end(&self, s: usize) -> usize {
        self.out_start[s + 1]
    }

    /// The set reached by the real edge `s -> x`, unless the edge is dead.
    fn live_target(&mut self, s: usize, x: usize) -> Option<usize> {
        if self.removed[x] {
            return None;
        }
        let c = self.uf.find(x);
        (c != s).then_some(c)
    }

    fn members(&self, s: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut c = s as u32;
        while c != NONE {
            out.push(c as usize);
            c = self.mem_next[c as usize];
        }
        out
    }

    fn has_live_out(&mut self, s: usize) -> bool {
        while self.ptr[s] < self.out_end(s) {
            let x = self.out_adj[self.ptr[s]] as usize;
            self.stats.visited_edges += 1;
            if self.live_target(s, x).is_some() {
                return true;
            }
            self.ptr[s] += 1;
        }
        false
    }

    /// Removes whole sets, then every set left without a live out-edge.
    fn remove_and_prune(&mut self, sets: &[usize]) {
        let mut work = Vec::new();
        for &s in sets {
            for m in self.members(s) {
                self.removed[m] = true;
                work.push(m);
            }
        }
        while let Some(x) = work.pop() {
            for i in self.in_start[x]..self.in_start[x + 1] {
                let a = self.in_adj[i] as usize;
                self.stats.visited_edges += 1;
                if self.removed[a] {
                    continue;
                }
                let s = self.uf.find(a);
                if self.sink[s] || self.has_live_out(s) {
                    continue;
                }
                for m in self.members(s) {
                    self.removed[m] = true;
                    work.push(m);
                }
            }
        }
    }

    /// Merges `sets` into `v`. Every live out-edge of each set must lead into `sets ∪ {v}`.
    fn shrink(&mut self, sets: &[usize], v: usize) {
        for &w in sets {
            let mut to = NONE;
            for i in self.out_start[w]..self.out_end(w) {
                let x = self.out_adj[i] as usize;
                self.stats.visited_edges += 1;
                if self.live_target(w, x).is_some() {
                    to = x as u32;
                    break;
                }
            }
            debug_assert!(to != NONE, "shrunk vertex {w} has no live out-edge");
            self.toward[w] = to;
        }
        for &w in sets {
            self.uf.union(w, v, v);
            let tail = self.mem_tail[v] as usize;
            self.mem_next[tail] = w as u32;
            self.mem_tail[v] = self.mem_tail[w];
        }
    }

    /// Real path from `x` up to the representative of its set.
    fn climb(&mut self, x: usize, out: &mut Vec<VertexId>) {
        let s = self.uf.find(x);
        let mut c = x;
        out.push(c);
        while c != s {
            c = self.toward[c] as usize;
            out.push(c);
        }
    }

    fn expand(&mut self, seq: &[(usize, usize)]) -> Vec<VertexId> {
        let mut out = Vec::new();
        for &(_, e) in seq {
            self.climb(e, &mut out);
        }
        out
    }

    fn real_members(&self, sets: &[usize]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = sets.iter().flat_map(|&s| self.members(s)).collect();
        out.sort_unstable();
        out
    }

    fn claim(&mut self, c: usize, side: usize, from: u32, entry: usize, clock: &mut u32) {
        self.owner[c] = side as u8 + 1;
        self.stamp[c] = *clock;
        *clock += 1;
        self.tpar[c] = from;
        self.entry[c] = entry as u32;
        self.saved_ptr[c] = self.ptr[c];
        self.claimed.push(c as u32);
    }

    fn reset_scratch(&mut self, rollback: bool) {
        for &c in &self.claimed {
            let c = c as usize;
            if rollback {
                self.ptr[c] = self.saved_ptr[c];
            }
            self.owner[c] = 0;
            self.tpar[c] = NONE;
            self.entry[c] = NONE;
            self.seen[0][c] = (NONE, NONE);
            self.seen[1][c] = (NONE, NONE);
        }
        self.claimed.clear();
    }

    /// Runs one double DFS from the sets of `y` and `z` and applies its outcome.
    ///
    /// Returns `None` when an endpoint is removed or both share a set.
    pub fn ddfs_once(&mut self, y: VertexId, z: VertexId) -> Option<DdfsOutcome> {
        if self.removed[y] || self.removed[z] {
            self.stats.skipped += 1;
            return None;
        }
        let (ys, zs) = (self.uf.find(y), self.uf.find(z));
        if ys == zs {
            self.stats.skipped += 1;
            return None;
        }
        self.stats.runs += 1;
        if self.exact_only {
            return Some(self.exact(ys, y, zs, z));
        }
        let out = match self.lockstep(ys, y, zs, z) {
            Lockstep::Success(stacks) => {
                self.log(DdfsEvent::Success);
                let seqs: Vec<Vec<(usize, usize)>> = stacks
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&c| (c as usize, self.entry[c as usize] as usize))
                            .collect()
                    })
                    .collect();
                let p = self.expand(&seqs[0]);
                let q = self.expand(&seqs[1]);
                let sets: Vec<usize> = self.claimed.iter().map(|&c| c as usize).collect();
                self.reset_scratch(false);
                let omissible = self.real_members(&sets);
                self.remove_and_prune(&sets);
                self.stats.successes += 1;
                DdfsOutcome::Success { p, q, omissible }
            }
            Lockstep::Bottleneck(v) => {
                self.log(DdfsEvent::Bottleneck { vertex: v });
                let sets: Vec<usize> = self.claimed.iter().map(|&c| c as usize).filter(|&c| c != v).collect();
                self.reset_scratch(false);
                let shrunk = self.real_members(&sets);
                self.shrink(&sets, v);
                self.stats.bottlenecks += 1;
                DdfsOutcome::Bottleneck { vertex: v, shrunk }
            }
            Lockstep::Anomaly => {
                self.log(DdfsEvent::Fallback);
                self.reset_scratch(true);
                self.stats.fallbacks += 1;
                self.exact(ys, y, zs, z)
            }
        };
        Some(out)
    }

    fn lockstep(&mut self, ys: usize, y: usize, zs: usize, z: usize) -> Lockstep {
        let mut clock = 0u32;
        let mut stacks: [Vec<u32>; 2] = [vec![ys as u32], vec![zs as u32]];
        let mut floor = [0usize; 2];
        // Claim-stamp intervals of subtrees lost to the other side.
        let mut lost: [Vec<(u32, u32)>; 2] = [Vec::new(), Vec::new()];
        self.claim(ys, 0, NONE, y, &mut clock);
        self.claim(zs, 1, NONE, z, &mut clock);
        loop {
            let hy = *stacks[0].last().expect("nonempty") as usize;
            let hz = *stacks[1].last().expect("nonempty") as usize;
            if self.sink[hy] && self.sink[hz] {
                return Lockstep::Success(stacks);
            }
            let x = if self.sink[hy] {
                1
            } else if self.sink[hz] || self.phi[hy] >= self.phi[hz] {
                0
            } else {
                1
            };
            let o = 1 - x;
            let h = if x == 0 { hy } else { hz };

            let mut next = None;
            while self.ptr[h] < self.out_end(h) {
                let xr = self.out_adj[self.ptr[h]] as usize;
                self.ptr[h] += 1;
                self.stats.visited_edges += 1;
                let Some(c) = self.live_target(h, xr) else { continue };
                match self.owner[c] {
                    0 => {
                        next = Some((c, xr));
                        break;
                    }
                    w if w as usize == o + 1 => self.seen[x][c] = (h as u32, xr as u32),
                    _ => {}
                }
            }
            if let Some((c, xr)) = next {
                self.claim(c, x, h as u32, xr, &mut clock);
                stacks[x].push(c as u32);
                self.log(DdfsEvent::Advance {
                    side: Side::of(x),
                    from: h,
                    to: c,
                });
                continue;
            }
            if stacks[x].len() - 1 > floor[x] {
                stacks[x].pop();
                self.log(DdfsEvent::Backtrack {
                    side: Side::of(x),
                    from: h,
                });
                continue;
            }

            let v = *stacks[o].last().expect("nonempty") as usize;
            if stacks[o].len() - 1 == floor[o] {
                return Lockstep::Bottleneck(v);
            }
            let fx = stacks[x][floor[x]] as usize;
            let valid = |me: &WorkingDag, b: usize| {
                me.owner[b] as usize == x + 1
                    && me.stamp[b] >= me.stamp[fx]
                    && !lost[x].iter().any(|&(lo, hi)| (lo..hi).contains(&me.stamp[b]))
            };
            let (sb, sx) = self.seen[x][v];
            let mut pick = (sb != NONE && valid(self, sb as usize)).then_some((sb as usize, sx as usize));
            if pick.is_none() {
                'scan: for m in self.members(v) {
                    for i in self.in_start[m]..self.in_start[m + 1] {
                        let a = self.in_adj[i] as usize;
                        self.stats.visited_edges += 1;
                        if !self.removed[a] && self.uf.find(a) == a && valid(self, a) {
                            pick = Some((a, m));
                            break 'scan;
                        }
                    }
                }
            }
            let Some((b, xr)) = pick else { return Lockstep::Anomaly };

            stacks[o].pop();
            lost[o].push((self.stamp[v], clock));
            let mut path = Vec::new();
            let mut u = b;
            while u != fx {
                path.push(u as u32);
                u = self.tpar[u] as usize;
            }
            path.reverse();
            stacks[x].extend(path);
            self.owner[v] = x as u8 + 1;
            self.tpar[v] = b as u32;
            self.entry[v] = xr as u32;
            self.stamp[v] = clock;
            clock += 1;
            stacks[x].push(v as u32);
            floor[x] = stacks[x].len() - 1;
            self.log(DdfsEvent::Steal {
                side: Side::of(x),
                vertex: v,
            });
        }
    }

    /// Exact answer by one augmentation in the vertex-split residual network.
    ///
    /// The first path is a plain DFS from `ys` that avoids `zs`; the second is a
    /// residual DFS from `zs`. On failure the residual-reachable vertices are
    /// shrunk into the single saturated cut vertex. On success only the two
    /// paths are removed, then pruned.
    fn exact(&mut self, ys: usize, y: usize, zs: usize, z: usize) -> DdfsOutcome {
        let mut seen: HashSet<usize> = HashSet::from([ys]);
        let mut cur: HashMap<usize, usize> = HashMap::new();
        let mut first: Vec<(usize, usize)> = vec![(ys, y)];
        while let Some(&(h, _)) = first.last() {
            if self.sink[h] {
                break;
            }
            let mut c = *cur.entry(h).or_insert(self.ptr[h]);
            let mut next = None;
            while c < self.out_end(h) {
                let xr = self.out_adj[c] as usize;
                c += 1;
                self.stats.visited_edges += 1;
                if let Some(t) = self.live_target(h, xr) {
                    if t != zs && !seen.contains(&t) {
                        next = Some((t, xr));
                        break;
                    }
                }
            }
            cur.insert(h, c);
            match next {
                Some((t, xr)) => {
                    seen.insert(t);
                    first.push((t, xr));
                }
                None => {
                    first.pop();
                }
            }
        }
        if first.is_empty() {
            self.log(DdfsEvent::Bottleneck { vertex: zs });
            let mut sets: Vec<usize> = seen.into_iter().collect();
            sets.sort_unstable();
            let shrunk = self.real_members(&sets);
            self.shrink(&sets, zs);
            self.stats.bottlenecks += 1;
            return DdfsOutcome::Bottleneck { vertex: zs, shrunk };
        }

        if self.sink[zs] {
            return self.finish_exact(&first, &[(zs, z)]);
        }
        let pos: HashMap<usize, usize> = first.iter().enumerate().map(|(i, &(s, _))| (s, i)).collect();
        // Nodes are (set, side) with side 0 = in, 1 = out.
        type Node = (usize, u8);
        let mut parent: HashMap<Node, (Node, usize)> = HashMap::new();
        let mut visited: HashSet<Node> = HashSet::from([(zs, 1)]);
        let mut dfs: Vec<(Node, usize, bool)> = vec![((zs, 1), usize::MAX, false)];
        let mut found: Option<(Node, usize, usize)> = None;
        while let Some(top) = dfs.last_mut() {
            let (node, _, _) = *top;
            let mut next: Option<(Node, usize)> = None;
            if node.1 == 1 {
                let s = node.0;
                if top.1 == usize::MAX {
                    top.1 = self.ptr[s];
                }
                while top.1 < self.out_start[s + 1] {
                    let xr = self.out_adj[top.1] as usize;
                    top.1 += 1;
                    self.stats.visited_edges += 1;
                    let Some(t) = self.live_target(s, xr) else { continue };
                    let nd = if pos.contains_key(&t) {
                        (t, 0)
                    } else if self.sink[t] {
                        found = Some((node, t, xr));
                        break;
                    } else {
                        (t, 1)
                    };
                    if !visited.contains(&nd) {
                        next = Some((nd, xr));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
                if next.is_none() && !top.2 && pos.contains_key(&s) {
                    top.2 = true;
                    if !visited.contains(&(s, 0)) {
                        next = Some(((s, 0), NONE as usize));
                    }
                }
            } else if !top.2 {
                top.2 = true;
                let i = pos[&node.0];
                if i > 0 && !visited.contains(&(first[i - 1].0, 1)) {
                    next = Some(((first[i - 1].0, 1), NONE as usize));
                }
            }
            match next {
                Some((nd, xr)) => {
                    visited.insert(nd);
                    parent.insert(nd, (node, xr));
                    dfs.push((nd, usize::MAX, false));
                }
                None => {
                    dfs.pop();
                }
            }
        }

        let Some((last, t, txr)) = found else {
            let cut: Vec<usize> = first
                .iter()
                .map(|&(s, _)| s)
                .filter(|&s| visited.contains(&(s, 0)) && !visited.contains(&(s, 1)))
                .collect();
            debug_assert_eq!(cut.len(), 1, "residual cut must be one vertex");
            let v = cut[0];
            self.log(DdfsEvent::Bottleneck { vertex: v });
            let mut sets: Vec<usize> = visited.iter().filter(|nd| nd.1 == 1).map(|nd| nd.0).collect();
            sets.sort_unstable();
            let shrunk = self.real_members(&sets);
            self.shrink(&sets, v);
            self.stats.bottlenecks += 1;
            return DdfsOutcome::Bottleneck { vertex: v, shrunk };
        };

        let mut moves: Vec<(Node, Node, usize)> = vec![(last, (t, 1), txr)];
        let mut nd = last;
        while let Some(&(pn, xr)) = parent.get(&nd) {
            moves.push((pn, nd, xr));
            nd = pn;
        }
        moves.reverse();
        let mut succ: HashMap<usize, (usize, usize)> = first.windows(2).map(|w| (w[0].0, w[1])).collect();
        for (from, to, xr) in moves {
            match (from.1, to.1) {
                (1, _) if from.0 != to.0 => {
                    let prev = succ.insert(from.0, (to.0, xr));
                    debug_assert!(prev.is_none(), "forward move from a still-used vertex");
                }
                (0, 1) => {
                    let prev = succ.remove(&to.0);
                    debug_assert_eq!(prev.map(|p| p.0), Some(from.0));
                }
                _ => {}
            }
        }
        let walk = |start: (usize, usize)| {
            let mut seq = vec![start];
            while let Some(&nx) = succ.get(&seq.last().expect("nonempty").0) {
                seq.push(nx);
            }
            seq
        };
        let ps = walk((ys, y));
        let qs = walk((zs, z));
        self.finish_exact(&ps, &qs)
    }

    fn finish_exact(&mut self, ps: &[(usize, usize)], qs: &[(usize, usize)]) -> DdfsOutcome {
        debug_assert!(self.sink[ps.last().expect("nonempty").0] && self.sink[qs.last().expect("nonempty").0]);
        self.log(DdfsEvent::Success);
        let p = self.expand(ps);
        let q = self.expand(qs);
        let sets: Vec<usize> = ps.iter().chain(qs).map(|&(s, _)| s).collect();
        let omissible = self.real_members(&sets);
        self.remove_and_prune(&sets);
        self.stats.successes += 1;
        DdfsOutcome::Success { p, q, omissible }
    }

    /// Every live non-sink set keeps a live out-edge, and no pointer has
    /// passed a live edge.
    pub fn check_invariant(&mut self) -> bool {
        for s in 0..self.n() {
            if self.removed[s] || self.uf.find(s) != s {
                continue;
            }
            let mut any = false;
            for i in self.out_start[s]..self.out_end(s) {
                let live = self.live_target(s, self.out_adj[i] as usize).is_some();
                if live && i < self.ptr[s] {
                    return false;
                }
                any |= live;
            }
            if !any && !self.sink[s] {
                return false;
            }
        }
        true
    }
}

/// Runs the double DFS on every candidate in order and collects the double paths found.
pub fn maximal_double_paths(h: &Abd, g: &Graph, candidates: &[CandidateEdge]) -> (Vec<DoublePath>, DdfsStats) {
    let mut w = WorkingDag::new(h);
    let mut out = Vec::new();
    for c in candidates {
        let (y, z) = g.edge(c.edge);
        if let Some(DdfsOutcome::Success { p, q, .. }) = w.ddfs_once(y, z) {
            out.push(DoublePath {
                p,
                q,
                y,
                z,
                edge: c.edge,
            });
        }
    }
    (out, w.stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag(phi: &[u32], sinks: &[usize], edges: &[(usize, usize)]) -> WorkingDag {
        let mut sink = vec![false; phi.len()];
        for &s in sinks {
            sink[s] = true;
        }
        WorkingDag::new(&Abd::from_parts(phi.to_vec(), sink, edges))
    }

    #[test]
    fn p4_success_removes_everything() {
        // a=0 b=1 c=2 d=3, edges b->a and c->d.
        let mut w = dag(&[2, 3, 3, 2], &[0, 3], &[(1, 0), (2, 3)]);
        let out = w.ddfs_once(1, 2).unwrap();
        assert_eq!(
            out,
            DdfsOutcome::Success {
                p: vec![1, 0],
                q: vec![2, 3],
                omissible: vec![0, 1, 2, 3]
            }
        );
        assert!((0..4).all(|v| w.is_removed(v)));
    }

    #[test]
    fn shared_vertex_is_a_bottleneck() {
        // y=0 z=1 x=2 u=3: y->x, z->x, x->u.
        let mut w = dag(&[5, 5, 4, 2], &[3], &[(0, 2), (1, 2), (2, 3)]);
        w.enable_trace();
        let out = w.ddfs_once(0, 1).unwrap();
        assert_eq!(
            out,
            DdfsOutcome::Bottleneck {
                vertex: 2,
                shrunk: vec![0, 1]
            }
        );
        assert_eq!(w.rep(0), 2);
        assert_eq!(w.rep(1), 2);
        let t = w.take_trace();
        assert!(t.contains(&DdfsEvent::Steal {
            side: Side::Z,
            vertex: 2
        }));
        assert_eq!(t.last(), Some(&DdfsEvent::Bottleneck { vertex: 2 }));
        assert!(w.check_invariant());
    }

    #[test]
    fn sink_start_gives_a_trivial_path() {
        // y=0 is a sink; z=1 -> 2 (sink).
        let mut w = dag(&[2, 3, 2], &[0, 2], &[(1, 2)]);
        let out = w.ddfs_once(0, 1).unwrap();
        assert_eq!(
            out,
            DdfsOutcome::Success {
                p: vec![0],
                q: vec![1, 2],
                omissible: vec![0, 1, 2]
            }
        );
    }

    #[test]
    fn pruning_removes_stranded_vertices() {
        // 4 -> 1 only; once 1 is used, 4 has no way down.
        let mut w = dag(&[3, 2, 3, 2, 5], &[1, 3], &[(0, 1), (2, 3), (4, 1)]);
        w.ddfs_once(0, 2).unwrap();
        assert!(w.is_removed(4));
        assert!(w.check_invariant());
    }

    #[test]
    fn shrunk_set_expands_to_real_paths() {
        // y=0 z=1 both only through x=2; x->3, x->4 sinks. Then a later pair uses
        // the shrunk set: 5 -> 0 and 6 -> 4.
        let mut w = dag(
            &[5, 5, 4, 2, 2, 7, 3],
            &[3, 4],
            &[(0, 2), (1, 2), (2, 3), (2, 4), (5, 0), (6, 4)],
        );
        let out = w.ddfs_once(0, 1).unwrap();
        assert!(matches!(out, DdfsOutcome::Bottleneck { vertex: 2, .. }));
        let out = w.ddfs_once(5, 6).unwrap();
        let DdfsOutcome::Success { p, q, .. } = out else {
            panic!("expected success, got {out:?}")
        };
        assert_eq!(p, vec![5, 0, 2, 3]);
        assert_eq!(q, vec![6, 4]);
    }

    #[test]
    fn same_set_is_skipped() {
        let mut w = dag(&[5, 5, 4, 2], &[3], &[(0, 2), (1, 2), (2, 3)]);
        w.ddfs_once(0, 1).unwrap();
        assert_eq!(w.ddfs_once(0, 2), None);
        assert_eq!(w.stats.skipped, 1);
    }

    #[test]
    fn exact_search_agrees_on_a_deep_merge() {
        // y=0 -> w=2 -> {o1=4, c=3}; c -> o2=5; z=1 -> o1 -> o2 -> s=6.
        let build = || {
            dag(
                &[20, 20, 15, 13, 12, 11, 2],
                &[6],
                &[(0, 2), (2, 4), (2, 3), (3, 5), (1, 4), (4, 5), (5, 6)],
            )
        };
        let mut a = build();
        let mut b = build();
        b.use_exact_search(true);
        let oa = a.ddfs_once(0, 1).unwrap();
        let ob = b.ddfs_once(0, 1).unwrap();
        for out in [&oa, &ob] {
            let DdfsOutcome::Bottleneck { vertex, shrunk } = out else {
                panic!("{out:?}")
            };
            assert_eq!(*vertex, 5);
            assert_eq!(shrunk, &vec![0, 1, 2, 3, 4]);
        }
        assert!(a.check_invariant() && b.check_invariant());
    }

    #[test]
    fn exact_search_reroutes_the_first_path() {
        // y=0 -> 2 -> {3, 4}; z=1 -> 3; 3 -> 5, 4 -> 6.
        // The first path from y takes 3, so z must push it over to 4.
        let mut w = dag(
            &[9, 9, 8, 7, 7, 2, 2],
            &[5, 6],
            &[(0, 2), (2, 3), (2, 4), (1, 3), (3, 5), (4, 6)],
        );
        w.use_exact_search(true);
        let out = w.ddfs_once(0, 1).unwrap();
        let DdfsOutcome::Success { p, q, omissible } = out else {
            panic!("{out:?}")
        };
        assert_eq!(p, vec![0, 2, 4, 6]);
        assert_eq!(q, vec![1, 3, 5]);
        assert_eq!(omissible, vec![0, 1, 2, 3, 4, 5, 6]);
    }
}
