//! Alternating base trees, minimum incoming edges, and path construction.
//!
//! Every free vertex roots one component of the forest; the virtual super
//! vertex above them is left implicit. A vertex outside the tree has no
//! orthodox distance within the bound.

use std::fmt::Write as _;

use crate::dist::{edge_level, is_ep_edge, DistTable, EdgeLevel};
use crate::error::{Error, Result};
use crate::graph::{AlternatingPath, EdgeId, MatchingSystem, Parity, VertexId};
use crate::heap::{HeapId, PairingArena};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abt {
    parent: Vec<u32>,
    root: Vec<u32>,
    tin: Vec<u32>,
    tout: Vec<u32>,
    /// Tree vertices, parents before children.
    preorder: Vec<VertexId>,
}

impl Abt {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        (self.parent[v] != NONE).then_some(self.parent[v] as usize)
    }

    /// `r_T(v)`, the free vertex whose component holds `v`.
    pub fn root_of(&self, v: VertexId) -> Option<VertexId> {
        (self.root[v] != NONE).then_some(self.root[v] as usize)
    }

    pub fn in_tree(&self, v: VertexId) -> bool {
        self.root[v] != NONE
    }

    /// True iff `d` lies in `T(a)`, including `d == a`.
    #[inline]
    pub fn is_ancestor(&self, a: VertexId, d: VertexId) -> bool {
        self.in_tree(a) && self.in_tree(d) && self.tin[a] <= self.tin[d] && self.tin[d] < self.tout[a]
    }

    pub fn preorder(&self) -> &[VertexId] {
        &self.preorder
    }

    #[inline]
    fn is_tree_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.parent[u] == v as u32 || self.parent[v] == u as u32
    }
}

/// Builds a base tree; `respected` lists forced `(child, parent)` pairs.
///
/// Unforced vertices take the minimum-id member of `P(u)`.
pub fn build_abt(dt: &DistTable, ms: &MatchingSystem<'_>, respected: &[(VertexId, VertexId)]) -> Result<Abt> {
    let g = ms.graph;
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut forced = vec![false; n];
    for &(c, p) in respected {
        let ok = !ms.is_free(c)
            && g.neighbors(c)
                .iter()
                .any(|&(x, e)| x == p && is_ep_edge(dt, ms, c, x, e));
        if !ok {
            return Err(Error::NotEpEdge(c, p));
        }
        if forced[c] && parent[c] != p as u32 {
            return Err(Error::RespectConflict(c));
        }
        forced[c] = true;
        parent[c] = p as u32;
    }
    for u in 0..n {
        if forced[u] || ms.is_free(u) || dt.orthodox(u).is_none() {
            continue;
        }
        let best = g
            .neighbors(u)
            .iter()
            .filter(|&&(x, e)| is_ep_edge(dt, ms, u, x, e))
            .map(|&(x, _)| x)
            .min()
            .ok_or_else(|| Error::Internal(format!("vertex {u} is reached but has an empty P set")))?;
        parent[u] = best as u32;
    }

    let mut head = vec![NONE; n];
    let mut next = vec![NONE; n];
    // Children are linked in descending id so traversal visits ascending ids.
    for v in (0..n).rev() {
        if parent[v] != NONE {
            let p = parent[v] as usize;
            next[v] = head[p];
            head[p] = v as u32;
        }
    }
    let mut root = vec![NONE; n];
    let mut tin = vec![0u32; n];
    let mut tout = vec![0u32; n];
    let mut preorder = Vec::with_capacity(n);
    let mut stack: Vec<(usize, bool)> = Vec::new();
    let mut clock = 0u32;
    for &u in &ms.free {
        stack.push((u, false));
        while let Some((v, done)) = stack.pop() {
            if done {
                tout[v] = clock;
                continue;
            }
            root[v] = u as u32;
            tin[v] = clock;
            clock += 1;
            preorder.push(v);
            stack.push((v, true));
            let mut c = head[v];
            let mark = stack.len();
            while c != NONE {
                stack.push((c as usize, false));
                c = next[c as usize];
            }
            stack[mark..].reverse();
        }
    }
    if let Some(v) = (0..n).find(|&v| parent[v] != NONE && root[v] == NONE) {
        return Err(Error::Internal(format!("vertex {v} hangs off a parent cycle")));
    }
    Ok(Abt {
        parent,
        root,
        tin,
        tout,
        preorder,
    })
}

/// Canonical minimum incoming edge of one subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mie {
    pub edge: EdgeId,
    pub level: EdgeLevel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MieTable {
    pub mie: Vec<Option<Mie>>,
}

impl MieTable {
    pub fn get(&self, v: VertexId) -> Option<Mie> {
        self.mie[v]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct MKey {
    level: u64,
    lo: u32,
    hi: u32,
}

/// Minimum incoming edge of every subtree, children before parents.
///
/// Ties at the minimum level prefer an edge outside `EP(t)`, then the
/// smallest `(min endpoint, max endpoint)` pair.
pub fn compute_mies(abt: &Abt, dt: &DistTable, ms: &MatchingSystem<'_>) -> MieTable {
    let g = ms.graph;
    let n = g.n();
    let mut arena: PairingArena<MKey, EdgeId> = PairingArena::with_capacity(2 * g.m());
    let mut heap = vec![HeapId::EMPTY; n];
    let mut levels: Vec<Option<EdgeLevel>> = vec![None; g.m()];
    let mut mie = vec![None; n];
    let mut stash = Vec::new();
    for &t in abt.preorder.iter().rev() {
        let mut h = heap[t];
        for &(x, e) in g.neighbors(t) {
            if abt.is_tree_edge(t, x) {
                continue;
            }
            let lv = *levels[e].get_or_insert_with(|| {
                edge_level(dt, ms, e).unwrap_or(EdgeLevel {
                    vlevel: u32::MAX,
                    hlevel: u32::MAX,
                    level: u64::MAX,
                })
            });
            if lv.level == u64::MAX {
                continue;
            }
            let key = MKey {
                level: lv.level,
                lo: t.min(x) as u32,
                hi: t.max(x) as u32,
            };
            h = arena.push(h, key, e);
        }
        let mut first_level = None;
        while let Some((k, e)) = arena.peek(h) {
            let (a, b) = (k.lo as usize, k.hi as usize);
            if abt.is_ancestor(t, a) && abt.is_ancestor(t, b) {
                h = arena.pop(h).expect("peeked").1;
                continue;
            }
            let lvl = *first_level.get_or_insert(k.level);
            let other = if abt.is_ancestor(t, a) { b } else { a };
            if k.level == lvl && (a == t || b == t) && is_ep_edge(dt, ms, t, other, e) {
                h = arena.pop(h).expect("peeked").1;
                stash.push((k, e));
                continue;
            }
            break;
        }
        let pick = match arena.peek(h) {
            Some((k, e)) if Some(k.level) == first_level => Some(e),
            _ => stash.first().map(|&(_, e)| e),
        };
        mie[t] = pick.map(|e| Mie {
            edge: e,
            level: levels[e].expect("level cached on insertion"),
        });
        for (k, e) in stash.drain(..) {
            h = arena.push(h, k, e);
        }
        if let Some(p) = abt.parent(t) {
            heap[p] = arena.meld(heap[p], h);
        }
    }
    MieTable { mie }
}

#[derive(Clone, Copy)]
enum Task {
    Emit(VertexId),
    /// `s = None` stands for the super free vertex.
    Pc {
        s: Option<VertexId>,
        t: VertexId,
        theta: Parity,
        rev: bool,
    },
}

/// Suffix from `s` to `t` of a shortest `θ`-alternating path to `t`.
pub fn path_construction(
    abt: &Abt,
    mies: &MieTable,
    dt: &DistTable,
    ms: &MatchingSystem<'_>,
    s: VertexId,
    t: VertexId,
    theta: Parity,
) -> Result<AlternatingPath> {
    construct(abt, mies, dt, ms, Some(s), t, theta)
}

/// A whole shortest `θ`-alternating path to `t`, starting at a free vertex.
pub fn path_from_super(
    abt: &Abt,
    mies: &MieTable,
    dt: &DistTable,
    ms: &MatchingSystem<'_>,
    t: VertexId,
    theta: Parity,
) -> Result<AlternatingPath> {
    construct(abt, mies, dt, ms, None, t, theta)
}

fn construct(
    abt: &Abt,
    mies: &MieTable,
    dt: &DistTable,
    ms: &MatchingSystem<'_>,
    s: Option<VertexId>,
    t: VertexId,
    theta: Parity,
) -> Result<AlternatingPath> {
    let mut out = Vec::new();
    let mut stack = vec![Task::Pc {
        s,
        t,
        theta,
        rev: false,
    }];
    while let Some(task) = stack.pop() {
        let (s, t, theta, rev) = match task {
            Task::Emit(v) => {
                out.push(v);
                continue;
            }
            Task::Pc { s, t, theta, rev } => (s, t, theta, rev),
        };
        if let Some(s) = s {
            if !abt.is_ancestor(s, t) {
                return Err(Error::NotDescendant(s, t));
            }
        }
        if dt.dist(t, theta).is_none() {
            return Err(Error::NoSuchParity(t));
        }
        if s == Some(t) || (s.is_none() && ms.is_free(t) && theta == Parity::Even) {
            out.push(t);
            continue;
        }
        if Some(theta) == dt.orthodox(t) {
            let p = abt.parent(t).ok_or(Error::NotDescendant(s.unwrap_or(t), t))?;
            let sub = Task::Pc {
                s,
                t: p,
                theta: theta.flip(),
                rev,
            };
            if rev {
                stack.push(sub);
                stack.push(Task::Emit(t));
            } else {
                stack.push(Task::Emit(t));
                stack.push(sub);
            }
        } else {
            let m = mies.get(t).ok_or(Error::NoSuchParity(t))?;
            let (a, b) = ms.graph.edge(m.edge);
            let (y, z) = if abt.is_ancestor(t, a) { (b, a) } else { (a, b) };
            let rho = ms.rho(m.edge);
            let outer = Task::Pc {
                s,
                t: y,
                theta: rho,
                rev,
            };
            let inner = Task::Pc {
                s: Some(t),
                t: z,
                theta: rho,
                rev: !rev,
            };
            if rev {
                stack.push(outer);
                stack.push(inner);
            } else {
                stack.push(inner);
                stack.push(outer);
            }
        }
    }
    AlternatingPath::from_vertices(ms.graph, out)
}

/// Two vertex-disjoint base-DAG paths from the ends of a candidate edge to distinct free vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublePath {
    /// `y` first, a free vertex last.
    pub p: Vec<VertexId>,
    /// `z` first, a different free vertex last.
    pub q: Vec<VertexId>,
    pub y: VertexId,
    pub z: VertexId,
    pub edge: EdgeId,
}

impl DoublePath {
    pub fn validate(&self, dt: &DistTable, ms: &MatchingSystem<'_>) -> Result<()> {
        let (a, b) = ms.graph.edge(self.edge);
        if !((a == self.y && b == self.z) || (a == self.z && b == self.y)) {
            return Err(Error::InvalidDoublePath("edge does not join y and z"));
        }
        if self.p.first() != Some(&self.y) || self.q.first() != Some(&self.z) {
            return Err(Error::InvalidDoublePath("paths must start at y and z"));
        }
        let (pu, qu) = (*self.p.last().expect("nonempty"), *self.q.last().expect("nonempty"));
        if !ms.is_free(pu) || !ms.is_free(qu) || pu == qu {
            return Err(Error::InvalidDoublePath("paths must end at distinct free vertices"));
        }
        let mut seen = vec![false; ms.graph.n()];
        for &v in self.p.iter().chain(&self.q) {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidDoublePath("paths share a vertex"));
            }
        }
        for w in self.p.windows(2).chain(self.q.windows(2)) {
            let ok = !ms.is_free(w[0])
                && ms
                    .graph
                    .neighbors(w[0])
                    .iter()
                    .any(|&(x, e)| x == w[1] && is_ep_edge(dt, ms, w[0], x, e));
            if !ok {
                return Err(Error::InvalidDoublePath("step is not a base-DAG edge"));
            }
        }
        Ok(())
    }

    fn respected(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.p.windows(2).chain(self.q.windows(2)).map(|w| (w[0], w[1]))
    }
}

fn join_at(
    ms: &MatchingSystem<'_>,
    abt: &Abt,
    mies: &MieTable,
    dt: &DistTable,
    d: &DoublePath,
) -> Result<AlternatingPath> {
    let rho = ms.rho(d.edge);
    let ry = abt.root_of(d.y).ok_or(Error::NotDescendant(d.y, d.y))?;
    let rz = abt.root_of(d.z).ok_or(Error::NotDescendant(d.z, d.z))?;
    let y_side = path_construction(abt, mies, dt, ms, ry, d.y, rho)?;
    let z_side = path_construction(abt, mies, dt, ms, rz, d.z, rho)?;
    let mut vs = y_side.vertices;
    vs.extend(z_side.vertices.iter().rev());
    AlternatingPath::from_vertices(ms.graph, vs)
}

/// Shortest augmenting path through the candidate edge of `d`.
pub fn double_to_aug(dt: &DistTable, ms: &MatchingSystem<'_>, d: &DoublePath) -> Result<AlternatingPath> {
    Ok(double_to_aug_many(dt, ms, std::slice::from_ref(d))?
        .pop()
        .expect("one path per double path"))
}

/// One augmenting path per double path, all read off a single tree
/// respecting every double path; the paths are pairwise vertex-disjoint.
pub fn double_to_aug_many(dt: &DistTable, ms: &MatchingSystem<'_>, ds: &[DoublePath]) -> Result<Vec<AlternatingPath>> {
    let respected: Vec<_> = ds.iter().flat_map(DoublePath::respected).collect();
    let abt = build_abt(dt, ms, &respected)?;
    let mies = compute_mies(&abt, dt, ms);
    ds.iter().map(|d| join_at(ms, &abt, &mies, dt, d)).collect()
}

/// Parent and minimum-incoming-edge tables, one vertex per line.
pub fn dump_tree(abt: &Abt, mies: &MieTable, ms: &MatchingSystem<'_>) -> String {
    let mut out = String::new();
    for v in 0..abt.n() {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
        let mie = match mies.get(v) {
            Some(m) => {
                let (a, b) = ms.graph.edge(m.edge);
                format!("{} {} {}", a.min(b), a.max(b), m.level.vlevel)
            }
            None => "- - -".to_string(),
        };
        let _ = writeln!(out, "{v} {} {} {mie}", show(abt.parent(v)), show(abt.root_of(v)));
    }
    out
}
