//! Approximate maximum matching by hitting sets and graph stretching.
//!
//! The sequential run mirrors a fixed schedule: `K` phases per amplifier
//! call, `16(ℓ+1)²` search steps per phase and `⌈1/(2cα)⌉` amplifier calls
//! per scale. Work that provably repeats a finished state is skipped but
//! still charged, so the cost meter reports what the schedule would spend.

use std::collections::HashMap;

use crate::abd::{build_abd_bounded, candidate_edges, Abd};
use crate::dist::{compute_dist, shortest_aug_length, DistTable};
use crate::error::{Error, Result};
use crate::graph::{
    augment_along, build_matching_system, greedy_maximal_matching, AlternatingPath, Graph, Matching, MatchingSystem,
    Parity, VertexId,
};
use crate::mcm::find_phase_paths;
use crate::stretch::{length_stretch, recover};

/// Inverse of the constant `c` in the amplifier's gain `cα²μ`.
pub const GAIN_INVERSE: u64 = 648;

/// Simulated distributed cost. Every counter only grows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostMeter {
    pub congest_rounds: u64,
    pub stream_passes: u64,
    pub mm_invocations: u64,
}

impl CostMeter {
    /// One maximal-matching call on `n` vertices: one pass.
    pub fn charge_mm(&mut self, n: usize) {
        self.mm_invocations += 1;
        self.congest_rounds += mm_round_model(n);
        self.stream_passes += 1;
    }

    /// `rounds` distance rounds, each relayed across `ℓ + 1` hops and read in two passes.
    pub fn charge_dist(&mut self, rounds: u64, l: u32) {
        self.congest_rounds += rounds * (l as u64 + 1);
        self.stream_passes += 2 * rounds;
    }

    fn since(&self, earlier: &CostMeter) -> CostMeter {
        CostMeter {
            congest_rounds: self.congest_rounds - earlier.congest_rounds,
            stream_passes: self.stream_passes - earlier.stream_passes,
            mm_invocations: self.mm_invocations - earlier.mm_invocations,
        }
    }

    fn add_times(&mut self, d: &CostMeter, times: u64) {
        self.congest_rounds += d.congest_rounds * times;
        self.stream_passes += d.stream_passes * times;
        self.mm_invocations += d.mm_invocations * times;
    }
}

/// Rounds charged per maximal-matching call: `⌈log₂(n + 2)⌉`.
pub fn mm_round_model(n: usize) -> u64 {
    (usize::BITS - (n + 1).leading_zeros()) as u64
}

/// Steps of the parallel search, `16(ℓ+1)²`.
pub fn search_limit(l: u32) -> usize {
    16 * (l as usize + 1).pow(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchState {
    Idle,
    Active,
    Dead,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub root: VertexId,
    /// Visit order, root first.
    pub members: Vec<VertexId>,
}

/// Search trees grown backwards along the base DAG from every free vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelDfs {
    /// One per free vertex, by ascending root.
    pub regions: Vec<Region>,
    /// `None` outside the DAG.
    pub state: Vec<Option<SearchState>>,
    pub owner: Vec<Option<usize>>,
    /// Tree parent, one DAG edge further towards the root.
    pub tree_parent: Vec<Option<VertexId>>,
    /// Steps in which some search was still running.
    pub steps: usize,
    pub limit: usize,
}

impl ParallelDfs {
    pub fn active(&self) -> Vec<VertexId> {
        (0..self.state.len())
            .filter(|&v| self.state[v] == Some(SearchState::Active))
            .collect()
    }

    /// The three closure properties of the search, for searches bounded by depth `ℓ + 1`.
    pub fn check_properties(&self, h: &Abd, l: u32) -> std::result::Result<(), String> {
        for (v, w) in h.edges() {
            if self.state[v] == Some(SearchState::Idle) && self.state[w] == Some(SearchState::Dead) {
                return Err(format!("idle {v} points at dead {w}"));
            }
        }
        let inner = (0..h.n()).filter(|&v| h.present[v] && !h.sink[v]).count();
        let active = self.active().len();
        if 8 * (l as usize + 1) * active > inner {
            return Err(format!("{active} active vertices against {inner} matched DAG vertices"));
        }
        let is_active = |v: VertexId| self.state[v] == Some(SearchState::Active);
        let mut active_children = vec![0u8; self.state.len()];
        for r in &self.regions {
            if r.members.len() > self.limit + 1 {
                return Err(format!("region of {} holds {} vertices", r.root, r.members.len()));
            }
            for &v in r.members.iter().filter(|&&v| is_active(v)) {
                match self.tree_parent[v] {
                    None if v == r.root => {}
                    Some(p) if is_active(p) => {
                        active_children[p] += 1;
                        if active_children[p] > 1 {
                            return Err(format!("active vertices of region {} branch at {p}", r.root));
                        }
                    }
                    _ => {
                        return Err(format!(
                            "active {v} of region {} hangs below an inactive vertex",
                            r.root
                        ))
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs at most `limit` lockstep steps of one DFS per free vertex over reversed DAG edges.
///
/// Heads advance by a greedy maximal matching between head locations and
/// idle in-neighbours, both in ascending id; unmatched heads backtrack.
pub fn parallel_dfs(h: &Abd, limit: usize) -> ParallelDfs {
    let n = h.n();
    let mut in_start = vec![0usize; n + 1];
    let edges = h.edges();
    for &(_, w) in &edges {
        in_start[w + 1] += 1;
    }
    for v in 0..n {
        in_start[v + 1] += in_start[v];
    }
    let mut fill = in_start.clone();
    let mut in_adj = vec![0; edges.len()];
    for &(v, w) in &edges {
        in_adj[fill[w]] = v;
        fill[w] += 1;
    }
    let mut state: Vec<Option<SearchState>> = (0..n)
        .map(|v| match (h.present[v], h.sink[v]) {
            (false, _) => None,
            (true, true) => Some(SearchState::Active),
            (true, false) => Some(SearchState::Idle),
        })
        .collect();
    let mut owner = vec![None; n];
    let mut tree_parent = vec![None; n];
    let mut regions = Vec::new();
    let mut stacks = Vec::new();
    for u in (0..n).filter(|&u| h.present[u] && h.sink[u]) {
        owner[u] = Some(regions.len());
        regions.push(Region {
            root: u,
            members: vec![u],
        });
        stacks.push(vec![u]);
    }
    let mut ptr = in_start[..n].to_vec();
    let mut running: Vec<usize> = (0..regions.len()).collect();
    let mut steps = 0;
    while steps < limit && !running.is_empty() {
        steps += 1;
        let mut order: Vec<(VertexId, usize)> = running
            .iter()
            .map(|&r| (*stacks[r].last().expect("running stack"), r))
            .collect();
        order.sort_unstable();
        for (x, r) in order {
            while ptr[x] < in_start[x + 1] && state[in_adj[ptr[x]]] != Some(SearchState::Idle) {
                ptr[x] += 1;
            }
            if ptr[x] < in_start[x + 1] {
                let y = in_adj[ptr[x]];
                state[y] = Some(SearchState::Active);
                owner[y] = Some(r);
                tree_parent[y] = Some(x);
                regions[r].members.push(y);
                stacks[r].push(y);
            } else {
                state[x] = Some(SearchState::Dead);
                stacks[r].pop();
            }
        }
        running.retain(|&r| !stacks[r].is_empty());
    }
    ParallelDfs {
        regions,
        state,
        owner,
        tree_parent,
        steps,
        limit,
    }
}

/// `G[S]` with `M[S]`; a member matched outside `S` keeps a pendant matched
/// stand-in, so the only free vertices are the free vertices of `G` in `S`.
fn induced_padded(
    ms: &MatchingSystem<'_>,
    members: &[VertexId],
) -> Result<(Graph, Matching, HashMap<VertexId, usize>)> {
    let g = ms.graph;
    let local: HashMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let mut next = members.len();
    for (i, &v) in members.iter().enumerate() {
        for &(x, _) in g.neighbors(v) {
            if let Some(&j) = local.get(&x) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        if let Some(w) = ms.matching.mate(v) {
            match local.get(&w) {
                Some(&j) if i < j => pairs.push((i, j)),
                Some(_) => {}
                None => {
                    edges.push((i, next));
                    pairs.push((i, next));
                    next += 1;
                }
            }
        }
    }
    let sub = Graph::new(next, edges)?;
    let m = Matching::from_pairs(&sub, &pairs)?;
    Ok((sub, m, local))
}

/// Members of region `r` with a DAG edge into another region that have a
/// partial double path inside `r`.
///
/// Decided by comparing even distances in `G` and in the region alone.
pub fn double_reachable(
    ms: &MatchingSystem<'_>,
    dt: &DistTable,
    h: &Abd,
    dfs: &ParallelDfs,
    r: usize,
) -> Result<Vec<VertexId>> {
    let members = &dfs.regions[r].members;
    let leaving: Vec<VertexId> = members
        .iter()
        .copied()
        .filter(|&v| h.out(v).iter().any(|&w| dfs.owner[w].is_some_and(|o| o != r)))
        .collect();
    if leaving.is_empty() {
        return Ok(Vec::new());
    }
    let (sub, m, local) = induced_padded(ms, members)?;
    let sms = build_matching_system(&sub, m)?;
    let sdt = compute_dist(&sms, None);
    let mut out: Vec<VertexId> = leaving
        .into_iter()
        .filter(|&v| {
            dt.dist(v, Parity::Even)
                .is_some_and(|d| sdt.dist(local[&v], Parity::Even) == Some(d))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AugAndHitReport {
    /// `ℓ*` of the shortest augmenting paths, when at most `2ℓ + 5` rounds away.
    pub shortest: Option<u32>,
    pub regions: usize,
    pub active: usize,
    pub merged_pairs: usize,
    pub search_steps: usize,
    /// `|B| ≤ 16|Q|(ℓ+1)² + |M|/(4(ℓ+1))`.
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugAndHit {
    pub paths: Vec<AlternatingPath>,
    /// Sorted.
    pub hitting: Vec<VertexId>,
    pub report: AugAndHitReport,
}

pub fn hitting_bound_holds(hitting: usize, paths: usize, matching: usize, l: u32) -> bool {
    let l1 = l as u128 + 1;
    4 * l1 * hitting as u128 <= 64 * l1.pow(3) * paths as u128 + matching as u128
}

/// The fixed schedule of one call: distance rounds for the DAG, the
/// per-region distances and the merged-region search, `16(ℓ+1)²` search
/// steps and one region matching. Charged whether or not paths exist.
fn charge_aug_and_hit(meter: &mut CostMeter, n: usize, l: u32) {
    let rounds = 2 * l as u64 + 5;
    for _ in 0..3 {
        meter.charge_dist(rounds, l);
    }
    for _ in 0..search_limit(l) + 1 {
        meter.charge_mm(n);
    }
}

/// Disjoint shortest augmenting paths and a set hitting every shortest
/// augmenting path, when those have length at most `2ℓ + 1`.
pub fn aug_and_hit(ms: &MatchingSystem<'_>, l: u32, meter: &mut CostMeter) -> Result<AugAndHit> {
    charge_aug_and_hit(meter, ms.graph.n(), l);
    let dt = compute_dist(ms, Some(2 * l + 5));
    let shortest = shortest_aug_length(&dt, ms);
    let mut report = AugAndHitReport {
        shortest,
        within_bound: true,
        ..AugAndHitReport::default()
    };
    let Some(ls) = shortest.filter(|&ls| ls <= l) else {
        return Ok(AugAndHit {
            paths: Vec::new(),
            hitting: Vec::new(),
            report,
        });
    };
    let h = build_abd_bounded(&dt, ms, Some(ls + 2));
    let cands = candidate_edges(&dt, ms, ls);
    let limit = search_limit(l);
    let dfs = parallel_dfs(&h, limit);
    dfs.check_properties(&h, l).map_err(Error::Internal)?;
    report.regions = dfs.regions.len();
    report.search_steps = dfs.steps;

    let mut mergeable = Vec::new();
    for r in 0..dfs.regions.len() {
        for v in double_reachable(ms, &dt, &h, &dfs, r)? {
            for &w in h.out(v) {
                if let Some(o) = dfs.owner[w].filter(|&o| o != r) {
                    mergeable.push((r.min(o), r.max(o)));
                }
            }
        }
    }
    for c in &cands {
        let (y, z) = ms.graph.edge(c.edge);
        if let (Some(a), Some(b)) = (dfs.owner[y], dfs.owner[z]) {
            if a != b {
                mergeable.push((a.min(b), a.max(b)));
            }
        }
    }
    mergeable.sort_unstable();
    mergeable.dedup();
    let mut merged = vec![false; dfs.regions.len()];
    let mut pairs = Vec::new();
    for (a, b) in mergeable {
        if !merged[a] && !merged[b] {
            merged[a] = true;
            merged[b] = true;
            pairs.push((a, b));
        }
    }

    let mut hitting = dfs.active();
    report.active = hitting.len();
    let mut paths = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let members: Vec<VertexId> = dfs.regions[a]
            .members
            .iter()
            .chain(&dfs.regions[b].members)
            .copied()
            .collect();
        paths.push(merged_region_path(ms, &members, ls)?);
        hitting.extend(members);
    }
    hitting.sort_unstable();
    hitting.dedup();
    report.merged_pairs = pairs.len();
    report.within_bound = hitting_bound_holds(hitting.len(), paths.len(), ms.matching.size(), l);
    Ok(AugAndHit { paths, hitting, report })
}

/// The shortest augmenting path between the two roots inside a merged region.
fn merged_region_path(ms: &MatchingSystem<'_>, members: &[VertexId], ls: u32) -> Result<AlternatingPath> {
    let (sub, m, _) = induced_padded(ms, members)?;
    let sms = build_matching_system(&sub, m)?;
    let found = find_phase_paths(&sms)?;
    let Some((mut found, _)) = found else {
        return Err(Error::Internal("merged region holds no augmenting path".into()));
    };
    let p = found.pop().filter(|p| p.len() as u32 == 2 * ls + 1 && found.is_empty());
    let Some(p) = p else {
        return Err(Error::Internal(
            "merged region path is not a single shortest path".into(),
        ));
    };
    let vertices = p.vertices.iter().map(|&i| members[i]).collect();
    AlternatingPath::from_vertices(ms.graph, vertices)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AmplifierReport {
    pub phases: usize,
    /// `q`, the number of augmenting paths over all phases.
    pub paths: usize,
    /// `Σ|B_i|`; each hitting vertex raises the maximum matching of the stretched graph by one.
    pub hitting_total: usize,
    pub early_stop: bool,
    pub max_vertices: usize,
    /// `(|Q_i|, |B_i|)` per phase that stretched the graph.
    pub phase_log: Vec<(usize, usize)>,
    /// Every hitting set met its size bound.
    pub within_bound: bool,
}

/// One amplifier call with `α = 2^-k`: `K = 4/α` phases of path finding,
/// stretching and augmentation, then recovery onto `g`.
pub fn amplifier(g: &Graph, m: Matching, k: u32, meter: &mut CostMeter) -> Result<(Matching, AmplifierReport)> {
    assert!((1..=20).contains(&k), "alpha exponent out of range");
    let phases = 4u32 << k;
    let base = m.size() as u128;
    let mut report = AmplifierReport {
        within_bound: true,
        max_vertices: g.n(),
        ..AmplifierReport::default()
    };
    let mut graphs = vec![g.clone()];
    let mut maps = Vec::new();
    let mut cur = m;
    for i in 0..phases {
        let before = *meter;
        let gi = graphs.last().expect("base graph");
        let ms = build_matching_system(gi, cur)?;
        let ah = aug_and_hit(&ms, phases, meter)?;
        report.phases += 1;
        report.within_bound &= ah.report.within_bound;
        if ah.report.shortest.is_none_or(|s| s > phases) {
            let idle = meter.since(&before);
            meter.add_times(&idle, (phases - i - 1) as u64);
            cur = ms.matching;
            break;
        }
        let st = length_stretch(&ms, &ah.hitting)?;
        let images = ah
            .paths
            .iter()
            .map(|p| st.map.map_path(&st.graph, p))
            .collect::<Result<Vec<_>>>()?;
        let sms = build_matching_system(&st.graph, st.matching)?;
        cur = augment_along(&sms, &images)?;
        report.paths += ah.paths.len();
        report.hitting_total += ah.hitting.len();
        report.phase_log.push((ah.paths.len(), ah.hitting.len()));
        report.max_vertices = report.max_vertices.max(st.graph.n());
        graphs.push(st.graph);
        maps.push(st.map);
        // Stop once q > cα²μ̄ with μ̄ = |M₁| / (1 - α) ≥ μ(G₁).
        let q = report.paths as u128;
        if (q * GAIN_INVERSE as u128 * ((1u128 << k) - 1)) << (2 * k) > base << k {
            report.early_stop = i + 1 < phases;
            break;
        }
    }
    for (gi, map) in graphs.iter().zip(&maps).rev() {
        cur = recover(gi, &cur, map)?;
    }
    debug_assert_eq!(cur.size() as u128, base + report.paths as u128);
    Ok((cur, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleReport {
    pub alpha_exp: u32,
    /// Amplifier calls the schedule runs at this scale.
    pub scheduled: u64,
    pub executed: u64,
    pub size_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub matching: Matching,
    /// `x` with the effective `ε = 2^-x`.
    pub eps_exp: u32,
    pub cost: CostMeter,
    pub scales: Vec<ScaleReport>,
    pub within_bound: bool,
}

/// Smallest `x ≥ 1` with `2^-x ≤ ε`.
pub fn eps_exponent(eps: f64) -> Result<u32> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEpsilon(eps.to_string()));
    }
    let mut x = 1;
    while 0.5f64.powi(x as i32) > eps {
        x += 1;
        if x > 20 {
            return Err(Error::InvalidEpsilon(eps.to_string()));
        }
    }
    Ok(x)
}

/// A `(1 - ε)`-approximate maximum matching, `ε` rounded down to a power of two.
///
/// Starts from the greedy maximal matching and runs `⌈1/(2cα)⌉` amplifier
/// calls for each `α = 1/2, 1/4, …, ε`. A call that finds no path leaves the
/// matching unchanged, so the rest of that scale is charged, not rerun.
pub fn approx_matching(g: &Graph, eps: f64) -> Result<ApproxResult> {
    let x = eps_exponent(eps)?;
    let mut meter = CostMeter::default();
    meter.charge_mm(g.n());
    let mut m = greedy_maximal_matching(g);
    let mut scales = Vec::new();
    let mut within_bound = true;
    for k in 1..=x {
        let scheduled = GAIN_INVERSE.div_ceil(2) << k;
        let mut executed = 0;
        for call in 0..scheduled {
            let before = meter;
            let (next, rep) = amplifier(g, m.clone(), k, &mut meter)?;
            executed += 1;
            within_bound &= rep.within_bound;
            if rep.paths == 0 {
                let idle = meter.since(&before);
                meter.add_times(&idle, scheduled - call - 1);
                break;
            }
            m = next;
        }
        scales.push(ScaleReport {
            alpha_exp: k,
            scheduled,
            executed,
            size_after: m.size(),
        });
    }
    Ok(ApproxResult {
        matching: m,
        eps_exp: x,
        cost: meter,
        scales,
        within_bound,
    })
}
