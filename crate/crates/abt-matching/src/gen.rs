//! Seeded instance generators and small-instance enumerators.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Matching, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`, sampled by geometric skipping over vertex pairs.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    if n >= 2 && p > 0.0 {
        if p >= 1.0 {
            for v in 1..n {
                for u in 0..v {
                    edges.push((u, v));
                }
            }
        } else {
            let lq = (1.0 - p).ln();
            let (mut v, mut w) = (1usize, -1i64);
            while v < n {
                let r: f64 = rng.gen::<f64>();
                w += 1 + ((1.0 - r).ln() / lq).floor() as i64;
                while v < n && w >= v as i64 {
                    w -= v as i64;
                    v += 1;
                }
                if v < n {
                    edges.push((w as usize, v));
                }
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Random `d`-regular-ish simple graph: configuration model with
/// loops and repeated pairs discarded.
pub fn random_regular<R: Rng>(rng: &mut R, n: usize, d: usize) -> Graph {
    let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("filtered to a simple graph")
}

/// Random matching: edges in shuffled order, each kept with probability `keep` if free.
pub fn random_matching<R: Rng>(rng: &mut R, g: &Graph, keep: f64) -> Matching {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    let mut used = vec![false; g.n()];
    for e in order {
        let (u, v) = g.edge(e);
        if !used[u] && !used[v] && rng.gen_bool(keep) {
            used[u] = true;
            used[v] = true;
            pairs.push((u, v));
        }
    }
    Matching::from_pairs(g, &pairs).expect("disjoint edges")
}

/// Every matching of `g`, including the empty one.
pub fn all_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; g.n()];
    all_rec(g, 0, &mut used, &mut cur, &mut out);
    out
}

fn all_rec(g: &Graph, e: usize, used: &mut [bool], cur: &mut Vec<(VertexId, VertexId)>, out: &mut Vec<Matching>) {
    if e == g.m() {
        out.push(Matching::from_pairs(g, cur).expect("disjoint edges"));
        return;
    }
    all_rec(g, e + 1, used, cur, out);
    let (u, v) = g.edge(e);
    if !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        cur.push((u, v));
        all_rec(g, e + 1, used, cur, out);
        cur.pop();
        used[u] = false;
        used[v] = false;
    }
}

/// Labeled graph on `n` vertices whose edge set is the bitmask `mask`
/// over pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(x, _) in g.neighbors(v) {
            if !seen[x] {
                seen[x] = true;
                count += 1;
                stack.push(x);
            }
        }
    }
    count == g.n()
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// as canonical edge masks (the minimum mask over all relabelings).
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "brute-force canonical forms are only feasible for n <= 7");
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut bit_of = vec![vec![0usize; n]; n];
    let mut bit = 0;
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for v in u + 1..n {
            bit_of[u][v] = bit;
            bit_of[v][u] = bit;
            bit += 1;
        }
    }
    let canon = |mask: u64| -> u64 {
        let mut best = u64::MAX;
        for p in &perms {
            let mut img = 0u64;
            let mut b = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask >> b & 1 == 1 {
                        img |= 1 << bit_of[p[u]][p[v]];
                    }
                    b += 1;
                }
            }
            best = best.min(img);
        }
        best
    };
    // Canonical augmentation by edge count: every class with k+1 edges is
    // reached from some class with k edges by adding one edge.
    let mut layer = vec![0u64];
    let mut all = vec![0u64];
    for _ in 0..pairs {
        let mut next = std::collections::BTreeSet::new();
        for &m in &layer {
            for b in 0..pairs {
                if m >> b & 1 == 0 {
                    next.insert(canon(m | 1 << b));
                }
            }
        }
        layer = next.into_iter().collect();
        all.extend(&layer);
    }
    all.into_iter().map(|m| graph_from_mask(n, m)).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_perm(n, &mut p, &mut out);
    out
}

fn heap_perm(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_perm(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap_perm(k - 1, p, out);
}
