//! The double DFS finds a maximal set of disjoint double paths, checked by
//! brute-force path enumeration on small DAGs.

use abt_matching::abd::{build_abd_bounded, candidate_edges, Abd};
use abt_matching::ddfs::{maximal_double_paths, DdfsOutcome, DdfsStats, WorkingDag};
use abt_matching::dist::{compute_dist, shortest_aug_length};
use abt_matching::gen::{all_matchings, gnp, graph_from_mask, random_matching, rng};
use abt_matching::{build_matching_system, Graph};
use rand::Rng;

/// Every path from `s` to a sink inside the vertices not in `blocked`.
fn paths_to_sinks(h: &Abd, s: usize, blocked: &[bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![s];
    fn rec(h: &Abd, blocked: &[bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *cur.last().unwrap();
        if h.sink[v] {
            out.push(cur.clone());
            return;
        }
        for &x in h.out(v) {
            if !blocked[x] && h.present[x] {
                cur.push(x);
                rec(h, blocked, cur, out);
                cur.pop();
            }
        }
    }
    if !blocked[s] && h.present[s] {
        rec(h, blocked, &mut cur, &mut out);
    }
    out
}

fn has_double_path(h: &Abd, y: usize, z: usize, blocked: &[bool]) -> bool {
    let py = paths_to_sinks(h, y, blocked);
    let pz = paths_to_sinks(h, z, blocked);
    py.iter().any(|p| pz.iter().any(|q| p.iter().all(|v| !q.contains(v))))
}

fn is_dag_path(h: &Abd, p: &[usize]) -> bool {
    h.sink[*p.last().unwrap()] && p.windows(2).all(|w| h.out(w[0]).contains(&w[1]))
}

/// Runs every pair in order and checks validity, disjointness and maximality.
fn check(h: &Abd, pairs: &[(usize, usize)], exact: bool) -> DdfsStats {
    let mut w = WorkingDag::new(h);
    w.use_exact_search(exact);
    let mut used = vec![false; h.n()];
    let mut found = vec![false; pairs.len()];
    for (i, &(y, z)) in pairs.iter().enumerate() {
        let before = has_double_path(h, y, z, &used);
        let out = w.ddfs_once(y, z);
        assert!(w.check_invariant(), "invariant broken after pair {i} {:?}", h.edges());
        if let Some(DdfsOutcome::Success { p, q, omissible }) = out {
            assert_eq!((p[0], q[0]), (y, z));
            assert!(
                is_dag_path(h, &p) && is_dag_path(h, &q),
                "bad paths {p:?} {q:?} in {:?}",
                h.edges()
            );
            for &v in p.iter().chain(&q) {
                assert!(
                    !std::mem::replace(&mut used[v], true),
                    "vertex {v} reused in {:?}",
                    h.edges()
                );
                assert!(omissible.contains(&v));
            }
            found[i] = true;
        } else {
            assert!(
                !before,
                "missed a double path for ({y},{z}) in {:?} with {pairs:?}",
                h.edges()
            );
        }
    }
    for (i, &(y, z)) in pairs.iter().enumerate() {
        if !found[i] {
            assert!(
                !has_double_path(h, y, z, &used),
                "not maximal at ({y},{z}) in {:?}",
                h.edges()
            );
        }
    }
    w.stats
}

/// Random DAG whose edges descend in `phi`; vertices with nothing below are sinks.
fn random_dag<R: Rng>(r: &mut R, n: usize) -> Abd {
    let mut phi: Vec<u32> = (0..n).map(|_| r.gen_range(2..7)).collect();
    let low = *phi.iter().min().unwrap();
    for p in phi.iter_mut() {
        if *p == low {
            *p = 2;
        }
    }
    let sink: Vec<bool> = phi.iter().map(|&p| p == 2).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        if sink[u] {
            continue;
        }
        let lower: Vec<usize> = (0..n).filter(|&v| phi[v] < phi[u]).collect();
        let before = edges.len();
        for &v in &lower {
            if r.gen_bool(0.35) {
                edges.push((u, v));
            }
        }
        if edges.len() == before {
            edges.push((u, lower[r.gen_range(0..lower.len())]));
        }
    }
    Abd::from_parts(phi, sink, &edges)
}

#[test]
fn random_dags_lockstep_and_exact() {
    let mut r = rng(11);
    let mut totals = [DdfsStats::default(); 2];
    for _ in 0..20000 {
        let n = r.gen_range(3..=12);
        let h = random_dag(&mut r, n);
        let mut pairs = Vec::new();
        for _ in 0..r.gen_range(1..9) {
            let y = r.gen_range(0..n);
            let z = r.gen_range(0..n);
            if y != z {
                pairs.push((y, z));
            }
        }
        for (k, exact) in [false, true].into_iter().enumerate() {
            let s = check(&h, &pairs, exact);
            totals[k].runs += s.runs;
            totals[k].fallbacks += s.fallbacks;
            totals[k].bottlenecks += s.bottlenecks;
            totals[k].successes += s.successes;
        }
    }
    println!("double DFS: {:?}", totals[0]);
    println!("exact search: {:?}", totals[1]);
    assert!(totals[0].bottlenecks > 100 && totals[0].runs > 1000);
}

fn matching_corpus_check(g: &Graph, m: abt_matching::Matching) -> (usize, DdfsStats) {
    let ms = build_matching_system(g, m).unwrap();
    let dt = compute_dist(&ms, None);
    let Some(l) = shortest_aug_length(&dt, &ms) else {
        return (0, DdfsStats::default());
    };
    let h = build_abd_bounded(&dt, &ms, Some(l + 2));
    let cands = candidate_edges(&dt, &ms, l);
    let (paths, stats) = maximal_double_paths(&h, g, &cands);
    let mut used = vec![false; g.n()];
    for d in &paths {
        d.validate(&dt, &ms).unwrap();
        for &v in d.p.iter().chain(&d.q) {
            assert!(!std::mem::replace(&mut used[v], true));
        }
    }
    for c in &cands {
        let (y, z) = g.edge(c.edge);
        if !paths.iter().any(|d| d.edge == c.edge) {
            assert!(
                !has_double_path(&h, y, z, &used),
                "not maximal in {:?} / {:?}",
                g.edges(),
                ms.matching.pairs()
            );
        }
    }
    (paths.len(), stats)
}

#[test]
fn labeled_graphs_up_to_six_vertices() {
    let mut fallbacks = 0;
    for n in 2..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            for m in all_matchings(&g) {
                fallbacks += matching_corpus_check(&g, m).1.fallbacks;
            }
        }
    }
    println!("fallbacks: {fallbacks}");
}

#[test]
fn random_graphs_with_random_matchings() {
    let mut r = rng(5);
    let mut total = DdfsStats::default();
    for i in 0..3000 {
        let n = 6 + i % 40;
        let dens = r.gen_range(0.05..0.4);
        let g = gnp(&mut r, n, dens);
        let keep = r.gen_range(0.3..1.0);
        let m = random_matching(&mut r, &g, keep);
        let (_, s) = matching_corpus_check(&g, m);
        total.runs += s.runs;
        total.fallbacks += s.fallbacks;
        total.successes += s.successes;
    }
    println!("{total:?}");
}
