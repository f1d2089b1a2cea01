//! Hitting sets, double reachability, stretching and the approximation bound.

use abt_matching::abd::{build_abd_bounded, candidate_edges, Abd};
use abt_matching::approx::{
    amplifier, approx_matching, aug_and_hit, double_reachable, parallel_dfs, search_limit, CostMeter, ParallelDfs,
};
use abt_matching::dist::{compute_dist, shortest_aug_length};
use abt_matching::gen::{all_matchings, gnp, graph_from_mask, random_matching, rng};
use abt_matching::oracle::{all_shortest_aug_paths, blossom_max_matching, brute_max_matching};
use abt_matching::stretch::{length_stretch, recover};
use abt_matching::{build_matching_system, greedy_maximal_matching, is_augmenting_path, Graph, Matching, VertexId};
use proptest::prelude::*;
use rand::Rng;

/// Runs aug_and_hit with bound `l` and checks paths, the hitting property and the size bound.
fn check_hitting(g: &Graph, m: Matching, l: u32) -> usize {
    let ms = build_matching_system(g, m).unwrap();
    let r = aug_and_hit(&ms, l, &mut CostMeter::default()).unwrap();
    let shortest = all_shortest_aug_paths(&ms).unwrap();
    let mut covered = vec![false; g.n()];
    for &v in &r.hitting {
        covered[v] = true;
    }
    let mut used = vec![false; g.n()];
    for p in &r.paths {
        assert!(is_augmenting_path(&ms, p));
        assert!(
            shortest.contains(&p.canonical()),
            "{p:?} is not shortest in {:?}",
            g.edges()
        );
        for &v in &p.vertices {
            assert!(!std::mem::replace(&mut used[v], true));
            covered[v] = true;
        }
    }
    assert!(
        r.report.within_bound,
        "hitting set of {} for {} paths",
        r.hitting.len(),
        r.paths.len()
    );
    let reachable = shortest.first().is_some_and(|p| p.len() as u32 <= 2 * l + 1);
    if reachable {
        for p in &shortest {
            assert!(
                p.vertices.iter().any(|&v| covered[v]),
                "{:?} missed by B={:?} Q={:?} in {:?} / {:?}",
                p.vertices,
                r.hitting,
                r.paths,
                g.edges(),
                ms.matching.pairs()
            );
        }
    } else {
        assert!(r.paths.is_empty());
    }
    r.paths.len()
}

#[test]
fn hitting_sets_on_labeled_graphs_up_to_six_vertices() {
    for n in 2..=6usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            for m in all_matchings(&g) {
                check_hitting(&g, m.clone(), 0);
                check_hitting(&g, m, 3);
            }
        }
    }
}

#[test]
fn hitting_sets_on_random_graphs_up_to_ten_vertices() {
    let mut r = rng(31);
    let mut found = 0;
    for _ in 0..3000 {
        let n = r.gen_range(4..=10);
        let p = r.gen_range(0.1..0.6);
        let g = gnp(&mut r, n, p);
        let keep = r.gen_range(0.3..1.0);
        let m = random_matching(&mut r, &g, keep);
        let l = r.gen_range(0..5);
        found += check_hitting(&g, m, l);
    }
    assert!(found > 1000);
}

fn paths_to(h: &Abd, from: VertexId, to: VertexId, inside: &[bool]) -> Vec<Vec<VertexId>> {
    fn rec(h: &Abd, to: VertexId, inside: &[bool], cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let v = *cur.last().unwrap();
        if v == to {
            out.push(cur.clone());
            return;
        }
        for &w in h.out(v) {
            if inside[w] {
                cur.push(w);
                rec(h, to, inside, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if inside[from] {
        rec(h, to, inside, &mut vec![from], &mut out);
    }
    out
}

/// Definition: disjoint `P: y → root` and `Q: z → v` inside the region for some bridge `{y, z}`.
fn brute_double_reachable(h: &Abd, bridges: &[(VertexId, VertexId)], d: &ParallelDfs, r: usize, v: VertexId) -> bool {
    let mut inside = vec![false; h.n()];
    for &x in &d.regions[r].members {
        inside[x] = true;
    }
    let root = d.regions[r].root;
    bridges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).any(|(y, z)| {
        let ps = paths_to(h, y, root, &inside);
        let qs = paths_to(h, z, v, &inside);
        ps.iter().any(|p| qs.iter().any(|q| p.iter().all(|x| !q.contains(x))))
    })
}

fn check_double_reachable(g: &Graph, m: Matching, limit: usize) -> usize {
    let ms = build_matching_system(g, m).unwrap();
    let dt = compute_dist(&ms, None);
    let Some(l) = shortest_aug_length(&dt, &ms) else {
        return 0;
    };
    let h = build_abd_bounded(&dt, &ms, Some(l + 2));
    let bridges: Vec<_> = candidate_edges(&dt, &ms, l).iter().map(|c| g.edge(c.edge)).collect();
    let d = parallel_dfs(&h, limit);
    let mut hits = 0;
    for r in 0..d.regions.len() {
        let got = double_reachable(&ms, &dt, &h, &d, r).unwrap();
        for &v in &d.regions[r].members {
            let leaves = h.out(v).iter().any(|&w| d.owner[w].is_some_and(|o| o != r));
            if !leaves || d.state[v] != Some(abt_matching::approx::SearchState::Dead) {
                continue;
            }
            let want = brute_double_reachable(&h, &bridges, &d, r, v);
            assert_eq!(
                got.contains(&v),
                want,
                "vertex {v} of region {r} in {:?} / {:?}",
                g.edges(),
                ms.matching.pairs()
            );
            hits += want as usize;
        }
    }
    hits
}

#[test]
fn double_reachability_matches_its_definition() {
    let mut r = rng(41);
    let mut hits = 0;
    for _ in 0..6000 {
        let n = r.gen_range(5..=12);
        let p = r.gen_range(0.15..0.6);
        let g = gnp(&mut r, n, p);
        let keep = r.gen_range(0.5..1.0);
        let m = random_matching(&mut r, &g, keep);
        hits += check_double_reachable(&g, m, 64);
    }
    println!("double reachable vertices seen: {hits}");
    assert!(hits > 50);
}

#[test]
fn search_closure_properties_under_any_step_limit() {
    let mut r = rng(43);
    for _ in 0..2000 {
        let n = r.gen_range(4..=40);
        let p = r.gen_range(0.05..0.4);
        let g = gnp(&mut r, n, p);
        let keep = r.gen_range(0.5..1.0);
        let m = random_matching(&mut r, &g, keep);
        let ms = build_matching_system(&g, m).unwrap();
        let dt = compute_dist(&ms, None);
        let Some(l) = shortest_aug_length(&dt, &ms) else {
            continue;
        };
        let h = build_abd_bounded(&dt, &ms, Some(l + 2));
        let d = parallel_dfs(&h, search_limit(l));
        d.check_properties(&h, l).unwrap();
        let short = parallel_dfs(&h, r.gen_range(1..6));
        let idle_to_dead = h.edges().iter().any(|&(v, w)| {
            short.state[v] == Some(abt_matching::approx::SearchState::Idle)
                && short.state[w] == Some(abt_matching::approx::SearchState::Dead)
        });
        assert!(!idle_to_dead);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn stretch_then_recover_is_identity(seed in 0u64..u64::MAX, n in 2usize..30, rounds in 1usize..4) {
        let mut r = rng(seed);
        let p = r.gen_range(0.05..0.5);
        let g = gnp(&mut r, n, p);
        let keep = r.gen_range(0.0..1.0);
        let m = random_matching(&mut r, &g, keep);
        let mut graphs = vec![g.clone()];
        let mut maps = Vec::new();
        let mut cur = m.clone();
        for _ in 0..rounds {
            let gi = graphs.last().unwrap();
            let ms = build_matching_system(gi, cur).unwrap();
            let b: Vec<VertexId> = (0..gi.n()).filter(|_| r.gen_bool(0.4)).collect();
            let st = length_stretch(&ms, &b).unwrap();
            prop_assert_eq!(st.matching.size(), ms.matching.size() + b.iter().filter(|&&v| ms.is_free(v)).count()
                + st.map.subdivisions.len());
            cur = st.matching;
            graphs.push(st.graph);
            maps.push(st.map);
        }
        for (gi, map) in graphs.iter().zip(&maps).rev() {
            cur = recover(gi, &cur, map).unwrap();
        }
        prop_assert_eq!(cur, m);
    }
}

#[test]
fn stretching_lengthens_every_hit_shortest_path() {
    let mut r = rng(47);
    for _ in 0..1500 {
        let n = r.gen_range(4..=9);
        let p = r.gen_range(0.2..0.6);
        let g = gnp(&mut r, n, p);
        let keep = r.gen_range(0.3..1.0);
        let m = random_matching(&mut r, &g, keep);
        let ms = build_matching_system(&g, m).unwrap();
        let before = all_shortest_aug_paths(&ms).unwrap();
        let Some(len) = before.first().map(|p| p.len()) else {
            continue;
        };
        let b: Vec<VertexId> = (0..n).filter(|_| r.gen_bool(0.3)).collect();
        let st = length_stretch(&ms, &b).unwrap();
        let sms = build_matching_system(&st.graph, st.matching.clone()).unwrap();
        for p in &before {
            let image = st.map.map_path(&st.graph, p).unwrap();
            assert!(is_augmenting_path(&sms, &image));
            let hit = p.vertices.iter().any(|v| b.contains(v));
            assert_eq!(image.len() >= len + 2, hit);
        }
    }
}

#[test]
fn amplifier_bookkeeping_against_the_brute_force_maximum() {
    let mut r = rng(53);
    for _ in 0..400 {
        let n = r.gen_range(4..=20);
        let p = r.gen_range(0.1..0.5);
        let g = gnp(&mut r, n, p);
        let (mu, _) = brute_max_matching(&g).unwrap();
        let m = greedy_maximal_matching(&g);
        let start = m.size();
        for k in 1..=2 {
            let (out, rep) = amplifier(&g, m.clone(), k, &mut CostMeter::default()).unwrap();
            assert!(out.is_valid_for(&g));
            assert_eq!(out.size(), start + rep.paths);
            // μ(G_{j+1}) = μ + Σ_{i≤j} |B_i| ≤ 2μ is owed only while q_j < cα²μ.
            let (mut q, mut b) = (0u64, 0usize);
            for &(paths, hit) in &rep.phase_log {
                q += paths as u64;
                b += hit;
                if (q * 648) << (2 * k) < mu as u64 {
                    assert!(
                        mu + b <= 2 * mu,
                        "stretched maximum exceeds twice the original on {:?}",
                        g.edges()
                    );
                }
            }
            assert!(rep.within_bound);
        }
    }
}

fn approx_suite(count: usize, seed: u64, max_n: usize) {
    let mut r = rng(seed);
    for i in 0..count {
        let n = r.gen_range(2..=max_n);
        let p = [0.05, 0.1, 0.2, 0.4][i % 4];
        let g = gnp(&mut r, n, p);
        let (mu, _) = blossom_max_matching(&g).unwrap();
        for x in 1..=3u32 {
            let eps = 0.5f64.powi(x as i32);
            let out = approx_matching(&g, eps).unwrap();
            assert!(out.matching.is_valid_for(&g));
            let need = (((1u64 << x) - 1) * mu as u64).div_ceil(1 << x) as usize;
            assert!(
                out.matching.size() >= need,
                "eps 2^-{x}: {} < {need} of {mu} on {:?}",
                out.matching.size(),
                g.edges()
            );
            assert!(out.within_bound);
        }
    }
}

#[test]
fn approximation_on_random_graphs_up_to_sixty_vertices() {
    approx_suite(120, 61, 60);
}

#[test]
fn approx_spec_examples() {
    let p4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(approx_matching(&p4, 0.25).unwrap().matching.size(), 2);
    let m = Matching::from_pairs(&p4, &[(1, 2)]).unwrap();
    assert_eq!(amplifier(&p4, m, 1, &mut CostMeter::default()).unwrap().0.size(), 2);
    let c5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert_eq!(approx_matching(&c5, 0.5).unwrap().matching.size(), 2);
}
