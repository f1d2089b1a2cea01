use abt_matching::abt::{build_abt, compute_mies, path_construction, path_from_super};
use abt_matching::dist::compute_dist;
use abt_matching::gen::{all_matchings, gnp, graph_from_mask, random_matching, rng};
use abt_matching::{build_matching_system, AlternatingPath, Graph, Matching, MatchingSystem, Parity};

/// Simple, alternating in the sense of the virtual prefix, starting free.
fn is_theta_path(ms: &MatchingSystem<'_>, p: &AlternatingPath) -> bool {
    let mut seen = vec![false; ms.graph.n()];
    if !p.vertices.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    if !ms.is_free(p.vertices[0]) {
        return false;
    }
    let mut theta = Parity::Even;
    for &e in &p.edges {
        if ms.rho(e) != theta {
            return false;
        }
        theta = theta.flip();
    }
    true
}

fn check(g: &Graph, m: Matching) {
    let ms = build_matching_system(g, m).unwrap();
    let dt = compute_dist(&ms, None);
    let abt = build_abt(&dt, &ms, &[]).unwrap();
    let mies = compute_mies(&abt, &dt, &ms);
    for t in 0..g.n() {
        let Some(r) = abt.root_of(t) else { continue };
        for theta in [Parity::Even, Parity::Odd] {
            let Some(d) = dt.dist(t, theta) else { continue };
            // From the component root the walk may legitimately leave T(r); when it
            // stays inside, it must agree in length with the whole path.
            if let (true, Ok(q)) = (t != r, path_construction(&abt, &mies, &dt, &ms, r, t, theta)) {
                assert_eq!(q.len() as u32 + 2, d);
            }
            let p = path_from_super(&abt, &mies, &dt, &ms, t, theta)
                .unwrap_or_else(|e| panic!("{e} t={t} {theta:?} edges={:?} m={:?}", g.edges(), ms.matching.pairs()));
            assert_eq!(
                p.len() as u32 + 2,
                d,
                "t={t} {theta:?} edges={:?} m={:?}",
                g.edges(),
                ms.matching.pairs()
            );
            assert!(is_theta_path(&ms, &p), "t={t} {theta:?} path={:?}", p.vertices);
            assert_eq!(*p.vertices.last().unwrap(), t);
        }
    }
}

#[test]
fn paths_from_roots_are_shortest_on_all_small_graphs() {
    for n in 1..=6 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            for m in all_matchings(&g) {
                check(&g, m);
            }
        }
    }
}

#[test]
fn paths_from_roots_are_shortest_on_random_graphs() {
    let mut r = rng(5);
    for i in 0..3000 {
        let n = 4 + i % 40;
        let g = gnp(&mut r, n, [0.08, 0.15, 0.3][i % 3]);
        let m = random_matching(&mut r, &g, 0.8);
        check(&g, m);
    }
}
