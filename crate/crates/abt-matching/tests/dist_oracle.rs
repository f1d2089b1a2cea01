use abt_matching::dist::compute_dist;
use abt_matching::gen::{all_matchings, gnp, graph_from_mask, nonisomorphic_graphs, random_matching, rng};
use abt_matching::oracle::enumerate_alternating_dists;
use abt_matching::{build_matching_system, Graph, Matching, Parity};

fn check(g: &Graph, m: Matching) {
    let ms = build_matching_system(g, m).unwrap();
    let dt = compute_dist(&ms, None);
    let or = enumerate_alternating_dists(&ms).unwrap();
    for v in 0..g.n() {
        for p in [Parity::Odd, Parity::Even] {
            assert_eq!(
                dt.dist(v, p),
                or.get(v, p),
                "v={v} {p:?} edges={:?} m={:?}",
                g.edges(),
                ms.matching.pairs()
            );
        }
    }
}

#[test]
fn all_labeled_graphs_up_to_six() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            for m in all_matchings(&g) {
                check(&g, m);
            }
        }
    }
}

#[test]
fn every_seven_vertex_graph_up_to_isomorphism() {
    let graphs = nonisomorphic_graphs(7);
    assert_eq!(graphs.len(), 1044);
    for g in &graphs {
        for m in all_matchings(g) {
            check(g, m);
        }
    }
}

#[test]
fn random_up_to_twelve() {
    let mut r = rng(11);
    for i in 0..2000 {
        let n = 2 + i % 11;
        let p = [0.2, 0.35, 0.5][i % 3];
        let g = gnp(&mut r, n, p);
        let m = random_matching(&mut r, &g, 0.7);
        check(&g, m);
    }
}
