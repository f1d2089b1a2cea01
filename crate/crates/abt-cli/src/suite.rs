//! Oracle comparisons and benchmark runs behind `verify` and `bench`.

use std::fmt::Write as _;

use abt_matching::approx::approx_matching;
use abt_matching::dist::compute_dist;
use abt_matching::gen::{gnp, random_matching, random_regular, rng};
use abt_matching::mcm::{find_phase_paths, maximum_matching};
use abt_matching::oracle::{
    all_shortest_aug_paths, blossom_max_matching, brute_max_matching, enumerate_alternating_dists,
    is_maximal_disjoint_shortest_set, MAX_BLOSSOM_N, MAX_MATCHING_N, MAX_PATH_N,
};
use abt_matching::{build_matching_system, Error, Graph, Matching, Parity};
use rand::Rng;
use serde_json::{json, Value};

use crate::Generator;

/// Accuracy used by the approximation check.
const VERIFY_EPS: f64 = 0.25;

#[derive(Debug, Default)]
pub struct Verdict {
    pub instances: usize,
    pub dist_checked: usize,
    pub dist_mismatches: usize,
    pub phase_checked: usize,
    pub maximality_failures: usize,
    pub size_mismatches: usize,
    pub approx_failures: usize,
    pub first_failure: Option<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.dist_mismatches + self.maximality_failures + self.size_mismatches + self.approx_failures == 0
    }

    fn fail(&mut self, what: &str, g: &Graph, m: &Matching) {
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("{what}: edges {:?} matching {:?}", g.sorted_edges(), m.pairs()));
        }
    }

    pub fn write_text(&self, out: &mut String) {
        let _ = writeln!(out, "c instances {}", self.instances);
        let _ = writeln!(out, "c dist_checked {}", self.dist_checked);
        let _ = writeln!(out, "c dist_mismatches {}", self.dist_mismatches);
        let _ = writeln!(out, "c phase_checked {}", self.phase_checked);
        let _ = writeln!(out, "c maximality_failures {}", self.maximality_failures);
        let _ = writeln!(out, "c size_mismatches {}", self.size_mismatches);
        let _ = writeln!(out, "c approx_failures {}", self.approx_failures);
        if let Some(f) = &self.first_failure {
            let _ = writeln!(out, "c first_failure {f}");
        }
        let _ = writeln!(out, "s {}", if self.passed() { "PASS" } else { "FAIL" });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "command": "verify",
            "passed": self.passed(),
            "instances": self.instances,
            "dist_checked": self.dist_checked,
            "dist_mismatches": self.dist_mismatches,
            "phase_checked": self.phase_checked,
            "maximality_failures": self.maximality_failures,
            "size_mismatches": self.size_mismatches,
            "approx_failures": self.approx_failures,
            "first_failure": self.first_failure,
        })
    }
}

fn oracle_mu(g: &Graph) -> abt_matching::Result<usize> {
    if g.n() <= MAX_MATCHING_N {
        Ok(brute_max_matching(g)?.0)
    } else if g.n() <= MAX_BLOSSOM_N {
        Ok(blossom_max_matching(g)?.0)
    } else {
        Err(Error::TooLarge {
            n: g.n(),
            limit: MAX_BLOSSOM_N,
        })
    }
}

fn check(v: &mut Verdict, g: &Graph, m: Matching) -> abt_matching::Result<()> {
    v.instances += 1;
    let ms = build_matching_system(g, m)?;
    if g.n() <= MAX_PATH_N {
        v.dist_checked += 1;
        let dt = compute_dist(&ms, None);
        let or = enumerate_alternating_dists(&ms)?;
        let agree = (0..g.n()).all(|x| {
            [Parity::Odd, Parity::Even]
                .iter()
                .all(|&p| dt.dist(x, p) == or.get(x, p))
        });
        if !agree {
            v.dist_mismatches += 1;
            v.fail("distance mismatch", g, &ms.matching);
        }
        v.phase_checked += 1;
        let ok = match find_phase_paths(&ms)? {
            Some((paths, _)) => is_maximal_disjoint_shortest_set(&ms, &paths)?,
            None => all_shortest_aug_paths(&ms)?.is_empty(),
        };
        if !ok {
            v.maximality_failures += 1;
            v.fail("phase not maximal", g, &ms.matching);
        }
    }
    let mu = oracle_mu(g)?;
    if maximum_matching(g, Some(ms.matching.clone()))?.matching.size() != mu {
        v.size_mismatches += 1;
        v.fail("exact size differs from oracle", g, &ms.matching);
    }
    let approx = approx_matching(g, VERIFY_EPS)?.matching;
    // ⌈(1 - 1/4) μ⌉
    if !approx.is_valid_for(g) || approx.size() < (3 * mu).div_ceil(4) {
        v.approx_failures += 1;
        v.fail("approximation below (1 - eps) mu", g, &ms.matching);
    }
    Ok(())
}

pub fn verify_one(g: &Graph, m: Option<Matching>) -> abt_matching::Result<Verdict> {
    let mut v = Verdict::default();
    check(&mut v, g, m.unwrap_or_else(|| Matching::empty(g.n())))?;
    Ok(v)
}

pub fn verify_random(seed: u64, count: usize, max_n: usize) -> abt_matching::Result<Verdict> {
    let max_n = max_n.max(2);
    let mut r = rng(seed);
    let mut v = Verdict::default();
    for _ in 0..count {
        let n = r.gen_range(2..=max_n);
        let p = [0.2, 0.35, 0.5][r.gen_range(0..3)];
        let g = gnp(&mut r, n, p);
        let m = random_matching(&mut r, &g, 0.7);
        check(&mut v, &g, m)?;
    }
    Ok(v)
}

pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub size: usize,
    pub phases: usize,
    /// Largest distance-plus-search operation count of a single phase.
    pub max_phase_ops: u64,
    pub max_ddfs_visited: u64,
}

impl BenchRow {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "matching_size": self.size,
            "phases": self.phases,
            "max_phase_ops": self.max_phase_ops,
            "max_ddfs_visited": self.max_ddfs_visited,
        })
    }
}

pub fn generate(gen: Generator, degree: usize, seed: u64, n: usize) -> Graph {
    let mut r = rng(seed);
    match gen {
        Generator::Gnp => gnp(&mut r, n, if n > 1 { degree as f64 / (n - 1) as f64 } else { 0.0 }),
        Generator::Regular => random_regular(&mut r, n, degree),
    }
}

pub fn bench(gen: Generator, degree: usize, seed: u64, count: usize, n: usize) -> abt_matching::Result<Vec<BenchRow>> {
    (0..count as u64)
        .map(|i| {
            let g = generate(gen, degree, seed.wrapping_add(i), n);
            let r = maximum_matching(&g, None)?;
            Ok(BenchRow {
                n: g.n(),
                m: g.m(),
                size: r.matching.size(),
                phases: r.phases.len(),
                max_phase_ops: r
                    .phases
                    .iter()
                    .map(|p| p.dist_ops.total() + p.ddfs.visited_edges)
                    .max()
                    .unwrap_or(0),
                max_ddfs_visited: r.phases.iter().map(|p| p.ddfs.visited_edges).max().unwrap_or(0),
            })
        })
        .collect()
}
