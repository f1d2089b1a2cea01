use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use abt_matching::abt::{build_abt, compute_mies, dump_tree};
use abt_matching::approx::approx_matching;
use abt_matching::dist::compute_dist;
use abt_matching::io::parse_instance;
use abt_matching::mcm::maximum_matching;
use abt_matching::{build_matching_system, Graph, Matching};
use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod suite;

/// Maximum-cardinality matching in general graphs.
///
/// Input files use the plain edge-list format: a header `p <n> <m>`, one
/// `e <u> <v>` line per edge and optional `m <u> <v>` lines naming an initial
/// matching. Vertex ids are 0-based and `#` starts a comment line.
#[derive(Parser, Debug)]
#[command(name = "abt-match", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    report: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Erdős–Rényi G(n, p) with p = degree / (n - 1).
    Gnp,
    /// Configuration-model d-regular graph, loops and repeated pairs dropped.
    Regular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact maximum matching, grown from the file's matching or a greedy one.
    Match {
        #[arg(long)]
        input: PathBuf,
    },
    /// (1 - eps)-approximate matching with its round and pass cost.
    Approx {
        #[arg(long)]
        input: PathBuf,
        /// Accuracy as a fraction (`1/8`) or decimal; rounded down to a power of two.
        #[arg(long)]
        eps: String,
    },
    /// Odd and even alternating distances for the file's matching (empty if none).
    Dist {
        #[arg(long)]
        input: PathBuf,
    },
    /// Alternating base tree and minimum incoming edges for the file's matching.
    Tree {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compare distances, phases, exact sizes and the approximation against brute force.
    ///
    /// Without `--input`, checks `--count` random G(n, p) instances with
    /// 2 ≤ n ≤ max-n, each with a random initial matching. Exits with 2 on
    /// any mismatch.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Phase counts and operation counters of the exact driver on generated graphs.
    Bench {
        #[arg(long, value_enum, default_value_t = Generator::Gnp)]
        gen: Generator,
        /// Expected (gnp) or target (regular) vertex degree.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Vertices per generated graph.
        #[arg(long, default_value_t = 1000)]
        max_n: usize,
    },
}

/// Parses `a/b` or a decimal.
fn parse_eps(s: &str) -> anyhow::Result<f64> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().with_context(|| format!("bad numerator in `{s}`"))?;
            let b: f64 = b.trim().parse().with_context(|| format!("bad denominator in `{s}`"))?;
            if b == 0.0 {
                bail!("zero denominator in `{s}`");
            }
            a / b
        }
        None => s.trim().parse().with_context(|| format!("bad epsilon `{s}`"))?,
    };
    Ok(v)
}

fn load(path: &PathBuf) -> anyhow::Result<(Graph, Option<Matching>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let inst = parse_instance(&text).with_context(|| path.display().to_string())?;
    Ok((inst.graph, inst.matching))
}

fn pairs_json(m: &Matching) -> Value {
    Value::Array(m.pairs().into_iter().map(|(u, v)| json!([u, v])).collect())
}

fn pairs_text(out: &mut String, m: &Matching) {
    for (u, v) in m.pairs() {
        let _ = writeln!(out, "m {u} {v}");
    }
}

pub struct Report {
    text: String,
    json: Value,
    mismatch: bool,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let mut text = String::new();
    let (json, mismatch) = match cli.command {
        Command::Match { input } => {
            let (g, m) = load(&input)?;
            let r = maximum_matching(&g, m)?;
            let _ = writeln!(text, "c phases {}", r.phases.len());
            let _ = writeln!(text, "s {}", r.matching.size());
            pairs_text(&mut text, &r.matching);
            let phases: Vec<Value> = r
                .phases
                .iter()
                .map(|p| {
                    json!({
                        "path_len": p.path_len,
                        "paths": p.paths,
                        "candidates": p.candidates,
                        "size": p.size,
                        "dist_ops": p.dist_ops.total(),
                        "ddfs_visited_edges": p.ddfs.visited_edges,
                    })
                })
                .collect();
            let j = json!({
                "schema": 1,
                "command": "match",
                "n": g.n(),
                "m": g.m(),
                "matching_size": r.matching.size(),
                "phases": phases,
                "matching": pairs_json(&r.matching),
            });
            (j, false)
        }
        Command::Approx { input, eps } => {
            let (g, _) = load(&input)?;
            let r = approx_matching(&g, parse_eps(&eps)?)?;
            let c = r.cost;
            let _ = writeln!(text, "c eps 2^-{}", r.eps_exp);
            let _ = writeln!(text, "c congest_rounds {}", c.congest_rounds);
            let _ = writeln!(text, "c stream_passes {}", c.stream_passes);
            let _ = writeln!(text, "c mm_invocations {}", c.mm_invocations);
            let _ = writeln!(text, "c within_bound {}", r.within_bound);
            let _ = writeln!(text, "s {}", r.matching.size());
            pairs_text(&mut text, &r.matching);
            let scales: Vec<Value> = r
                .scales
                .iter()
                .map(|s| {
                    json!({
                        "alpha_exp": s.alpha_exp,
                        "scheduled": s.scheduled,
                        "executed": s.executed,
                        "size_after": s.size_after,
                    })
                })
                .collect();
            let j = json!({
                "schema": 1,
                "command": "approx",
                "n": g.n(),
                "m": g.m(),
                "eps_exp": r.eps_exp,
                "matching_size": r.matching.size(),
                "congest_rounds": c.congest_rounds,
                "stream_passes": c.stream_passes,
                "mm_invocations": c.mm_invocations,
                "within_bound": r.within_bound,
                "scales": scales,
                "matching": pairs_json(&r.matching),
            });
            (j, false)
        }
        Command::Dist { input } => {
            let (g, m) = load(&input)?;
            let ms = build_matching_system(&g, m.unwrap_or_else(|| Matching::empty(g.n())))?;
            let dt = compute_dist(&ms, None);
            let dump = dt.dump();
            text.push_str("c v dist_odd dist_even par\n");
            text.push_str(&dump);
            let rows: Vec<Value> = dump
                .lines()
                .map(|l| {
                    let f: Vec<&str> = l.split(' ').collect();
                    let num = |s: &str| s.parse::<u64>().map_or(Value::Null, Value::from);
                    json!({ "v": num(f[0]), "dist_odd": num(f[1]), "dist_even": num(f[2]), "par": num(f[3]) })
                })
                .collect();
            (
                json!({ "schema": 1, "command": "dist", "n": g.n(), "vertices": rows }),
                false,
            )
        }
        Command::Tree { input } => {
            let (g, m) = load(&input)?;
            let ms = build_matching_system(&g, m.unwrap_or_else(|| Matching::empty(g.n())))?;
            let dt = compute_dist(&ms, None);
            let abt = build_abt(&dt, &ms, &[])?;
            let mies = compute_mies(&abt, &dt, &ms);
            let dump = dump_tree(&abt, &mies, &ms);
            text.push_str("c v parent root mie_u mie_v mie_vlevel\n");
            text.push_str(&dump);
            let rows: Vec<Value> = dump
                .lines()
                .map(|l| {
                    let f: Vec<&str> = l.split(' ').collect();
                    let num = |s: &str| s.parse::<u64>().map_or(Value::Null, Value::from);
                    json!({
                        "v": num(f[0]),
                        "parent": num(f[1]),
                        "root": num(f[2]),
                        "mie": if f[3] == "-" { Value::Null } else { json!([num(f[3]), num(f[4])]) },
                        "mie_vlevel": num(f[5]),
                    })
                })
                .collect();
            (
                json!({ "schema": 1, "command": "tree", "n": g.n(), "vertices": rows }),
                false,
            )
        }
        Command::Verify {
            input,
            seed,
            count,
            max_n,
        } => {
            let v = match input {
                Some(p) => {
                    let (g, m) = load(&p)?;
                    suite::verify_one(&g, m)?
                }
                None => suite::verify_random(seed, count, max_n)?,
            };
            v.write_text(&mut text);
            let mismatch = !v.passed();
            (v.to_json(), mismatch)
        }
        Command::Bench {
            gen,
            degree,
            seed,
            count,
            max_n,
        } => {
            let rows = suite::bench(gen, degree, seed, count, max_n)?;
            text.push_str("c i n m size phases max_phase_ops max_ddfs_visited\n");
            for (i, r) in rows.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "b {i} {} {} {} {} {} {}",
                    r.n, r.m, r.size, r.phases, r.max_phase_ops, r.max_ddfs_visited
                );
            }
            let rows: Vec<Value> = rows.iter().map(suite::BenchRow::to_json).collect();
            (
                json!({ "schema": 1, "command": "bench", "seed": seed, "instances": rows }),
                false,
            )
        }
    };
    Ok(Report { text, json, mismatch })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.report;
    match run(cli) {
        Ok(r) => {
            let body = match format {
                Format::Text => r.text,
                Format::Json => serde_json::to_string_pretty(&r.json).expect("values are finite") + "\n",
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if r.mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("abt-match: {e:#}");
            ExitCode::from(1)
        }
    }
}
