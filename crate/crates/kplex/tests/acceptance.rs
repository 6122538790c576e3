//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::time::Instant;

use kplex::bench::Manifest;
use kplex::io::load_instance;
use kplex::runner::{default_threads, solve_repeated};
use kplex_core::oracle::DEFAULT_EXACT_LIMIT;
use kplex_core::vns::{local_search, shake};
use kplex_core::{
    evaluate, exact_solve, verify_partition, Solution, SolverConfig, State, Target, WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A best solution produced by some solve, kept for the feasibility floor.
struct Produced {
    label: String,
    graph: WeightedGraph,
    k: usize,
    solution: Solution,
}

struct Suite {
    failures: usize,
    produced: Vec<Produced>,
}

impl Suite {
    fn report(&mut self, id: usize, name: &str, pass: bool, detail: &str, started: Instant) {
        if !pass {
            self.failures += 1;
        }
        println!(
            "{} {id}. {name}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
    }
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64, integral: bool) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                let w = if integral {
                    rng.gen_range(1..=10) as f64
                } else {
                    rng.gen_range(0.001..100.0)
                };
                edges.push((u, v, w));
            }
        }
    }
    WeightedGraph::from_edges(n, edges).unwrap()
}

/// Optimum weights for k = 1, 2, 3 per oracle instance, for the
/// monotonicity check.
fn oracle_equivalence(suite: &mut Suite, threads: usize) -> Vec<[f64; 3]> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut matches = [0usize; 3];
    let mut optima = Vec::new();
    let mut misses = Vec::new();
    for i in 0..200 {
        let n = rng.gen_range(4..=9);
        let density = rng.gen_range(0.2..=0.8);
        let g = random_graph(&mut rng, n, density, true);
        let mut row = [0.0; 3];
        for k in 1..=3 {
            let exact = exact_solve(&g, k, DEFAULT_EXACT_LIMIT).unwrap();
            row[k - 1] = exact.optimum_weight;
            let report = solve_repeated(&g, &SolverConfig::with_k(k), threads).unwrap();
            if report.best_weight == exact.optimum_weight {
                matches[k - 1] += 1;
            } else {
                misses.push(format!(
                    "#{i} k={k}: {} vs {}",
                    report.best_weight, exact.optimum_weight
                ));
            }
            suite.produced.push(Produced {
                label: format!("random #{i}"),
                graph: g.clone(),
                k,
                solution: report.best().solution.clone(),
            });
        }
        optima.push(row);
    }
    let pass = matches.iter().all(|&m| m >= 198);
    let mut detail = format!(
        "VNS best equals exact optimum on {}/200 (k=1), {}/200 (k=2), {}/200 (k=3); need >= 198 each",
        matches[0], matches[1], matches[2]
    );
    if !misses.is_empty() {
        detail.push_str(&format!("; misses: {}", misses.join(", ")));
    }
    suite.report(1, "oracle equivalence", pass, &detail, started);
    optima
}

struct Row {
    alias: &'static str,
    k: usize,
    expect: f64,
    at_least: bool,
}

fn dimacs_reproduction(suite: &mut Suite, threads: usize) {
    let started = Instant::now();
    let manifest = Manifest::load(&data_dir().join("dimacs.toml")).unwrap();
    let rows = [
        Row {
            alias: "j8-2-4",
            k: 1,
            expect: 1260.0,
            at_least: false,
        },
        Row {
            alias: "h6-2",
            k: 1,
            expect: 65472.0,
            at_least: false,
        },
        Row {
            alias: "h6-2",
            k: 2,
            expect: 65472.0,
            at_least: true,
        },
        Row {
            alias: "h6-2",
            k: 3,
            expect: 65472.0,
            at_least: true,
        },
        Row {
            alias: "h6-4",
            k: 1,
            expect: 6336.0,
            at_least: false,
        },
        Row {
            alias: "h6-4",
            k: 2,
            expect: 8184.0,
            at_least: true,
        },
        Row {
            alias: "h6-4",
            k: 3,
            expect: 10560.0,
            at_least: true,
        },
        Row {
            alias: "M_a9",
            k: 1,
            expect: 14868.0,
            at_least: false,
        },
        Row {
            alias: "M_a9",
            k: 3,
            expect: 33660.0,
            at_least: false,
        },
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut current: Option<(&str, f64)> = None;
    let mut instance_times = Vec::new();
    for row in &rows {
        let entry = manifest
            .instance
            .iter()
            .find(|e| e.alias.as_deref() == Some(row.alias))
            .unwrap();
        let format = entry.format.unwrap_or(kplex::io::InstanceFormat::Dimacs);
        let g = load_instance(&entry.path, format, entry.dimacs_weights).unwrap();
        let t = Instant::now();
        let report = solve_repeated(&g, &SolverConfig::with_k(row.k), threads).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let best = report.best_weight;
        let ok = if row.at_least {
            best >= row.expect
        } else {
            best == row.expect
        };
        let mut note = String::new();
        if row.alias == "j8-2-4" && secs > 60.0 {
            note = " over the 60 s budget".into();
            pass = false;
        }
        pass &= ok;
        parts.push(format!(
            "{} k={} best {} ({} {}) in {:.1}s{}",
            row.alias,
            row.k,
            best,
            if row.at_least { ">=" } else { "==" },
            row.expect,
            secs,
            note
        ));
        match &mut current {
            Some((alias, total)) if *alias == row.alias => *total += secs,
            _ => {
                if let Some(done) = current.take() {
                    instance_times.push(done);
                }
                current = Some((row.alias, secs));
            }
        }
        suite.produced.push(Produced {
            label: row.alias.to_string(),
            graph: g,
            k: row.k,
            solution: report.best().solution.clone(),
        });
    }
    instance_times.extend(current);
    for (alias, total) in &instance_times {
        if *total > 600.0 {
            pass = false;
            parts.push(format!(
                "{alias} took {total:.1}s, over the 10 minute budget"
            ));
        }
    }
    suite.report(2, "DIMACS reproduction", pass, &parts.join("; "), started);
}

fn incremental_equivalence(suite: &mut Suite) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut moves = 0;
    let mut bad = Vec::new();
    let mut worst_real = 0.0f64;
    for i in 0..20 {
        let integral = i % 2 == 0;
        let n = rng.gen_range(10..=50);
        let density = rng.gen_range(0.05..0.9);
        let g = random_graph(&mut rng, n, density, integral);
        let k = rng.gen_range(1..=4);
        let mut st = State::new(&g, Solution::random_initial(n, &mut rng), k);
        let mut done = 0;
        while done < 500 {
            let v = rng.gen_range(0..n);
            let l = st.solution().block_count();
            let q = rng.gen_range(0..=l);
            let t = if q == l {
                Target::New
            } else {
                Target::Existing(q)
            };
            if st.is_noop(v, t) {
                continue;
            }
            let predicted = st.evaluate_move(v, t);
            st.move_vertex(v, t);
            let full = evaluate(&g, st.solution(), k);
            let diff = (predicted.w_sol - full.w_sol).abs();
            let ok = predicted.correct_total == full.correct_total
                && if integral {
                    predicted.w_sol == full.w_sol
                } else {
                    worst_real = worst_real.max(diff / g.w_total());
                    diff <= 1e-9 * g.w_total()
                };
            if !ok {
                bad.push(format!("graph {i} move {done}"));
            }
            done += 1;
            moves += 1;
        }
    }
    let detail = format!(
        "{moves} moves on 20 graphs, {} mismatches; worst real-weight error {:.1e}·w_total (limit 1e-9)",
        bad.len(),
        worst_real
    );
    suite.report(
        3,
        "incremental evaluation",
        bad.is_empty() && moves == 10_000,
        &detail,
        started,
    );
}

fn local_optimality(suite: &mut Suite) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    for _ in 0..50 {
        let n = rng.gen_range(5..=30);
        let density = rng.gen_range(0.1..0.9);
        let integral = rng.gen_bool(0.5);
        let g = random_graph(&mut rng, n, density, integral);
        let k = rng.gen_range(1..=3);
        let mut st = State::new(&g, Solution::random_initial(n, &mut rng), k);
        local_search(&mut st, &mut rng, &mut || false);
        shake(&mut st, n / 3 + 1, &mut rng);
        local_search(&mut st, &mut rng, &mut || false);

        let labels = st.solution().labels().to_vec();
        let here = evaluate(&g, st.solution(), k);
        let l = st.solution().block_count();
        let improvable = (0..n).any(|v| {
            (0..=l).any(|q| {
                if q == labels[v] || (q == l && st.solution().block_size(labels[v]) == 1) {
                    return false;
                }
                let mut moved = labels.clone();
                moved[v] = q;
                evaluate(&g, &Solution::from_labels(&moved), k)
                    .compare(&here)
                    .unwrap()
                    == Ordering::Greater
            })
        });
        failures += usize::from(improvable);
    }
    let detail = format!("{failures} of 50 local-search outputs admit an improving single move");
    suite.report(
        4,
        "local-optimality certificate",
        failures == 0,
        &detail,
        started,
    );
}

fn feasibility_floor(suite: &mut Suite) {
    let started = Instant::now();
    let mut bad = Vec::new();
    for p in &suite.produced {
        let cert = verify_partition(&p.graph, &p.solution, p.k);
        let n = p.graph.n() as f64;
        let objective = if p.graph.w_total() > 0.0 {
            n + cert.weight / p.graph.w_total()
        } else {
            n
        };
        if !cert.feasible || objective < n {
            bad.push(format!("{} k={}", p.label, p.k));
        }
    }
    let detail = format!(
        "{} of {} solve outputs infeasible or below n{}",
        bad.len(),
        suite.produced.len(),
        if bad.is_empty() {
            String::new()
        } else {
            format!(": {}", bad.join(", "))
        }
    );
    suite.report(5, "feasibility floor", bad.is_empty(), &detail, started);
}

fn monotonicity(suite: &mut Suite, optima: &[[f64; 3]]) {
    let started = Instant::now();
    let broken = optima
        .iter()
        .filter(|o| !(o[0] <= o[1] && o[1] <= o[2]))
        .count();
    let detail = format!(
        "{broken} of {} oracle instances violate k=1 <= k=2 <= k=3",
        optima.len()
    );
    suite.report(
        6,
        "monotonicity in k",
        broken == 0 && !optima.is_empty(),
        &detail,
        started,
    );
}

fn determinism(suite: &mut Suite) {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let manifest = data_dir().join("dimacs.toml");
    let mut outputs = Vec::new();
    for i in 0..2 {
        let csv = dir.path().join(format!("run{i}.csv"));
        let args = [
            "kplex",
            "bench",
            "--manifest",
            manifest.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
            "--runs",
            "3",
            "--it-max",
            "500",
            "--seed",
            "42",
        ];
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = kplex::cli::run(args, &mut out, &mut err);
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
        outputs.push(std::fs::read(&csv).unwrap());
    }
    let same = outputs[0] == outputs[1];
    let rows = String::from_utf8_lossy(&outputs[0]).lines().count() - 1;
    let detail = format!(
        "two bench invocations over {rows} rows produced {} CSV files",
        if same { "byte-identical" } else { "different" }
    );
    suite.report(7, "determinism", same && rows == 12, &detail, started);
}

fn main() {
    let threads = default_threads();
    println!("acceptance suite, {threads} worker thread(s)");
    let mut suite = Suite {
        failures: 0,
        produced: Vec::new(),
    };
    let optima = oracle_equivalence(&mut suite, threads);
    dimacs_reproduction(&mut suite, threads);
    incremental_equivalence(&mut suite);
    local_optimality(&mut suite);
    feasibility_floor(&mut suite);
    monotonicity(&mut suite, &optima);
    determinism(&mut suite);
    if suite.failures > 0 {
        println!("{} criterion/criteria failed", suite.failures);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
