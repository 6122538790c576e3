//! JSON report written by `kplex solve`.

use kplex_core::{RunReport, SolverConfig, WeightedGraph};
use serde::{Deserialize, Serialize};

use crate::io::{write_partition, DumpHeader, InstanceFormat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub it_max: u64,
    pub itrep_max: u64,
    pub t_max: f64,
    pub prob: f64,
    pub seed: u64,
    pub runs: usize,
}

impl From<&SolverConfig> for ConfigRecord {
    fn from(c: &SolverConfig) -> Self {
        ConfigRecord {
            k: c.k,
            n_min: c.n_min,
            n_max: c.n_max,
            it_max: c.it_max,
            itrep_max: c.itrep_max,
            t_max: c.t_max,
            prob: c.prob,
            seed: c.seed,
            runs: c.runs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub objective: f64,
    pub correct_total: usize,
    pub weight: f64,
    pub feasible: bool,
    pub iterations: u64,
    pub time: f64,
    pub termination: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub run: usize,
    pub objective: f64,
    pub correct_total: usize,
    pub w_sol: f64,
    pub weight: f64,
    pub feasible: bool,
    pub blocks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub instance: String,
    pub format: InstanceFormat,
    pub dimacs_weights: bool,
    pub n: usize,
    pub m: usize,
    pub w_total: f64,
    pub config: ConfigRecord,
    pub best: BestRecord,
    pub avg_weight: f64,
    pub gap_percent: f64,
    /// Sum of the per-run wall times.
    pub total_time: f64,
    pub runs: Vec<RunRecord>,
    /// Best partition, blocks of 1-based vertex labels in canonical order.
    pub partition: Vec<Vec<usize>>,
    /// The same partition in dump format, accepted by `kplex verify`.
    pub partition_dump: String,
}

impl SolveReport {
    pub fn new(
        instance: &str,
        format: InstanceFormat,
        dimacs_weights: bool,
        g: &WeightedGraph,
        config: &SolverConfig,
        report: &RunReport,
    ) -> Self {
        let best = report.best();
        let runs = report
            .runs
            .iter()
            .enumerate()
            .map(|(run, r)| RunRecord {
                run,
                seed: r.seed,
                objective: r.objective.value(),
                correct_total: r.objective.correct_total,
                weight: r.weight,
                feasible: r.feasible,
                iterations: r.iterations,
                time: r.elapsed,
                termination: r.termination.as_str().to_string(),
            })
            .collect();
        let header = DumpHeader {
            k: config.k,
            feasible: best.feasible,
            weight: best.weight,
            objective: best.objective.value(),
        };
        SolveReport {
            schema: SCHEMA_VERSION,
            instance: instance.to_string(),
            format,
            dimacs_weights,
            n: g.n(),
            m: g.edge_count(),
            w_total: g.w_total(),
            config: config.into(),
            best: BestRecord {
                run: report.best_run,
                objective: best.objective.value(),
                correct_total: best.objective.correct_total,
                w_sol: best.objective.w_sol,
                weight: best.weight,
                feasible: best.feasible,
                blocks: best.solution.block_count(),
            },
            avg_weight: report.avg_weight,
            gap_percent: report.gap_percent,
            total_time: report.total_time,
            runs,
            partition: best
                .solution
                .canonical_blocks()
                .into_iter()
                .map(|b| b.into_iter().map(|v| v + 1).collect())
                .collect(),
            partition_dump: write_partition(&best.solution, &header),
        }
    }
}
