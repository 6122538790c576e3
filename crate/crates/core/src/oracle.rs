//! Exact solver by enumeration of set partitions, plus an independent
//! feasibility/weight checker. Both are ground truth for the heuristic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::WeightedGraph;
use crate::solution::Solution;

/// Largest instance [`exact_solve`] accepts unless told otherwise.
/// Bell(12) is about 4.2 million partitions.
pub const DEFAULT_EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { n: usize, limit: usize },
    ZeroK,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { n, limit } => write!(
                f,
                "exact enumeration refused: {} vertices exceeds the limit of {}",
                n, limit
            ),
            OracleError::ZeroK => write!(f, "k must be at least 1"),
        }
    }
}

impl core::error::Error for OracleError {}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub optimum_weight: f64,
    /// `n + optimum_weight / w_total` (just `n` for an edgeless graph).
    pub optimum_objective: f64,
    /// Optimal partition with the fewest blocks, lexicographically smallest
    /// assignment among those.
    pub solution: Solution,
    /// Complete feasible partitions visited.
    pub partitions_enumerated: u64,
}

/// Enumerates every set partition of the vertices as a restricted-growth
/// string, pruning a branch as soon as some block member has `k` or more
/// non-neighbors inside its (partial) block. Adding members never removes
/// non-neighbors, so the pruning is exact.
pub fn exact_solve(g: &WeightedGraph, k: usize, limit: usize) -> Result<ExactResult, OracleError> {
    let n = g.n();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let mut weight = vec![0.0f64; n * n];
    for e in g.edges() {
        weight[e.u * n + e.v] = e.weight;
        weight[e.v * n + e.u] = e.weight;
    }
    let mut search = Enumeration {
        n,
        k,
        weight,
        labels: vec![0; n],
        blocks: Vec::new(),
        misses: vec![0; n],
        current: 0.0,
        best_weight: -1.0,
        best_blocks: usize::MAX,
        best_labels: Vec::new(),
        visited: 0,
    };
    search.descend(0);

    let optimum_weight = search.best_weight;
    let optimum_objective = if g.w_total() > 0.0 {
        n as f64 + optimum_weight / g.w_total()
    } else {
        n as f64
    };
    Ok(ExactResult {
        optimum_weight,
        optimum_objective,
        solution: Solution::from_labels(&search.best_labels),
        partitions_enumerated: search.visited,
    })
}

struct Enumeration {
    n: usize,
    k: usize,
    /// Dense row-major weight matrix, 0 for non-edges.
    weight: Vec<f64>,
    labels: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    /// Non-neighbors of each placed vertex inside its block.
    misses: Vec<usize>,
    current: f64,
    best_weight: f64,
    best_blocks: usize,
    best_labels: Vec<usize>,
    visited: u64,
}

impl Enumeration {
    fn descend(&mut self, v: usize) {
        if v == self.n {
            self.visited += 1;
            let blocks = self.blocks.len();
            if self.current > self.best_weight
                || (self.current == self.best_weight && blocks < self.best_blocks)
            {
                self.best_weight = self.current;
                self.best_blocks = blocks;
                self.best_labels.clone_from(&self.labels);
            }
            return;
        }
        let open = self.blocks.len();
        for j in 0..=open {
            if j == open {
                self.blocks.push(Vec::new());
            }
            let row = &self.weight[v * self.n..(v + 1) * self.n];
            let mut gain = 0.0;
            let mut v_misses = 0;
            let mut ok = true;
            for &u in &self.blocks[j] {
                let w = row[u];
                if w > 0.0 {
                    gain += w;
                } else {
                    v_misses += 1;
                    if self.misses[u] + 1 >= self.k {
                        ok = false;
                    }
                }
            }
            if ok && v_misses < self.k {
                for &u in &self.blocks[j] {
                    if row[u] == 0.0 {
                        self.misses[u] += 1;
                    }
                }
                self.misses[v] = v_misses;
                self.labels[v] = j;
                self.blocks[j].push(v);
                self.current += gain;

                self.descend(v + 1);

                self.current -= gain;
                self.blocks[j].pop();
                let row = &self.weight[v * self.n..(v + 1) * self.n];
                for &u in &self.blocks[j] {
                    if row[u] == 0.0 {
                        self.misses[u] -= 1;
                    }
                }
            }
            if j == open {
                self.blocks.pop();
            }
        }
    }
}

/// Independent re-check of a complete assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub feasible: bool,
    pub weight: f64,
    /// 0-based vertices violating the k-plex degree bound, ascending.
    pub violators: Vec<usize>,
}

/// Recomputes block sizes, intra-block degrees and weight straight from
/// the edge list.
pub fn verify_partition(g: &WeightedGraph, s: &Solution, k: usize) -> Certificate {
    let n = g.n();
    let labels = s.labels();
    assert_eq!(labels.len(), n, "assignment does not cover the graph");
    let mut size = vec![0usize; labels.iter().copied().max().map_or(0, |m| m + 1)];
    for &j in labels {
        size[j] += 1;
    }
    let mut deg = vec![0usize; n];
    let mut weight = 0.0;
    for e in g.edges() {
        if labels[e.u] == labels[e.v] {
            deg[e.u] += 1;
            deg[e.v] += 1;
            weight += e.weight;
        }
    }
    let violators: Vec<usize> = (0..n)
        .filter(|&v| (deg[v] as i64) < size[labels[v]] as i64 - k as i64)
        .collect();
    Certificate {
        feasible: violators.is_empty(),
        weight,
        violators,
    }
}
