//! Variable neighborhood search driver.
//!
//! One iteration copies the incumbent, shakes `kappa` random vertices into
//! random blocks, runs the 1-move first-improvement local search and then
//! decides whether the result replaces the incumbent. `kappa` returns to
//! `n_min` after a strict improvement and otherwise advances by one,
//! wrapping from `n_max` back to `n_min`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;
use crate::objective::ObjectiveValue;
use crate::solution::{is_feasible, partition_weight, Solution, State, Tally, Target, VertexProbe};

/// Search parameters. `Default` gives the published experimental setup
/// with `k = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub k: usize,
    /// Smallest shaking neighborhood size.
    pub n_min: usize,
    /// Largest shaking neighborhood size.
    pub n_max: usize,
    /// Iteration cap.
    pub it_max: u64,
    /// Cap on consecutive iterations without a strict improvement.
    pub itrep_max: u64,
    /// Wall-clock cap per run, in seconds.
    pub t_max: f64,
    /// Probability of moving to an equally good solution.
    pub prob: f64,
    pub seed: u64,
    pub runs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            k: 1,
            n_min: 1,
            n_max: 80,
            it_max: 20_000,
            itrep_max: 10_000,
            t_max: 3600.0,
            prob: 0.1,
            seed: 1,
            runs: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    ZeroK,
    NeighborhoodRange { n_min: usize, n_max: usize },
    NotPositive(&'static str),
    Probability(f64),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::ZeroK => write!(f, "k must be at least 1"),
            ConfigError::NeighborhoodRange { n_min, n_max } => write!(
                f,
                "neighborhood sizes must satisfy 1 <= n_min <= n_max (got {} and {})",
                n_min, n_max
            ),
            ConfigError::NotPositive(what) => write!(f, "{} must be positive", what),
            ConfigError::Probability(p) => write!(f, "prob must lie in [0, 1], got {}", p),
        }
    }
}

impl core::error::Error for ConfigError {}

impl SolverConfig {
    pub fn with_k(k: usize) -> Self {
        SolverConfig {
            k,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.k == 0 {
            return Err(ConfigError::ZeroK);
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(ConfigError::NeighborhoodRange {
                n_min: self.n_min,
                n_max: self.n_max,
            });
        }
        if self.it_max == 0 {
            return Err(ConfigError::NotPositive("it_max"));
        }
        if self.itrep_max == 0 {
            return Err(ConfigError::NotPositive("itrep_max"));
        }
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(ConfigError::NotPositive("t_max"));
        }
        if self.runs == 0 {
            return Err(ConfigError::NotPositive("runs"));
        }
        if !(0.0..=1.0).contains(&self.prob) {
            return Err(ConfigError::Probability(self.prob));
        }
        Ok(())
    }
}

/// Elapsed-time source; the core crate has no clock of its own.
pub trait Clock {
    /// Seconds since the run started.
    fn elapsed(&self) -> f64;
}

/// A clock that never advances. Time limits never fire.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Termination {
    IterationLimit,
    StagnationLimit,
    TimeLimit,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::IterationLimit => "iterations",
            Termination::StagnationLimit => "stagnation",
            Termination::TimeLimit => "time",
        }
    }
}

/// Seed of run `run` derived from the base seed: SplitMix64 applied to
/// `base + (run + 1) * 0x9E3779B97F4A7C15`.
pub fn run_seed(base: u64, run: usize) -> u64 {
    let mut z = base.wrapping_add((run as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Moves `min(kappa, n)` distinct random vertices, each to a block drawn
/// uniformly from the current `l` blocks plus one new block.
pub fn shake<R: Rng + ?Sized>(state: &mut State<'_>, kappa: usize, rng: &mut R) {
    let n = state.solution().n();
    let picks = rand::seq::index::sample(rng, n, kappa.min(n));
    for v in picks.iter() {
        let l = state.solution().block_count();
        let q = rng.gen_range(0..=l);
        let target = if q == l {
            Target::New
        } else {
            Target::Existing(q)
        };
        state.move_vertex(v, target);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalSearchStats {
    pub improvements: u64,
    /// The stop callback fired before a local optimum was reached.
    pub interrupted: bool,
}

/// 1-move first-improvement local search.
///
/// Vertices are scanned in index order; for each vertex the candidate
/// blocks (every other block plus a new one) are tried in a random order
/// and the first strictly improving move is applied, after which the scan
/// restarts at vertex 0. `stop` is polled before every scan.
///
/// Taking the first hit of a uniformly shuffled order is the same as
/// drawing uniformly among the improving targets, which is what is done:
/// the targets are priced and one random draw picks among the winners.
///
/// A block holding no neighbor of `v` is never a better destination than
/// a fresh singleton: the source side is identical, `v` is correct alone,
/// and the new block has nobody to lose. So unless the singleton move
/// improves, only blocks adjacent to `v` are priced.
///
/// The same argument bounds what a move from block A to block B can
/// change for a vertex outside both: only its moves into A or B, and only
/// if it has a neighbor there. Those are priced from the block side right
/// after the move, and a vertex is revisited only if one of them now
/// improves. The scan order and the moves made are those of a plain
/// rescan from vertex 0.
pub fn local_search<R: Rng + ?Sized>(
    state: &mut State<'_>,
    rng: &mut R,
    stop: &mut dyn FnMut() -> bool,
) -> LocalSearchStats {
    let n = state.solution().n();
    let mut stats = LocalSearchStats::default();
    let mut winners: Vec<Target> = Vec::new();
    let mut adjacent: Vec<usize> = Vec::new();
    let mut pending = Pending::all(n);
    // Home-block probe of every vertex not pending.
    let mut homes = vec![VertexProbe::default(); n];
    let mut seen = vec![Tally::default(); n];
    let mut epoch = 0u32;
    let mut touched: Vec<usize> = Vec::new();
    'scan: loop {
        if stop() {
            stats.interrupted = true;
            break;
        }
        let mut next = pending.first_from(0);
        while let Some(v) = next {
            let probe = state.probe_vertex(v);
            homes[v] = probe;
            winners.clear();
            let alone = Target::New;
            let alone_improves = !state.is_noop(v, alone)
                && state.improves(v, alone, state.probe_move(&probe, alone));
            if alone_improves {
                winners.push(alone);
                let from = state.solution().label(v);
                for j in 0..state.solution().block_count() {
                    let t = Target::Existing(j);
                    if j != from && state.improves(v, t, state.probe_move(&probe, t)) {
                        winners.push(t);
                    }
                }
            } else {
                adjacent.clear();
                adjacent.extend_from_slice(state.adjacent_blocks());
                for &j in &adjacent {
                    let t = Target::Existing(j);
                    if state.improves(v, t, state.probe_move(&probe, t)) {
                        winners.push(t);
                    }
                }
            }
            if winners.is_empty() {
                pending.remove(v);
                next = pending.first_from(v + 1);
                continue;
            }
            winners.sort_unstable();
            let target = winners[rng.gen_range(0..winners.len())];
            let record = state.move_vertex(v, target);
            stats.improvements += 1;

            let source = (!record.emptied).then_some(record.from);
            let dest = state.solution().label(v);
            for j in source.into_iter().chain([dest]) {
                for &u in state.solution().block(j) {
                    pending.insert(u);
                }
            }
            for j in source.into_iter().chain([dest]) {
                epoch = epoch.wrapping_add(1);
                if epoch == 0 {
                    seen.iter_mut().for_each(|t| t.epoch = 0);
                    epoch = 1;
                }
                touched.clear();
                state.tally_around(j, epoch, &mut seen, &mut touched);
                let t = Target::Existing(j);
                for &u in &touched {
                    if !pending.contains(u)
                        && state.improves(u, t, state.price(&homes[u], t, &seen[u]))
                    {
                        pending.insert(u);
                    }
                }
            }
            continue 'scan;
        }
        break;
    }
    stats
}

/// Bit set of vertices whose improving status is unknown.
struct Pending {
    words: Vec<u64>,
}

impl Pending {
    fn all(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        Pending { words }
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    fn first_from(&self, start: usize) -> Option<usize> {
        let mut w = start / 64;
        if w >= self.words.len() {
            return None;
        }
        let mut bits = self.words[w] & (u64::MAX << (start % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            bits = self.words[w];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceptance {
    /// Strictly better: always taken.
    Improved,
    /// Equal value, taken with probability `prob`.
    Sideways,
    Rejected,
}

impl Acceptance {
    pub fn taken(self) -> bool {
        !matches!(self, Acceptance::Rejected)
    }
}

pub fn accept<R: Rng + ?Sized>(
    incumbent: &ObjectiveValue,
    candidate: &ObjectiveValue,
    prob: f64,
    rng: &mut R,
) -> Acceptance {
    match candidate.cmp_unchecked(incumbent) {
        Ordering::Greater => Acceptance::Improved,
        Ordering::Less => Acceptance::Rejected,
        Ordering::Equal => {
            if rng.gen_bool(prob) {
                Acceptance::Sideways
            } else {
                Acceptance::Rejected
            }
        }
    }
}

/// Result of one independent run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub seed: u64,
    pub solution: Solution,
    pub objective: ObjectiveValue,
    /// Partition weight of `solution`.
    pub weight: f64,
    pub feasible: bool,
    pub iterations: u64,
    pub elapsed: f64,
    pub termination: Termination,
}

/// One VNS run over a fixed graph and configuration.
pub struct Vns<'g> {
    graph: &'g WeightedGraph,
    config: SolverConfig,
}

impl<'g> Vns<'g> {
    pub fn new(graph: &'g WeightedGraph, config: SolverConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        Ok(Vns { graph, config })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn run(&self, seed: u64, clock: &dyn Clock) -> RunOutcome {
        self.run_observed(seed, clock, &mut |_, _| {})
    }

    /// Like [`Vns::run`], calling `observe(iteration, incumbent)` after
    /// every iteration.
    pub fn run_observed(
        &self,
        seed: u64,
        clock: &dyn Clock,
        observe: &mut dyn FnMut(u64, &ObjectiveValue),
    ) -> RunOutcome {
        let g = self.graph;
        let cfg = &self.config;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t_max = cfg.t_max;
        let mut out_of_time = || clock.elapsed() >= t_max;

        let mut best = State::new(g, Solution::random_initial(g.n(), &mut rng), cfg.k);
        local_search(&mut best, &mut rng, &mut out_of_time);
        best.resync();
        let mut cand = best.clone();

        let mut kappa = cfg.n_min;
        let mut iterations = 0u64;
        let mut since_improvement = 0u64;
        let termination = loop {
            if iterations >= cfg.it_max {
                break Termination::IterationLimit;
            }
            if since_improvement >= cfg.itrep_max {
                break Termination::StagnationLimit;
            }
            if out_of_time() {
                break Termination::TimeLimit;
            }

            cand.assign_from(&best);
            shake(&mut cand, kappa, &mut rng);
            local_search(&mut cand, &mut rng, &mut out_of_time);
            if !g.is_integral() {
                cand.resync();
            }
            iterations += 1;

            let verdict = accept(&best.objective(), &cand.objective(), cfg.prob, &mut rng);
            if verdict.taken() {
                core::mem::swap(&mut best, &mut cand);
            }
            if verdict == Acceptance::Improved {
                since_improvement = 0;
                kappa = cfg.n_min;
            } else {
                since_improvement += 1;
                kappa = if kappa >= cfg.n_max {
                    cfg.n_min
                } else {
                    kappa + 1
                };
            }
            observe(iterations, &best.objective());
        };

        let objective = best.objective();
        let solution = best.into_solution();
        RunOutcome {
            seed,
            weight: partition_weight(g, &solution),
            feasible: is_feasible(g, &solution, cfg.k).feasible,
            solution,
            objective,
            iterations,
            elapsed: clock.elapsed(),
            termination,
        }
    }
}

/// Aggregate over repeated independent runs.
#[derive(Debug, Clone)]
pub struct RunReport {
    /// Index into `runs` of the run with the best objective (first on ties).
    pub best_run: usize,
    pub runs: Vec<RunOutcome>,
    pub best_weight: f64,
    pub avg_weight: f64,
    /// `100 * (best - avg) / best` on partition weight; 0 when best is 0.
    pub gap_percent: f64,
    /// Sum of per-run wall times.
    pub total_time: f64,
}

impl RunReport {
    pub fn from_runs(runs: Vec<RunOutcome>) -> Self {
        assert!(!runs.is_empty(), "a report needs at least one run");
        let mut best_run = 0;
        for (i, r) in runs.iter().enumerate().skip(1) {
            if r.objective.cmp_unchecked(&runs[best_run].objective) == Ordering::Greater {
                best_run = i;
            }
        }
        let best_weight = runs[best_run].weight;
        let avg_weight = runs.iter().map(|r| r.weight).sum::<f64>() / runs.len() as f64;
        RunReport {
            best_run,
            best_weight,
            avg_weight,
            gap_percent: gap_percent(best_weight, avg_weight),
            total_time: runs.iter().map(|r| r.elapsed).sum(),
            runs,
        }
    }

    pub fn best(&self) -> &RunOutcome {
        &self.runs[self.best_run]
    }
}

pub fn gap_percent(best: f64, avg: f64) -> f64 {
    if best == 0.0 {
        0.0
    } else {
        100.0 * (best - avg) / best
    }
}

/// Single run with seed `config.seed`.
pub fn solve(
    g: &WeightedGraph,
    config: &SolverConfig,
    clock: &dyn Clock,
) -> Result<RunOutcome, ConfigError> {
    Ok(Vns::new(g, config.clone())?.run(config.seed, clock))
}

/// `config.runs` sequential runs, run `r` seeded with
/// [`run_seed`]`(config.seed, r)`. `clock` is called once per run to get a
/// fresh clock.
pub fn solve_repeated<C: Clock>(
    g: &WeightedGraph,
    config: &SolverConfig,
    mut clock: impl FnMut() -> C,
) -> Result<RunReport, ConfigError> {
    let vns = Vns::new(g, config.clone())?;
    let runs = (0..config.runs)
        .map(|r| vns.run(run_seed(config.seed, r), &clock()))
        .collect();
    Ok(RunReport::from_runs(runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::evaluate;
    use crate::solution::recompute_ledger;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        WeightedGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0))).unwrap()
    }

    fn never() -> impl FnMut() -> bool {
        || false
    }

    /// Plain first-improvement search: rescans from vertex 0 after every
    /// move and prices every target with the full evaluator.
    fn reference_local_search<R: Rng>(state: &mut State<'_>, rng: &mut R) -> u64 {
        let (g, k) = (state.graph(), state.k());
        let mut improvements = 0;
        'scan: loop {
            let current = evaluate(g, state.solution(), k);
            for v in 0..g.n() {
                let l = state.solution().block_count();
                let mut winners = Vec::new();
                for q in 0..=l {
                    let t = if q == l {
                        Target::New
                    } else {
                        Target::Existing(q)
                    };
                    if state.is_noop(v, t) {
                        continue;
                    }
                    let mut trial = state.clone();
                    trial.move_vertex(v, t);
                    let value = evaluate(g, trial.solution(), k);
                    if value.compare(&current).unwrap() == Ordering::Greater {
                        winners.push(t);
                    }
                }
                if !winners.is_empty() {
                    winners.sort_unstable();
                    let t = winners[rng.gen_range(0..winners.len())];
                    state.move_vertex(v, t);
                    improvements += 1;
                    continue 'scan;
                }
            }
            return improvements;
        }
    }

    #[test]
    fn local_search_matches_plain_rescan() {
        let mut gen = ChaCha8Rng::seed_from_u64(77);
        for case in 0..60 {
            let n = gen.gen_range(5..=30);
            let density = gen.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if gen.gen_bool(density) {
                        edges.push((u, v, gen.gen_range(1..=10) as f64));
                    }
                }
            }
            let g = WeightedGraph::from_edges(n, edges).unwrap();
            let k = gen.gen_range(1..=4);
            let start = Solution::random_initial(n, &mut gen);
            let seed = gen.gen();
            let mut fast = State::new(&g, start.clone(), k);
            let mut plain = State::new(&g, start, k);
            let mut r1 = ChaCha8Rng::seed_from_u64(seed);
            let mut r2 = ChaCha8Rng::seed_from_u64(seed);
            for round in 0..3 {
                let stats = local_search(&mut fast, &mut r1, &mut never());
                let expected = reference_local_search(&mut plain, &mut r2);
                assert_eq!(stats.improvements, expected, "case {case} round {round}");
                assert_eq!(fast.solution().labels(), plain.solution().labels());
                assert_eq!(fast.ledger(), &recompute_ledger(&g, fast.solution(), k));
                shake(&mut fast, n / 2, &mut r1);
                shake(&mut plain, n / 2, &mut r2);
            }
        }
    }

    #[test]
    fn default_config_matches_published_setup() {
        let c = SolverConfig::default();
        assert_eq!((c.n_min, c.n_max), (1, 80));
        assert_eq!((c.it_max, c.itrep_max), (20_000, 10_000));
        assert_eq!(c.t_max, 3600.0);
        assert_eq!(c.prob, 0.1);
        assert_eq!(c.runs, 10);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn config_validation() {
        let bad = |f: fn(&mut SolverConfig)| {
            let mut c = SolverConfig::default();
            f(&mut c);
            c.validate().unwrap_err()
        };
        assert_eq!(bad(|c| c.k = 0), ConfigError::ZeroK);
        assert!(matches!(
            bad(|c| c.n_min = 0),
            ConfigError::NeighborhoodRange { .. }
        ));
        assert!(matches!(
            bad(|c| c.n_min = 90),
            ConfigError::NeighborhoodRange { .. }
        ));
        assert_eq!(bad(|c| c.runs = 0), ConfigError::NotPositive("runs"));
        assert_eq!(bad(|c| c.t_max = 0.0), ConfigError::NotPositive("t_max"));
        assert_eq!(bad(|c| c.prob = 1.5), ConfigError::Probability(1.5));
    }

    #[test]
    fn shake_two_singletons() {
        let g = unit(2, &[(0, 1)]);
        let mut merged = 0;
        let mut unchanged = 0;
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut st = State::new(&g, Solution::singletons(2), 1);
            shake(&mut st, 1, &mut rng);
            match st.solution().block_count() {
                1 => merged += 1,
                2 => unchanged += 1,
                _ => unreachable!(),
            }
        }
        assert_eq!(merged + unchanged, 200);
        assert!(merged > 0 && unchanged > 0);
    }

    #[test]
    fn shake_clamps_kappa() {
        let g = unit(3, &[(0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut st = State::new(&g, Solution::singletons(3), 1);
        shake(&mut st, 50, &mut rng);
        assert_eq!(
            st.ledger(),
            &crate::solution::recompute_ledger(&g, st.solution(), 1)
        );
    }

    #[test]
    fn local_search_on_path() {
        let g = unit(3, &[(0, 1), (1, 2)]);
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut st = State::new(&g, Solution::from_labels(&[0, 0, 0]), 1);
            local_search(&mut st, &mut rng, &mut never());
            assert!(is_feasible(&g, st.solution(), 1).feasible);
            assert_eq!(partition_weight(&g, st.solution()), 1.0);
            assert_eq!(st.objective().value(), 3.5);
        }
    }

    #[test]
    fn local_search_merges_edge() {
        let g = unit(2, &[(0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut st = State::new(&g, Solution::singletons(2), 1);
        assert_eq!(st.objective().value(), 2.0);
        let stats = local_search(&mut st, &mut rng, &mut never());
        assert_eq!(stats.improvements, 1);
        assert_eq!(st.objective().value(), 3.0);
    }

    #[test]
    fn local_search_stops_when_asked() {
        let g = unit(3, &[(0, 1), (1, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut st = State::new(&g, Solution::from_labels(&[0, 0, 0]), 1);
        let stats = local_search(&mut st, &mut rng, &mut || true);
        assert!(stats.interrupted);
        assert_eq!(stats.improvements, 0);
    }

    #[test]
    fn accept_rule() {
        let g = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        let lo = ObjectiveValue::new(&g, 3, 1.0);
        let hi = ObjectiveValue::new(&g, 3, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            assert_eq!(accept(&lo, &hi, 0.1, &mut rng), Acceptance::Improved);
            assert_eq!(accept(&hi, &lo, 0.1, &mut rng), Acceptance::Rejected);
        }
        let taken = (0..10_000)
            .filter(|_| accept(&lo, &lo, 0.1, &mut rng) == Acceptance::Sideways)
            .count();
        // Binomial(10000, 0.1): sd = 30, the band is five sd wide.
        assert!((850..=1150).contains(&taken), "taken = {}", taken);
    }

    #[test]
    fn solve_small_graphs() {
        let k3 = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        let out = solve(&k3, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(out.weight, 3.0);
        assert_eq!(out.objective.value(), 4.0);
        assert!(out.feasible);

        for k in 1..=3 {
            let g = WeightedGraph::edgeless(5);
            let out = solve(&g, &SolverConfig::with_k(k), &NoClock).unwrap();
            assert_eq!(out.weight, 0.0);
            assert_eq!(out.objective.value(), 5.0);
            assert!(out.feasible);
        }
    }

    #[test]
    fn iteration_limit_terminates() {
        let g = unit(4, &[(0, 1), (2, 3), (1, 2)]);
        let cfg = SolverConfig {
            it_max: 7,
            ..SolverConfig::default()
        };
        let out = solve(&g, &cfg, &NoClock).unwrap();
        assert_eq!(out.iterations, 7);
        assert_eq!(out.termination, Termination::IterationLimit);
        let cfg = SolverConfig {
            itrep_max: 5,
            ..SolverConfig::default()
        };
        let out = solve(&g, &cfg, &NoClock).unwrap();
        assert_eq!(out.termination, Termination::StagnationLimit);
    }

    struct Expired;
    impl Clock for Expired {
        fn elapsed(&self) -> f64 {
            1e9
        }
    }

    #[test]
    fn time_limit_terminates() {
        let g = unit(4, &[(0, 1), (2, 3)]);
        let out = solve(&g, &SolverConfig::default(), &Expired).unwrap();
        assert_eq!(out.termination, Termination::TimeLimit);
        assert_eq!(out.iterations, 0);
        // The initial state is returned as-is but still checked.
        assert_eq!(out.feasible, is_feasible(&g, &out.solution, 1).feasible);
    }

    #[test]
    fn repeated_runs_aggregate() {
        let g = unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let cfg = SolverConfig {
            runs: 1,
            it_max: 200,
            ..SolverConfig::default()
        };
        let rep = solve_repeated(&g, &cfg, || NoClock).unwrap();
        assert_eq!(rep.runs.len(), 1);
        assert_eq!(rep.best_weight, rep.runs[0].weight);
        assert_eq!(rep.avg_weight, rep.best_weight);
        assert_eq!(rep.gap_percent, 0.0);

        let cfg = SolverConfig { runs: 4, ..cfg };
        let a = solve_repeated(&g, &cfg, || NoClock).unwrap();
        let b = solve_repeated(&g, &cfg, || NoClock).unwrap();
        let labels = |r: &RunReport| {
            r.runs
                .iter()
                .map(|o| o.solution.labels().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(labels(&a), labels(&b));
        let seeds: Vec<u64> = a.runs.iter().map(|o| o.seed).collect();
        assert_eq!(
            seeds,
            (0..4).map(|r| run_seed(cfg.seed, r)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn gap_definition() {
        assert_eq!(gap_percent(0.0, 0.0), 0.0);
        assert_eq!(gap_percent(200.0, 150.0), 25.0);
    }

    #[test]
    fn final_objective_matches_full_evaluation() {
        let g = unit(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (2, 3)]);
        for k in 1..=3 {
            let out = solve(&g, &SolverConfig::with_k(k), &NoClock).unwrap();
            assert_eq!(out.objective, evaluate(&g, &out.solution, k));
        }
    }
}
