//! Wall-clock timing and multi-threaded repeated runs.

use std::time::Instant;

use kplex_core::vns::{run_seed, ConfigError};
use kplex_core::{Clock, RunReport, SolverConfig, Vns, WeightedGraph};

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "KPLEX_THREADS";

/// Clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct Stopwatch(Instant);

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch(Instant::now())
    }
}

impl Clock for Stopwatch {
    fn elapsed(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// `KPLEX_THREADS` if set to a positive integer, else the number of
/// available cores.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Runs `config.runs` independent searches on up to `threads` threads.
/// Run `r` always uses seed `run_seed(config.seed, r)` and lands at index
/// `r` of the report, so the result does not depend on scheduling (unless
/// the time limit fires).
pub fn solve_repeated(
    g: &WeightedGraph,
    config: &SolverConfig,
    threads: usize,
) -> Result<RunReport, ConfigError> {
    let vns = Vns::new(g, config.clone())?;
    let runs = config.runs;
    let threads = threads.clamp(1, runs);
    let mut slots: Vec<Option<kplex_core::RunOutcome>> = vec![None; runs];
    if threads == 1 {
        for (r, slot) in slots.iter_mut().enumerate() {
            *slot = Some(vns.run(run_seed(config.seed, r), &Stopwatch::start()));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let results = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let r = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if r >= runs {
                        break;
                    }
                    let out = vns.run(run_seed(config.seed, r), &Stopwatch::start());
                    results.lock().unwrap()[r] = Some(out);
                });
            }
        });
    }
    Ok(RunReport::from_runs(
        slots.into_iter().map(Option::unwrap).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_count_does_not_change_results() {
        let g = WeightedGraph::from_edges(
            6,
            [
                (0, 1, 2.0),
                (1, 2, 3.0),
                (0, 2, 1.0),
                (3, 4, 5.0),
                (4, 5, 1.0),
                (2, 3, 4.0),
            ],
        )
        .unwrap();
        let cfg = SolverConfig {
            runs: 5,
            it_max: 300,
            ..SolverConfig::with_k(2)
        };
        let serial = solve_repeated(&g, &cfg, 1).unwrap();
        let parallel = solve_repeated(&g, &cfg, 4).unwrap();
        let core = kplex_core::solve_repeated(&g, &cfg, Stopwatch::start).unwrap();
        for other in [&parallel, &core] {
            assert_eq!(serial.best_run, other.best_run);
            for (a, b) in serial.runs.iter().zip(&other.runs) {
                assert_eq!(a.seed, b.seed);
                assert_eq!(a.solution, b.solution);
                assert_eq!(a.iterations, b.iterations);
            }
        }
    }
}
