//! Command-line front end.
//!
//! Exit codes: 0 on success (feasible result), 2 when the reported
//! partition is infeasible, 1 on usage, input or parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kplex_core::oracle::DEFAULT_EXACT_LIMIT;
use kplex_core::{exact_solve, verify_partition, SolverConfig, WeightedGraph};

use crate::bench::{run_bench, to_csv, to_text, Manifest};
use crate::io::{load_instance, parse_partition, write_partition, DumpHeader, InstanceFormat};
use crate::report::SolveReport;
use crate::runner::default_threads;

#[derive(Debug, Parser)]
#[command(
    name = "kplex",
    version,
    about = "Maximum edge-weight k-plex partitioning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the VNS and write a JSON report.
    Solve(SolveArgs),
    /// Solve a small instance exactly by enumeration.
    Exact(ExactArgs),
    /// Check a partition dump against an instance.
    Verify(VerifyArgs),
    /// Run every (instance, k) pair of a manifest and print a results table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Dimacs,
    Edgelist,
}

impl From<FormatArg> for InstanceFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dimacs => InstanceFormat::Dimacs,
            FormatArg::Edgelist => InstanceFormat::Edgelist,
        }
    }
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Guessed from the file extension when omitted (.clq is DIMACS).
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Weight edge {i,j} as ((i + j) mod 200) + 1.
    #[arg(long)]
    pub dimacs_weights: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

impl InstanceArgs {
    fn format(&self) -> InstanceFormat {
        self.format
            .map(Into::into)
            .unwrap_or_else(|| InstanceFormat::guess(&self.input))
    }

    fn load(&self) -> anyhow::Result<WeightedGraph> {
        load_instance(&self.input, self.format(), self.dimacs_weights)
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 80)]
    pub n_max: usize,
    #[arg(long, default_value_t = 20_000)]
    pub it_max: u64,
    #[arg(long, default_value_t = 10_000)]
    pub itrep_max: u64,
    /// Per-run time limit in seconds.
    #[arg(long, default_value_t = 3600.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub prob: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for repeated runs [default: $KPLEX_THREADS or all cores].
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SearchArgs {
    fn config(&self, k: usize) -> anyhow::Result<SolverConfig> {
        let c = SolverConfig {
            k,
            n_min: self.n_min,
            n_max: self.n_max,
            it_max: self.it_max,
            itrep_max: self.itrep_max,
            t_max: self.t_max,
            prob: self.prob,
            seed: self.seed,
            runs: self.runs,
        };
        c.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(c)
    }

    fn threads(&self) -> usize {
        self.threads
            .filter(|&t| t > 0)
            .unwrap_or_else(default_threads)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// JSON report destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the best partition in dump format.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Refuse instances with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Partition dump (`P<j>: v1 v2 ...` lines).
    #[arg(long)]
    pub partition: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Write the results as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Include total wall time in the CSV (makes it run-dependent).
    #[arg(long)]
    pub with_time: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Exact(a) => cmd_exact(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let g = a.instance.load()?;
    let config = a.search.config(a.instance.k as usize)?;
    let report = crate::runner::solve_repeated(&g, &config, a.search.threads())
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let json = SolveReport::new(
        &a.instance.input.display().to_string(),
        a.instance.format(),
        a.instance.dimacs_weights,
        &g,
        &config,
        &report,
    );
    let text = serde_json::to_string_pretty(&json)? + "\n";
    match &a.output {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(p) = &a.dump {
        write_file(p, &json.partition_dump)?;
    }
    writeln!(
        err,
        "best weight {} (objective {:.6}), avg {:.2}, gap {:.2}%, {} runs in {:.2}s",
        json.best.weight,
        json.best.objective,
        json.avg_weight,
        json.gap_percent,
        json.runs.len(),
        json.total_time
    )?;
    Ok(if json.best.feasible { 0 } else { 2 })
}

pub fn cmd_exact(a: &ExactArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let g = a.instance.load()?;
    if a.limit > DEFAULT_EXACT_LIMIT && g.n() > DEFAULT_EXACT_LIMIT {
        writeln!(
            err,
            "warning: enumerating set partitions of {} vertices; this grows like the Bell numbers",
            g.n()
        )?;
    }
    let k = a.instance.k as usize;
    let r = exact_solve(&g, k, a.limit).map_err(|e| anyhow::anyhow!("{e}"))?;
    writeln!(out, "optimum weight: {}", r.optimum_weight)?;
    writeln!(out, "objective: {}", r.optimum_objective)?;
    writeln!(out, "partitions enumerated: {}", r.partitions_enumerated)?;
    let header = DumpHeader {
        k,
        feasible: true,
        weight: r.optimum_weight,
        objective: r.optimum_objective,
    };
    out.write_all(write_partition(&r.solution, &header).as_bytes())?;
    Ok(0)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let g = a.instance.load()?;
    let text = std::fs::read_to_string(&a.partition)
        .with_context(|| format!("cannot read {}", a.partition.display()))?;
    let s = parse_partition(&text, g.n())
        .with_context(|| format!("malformed partition file {}", a.partition.display()))?;
    let cert = verify_partition(&g, &s, a.instance.k as usize);
    writeln!(out, "feasible: {}", cert.feasible)?;
    writeln!(out, "weight: {}", cert.weight)?;
    let violators: Vec<String> = cert.violators.iter().map(|v| (v + 1).to_string()).collect();
    writeln!(out, "violators: {}", violators.join(" "))?;
    Ok(if cert.feasible { 0 } else { 2 })
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let manifest = Manifest::load(&a.manifest)?;
    let config = a.search.config(1)?;
    if manifest.instance.iter().any(|e| e.k.contains(&0)) {
        bail!("manifest lists k = 0");
    }
    let rows = run_bench(&manifest, &config, a.search.threads());
    if let Some(p) = &a.csv {
        write_file(p, &to_csv(&rows, a.with_time)?)?;
    }
    out.write_all(to_text(&rows).as_bytes())?;
    Ok(0)
}
