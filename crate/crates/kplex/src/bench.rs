//! Benchmark harness: a TOML manifest of instances and `k` values in, one
//! result row per (instance, k) out.
//!
//! ```toml
//! [[instance]]
//! path = "hamming6-2.clq"      # relative to the manifest
//! format = "dimacs"            # or "edgelist"; guessed from the extension if absent
//! dimacs_weights = true
//! alias = "h6-2"
//! k = [1, 2, 3]
//!
//! [[instance.reference]]
//! k = 1
//! value = 65472
//! status = "opt"               # known optimum; "best" for best-known
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use kplex_core::{SolverConfig, Termination};
use serde::Deserialize;

use crate::io::{load_instance, InstanceFormat};
use crate::runner::solve_repeated;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceKind {
    /// Proven optimum.
    Opt,
    /// Best value known so far.
    Best,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Reference {
    pub k: usize,
    pub value: f64,
    pub status: ReferenceKind,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub format: Option<InstanceFormat>,
    #[serde(default)]
    pub dimacs_weights: bool,
    pub alias: Option<String>,
    pub k: Vec<usize>,
    #[serde(default)]
    pub reference: Vec<Reference>,
}

impl ManifestEntry {
    pub fn display_name(&self) -> String {
        self.alias.clone().unwrap_or_else(|| {
            self.path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| self.path.display().to_string())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
pub struct Manifest {
    #[serde(default)]
    pub instance: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        toml::from_str(text).context("invalid manifest")
    }

    /// Reads a manifest and resolves relative instance paths against the
    /// manifest's directory.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read manifest {}", path.display()))?;
        let mut m = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for e in &mut m.instance {
            if e.path.is_relative() {
                e.path = base.join(&e.path);
            }
        }
        Ok(m)
    }
}

/// Outcome relative to the supplied reference value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    /// Matches a proven optimum.
    Opt,
    /// Matches the best known value.
    Best,
    /// No reference, or the reference was beaten.
    New,
    /// Below the reference.
    Miss,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Opt => "opt",
            Tag::Best => "best",
            Tag::New => "new",
            Tag::Miss => "miss",
        }
    }

    pub fn classify(best: f64, reference: Option<&Reference>) -> Tag {
        match reference {
            None => Tag::New,
            Some(r) if best == r.value => match r.status {
                ReferenceKind::Opt => Tag::Opt,
                ReferenceKind::Best => Tag::Best,
            },
            Some(r) if best > r.value => Tag::New,
            Some(_) => Tag::Miss,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowResult {
    pub best: f64,
    pub avg: f64,
    pub gap_percent: f64,
    pub total_time: f64,
    pub tag: Tag,
    pub feasible: bool,
    pub terminations: BTreeMap<Termination, usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub k: usize,
    pub reference: Option<Reference>,
    pub result: Result<RowResult, String>,
}

/// Runs every (instance, k) pair of the manifest in manifest order. A row
/// whose instance cannot be loaded is recorded as failed; the others still
/// run.
pub fn run_bench(manifest: &Manifest, base: &SolverConfig, threads: usize) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for entry in &manifest.instance {
        let format = entry
            .format
            .unwrap_or_else(|| InstanceFormat::guess(&entry.path));
        let graph =
            load_instance(&entry.path, format, entry.dimacs_weights).map_err(|e| format!("{e:#}"));
        for &k in &entry.k {
            let reference = entry.reference.iter().find(|r| r.k == k).cloned();
            let config = SolverConfig { k, ..base.clone() };
            let result = graph.as_ref().map_err(Clone::clone).and_then(|g| {
                let report = solve_repeated(g, &config, threads).map_err(|e| e.to_string())?;
                let mut terminations = BTreeMap::new();
                for r in &report.runs {
                    *terminations.entry(r.termination).or_insert(0) += 1;
                }
                Ok(RowResult {
                    best: report.best_weight,
                    avg: report.avg_weight,
                    gap_percent: report.gap_percent,
                    total_time: report.total_time,
                    tag: Tag::classify(report.best_weight, reference.as_ref()),
                    feasible: report.best().feasible,
                    terminations,
                })
            });
            rows.push(BenchRow {
                instance: entry.display_name(),
                k,
                reference,
                result,
            });
        }
    }
    rows
}

fn terminations_cell(t: &BTreeMap<Termination, usize>) -> String {
    t.iter()
        .map(|(k, v)| format!("{}:{}", k.as_str(), v))
        .collect::<Vec<_>>()
        .join(";")
}

fn reference_cells(r: &Option<Reference>) -> (String, String) {
    match r {
        Some(r) => (
            r.value.to_string(),
            match r.status {
                ReferenceKind::Opt => "opt".into(),
                ReferenceKind::Best => "best".into(),
            },
        ),
        None => ("-".into(), "-".into()),
    }
}

/// CSV in table column order. Wall time is only included on request since
/// it differs from one invocation to the next.
pub fn to_csv(rows: &[BenchRow], with_time: bool) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "k",
        "inst",
        "ref",
        "ref_status",
        "v_best",
        "tag",
        "v_avg",
        "v_gap",
        "feasible",
        "terminations",
    ];
    if with_time {
        header.push("v_t_tot");
    }
    header.push("error");
    w.write_record(&header)?;
    for row in rows {
        let (rv, rs) = reference_cells(&row.reference);
        let mut rec = vec![row.k.to_string(), row.instance.clone(), rv, rs];
        match &row.result {
            Ok(r) => {
                rec.extend([
                    r.best.to_string(),
                    r.tag.as_str().to_string(),
                    format!("{:.2}", r.avg),
                    format!("{:.2}", r.gap_percent),
                    r.feasible.to_string(),
                    terminations_cell(&r.terminations),
                ]);
                if with_time {
                    rec.push(format!("{:.2}", r.total_time));
                }
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 6));
                if with_time {
                    rec.push(String::new());
                }
                rec.push(e.clone());
            }
        }
        w.write_record(&rec)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Aligned text table: k, inst, opt/best, V_best, V_avg, V_gap, V_t_tot.
pub fn to_text(rows: &[BenchRow]) -> String {
    let mut cells: Vec<[String; 7]> = vec![[
        "k".into(),
        "inst".into(),
        "opt/best".into(),
        "V_best".into(),
        "V_avg".into(),
        "V_gap".into(),
        "V_t_tot".into(),
    ]];
    for row in rows {
        let reference = match &row.reference {
            Some(r) => format!(
                "{} ({})",
                r.value,
                match r.status {
                    ReferenceKind::Opt => "opt",
                    ReferenceKind::Best => "best",
                }
            ),
            None => "-".into(),
        };
        let tail = match &row.result {
            Ok(r) => [
                format!("{} {}", r.best, r.tag.as_str()),
                format!("{:.2}", r.avg),
                format!("{:.2}", r.gap_percent),
                format!("{:.2}", r.total_time),
            ],
            Err(e) => [
                format!("FAILED: {e}"),
                String::new(),
                String::new(),
                String::new(),
            ],
        };
        let [a, b, c, d] = tail;
        cells.push([
            row.k.to_string(),
            row.instance.clone(),
            reference,
            a,
            b,
            c,
            d,
        ]);
    }
    let widths: Vec<usize> = (0..7)
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        let opt = Reference {
            k: 1,
            value: 10.0,
            status: ReferenceKind::Opt,
        };
        let best = Reference {
            status: ReferenceKind::Best,
            ..opt.clone()
        };
        assert_eq!(Tag::classify(10.0, Some(&opt)), Tag::Opt);
        assert_eq!(Tag::classify(10.0, Some(&best)), Tag::Best);
        assert_eq!(Tag::classify(11.0, Some(&best)), Tag::New);
        assert_eq!(Tag::classify(9.0, Some(&opt)), Tag::Miss);
        assert_eq!(Tag::classify(9.0, None), Tag::New);
    }

    #[test]
    fn manifest_parsing() {
        let m = Manifest::parse(
            r#"
            [[instance]]
            path = "a.clq"
            dimacs_weights = true
            k = [1, 2]
            [[instance.reference]]
            k = 1
            value = 5
            status = "opt"

            [[instance]]
            path = "b.txt"
            format = "edgelist"
            alias = "bee"
            k = [3]
            "#,
        )
        .unwrap();
        assert_eq!(m.instance.len(), 2);
        assert_eq!(m.instance[0].display_name(), "a");
        assert_eq!(m.instance[0].reference[0].status, ReferenceKind::Opt);
        assert_eq!(m.instance[1].display_name(), "bee");
        assert_eq!(m.instance[1].format, Some(InstanceFormat::Edgelist));
        assert!(Manifest::parse("").unwrap().instance.is_empty());
        assert!(Manifest::parse("[[instance]]\npath = 3\n").is_err());
    }

    #[test]
    fn empty_manifest_gives_header_only() {
        let rows = run_bench(&Manifest::default(), &SolverConfig::default(), 1);
        assert!(rows.is_empty());
        let csv = to_csv(&rows, false).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert_eq!(to_text(&rows).lines().count(), 1);
    }
}
