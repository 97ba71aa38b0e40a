use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use bbcompress::compress::{compression_ratio, CompressionLog};
use bbcompress::ordering::{auc, Trajectory};
use serde::{Deserialize, Serialize};

use crate::{usage_err, FailExt, Failure};

/// Horizons, in seconds, of the ratio columns.
pub const RATIO_HORIZONS: [f64; 3] = [900.0, 3_600.0, 14_400.0];

#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub strategy: String,
    pub auc_pct_mean: String,
    pub ratio_15min: String,
    pub ratio_1h: String,
    pub ratio_4h: String,
}

#[derive(Debug, Deserialize)]
struct TrajRow {
    strategy: String,
    #[serde(rename = "T")]
    t: String,
    auc_pct: String,
    ratio_pct: String,
}

/// One (strategy, horizon) observation.
struct Obs {
    strategy: String,
    horizon: f64,
    auc: Option<f64>,
    ratio: f64,
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).run()?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Run(anyhow::anyhow!(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// Expands glob patterns into a sorted, deduplicated file list.
pub fn expand(patterns: &[String]) -> Result<Vec<PathBuf>, Failure> {
    let mut files = Vec::new();
    for p in patterns {
        for entry in glob::glob(p).with_context(|| format!("bad pattern `{p}`")).usage()? {
            let path = entry.usage()?;
            if path.is_file() {
                files.push(path);
            }
        }
    }
    files.sort();
    files.dedup();
    if files.is_empty() {
        return Err(usage_err("no input files matched"));
    }
    Ok(files)
}

fn parse_horizon(text: &str) -> Option<f64> {
    match text {
        "inf" => Some(f64::INFINITY),
        t => t.parse().ok(),
    }
}

fn traj_observations(path: &Path) -> Result<Vec<Obs>, Failure> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("reading {}", path.display()))
        .usage()?;
    let mut out = Vec::new();
    for row in reader.deserialize::<TrajRow>() {
        let row = row.with_context(|| format!("reading {}", path.display())).usage()?;
        let bad = || usage_err(format!("{}: malformed row", path.display()));
        out.push(Obs {
            strategy: row.strategy,
            horizon: parse_horizon(&row.t).ok_or_else(bad)?,
            auc: if row.auc_pct.is_empty() {
                None
            } else {
                Some(row.auc_pct.parse().map_err(|_| bad())?)
            },
            ratio: row.ratio_pct.parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

/// The log's run cut at `horizon`: steps are kept while their cumulative
/// time fits.
pub fn log_trajectory(log: &CompressionLog, horizon: f64) -> Trajectory {
    let mut elapsed = 0.0;
    let mut steps = Vec::new();
    for s in &log.steps {
        if elapsed + s.time_secs > horizon {
            break;
        }
        elapsed += s.time_secs;
        steps.push((s.time_secs, s.size_after));
    }
    Trajectory {
        s0: log.summary.initial_size,
        horizon,
        steps,
    }
}

fn log_observations(path: &Path, horizons: &[f64]) -> Result<Vec<Obs>, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .usage()?;
    let log = CompressionLog::from_jsonl(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .usage()?;
    Ok(horizons
        .iter()
        .map(|h| {
            let traj = log_trajectory(&log, *h);
            Obs {
                strategy: log.summary.method.clone(),
                horizon: *h,
                auc: auc(&traj, true).ok(),
                ratio: compression_ratio(traj.s0, traj.final_size()),
            }
        })
        .collect())
}

fn mean(values: impl Iterator<Item = f64>) -> String {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        String::new()
    } else {
        format!("{:.4}", sum / n as f64)
    }
}

/// Per-strategy means. CSV inputs are trajectory files; anything else is
/// read as a compression log and cut at each report horizon.
pub fn summarize(files: &[PathBuf], auc_horizon: f64) -> Result<Vec<SummaryRow>, Failure> {
    let mut horizons = RATIO_HORIZONS.to_vec();
    if !horizons.contains(&auc_horizon) {
        horizons.push(auc_horizon);
    }
    let mut obs = Vec::new();
    for f in files {
        if f.extension().is_some_and(|e| e == "csv") {
            obs.extend(traj_observations(f)?);
        } else {
            obs.extend(log_observations(f, &horizons)?);
        }
    }
    let mut by_strategy: BTreeMap<String, Vec<Obs>> = BTreeMap::new();
    for o in obs {
        by_strategy.entry(o.strategy.clone()).or_default().push(o);
    }
    Ok(by_strategy
        .into_iter()
        .map(|(strategy, rows)| {
            let ratio_at = |h: f64| mean(rows.iter().filter(|o| o.horizon == h).map(|o| o.ratio));
            SummaryRow {
                auc_pct_mean: mean(rows.iter().filter(|o| o.horizon == auc_horizon).filter_map(|o| o.auc)),
                ratio_15min: ratio_at(RATIO_HORIZONS[0]),
                ratio_1h: ratio_at(RATIO_HORIZONS[1]),
                ratio_4h: ratio_at(RATIO_HORIZONS[2]),
                strategy,
            }
        })
        .collect())
}
