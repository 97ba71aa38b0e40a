use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

pub const CONFIG_ENV: &str = "BBCOMPRESS_CONFIG";

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Common {
    /// Arithmetic used for LP solves: exact or float.
    #[arg(long, global = true)]
    pub backend: Option<String>,
    /// Measure time in LP solves (1 ms each) instead of wall time.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pub virtual_clock: Option<bool>,
    /// Worker threads for independent tasks.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenerateOpts {
    /// fsb or rb.
    #[arg(long)]
    pub rule: Option<String>,
    /// Explore a child of the last node next; defaults on for rb.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub plunge: Option<bool>,
    /// Stop after this many nodes.
    #[arg(long)]
    pub node_limit: Option<usize>,
    /// A primal bound in minimization form, `auto`, or `none`.
    #[arg(long)]
    pub incumbent: Option<String>,
    /// Recorded in the manifest; generation is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompressOpts {
    /// exact, heuristic or drop.
    #[arg(long)]
    pub method: Option<String>,
    /// 1, 2, ... or inf.
    #[arg(long)]
    pub supp: Option<String>,
    /// Coefficient bound on the replacing direction.
    #[arg(long = "M", alias = "coefficient-bound")]
    #[serde(rename = "M")]
    pub coefficient_bound: Option<i64>,
    /// Seconds for the whole run.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Seconds per node.
    #[arg(long)]
    pub node_time_limit: Option<f64>,
    /// dfs, random[:seed], nodeid, subtreesize, gap or expert.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrecomputeOpts {
    /// heuristic, exact or drop.
    #[arg(long)]
    pub finder: Option<String>,
    #[arg(long)]
    pub supp: Option<String>,
    #[arg(long = "M", alias = "coefficient-bound")]
    #[serde(rename = "M")]
    pub coefficient_bound: Option<i64>,
    #[arg(long)]
    pub node_limit_seconds: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateOpts {
    /// An ordering name or `all`.
    #[arg(long)]
    pub strategy: Option<String>,
    /// Comma-separated seconds; `inf` allowed.
    #[arg(long)]
    pub horizon: Option<String>,
    /// Seed for the random ordering.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stop charging area at the last processed node.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub no_terminal: Option<bool>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportOpts {
    /// Horizon in seconds whose AUC values are averaged.
    #[arg(long)]
    pub auc_horizon: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub backend: Option<String>,
    pub virtual_clock: Option<bool>,
    pub jobs: Option<usize>,
    pub generate: GenerateOpts,
    pub compress: CompressOpts,
    pub precompute: PrecomputeOpts,
    pub simulate: SimulateOpts,
    pub report: ReportOpts,
}

impl ConfigFile {
    pub fn common(&self) -> Common {
        Common {
            backend: self.backend.clone(),
            virtual_clock: self.virtual_clock,
            jobs: self.jobs,
        }
    }

    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path: PathBuf = match explicit {
            Some(p) => p.to_path_buf(),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => PathBuf::from(p),
                _ => return Ok(Self::default()),
            },
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())),
            Some("toml") | None => toml::from_str(&text).with_context(|| format!("parsing {}", path.display())),
            Some(other) => bail!("config must be .toml or .json, got .{other}"),
        }
    }
}

/// Fills every unset field of `cli` from `file`.
pub trait Merge {
    fn merge(self, file: Self) -> Self;
}

macro_rules! merge_impl {
    ($t:ty { $($f:ident),* }) => {
        impl Merge for $t {
            fn merge(self, file: Self) -> Self {
                Self { $($f: self.$f.or(file.$f)),* }
            }
        }
    };
}

merge_impl!(Common {
    backend,
    virtual_clock,
    jobs
});
merge_impl!(GenerateOpts {
    rule,
    plunge,
    node_limit,
    incumbent,
    seed
});
merge_impl!(CompressOpts {
    method,
    supp,
    coefficient_bound,
    time_limit,
    node_time_limit,
    order
});
merge_impl!(PrecomputeOpts {
    finder,
    supp,
    coefficient_bound,
    node_limit_seconds
});
merge_impl!(SimulateOpts {
    strategy,
    horizon,
    seed,
    no_terminal
});
merge_impl!(ReportOpts { auc_horizon });

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_wins_over_file() {
        let cli = GenerateOpts {
            rule: Some("fsb".into()),
            ..Default::default()
        };
        let file = GenerateOpts {
            rule: Some("rb".into()),
            node_limit: Some(5),
            ..Default::default()
        };
        let m = cli.merge(file);
        assert_eq!(m.rule.as_deref(), Some("fsb"));
        assert_eq!(m.node_limit, Some(5));
    }

    #[test]
    fn toml_sections_parse() {
        let cfg: ConfigFile =
            toml::from_str("backend = \"float\"\n[compress]\nmethod = \"heuristic\"\nM = 7\n").unwrap();
        assert_eq!(cfg.common().backend.as_deref(), Some("float"));
        assert_eq!(cfg.compress.coefficient_bound, Some(7));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<ConfigFile>("[compress]\nbogus = 1\n").is_err());
    }
}
