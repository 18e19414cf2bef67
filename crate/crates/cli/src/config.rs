use std::path::{Path, PathBuf};

use anyhow::Context;
use onerel::stephen::{Budget, ExpansionMode};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Optional TOML file; every key may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub default_budget: Option<(usize, usize)>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub frugal_expansion: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub default_budget: Budget,
    pub output_dir: PathBuf,
    pub format: Format,
    pub frugal_expansion: bool,
}

impl Config {
    /// Flags win over the environment (already folded into `budget` by
    /// clap), which wins over the file, which wins over built-in defaults.
    pub fn resolve(file: Option<&Path>, budget: Option<Budget>, format: Option<Format>) -> anyhow::Result<Config> {
        let f = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str::<ConfigFile>(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => ConfigFile::default(),
        };
        let from_file = match f.default_budget {
            Some((r, v)) => Some(checked_budget(r, v).map_err(anyhow::Error::msg)?),
            None => None,
        };
        Ok(Config {
            default_budget: budget.or(from_file).unwrap_or_default(),
            output_dir: f.output_dir.unwrap_or_else(|| PathBuf::from(".")),
            format: format.or(f.format).unwrap_or_default(),
            frugal_expansion: f.frugal_expansion.unwrap_or(false),
        })
    }

    pub fn mode(&self, frugal_flag: bool) -> ExpansionMode {
        if frugal_flag || self.frugal_expansion {
            ExpansionMode::Frugal
        } else {
            ExpansionMode::Full
        }
    }

    /// Relative output paths land in `output_dir`.
    pub fn out_path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.output_dir.join(p)
        }
    }
}

fn checked_budget(rounds: usize, vertices: usize) -> Result<Budget, String> {
    if vertices == 0 {
        return Err("the vertex budget must be at least 1".into());
    }
    Ok(Budget::new(rounds, vertices))
}

/// `ROUNDS,VERTICES`.
pub fn parse_budget(s: &str) -> Result<Budget, String> {
    let (r, v) = s.split_once(',').ok_or_else(|| format!("expected ROUNDS,VERTICES, got {s:?}"))?;
    let r = r.trim().parse::<usize>().map_err(|e| format!("rounds: {e}"))?;
    let v = v.trim().parse::<usize>().map_err(|e| format!("vertices: {e}"))?;
    checked_budget(r, v)
}
