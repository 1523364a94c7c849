//! TOML configuration for the CLI. Every field has a default so an absent
//! file or a partial file both work.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use cnpair_core::solutions::DEFAULT_MULTIPLE_BOUND;
use cnpair_core::FactorBudget;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Cycle-finding iteration cap for integer factorization.
    pub factor_budget: u64,
    /// Highest group multiple explored when enumerating pairs from a seed.
    pub pair_multiple_bound: u64,
    /// Default square-generator bound for the brute-force search.
    pub oracle_bound_pq: u64,
    /// Default shared-side bound for the brute-force search.
    pub oracle_bound_side: u64,
    /// Default catalog location.
    pub catalog_path: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            factor_budget: FactorBudget::default().rho_iterations,
            pair_multiple_bound: DEFAULT_MULTIPLE_BOUND,
            oracle_bound_pq: 20,
            oracle_bound_side: 2000,
            catalog_path: PathBuf::from("catalog.jsonl"),
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: Config = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.factor_budget == 0
            || self.pair_multiple_bound == 0
            || self.oracle_bound_pq == 0
            || self.oracle_bound_side == 0
        {
            bail!("all budgets and bounds must be positive");
        }
        Ok(())
    }

    pub fn factor_budget(&self) -> FactorBudget {
        FactorBudget {
            rho_iterations: self.factor_budget,
        }
    }
}
