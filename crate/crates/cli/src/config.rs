//! Run configuration: coefficient field, seed, budgets and cache location.

use std::path::PathBuf;
use std::time::Duration;

use detq_core::{Budget, FieldSpec, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "DETQ_CACHE_DIR";
pub const MAX_DEGREE_ENV: &str = "DETQ_MAX_DEGREE";
pub const MAX_PAIRS_ENV: &str = "DETQ_MAX_PAIRS";
pub const MAX_SECONDS_ENV: &str = "DETQ_MAX_SECONDS";
pub const DEFAULT_CACHE_DIR: &str = ".detq-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Q,
    Fp,
}

impl std::str::FromStr for FieldChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "qq" | "rationals" => Ok(FieldChoice::Q),
            "fp" | "prime" => Ok(FieldChoice::Fp),
            other => Err(format!("unknown field {other:?}; use q or fp")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub field: FieldChoice,
    pub prime: u32,
    pub seed: u64,
    pub max_retries: u32,
    pub budget: BudgetEcho,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

/// Serializable mirror of the engine budget.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetEcho {
    pub max_degree: Option<u32>,
    pub max_pairs: Option<usize>,
    pub max_seconds: Option<u64>,
}

impl BudgetEcho {
    pub fn to_budget(self) -> Budget {
        Budget {
            max_degree: self.max_degree,
            max_pairs: self.max_pairs,
            max_time: self.max_seconds.map(Duration::from_secs),
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Self {
            field: FieldChoice::Fp,
            prime: DEFAULT_PRIME,
            seed: 0,
            max_retries: 8,
            budget: BudgetEcho::default(),
            cache_dir: None,
        }
    }
}

impl Config {
    /// Defaults with budget and cache overrides read from the environment.
    pub fn from_env() -> Self {
        let num = |k: &str| std::env::var(k).ok().and_then(|v| v.parse::<u64>().ok());
        Self {
            budget: BudgetEcho {
                max_degree: num(MAX_DEGREE_ENV).map(|v| v as u32),
                max_pairs: num(MAX_PAIRS_ENV).map(|v| v as usize),
                max_seconds: num(MAX_SECONDS_ENV),
            },
            cache_dir: Some(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from)),
            ..Self::default()
        }
    }

    pub fn with_field(mut self, field: FieldChoice) -> Self {
        self.field = field;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self.field {
            FieldChoice::Q => FieldSpec::Rationals,
            FieldChoice::Fp => FieldSpec::Prime { modulus: self.prime },
        }
    }
}
