//! Config ingestion: a bare space spec, or a `seqspace/1` document holding
//! the space together with seed, budget and tolerance defaults.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use seqspace::positivity::DEFAULT_TOL;
use seqspace::{OrliczFunction, SearchBudget, SpaceSpec};

use crate::Common;

pub const SCHEMA: &str = "seqspace/1";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Lib(#[from] seqspace::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[allow(dead_code)]
    schema: String,
    space: Option<SpaceSpec>,
    seed: Option<u64>,
    budget: Option<BudgetFile>,
    tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetFile {
    restarts: Option<usize>,
    steps: Option<usize>,
}

/// Resolved settings: flags override the config file, which overrides defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: Option<SpaceSpec>,
    pub seed: u64,
    pub restarts: usize,
    pub steps: usize,
    pub tol: f64,
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e))
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    parse(path, &read(path)?)
}

fn is_config(path: &Path, text: &str) -> Result<bool, ConfigError> {
    let v: Value = parse(path, text)?;
    match v.get("schema") {
        None => Ok(false),
        Some(Value::String(s)) if s == SCHEMA => Ok(true),
        Some(other) => Err(ConfigError::Parse {
            path: path.to_path_buf(),
            msg: format!("field `schema`: expected \"{SCHEMA}\", found {other}"),
        }),
    }
}

/// An Orlicz function from a piece list, an Orlicz space, or a config.
pub fn load_phi(path: &Path) -> Result<OrliczFunction, ConfigError> {
    let text = read(path)?;
    let space = if is_config(path, &text)? {
        parse::<ConfigFile>(path, &text)?.space
    } else if parse::<Value>(path, &text)?.is_array() {
        return parse(path, &text);
    } else {
        Some(parse::<SpaceSpec>(path, &text)?)
    };
    match space {
        Some(SpaceSpec::Orlicz(o)) => Ok(o.phi),
        _ => Err(ConfigError::Invalid(format!("{}: no Orlicz function", path.display()))),
    }
}

impl RunConfig {
    pub fn resolve(common: &Common) -> Result<Self, ConfigError> {
        let defaults = SearchBudget::default();
        let mut cfg = RunConfig {
            space: None,
            seed: 0,
            restarts: defaults.restarts,
            steps: defaults.steps,
            tol: DEFAULT_TOL,
        };
        if let Some(path) = &common.space {
            let text = read(path)?;
            if is_config(path, &text)? {
                let file: ConfigFile = parse(path, &text)?;
                cfg.space = file.space;
                cfg.seed = file.seed.unwrap_or(cfg.seed);
                if let Some(b) = file.budget {
                    cfg.restarts = b.restarts.unwrap_or(cfg.restarts);
                    cfg.steps = b.steps.unwrap_or(cfg.steps);
                }
                cfg.tol = file.tol.unwrap_or(cfg.tol);
            } else {
                cfg.space = Some(parse(path, &text)?);
            }
        }
        cfg.seed = common.seed.unwrap_or(cfg.seed);
        cfg.restarts = common.budget.unwrap_or(cfg.restarts);
        cfg.steps = common.steps.unwrap_or(cfg.steps);
        cfg.tol = common.tol.unwrap_or(cfg.tol);
        if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
            return Err(ConfigError::Invalid(format!(
                "tolerance must be positive, got {}",
                cfg.tol
            )));
        }
        Ok(cfg)
    }

    pub fn space(&self) -> Result<SpaceSpec, ConfigError> {
        self.space
            .clone()
            .ok_or_else(|| ConfigError::Invalid("this command needs --space".into()))
    }
}

/// `"3,4"` or `"[3, 4]"`.
pub fn parse_vector(s: &str) -> Result<Vec<f64>, ConfigError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ConfigError::Invalid(format!("entry {i} of '{s}' is not a finite number")))
        })
        .collect()
}
