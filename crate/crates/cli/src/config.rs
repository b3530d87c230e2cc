//! Pipeline configuration: defaults, then a TOML or JSON file, then
//! `CORPUSQC_*` environment variables, then command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use corpusqc::curate::CurateConfig;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const ENV_PREFIX: &str = "CORPUSQC_";
/// Env vars read by the argument parser itself rather than the config.
const RESERVED_ENV: &[&str] = &["CORPUSQC_CONFIG"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub corpus: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: u64,
    /// Worker threads; unset means one per available core.
    pub threads: Option<usize>,
    /// Records held in memory per streaming batch.
    pub chunk_size: usize,
    pub curate: CurateConfig,
    pub rules: Vec<PathBuf>,
    pub builtin_rules: bool,
    pub bleu_k: usize,
    pub bleu_max_n: usize,
    pub top_k: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            corpus: Vec::new(),
            out_dir: PathBuf::from("corpusqc-out"),
            seed: corpusqc::dataset::DEFAULT_SEED,
            threads: None,
            chunk_size: 1024,
            curate: CurateConfig::default(),
            rules: Vec::new(),
            builtin_rules: true,
            bleu_k: corpusqc::metrics::DEFAULT_K,
            bleu_max_n: corpusqc::metrics::DEFAULT_MAX_N,
            top_k: corpusqc::report::DEFAULT_TOP_K,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("config {path}: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("config {path}: unsupported extension (use .toml or .json)")]
    Extension { path: PathBuf },
    #[error("environment variable {var}: {message}")]
    Env { var: String, message: String },
    #[error("invalid config: {0}")]
    Schema(String),
    #[error("invalid config:\n{}", FieldList(.0))]
    Invalid(Vec<FieldError>),
}

struct FieldList<'a>(&'a [FieldError]);

impl fmt::Display for FieldList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {}: {}", e.field, e.message)?;
        }
        Ok(())
    }
}

impl PipelineConfig {
    /// Defaults overlaid with `file` (if any) and `env`.
    pub fn load(file: Option<&Path>, env: impl IntoIterator<Item = (String, String)>) -> Result<Self, ConfigError> {
        let mut value = serde_json::to_value(PipelineConfig::default()).expect("config serializes");
        if let Some(path) = file {
            merge(&mut value, read_file(path)?);
        }
        let mut env: Vec<(String, String)> = env
            .into_iter()
            .filter(|(k, _)| k.starts_with(ENV_PREFIX) && !RESERVED_ENV.contains(&k.as_str()))
            .collect();
        env.sort();
        for (var, raw) in env {
            apply_env(&mut value, &var, &raw)?;
        }
        let cfg: PipelineConfig = serde_json::from_value(value).map_err(|e| ConfigError::Schema(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errs = Vec::new();
        let mut positive = |field: &str, v: usize| {
            if v == 0 {
                errs.push(FieldError { field: field.into(), message: "must be positive".into() });
            }
        };
        positive("curate.min_words", self.curate.min_words);
        positive("curate.max_desc_tokens", self.curate.max_desc_tokens);
        positive("curate.max_code_tokens", self.curate.max_code_tokens);
        positive("curate.max_code_chars", self.curate.max_code_chars);
        positive("chunk_size", self.chunk_size);
        positive("bleu_max_n", self.bleu_max_n);
        if self.threads == Some(0) {
            errs.push(FieldError { field: "threads".into(), message: "must be at least 1".into() });
        }
        for (i, p) in self.curate.header_patterns.iter().enumerate() {
            if p.trim().is_empty() {
                errs.push(FieldError { field: format!("curate.header_patterns[{i}]"), message: "empty pattern".into() });
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(errs))
        }
    }
}

fn read_file(path: &Path) -> Result<Value, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
    let syntax = |message: String| ConfigError::Syntax { path: path.into(), message };
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => {
            let v: toml::Value = toml::from_str(&text).map_err(|e| syntax(e.to_string()))?;
            serde_json::to_value(v).map_err(|e| syntax(e.to_string()))
        }
        Some("json") => serde_json::from_str(&text).map_err(|e| syntax(e.to_string())),
        _ => Err(ConfigError::Extension { path: path.into() }),
    }
}

fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// `CORPUSQC_CURATE__MIN_WORDS=12` sets `curate.min_words`. List fields take
/// comma-separated values; other values are read as JSON when they parse
/// and as strings otherwise.
fn apply_env(root: &mut Value, var: &str, raw: &str) -> Result<(), ConfigError> {
    let key = &var[ENV_PREFIX.len()..];
    let path: Vec<String> = key.split("__").map(|s| s.to_ascii_lowercase()).collect();
    let err = |message: String| ConfigError::Env { var: var.to_string(), message };
    let mut slot = root;
    for (i, part) in path.iter().enumerate() {
        let obj = slot.as_object_mut().ok_or_else(|| err(format!("{} is not a section", path[..i].join("."))))?;
        if !obj.contains_key(part) {
            return Err(err(format!("unknown setting {}", path[..=i].join("."))));
        }
        slot = obj.get_mut(part).expect("checked above");
    }
    *slot = if slot.is_array() {
        Value::Array(raw.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Value::String(s.into())).collect())
    } else if slot.is_string() {
        Value::String(raw.to_string())
    } else {
        serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
    };
    Ok(())
}
