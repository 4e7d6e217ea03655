//! Suite configuration documents.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_path_to_error::Segment;

use crate::error::{HarnessError, Result};
use crate::suites::SUITES;

pub const CONFIG_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0xC1F0;
pub const SEED_ENV: &str = "CONFLAT_SEED";

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema_version: u32,
    pub suites: Vec<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SuiteConfig {
    pub fn for_suite(name: &str) -> Self {
        SuiteConfig {
            schema_version: CONFIG_SCHEMA_VERSION,
            suites: vec![name.to_string()],
            seed: None,
        }
    }
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", escape(key))),
            Segment::Enum { variant } => out.push_str(&format!("/{}", escape(variant))),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

/// Deserializes JSON, reporting failures with a pointer to the offending field.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| HarnessError::Config {
        pointer: pointer(e.path()),
        message: e.inner().to_string(),
    })
}

/// Parses and validates a config; errors carry a JSON pointer to the bad field.
pub fn parse_config(text: &str) -> Result<SuiteConfig> {
    let cfg: SuiteConfig = from_json(text)?;
    if cfg.schema_version != CONFIG_SCHEMA_VERSION {
        return Err(HarnessError::Config {
            pointer: "/schema_version".into(),
            message: format!(
                "unsupported schema version {} (expected {CONFIG_SCHEMA_VERSION})",
                cfg.schema_version
            ),
        });
    }
    if cfg.suites.is_empty() {
        return Err(HarnessError::Config {
            pointer: "/suites".into(),
            message: "at least one suite is required".into(),
        });
    }
    for (i, s) in cfg.suites.iter().enumerate() {
        if !SUITES.contains(&s.as_str()) {
            return Err(HarnessError::Config {
                pointer: format!("/suites/{i}"),
                message: format!("unknown suite {s:?}; known: {}", SUITES.join(", ")),
            });
        }
    }
    Ok(cfg)
}

/// Seed precedence: environment, then config, then the default.
pub fn resolve_seed(cfg: &SuiteConfig) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => parse_seed(&v),
        Err(_) => Ok(cfg.seed.unwrap_or(DEFAULT_SEED)),
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Result<u64> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| HarnessError::Argument(format!("invalid seed {s:?}")))
}
