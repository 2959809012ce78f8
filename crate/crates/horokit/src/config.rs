//! Run configuration files: `key = value` lines, `#` starts a comment.
//!
//! Every key matches a command-line flag and is optional; flags take
//! precedence over file values. The parser is strict about keys and value
//! shapes but indifferent to whitespace and blank lines, and it never
//! panics on foreign input.

use crate::coxeter::Tiling;
use crate::packing::CaseId;

/// Density estimation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Mc,
}

impl Method {
    pub fn id(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Mc => "mc",
        }
    }

    pub fn from_id(id: &str) -> Option<Method> {
        match id {
            "exact" => Some(Method::Exact),
            "mc" => Some(Method::Mc),
            _ => None,
        }
    }
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Scene,
    Obj,
    Ply,
}

impl Format {
    pub fn id(self) -> &'static str {
        match self {
            Format::Scene => "scene",
            Format::Obj => "obj",
            Format::Ply => "ply",
        }
    }

    pub fn from_id(id: &str) -> Option<Format> {
        match id {
            "scene" => Some(Format::Scene),
            "obj" => Some(Format::Obj),
            "ply" => Some(Format::Ply),
            _ => None,
        }
    }
}

/// Values read from a configuration file; `None` means not set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub tiling: Option<Tiling>,
    pub case: Option<CaseId>,
    pub crowns: Option<usize>,
    pub tol: Option<f64>,
    pub method: Option<Method>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<Format>,
    pub resolution: Option<usize>,
}

/// Configuration parse failures, pointing at the 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    NotAnAssignment { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: &'static str },
    #[error("line {line}: bad value for `{key}`")]
    BadValue { line: usize, key: &'static str },
}

/// Parses a configuration file.
pub fn parse(text: &str) -> Result<FileConfig, ConfigError> {
    let mut config = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(ConfigError::NotAnAssignment { line })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(ConfigError::NotAnAssignment { line });
        }
        match key {
            "tiling" => set(
                &mut config.tiling,
                Tiling::from_id(value),
                line,
                "tiling",
            )?,
            "case" => set(&mut config.case, CaseId::from_id(value), line, "case")?,
            "crowns" => set(&mut config.crowns, value.parse().ok(), line, "crowns")?,
            "tol" => set(
                &mut config.tol,
                value.parse().ok().filter(|t: &f64| t.is_finite() && *t > 0.0),
                line,
                "tol",
            )?,
            "method" => set(&mut config.method, Method::from_id(value), line, "method")?,
            "samples" => set(&mut config.samples, value.parse().ok(), line, "samples")?,
            "seed" => set(&mut config.seed, value.parse().ok(), line, "seed")?,
            "out" => set(&mut config.out, Some(value.to_string()), line, "out")?,
            "format" => set(&mut config.format, Format::from_id(value), line, "format")?,
            "resolution" => set(
                &mut config.resolution,
                value.parse().ok(),
                line,
                "resolution",
            )?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.chars().take(64).collect(),
                })
            }
        }
    }
    Ok(config)
}

fn set<T>(
    slot: &mut Option<T>,
    value: Option<T>,
    line: usize,
    key: &'static str,
) -> Result<(), ConfigError> {
    let value = value.ok_or(ConfigError::BadValue { line, key })?;
    if slot.is_some() {
        return Err(ConfigError::DuplicateKey { line, key });
    }
    *slot = Some(value);
    Ok(())
}
