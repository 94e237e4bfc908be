//! `key = value` settings files, merged under command-line flags.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

/// Parses `key = value` lines. Blank lines and `#` comments are ignored.
pub fn parse_settings(text: &str, origin: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{origin}:{}: expected `key = value`, found `{line}`",
                i + 1
            )));
        };
        let key = k.trim().replace('_', "-");
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!(
                "{origin}:{}: duplicate key `{key}`",
                i + 1
            )));
        }
    }
    Ok(out)
}

pub fn load_settings(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_settings(&text, &path.display().to_string())
}

/// Resolves each setting from its flag, falling back to the settings file,
/// and records what was used so the run can be replayed.
pub struct Resolver {
    file: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: Vec<(String, String)>,
}

impl Resolver {
    pub fn new(file: BTreeMap<String, String>) -> Self {
        Resolver {
            file,
            used: BTreeSet::new(),
            resolved: Vec::new(),
        }
    }

    pub fn get<T>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let from_file = self.file.get(key).cloned();
        if from_file.is_some() {
            self.used.insert(key.to_string());
        }
        let value = match (flag, from_file) {
            (Some(v), _) => Some(v),
            (None, Some(text)) => Some(text.parse::<T>().map_err(|e| {
                CliError::Usage(format!("invalid value `{text}` for `{key}`: {e}"))
            })?),
            (None, None) => None,
        };
        if let Some(v) = &value {
            self.resolved.push((key.to_string(), v.to_string()));
        }
        Ok(value)
    }

    pub fn or<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: FromStr + Display + Clone,
        T::Err: Display,
    {
        match self.get(key, flag)? {
            Some(v) => Ok(v),
            None => {
                self.resolved.push((key.to_string(), default.to_string()));
                Ok(default)
            }
        }
    }

    pub fn require<T>(&mut self, key: &str, flag: Option<T>) -> Result<T, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        self.get(key, flag)?
            .ok_or_else(|| CliError::Usage(format!("missing required setting --{key}")))
    }

    /// Comma-separated list setting.
    pub fn list<T>(&mut self, key: &str, flag: Option<String>) -> Result<Option<Vec<T>>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        let Some(text) = self.get::<String>(key, flag)? else {
            return Ok(None);
        };
        text.split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<T>().map_err(|e| {
                    CliError::Usage(format!("invalid list item `{p}` for `{key}`: {e}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    /// Errors on settings-file keys that no resolver call asked for.
    pub fn finish(self) -> Result<Vec<(String, String)>, CliError> {
        let unknown: Vec<_> = self
            .file
            .keys()
            .filter(|k| !self.used.contains(*k))
            .cloned()
            .collect();
        if !unknown.is_empty() {
            return Err(CliError::Usage(format!(
                "unknown or inapplicable config keys: {}",
                unknown.join(", ")
            )));
        }
        Ok(self.resolved)
    }
}
