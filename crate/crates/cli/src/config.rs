//! Flat `key=value` configuration, overridable by command-line flags.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Parse `key=value` lines; blank lines and lines starting with `#` are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value, got `{line}`", i + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("config line {}: key `{k}` repeated", i + 1)));
        }
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Resolved parameters of one run. Every lookup is recorded, defaults
/// included, so the manifest echoes exactly what the run used.
#[derive(Debug, Default)]
pub struct Params {
    entries: BTreeMap<String, String>,
    resolved: RefCell<BTreeMap<String, String>>,
}

impl Params {
    /// Flags win over file entries.
    pub fn new(file: BTreeMap<String, String>, flags: BTreeMap<String, String>) -> Self {
        let mut entries = file;
        entries.extend(flags);
        Params { entries, resolved: RefCell::default() }
    }

    fn parse<T: FromStr>(&self, key: &str, raw: &str) -> Result<T, CliError> {
        raw.parse().map_err(|_| CliError::Usage(format!("invalid value `{raw}` for `{key}`")))
    }

    pub fn get<T: FromStr + Display>(&self, key: &str, default: T) -> Result<T, CliError> {
        let value = match self.entries.get(key) {
            Some(raw) => self.parse(key, raw)?,
            None => default,
        };
        self.resolved.borrow_mut().insert(key.to_string(), value.to_string());
        Ok(value)
    }

    pub fn get_opt<T: FromStr + Display>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            Some(raw) => {
                let v: T = self.parse(key, raw)?;
                self.resolved.borrow_mut().insert(key.to_string(), v.to_string());
                Ok(Some(v))
            }
            None => Ok(None),
        }
    }

    pub fn require<T: FromStr + Display>(&self, key: &str) -> Result<T, CliError> {
        self.get_opt(key)?.ok_or_else(|| CliError::Usage(format!("missing required parameter `{key}`")))
    }

    pub fn resolved(&self) -> BTreeMap<String, String> {
        self.resolved.borrow().clone()
    }

    /// Keys supplied but never read.
    pub fn unused(&self) -> Vec<String> {
        let used = self.resolved.borrow();
        self.entries.keys().filter(|k| !used.contains_key(*k)).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_override() {
        let file = parse_config("# run\ndepth = 5\n\nfamily=dyadic_web\n").unwrap();
        let mut flags = BTreeMap::new();
        flags.insert("depth".to_string(), "7".to_string());
        let p = Params::new(file, flags);
        assert_eq!(p.get::<u32>("depth", 1).unwrap(), 7);
        assert_eq!(p.require::<String>("family").unwrap(), "dyadic_web");
        assert_eq!(p.get::<u64>("seed", 3).unwrap(), 3);
        assert_eq!(p.resolved().get("seed").map(String::as_str), Some("3"));
        assert!(p.get::<u32>("family", 0).is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_config("depth 5\n").is_err());
        assert!(parse_config("a=1\na=2\n").is_err());
        assert!(parse_config("=1\n").is_err());
    }
}
