//! Experiment reports, CSV tables and run manifests.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Build a CSV row from heterogeneous displayable values.
#[macro_export]
macro_rules! row {
    ($($v:expr),* $(,)?) => { vec![$($v.to_string()),*] };
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentReport {
    pub name: String,
    pub scalars: Vec<(String, String)>,
    /// Named tables with the path each one is written to.
    pub tables: Vec<(String, PathBuf, Table)>,
    pub assertions: Vec<(String, bool)>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        ExperimentReport { name: name.to_string(), ..Default::default() }
    }

    pub fn scalar(&mut self, key: &str, value: impl Display) {
        self.scalars.push((key.to_string(), value.to_string()));
    }

    pub fn table(&mut self, name: &str, path: PathBuf, table: Table) {
        self.tables.push((name.to_string(), path, table));
    }

    pub fn assert(&mut self, name: &str, ok: bool) {
        self.assertions.push((name.to_string(), ok));
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|(_, ok)| *ok)
    }

    pub fn failed_assertions(&self) -> Vec<&str> {
        self.assertions.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    /// Write every table, a `<name>_summary.csv` of scalars and assertions,
    /// and the manifest.
    pub fn write(&self, out_dir: &Path, resolved: &BTreeMap<String, String>) -> Result<(), CliError> {
        fs::create_dir_all(out_dir)?;
        for (_, path, table) in &self.tables {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, table.to_csv())?;
        }
        let mut summary = Table::new(&["key", "value"]);
        for (k, v) in &self.scalars {
            summary.push(row![k, v]);
        }
        for (k, ok) in &self.assertions {
            summary.push(row![format!("assert:{k}"), if *ok { "pass" } else { "fail" }]);
        }
        fs::write(out_dir.join(format!("{}_summary.csv", self.name)), summary.to_csv())?;
        fs::write(out_dir.join(format!("{}.manifest", self.name)), manifest(&self.name, resolved))?;
        Ok(())
    }

    pub fn print(&self) {
        for (k, v) in &self.scalars {
            println!("{k} = {v}");
        }
        for (k, ok) in &self.assertions {
            println!("[{}] {k}", if *ok { "PASS" } else { "FAIL" });
        }
    }
}

/// A manifest is itself a config file: rerunning the same subcommand with
/// `--config <manifest>` reproduces the run.
pub fn manifest(command: &str, resolved: &BTreeMap<String, String>) -> String {
    let mut s = format!("# spiderweb {TOOL_VERSION}\n# command: {command}\n");
    for (k, v) in resolved {
        s.push_str(&format!("{k}={v}\n"));
    }
    s
}
