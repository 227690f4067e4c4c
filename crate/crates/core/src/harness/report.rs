use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::spectral::lp::BUMP_DEFINITION;

/// Library version and a hash of the bump definition, so constants from
/// different runs can be compared.
pub fn provenance() -> String {
    let digest = Sha256::digest(BUMP_DEFINITION.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("torus-leibniz {} bump-sha256 {hex}", env!("CARGO_PKG_VERSION"))
}

/// Structured-text report with a CSV companion and optional plot columns.
/// The body is a pure function of its contents; the timestamp only appears
/// on the header line written by [`Report::render`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub name: String,
    pub command: String,
    fields: Vec<(String, String)>,
    csv_header: String,
    csv_rows: Vec<String>,
    plot_columns: Option<(String, String)>,
    plot: Vec<(f64, f64)>,
}

impl Report {
    pub fn new(name: impl Into<String>, command: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            command: command.into(),
            ..Default::default()
        }
    }

    /// Adds a `key: value` line; newlines in the value are flattened.
    pub fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        let v = value.to_string().replace('\n', " | ");
        self.fields.push((key.into(), v));
        self
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_csv(&mut self, header: impl Into<String>, rows: Vec<String>) -> &mut Self {
        self.csv_header = header.into();
        self.csv_rows = rows;
        self
    }

    pub fn set_plot(&mut self, x: impl Into<String>, y: impl Into<String>, points: Vec<(f64, f64)>) -> &mut Self {
        self.plot_columns = Some((x.into(), y.into()));
        self.plot = points;
        self
    }

    pub fn body(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "provenance: {}", provenance());
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn render(&self, timestamp: &str) -> String {
        format!("# generated {timestamp}\n{}", self.body())
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.csv_header);
        for row in &self.csv_rows {
            let _ = writeln!(out, "{row}");
        }
        out
    }

    pub fn plotdata(&self) -> Option<String> {
        let (x, y) = self.plot_columns.as_ref()?;
        let mut out = format!("# {x} {y}\n");
        for (a, b) in &self.plot {
            let _ = writeln!(out, "{a:.12e} {b:.12e}");
        }
        Some(out)
    }

    /// Writes `<name>.report.txt`, `<name>.csv` and, when plot columns were
    /// set, `<name>.plotdata` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let seconds = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut written = Vec::new();
        let report = dir.join(format!("{}.report.txt", self.name));
        fs::write(&report, self.render(&format!("unix:{seconds}")))?;
        written.push(report);
        let csv = dir.join(format!("{}.csv", self.name));
        fs::write(&csv, self.csv())?;
        written.push(csv);
        if let Some(plot) = self.plotdata() {
            let path = dir.join(format!("{}.plotdata", self.name));
            fs::write(&path, plot)?;
            written.push(path);
        }
        Ok(written)
    }
}
