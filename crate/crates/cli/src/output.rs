use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use crate::Failure;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Destination of machine-readable output.
pub struct Output {
    pub format: Format,
    path: Option<PathBuf>,
}

impl Output {
    pub fn new(format: Format, path: Option<PathBuf>) -> Self {
        Output { format, path }
    }

    fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.path {
            Some(p) => fs::write(p, text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
            }
        }
        Ok(())
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
        text.push('\n');
        self.write(&text)
    }

    /// Header plus rows; `trailer` lines are appended as `# ` comments.
    pub fn csv_with_trailer(&self, header: &[&str], rows: &[Vec<String>], trailer: &[String]) -> Result<(), Failure> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        for line in trailer {
            text.push_str("# ");
            text.push_str(line);
            text.push('\n');
        }
        self.write(&text)
    }

    pub fn csv(&self, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
        self.csv_with_trailer(header, rows, &[])
    }
}

/// Shortest round-trip decimal of an f64; stable across runs and platforms.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
