//! Output formatting: complex numbers serialize as {"re":…,"im":…} in JSON
//! and as re±im·i text in CSV, both at 17 significant digits.

use num_complex::Complex64;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// 17 significant digits, round-trip exact for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex_csv(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    } else {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Where output goes: stdout, or a file (relative paths resolve against
/// the LZFUN_OUTPUT_DIR environment variable when it is set).
pub fn resolve_output(path: &Option<PathBuf>) -> Option<PathBuf> {
    let path = path.as_ref()?;
    if path.is_absolute() {
        return Some(path.clone());
    }
    match std::env::var_os("LZFUN_OUTPUT_DIR") {
        Some(dir) => Some(PathBuf::from(dir).join(path)),
        None => Some(path.clone()),
    }
}

pub fn emit(path: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match resolve_output(path) {
        Some(p) => {
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(p, content)
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
        }
    }
}

/// A uniform result table: header plus rows of (name, value) pairs, where
/// every cell is already formatted for CSV. JSON mirrors it with typed
/// values supplied separately.
pub struct Report {
    pub command: &'static str,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub json_records: Vec<Value>,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.csv_header.join(",");
                s.push('\n');
                for row in &self.csv_rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let doc = json!({
                    "schema_version": 1,
                    "command": self.command,
                    "records": self.json_records,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}
