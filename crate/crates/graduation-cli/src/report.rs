//! Report documents: every subcommand produces one, rendered either
//! as aligned text or as JSON with a stable field order.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Output format selected by the global `--format` flag.
#[derive(Debug, Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Envelope shared by all subcommands: command echo, canonical input
/// echo, digest over inputs (and input file bytes when a file is
/// read), tool version, and the command-specific results.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub inputs: String,
    pub inputs_digest: String,
    pub version: &'static str,
    pub results: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, inputs: String, file_bytes: Option<&[u8]>, results: T) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(inputs.as_bytes());
        if let Some(bytes) = file_bytes {
            hasher.update(bytes);
        }
        let mut hex = String::with_capacity(64);
        for byte in hasher.finalize() {
            use std::fmt::Write;
            write!(hex, "{byte:02x}").expect("writing to a string cannot fail");
        }
        Report {
            command,
            inputs,
            inputs_digest: format!("sha256:{hex}"),
            version: env!("CARGO_PKG_VERSION"),
            results,
        }
    }

    /// Renders the document: JSON serializes the envelope as-is, text
    /// wraps the caller-supplied body in the shared header and footer.
    pub fn render(&self, format: Format, body: &[String]) -> String {
        match format {
            Format::Json => {
                let mut out =
                    serde_json::to_string_pretty(self).expect("report serialization cannot fail");
                out.push('\n');
                out
            }
            Format::Text => {
                let mut out = String::new();
                push_kv(&mut out, "command", self.command);
                for line in body {
                    out.push_str(line);
                    out.push('\n');
                }
                push_kv(&mut out, "inputs digest", &self.inputs_digest);
                push_kv(&mut out, "version", self.version);
                out
            }
        }
    }
}

fn push_kv(out: &mut String, key: &str, value: &str) {
    out.push_str(&kv(key, value));
    out.push('\n');
}

/// One aligned `key value` line for text bodies.
pub fn kv(key: &str, value: impl std::fmt::Display) -> String {
    format!("{key:<18}{value}")
}

#[derive(Serialize)]
pub struct ExactResults {
    pub degree: u32,
    pub population: u64,
    pub convention: String,
    pub gini_fraction: String,
    pub gini_decimal: f64,
}

#[derive(Serialize)]
pub struct ModelResults {
    pub degree: f64,
    pub population: usize,
    pub convention: String,
    pub gini: f64,
    pub asymptotic_gini: f64,
}

#[derive(Serialize)]
pub struct MatchRow {
    pub kind: String,
    pub shape: f64,
    pub variance_finite: bool,
}

#[derive(Serialize)]
pub struct DatasetNote {
    pub name: String,
    pub note: String,
}

#[derive(Serialize)]
pub struct GraduateResults {
    pub gini: f64,
    pub degree: f64,
    pub classification: String,
    pub bracket: String,
    pub round_trip_gini: f64,
    pub exact_fraction: Option<String>,
    pub matches: Vec<MatchRow>,
    pub dataset_note: Option<DatasetNote>,
}

#[derive(Serialize)]
pub struct SampleGiniResults {
    pub file: String,
    pub n: usize,
    pub mean: f64,
    pub mean_difference: f64,
    pub gini_sample: f64,
    pub gini_population: f64,
    pub lorenz_points: Option<usize>,
    pub lorenz_out: Option<String>,
}

#[derive(Serialize)]
pub struct GroupedResults {
    pub file: String,
    pub bins: usize,
    pub total_count: u64,
    pub gini_lower: f64,
    pub gini_upper: f64,
    /// Graduated degree of the lower bound; None when the bound
    /// reaches 1 and the degree is unbounded.
    pub degree_lower: Option<f64>,
    pub degree_upper: Option<f64>,
}

#[derive(Serialize)]
pub struct CountryRow {
    pub name: String,
    pub gini: f64,
    pub year: Option<u16>,
    pub degree: f64,
    pub classification: String,
    pub note: String,
}

#[derive(Serialize)]
pub struct CountriesResults {
    pub rows: Vec<CountryRow>,
}

#[derive(Serialize)]
pub struct TableRow {
    pub degree: u32,
    pub fraction: String,
    pub decimal: f64,
}

#[derive(Serialize)]
pub struct TableResults {
    pub rows: Vec<TableRow>,
}

#[derive(Serialize)]
pub struct MatchResults {
    pub kind: String,
    pub gini: f64,
    pub shape: f64,
    pub scale: f64,
    pub m_equivalent: f64,
    pub variance_finite: bool,
}

#[derive(Serialize)]
pub struct SimulateResults {
    pub kind: String,
    pub shape: f64,
    pub scale: f64,
    pub count: usize,
    pub seed: u64,
    pub convention: String,
    pub gini_closed: f64,
    pub gini_empirical: f64,
    pub gap: f64,
}
