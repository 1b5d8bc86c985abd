//! Report envelope, input loading and output writing.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in `{path}`: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CertificationFailed,
}

/// Every JSON report: what ran, with which configuration and seed, and the
/// result. No timestamps, so identical runs give identical bytes.
#[derive(Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub config: &'a C,
    pub status: Status,
    pub result: R,
}

impl<'a, C: Serialize, R: Serialize> Report<'a, C, R> {
    pub fn new(command: &'a str, seed: u64, config: &'a C, ok: bool, result: R) -> Self {
        Report {
            tool: "pqmaps",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            config,
            status: if ok { Status::Ok } else { Status::CertificationFailed },
            result,
        }
    }

    /// Write to `out` (stdout when absent) and return whether the run
    /// certified.
    pub fn emit(&self, out: Option<&str>) -> CliResult<bool> {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        write_text(out, &text)?;
        Ok(self.status == Status::Ok)
    }
}

pub fn read_text(path: &str) -> CliResult<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Read { path: path.to_string(), source })?;
    Ok(text)
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_string(), source })
}

pub fn write_text(out: Option<&str>, text: &str) -> CliResult<()> {
    match out {
        None | Some("-") => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Write { path: "<stdout>".to_string(), source })
        }
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_string(), source }),
    }
}
