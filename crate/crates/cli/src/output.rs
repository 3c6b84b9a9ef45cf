use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Plane(#[from] pgrowth::plane::PlaneError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub fn config<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(msg.into()))
}

/// A finished command: its complete output, the exit status it asks for, and
/// optional diagnostics for standard error.
pub struct Output {
    pub body: String,
    pub status: u8,
    pub diagnostics: Option<String>,
}

impl Output {
    pub fn new(body: String, status: u8) -> Self {
        Output {
            body,
            status,
            diagnostics: None,
        }
    }

    pub fn json<T: serde::Serialize>(value: &T, status: u8) -> Self {
        let mut body = serde_json::to_string_pretty(value).expect("report serializes");
        body.push('\n');
        Output::new(body, status)
    }

    pub fn emit(self, path: Option<&Path>) -> Result<u8, CliError> {
        match path {
            Some(p) => std::fs::write(p, &self.body)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(self.body.as_bytes())?;
                stdout.flush()?;
            }
        }
        if let Some(d) = self.diagnostics {
            eprint!("{d}");
        }
        Ok(self.status)
    }
}

pub fn csv_unsupported<T>(command: &str) -> Result<T, CliError> {
    config(format!("--format csv is not available for `{command}`"))
}

/// Space-separated ids, for text output.
pub fn id_list<T: std::fmt::Display>(ids: &[T]) -> String {
    ids.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
