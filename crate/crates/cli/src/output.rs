use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use procore::CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or malformed values: exit 2.
    Usage(String),
    /// A requested check did not pass: exit 1.
    Check(String),
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidArgument(m) | CoreError::InvalidLayout(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Check(_) => "check-failed",
            CliError::Core(e) => match e {
                CoreError::SizeLimit { .. } => "size-limit",
                CoreError::Precondition(_) => "precondition",
                CoreError::Unsupported(_) => "unsupported",
                CoreError::ReconstructionInfeasible(_) => "reconstruction-infeasible",
                CoreError::IllConditioned { .. } => "ill-conditioned",
                CoreError::InsufficientData { .. } => "insufficient-data",
                CoreError::Io(_) => "io",
                CoreError::Json(_) => "json",
                CoreError::Csv(_) => "csv",
                _ => "invalid-argument",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Check(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// First paragraph of a clap message, joined onto one line, without the
/// leading `error:`.
pub fn first_line(text: &str) -> String {
    let para: Vec<&str> = text
        .lines()
        .skip_while(|l| l.trim().is_empty())
        .take_while(|l| !l.trim().is_empty())
        .map(str::trim)
        .collect();
    let line = para.join(" ");
    let line = line.trim_start_matches("error:").trim();
    if line.is_empty() {
        "invalid arguments".to_string()
    } else {
        line.to_string()
    }
}

/// Prints `error[<category>]: <message>` on one line and returns the exit code.
pub fn fail(e: &CliError) -> ExitCode {
    let msg = e.message().split_whitespace().collect::<Vec<_>>().join(" ");
    eprintln!("error[{}]: {}", e.category(), msg);
    ExitCode::from(e.code())
}

/// An output path checked for writability before any work is done.
pub struct OutputFile {
    path: PathBuf,
    created: bool,
    written: bool,
}

impl OutputFile {
    pub fn prepare(path: &Path) -> Result<Self, CliError> {
        let existed = path.exists();
        OpenOptions::new()
            .append(true)
            .create(true)
            .open(path)
            .map_err(|e| CliError::Core(CoreError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))))?;
        Ok(OutputFile {
            path: path.to_path_buf(),
            created: !existed,
            written: false,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn is_csv(&self) -> bool {
        self.path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    }

    pub fn write(mut self, contents: &[u8]) -> Result<(), CliError> {
        fs::write(&self.path, contents)?;
        self.written = true;
        Ok(())
    }
}

impl Drop for OutputFile {
    fn drop(&mut self) {
        if self.created && !self.written {
            let _ = fs::remove_file(&self.path);
        }
    }
}

pub fn prepare(path: Option<&PathBuf>) -> Result<Option<OutputFile>, CliError> {
    path.map(|p| OutputFile::prepare(p)).transpose()
}

/// Scientific notation with 17 significant digits, as in JSON artifacts.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Short form for console summaries.
pub fn short(x: f64) -> String {
    format!("{x:.3e}")
}
