use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::json;

use crate::commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogFormat {
    Text,
    Json,
}

pub struct Log {
    format: LogFormat,
}

impl Log {
    pub fn new(format: LogFormat) -> Self {
        Log { format }
    }

    fn emit(&self, line: String) {
        let _ = writeln!(std::io::stderr().lock(), "{line}");
    }

    pub fn warn(&self, code: &str, message: &str) {
        self.emit(match self.format {
            LogFormat::Text => format!("WARN {code}: {message}"),
            LogFormat::Json => json!({"level": "warn", "code": code, "message": message}).to_string(),
        });
    }

    pub fn error(&self, err: &CliError) {
        self.emit(match self.format {
            LogFormat::Text => format!("ERROR {}: {err}", err.kind()),
            LogFormat::Json => json!({"level": "error", "code": err.kind(), "message": err.to_string(), "exitCode": err.code()}).to_string(),
        });
    }
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let internal = |e: std::io::Error| CliError::Internal(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(internal)?;
    tmp.write_all(contents.as_bytes()).map_err(internal)?;
    tmp.as_file().sync_all().map_err(internal)?;
    tmp.persist(path).map_err(|e| internal(e.error))?;
    Ok(())
}
