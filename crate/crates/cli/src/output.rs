use std::io::Write;
use std::path::Path;

use checker_core::Error;

use crate::Global;

/// Failure categories, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Io,
    Schema,
    Budget,
    Invariant,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub message: String,
}

impl Failure {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
        }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Self::new(Kind::Schema, message)
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Self::new(Kind::Invariant, message)
    }

    pub fn code(&self) -> u8 {
        match self.kind {
            Kind::Io => 1,
            Kind::Schema => 2,
            Kind::Budget => 3,
            Kind::Invariant => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BudgetExceeded { .. } => Kind::Budget,
            Error::Unstable { .. }
            | Error::InvalidEulerCharacteristic(_)
            | Error::MalformedComplex(_)
            | Error::NotInvariant(_) => Kind::Invariant,
            _ => Kind::Schema,
        };
        let prefix = match kind {
            Kind::Budget => "budget exceeded",
            Kind::Invariant => "invariant violated",
            _ => "invalid input",
        };
        Failure::new(kind, format!("{prefix}: {e}"))
    }
}

pub type Outcome<T> = Result<T, Failure>;

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(Kind::Io, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes to `--output` through a temporary file in the same directory, or
/// to stdout.
pub fn emit(global: &Global, text: &str) -> Outcome<()> {
    let io = |e: std::io::Error| Failure::new(Kind::Io, format!("cannot write output: {e}"));
    match &global.output {
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(io)?;
            out.flush().map_err(io)
        }
    }
}
