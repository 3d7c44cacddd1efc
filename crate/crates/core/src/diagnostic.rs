//! Validation findings with stable codes and source locations.

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::model::SourceRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Stable, machine-readable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    IoError,
    ParseError,
    EmptyFile,
    BadRecord,
    MissingRequired,
    BadType,
    InvalidName,
    DuplicateField,
    UnknownField,
    InapplicableField,
    BadValue,
    BadDate,
    BadAccess,
    BadDependency,
    SelfDep,
    UnannotatedBasic,
    DupId,
    StubDep,
    DupDep,
    StubNameConflict,
    Cycle,
}

impl Code {
    pub const fn as_str(self) -> &'static str {
        match self {
            Code::IoError => "IO_ERROR",
            Code::ParseError => "PARSE_ERROR",
            Code::EmptyFile => "EMPTY_FILE",
            Code::BadRecord => "BAD_RECORD",
            Code::MissingRequired => "MISSING_REQUIRED",
            Code::BadType => "BAD_TYPE",
            Code::InvalidName => "INVALID_NAME",
            Code::DuplicateField => "DUPLICATE_FIELD",
            Code::UnknownField => "UNKNOWN_FIELD",
            Code::InapplicableField => "INAPPLICABLE_FIELD",
            Code::BadValue => "BAD_VALUE",
            Code::BadDate => "BAD_DATE",
            Code::BadAccess => "BAD_ACCESS",
            Code::BadDependency => "BAD_DEPENDENCY",
            Code::SelfDep => "SELF_DEP",
            Code::UnannotatedBasic => "UNANNOTATED_BASIC",
            Code::DupId => "DUP_ID",
            Code::StubDep => "STUB_DEP",
            Code::DupDep => "DUP_DEP",
            Code::StubNameConflict => "STUB_NAME_CONFLICT",
            Code::Cycle => "CYCLE",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Location {
    pub file: PathBuf,
    /// Zero-based record index; `None` for file-level findings.
    pub record: Option<usize>,
    pub field: Option<String>,
    /// One-based line, when known.
    pub line: Option<usize>,
}

impl Location {
    pub fn file(file: impl Into<PathBuf>) -> Location {
        Location { file: file.into(), record: None, field: None, line: None }
    }

    pub fn record(source: &SourceRef) -> Location {
        Location {
            file: source.file.clone(),
            record: Some(source.record),
            field: None,
            line: source.line,
        }
    }

    pub fn with_field(mut self, field: impl Into<String>) -> Location {
        self.field = Some(field.into());
        self
    }

    pub fn at_line(mut self, line: Option<usize>) -> Location {
        if line.is_some() {
            self.line = line;
        }
        self
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file.display())?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(record) = self.record {
            write!(f, " record {record}")?;
        }
        if let Some(field) = &self.field {
            write!(f, " field `{field}`")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub location: Location,
}

impl Diagnostic {
    pub fn error(code: Code, location: Location, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Error, code, message: message.into(), location }
    }

    pub fn warning(code: Code, location: Location, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Warning, code, message: message.into(), location }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}: {}", self.severity, self.code, self.location, self.message)
    }
}
