use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown rule id {0}")]
    UnknownRule(String),
    #[error("override config line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformationError {
    #[error("empty transformation string")]
    Empty,
    #[error("transformation `{0}` has more than three segments")]
    TooManySegments(String),
    #[error("transformation `{0}` has an empty segment")]
    EmptySegment(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfirmError {
    #[error("rule {0} is automatic and cannot be confirmed")]
    AutomaticRule(String),
    #[error("rule {0} is not in the ruleset")]
    UnknownRule(String),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error reading dump: {0}")]
    Io(#[from] std::io::Error),
    #[error("dump truncated after row {rows}: {message}")]
    Truncated { rows: u64, message: String },
    #[error("sample size {requested} exceeds corpus size {available}")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("finding from source {0} has no matching bundle")]
    OrphanFinding(String),
    #[error("unknown report format `{0}` (expected json, csv or markdown)")]
    UnknownFormat(String),
    #[error("label sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("label sequences are empty")]
    EmptyLabels,
}
