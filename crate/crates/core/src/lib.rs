//! Detection of symmetric-encryption API misuse in code snippets, plus the
//! corpus tooling used to mine and tally misuses in Q&A data dumps.

pub mod corpus;
pub mod engine;
pub mod error;
pub mod extractor;
pub mod report;
pub mod resolver;
pub mod ruleset;
pub mod syntax;

pub use engine::{
    parse_transformation, CipherSite, Finding, KeySizeSite, Mode, ModeCategory, ScanOptions, Scanner, Span,
    Status, TextScan, Transformation,
};
pub use extractor::{Origin, Section, Snippet, SourceText};
pub use ruleset::{builtin_ruleset, Rule, RuleSet, Severity};
pub use report::{cohen_kappa, render, ReportFormat, ViolationReport};
