use serde::Deserialize;

use symlint_core::{Finding, Scanner, ScanOptions, SourceText, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Confirmed,
    Dismissed,
    Absent,
}

impl Label {
    pub fn is_violation(self) -> bool {
        self == Label::Confirmed
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Case {
    pub id: String,
    pub rule: String,
    pub label: Label,
    pub text: String,
}

#[derive(Debug, Deserialize)]
struct File {
    case: Vec<Case>,
}

pub fn rule_cases() -> Vec<Case> {
    let text = include_str!("../fixtures/rules.toml");
    toml::from_str::<File>(text).expect("fixture file parses").case
}

/// Outcome of one rule on one text, in the fixture's vocabulary. A rule that
/// only produced needs_review findings has no fixture label.
pub fn outcome(findings: &[Finding], rule: &str) -> Option<Label> {
    let of_rule: Vec<&Finding> = findings.iter().filter(|f| f.rule_id == rule).collect();
    if of_rule.is_empty() {
        Some(Label::Absent)
    } else if of_rule.iter().any(|f| f.status == Status::Confirmed) {
        Some(Label::Confirmed)
    } else if of_rule.iter().all(|f| f.status == Status::Dismissed) {
        Some(Label::Dismissed)
    } else {
        None
    }
}

pub fn scan_case(scanner: &Scanner, case: &Case) -> Vec<Finding> {
    scanner.scan_text(&SourceText::plain(case.text.clone(), case.id.clone()), ScanOptions::default()).findings
}
