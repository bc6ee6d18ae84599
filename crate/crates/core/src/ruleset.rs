//! Rule catalog for symmetric-encryption misuse.
//!
//! The builtin catalog holds thirteen rules grouped by the stage of the
//! cipher lifecycle they target. Patterns run over entity-unescaped code, so
//! no rule carries `&quot;` alternatives; the extractor normalizes once.
//!
//! Identifier keywords (`key`, `secret`, `salt`, `pass`, `password`, `iv`,
//! `initvector`, `initializationvector`) match case-insensitively as the tail
//! of an identifier, optionally followed by digits: `SALT2`, `encKey` and
//! `aesIv` all qualify.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

pub const BUILTIN_VERSION: &str = "symcrypt-13/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    CipherInstantiation,
    KeyInitialization,
    IvInitialization,
    ParameterTransmission,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Insecure,
    BadPractice,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Insecure => "insecure",
            Severity::BadPractice => "bad_practice",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "insecure" => Some(Severity::Insecure),
            "bad_practice" => Some(Severity::BadPractice),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a pattern match is a violation by itself or needs its values
/// checked before it counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionMode {
    Automatic,
    Candidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfirmKind {
    None,
    SaltLength,
    IterationCount,
    RandomSource,
    KeystorePassword,
    ConstantValue,
}

/// How the engine locates sites for a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Patterns are matched directly against snippet text.
    Pattern,
    /// `Cipher.getInstance` sites are parsed into a transformation and the
    /// rule decides on algorithm and mode. Patterns are the fallback for
    /// transformation strings that fail to parse.
    Transformation(TransformCheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformCheck {
    /// Algorithm is one of DES, DESede, RC2, RC4, RC5, Blowfish, ChaCha20.
    WeakAlgorithm,
    /// Listed block/stream algorithm in ECB, explicit or by default.
    EcbMode,
    /// Listed block/stream algorithm in CBC.
    CbcMode,
}

/// Severity attached to one alternative of a rule's pattern, e.g. `DESede`
/// inside the weak-algorithm rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltSeverity {
    /// Matched case-insensitively against the matched text (pattern rules)
    /// or equal to the normalized algorithm (transformation rules).
    pub needle: String,
    pub severity: Severity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    pub cwe_ids: Vec<u32>,
    pub stage: Stage,
    pub severity: Severity,
    pub alt_severities: Vec<AltSeverity>,
    pub detection_mode: DetectionMode,
    pub route: Route,
    pub patterns: Vec<String>,
    pub confirm_kind: ConfirmKind,
    pub description: String,
    pub enabled: bool,
}

impl Rule {
    /// Severity for a match whose matched text (or algorithm) is `matched`.
    pub fn severity_for(&self, matched: &str) -> Severity {
        let lower = matched.to_ascii_lowercase();
        for alt in &self.alt_severities {
            let needle = alt.needle.to_ascii_lowercase();
            let hit = match self.route {
                Route::Transformation(_) => lower == needle || lower.contains(&format!("\"{needle}")),
                Route::Pattern => lower.contains(&needle),
            };
            if hit {
                return alt.severity;
            }
        }
        self.severity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    pub version: String,
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn active(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.enabled)
    }

    pub fn active_count(&self) -> usize {
        self.active().count()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.rules.iter().map(|r| r.id.as_str()).collect()
    }
}

/// Tail-of-identifier keyword prefix: `\b[\w$]*(?:kw1|kw2)\d*`.
fn ident_ending(keywords: &str) -> String {
    format!(r"\b[\w$]*(?i:{keywords})\d*")
}

const ALGS_WEAK: &str = "DESede|DES|RC2|RC4|RC5|Blowfish|chacha20";
const ALGS_BLOCK: &str = "AES|DESede|DES|RC2|RC4|RC5|Blowfish|chacha20";
const LIT_OPEN: &str = r#"(?:"|\{|new\s+byte\s*\[\s*\]\s*\{)"#;

#[allow(clippy::too_many_arguments)]
fn rule(
    id: &str,
    cwe_ids: &[u32],
    stage: Stage,
    severity: Severity,
    detection_mode: DetectionMode,
    route: Route,
    patterns: Vec<String>,
    confirm_kind: ConfirmKind,
    description: &str,
) -> Rule {
    Rule {
        id: id.to_string(),
        cwe_ids: cwe_ids.to_vec(),
        stage,
        severity,
        alt_severities: Vec::new(),
        detection_mode,
        route,
        patterns,
        confirm_kind,
        description: description.to_string(),
        enabled: true,
    }
}

/// The thirteen-rule builtin catalog, in canonical order.
pub fn builtin_ruleset() -> RuleSet {
    use ConfirmKind as C;
    use DetectionMode::{Automatic, Candidate};
    use Severity::{BadPractice, Insecure};
    use Stage::*;

    let mut r01 = rule(
        "R-01",
        &[327],
        CipherInstantiation,
        Insecure,
        Automatic,
        Route::Transformation(TransformCheck::WeakAlgorithm),
        vec![format!(r#"Cipher\.getInstance\(\s*"(?i:{ALGS_WEAK})"#)],
        C::None,
        "Using weak algorithm",
    );
    r01.alt_severities.push(AltSeverity { needle: "DESede".into(), severity: BadPractice });

    let r02a = rule(
        "R-02-a",
        &[327],
        CipherInstantiation,
        Insecure,
        Automatic,
        Route::Transformation(TransformCheck::EcbMode),
        vec![format!(r#"Cipher\.getInstance\(\s*"(?i:{ALGS_BLOCK})(?i:/ECB(?:/[^"\n]*)?)?""#)],
        C::None,
        "Using ECB encryption mode (explicit or provider default)",
    );

    let r02b = rule(
        "R-02-b",
        &[327],
        CipherInstantiation,
        BadPractice,
        Automatic,
        Route::Transformation(TransformCheck::CbcMode),
        vec![format!(r#"Cipher\.getInstance\(\s*"(?i:{ALGS_BLOCK})(?i:/CBC)"#)],
        C::None,
        "Using CBC encryption mode",
    );

    let r03a = rule(
        "R-03-a",
        &[798],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            format!(r"{}\s*=\s*{LIT_OPEN}", ident_ending("key|secret")),
            r#"SecretKeySpec\(\s*""#.to_string(),
        ],
        C::ConstantValue,
        "Using static or constant key",
    );

    let r03b = rule(
        "R-03-b",
        &[330],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            r#"PBEKeySpec\(\s*[^,;\n]+,\s*"[^"\n]+"\s*,\s*[^,;\n]+"#.to_string(),
            r#"PBEParameterSpec\(\s*""#.to_string(),
            format!(r"{}\s*=\s*{LIT_OPEN}", ident_ending("salt")),
        ],
        C::ConstantValue,
        "Using static salt for key derivation",
    );

    let r03c = rule(
        "R-03-c",
        &[326, 330],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            format!(r"{}\s*=[^=]", ident_ending("salt")),
            r"PBEKeySpec\(".to_string(),
            r"PBEParameterSpec\(".to_string(),
        ],
        C::SaltLength,
        "Using a salt shorter than 64 bits for key derivation",
    );

    let r03d = rule(
        "R-03-d",
        &[326, 330],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            r"PBEKeySpec\(\s*[^,;\n]+,\s*[^,;\n]+,\s*[1-9]\d{0,2}\b".to_string(),
            r"PBEParameterSpec\(\s*[^,;\n]+,\s*[1-9]\d{0,2}\b".to_string(),
            format!(r"{}\s*=[^=]", ident_ending("salt")),
        ],
        C::IterationCount,
        "Using fewer than 1000 iterations for key derivation",
    );

    let r03e = rule(
        "R-03-e",
        &[259],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            format!(r#"{}\s*=\s*""#, ident_ending("password|pass")),
            r#"PBEKeySpec\(\s*""#.to_string(),
        ],
        C::ConstantValue,
        "Using hard-coded password",
    );

    let r03f = rule(
        "R-03-f",
        &[330],
        KeyInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![r"\b[\w$]*(?i:kgenerator|key)[\w$]*\.init\(\s*\d+\s*,\s*[\w$]+\s*\)".to_string()],
        C::RandomSource,
        "Using weak random function for generating secret key",
    );

    let mut r03g = rule(
        "R-03-g",
        &[327],
        KeyInitialization,
        Insecure,
        Automatic,
        Route::Pattern,
        vec![
            r#"SecretKeyFactory\.getInstance\(\s*"(?:PBEWithMD5AndDES|PBKDF2WithHmacSHA1)""#.to_string(),
            r#"MessageDigest\.getInstance\(\s*"SHA-1"[^\n]*\n*[^\n]*\n*[^\n]*\.digest\((?i:key)"#
                .to_string(),
        ],
        C::None,
        "Using weak algorithms for generating secret key",
    );
    r03g.alt_severities.push(AltSeverity {
        needle: "PBKDF2WithHmacSHA1".into(),
        severity: BadPractice,
    });

    let r04a = rule(
        "R-04-a",
        &[330],
        IvInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![
            format!(
                r"{}\s*=\s*{LIT_OPEN}",
                ident_ending("initializationvector|initvector|iv")
            ),
            format!(r"IvParameterSpec\(\s*{LIT_OPEN}"),
        ],
        C::ConstantValue,
        "Using static IV",
    );

    let r04b = rule(
        "R-04-b",
        &[330],
        IvInitialization,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![r"IvParameterSpec\(\s*[A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*(?:\([^)\n]*\))?\s*[,)]"
            .to_string()],
        C::ConstantValue,
        "Using a badly-derived IV",
    );

    let r05 = rule(
        "R-05",
        &[798],
        ParameterTransmission,
        Insecure,
        Candidate,
        Route::Pattern,
        vec![r"\b[\w$]*(?i:keystore|truststore|ks)\d*\.load\(".to_string()],
        C::KeystorePassword,
        "Loading a keystore with a constant non-null password",
    );

    RuleSet {
        version: BUILTIN_VERSION.to_string(),
        rules: vec![r01, r02a, r02b, r03a, r03b, r03c, r03d, r03e, r03f, r03g, r04a, r04b, r05],
    }
}

/// Per-rule settings read from an override document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub enabled: BTreeMap<String, bool>,
    pub severity: BTreeMap<String, Severity>,
}

impl Overrides {
    /// Parses the flat `key: value` override format:
    ///
    /// ```text
    /// # comment
    /// R-02-b: disabled
    /// R-01.severity: insecure
    /// ```
    pub fn parse(doc: &str) -> Result<Self, ConfigError> {
        let mut out = Overrides::default();
        for (idx, raw) in doc.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("expected `key: value`, found `{line}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if let Some(id) = key.strip_suffix(".severity") {
                let sev = Severity::parse(value).ok_or_else(|| ConfigError::Parse {
                    line: line_no,
                    message: format!("unknown severity `{value}`"),
                })?;
                out.severity.insert(id.to_string(), sev);
            } else {
                let on = match value {
                    "enabled" => true,
                    "disabled" => false,
                    _ => {
                        return Err(ConfigError::Parse {
                            line: line_no,
                            message: format!("expected enabled|disabled for `{key}`, found `{value}`"),
                        })
                    }
                };
                out.enabled.insert(key.to_string(), on);
            }
        }
        Ok(out)
    }
}

/// Applies enable/disable and severity overrides to a copy of `base`.
///
/// A severity override replaces the rule severity and drops any
/// per-alternative severities, so every alternative reports the new value.
pub fn apply_overrides(base: &RuleSet, config: &Overrides) -> Result<RuleSet, ConfigError> {
    for id in config.enabled.keys().chain(config.severity.keys()) {
        if base.get(id).is_none() {
            return Err(ConfigError::UnknownRule(id.clone()));
        }
    }
    let mut out = base.clone();
    for rule in &mut out.rules {
        if let Some(&on) = config.enabled.get(&rule.id) {
            rule.enabled = on;
        }
        if let Some(&sev) = config.severity.get(&rule.id) {
            rule.severity = sev;
            rule.alt_severities.clear();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule_id: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule_id, self.message)
    }
}

/// Checks catalog invariants and pattern compilation. An empty result means
/// the ruleset is usable by the engine.
pub fn validate_ruleset(rs: &RuleSet) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if rs.rules.is_empty() {
        diags.push(Diagnostic { rule_id: String::new(), message: "ruleset is empty".into() });
    }
    let mut seen = HashSet::new();
    for rule in &rs.rules {
        let mut push = |message: String| {
            diags.push(Diagnostic { rule_id: rule.id.clone(), message });
        };
        if !seen.insert(rule.id.as_str()) {
            push(format!("duplicate rule id {}", rule.id));
        }
        if rule.cwe_ids.is_empty() {
            push("rule has no CWE id".into());
        }
        if rule.patterns.is_empty() {
            push("rule has no pattern".into());
        }
        if rule.detection_mode == DetectionMode::Automatic && rule.confirm_kind != ConfirmKind::None {
            push("automatic rule must not require confirmation".into());
        }
        if rule.detection_mode == DetectionMode::Candidate && rule.confirm_kind == ConfirmKind::None {
            push("candidate rule needs a confirmation kind".into());
        }
        for pat in &rule.patterns {
            if let Err(e) = Regex::new(pat) {
                push(format!("pattern `{pat}` does not compile: {e}"));
            }
        }
    }
    diags
}
