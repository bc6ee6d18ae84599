//! Pattern matching and finding emission.
//!
//! `Cipher.getInstance` sites are handled separately from the other rules:
//! the argument (a literal, or an identifier the resolver can bind to one)
//! is parsed into a [`Transformation`] and the weak-algorithm, ECB and CBC
//! rules decide on its parts. A bare algorithm means the provider default,
//! ECB. Only when the string does not parse do those rules fall back to
//! their raw patterns.

use std::fmt;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::TransformationError;
use crate::extractor::{extract, ExtractDiagnostic, ExtractOptions, Section, Snippet, SourceText};
use crate::resolver::{collect_bindings, confirm, BindingEnv, ConfirmOptions, Value};
use crate::ruleset::{
    validate_ruleset, DetectionMode, Diagnostic, Route, Rule, RuleSet, Severity, TransformCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "name", rename_all = "snake_case")]
pub enum Mode {
    Explicit(String),
    DefaultEcb,
}

/// Coarse mode buckets used for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeCategory {
    Ecb,
    Cbc,
    Gcm,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transformation {
    pub algorithm: String,
    pub mode: Mode,
    pub padding: Option<String>,
}

impl Transformation {
    /// Algorithm with key-size suffixes dropped: `AES_256` → `AES`.
    pub fn family(&self) -> &str {
        match self.algorithm.rsplit_once('_') {
            Some((base, bits)) if !base.is_empty() && bits.bytes().all(|b| b.is_ascii_digit()) => base,
            _ => &self.algorithm,
        }
    }

    pub fn mode_category(&self) -> ModeCategory {
        match &self.mode {
            Mode::DefaultEcb => ModeCategory::Ecb,
            Mode::Explicit(m) => match m.to_ascii_uppercase().as_str() {
                "ECB" => ModeCategory::Ecb,
                "CBC" => ModeCategory::Cbc,
                "GCM" => ModeCategory::Gcm,
                _ => ModeCategory::Other,
            },
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algorithm)?;
        if let Mode::Explicit(m) = &self.mode {
            write!(f, "/{m}")?;
        }
        if let Some(p) = &self.padding {
            write!(f, "/{p}")?;
        }
        Ok(())
    }
}

/// Splits `alg[/mode[/padding]]`. The algorithm is upper-cased; mode and
/// padding keep their spelling.
pub fn parse_transformation(s: &str) -> Result<Transformation, TransformationError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(TransformationError::Empty);
    }
    let parts: Vec<&str> = s.split('/').map(str::trim).collect();
    if parts.len() > 3 {
        return Err(TransformationError::TooManySegments(s.to_string()));
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err(TransformationError::EmptySegment(s.to_string()));
    }
    Ok(Transformation {
        algorithm: parts[0].to_ascii_uppercase(),
        mode: parts.get(1).map_or(Mode::DefaultEcb, |m| Mode::Explicit(m.to_string())),
        padding: parts.get(2).map(|p| p.to_string()),
    })
}

const WEAK_ALGORITHMS: [&str; 7] = ["DES", "DESEDE", "RC2", "RC4", "RC5", "BLOWFISH", "CHACHA20"];
const MODE_RULE_ALGORITHMS: [&str; 8] =
    ["AES", "DES", "DESEDE", "RC2", "RC4", "RC5", "BLOWFISH", "CHACHA20"];

fn check_fires(check: TransformCheck, t: &Transformation) -> bool {
    let family = t.family();
    match check {
        TransformCheck::WeakAlgorithm => WEAK_ALGORITHMS.contains(&family),
        TransformCheck::EcbMode => {
            MODE_RULE_ALGORITHMS.contains(&family) && t.mode_category() == ModeCategory::Ecb
        }
        TransformCheck::CbcMode => {
            MODE_RULE_ALGORITHMS.contains(&family) && t.mode_category() == ModeCategory::Cbc
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    NeedsReview,
    Dismissed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::NeedsReview => "needs_review",
            Status::Dismissed => "dismissed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule_id: String,
    pub severity: Severity,
    pub status: Status,
    pub source_id: String,
    pub section: Section,
    pub snippet_index: usize,
    pub span: Span,
    pub line: usize,
    pub column: usize,
    pub matched_text: String,
    pub evidence: String,
}

/// One `Cipher.getInstance` call whose transformation was recovered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CipherSite {
    pub source_id: String,
    pub section: Section,
    pub snippet_index: usize,
    pub offset: usize,
    pub transformation: Transformation,
}

/// Key size observed at a `KeyGenerator.init(bits, …)` call or a
/// `key = new byte[N]` allocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeySizeSite {
    pub source_id: String,
    pub section: Section,
    pub bits: u64,
}

static CIPHER_SITE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r#"Cipher\.getInstance\(\s*(?:"((?:[^"\\\n]|\\.)*)"|([A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*)\s*[,)])"#,
    )
    .unwrap()
});
static KEYGEN_INIT: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b([A-Za-z_$][\w$]*)\.init\(\s*([\w$]+)\s*[,)]").unwrap());
static KEYGEN_NAME: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^[\w$]*(?:kgenerator|keygen[\w$]*)$").unwrap());
static KEYGEN_VAR: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?:KeyGenerator\s+([A-Za-z_$][\w$]*)\s*=|\b([A-Za-z_$][\w$]*)\s*=\s*KeyGenerator\.getInstance\()").unwrap()
});
static KEY_ALLOC: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)\b[\w$]*key\d*\s*=\s*new\s+byte\s*\[\s*(\d+)\s*\]").unwrap()
});

/// Case-insensitive tokens at least one of which occurs in any text that
/// some builtin pattern can match.
pub const FAST_PATH_TOKENS: [&str; 15] = [
    "cipher", "key", "pbe", "salt", "password", "pass", "iv", "secretkey", "messagedigest",
    "keystore", "kgenerator", "secret", "vector", "store", "ks",
];

pub fn may_contain_findings(text: &str) -> bool {
    let lower = text.to_ascii_lowercase();
    FAST_PATH_TOKENS.iter().any(|t| lower.contains(t))
}

struct CompiledRule {
    rule: Rule,
    patterns: Vec<Regex>,
}

/// A validated ruleset with compiled patterns. Immutable; share freely
/// across threads.
pub struct Scanner {
    ruleset: RuleSet,
    rules: Vec<CompiledRule>,
}

impl fmt::Debug for Scanner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scanner").field("version", &self.ruleset.version).finish()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SnippetScan {
    pub findings: Vec<Finding>,
    pub cipher_sites: Vec<CipherSite>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TextScan {
    pub findings: Vec<Finding>,
    pub cipher_sites: Vec<CipherSite>,
    pub key_sizes: Vec<KeySizeSite>,
    pub warnings: Vec<ExtractDiagnostic>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub confirm: ConfirmOptions,
    pub extract: ExtractOptions,
}

impl Scanner {
    pub fn new(ruleset: RuleSet) -> Result<Self, Vec<Diagnostic>> {
        let diags = validate_ruleset(&ruleset);
        if !diags.is_empty() {
            return Err(diags);
        }
        let rules = ruleset
            .rules
            .iter()
            .map(|r| CompiledRule {
                rule: r.clone(),
                patterns: r.patterns.iter().map(|p| Regex::new(p).expect("validated")).collect(),
            })
            .collect();
        Ok(Scanner { ruleset, rules })
    }

    pub fn builtin() -> Self {
        Scanner::new(crate::ruleset::builtin_ruleset()).expect("builtin ruleset is valid")
    }

    pub fn ruleset(&self) -> &RuleSet {
        &self.ruleset
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.ruleset.get(id)
    }

    /// Raw, non-overlapping matches of one pattern, as `(start, end)`.
    pub fn pattern_spans(&self, rule_id: &str, pattern: usize, text: &str) -> Vec<(usize, usize)> {
        self.rules
            .iter()
            .find(|c| c.rule.id == rule_id)
            .and_then(|c| c.patterns.get(pattern))
            .map(|re| re.find_iter(text).map(|m| (m.start(), m.end())).collect())
            .unwrap_or_default()
    }

    /// Scans one snippet using only its own bindings. Candidate findings are
    /// left as `needs_review`.
    pub fn scan_snippet(&self, sn: &Snippet) -> Vec<Finding> {
        let env = collect_bindings(std::slice::from_ref(sn));
        self.scan_snippet_in(sn, &env).findings
    }

    /// Scans one snippet against a section environment. Candidate findings
    /// are left as `needs_review`.
    pub fn scan_snippet_in(&self, sn: &Snippet, env: &BindingEnv) -> SnippetScan {
        let mut out = SnippetScan::default();
        if !may_contain_findings(&sn.text) {
            return out;
        }
        let text = sn.text.as_str();
        let mut raw: Vec<(usize, Finding)> = Vec::new();
        let order = |id: &str| self.rules.iter().position(|c| c.rule.id == id).unwrap_or(usize::MAX);

        let mode_rules: Vec<&CompiledRule> = self
            .rules
            .iter()
            .filter(|c| c.rule.enabled && matches!(c.rule.route, Route::Transformation(_)))
            .collect();
        for caps in CIPHER_SITE.captures_iter(text) {
            let whole = caps.get(0).unwrap();
            let (arg, end) = match (caps.get(1), caps.get(2)) {
                (Some(lit), _) => (lit.as_str().to_string(), lit.end() + 1),
                (None, Some(id)) => match env.resolve(id.as_str()) {
                    Value::Str { value } => (value, id.end()),
                    _ => {
                        out.diagnostics.push(format!(
                            "skipped Cipher.getInstance site at byte {}: `{}` unresolved",
                            whole.start(),
                            id.as_str()
                        ));
                        continue;
                    }
                },
                _ => continue,
            };
            let span = Span { start: whole.start(), end };
            match parse_transformation(&arg) {
                Ok(t) => {
                    for c in &mode_rules {
                        let Route::Transformation(check) = c.rule.route else { continue };
                        if check_fires(check, &t) {
                            let mut f = self.finding(c, sn, span, t.family());
                            if t.family() == "CHACHA20" && check == TransformCheck::WeakAlgorithm {
                                f.evidence = "ChaCha20 is listed as weak in the catalog; \
                                              this classification is disputed"
                                    .into();
                            }
                            raw.push((order(&c.rule.id), f));
                        }
                    }
                    out.cipher_sites.push(CipherSite {
                        source_id: sn.source.source_id.clone(),
                        section: sn.source.section,
                        snippet_index: sn.index,
                        offset: whole.start(),
                        transformation: t,
                    });
                }
                Err(e) => {
                    out.diagnostics.push(format!("byte {}: {e}; using raw patterns", whole.start()));
                    for c in &mode_rules {
                        let hit = c.patterns.iter().find_map(|re| {
                            re.find_at(text, whole.start()).filter(|m| m.start() == whole.start())
                        });
                        if let Some(m) = hit {
                            let span = Span { start: m.start(), end: m.end() };
                            let f = self.finding(c, sn, span, m.as_str());
                            raw.push((order(&c.rule.id), f));
                        }
                    }
                }
            }
        }

        for (idx, c) in self.rules.iter().enumerate() {
            if !c.rule.enabled || c.rule.route != Route::Pattern {
                continue;
            }
            let mut spans: Vec<Span> = c
                .patterns
                .iter()
                .flat_map(|re| re.find_iter(text).map(|m| Span { start: m.start(), end: m.end() }))
                .collect();
            spans.sort();
            let mut merged: Vec<Span> = Vec::new();
            for s in spans {
                match merged.last_mut() {
                    Some(last) if s.start <= last.end => last.end = last.end.max(s.end),
                    _ => merged.push(s),
                }
            }
            for span in merged {
                let f = self.finding(c, sn, span, &text[span.start..span.end]);
                raw.push((idx, f));
            }
        }
        raw.sort_by_key(|(idx, f)| (f.span.start, *idx));
        out.findings = raw.into_iter().map(|(_, f)| f).collect();
        out
    }

    fn finding(&self, c: &CompiledRule, sn: &Snippet, span: Span, alternative: &str) -> Finding {
        let (line, column) = sn.line_col(span.start);
        Finding {
            rule_id: c.rule.id.clone(),
            severity: c.rule.severity_for(alternative),
            status: match c.rule.detection_mode {
                DetectionMode::Automatic => Status::Confirmed,
                DetectionMode::Candidate => Status::NeedsReview,
            },
            source_id: sn.source.source_id.clone(),
            section: sn.source.section,
            snippet_index: sn.index,
            span,
            line,
            column,
            matched_text: sn.text[span.start..span.end].to_string(),
            evidence: String::new(),
        }
    }

    /// Extracts, binds, scans and confirms one section of text.
    pub fn scan_text(&self, body: &SourceText, opts: ScanOptions) -> TextScan {
        let ex = extract(body, opts.extract);
        let env = collect_bindings(&ex.snippets);
        let mut out = TextScan { warnings: ex.diagnostics, ..Default::default() };
        for sn in &ex.snippets {
            let scan = self.scan_snippet_in(sn, &env);
            for f in scan.findings {
                let rule = self.rule(&f.rule_id).expect("finding from ruleset");
                if f.status == Status::NeedsReview && rule.detection_mode == DetectionMode::Candidate {
                    let settled = confirm(&f, rule, &env, sn, opts.confirm).expect("candidate rule");
                    out.findings.push(settled);
                } else {
                    out.findings.push(f);
                }
            }
            out.cipher_sites.extend(scan.cipher_sites);
            out.diagnostics.extend(scan.diagnostics);
            out.key_sizes.extend(key_sizes(sn, &env));
        }
        out
    }
}

fn key_sizes(sn: &Snippet, env: &BindingEnv) -> Vec<KeySizeSite> {
    let mut out = Vec::new();
    let site = |bits: u64| KeySizeSite {
        source_id: sn.source.source_id.clone(),
        section: sn.source.section,
        bits,
    };
    // Receivers named like a key generator, or declared as one.
    let declared: Vec<&str> = KEYGEN_VAR
        .captures_iter(&sn.text)
        .filter_map(|c| c.get(1).or(c.get(2)).map(|m| m.as_str()))
        .collect();
    for c in KEYGEN_INIT.captures_iter(&sn.text) {
        if !KEYGEN_NAME.is_match(&c[1]) && !declared.contains(&&c[1]) {
            continue;
        }
        if let Value::Int { value } = env.resolve(&c[2]) {
            if value > 0 {
                out.push(site(value as u64));
            }
        }
    }
    for c in KEY_ALLOC.captures_iter(&sn.text) {
        if let Ok(n) = c[1].parse::<u64>() {
            out.push(site(8 * n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::{Origin, SourceRef};
    use std::sync::Arc;

    fn sn(text: &str) -> Snippet {
        Snippet::new(
            text.into(),
            0,
            Arc::new(SourceRef { source_id: "s".into(), origin: Origin::PlainFile, section: Section::Standalone }),
        )
    }

    fn ids(fs: &[Finding]) -> Vec<(&str, Status, Severity)> {
        fs.iter().map(|f| (f.rule_id.as_str(), f.status, f.severity)).collect()
    }

    #[test]
    fn parse_examples() {
        let t = parse_transformation("AES/CBC/PKCS5Padding").unwrap();
        assert_eq!(t.algorithm, "AES");
        assert_eq!(t.mode, Mode::Explicit("CBC".into()));
        assert_eq!(t.padding.as_deref(), Some("PKCS5Padding"));
        let t = parse_transformation("AES").unwrap();
        assert_eq!((t.mode, t.padding), (Mode::DefaultEcb, None));
        let t = parse_transformation("DESede/ECB/PKCS7Padding").unwrap();
        assert_eq!(t.algorithm, "DESEDE");
        assert_eq!(t.mode, Mode::Explicit("ECB".into()));
        assert_eq!(t.padding.as_deref(), Some("PKCS7Padding"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_transformation("a/b/c/d"), Err(TransformationError::TooManySegments(_))));
        assert!(matches!(parse_transformation("AES//NoPadding"), Err(TransformationError::EmptySegment(_))));
        assert!(matches!(parse_transformation("AES/"), Err(TransformationError::EmptySegment(_))));
        assert_eq!(parse_transformation(" "), Err(TransformationError::Empty));
    }

    #[test]
    fn family_strips_key_size() {
        assert_eq!(parse_transformation("AES_256/GCM/NoPadding").unwrap().family(), "AES");
        assert_eq!(parse_transformation("RC4").unwrap().family(), "RC4");
    }

    #[test]
    fn des_ecb_fires_two_rules() {
        let fs = Scanner::builtin().scan_snippet(&sn(r#"Cipher.getInstance("DES/ECB/PKCS5Padding")"#));
        assert_eq!(
            ids(&fs),
            [("R-01", Status::Confirmed, Severity::Insecure), ("R-02-a", Status::Confirmed, Severity::Insecure)]
        );
    }

    #[test]
    fn gcm_is_clean() {
        assert!(Scanner::builtin().scan_snippet(&sn(r#"Cipher.getInstance("AES/GCM/NoPadding")"#)).is_empty());
    }

    #[test]
    fn desede_is_bad_practice() {
        let fs = Scanner::builtin().scan_snippet(&sn(r#"Cipher.getInstance("DESede/CBC/PKCS5Padding")"#));
        assert_eq!(
            ids(&fs),
            [
                ("R-01", Status::Confirmed, Severity::BadPractice),
                ("R-02-b", Status::Confirmed, Severity::BadPractice)
            ]
        );
    }

    #[test]
    fn static_iv_array() {
        let fs = Scanner::builtin()
            .scan_snippet(&sn("byte[] iv = new byte[]{0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0};"));
        assert_eq!(ids(&fs), [("R-04-a", Status::NeedsReview, Severity::Insecure)]);
    }

    #[test]
    fn transformation_through_identifier() {
        let text = "String t = \"AES/ECB/PKCS5Padding\";\nCipher c = Cipher.getInstance(t);";
        let fs = Scanner::builtin().scan_snippet(&sn(text));
        assert_eq!(ids(&fs), [("R-02-a", Status::Confirmed, Severity::Insecure)]);
        let scan = Scanner::builtin().scan_snippet_in(&sn("Cipher.getInstance(mode);"), &BindingEnv::default());
        assert!(scan.findings.is_empty());
        assert_eq!(scan.diagnostics.len(), 1);
    }

    #[test]
    fn malformed_transformation_falls_back_to_patterns() {
        let s = sn(r#"Cipher.getInstance("DES/" + mode + "/PKCS5Padding")"#);
        let scan = Scanner::builtin().scan_snippet_in(&s, &BindingEnv::default());
        assert_eq!(ids(&scan.findings), [("R-01", Status::Confirmed, Severity::Insecure)]);
        assert!(scan.cipher_sites.is_empty());
    }

    #[test]
    fn chacha_carries_note() {
        let fs = Scanner::builtin().scan_snippet(&sn(r#"Cipher.getInstance("ChaCha20")"#));
        assert_eq!(fs[0].rule_id, "R-01");
        assert!(fs[0].evidence.contains("disputed"));
    }

    #[test]
    fn overlapping_matches_merge() {
        // The PBEParameterSpec literal salt and the call itself overlap.
        let s = sn(r#"new PBEParameterSpec("saltsalt".getBytes(), 20);"#);
        let fs = Scanner::builtin().scan_snippet(&s);
        let r03c: Vec<_> = fs.iter().filter(|f| f.rule_id == "R-03-c").collect();
        assert_eq!(r03c.len(), 1);
        let two = sn("byte[] salt = {1};\nbyte[] salt2 = {2};");
        let fs = Scanner::builtin().scan_snippet(&two);
        assert_eq!(fs.iter().filter(|f| f.rule_id == "R-03-b").count(), 2);
    }

    #[test]
    fn disabled_rule_is_silent() {
        let cfg = crate::ruleset::Overrides::parse("R-02-b: disabled").unwrap();
        let rs = crate::ruleset::apply_overrides(&crate::ruleset::builtin_ruleset(), &cfg).unwrap();
        let fs = Scanner::new(rs).unwrap().scan_snippet(&sn(r#"Cipher.getInstance("AES/CBC/NoPadding")"#));
        assert!(fs.is_empty());
    }

    #[test]
    fn findings_are_sorted_and_located() {
        let text = "byte[] key = {1,2};\nCipher c = Cipher.getInstance(\"AES\");";
        let fs = Scanner::builtin().scan_snippet(&sn(text));
        assert_eq!(fs[0].rule_id, "R-03-a");
        assert_eq!(fs[1].rule_id, "R-02-a");
        assert_eq!((fs[1].line, fs[1].column), (2, 12));
    }

    #[test]
    fn scan_text_confirms_candidates() {
        let body = SourceText::plain("byte[] salt = new byte[16];\nnew PBEKeySpec(pw, salt, 100, 256);", "f");
        let scan = Scanner::builtin().scan_text(&body, ScanOptions::default());
        let by_rule = |id: &str| scan.findings.iter().find(|f| f.rule_id == id).map(|f| f.status);
        assert_eq!(by_rule("R-03-c"), Some(Status::Dismissed));
        assert_eq!(by_rule("R-03-d"), Some(Status::Confirmed));
        assert!(scan.findings.iter().all(|f| f.status != Status::NeedsReview || f.rule_id == "R-03-c"));
    }

    #[test]
    fn empty_body_has_no_findings() {
        let scan = Scanner::builtin().scan_text(&SourceText::fenced("", "a"), ScanOptions::default());
        assert!(scan.findings.is_empty());
    }

    #[test]
    fn key_size_sites() {
        let body = SourceText::plain("KeyGenerator keyGen = KeyGenerator.getInstance(\"AES\");\nint bits = 256;\nkeyGen.init(bits);\nbyte[] key = new byte[16];", "f");
        let scan = Scanner::builtin().scan_text(&body, ScanOptions::default());
        let bits: Vec<u64> = scan.key_sizes.iter().map(|k| k.bits).collect();
        assert_eq!(bits, [256, 128]);
    }

    #[test]
    fn key_size_from_declared_generator() {
        let body = SourceText::plain("KeyGenerator gen = KeyGenerator.getInstance(\"AES\");\ngen.init(192);\ncipher.init(1, key);", "f");
        let scan = Scanner::builtin().scan_text(&body, ScanOptions::default());
        let bits: Vec<u64> = scan.key_sizes.iter().map(|k| k.bits).collect();
        assert_eq!(bits, [192]);
    }
}
