//! Snippet-level constant resolution.
//!
//! One [`BindingEnv`] is built per post section from every snippet in it.
//! Resolution is flow-insensitive: the last assignment to a name wins, and
//! loops, branches and arithmetic are not modeled (`8*2` stays unknown).
//! The environment also records a few section facts used by the
//! confirmation heuristics: which arrays are filled from a random source,
//! which generators are explicitly seeded, and which PBE iteration counts
//! appear.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::engine::{Finding, Status};
use crate::error::ConfirmError;
use crate::extractor::{Section, Snippet};
use crate::ruleset::{ConfirmKind, DetectionMode, Rule};
use crate::syntax::{
    brace_elements, call_args, char_literal, int_literal, is_ident_char, is_identifier, mask_code,
    string_literal, word_occurrences,
};

pub const MIN_SALT_BITS: u64 = 64;
pub const MIN_ITERATIONS: i128 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingKind {
    StringLit,
    IntLit,
    ByteArray,
    CharArray,
    NullLit,
    ExprUnknown,
}

/// What an expression is known to evaluate to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Str { value: String },
    Int { value: i128 },
    /// Byte array with known length. `zero_filled` marks `new byte[N]`.
    Bytes { len: usize, zero_filled: bool },
    Chars { len: usize },
    Null,
    /// Not a recognized literal form; carries the source expression.
    Unknown { expr: String },
}

impl Value {
    pub fn kind(&self) -> BindingKind {
        match self {
            Value::Str { .. } => BindingKind::StringLit,
            Value::Int { .. } => BindingKind::IntLit,
            Value::Bytes { .. } => BindingKind::ByteArray,
            Value::Chars { .. } => BindingKind::CharArray,
            Value::Null => BindingKind::NullLit,
            Value::Unknown { .. } => BindingKind::ExprUnknown,
        }
    }

    /// 8 × element count for arrays, 8 × UTF-8 byte count for strings.
    pub fn bit_length(&self) -> Option<u64> {
        match self {
            Value::Str { value } => Some(8 * value.len() as u64),
            Value::Bytes { len, .. } | Value::Chars { len } => Some(8 * *len as u64),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        !matches!(self, Value::Unknown { .. } | Value::Null)
    }

    fn unknown(expr: &str) -> Self {
        Value::Unknown { expr: expr.trim().to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub identifier: String,
    pub value: Value,
}

impl Binding {
    pub fn kind(&self) -> BindingKind {
        self.value.kind()
    }

    pub fn bit_length(&self) -> Option<u64> {
        self.value.bit_length()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectionFacts {
    /// Uses of each bound identifier outside its own binding statements.
    pub references: BTreeMap<String, usize>,
    /// Arrays passed to `nextBytes`.
    pub random_filled: BTreeSet<String>,
    /// Receiver → argument text of `setSeed` calls.
    pub seeds: BTreeMap<String, BTreeSet<String>>,
    /// Identifiers passed whole to calls other than `IvParameterSpec` and
    /// `nextBytes`; their contents may change after binding.
    pub passed_to_calls: BTreeSet<String>,
    /// Iteration-count argument expressions of PBE spec constructors.
    pub pbe_iterations: BTreeSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BindingEnv {
    pub section: Option<Section>,
    pub bindings: BTreeMap<String, Binding>,
    pub facts: SectionFacts,
}

impl BindingEnv {
    /// Unbound identifiers come back as `ExprUnknown`.
    pub fn lookup(&self, ident: &str) -> Binding {
        self.bindings.get(ident).cloned().unwrap_or_else(|| Binding {
            identifier: ident.to_string(),
            value: Value::unknown(ident),
        })
    }

    pub fn references(&self, ident: &str) -> usize {
        self.facts.references.get(ident).copied().unwrap_or(0)
    }

    /// Resolves an expression through literals, bound identifiers and the
    /// `.toCharArray()` / `.getBytes(..)` conversions.
    pub fn resolve(&self, expr: &str) -> Value {
        self.resolve_depth(expr.trim(), 0)
    }

    fn resolve_depth(&self, expr: &str, depth: usize) -> Value {
        let direct = classify_expr(expr, None);
        if !matches!(direct, Value::Unknown { .. }) || depth > 4 {
            return direct;
        }
        if is_identifier(expr) {
            return match self.bindings.get(expr) {
                Some(b) => match &b.value {
                    Value::Unknown { expr: rhs } if rhs != expr => {
                        let inner = self.resolve_depth(rhs, depth + 1);
                        if inner.is_constant() || matches!(inner, Value::Null) {
                            inner
                        } else {
                            b.value.clone()
                        }
                    }
                    v => v.clone(),
                },
                None => Value::unknown(expr),
            };
        }
        if let Some((recv, conv)) = split_conversion(expr) {
            if is_identifier(recv) {
                return match (self.resolve_depth(recv, depth + 1), conv) {
                    (Value::Str { value }, Conversion::Chars) => {
                        Value::Chars { len: value.chars().count() }
                    }
                    (Value::Str { value }, Conversion::Bytes) => {
                        Value::Bytes { len: value.len(), zero_filled: false }
                    }
                    (v @ (Value::Bytes { .. } | Value::Chars { .. }), Conversion::Clone) => v,
                    _ => Value::unknown(expr),
                };
            }
        }
        Value::unknown(expr)
    }
}

enum Conversion {
    Chars,
    Bytes,
    Clone,
}

static CONVERSION: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r#"^(?s)(.+?)\s*\.\s*(toCharArray|getBytes|clone)\s*\(([^()]*)\)$"#).unwrap()
});

fn split_conversion(expr: &str) -> Option<(&str, Conversion)> {
    let caps = CONVERSION.captures(expr)?;
    let recv = caps.get(1).unwrap().as_str().trim();
    let conv = match &caps[2] {
        "toCharArray" => Conversion::Chars,
        "getBytes" => Conversion::Bytes,
        _ => Conversion::Clone,
    };
    Some((recv, conv))
}

static NEW_ARRAY: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^new\s+(byte|char)\s*\[\s*([^\]]*?)\s*\]\s*(\{(?s:.*)\})?$").unwrap()
});

/// Classifies a right-hand side without consulting any bindings.
/// `type_hint` is the declared type text, used for bare `{…}` initializers.
pub fn classify_expr(rhs: &str, type_hint: Option<&str>) -> Value {
    let rhs = rhs.trim();
    if let Some(s) = string_literal(rhs) {
        return Value::Str { value: s };
    }
    if rhs == "null" {
        return Value::Null;
    }
    if let Some(c) = char_literal(rhs) {
        return Value::Int { value: c as i128 };
    }
    if let Some(n) = int_literal(rhs) {
        return Value::Int { value: n };
    }
    if let Some(caps) = NEW_ARRAY.captures(rhs) {
        let elem = &caps[1];
        return match (caps.get(3), int_literal(&caps[2])) {
            (Some(init), _) if caps[2].is_empty() => match brace_elements(init.as_str()) {
                Some(items) if elem == "byte" => Value::Bytes { len: items.len(), zero_filled: false },
                Some(items) => Value::Chars { len: items.len() },
                None => Value::unknown(rhs),
            },
            (None, Some(n)) if n >= 0 && elem == "byte" => {
                Value::Bytes { len: n as usize, zero_filled: true }
            }
            (None, Some(n)) if n >= 0 => Value::Chars { len: n as usize },
            _ => Value::unknown(rhs),
        };
    }
    if rhs.starts_with('{') {
        let hint = type_hint.unwrap_or("byte").to_ascii_lowercase();
        if let Some(items) = brace_elements(rhs) {
            if hint.contains("char") {
                return Value::Chars { len: items.len() };
            }
            if hint.contains("byte") {
                return Value::Bytes { len: items.len(), zero_filled: false };
            }
        }
        return Value::unknown(rhs);
    }
    if let Some((recv, conv)) = split_conversion(rhs) {
        if let Some(s) = string_literal(recv) {
            return match conv {
                Conversion::Chars => Value::Chars { len: s.chars().count() },
                Conversion::Bytes => Value::Bytes { len: s.len(), zero_filled: false },
                Conversion::Clone => Value::unknown(rhs),
            };
        }
    }
    Value::unknown(rhs)
}

/// One `name = rhs` statement found in a snippet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub ident: String,
    pub ident_start: usize,
    pub type_hint: String,
    pub rhs: (usize, usize),
}

/// Finds assignment statements, skipping comparison and compound operators.
pub fn assignments(text: &str, masked: &str) -> Vec<Assignment> {
    let b = masked.as_bytes();
    let mut out = Vec::new();
    for (eq, _) in masked.match_indices('=') {
        let prev = if eq > 0 { b[eq - 1] } else { b' ' };
        let next = b.get(eq + 1).copied().unwrap_or(b' ');
        if b"=!<>+-*/%&|^~".contains(&prev) || next == b'=' || next == b'>' {
            continue;
        }
        let mut end = eq;
        while end > 0 && b[end - 1].is_ascii_whitespace() {
            end -= 1;
        }
        let mut start = end;
        while start > 0 && is_ident_char(b[start - 1] as char) {
            start -= 1;
        }
        let ident = &masked[start..end];
        if !is_identifier(ident) {
            continue;
        }
        let line_start = masked[..start].rfind(['\n', ';', '{', '}', '(']).map_or(0, |p| p + 1);
        let type_hint = masked[line_start..start].trim().to_string();
        let rhs = rhs_extent(masked, eq + 1);
        let (s, e) = crate::syntax::trim_range(text, rhs.0, rhs.1);
        out.push(Assignment { ident: ident.to_string(), ident_start: start, type_hint, rhs: (s, e) });
    }
    out
}

fn rhs_extent(masked: &str, from: usize) -> (usize, usize) {
    let b = masked.as_bytes();
    let mut depth = 0i32;
    let mut i = from;
    while i < b.len() {
        match b[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' if depth == 0 => break,
            b')' | b']' | b'}' => depth -= 1,
            b';' | b',' if depth == 0 => break,
            b'\n' if depth == 0 => {
                let so_far = masked[from..i].trim();
                let rest = masked[i + 1..].trim_start();
                let continues = so_far.is_empty()
                    || so_far.ends_with(['+', '.', '?', ':'])
                    || rest.starts_with(['.', '+', '?', ':']);
                if !continues {
                    break;
                }
            }
            _ => {}
        }
        i += 1;
    }
    (from, i)
}

static NEXT_BYTES: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\.\s*nextBytes\s*\(\s*([A-Za-z_$][\w$]*)\s*\)").unwrap());
static SET_SEED: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"([A-Za-z_$][\w$]*)\s*\.\s*setSeed\s*\(").unwrap());
static PBE_CALL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b(PBEKeySpec|PBEParameterSpec)\s*\(").unwrap());
static ANY_CALL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"([A-Za-z_$][\w$]*)\s*\(").unwrap());

const NOT_CALLS: [&str; 8] = ["if", "for", "while", "switch", "catch", "return", "IvParameterSpec", "nextBytes"];

/// Builds the binding environment for one section from all of its snippets.
pub fn collect_bindings(snippets: &[Snippet]) -> BindingEnv {
    let mut env = BindingEnv { section: snippets.first().map(|s| s.source.section), ..Default::default() };
    let mut lhs_positions: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut masked_all = Vec::with_capacity(snippets.len());
    for (idx, sn) in snippets.iter().enumerate() {
        let masked = mask_code(&sn.text);
        let mut positions = BTreeSet::new();
        for a in assignments(&sn.text, &masked) {
            let rhs = &sn.text[a.rhs.0..a.rhs.1];
            let value = classify_expr(rhs, Some(&a.type_hint));
            positions.insert(a.ident_start);
            env.bindings.insert(a.ident.clone(), Binding { identifier: a.ident, value });
        }
        lhs_positions.push((idx, positions));
        collect_facts(&sn.text, &masked, &mut env.facts);
        masked_all.push(masked);
    }
    for ident in env.bindings.keys() {
        let mut count = 0;
        for (masked, (_, lhs)) in masked_all.iter().zip(&lhs_positions) {
            count += word_occurrences(masked, ident).filter(|p| !lhs.contains(p)).count();
        }
        if count > 0 {
            env.facts.references.insert(ident.clone(), count);
        }
    }
    env
}

fn collect_facts(text: &str, masked: &str, facts: &mut SectionFacts) {
    for c in NEXT_BYTES.captures_iter(masked) {
        facts.random_filled.insert(c[1].to_string());
    }
    for c in SET_SEED.captures_iter(masked) {
        let open = c.get(0).unwrap().end() - 1;
        if let Some(&(s, e)) = call_args(text, open).first() {
            facts.seeds.entry(c[1].to_string()).or_default().insert(text[s..e].to_string());
        }
    }
    for c in PBE_CALL.captures_iter(masked) {
        let open = c.get(0).unwrap().end() - 1;
        let args = call_args(text, open);
        let idx = if &c[1] == "PBEKeySpec" { 2 } else { 1 };
        if let Some(&(s, e)) = args.get(idx) {
            facts.pbe_iterations.insert(text[s..e].to_string());
        }
    }
    for c in ANY_CALL.captures_iter(masked) {
        if NOT_CALLS.contains(&&c[1]) {
            continue;
        }
        let open = c.get(0).unwrap().end() - 1;
        for (s, e) in call_args(text, open) {
            let arg = &text[s..e];
            if is_identifier(arg) {
                facts.passed_to_calls.insert(arg.to_string());
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfirmOptions {
    /// When set, constants confirm even if nothing in the section uses them.
    pub strict_context: bool,
}

static NON_CRYPTO_RNG: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"\bnew\s+(?:java\.util\.)?(?:Random|SplittableRandom)\s*\(|ThreadLocalRandom|Math\.random")
        .unwrap()
});
static SECURE_RANDOM_CTOR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\bnew\s+(?:java\.security\.)?SecureRandom\s*\(").unwrap());

/// Settles a candidate finding using the section's bindings. Only `status`
/// and `evidence` change.
pub fn confirm(
    finding: &Finding,
    rule: &Rule,
    env: &BindingEnv,
    snippet: &Snippet,
    opts: ConfirmOptions,
) -> Result<Finding, ConfirmError> {
    if rule.detection_mode == DetectionMode::Automatic || rule.confirm_kind == ConfirmKind::None {
        return Err(ConfirmError::AutomaticRule(rule.id.clone()));
    }
    let site = Site::new(finding, snippet);
    let (status, evidence) = match rule.confirm_kind {
        ConfirmKind::SaltLength => salt_length(&site, env),
        ConfirmKind::IterationCount => iteration_count(&site, env),
        ConfirmKind::RandomSource => random_source(&site, env),
        ConfirmKind::KeystorePassword => keystore_password(&site, env),
        ConfirmKind::ConstantValue => constant_value(&site, rule, env, opts),
        ConfirmKind::None => unreachable!(),
    };
    let mut out = finding.clone();
    out.status = status;
    out.evidence = join_evidence(&finding.evidence, &evidence);
    Ok(out)
}

fn join_evidence(old: &str, new: &str) -> String {
    match (old.is_empty(), new.is_empty()) {
        (true, _) => new.to_string(),
        (false, true) => old.to_string(),
        (false, false) => format!("{old}; {new}"),
    }
}

/// The matched region of a finding plus the call or assignment it sits on.
struct Site<'a> {
    matched: &'a str,
    /// Callee name when the match starts a call such as `PBEKeySpec(`.
    callee: Option<&'a str>,
    args: Vec<&'a str>,
    /// Assigned identifier when the match is `name = …`.
    assigned: Option<&'a str>,
}

impl<'a> Site<'a> {
    fn new(f: &Finding, sn: &'a Snippet) -> Self {
        let text = sn.text.as_str();
        let (start, end) = (f.span.start.min(text.len()), f.span.end.min(text.len()));
        let matched = &text[start..end];
        let mut site = Site { matched, callee: None, args: Vec::new(), assigned: None };
        let paren = matched.find('(');
        let eq = matched.find('=');
        match (paren, eq) {
            (Some(p), e) if e.is_none_or(|e| p < e) => {
                let head = matched[..p].trim_end();
                let name_start = head.rfind(|c: char| !is_ident_char(c)).map_or(0, |i| i + 1);
                site.callee = Some(&head[name_start..]);
                site.args = call_args(text, start + p).into_iter().map(|(s, e)| &text[s..e]).collect();
            }
            (_, Some(e)) => {
                let lhs = matched[..e].trim_end();
                let name_start = lhs.rfind(|c: char| !is_ident_char(c)).map_or(0, |i| i + 1);
                site.assigned = Some(&lhs[name_start..]);
            }
            _ => {}
        }
        site
    }

    fn arg(&self, i: usize) -> Option<&'a str> {
        self.args.get(i).copied()
    }
}

fn salt_length(site: &Site, env: &BindingEnv) -> (Status, String) {
    let expr = match (site.callee, site.assigned) {
        (Some("PBEKeySpec"), _) => site.arg(1),
        (Some("PBEParameterSpec"), _) => site.arg(0),
        (_, Some(name)) => Some(name),
        _ => None,
    };
    let Some(expr) = expr else {
        return (Status::NeedsReview, "no salt argument at this site".into());
    };
    match env.resolve(expr).bit_length() {
        Some(bits) if bits < MIN_SALT_BITS => (Status::Confirmed, format!("salt={bits} bits")),
        Some(bits) => (Status::Dismissed, format!("salt={bits} bits")),
        None => (Status::NeedsReview, format!("salt `{expr}` unresolved")),
    }
}

fn iteration_verdict(expr: &str, env: &BindingEnv) -> Option<i128> {
    match env.resolve(expr) {
        Value::Int { value } => Some(value),
        _ => None,
    }
}

fn iteration_count(site: &Site, env: &BindingEnv) -> (Status, String) {
    let direct = match site.callee {
        Some("PBEKeySpec") => Some(site.arg(2)),
        Some("PBEParameterSpec") => Some(site.arg(1)),
        _ => None,
    };
    if let Some(arg) = direct {
        let Some(expr) = arg else {
            return (Status::NeedsReview, "no iteration count at this site".into());
        };
        return match iteration_verdict(expr, env) {
            Some(n) if n < MIN_ITERATIONS => (Status::Confirmed, format!("iterations={n}")),
            Some(n) => (Status::Dismissed, format!("iterations={n}")),
            None => (Status::NeedsReview, format!("iterations `{expr}` unresolved")),
        };
    }
    // A salt assignment: judge by the PBE constructors in the section.
    let counts: Vec<Option<i128>> =
        env.facts.pbe_iterations.iter().map(|e| iteration_verdict(e, env)).collect();
    if let Some(n) = counts.iter().flatten().filter(|&&n| n < MIN_ITERATIONS).min() {
        return (Status::Confirmed, format!("iterations={n}"));
    }
    if !counts.is_empty() && counts.iter().all(Option::is_some) {
        let n = counts.iter().flatten().min().unwrap();
        return (Status::Dismissed, format!("iterations={n}"));
    }
    (Status::NeedsReview, "iteration count not found in section".into())
}

fn random_source(site: &Site, env: &BindingEnv) -> (Status, String) {
    let Some(rnd) = site.arg(1) else {
        return (Status::NeedsReview, "no random source argument".into());
    };
    let binding = env.lookup(rnd);
    let Value::Unknown { expr } = &binding.value else {
        return (Status::NeedsReview, format!("random source `{rnd}` is not a generator"));
    };
    if !env.bindings.contains_key(rnd) {
        return (Status::NeedsReview, format!("random source `{rnd}` unresolved"));
    }
    if NON_CRYPTO_RNG.is_match(expr) {
        return (Status::Confirmed, format!("`{rnd}` is a non-cryptographic generator"));
    }
    if !expr.contains("SecureRandom") {
        return (Status::NeedsReview, format!("random source `{rnd}` = `{expr}`"));
    }
    if let Some(m) = SECURE_RANDOM_CTOR.find(expr) {
        let args = call_args(expr, m.end() - 1);
        if let Some(&(s, e)) = args.first() {
            let seed = &expr[s..e];
            return if env.resolve(seed).is_constant() {
                (Status::Confirmed, format!("SecureRandom seeded with constant `{seed}`"))
            } else {
                (Status::NeedsReview, format!("SecureRandom seeded with `{seed}`"))
            };
        }
    }
    match env.facts.seeds.get(rnd) {
        None => (Status::Dismissed, format!("`{rnd}` is an unseeded SecureRandom")),
        Some(seeds) => match seeds.iter().find(|s| env.resolve(s).is_constant()) {
            Some(seed) => (Status::Confirmed, format!("SecureRandom seeded with constant `{seed}`")),
            None => (Status::NeedsReview, format!("`{rnd}` seeded with a runtime value")),
        },
    }
}

fn keystore_password(site: &Site, env: &BindingEnv) -> (Status, String) {
    match (site.arg(0), site.arg(1)) {
        (_, Some(pw)) => match env.resolve(pw) {
            Value::Null => (Status::Dismissed, "keystore password is null".into()),
            v if v.is_constant() => (Status::Confirmed, format!("keystore password `{pw}` is constant")),
            _ => (Status::NeedsReview, format!("keystore password `{pw}` unresolved")),
        },
        (Some("null"), None) => (Status::Dismissed, "keystore loaded without password".into()),
        _ => (Status::NeedsReview, "load without password argument".into()),
    }
}

fn starts_literal(arg: &str) -> bool {
    let a = arg.trim_start();
    a.starts_with('"') || a.starts_with('{') || NEW_ARRAY.is_match(a) && a.contains('{')
}

fn constant_value(site: &Site, rule: &Rule, env: &BindingEnv, opts: ConfirmOptions) -> (Status, String) {
    if let Some(name) = site.assigned {
        // Assignment patterns only match when the right-hand side opens a literal.
        let decorative = matches!(rule.id.as_str(), "R-03-b" | "R-03-e");
        if decorative && !opts.strict_context && env.references(name) == 0 {
            return (Status::Dismissed, format!("`{name}` is never used in this section"));
        }
        return (Status::Confirmed, format!("`{name}` is a literal"));
    }
    if site.args.iter().any(|a| starts_literal(a)) {
        return (Status::Confirmed, format!("literal argument in `{}`", site.matched.trim()));
    }
    let Some(arg) = site.arg(0) else {
        return (Status::NeedsReview, "no argument to resolve".into());
    };
    let root: String = arg.chars().take_while(|&c| is_ident_char(c)).collect();
    let bound = match env.lookup(&root).value {
        Value::Unknown { expr } => expr,
        _ => String::new(),
    };
    let secure = |e: &str| e.contains("SecureRandom") || e.contains("generateSeed");
    if env.facts.random_filled.contains(&root) || secure(arg) || secure(&bound) {
        return (Status::Dismissed, format!("`{arg}` comes from a secure random source"));
    }
    match env.resolve(arg) {
        Value::Bytes { zero_filled: true, .. } if env.facts.passed_to_calls.contains(&root) => {
            (Status::NeedsReview, format!("`{root}` may be filled elsewhere"))
        }
        Value::Bytes { zero_filled: true, len } => {
            (Status::Confirmed, format!("`{root}` is an all-zero array of {len} bytes"))
        }
        v if v.is_constant() => (Status::Confirmed, format!("`{arg}` resolves to a constant")),
        _ => (Status::NeedsReview, format!("`{arg}` unresolved")),
    }
}
