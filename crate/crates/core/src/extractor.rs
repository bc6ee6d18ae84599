//! Turns post bodies, answer text and plain files into code snippets.

use std::sync::{Arc, LazyLock};

use regex::Regex;
use serde::{Deserialize, Serialize};

/// Inline `<code>` spans shorter than this (after unescaping) are prose
/// mentions such as `<code>AES</code>`, not scannable code.
pub const DEFAULT_INLINE_MIN_CHARS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    HtmlPost,
    FencedText,
    PlainFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Question,
    AcceptedAnswer,
    OtherAnswer,
    Standalone,
}

impl Section {
    pub fn as_str(self) -> &'static str {
        match self {
            Section::Question => "question",
            Section::AcceptedAnswer => "accepted_answer",
            Section::OtherAnswer => "other_answer",
            Section::Standalone => "standalone",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceText {
    pub raw: String,
    pub origin: Origin,
    pub section: Section,
    pub source_id: String,
}

impl SourceText {
    pub fn html(raw: impl Into<String>, section: Section, source_id: impl Into<String>) -> Self {
        SourceText { raw: raw.into(), origin: Origin::HtmlPost, section, source_id: source_id.into() }
    }

    pub fn fenced(raw: impl Into<String>, source_id: impl Into<String>) -> Self {
        SourceText {
            raw: raw.into(),
            origin: Origin::FencedText,
            section: Section::Standalone,
            source_id: source_id.into(),
        }
    }

    pub fn plain(raw: impl Into<String>, source_id: impl Into<String>) -> Self {
        SourceText {
            raw: raw.into(),
            origin: Origin::PlainFile,
            section: Section::Standalone,
            source_id: source_id.into(),
        }
    }
}

/// Identity of the text a snippet came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceRef {
    pub source_id: String,
    pub origin: Origin,
    pub section: Section,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snippet {
    pub text: String,
    pub index: usize,
    pub line_starts: Vec<usize>,
    pub source: Arc<SourceRef>,
}

impl Snippet {
    pub fn new(text: String, index: usize, source: Arc<SourceRef>) -> Self {
        let line_starts = line_starts(&text);
        Snippet { text, index, line_starts, source }
    }

    /// 1-based line and byte column of `offset`.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let line = self.line_starts.partition_point(|&s| s <= offset) - 1;
        (line + 1, offset - self.line_starts[line] + 1)
    }

    /// Inverse of [`Snippet::line_col`].
    pub fn offset_of(&self, line: usize, col: usize) -> usize {
        self.line_starts[line - 1] + col - 1
    }
}

fn line_starts(text: &str) -> Vec<usize> {
    std::iter::once(0)
        .chain(text.match_indices('\n').map(|(i, _)| i + 1).filter(|&i| i < text.len()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractDiagnostic {
    pub source_id: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub snippets: Vec<Snippet>,
    pub diagnostics: Vec<ExtractDiagnostic>,
}

/// Replaces the five common HTML entities in a single pass. Unknown
/// entities are left as they are; `&amp;quot;` becomes `&quot;`.
pub fn unescape_entities(raw: &str) -> String {
    const ENTITIES: [(&str, char); 6] = [
        ("&quot;", '"'),
        ("&amp;", '&'),
        ("&lt;", '<'),
        ("&gt;", '>'),
        ("&#39;", '\''),
        ("&apos;", '\''),
    ];
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        match ENTITIES.iter().find(|(name, _)| tail.starts_with(name)) {
            Some((name, ch)) => {
                out.push(*ch);
                rest = &tail[name.len()..];
            }
            None => {
                out.push('&');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

static CODE_TAG: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)<(/?)(pre|code)\b[^>]*>").unwrap());

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    pub inline_min_chars: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { inline_min_chars: DEFAULT_INLINE_MIN_CHARS }
    }
}

fn source_ref(body: &SourceText) -> Arc<SourceRef> {
    Arc::new(SourceRef {
        source_id: body.source_id.clone(),
        origin: body.origin,
        section: body.section,
    })
}

/// Pulls `<pre>` blocks and standalone `<code>` regions out of an HTML body,
/// in document order.
pub fn extract_code_blocks(body: &SourceText, opts: ExtractOptions) -> Extraction {
    debug_assert_eq!(body.origin, Origin::HtmlPost);
    let src = source_ref(body);
    let html = body.raw.as_str();
    let mut ex = Extraction::default();
    let mut diag = |message: String| {
        ex.diagnostics.push(ExtractDiagnostic { source_id: body.source_id.clone(), message })
    };
    let mut blocks: Vec<String> = Vec::new();
    let mut pos = 0;
    while let Some(open) = CODE_TAG.captures_at(html, pos) {
        let whole = open.get(0).unwrap();
        let closing = !open[1].is_empty();
        let tag = open[2].to_ascii_lowercase();
        pos = whole.end();
        if closing {
            continue;
        }
        let end_tag = format!("</{tag}");
        let close = find_ci(html, &end_tag, pos);
        let content_end = close.unwrap_or_else(|| {
            diag(format!("unterminated <{tag}> at byte {}; block runs to end of body", whole.start()));
            html.len()
        });
        let inner = &html[pos..content_end];
        let code = if tag == "pre" { CODE_TAG.replace_all(inner, "").into_owned() } else { inner.to_string() };
        let code = unescape_entities(&code);
        let keep = if tag == "pre" {
            !code.trim().is_empty()
        } else {
            code.trim().chars().count() >= opts.inline_min_chars
        };
        if keep {
            blocks.push(code);
        }
        pos = match close {
            Some(c) => html[c..].find('>').map_or(html.len(), |g| c + g + 1),
            None => html.len(),
        };
    }
    ex.snippets = blocks
        .into_iter()
        .enumerate()
        .map(|(i, text)| Snippet::new(text, i, src.clone()))
        .collect();
    ex
}

fn find_ci(hay: &str, needle: &str, from: usize) -> Option<usize> {
    let hay_b = hay.as_bytes();
    let nb = needle.as_bytes();
    (from..hay_b.len().saturating_sub(nb.len() - 1))
        .find(|&i| hay_b[i..i + nb.len()].eq_ignore_ascii_case(nb))
}

/// Returns triple-backtick fenced blocks in order; text without any fence is
/// returned whole as one snippet.
pub fn extract_fenced_blocks(body: &SourceText) -> Extraction {
    debug_assert_eq!(body.origin, Origin::FencedText);
    let src = source_ref(body);
    let mut ex = Extraction::default();
    let mut blocks: Vec<String> = Vec::new();
    let mut current: Option<(usize, String)> = None;
    let mut saw_fence = false;
    for (line_no, line) in body.raw.split_inclusive('\n').enumerate() {
        let is_fence = line.trim_start().starts_with("```");
        match (&mut current, is_fence) {
            (None, true) => {
                saw_fence = true;
                current = Some((line_no + 1, String::new()));
            }
            (Some(_), true) => {
                let (_, text) = current.take().unwrap();
                blocks.push(text);
            }
            (Some((_, text)), false) => text.push_str(line),
            (None, false) => {}
        }
    }
    if let Some((line, text)) = current {
        ex.diagnostics.push(ExtractDiagnostic {
            source_id: body.source_id.clone(),
            message: format!("unterminated fence opened on line {line}; block runs to end of text"),
        });
        blocks.push(text);
    }
    if !saw_fence && !body.raw.trim().is_empty() {
        blocks.push(body.raw.clone());
    }
    ex.snippets = blocks
        .into_iter()
        .filter(|b| !b.trim().is_empty())
        .enumerate()
        .map(|(i, text)| Snippet::new(text, i, src.clone()))
        .collect();
    ex
}

/// Dispatches on origin. Plain files become one snippet, unmodified.
pub fn extract(body: &SourceText, opts: ExtractOptions) -> Extraction {
    match body.origin {
        Origin::HtmlPost => extract_code_blocks(body, opts),
        Origin::FencedText => extract_fenced_blocks(body),
        Origin::PlainFile => {
            let mut ex = Extraction::default();
            if !body.raw.is_empty() {
                ex.snippets.push(Snippet::new(body.raw.clone(), 0, source_ref(body)));
            }
            ex
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn html(body: &str) -> Extraction {
        extract_code_blocks(&SourceText::html(body, Section::Question, "1"), ExtractOptions::default())
    }

    #[test]
    fn unescape_examples() {
        assert_eq!(
            unescape_entities("Cipher.getInstance(&quot;AES&quot;)"),
            r#"Cipher.getInstance("AES")"#
        );
        assert_eq!(unescape_entities("a &lt; b"), "a < b");
        assert_eq!(unescape_entities("&amp;quot;"), "&quot;");
        assert_eq!(unescape_entities("&nbsp;&#39;&apos;&gt;"), "&nbsp;''>");
    }

    #[test]
    fn two_pre_blocks_in_order() {
        let ex = html("<p>x</p><pre><code>first();\n</code></pre><p>y</p><pre class=\"lang-java\"><code>second();</code></pre>");
        let texts: Vec<_> = ex.snippets.iter().map(|s| s.text.as_str()).collect();
        assert_eq!(texts, ["first();\n", "second();"]);
        assert_eq!(ex.snippets[1].index, 1);
        assert!(ex.diagnostics.is_empty());
    }

    #[test]
    fn no_code_tags() {
        assert!(html("<p>Just prose about AES.</p>").snippets.is_empty());
    }

    #[test]
    fn code_block_is_unescaped() {
        let raw = "<pre><code>Cipher c = Cipher.getInstance(&quot;DES&quot;);</code></pre>";
        let ex = html(raw);
        assert!(ex.snippets[0].text.contains(r#"Cipher.getInstance("DES")"#));
        assert_eq!(
            ex.snippets[0].text,
            unescape_entities("Cipher c = Cipher.getInstance(&quot;DES&quot;);")
        );
    }

    #[test]
    fn short_inline_code_is_dropped() {
        let ex = html("<p>Use <code>AES</code> with <code>Cipher.getInstance(&quot;AES/GCM/NoPadding&quot;)</code></p>");
        assert_eq!(ex.snippets.len(), 1);
        assert!(ex.snippets[0].text.starts_with("Cipher.getInstance"));
        let ex = extract_code_blocks(
            &SourceText::html("<code>AES</code>", Section::Question, "1"),
            ExtractOptions { inline_min_chars: 1 },
        );
        assert_eq!(ex.snippets.len(), 1);
    }

    #[test]
    fn unterminated_pre_recovers() {
        let ex = html("<pre><code>byte[] iv = {1,2};");
        assert_eq!(ex.snippets.len(), 1);
        assert_eq!(ex.snippets[0].text, "byte[] iv = {1,2};");
        assert_eq!(ex.diagnostics.len(), 1);
    }

    #[test]
    fn fenced_blocks() {
        let body = "Here:\n```java\nint a = 1;\n```\ntext\n```\nint b = 2;\n```\n";
        let ex = extract_fenced_blocks(&SourceText::fenced(body, "a"));
        let texts: Vec<_> = ex.snippets.iter().map(|s| s.text.as_str()).collect();
        assert_eq!(texts, ["int a = 1;\n", "int b = 2;\n"]);
    }

    #[test]
    fn fenced_empty_and_fallback() {
        assert!(extract_fenced_blocks(&SourceText::fenced("", "a")).snippets.is_empty());
        let body = "int a = 1;\nint b = 2;\nint c = 3;";
        let ex = extract_fenced_blocks(&SourceText::fenced(body, "a"));
        assert_eq!(ex.snippets.len(), 1);
        assert_eq!(ex.snippets[0].text, body);
    }

    #[test]
    fn unterminated_fence() {
        let ex = extract_fenced_blocks(&SourceText::fenced("```\nx = 1;\ny = 2;\n", "a"));
        assert_eq!(ex.snippets[0].text, "x = 1;\ny = 2;\n");
        assert_eq!(ex.diagnostics.len(), 1);
    }

    #[test]
    fn line_col_mapping() {
        let sn = Snippet::new("ab\ncd\n\nef".into(), 0, Arc::new(SourceRef {
            source_id: "x".into(),
            origin: Origin::PlainFile,
            section: Section::Standalone,
        }));
        assert_eq!(sn.line_starts, vec![0, 3, 6, 7]);
        assert_eq!(sn.line_col(4), (2, 2));
        assert_eq!(sn.line_col(6), (3, 1));
    }

    proptest! {
        #[test]
        fn offsets_round_trip(text in "[a-z\n]{1,80}") {
            let sn = Snippet::new(text.clone(), 0, Arc::new(SourceRef {
                source_id: "p".into(),
                origin: Origin::PlainFile,
                section: Section::Standalone,
            }));
            prop_assert!(sn.line_starts.windows(2).all(|w| w[0] < w[1]));
            for off in 0..text.len() {
                let (l, c) = sn.line_col(off);
                prop_assert_eq!(sn.offset_of(l, c), off);
            }
        }

        #[test]
        fn unescape_is_stable_without_nested_entities(s in "[a-zA-Z \"<>'=;(]{0,40}") {
            let escaped = s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;");
            let once = unescape_entities(&escaped);
            prop_assert_eq!(&once, &s);
            prop_assert_eq!(unescape_entities(&once), once);
        }
    }
}
