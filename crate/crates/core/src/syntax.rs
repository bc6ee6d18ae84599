//! Lexical helpers for C-family code fragments. Nothing here parses a
//! grammar; snippets are routinely incomplete, so every routine degrades to
//! "end of text" instead of failing.

/// Returns `text` with comment bodies and string/char literal contents
/// replaced by spaces. Byte offsets and newlines are preserved, so spans
/// found in the masked text index the original.
pub fn mask_code(text: &str) -> String {
    let bytes = text.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                out.push(b' ');
                i += 1;
            }
        } else if b == b'/' && bytes.get(i + 1) == Some(&b'*') {
            out.extend_from_slice(b"  ");
            i += 2;
            while i < bytes.len() && !(bytes[i] == b'*' && bytes.get(i + 1) == Some(&b'/')) {
                out.push(if bytes[i] == b'\n' { b'\n' } else { b' ' });
                i += 1;
            }
            let close = (bytes.len() - i).min(2);
            out.extend(std::iter::repeat_n(b' ', close));
            i += close;
        } else if b == b'"' || b == b'\'' {
            out.push(b);
            i += 1;
            while i < bytes.len() && bytes[i] != b && bytes[i] != b'\n' {
                if bytes[i] == b'\\' && i + 1 < bytes.len() && bytes[i + 1] != b'\n' {
                    out.extend_from_slice(b"  ");
                    i += 2;
                } else {
                    out.push(b' ');
                    i += 1;
                }
            }
            if i < bytes.len() && bytes[i] == b {
                out.push(b);
                i += 1;
            }
        } else {
            out.push(if b.is_ascii() { b } else { b' ' });
            i += 1;
        }
    }
    // Only ASCII bytes were written.
    String::from_utf8(out).expect("masked text is ASCII")
}

/// Byte ranges of the top-level arguments of the call whose opening
/// parenthesis sits at `open`. Ranges are trimmed. An unterminated call
/// yields the arguments seen up to the end of text.
pub fn call_args(text: &str, open: usize) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    debug_assert_eq!(bytes.get(open), Some(&b'('));
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = open + 1;
    let mut i = open + 1;
    let push = |s: usize, e: usize, args: &mut Vec<(usize, usize)>| {
        let (s, e) = trim_range(text, s, e);
        if s < e {
            args.push((s, e));
        }
    };
    while i < bytes.len() {
        match bytes[i] {
            b'"' | b'\'' => {
                i = skip_literal(bytes, i);
                continue;
            }
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' if depth > 0 => depth -= 1,
            b')' => {
                push(start, i, &mut args);
                return args;
            }
            b',' if depth == 0 => {
                push(start, i, &mut args);
                start = i + 1;
            }
            b';' if depth == 0 => break,
            _ => {}
        }
        i += 1;
    }
    push(start, i.min(bytes.len()), &mut args);
    args
}

/// Index just past the string or char literal starting at `i`.
pub fn skip_literal(bytes: &[u8], i: usize) -> usize {
    let quote = bytes[i];
    let mut j = i + 1;
    while j < bytes.len() && bytes[j] != quote && bytes[j] != b'\n' {
        if bytes[j] == b'\\' {
            j += 1;
        }
        j += 1;
    }
    (j + 1).min(bytes.len())
}

pub fn trim_range(text: &str, mut s: usize, mut e: usize) -> (usize, usize) {
    let b = text.as_bytes();
    while s < e && b[s].is_ascii_whitespace() {
        s += 1;
    }
    while e > s && b[e - 1].is_ascii_whitespace() {
        e -= 1;
    }
    (s, e)
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '$'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_char)
}

/// Decodes a complete double-quoted literal such as `"a\"b"`. Returns `None`
/// when `s` is not exactly one literal.
pub fn string_literal(s: &str) -> Option<String> {
    let s = s.trim();
    let inner = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = inner.char_indices();
    while let Some((idx, c)) = chars.next() {
        match c {
            '"' => return (idx + 1 == inner.len()).then_some(out),
            '\\' => {
                let (_, e) = chars.next()?;
                match e {
                    'n' => out.push('\n'),
                    't' => out.push('\t'),
                    'r' => out.push('\r'),
                    '0' => out.push('\0'),
                    'u' => {
                        let hex: String = chars.by_ref().take(4).map(|(_, h)| h).collect();
                        let code = u32::from_str_radix(&hex, 16).ok()?;
                        out.push(char::from_u32(code).unwrap_or('\u{FFFD}'));
                    }
                    other => out.push(other),
                }
            }
            '\n' => return None,
            other => out.push(other),
        }
    }
    None
}

/// Decodes a char literal such as `'c'` or `'\n'` to its code point.
pub fn char_literal(s: &str) -> Option<u32> {
    let inner = s.trim().strip_prefix('\'')?.strip_suffix('\'')?;
    let mut chars = inner.chars();
    let c = match chars.next()? {
        '\\' => match chars.next()? {
            'n' => '\n',
            't' => '\t',
            'r' => '\r',
            '0' => '\0',
            other => other,
        },
        c => c,
    };
    chars.next().is_none().then_some(c as u32)
}

/// Parses an integer literal: decimal, hex, octal-less, with optional sign,
/// underscores and `L` suffix.
pub fn int_literal(s: &str) -> Option<i128> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let body = body.trim_end_matches(['L', 'l']).replace('_', "");
    if body.is_empty() {
        return None;
    }
    let value = if let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        i128::from_str_radix(hex, 16).ok()?
    } else if body.bytes().all(|b| b.is_ascii_digit()) {
        body.parse().ok()?
    } else {
        return None;
    };
    Some(if neg { -value } else { value })
}

/// Splits a brace initializer body `{a, b, c}` into its top-level elements.
pub fn brace_elements(s: &str) -> Option<Vec<String>> {
    let s = s.trim();
    let inner = s.strip_prefix('{')?.strip_suffix('}')?;
    let mut out = Vec::new();
    let bytes = inner.as_bytes();
    let (mut depth, mut start, mut i) = (0i32, 0usize, 0usize);
    while i < bytes.len() {
        match bytes[i] {
            b'"' | b'\'' => {
                i = skip_literal(bytes, i);
                continue;
            }
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b',' if depth == 0 => {
                out.push(inner[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    let last = inner[start..].trim();
    if !last.is_empty() {
        out.push(last.to_string());
    }
    Some(out)
}

/// Whole-word occurrences of `ident` in `masked` text.
pub fn word_occurrences<'a>(masked: &'a str, ident: &'a str) -> impl Iterator<Item = usize> + 'a {
    masked.match_indices(ident).filter_map(move |(pos, _)| {
        let before = masked[..pos].chars().next_back();
        let after = masked[pos + ident.len()..].chars().next();
        let boundary = |c: Option<char>| c.is_none_or(|c| !is_ident_char(c));
        (boundary(before) && boundary(after)).then_some(pos)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_comments_and_literals() {
        let src = "a = \"x // y\"; // note\nb /* c */ = 'q';";
        let m = mask_code(src);
        assert_eq!(m.len(), src.len());
        assert_eq!(m, "a = \"      \";        \nb         = ' ';");
    }

    #[test]
    fn masking_preserves_offsets_for_unicode() {
        let src = "s = \"é\"; t";
        let m = mask_code(src);
        assert_eq!(m.len(), src.len());
        assert_eq!(&m[m.len() - 1..], "t");
    }

    #[test]
    fn splits_call_arguments() {
        let src = r#"new PBEKeySpec(pw.toCharArray(), salt, 100, f(a, b))"#;
        let open = src.find('(').unwrap();
        let args: Vec<_> = call_args(src, open).into_iter().map(|(s, e)| &src[s..e]).collect();
        assert_eq!(args, ["pw.toCharArray()", "salt", "100", "f(a, b)"]);
    }

    #[test]
    fn commas_in_strings_do_not_split() {
        let src = r#"load(in, "a,b".toCharArray())"#;
        let args: Vec<_> =
            call_args(src, 4).into_iter().map(|(s, e)| &src[s..e]).collect();
        assert_eq!(args, ["in", r#""a,b".toCharArray()"#]);
    }

    #[test]
    fn unterminated_call_runs_to_end() {
        let src = "f(a, b";
        assert_eq!(call_args(src, 1).len(), 2);
    }

    #[test]
    fn literals() {
        assert_eq!(string_literal(r#""a\"b""#).as_deref(), Some("a\"b"));
        assert_eq!(string_literal(r#""a" + b"#), None);
        assert_eq!(char_literal("'x'"), Some('x' as u32));
        assert_eq!(int_literal("1_000"), Some(1000));
        assert_eq!(int_literal("0x10"), Some(16));
        assert_eq!(int_literal("-5L"), Some(-5));
        assert_eq!(int_literal("8*2"), None);
        assert_eq!(brace_elements("{1, 2, (byte) 3}").unwrap().len(), 3);
        assert_eq!(brace_elements("{}").unwrap().len(), 0);
    }

    #[test]
    fn word_boundaries() {
        let m = "salt saltier mysalt salt2 x.salt salt";
        let hits: Vec<_> = word_occurrences(m, "salt").collect();
        assert_eq!(hits, vec![0, 28, 33]);
    }
}
