//! Second, independent labeler for the rule fixtures. It reads the snippet
//! the way a reviewer skimming the code would: plain substring checks and
//! one-line lookups of `name = …` assignments, with no regexes and no
//! knowledge of how the scanner resolves values.

const WEAK: &[&str] = &["des", "desede", "rc2", "rc4", "rc5", "blowfish", "chacha20"];
const BLOCK: &[&str] = &["aes", "des", "desede", "rc2", "rc4", "rc5", "blowfish", "chacha20"];

/// Right-hand side of the last `name = …;` line.
fn assigned(text: &str, name: &str) -> Option<String> {
    text.lines().rev().find_map(|line| {
        let (lhs, rhs) = line.split_once('=')?;
        let lhs_name = lhs.split_whitespace().last()?;
        (lhs_name == name && !rhs.starts_with('=')).then(|| rhs.trim().trim_end_matches(';').trim().to_string())
    })
}

/// Arguments of the first call to `callee(`, split on top-level commas.
fn call_args(text: &str, callee: &str) -> Option<Vec<String>> {
    let start = text.find(&format!("{callee}("))? + callee.len() + 1;
    let mut depth = 0;
    let mut args = vec![String::new()];
    let mut in_str = false;
    for c in text[start..].chars() {
        match c {
            '"' => in_str = !in_str,
            '(' | '{' if !in_str => depth += 1,
            ')' | '}' if !in_str && depth == 0 => break,
            ')' | '}' if !in_str => depth -= 1,
            ',' if !in_str && depth == 0 => {
                args.push(String::new());
                continue;
            }
            _ => {}
        }
        args.last_mut().unwrap().push(c);
    }
    Some(args.into_iter().map(|a| a.trim().to_string()).collect())
}

fn is_literal(expr: &str) -> bool {
    expr.starts_with('"') || expr.starts_with('{') || expr.starts_with("new byte[]{") || expr.starts_with("new byte[] {")
}

/// Literal either directly or through one assignment.
fn literal_through(text: &str, expr: &str) -> bool {
    let base = expr.split('.').next().unwrap_or(expr);
    is_literal(expr) || assigned(text, base).is_some_and(|rhs| is_literal(&rhs))
}

fn transformation(text: &str) -> Option<String> {
    let arg = call_args(text, "Cipher.getInstance")?.into_iter().next()?;
    let lit = if arg.starts_with('"') { arg } else { assigned(text, &arg)? };
    Some(lit.trim_matches('"').to_ascii_lowercase())
}

fn used_elsewhere(text: &str, name: &str) -> bool {
    text.matches(name).count() > 1
}

fn byte_len(text: &str, name: &str) -> Option<usize> {
    let rhs = assigned(text, name)?;
    if let Some(n) = rhs.strip_prefix("new byte[").and_then(|r| r.strip_suffix(']')) {
        return n.parse().ok();
    }
    if rhs.starts_with('{') {
        return Some(rhs.split(',').count());
    }
    rhs.strip_suffix(".getBytes()").map(|s| s.trim_matches('"').len())
}

fn filled_randomly(text: &str, name: &str) -> bool {
    text.contains(&format!("nextBytes({name})"))
        || assigned(text, name).is_some_and(|r| r.contains("generateSeed") || r.contains("SecureRandom"))
}

pub fn is_violation(rule: &str, text: &str) -> bool {
    match rule {
        "R-01" => transformation(text).is_some_and(|t| WEAK.contains(&t.split('/').next().unwrap_or(""))),
        "R-02-a" => transformation(text).is_some_and(|t| {
            let mut parts = t.split('/');
            BLOCK.contains(&parts.next().unwrap_or("")) && parts.next().map_or(true, |m| m == "ecb")
        }),
        "R-02-b" => transformation(text).is_some_and(|t| {
            let mut parts = t.split('/');
            BLOCK.contains(&parts.next().unwrap_or("")) && parts.next() == Some("cbc")
        }),
        "R-03-a" => call_args(text, "SecretKeySpec").is_some_and(|a| literal_through(text, &a[0])),
        "R-03-b" => {
            let via_spec = call_args(text, "PBEKeySpec").is_some_and(|a| a.len() > 1 && literal_through(text, &a[1]))
                || call_args(text, "PBEParameterSpec").is_some_and(|a| literal_through(text, &a[0]));
            via_spec
        }
        "R-03-c" => {
            let salt = call_args(text, "PBEKeySpec")
                .and_then(|a| a.get(1).cloned())
                .or_else(|| call_args(text, "PBEParameterSpec").map(|a| a[0].clone()));
            salt.and_then(|s| byte_len(text, &s)).is_some_and(|n| n * 8 < 64)
        }
        "R-03-d" => {
            let count = call_args(text, "PBEKeySpec")
                .and_then(|a| a.get(2).cloned())
                .or_else(|| call_args(text, "PBEParameterSpec").and_then(|a| a.get(1).cloned()));
            count.and_then(|c| c.parse::<u64>().ok()).is_some_and(|n| n < 1000)
        }
        "R-03-e" => {
            call_args(text, "PBEKeySpec").is_some_and(|a| literal_through(text, &a[0]))
                || ["password", "pass"].iter().any(|n| {
                    assigned(text, n).is_some_and(|r| r.starts_with('"')) && used_elsewhere(text, n)
                })
        }
        "R-03-f" => {
            let Some(rnd) = call_args(text, "keyGen.init").and_then(|a| a.get(1).cloned()) else {
                return false;
            };
            let rhs = assigned(text, &rnd).unwrap_or_default();
            rhs.contains("new Random(") || text.contains(&format!("{rnd}.setSeed("))
        }
        "R-03-g" => {
            text.contains("\"PBEWithMD5AndDES\"")
                || text.contains("\"PBKDF2WithHmacSHA1\"")
                || text.contains("\"SHA-1\"") && text.contains(".digest(key")
        }
        "R-04-a" => {
            call_args(text, "IvParameterSpec").is_some_and(|a| is_literal(&a[0]))
                || assigned(text, "iv").is_some_and(|r| is_literal(&r))
        }
        "R-04-b" => call_args(text, "IvParameterSpec").is_some_and(|a| {
            let arg = &a[0];
            !is_literal(arg) && assigned(text, arg).is_some() && !filled_randomly(text, arg)
        }),
        "R-05" => text.lines().filter(|l| l.contains(".load(")).any(|l| {
            let args = call_args(l, &l[..l.find(".load(").unwrap() + 5]).unwrap_or_default();
            args.get(1).is_some_and(|pw| pw != "null" && literal_through(text, pw))
        }),
        other => panic!("no heuristic for {other}"),
    }
}
