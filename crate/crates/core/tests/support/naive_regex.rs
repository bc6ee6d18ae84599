//! A small backtracking regex matcher used as an oracle for the production
//! engine. It supports the syntax the rule catalog uses: literals, escapes,
//! `.`, classes, `\b`, non-capturing and case-insensitive groups,
//! alternation and greedy or lazy quantifiers. Trying alternatives in order
//! and quantifiers greedily yields leftmost-first matches by construction.

#[derive(Debug, Clone)]
enum Node {
    Char(char, bool),
    Any,
    Class(Class),
    WordBoundary(bool),
    Concat(Vec<Node>),
    Alt(Vec<Node>),
    Repeat { node: Box<Node>, min: usize, max: Option<usize>, greedy: bool },
}

#[derive(Debug, Clone)]
enum Item {
    Range(char, char),
    Digit(bool),
    Word(bool),
    Space(bool),
}

#[derive(Debug, Clone)]
struct Class {
    items: Vec<Item>,
    negated: bool,
    fold: bool,
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Item {
    fn matches(&self, c: char) -> bool {
        match *self {
            Item::Range(a, b) => a <= c && c <= b,
            Item::Digit(neg) => c.is_ascii_digit() != neg,
            Item::Word(neg) => is_word(c) != neg,
            Item::Space(neg) => c.is_whitespace() != neg,
        }
    }
}

impl Class {
    fn matches(&self, c: char) -> bool {
        let hit = |c: char| self.items.iter().any(|i| i.matches(c));
        let found = if self.fold {
            hit(c) || c.to_lowercase().any(hit) || c.to_uppercase().any(hit)
        } else {
            hit(c)
        };
        found != self.negated
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos];
        self.pos += 1;
        c
    }

    fn eat(&mut self, s: &str) -> bool {
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn alt(&mut self, fold: bool) -> Node {
        let mut branches = vec![self.concat(fold)];
        while self.peek() == Some('|') {
            self.bump();
            branches.push(self.concat(fold));
        }
        if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Node::Alt(branches)
        }
    }

    fn concat(&mut self, fold: bool) -> Node {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let atom = self.atom(fold);
            items.push(self.quantified(atom));
        }
        Node::Concat(items)
    }

    fn atom(&mut self, fold: bool) -> Node {
        match self.bump() {
            '(' => {
                let mut inner_fold = fold;
                if self.eat("?:") {
                } else if self.eat("?i:") {
                    inner_fold = true;
                } else if self.peek() == Some('?') {
                    panic!("unsupported group syntax in {}", self.src);
                }
                let node = self.alt(inner_fold);
                assert_eq!(self.bump(), ')', "unbalanced group in {}", self.src);
                node
            }
            '[' => Node::Class(self.class(fold)),
            '.' => Node::Any,
            '\\' => match self.bump() {
                'b' => Node::WordBoundary(true),
                'B' => Node::WordBoundary(false),
                c => match escape_item(c) {
                    Some(item) => Node::Class(Class { items: vec![item], negated: false, fold: false }),
                    None => Node::Char(escape_char(c), fold),
                },
            },
            c => Node::Char(c, fold),
        }
    }

    fn class(&mut self, fold: bool) -> Class {
        let negated = self.peek() == Some('^');
        if negated {
            self.bump();
        }
        let mut items = Vec::new();
        let mut first = true;
        loop {
            let c = self.bump();
            if c == ']' && !first {
                break;
            }
            first = false;
            let lo = if c == '\\' {
                let e = self.bump();
                if let Some(item) = escape_item(e) {
                    items.push(item);
                    continue;
                }
                escape_char(e)
            } else {
                c
            };
            if self.peek() == Some('-') && self.chars.get(self.pos + 1) != Some(&']') {
                self.bump();
                let mut hi = self.bump();
                if hi == '\\' {
                    hi = escape_char(self.bump());
                }
                items.push(Item::Range(lo, hi));
            } else {
                items.push(Item::Range(lo, lo));
            }
        }
        Class { items, negated, fold }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn quantified(&mut self, atom: Node) -> Node {
        let (min, max) = match self.peek() {
            Some('*') => (0, None),
            Some('+') => (1, None),
            Some('?') => (0, Some(1)),
            Some('{') => {
                let save = self.pos;
                self.bump();
                let Some(min) = self.number() else {
                    self.pos = save;
                    return atom;
                };
                let max = if self.eat(",") { self.number() } else { Some(min) };
                assert_eq!(self.bump(), '}', "bad repetition in {}", self.src);
                self.pos -= 1;
                (min, max)
            }
            _ => return atom,
        };
        self.bump();
        let greedy = if self.peek() == Some('?') {
            self.bump();
            false
        } else {
            true
        };
        Node::Repeat { node: Box::new(atom), min, max, greedy }
    }
}

fn escape_item(c: char) -> Option<Item> {
    Some(match c {
        'd' => Item::Digit(false),
        'D' => Item::Digit(true),
        'w' => Item::Word(false),
        'W' => Item::Word(true),
        's' => Item::Space(false),
        'S' => Item::Space(true),
        _ => return None,
    })
}

fn escape_char(c: char) -> char {
    match c {
        'n' => '\n',
        't' => '\t',
        'r' => '\r',
        c => c,
    }
}

pub struct NaiveRegex {
    root: Node,
}

impl NaiveRegex {
    pub fn new(pattern: &str) -> Self {
        let mut p = Parser { chars: pattern.chars().collect(), pos: 0, src: pattern };
        let root = p.alt(false);
        assert!(p.pos == p.chars.len(), "trailing input in {pattern}");
        NaiveRegex { root }
    }

    /// Non-overlapping leftmost-first matches as byte ranges.
    pub fn find_all(&self, text: &str) -> Vec<(usize, usize)> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let byte = |i: usize| chars.get(i).map_or(text.len(), |c| c.0);
        let mut out = Vec::new();
        let mut start = 0;
        while start <= chars.len() {
            let mut found = None;
            for s in start..=chars.len() {
                let mut end = None;
                if m(&self.root, &chars, s, &mut |e| {
                    end = Some(e);
                    true
                }) {
                    found = Some((s, end.unwrap()));
                    break;
                }
            }
            let Some((s, e)) = found else { break };
            out.push((byte(s), byte(e)));
            start = if e == s { e + 1 } else { e };
        }
        out
    }
}

fn char_eq(a: char, b: char, fold: bool) -> bool {
    a == b || fold && a.to_lowercase().eq(b.to_lowercase())
}

fn m(node: &Node, t: &[(usize, char)], pos: usize, k: &mut dyn FnMut(usize) -> bool) -> bool {
    match node {
        Node::Char(c, fold) => t.get(pos).is_some_and(|&(_, x)| char_eq(x, *c, *fold)) && k(pos + 1),
        Node::Any => t.get(pos).is_some_and(|&(_, x)| x != '\n') && k(pos + 1),
        Node::Class(cls) => t.get(pos).is_some_and(|&(_, x)| cls.matches(x)) && k(pos + 1),
        Node::WordBoundary(want) => {
            let before = pos > 0 && is_word(t[pos - 1].1);
            let after = t.get(pos).is_some_and(|&(_, x)| is_word(x));
            ((before != after) == *want) && k(pos)
        }
        Node::Concat(items) => seq(items, t, pos, k),
        Node::Alt(branches) => branches.iter().any(|b| m(b, t, pos, k)),
        Node::Repeat { node, min, max, greedy } => rep(node, *min, *max, *greedy, 0, t, pos, k),
    }
}

fn seq(items: &[Node], t: &[(usize, char)], pos: usize, k: &mut dyn FnMut(usize) -> bool) -> bool {
    match items.split_first() {
        None => k(pos),
        Some((first, rest)) => m(first, t, pos, &mut |p| seq(rest, t, p, k)),
    }
}

#[allow(clippy::too_many_arguments)]
fn rep(
    node: &Node,
    min: usize,
    max: Option<usize>,
    greedy: bool,
    count: usize,
    t: &[(usize, char)],
    pos: usize,
    k: &mut dyn FnMut(usize) -> bool,
) -> bool {
    let can_more = max.map_or(true, |mx| count < mx);
    let more = |k: &mut dyn FnMut(usize) -> bool| {
        can_more
            && m(node, t, pos, &mut |p| {
                // An empty iteration past the minimum can only loop.
                if p == pos && count >= min {
                    return false;
                }
                rep(node, min, max, greedy, count + 1, t, p, k)
            })
    };
    if count < min {
        return more(k);
    }
    if greedy {
        more(k) || k(pos)
    } else {
        k(pos) || more(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(NaiveRegex::new("a+").find_all("baaab aa"), [(1, 4), (6, 8)]);
        assert_eq!(NaiveRegex::new(r"\bkey\d*").find_all("mykey key12"), [(6, 11)]);
        assert_eq!(NaiveRegex::new("(?i:des|desede)").find_all("DESede"), [(0, 3)]);
        assert_eq!(NaiveRegex::new(r"[^,;\n]+,").find_all("ab,c;d,"), [(0, 3), (5, 7)]);
        assert_eq!(NaiveRegex::new(r"[1-9]\d{0,2}\b").find_all("65536 100"), [(2, 5), (6, 9)]);
        assert_eq!(NaiveRegex::new(r"x.*?y").find_all("xaybY"), [(0, 3)]);
    }
}
