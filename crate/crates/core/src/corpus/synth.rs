//! Deterministic synthetic `Posts.xml` generator for pipeline tests.
//!
//! Output is produced lazily through [`Read`], so a million-row dump never
//! exists in memory. Qualifying bundles are planted at random positions in
//! three kinds: pattern in the question, pattern only in the accepted answer,
//! and pattern only in a non-accepted answer (which the corpus filter must
//! reject). Answers are emitted out of order relative to their questions,
//! some of them far downstream.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::{self, Read};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    /// Exact number of `<row>` elements.
    pub rows: u64,
    pub question_hits: u32,
    pub accepted_answer_hits: u32,
    pub other_answer_hits: u32,
    pub seed: u64,
}

impl SynthConfig {
    /// 1,000,000 rows, 137 planted bundles of which 13 qualify only through a
    /// non-accepted answer.
    pub fn million(seed: u64) -> Self {
        SynthConfig { rows: 1_000_000, question_hits: 62, accepted_answer_hits: 62, other_answer_hits: 13, seed }
    }

    pub fn planted(&self) -> u32 {
        self.question_hits + self.accepted_answer_hits + self.other_answer_hits
    }

    pub fn qualifying(&self) -> u32 {
        self.question_hits + self.accepted_answer_hits
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTruth {
    /// Question ids that must survive the corpus filter, ascending.
    pub qualifying_ids: Vec<u64>,
    /// Question ids planted with a hit only in a non-accepted answer.
    pub excluded_ids: Vec<u64>,
    /// Question count per creation year over the whole dump.
    pub question_years: BTreeMap<i32, u64>,
    pub rows: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plant {
    Question,
    AcceptedAnswer,
    OtherAnswer,
}

const HITS: &[&str] = &[
    "Cipher cipher = Cipher.getInstance(\"AES/CBC/PKCS5Padding\");",
    "Cipher c = Cipher.getInstance(\"AES\");",
    "Cipher c = javax.crypto.Cipher.getInstance(\"DESede/ECB/PKCS5Padding\");",
    "Cipher c = Cipher.getInstance(\"des\");",
    "Cipher c = Cipher.getInstance(\"Blowfish\");",
    "Cipher c = Cipher.getInstance(\"RC4\");",
    "Cipher c = Cipher.getInstance(\"ChaCha20-Poly1305\");",
    "Cipher c = Cipher.getInstance(\"aes/gcm/NoPadding\");",
];

const DECOYS: &[&str] = &[
    "Cipher c = Cipher.getInstance(\"RSA/ECB/PKCS1Padding\");",
    "Cipher c = Cipher.getInstance(transformation);",
    "Signature s = Signature.getInstance(\"SHA256withRSA\");",
    "Mac mac = Mac.getInstance(\"HmacSHA256\");",
    "KeyPairGenerator g = KeyPairGenerator.getInstance(\"RSA\");",
    "MessageDigest md = MessageDigest.getInstance(\"SHA-256\");",
    "Cipher c = Cipher.getInstance( \"AES\");",
];

const FILLER: &[&str] = &[
    "How do I read a file line by line?",
    "I get a NullPointerException when the list is empty.",
    "Use a try-with-resources block so the stream gets closed.",
    "The issue is that equals is not overridden.",
    "You need to add the dependency to your build file.",
    "This works for me on Java 17.",
];

/// Rows per group is at most 1 question + 3 answers + 1 wiki row.
const MAX_GROUP_ROWS: u64 = 5;
/// Rows a deferred answer waits before it is written.
const DEFER_ROWS: u64 = 40_000;

pub struct SynthDump {
    cfg: SynthConfig,
    rng: ChaCha8Rng,
    plants: HashMap<u64, Plant>,
    group: u64,
    next_id: u64,
    emitted: u64,
    deferred: VecDeque<(u64, String)>,
    buf: Vec<u8>,
    pos: usize,
    state: State,
    truth: GroundTruth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Header,
    Body,
    Done,
}

impl SynthDump {
    pub fn new(cfg: SynthConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let groups = (cfg.rows / MAX_GROUP_ROWS).saturating_sub(1);
        let planted = cfg.planted() as usize;
        assert!(groups as usize >= planted, "too few rows for {planted} planted bundles");
        let mut plants = HashMap::new();
        let picks = rand::seq::index::sample(&mut rng, groups as usize, planted);
        for (k, g) in picks.into_iter().enumerate() {
            let kind = if k < cfg.question_hits as usize {
                Plant::Question
            } else if k < (cfg.question_hits + cfg.accepted_answer_hits) as usize {
                Plant::AcceptedAnswer
            } else {
                Plant::OtherAnswer
            };
            plants.insert(g as u64, kind);
        }
        SynthDump {
            cfg,
            rng,
            plants,
            group: 0,
            next_id: 1,
            emitted: 0,
            deferred: VecDeque::new(),
            buf: Vec::with_capacity(16 * 1024),
            pos: 0,
            state: State::Header,
            truth: GroundTruth::default(),
        }
    }

    /// Generates the whole dump into a sink and returns what it contains.
    pub fn ground_truth(cfg: SynthConfig) -> GroundTruth {
        let mut d = SynthDump::new(cfg);
        io::copy(&mut d, &mut io::sink()).expect("generator does not fail");
        d.into_truth()
    }

    /// Ground truth so far; complete once the reader hit EOF.
    pub fn into_truth(mut self) -> GroundTruth {
        self.truth.qualifying_ids.sort_unstable();
        self.truth.excluded_ids.sort_unstable();
        self.truth
    }

    fn id(&mut self) -> u64 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn body(&mut self, hit: bool) -> String {
        let mut html = format!("<p>{}</p>", FILLER.choose(&mut self.rng).unwrap());
        let code = if hit {
            let line = HITS.choose(&mut self.rng).unwrap().to_string();
            // Some bodies keep the quote as an HTML entity.
            if self.rng.gen_bool(0.3) { line.replace('"', "&quot;") } else { line }
        } else if self.rng.gen_bool(0.2) {
            DECOYS.choose(&mut self.rng).unwrap().to_string()
        } else {
            "int x = 1;".to_string()
        };
        html.push_str("<pre><code>");
        html.push_str(&code.replace('<', "&lt;"));
        html.push_str("</code></pre>");
        html
    }

    fn fill(&mut self) {
        if self.state == State::Header {
            self.buf.extend_from_slice(b"<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<posts>\n");
            self.state = State::Body;
            return;
        }
        while self.buf.len() < 8 * 1024 && self.state == State::Body {
            let remaining = self.cfg.rows - self.emitted - self.deferred.len() as u64;
            if remaining >= MAX_GROUP_ROWS {
                self.emit_group();
            } else if remaining > 0 {
                let id = self.id();
                let row = wiki_row(id);
                self.push_row(row);
            } else if let Some((_, row)) = self.deferred.pop_front() {
                self.push_row(row);
            } else {
                self.buf.extend_from_slice(b"</posts>\n");
                self.state = State::Done;
                self.truth.rows = self.emitted;
            }
            while self.deferred.front().is_some_and(|(at, _)| *at <= self.emitted) {
                let (_, row) = self.deferred.pop_front().unwrap();
                self.push_row(row);
            }
        }
    }

    fn push_row(&mut self, row: String) {
        self.buf.extend_from_slice(b"  ");
        self.buf.extend_from_slice(row.as_bytes());
        self.buf.push(b'\n');
        self.emitted += 1;
    }

    fn emit_group(&mut self) {
        let plant = self.plants.get(&self.group).copied();
        self.group += 1;
        let answers = match plant {
            Some(Plant::Question) => self.rng.gen_range(0..=3),
            Some(Plant::AcceptedAnswer) => self.rng.gen_range(1..=3),
            Some(Plant::OtherAnswer) => self.rng.gen_range(2..=3),
            None => self.rng.gen_range(0..=3),
        };
        let qid = self.id();
        let year = self.rng.gen_range(2008..=2023);
        *self.truth.question_years.entry(year).or_default() += 1;
        let answer_ids: Vec<u64> = (0..answers).map(|_| self.id()).collect();
        let accepted = match plant {
            Some(Plant::AcceptedAnswer) | Some(Plant::OtherAnswer) => Some(0),
            _ if answers > 0 && self.rng.gen_bool(0.5) => Some(self.rng.gen_range(0..answers)),
            _ => None,
        };
        // The other-answer plant sometimes leaves the question unsolved.
        let accepted = match plant {
            Some(Plant::OtherAnswer) if self.rng.gen_bool(0.3) => None,
            _ => accepted,
        };
        match plant {
            Some(Plant::Question) | Some(Plant::AcceptedAnswer) => self.truth.qualifying_ids.push(qid),
            Some(Plant::OtherAnswer) => self.truth.excluded_ids.push(qid),
            None => {}
        }

        let mut rows = Vec::with_capacity(answers + 2);
        let qbody = self.body(plant == Some(Plant::Question));
        let mut qrow = format!(
            r#"<row Id="{qid}" PostTypeId="1" CreationDate="{year}-{:02}-{:02}T12:00:00.000" Score="{}" ViewCount="{}""#,
            self.rng.gen_range(1..=12),
            self.rng.gen_range(1..=28),
            self.rng.gen_range(-5..200),
            self.rng.gen_range(1..100_000),
        );
        if let Some(k) = accepted {
            qrow.push_str(&format!(r#" AcceptedAnswerId="{}""#, answer_ids[k]));
        }
        // Titles are not scanned; a hit here must not qualify the post.
        qrow.push_str(&format!(
            r#" Title="{}" Body="{}" Tags="&lt;java&gt;&lt;encryption&gt;" />"#,
            xml_escape("Cipher.getInstance(\"AES\") question"),
            xml_escape(&qbody)
        ));
        rows.push((false, qrow));
        for (k, &aid) in answer_ids.iter().enumerate() {
            let hit = match plant {
                Some(Plant::AcceptedAnswer) => accepted == Some(k),
                Some(Plant::OtherAnswer) => k == answers - 1,
                _ => false,
            };
            let body = self.body(hit);
            let ayear = year + i32::from(self.rng.gen_bool(0.2));
            let row = format!(
                r#"<row Id="{aid}" PostTypeId="2" ParentId="{qid}" CreationDate="{ayear}-06-15T08:30:00.000" Score="{}" Body="{}" />"#,
                self.rng.gen_range(-2..50),
                xml_escape(&body)
            );
            rows.push((hit || accepted == Some(k), row));
        }
        if self.rng.gen_bool(0.1) {
            let id = self.id();
            rows.push((false, wiki_row(id)));
        }
        rows.shuffle(&mut self.rng);
        for (deferrable, row) in rows {
            if deferrable && self.rng.gen_bool(0.5) {
                self.deferred.push_back((self.emitted + DEFER_ROWS, row));
            } else {
                self.push_row(row);
            }
        }
    }
}

/// PostTypeId 5 rows carry a pattern hit and must be ignored.
fn wiki_row(id: u64) -> String {
    format!(
        r#"<row Id="{id}" PostTypeId="5" CreationDate="2015-01-01T00:00:00.000" Score="0" Body="{}" />"#,
        xml_escape("<pre><code>Cipher.getInstance(\"AES\")</code></pre>")
    )
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 16);
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

impl Read for SynthDump {
    fn read(&mut self, out: &mut [u8]) -> io::Result<usize> {
        if self.pos == self.buf.len() {
            self.buf.clear();
            self.pos = 0;
            if self.state == State::Done {
                return Ok(0);
            }
            self.fill();
        }
        let n = out.len().min(self.buf.len() - self.pos);
        out[..n].copy_from_slice(&self.buf[self.pos..self.pos + n]);
        self.pos += n;
        Ok(n)
    }
}
