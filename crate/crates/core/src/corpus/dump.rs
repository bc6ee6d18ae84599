//! Streaming reader for the `Posts.xml` table of a Stack Exchange data dump.
//!
//! The dump is one `<posts>` element holding a `<row …/>` per post, with the
//! HTML body entity-escaped inside the `Body` attribute. Rows are decoded
//! one at a time into a reused buffer, so memory stays bounded by the
//! largest row no matter how large the dump is.

use std::io::BufRead;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use serde::{Deserialize, Serialize};

use crate::error::CorpusError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PostType {
    Question,
    Answer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Date {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl Date {
    /// Parses the leading `YYYY-MM-DD` of a dump timestamp.
    pub fn parse(s: &str) -> Option<Date> {
        let s = s.get(..10)?;
        let mut parts = s.split('-');
        let year = parts.next()?.parse().ok()?;
        let month = parts.next()?.parse().ok()?;
        let day = parts.next()?.parse().ok()?;
        ((1..=12).contains(&month) && (1..=31).contains(&day)).then_some(Date { year, month, day })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostRecord {
    pub id: u64,
    pub post_type: PostType,
    pub accepted_answer_id: Option<u64>,
    pub parent_id: Option<u64>,
    pub creation_date: Date,
    pub score: i64,
    pub view_count: Option<u64>,
    pub tags: Vec<String>,
    pub body: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamStats {
    pub rows: u64,
    pub yielded: u64,
    /// Rows whose PostTypeId is neither 1 nor 2.
    pub skipped_other_type: u64,
    pub malformed: u64,
    pub diagnostics: Vec<String>,
}

/// Iterator over the post records of a dump. Malformed rows are skipped and
/// noted in [`StreamStats`]; a stream that ends before `</posts>` yields a
/// final [`CorpusError::Truncated`].
pub struct PostStream<R: BufRead> {
    reader: Reader<R>,
    buf: Vec<u8>,
    stats: StreamStats,
    saw_root: bool,
    done: bool,
}

/// Cap on stored per-row diagnostics; the counters keep counting.
const MAX_DIAGNOSTICS: usize = 1000;

impl<R: BufRead> PostStream<R> {
    pub fn new(input: R) -> Self {
        let mut reader = Reader::from_reader(input);
        reader.config_mut().trim_text(true);
        PostStream { reader, buf: Vec::with_capacity(64 * 1024), stats: StreamStats::default(), saw_root: false, done: false }
    }

    pub fn stats(&self) -> &StreamStats {
        &self.stats
    }

    pub fn into_stats(self) -> StreamStats {
        self.stats
    }

    fn note(&mut self, message: String) {
        if self.stats.diagnostics.len() < MAX_DIAGNOSTICS {
            self.stats.diagnostics.push(message);
        }
    }

    fn row(&mut self, e: &BytesStart<'_>) -> Option<PostRecord> {
        self.stats.rows += 1;
        let ordinal = self.stats.rows;
        match parse_row(e) {
            Ok(Some(rec)) => {
                self.stats.yielded += 1;
                Some(rec)
            }
            Ok(None) => {
                self.stats.skipped_other_type += 1;
                None
            }
            Err(msg) => {
                self.stats.malformed += 1;
                self.note(format!("row {ordinal}: {msg}"));
                None
            }
        }
    }
}

impl<R: BufRead> Iterator for PostStream<R> {
    type Item = Result<PostRecord, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            self.buf.clear();
            let event = self.reader.read_event_into(&mut self.buf);
            match event {
                Ok(Event::Empty(e)) | Ok(Event::Start(e)) if e.name().as_ref() == b"row" => {
                    let e = e.into_owned();
                    if let Some(rec) = self.row(&e) {
                        return Some(Ok(rec));
                    }
                }
                Ok(Event::Start(e)) if e.name().as_ref() == b"posts" => self.saw_root = true,
                Ok(Event::End(e)) if e.name().as_ref() == b"posts" => {
                    self.done = true;
                    return None;
                }
                Ok(Event::Eof) => {
                    self.done = true;
                    if self.saw_root {
                        return Some(Err(CorpusError::Truncated {
                            rows: self.stats.rows,
                            message: "missing </posts>".into(),
                        }));
                    }
                    return None;
                }
                Ok(_) => {}
                Err(quick_xml::Error::Io(e)) => {
                    self.done = true;
                    return Some(Err(CorpusError::Io(std::io::Error::new(e.kind(), e.to_string()))));
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(CorpusError::Truncated { rows: self.stats.rows, message: e.to_string() }));
                }
            }
        }
    }
}

fn parse_row(e: &BytesStart<'_>) -> Result<Option<PostRecord>, String> {
    let mut id = None;
    let mut post_type = None;
    let mut accepted = None;
    let mut parent = None;
    let mut date = None;
    let mut score = 0i64;
    let mut views = None;
    let mut tags = Vec::new();
    let mut body = String::new();
    for attr in e.attributes() {
        let attr = attr.map_err(|e| format!("bad attribute: {e}"))?;
        let value = attr.unescape_value().map_err(|e| format!("bad attribute value: {e}"))?;
        let num = |v: &str| v.parse::<u64>().map_err(|_| format!("non-numeric value `{v}`"));
        match attr.key.as_ref() {
            b"Id" => id = Some(num(&value)?),
            b"PostTypeId" => post_type = Some(num(&value)?),
            b"AcceptedAnswerId" => accepted = Some(num(&value)?),
            b"ParentId" => parent = Some(num(&value)?),
            b"CreationDate" => {
                date = Some(Date::parse(&value).ok_or_else(|| format!("bad CreationDate `{value}`"))?)
            }
            b"Score" => score = value.parse().map_err(|_| format!("bad Score `{value}`"))?,
            b"ViewCount" => views = Some(num(&value)?),
            b"Tags" => tags = parse_tags(&value),
            b"Body" => body = value.into_owned(),
            _ => {}
        }
    }
    let id = id.ok_or("missing Id")?;
    let post_type = match post_type.ok_or("missing PostTypeId")? {
        1 => PostType::Question,
        2 => PostType::Answer,
        _ => return Ok(None),
    };
    let creation_date = date.ok_or("missing CreationDate")?;
    if post_type == PostType::Answer && parent.is_none() {
        return Err(format!("answer {id} has no ParentId"));
    }
    Ok(Some(PostRecord {
        id,
        post_type,
        accepted_answer_id: accepted,
        parent_id: parent,
        creation_date,
        score,
        view_count: views,
        tags,
        body,
    }))
}

/// Accepts both `<java><aes>` and `|java|aes|` tag spellings.
fn parse_tags(raw: &str) -> Vec<String> {
    raw.split(['<', '>', '|']).filter(|t| !t.is_empty()).map(str::to_string).collect()
}
