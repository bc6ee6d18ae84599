//! Question + accepted-answer bundles.
//!
//! Dump order says nothing about where an answer sits relative to its
//! question, so assembly reads the source twice. Pass one records the
//! questions and answers whose bodies qualify; pass two picks up the
//! question rows, accepted answers and answer counts those records point at.
//! Only qualifying posts are held in memory.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::dump::{PostRecord, PostType};
use crate::error::CorpusError;
use crate::extractor::{Section, SourceText};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostBundle {
    pub question: PostRecord,
    pub accepted_answer: Option<PostRecord>,
    pub other_answer_count: u32,
    pub solved: bool,
}

impl PostBundle {
    pub fn id(&self) -> u64 {
        self.question.id
    }

    pub fn year(&self) -> i32 {
        self.question.creation_date.year
    }

    /// The texts a scan covers: the question and, when present, the
    /// accepted answer. Other answers are never scanned.
    pub fn sources(&self) -> Vec<SourceText> {
        let qid = self.question.id;
        let mut out = vec![SourceText::html(self.question.body.clone(), Section::Question, qid.to_string())];
        if let Some(a) = &self.accepted_answer {
            out.push(SourceText::html(a.body.clone(), Section::AcceptedAnswer, answer_source_id(qid, a.id)));
        }
        out
    }
}

pub fn answer_source_id(question_id: u64, answer_id: u64) -> String {
    format!("{question_id}/{answer_id}")
}

/// Question id encoded in a bundle source id (`"17"` or `"17/42"`).
pub fn post_id_of(source_id: &str) -> Option<u64> {
    source_id.split('/').next()?.parse().ok()
}

/// The JCA symmetric-cipher pattern used to build the corpus. Matches
/// `Cipher.getInstance(` followed by a quote (literal or `&quot;`) and a
/// symmetric algorithm name. `RC` is a prefix and catches RC2/RC4/RC5/RC6.
static CORPUS_PATTERN: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r#"Cipher\.getInstance\((?:"|&quot;?)(?i:AES|DES|DESede|RC|Blowfish|ChaCha20)"#).unwrap()
});

pub fn body_qualifies(body: &str) -> bool {
    // Cheap reject before the regex; nearly every row lacks the call.
    body.contains("Cipher.getInstance(") && CORPUS_PATTERN.is_match(body)
}

/// True iff the pattern occurs in the question or the accepted answer.
/// Other answers never qualify a post.
pub fn corpus_filter(b: &PostBundle) -> bool {
    body_qualifies(&b.question.body)
        || b.accepted_answer.as_ref().is_some_and(|a| body_qualifies(&a.body))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection<'a> {
    /// Every question becomes a bundle.
    All,
    /// Only questions that pass [`corpus_filter`].
    CorpusFilter,
    /// Only the listed question ids.
    Ids(&'a HashSet<u64>),
}

#[derive(Debug, Default)]
pub struct Assembly {
    /// Bundles ordered by question id.
    pub bundles: Vec<PostBundle>,
    pub diagnostics: Vec<String>,
}

/// Assembles bundles from an in-memory record list (all questions).
pub fn assemble_bundles(records: &[PostRecord]) -> Assembly {
    let open = || Ok::<_, CorpusError>(records.iter().cloned().map(Ok));
    assemble_with(open, Selection::All).expect("in-memory records never fail")
}

/// Two-pass assembly over a re-openable record source.
pub fn assemble_with<F, I>(mut open: F, selection: Selection<'_>) -> Result<Assembly, CorpusError>
where
    F: FnMut() -> Result<I, CorpusError>,
    I: Iterator<Item = Result<PostRecord, CorpusError>>,
{
    let keep_all = selection == Selection::All;
    let filtering = selection == Selection::CorpusFilter;
    let wanted = |rec: &PostRecord| match selection {
        Selection::All => true,
        Selection::CorpusFilter => body_qualifies(&rec.body),
        Selection::Ids(ids) => ids.contains(&rec.id),
    };
    // Pass 1.
    let mut questions: BTreeMap<u64, PostRecord> = BTreeMap::new();
    let mut matching_answers: HashMap<u64, PostRecord> = HashMap::new();
    for rec in open()? {
        let rec = rec?;
        match rec.post_type {
            PostType::Question if wanted(&rec) => {
                questions.insert(rec.id, rec);
            }
            PostType::Answer if filtering && body_qualifies(&rec.body) => {
                matching_answers.insert(rec.id, rec);
            }
            _ => {}
        }
    }
    let answer_parents: HashSet<u64> =
        matching_answers.values().filter_map(|a| a.parent_id).collect();
    let wanted_answers: HashSet<u64> =
        questions.values().filter_map(|q| q.accepted_answer_id).collect();

    // Pass 2.
    let mut answer_counts: HashMap<u64, u32> = HashMap::new();
    let mut accepted: HashMap<u64, PostRecord> = HashMap::new();
    for rec in open()? {
        let rec = rec?;
        match rec.post_type {
            PostType::Question if !questions.contains_key(&rec.id) => {
                let via_answer = rec
                    .accepted_answer_id
                    .and_then(|a| matching_answers.get(&a))
                    .is_some_and(|a| a.parent_id == Some(rec.id));
                if via_answer {
                    questions.insert(rec.id, rec);
                }
            }
            PostType::Answer => {
                let Some(parent) = rec.parent_id else { continue };
                if questions.contains_key(&parent) || answer_parents.contains(&parent) || keep_all {
                    *answer_counts.entry(parent).or_default() += 1;
                    if wanted_answers.contains(&rec.id) {
                        accepted.insert(rec.id, rec);
                    }
                }
            }
            _ => {}
        }
    }

    let mut out = Assembly::default();
    for (id, q) in questions {
        let answer = q.accepted_answer_id.and_then(|aid| {
            accepted.remove(&aid).or_else(|| matching_answers.remove(&aid))
        });
        let answer = match (q.accepted_answer_id, answer) {
            (Some(_), Some(a)) if a.parent_id == Some(id) => Some(a),
            (Some(aid), _) => {
                out.diagnostics.push(format!("question {id}: accepted answer {aid} not found"));
                None
            }
            (None, _) => None,
        };
        let total = answer_counts.get(&id).copied().unwrap_or(0);
        let other = total.saturating_sub(u32::from(answer.is_some()));
        out.bundles.push(PostBundle {
            solved: answer.is_some(),
            question: q,
            accepted_answer: answer,
            other_answer_count: other,
        });
    }
    Ok(out)
}
