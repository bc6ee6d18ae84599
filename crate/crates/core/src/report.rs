//! Aggregation of scan results into per-rule, per-year and per-mode tables,
//! plus rendering and an inter-annotator agreement statistic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{post_id_of, ManifestEntry, PostBundle};
use crate::engine::{CipherSite, Finding, KeySizeSite, ModeCategory, Status};
use crate::error::ReportError;
use crate::extractor::Section;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// What aggregation needs to know about a post.
pub trait PostMeta {
    fn post_id(&self) -> u64;
    fn year(&self) -> i32;
    fn solved(&self) -> bool;
    fn score(&self) -> i64;
    fn view_count(&self) -> Option<u64>;
}

impl PostMeta for PostBundle {
    fn post_id(&self) -> u64 {
        self.question.id
    }
    fn year(&self) -> i32 {
        self.question.creation_date.year
    }
    fn solved(&self) -> bool {
        self.solved
    }
    fn score(&self) -> i64 {
        self.question.score
    }
    fn view_count(&self) -> Option<u64> {
        self.question.view_count
    }
}

impl PostMeta for ManifestEntry {
    fn post_id(&self) -> u64 {
        self.id
    }
    fn year(&self) -> i32 {
        self.year
    }
    fn solved(&self) -> bool {
        self.solved
    }
    fn score(&self) -> i64 {
        self.score
    }
    fn view_count(&self) -> Option<u64> {
        self.view_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTally {
    pub rule_id: String,
    pub solved_posts: u64,
    pub pending_posts: u64,
    pub total_posts: u64,
    pub total_findings: u64,
}

/// Non-confirmed findings per rule, kept out of the main tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnconfirmedTally {
    pub rule_id: String,
    pub needs_review: u64,
    pub dismissed: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ModeShares {
    pub ecb: f64,
    pub cbc: f64,
    pub gcm: f64,
    pub other: f64,
    /// AES-using posts that year.
    pub posts: u64,
}

impl ModeShares {
    pub fn sum(&self) -> f64 {
        self.ecb + self.cbc + self.gcm + self.other
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusMeta {
    pub posts: u64,
    pub solved: u64,
    pub pending: u64,
    pub mean_score: f64,
    /// Averaged over questions that carry a view count.
    pub mean_views: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub schema_version: u32,
    pub ruleset_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub corpus_meta: CorpusMeta,
    pub tallies: Vec<RuleTally>,
    pub unconfirmed: Vec<UnconfirmedTally>,
    pub posts_per_year: BTreeMap<i32, u64>,
    pub mode_shares: BTreeMap<i32, ModeShares>,
    /// Posts observing each key size, in bits.
    pub key_sizes: BTreeMap<u64, u64>,
}

fn counts_toward_post(section: Section) -> bool {
    matches!(section, Section::Question | Section::AcceptedAnswer)
}

/// Confirmed (rule, post) → finding counts. Merging two counters is the same
/// as counting the concatenated inputs, so partial counts from parallel
/// workers can be combined in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleCounter {
    confirmed: BTreeMap<String, BTreeMap<u64, u64>>,
    unconfirmed: BTreeMap<String, (u64, u64)>,
}

impl RuleCounter {
    pub fn add(&mut self, f: &Finding) -> Result<(), ReportError> {
        let post = post_id_of(&f.source_id).ok_or_else(|| ReportError::OrphanFinding(f.source_id.clone()))?;
        if !counts_toward_post(f.section) {
            return Ok(());
        }
        match f.status {
            Status::Confirmed => {
                *self.confirmed.entry(f.rule_id.clone()).or_default().entry(post).or_default() += 1;
            }
            Status::NeedsReview => self.unconfirmed.entry(f.rule_id.clone()).or_default().0 += 1,
            Status::Dismissed => self.unconfirmed.entry(f.rule_id.clone()).or_default().1 += 1,
        }
        Ok(())
    }

    pub fn merge(&mut self, other: RuleCounter) {
        for (rule, posts) in other.confirmed {
            let mine = self.confirmed.entry(rule).or_default();
            for (post, n) in posts {
                *mine.entry(post).or_default() += n;
            }
        }
        for (rule, (r, d)) in other.unconfirmed {
            let e = self.unconfirmed.entry(rule).or_default();
            e.0 += r;
            e.1 += d;
        }
    }

    /// Tallies in `catalog` order, then any extra rule ids in id order.
    pub fn finish<P: PostMeta>(
        &self,
        posts: &[P],
        catalog: &[String],
    ) -> Result<(Vec<RuleTally>, Vec<UnconfirmedTally>), ReportError> {
        let solved: HashMap<u64, bool> = posts.iter().map(|p| (p.post_id(), p.solved())).collect();
        let mut ids: Vec<String> = catalog.to_vec();
        for id in self.confirmed.keys().chain(self.unconfirmed.keys()) {
            if !ids.contains(id) {
                ids.push(id.clone());
            }
        }
        ids[catalog.len()..].sort();
        let mut tallies = Vec::with_capacity(ids.len());
        let mut unconfirmed = Vec::new();
        for id in &ids {
            let mut t = RuleTally {
                rule_id: id.clone(),
                solved_posts: 0,
                pending_posts: 0,
                total_posts: 0,
                total_findings: 0,
            };
            for (post, n) in self.confirmed.get(id).into_iter().flatten() {
                let s = *solved.get(post).ok_or_else(|| ReportError::OrphanFinding(post.to_string()))?;
                if s {
                    t.solved_posts += 1;
                } else {
                    t.pending_posts += 1;
                }
                t.total_findings += n;
            }
            t.total_posts = t.solved_posts + t.pending_posts;
            tallies.push(t);
            if let Some(&(r, d)) = self.unconfirmed.get(id) {
                unconfirmed.push(UnconfirmedTally { rule_id: id.clone(), needs_review: r, dismissed: d });
            }
        }
        Ok((tallies, unconfirmed))
    }
}

/// A post counts toward a rule when it holds at least one confirmed finding
/// of that rule in its question or accepted answer.
pub fn tally_by_rule<P: PostMeta>(
    findings: &[Finding],
    posts: &[P],
    catalog: &[String],
) -> Result<Vec<RuleTally>, ReportError> {
    let known: BTreeSet<u64> = posts.iter().map(|p| p.post_id()).collect();
    let mut counter = RuleCounter::default();
    for f in findings {
        check_source(&f.source_id, &known)?;
        counter.add(f)?;
    }
    Ok(counter.finish(posts, catalog)?.0)
}

fn check_source(source_id: &str, known: &BTreeSet<u64>) -> Result<u64, ReportError> {
    post_id_of(source_id)
        .filter(|id| known.contains(id))
        .ok_or_else(|| ReportError::OrphanFinding(source_id.to_string()))
}

pub fn posts_per_year<P: PostMeta>(posts: &[P]) -> BTreeMap<i32, u64> {
    let mut out = BTreeMap::new();
    for p in posts {
        *out.entry(p.year()).or_default() += 1;
    }
    out
}

/// Per-year shares of ECB/CBC/GCM/other among AES-using posts. A post adds
/// one count to every distinct mode category it uses; each year is then
/// normalized over the counts. Years without AES posts are absent.
pub fn mode_share_by_year<P: PostMeta>(posts: &[P], sites: &[CipherSite]) -> BTreeMap<i32, ModeShares> {
    let years: HashMap<u64, i32> = posts.iter().map(|p| (p.post_id(), p.year())).collect();
    let mut modes: BTreeMap<u64, BTreeSet<ModeCategory>> = BTreeMap::new();
    for s in sites {
        if !counts_toward_post(s.section) || s.transformation.family() != "AES" {
            continue;
        }
        if let Some(id) = post_id_of(&s.source_id).filter(|id| years.contains_key(id)) {
            modes.entry(id).or_default().insert(s.transformation.mode_category());
        }
    }
    let mut counts: BTreeMap<i32, ([u64; 4], u64)> = BTreeMap::new();
    for (id, cats) in &modes {
        let e = counts.entry(years[id]).or_default();
        e.1 += 1;
        for c in cats {
            e.0[*c as usize] += 1;
        }
    }
    counts
        .into_iter()
        .map(|(year, (c, posts))| {
            let total = c.iter().sum::<u64>() as f64;
            let share = |i: usize| c[i] as f64 / total;
            (year, ModeShares { ecb: share(0), cbc: share(1), gcm: share(2), other: share(3), posts })
        })
        .collect()
}

/// Number of posts observing each key size.
pub fn key_size_column<P: PostMeta>(posts: &[P], sites: &[KeySizeSite]) -> BTreeMap<u64, u64> {
    let known: BTreeSet<u64> = posts.iter().map(|p| p.post_id()).collect();
    let pairs: BTreeSet<(u64, u64)> = sites
        .iter()
        .filter(|s| counts_toward_post(s.section))
        .filter_map(|s| post_id_of(&s.source_id).filter(|id| known.contains(id)).map(|id| (s.bits, id)))
        .collect();
    let mut out = BTreeMap::new();
    for (bits, _) in pairs {
        *out.entry(bits).or_default() += 1;
    }
    out
}

pub fn corpus_meta<P: PostMeta>(posts: &[P]) -> CorpusMeta {
    let n = posts.len() as u64;
    let solved = posts.iter().filter(|p| p.solved()).count() as u64;
    let mean = |sum: f64, n: usize| if n == 0 { 0.0 } else { sum / n as f64 };
    let views: Vec<u64> = posts.iter().filter_map(|p| p.view_count()).collect();
    CorpusMeta {
        posts: n,
        solved,
        pending: n - solved,
        mean_score: mean(posts.iter().map(|p| p.score() as f64).sum(), posts.len()),
        mean_views: mean(views.iter().map(|&v| v as f64).sum(), views.len()),
    }
}

pub struct ReportInput<'a, P> {
    pub posts: &'a [P],
    pub findings: &'a [Finding],
    pub cipher_sites: &'a [CipherSite],
    pub key_sizes: &'a [KeySizeSite],
    pub catalog: &'a [String],
    pub ruleset_version: &'a str,
    pub generated_at: Option<String>,
}

pub fn build_report<P: PostMeta>(input: ReportInput<'_, P>) -> Result<ViolationReport, ReportError> {
    let known: BTreeSet<u64> = input.posts.iter().map(|p| p.post_id()).collect();
    let mut counter = RuleCounter::default();
    for f in input.findings {
        check_source(&f.source_id, &known)?;
        counter.add(f)?;
    }
    let (tallies, unconfirmed) = counter.finish(input.posts, input.catalog)?;
    Ok(ViolationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        ruleset_version: input.ruleset_version.to_string(),
        generated_at: input.generated_at,
        corpus_meta: corpus_meta(input.posts),
        tallies,
        unconfirmed,
        posts_per_year: posts_per_year(input.posts),
        mode_shares: mode_share_by_year(input.posts, input.cipher_sites),
        key_sizes: key_size_column(input.posts, input.key_sizes),
    })
}

/// Cohen's kappa over two equally long label sequences.
pub fn cohen_kappa<L: Eq + Hash>(a: &[L], b: &[L]) -> Result<f64, ReportError> {
    if a.len() != b.len() {
        return Err(ReportError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(ReportError::EmptyLabels);
    }
    let n = a.len() as f64;
    let agree = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64;
    let mut ma: HashMap<&L, u64> = HashMap::new();
    let mut mb: HashMap<&L, u64> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        *ma.entry(x).or_default() += 1;
        *mb.entry(y).or_default() += 1;
    }
    let pe: f64 = ma.iter().map(|(l, &ca)| ca as f64 * mb.get(l).copied().unwrap_or(0) as f64).sum::<f64>() / (n * n);
    let po = agree / n;
    if pe >= 1.0 {
        // Both annotators used one and the same label throughout.
        return Ok(1.0);
    }
    Ok((po - pe) / (1.0 - pe))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(ReportError::UnknownFormat(s.to_string())),
        }
    }
}

pub fn render(r: &ViolationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("report serializes");
            out.push(b'\n');
            out
        }
        ReportFormat::Csv => render_csv(r).into_bytes(),
        ReportFormat::Markdown => render_markdown(r).into_bytes(),
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<ViolationReport, serde_json::Error> {
    serde_json::from_slice(bytes)
}

fn render_csv(r: &ViolationReport) -> String {
    let mut s = String::new();
    let m = &r.corpus_meta;
    let _ = writeln!(s, "# corpus_meta");
    let _ = writeln!(s, "ruleset_version,posts,solved,pending,mean_score,mean_views");
    let _ = writeln!(s, "{},{},{},{},{:.4},{:.4}", r.ruleset_version, m.posts, m.solved, m.pending, m.mean_score, m.mean_views);
    let _ = writeln!(s, "\n# tallies");
    let _ = writeln!(s, "rule_id,solved_posts,pending_posts,total_posts,total_findings");
    for t in &r.tallies {
        let _ = writeln!(s, "{},{},{},{},{}", t.rule_id, t.solved_posts, t.pending_posts, t.total_posts, t.total_findings);
    }
    let _ = writeln!(s, "\n# unconfirmed");
    let _ = writeln!(s, "rule_id,needs_review,dismissed");
    for u in &r.unconfirmed {
        let _ = writeln!(s, "{},{},{}", u.rule_id, u.needs_review, u.dismissed);
    }
    let _ = writeln!(s, "\n# posts_per_year");
    let _ = writeln!(s, "year,posts");
    for (y, n) in &r.posts_per_year {
        let _ = writeln!(s, "{y},{n}");
    }
    let _ = writeln!(s, "\n# mode_shares");
    let _ = writeln!(s, "year,aes_posts,ecb,cbc,gcm,other");
    for (y, m) in &r.mode_shares {
        let _ = writeln!(s, "{y},{},{:.4},{:.4},{:.4},{:.4}", m.posts, m.ecb, m.cbc, m.gcm, m.other);
    }
    let _ = writeln!(s, "\n# key_sizes");
    let _ = writeln!(s, "bits,posts");
    for (b, n) in &r.key_sizes {
        let _ = writeln!(s, "{b},{n}");
    }
    s
}

fn render_markdown(r: &ViolationReport) -> String {
    let mut s = String::new();
    let m = &r.corpus_meta;
    let _ = writeln!(s, "# Security violations\n");
    let _ = writeln!(s, "Ruleset `{}`.", r.ruleset_version);
    if let Some(at) = &r.generated_at {
        let _ = writeln!(s, "Generated {at}.");
    }
    let _ = writeln!(s, "\n## Corpus\n");
    let _ = writeln!(s, "| #Posts | #Solved | #Pending | Score AVG. | View AVG. |");
    let _ = writeln!(s, "|---:|---:|---:|---:|---:|");
    let _ = writeln!(s, "| {} | {} | {} | {:.2} | {:.2} |", m.posts, m.solved, m.pending, m.mean_score, m.mean_views);
    let _ = writeln!(s, "\n## Violations by rule\n");
    let _ = writeln!(s, "| Rule | #Solved Posts | #Pending Posts | #Total | #Findings |");
    let _ = writeln!(s, "|---|---:|---:|---:|---:|");
    for t in &r.tallies {
        let _ = writeln!(s, "| {} | {} | {} | {} | {} |", t.rule_id, t.solved_posts, t.pending_posts, t.total_posts, t.total_findings);
    }
    if !r.unconfirmed.is_empty() {
        let _ = writeln!(s, "\n## Unconfirmed findings\n");
        let _ = writeln!(s, "| Rule | #Needs review | #Dismissed |");
        let _ = writeln!(s, "|---|---:|---:|");
        for u in &r.unconfirmed {
            let _ = writeln!(s, "| {} | {} | {} |", u.rule_id, u.needs_review, u.dismissed);
        }
    }
    let _ = writeln!(s, "\n## Posts per year\n");
    let _ = writeln!(s, "| Year | #Posts |");
    let _ = writeln!(s, "|---|---:|");
    for (y, n) in &r.posts_per_year {
        let _ = writeln!(s, "| {y} | {n} |");
    }
    let _ = writeln!(s, "\n## AES mode shares\n");
    let _ = writeln!(s, "| Year | #AES posts | ECB | CBC | GCM | Other |");
    let _ = writeln!(s, "|---|---:|---:|---:|---:|---:|");
    for (y, m) in &r.mode_shares {
        let _ = writeln!(s, "| {y} | {} | {:.4} | {:.4} | {:.4} | {:.4} |", m.posts, m.ecb, m.cbc, m.gcm, m.other);
    }
    let _ = writeln!(s, "\n## Key sizes\n");
    let _ = writeln!(s, "| Bits | #Posts |");
    let _ = writeln!(s, "|---:|---:|");
    for (b, n) in &r.key_sizes {
        let _ = writeln!(s, "| {b} | {n} |");
    }
    s
}
