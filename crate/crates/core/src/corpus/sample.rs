//! Stratified sampling: recent posts, top-scored posts, then a uniform draw
//! from whatever is left. Strata are disjoint and filled in that order.

use std::collections::HashSet;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bundle::PostBundle;
use crate::error::CorpusError;

pub const RECENT_YEARS: std::ops::RangeInclusive<i32> = 2020..=2023;

pub trait Sampleable {
    fn id(&self) -> u64;
    fn year(&self) -> i32;
    fn score(&self) -> i64;
}

impl Sampleable for PostBundle {
    fn id(&self) -> u64 {
        self.question.id
    }
    fn year(&self) -> i32 {
        self.question.creation_date.year
    }
    fn score(&self) -> i64 {
        self.question.score
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    Recent,
    TopScore,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quotas {
    pub recent: usize,
    pub top_score: usize,
    pub random: usize,
}

/// 40/30/30 split of `n`, each share rounded half-up; the random stratum
/// absorbs the rounding remainder.
pub fn quotas(n: usize) -> Quotas {
    let recent = (n * 4 + 5) / 10;
    let top_score = ((n * 3 + 5) / 10).min(n - recent);
    Quotas { recent, top_score, random: n - recent - top_score }
}

#[derive(Debug, Clone)]
pub struct Sample<T> {
    /// Picks ordered by stratum, then id.
    pub picks: Vec<(Stratum, T)>,
    pub diagnostics: Vec<String>,
}

impl<T> Sample<T> {
    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn count(&self, stratum: Stratum) -> usize {
        self.picks.iter().filter(|(s, _)| *s == stratum).count()
    }

    pub fn into_items(self) -> Vec<T> {
        self.picks.into_iter().map(|(_, t)| t).collect()
    }
}

pub fn stratified_sample<T: Sampleable + Clone>(
    items: &[T],
    n: usize,
    seed: u64,
) -> Result<Sample<T>, CorpusError> {
    if n > items.len() {
        return Err(CorpusError::SampleTooLarge { requested: n, available: items.len() });
    }
    let mut diagnostics = Vec::new();
    let q = quotas(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Pools are id-ordered so the draw does not depend on input order.
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].id());
    let mut taken: HashSet<usize> = HashSet::with_capacity(n);
    let mut picks: Vec<(Stratum, usize)> = Vec::with_capacity(n);

    let recent: Vec<usize> = order.iter().copied().filter(|&i| RECENT_YEARS.contains(&items[i].year())).collect();
    let recent_n = q.recent.min(recent.len());
    if recent_n < q.recent {
        diagnostics.push(format!(
            "recent stratum short by {} ({} of {} available); moved to random",
            q.recent - recent_n,
            recent.len(),
            q.recent
        ));
    }
    for k in index::sample(&mut rng, recent.len(), recent_n).into_iter() {
        taken.insert(recent[k]);
        picks.push((Stratum::Recent, recent[k]));
    }

    let mut by_score: Vec<usize> = order.iter().copied().filter(|i| !taken.contains(i)).collect();
    by_score.sort_by(|&a, &b| items[b].score().cmp(&items[a].score()).then(items[a].id().cmp(&items[b].id())));
    let top_n = q.top_score.min(by_score.len());
    if top_n < q.top_score {
        diagnostics.push(format!("top-score stratum short by {}; moved to random", q.top_score - top_n));
    }
    for &i in &by_score[..top_n] {
        taken.insert(i);
        picks.push((Stratum::TopScore, i));
    }

    let rest: Vec<usize> = order.iter().copied().filter(|i| !taken.contains(i)).collect();
    let random_n = n - picks.len();
    for k in index::sample(&mut rng, rest.len(), random_n).into_iter() {
        picks.push((Stratum::Random, rest[k]));
    }

    picks.sort_by_key(|&(s, i)| (s, items[i].id()));
    Ok(Sample { picks: picks.into_iter().map(|(s, i)| (s, items[i].clone())).collect(), diagnostics })
}
