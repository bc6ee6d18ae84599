//! Brute-force recounts used as oracles for the report aggregations.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use symlint_core::corpus::ManifestEntry;
use symlint_core::engine::{Finding, Status};
use symlint_core::report::RuleTally;

pub fn catalog() -> Vec<String> {
    symlint_core::builtin_ruleset().ids().into_iter().map(String::from).collect()
}

/// Recount: dedupe confirmed (rule, post) pairs, then split by solved.
pub fn brute_tally(findings: &[Finding], posts: &[ManifestEntry]) -> Vec<RuleTally> {
    catalog()
        .into_iter()
        .map(|rule| {
            let confirmed: Vec<&Finding> =
                findings.iter().filter(|f| f.rule_id == rule && f.status == Status::Confirmed).collect();
            let ids: HashSet<u64> =
                confirmed.iter().map(|f| f.source_id.split('/').next().unwrap().parse().unwrap()).collect();
            let solved = posts.iter().filter(|p| ids.contains(&p.id) && p.solved).count() as u64;
            let pending = posts.iter().filter(|p| ids.contains(&p.id) && !p.solved).count() as u64;
            RuleTally {
                rule_id: rule,
                solved_posts: solved,
                pending_posts: pending,
                total_posts: solved + pending,
                total_findings: confirmed.len() as u64,
            }
        })
        .collect()
}

pub fn brute_years(posts: &[ManifestEntry]) -> BTreeMap<i32, u64> {
    let years: BTreeSet<i32> = posts.iter().map(|p| p.year).collect();
    years.into_iter().map(|y| (y, posts.iter().filter(|p| p.year == y).count() as u64)).collect()
}

pub fn category(t: &str) -> usize {
    let mode = t.split('/').nth(1).unwrap_or("ECB");
    match mode {
        "ECB" => 0,
        "CBC" => 1,
        "GCM" => 2,
        _ => 3,
    }
}

/// Recount of mode shares: per year, each AES post votes once for every
/// distinct mode it uses.
pub fn brute_modes(posts: &[ManifestEntry], sites: &[(u64, &str)]) -> BTreeMap<i32, [f64; 4]> {
    let mut out = BTreeMap::new();
    for year in posts.iter().map(|p| p.year).collect::<BTreeSet<_>>() {
        let mut votes = [0u64; 4];
        for p in posts.iter().filter(|p| p.year == year) {
            let cats: BTreeSet<usize> = sites
                .iter()
                .filter(|(id, t)| *id == p.id && t.starts_with("AES"))
                .map(|(_, t)| category(t))
                .collect();
            for c in cats {
                votes[c] += 1;
            }
        }
        let total: u64 = votes.iter().sum();
        if total > 0 {
            out.insert(year, votes.map(|v| v as f64 / total as f64));
        }
    }
    out
}

