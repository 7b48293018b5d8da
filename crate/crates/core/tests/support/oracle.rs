//! Independent brute-force oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the index, TF-IDF, or kNN code paths under test:
//! every result is recomputed from plain records, token lists, or raw vectors.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use explorer_core::{AggregateSet, FilterState, PhotoRecord, QueryResult};
use rand::seq::SliceRandom;
use rand::Rng;

fn matches(r: &PhotoRecord, f: &FilterState) -> bool {
    if let Some(state) = &f.state {
        if r.state.as_ref() != Some(state) {
            return false;
        }
    }
    if let Some(county) = &f.county_fips {
        if r.county_fips.as_ref() != Some(county) {
            return false;
        }
    }
    if !f.photographers.is_empty() {
        match &r.photographer {
            Some(p) if f.photographers.contains(p) => {}
            _ => return false,
        }
    }
    if f.year_start.is_some() || f.year_end.is_some() {
        let Some(year) = r.year else { return false };
        if f.year_start.is_some_and(|s| year < s) || f.year_end.is_some_and(|e| year > e) {
            return false;
        }
    }
    if let Some(prefix) = &f.theme_prefix {
        match &r.theme_path {
            Some(path) if path.len() >= prefix.len() && path[..prefix.len()] == prefix[..] => {}
            _ => return false,
        }
    }
    true
}

/// Linear scan: filter, sort by id, count, paginate.
pub fn brute_force_query(records: &[PhotoRecord], f: &FilterState) -> QueryResult {
    let mut hits: Vec<&PhotoRecord> = records.iter().filter(|r| matches(r, f)).collect();
    hits.sort_by(|a, b| a.id.cmp(&b.id));

    let mut agg = AggregateSet { total: hits.len(), ..Default::default() };
    for r in &hits {
        if let Some(s) = &r.state {
            *agg.state_counts.entry(s.clone()).or_insert(0) += 1;
        }
        if let Some(c) = &r.county_fips {
            *agg.county_counts.entry(c.clone()).or_insert(0) += 1;
        }
        if let (Some(p), Some(y)) = (&r.photographer, r.year) {
            *agg.timeline.entry((p.clone(), y)).or_insert(0) += 1;
        }
        if let Some(path) = &r.theme_path {
            for depth in 1..=path.len() {
                *agg.theme_counts.entry(path[..depth].join("/")).or_insert(0) += 1;
            }
        }
    }

    let start = f.page * f.page_size;
    let page_records = hits
        .iter()
        .skip(start)
        .take(f.page_size)
        .map(|r| (*r).clone())
        .collect();
    let total_pages = hits.len().div_ceil(f.page_size);
    QueryResult { aggregates: agg, page_records, page: f.page, total_pages }
}

/// Every theme node path in the archive with its count under `f`.
pub fn brute_force_theme_counts(records: &[PhotoRecord], f: &FilterState) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for r in records {
        if let Some(path) = &r.theme_path {
            for depth in 1..=path.len() {
                counts.entry(path[..depth].join("/")).or_insert(0);
            }
        }
    }
    for r in records.iter().filter(|r| matches(r, f)) {
        if let Some(path) = &r.theme_path {
            for depth in 1..=path.len() {
                *counts.get_mut(&path[..depth].join("/")).unwrap() += 1;
            }
        }
    }
    counts
}

/// Random valid filter built from values present in the archive plus an
/// occasional value that matches nothing.
pub fn random_filter(rng: &mut impl Rng, records: &[PhotoRecord]) -> FilterState {
    let mut f = FilterState::default();
    let pick = |rng: &mut dyn rand::RngCore| records.choose(rng).cloned();

    if rng.gen_bool(0.4) {
        if let Some(r) = pick(rng) {
            f.state = r.state.clone();
            if r.county_fips.is_some() && rng.gen_bool(0.5) {
                f.county_fips = r.county_fips.clone();
            }
        }
        if f.state.is_none() && rng.gen_bool(0.3) {
            f.state = Some("Wyoming".into());
        }
    }
    if rng.gen_bool(0.4) {
        for _ in 0..rng.gen_range(1..=3) {
            if let Some(p) = pick(rng).and_then(|r| r.photographer) {
                f.photographers.insert(p);
            }
        }
        if rng.gen_bool(0.1) {
            f.photographers.insert("Nobody In Particular".into());
        }
    }
    if rng.gen_bool(0.4) {
        let a = rng.gen_range(1933..=1946);
        let b = rng.gen_range(1933..=1946);
        let (lo, hi) = (a.min(b), a.max(b));
        match rng.gen_range(0..3) {
            0 => f.year_start = Some(lo),
            1 => f.year_end = Some(hi),
            _ => {
                f.year_start = Some(lo);
                f.year_end = Some(hi);
            }
        }
    }
    if rng.gen_bool(0.3) {
        if let Some(path) = pick(rng).and_then(|r| r.theme_path) {
            let depth = rng.gen_range(1..=path.len());
            f.theme_prefix = Some(path[..depth].to_vec());
        }
    }
    f.page_size = *[1usize, 7, 60, 500].choose(rng).unwrap();
    let total_pages_guess = records.len() / f.page_size + 1;
    f.page = if rng.gen_bool(0.7) { 0 } else { rng.gen_range(0..total_pages_guess.min(50)) };
    f
}

/// Smoothed TF-IDF recomputed with hash maps and dense sums.
pub fn tfidf_vectors(docs: &BTreeMap<String, Vec<String>>) -> BTreeMap<String, HashMap<String, f64>> {
    let included: Vec<(&String, &Vec<String>)> = docs.iter().filter(|(_, t)| t.len() >= 3).collect();
    let n = included.len() as f64;
    let mut df: HashMap<&str, f64> = HashMap::new();
    for (_, tokens) in &included {
        let unique: BTreeSet<&str> = tokens.iter().map(String::as_str).collect();
        for t in unique {
            *df.entry(t).or_insert(0.0) += 1.0;
        }
    }
    included
        .into_iter()
        .map(|(id, tokens)| {
            let mut w: HashMap<String, f64> = HashMap::new();
            for t in tokens {
                *w.entry(t.clone()).or_insert(0.0) += 1.0;
            }
            for (t, v) in w.iter_mut() {
                *v *= ((1.0 + n) / (1.0 + df[t.as_str()])).ln() + 1.0;
            }
            let norm = w.values().map(|v| v * v).sum::<f64>().sqrt();
            w.values_mut().for_each(|v| *v /= norm);
            (id.clone(), w)
        })
        .collect()
}

pub fn sparse_cosine(a: &HashMap<String, f64>, b: &HashMap<String, f64>) -> f64 {
    a.iter().map(|(t, w)| w * b.get(t).copied().unwrap_or(0.0)).sum()
}

/// Exhaustive top-k: score every ordered pair, sort by (score desc, id asc), truncate.
pub fn exhaustive_top_k(
    ids: &[String],
    score: impl Fn(usize, usize) -> f64,
    k: usize,
) -> BTreeMap<String, Vec<(String, f64)>> {
    (0..ids.len())
        .map(|i| {
            let mut all: Vec<(String, f64)> = (0..ids.len())
                .filter(|&j| j != i)
                .map(|j| (ids[j].clone(), score(i, j)))
                .collect();
            all.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
            all.truncate(k);
            (ids[i].clone(), all)
        })
        .collect()
}

/// Plain-loop cosine of two raw vectors.
pub fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).clamp(-1.0, 1.0)
}
