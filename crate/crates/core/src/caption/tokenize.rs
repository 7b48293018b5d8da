use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use crate::gazetteer::Gazetteer;
use crate::ingest::PhotoRecord;

const STOPWORDS: &str = include_str!("stopwords.txt");

pub fn stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| STOPWORDS.lines().map(str::trim).filter(|w| !w.is_empty()).collect())
}

pub fn is_stopword(token: &str) -> bool {
    stopwords().contains(token)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedCaption {
    pub photo_id: String,
    pub tokens: Vec<String>,
}

/// Lowercases, splits on every non-alphanumeric character, and drops
/// stopwords, gazetteer words, one-character tokens, and pure numbers.
pub fn tokenize_caption(text: &str, gazetteer: &Gazetteer) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .filter(|t| !t.chars().all(|c| c.is_ascii_digit()))
        .filter(|t| !is_stopword(t) && !gazetteer.contains(t))
        .map(str::to_string)
        .collect()
}

/// Token lists for every captioned record, keyed by photo id.
pub fn tokenize_records(records: &[PhotoRecord], gazetteer: &Gazetteer) -> BTreeMap<String, Vec<String>> {
    records
        .iter()
        .filter_map(|r| {
            let caption = r.caption.as_deref()?;
            Some((r.id.clone(), tokenize_caption(caption, gazetteer)))
        })
        .collect()
}
