use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ingest::PhotoRecord;

/// Lowercase place-name words drawn from the archive's own state and county
/// fields. Caption tokens found here are treated as geographic and dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gazetteer {
    tokens: BTreeSet<String>,
}

impl Gazetteer {
    pub fn from_records(records: &[PhotoRecord]) -> Self {
        let mut gazetteer = Self::default();
        for r in records {
            for name in [&r.state, &r.county_name].into_iter().flatten() {
                gazetteer.add_name(name);
            }
        }
        gazetteer
    }

    /// Adds every word of a place name. Words are split on the same
    /// non-alphanumeric boundaries the caption tokenizer uses, so
    /// "St. Louis" contributes "st" and "louis".
    pub fn add_name(&mut self, name: &str) {
        for word in name.split(|c: char| !c.is_alphanumeric()) {
            let word = word.to_lowercase();
            if word.chars().count() >= 2 {
                self.tokens.insert(word);
            }
        }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.tokens.contains(token)
    }

    pub fn tokens(&self) -> &BTreeSet<String> {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for Gazetteer {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut gazetteer = Self::default();
        for name in iter {
            gazetteer.add_name(name.as_ref());
        }
        gazetteer
    }
}

/// Builds the caption-filtering gazetteer for an archive.
pub fn build_gazetteer(records: &[PhotoRecord]) -> Gazetteer {
    Gazetteer::from_records(records)
}
