use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use rayon::slice::ParallelSliceMut;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::filter::{FilterError, FilterState};
use super::postings::{intersect, union_disjoint, Postings};
use super::theme::{ThemeSkeleton, ThemeTree};
use crate::ingest::PhotoRecord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("duplicate photo id `{0}`")]
    DuplicateId(String),
    #[error("archive too large for the index ({0} records)")]
    TooLarge(usize),
}

/// One timeline cell: photos by `photographer` in `year`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimelineCell {
    pub photographer: String,
    pub year: i32,
    pub count: usize,
}

/// Counts for every linked view, all computed under the same complete filter.
///
/// Records lacking a facet's field count toward `total` only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateSet {
    pub total: usize,
    pub county_counts: BTreeMap<String, usize>,
    pub state_counts: BTreeMap<String, usize>,
    #[serde(with = "timeline_cells")]
    pub timeline: BTreeMap<(String, i32), usize>,
    /// Keyed by the `/`-joined node path; only nodes with at least one match appear.
    pub theme_counts: BTreeMap<String, usize>,
}

mod timeline_cells {
    use super::TimelineCell;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(String, i32), usize>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|((photographer, year), count)| TimelineCell {
                photographer: photographer.clone(),
                year: *year,
                count: *count,
            })
            .collect::<Vec<_>>()
            .serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<(String, i32), usize>, D::Error> {
        Ok(Vec::<TimelineCell>::deserialize(deserializer)?
            .into_iter()
            .map(|c| ((c.photographer, c.year), c.count))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub aggregates: AggregateSet,
    pub page_records: Vec<PhotoRecord>,
    pub page: usize,
    pub total_pages: usize,
}

/// Immutable inverted index: one posting list per facet value, intersected at
/// query time. Records are held in ascending id order and posting lists refer
/// to positions in that order, so every match set comes out id-sorted.
#[derive(Debug, Clone, Default)]
pub struct FacetIndex {
    records: Vec<PhotoRecord>,
    positions: HashMap<String, u32>,
    by_state: HashMap<String, Postings>,
    by_county: HashMap<String, Postings>,
    by_photographer: HashMap<String, Postings>,
    by_year: BTreeMap<i32, Postings>,
    by_theme: HashMap<Vec<String>, Postings>,
    themes: ThemeSkeleton,
}

pub fn build_index(records: Vec<PhotoRecord>) -> Result<FacetIndex, IndexError> {
    FacetIndex::build(records)
}

impl FacetIndex {
    pub fn build(mut records: Vec<PhotoRecord>) -> Result<Self, IndexError> {
        if u32::try_from(records.len()).is_err() {
            return Err(IndexError::TooLarge(records.len()));
        }
        records.par_sort_unstable_by(|a, b| a.id.cmp(&b.id));
        if let Some(pair) = records.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(IndexError::DuplicateId(pair[0].id.clone()));
        }

        let mut index = FacetIndex::default();
        for (pos, r) in records.iter().enumerate() {
            let pos = pos as u32;
            index.positions.insert(r.id.clone(), pos);
            if let Some(state) = &r.state {
                index.by_state.entry(state.clone()).or_default().push(pos);
            }
            if let Some(county) = &r.county_fips {
                index.by_county.entry(county.clone()).or_default().push(pos);
            }
            if let Some(name) = &r.photographer {
                index.by_photographer.entry(name.clone()).or_default().push(pos);
            }
            if let Some(year) = r.year {
                index.by_year.entry(year).or_default().push(pos);
            }
            if let Some(path) = &r.theme_path {
                index.themes.insert(path);
                for depth in 1..=path.len() {
                    index
                        .by_theme
                        .entry(path[..depth].to_vec())
                        .or_default()
                        .push(pos);
                }
            }
        }
        index.records = records;
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// All records in ascending id order.
    pub fn records(&self) -> &[PhotoRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Option<&PhotoRecord> {
        self.positions.get(id).map(|&p| &self.records[p as usize])
    }

    /// Positions of the records matching every facet of `filter`, ascending.
    fn matching(&self, filter: &FilterState) -> Postings {
        static EMPTY: Postings = Vec::new();
        let mut constraints: Vec<Cow<'_, Postings>> = Vec::new();
        if let Some(state) = &filter.state {
            constraints.push(Cow::Borrowed(self.by_state.get(state).unwrap_or(&EMPTY)));
        }
        if let Some(county) = &filter.county_fips {
            constraints.push(Cow::Borrowed(self.by_county.get(county).unwrap_or(&EMPTY)));
        }
        if !filter.photographers.is_empty() {
            let lists = filter
                .photographers
                .iter()
                .filter_map(|name| self.by_photographer.get(name));
            constraints.push(Cow::Owned(union_disjoint(lists)));
        }
        if filter.year_start.is_some() || filter.year_end.is_some() {
            let lo = filter.year_start.unwrap_or(i32::MIN);
            let hi = filter.year_end.unwrap_or(i32::MAX);
            let lists = self.by_year.range(lo..=hi).map(|(_, list)| list);
            constraints.push(Cow::Owned(union_disjoint(lists)));
        }
        if let Some(prefix) = &filter.theme_prefix {
            constraints.push(Cow::Borrowed(self.by_theme.get(prefix).unwrap_or(&EMPTY)));
        }

        // Smallest first keeps every intermediate intersection small.
        constraints.sort_by_key(|list| list.len());
        let mut lists = constraints.into_iter();
        match lists.next() {
            None => (0..self.records.len() as u32).collect(),
            Some(first) => lists.fold(first.into_owned(), |acc, list| intersect(&acc, &list)),
        }
    }

    fn aggregate(&self, matches: &[u32]) -> AggregateSet {
        let mut agg = AggregateSet { total: matches.len(), ..Default::default() };
        for &pos in matches {
            let r = &self.records[pos as usize];
            if let Some(state) = &r.state {
                *agg.state_counts.entry(state.clone()).or_default() += 1;
            }
            if let Some(county) = &r.county_fips {
                *agg.county_counts.entry(county.clone()).or_default() += 1;
            }
            if let (Some(name), Some(year)) = (&r.photographer, r.year) {
                *agg.timeline.entry((name.clone(), year)).or_default() += 1;
            }
            if let Some(path) = &r.theme_path {
                let mut key = String::new();
                for node in path {
                    if !key.is_empty() {
                        key.push('/');
                    }
                    key.push_str(node);
                    *agg.theme_counts.entry(key.clone()).or_default() += 1;
                }
            }
        }
        agg
    }

    /// Aggregates only, without materializing a page.
    pub fn aggregates(&self, filter: &FilterState) -> Result<AggregateSet, FilterError> {
        filter.validate()?;
        Ok(self.aggregate(&self.matching(filter)))
    }

    pub fn query(&self, filter: &FilterState) -> Result<QueryResult, FilterError> {
        filter.validate()?;
        let matches = self.matching(filter);
        let aggregates = self.aggregate(&matches);
        let total_pages = matches.len().div_ceil(filter.page_size);
        let page_records = matches
            .iter()
            .skip(filter.page.saturating_mul(filter.page_size))
            .take(filter.page_size)
            .map(|&pos| self.records[pos as usize].clone())
            .collect();
        Ok(QueryResult { aggregates, page_records, page: filter.page, total_pages })
    }

    /// Every theme node in the archive, counted under `filter`. Nodes with no
    /// matching photos are kept with count 0.
    pub fn theme_tree(&self, filter: &FilterState) -> Result<ThemeTree, FilterError> {
        let agg = self.aggregates(filter)?;
        Ok(self.themes.with_counts(&agg.theme_counts))
    }
}
