use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::regions;

/// Photos per grid page unless the caller asks otherwise.
pub const DEFAULT_PAGE_SIZE: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("year_start {start} is after year_end {end}")]
    InvertedYears { start: i32, end: i32 },
    #[error("county filter requires a state")]
    CountyWithoutState,
    #[error("county `{0}` is not a five-digit FIPS code")]
    InvalidCountyFips(String),
    #[error("county {county} is not in state `{state}`")]
    CountyStateMismatch { county: String, state: String },
    #[error("theme path contains an empty node")]
    EmptyThemeNode,
    #[error("page_size must be at least 1")]
    ZeroPageSize,
}

/// The one selection shared by every linked view.
///
/// Facets combine by conjunction; `photographers` is a disjunction within
/// its facet and an empty set means "all photographers".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterState {
    pub state: Option<String>,
    pub county_fips: Option<String>,
    pub photographers: BTreeSet<String>,
    pub year_start: Option<i32>,
    pub year_end: Option<i32>,
    pub theme_prefix: Option<Vec<String>>,
    pub page: usize,
    pub page_size: usize,
}

impl Default for FilterState {
    fn default() -> Self {
        Self {
            state: None,
            county_fips: None,
            photographers: BTreeSet::new(),
            year_start: None,
            year_end: None,
            theme_prefix: None,
            page: 0,
            page_size: DEFAULT_PAGE_SIZE,
        }
    }
}

impl FilterState {
    pub fn state(mut self, state: impl Into<String>) -> Self {
        self.state = Some(state.into());
        self
    }

    pub fn county(mut self, fips: impl Into<String>) -> Self {
        self.county_fips = Some(fips.into());
        self
    }

    pub fn photographer(mut self, name: impl Into<String>) -> Self {
        self.photographers.insert(name.into());
        self
    }

    pub fn years(mut self, start: Option<i32>, end: Option<i32>) -> Self {
        self.year_start = start;
        self.year_end = end;
        self
    }

    pub fn theme<S: Into<String>>(mut self, path: impl IntoIterator<Item = S>) -> Self {
        self.theme_prefix = Some(path.into_iter().map(Into::into).collect());
        self
    }

    pub fn page(mut self, page: usize, page_size: usize) -> Self {
        self.page = page;
        self.page_size = page_size;
        self
    }

    /// True when no facet is constrained (pagination is ignored).
    pub fn is_unconstrained(&self) -> bool {
        self.state.is_none()
            && self.county_fips.is_none()
            && self.photographers.is_empty()
            && self.year_start.is_none()
            && self.year_end.is_none()
            && self.theme_prefix.is_none()
    }

    pub fn validate(&self) -> Result<(), FilterError> {
        if let (Some(start), Some(end)) = (self.year_start, self.year_end) {
            if start > end {
                return Err(FilterError::InvertedYears { start, end });
            }
        }
        if let Some(county) = &self.county_fips {
            if !regions::is_county_fips(county) {
                return Err(FilterError::InvalidCountyFips(county.clone()));
            }
            let state = self.state.as_ref().ok_or(FilterError::CountyWithoutState)?;
            let consistent = regions::by_name(state).is_some_and(|r| county.starts_with(r.fips));
            if !consistent {
                return Err(FilterError::CountyStateMismatch {
                    county: county.clone(),
                    state: state.clone(),
                });
            }
        }
        if let Some(path) = &self.theme_prefix {
            if path.is_empty() || path.iter().any(String::is_empty) {
                return Err(FilterError::EmptyThemeNode);
            }
        }
        if self.page_size == 0 {
            return Err(FilterError::ZeroPageSize);
        }
        Ok(())
    }
}
