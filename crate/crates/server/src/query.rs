//! Filter state as a URL query string.
//!
//! ```text
//! state=Texas&county=48453&photographer=Russell+Lee&photographer=Jack+Delano
//!     &year_start=1936&year_end=1940&theme=People/Children&page=2&page_size=60
//! ```
//!
//! `photographer` may repeat; every other key may appear at most once.
//! Empty values mean "unset". Unknown keys are rejected so that a typo never
//! silently widens a query.

use explorer_core::ingest::THEME_SEPARATOR;
use explorer_core::regions;
use explorer_core::FilterState;
use url::form_urlencoded;

use crate::error::ApiError;

const KEYS: [&str; 8] = [
    "state",
    "county",
    "photographer",
    "year_start",
    "year_end",
    "theme",
    "page",
    "page_size",
];

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ApiError> {
    value
        .trim()
        .parse()
        .map_err(|_| ApiError::invalid_filter(format!("`{key}` must be an integer, got `{value}`")))
}

/// Decodes a raw query string. `default_page_size` applies when the query has
/// no `page_size`. The result is validated.
pub fn decode_filter(raw: Option<&str>, default_page_size: usize) -> Result<FilterState, ApiError> {
    let mut filter = FilterState { page_size: default_page_size, ..Default::default() };
    let mut seen = std::collections::BTreeSet::new();
    for (key, value) in form_urlencoded::parse(raw.unwrap_or("").as_bytes()) {
        let key = key.as_ref();
        if !KEYS.contains(&key) {
            return Err(ApiError::invalid_filter(format!("unknown parameter `{key}`")));
        }
        if key != "photographer" && !seen.insert(key.to_string()) {
            return Err(ApiError::invalid_filter(format!("parameter `{key}` given more than once")));
        }
        let value = value.trim();
        if value.is_empty() {
            continue;
        }
        match key {
            "state" => {
                let region = regions::lookup(value)
                    .ok_or_else(|| ApiError::invalid_filter(format!("unknown state `{value}`")))?;
                filter.state = Some(region.name.to_string());
            }
            "county" => filter.county_fips = Some(value.to_string()),
            "photographer" => {
                filter.photographers.insert(value.to_string());
            }
            "year_start" => filter.year_start = Some(number(key, value)?),
            "year_end" => filter.year_end = Some(number(key, value)?),
            "theme" => {
                filter.theme_prefix = Some(value.split(THEME_SEPARATOR).map(|s| s.trim().to_string()).collect())
            }
            "page" => filter.page = number(key, value)?,
            "page_size" => filter.page_size = number(key, value)?,
            _ => unreachable!(),
        }
    }
    filter.validate()?;
    Ok(filter)
}

/// Inverse of [`decode_filter`] for valid filters. Keys at their defaults are omitted.
pub fn encode_filter(filter: &FilterState, default_page_size: usize) -> String {
    let mut out = form_urlencoded::Serializer::new(String::new());
    if let Some(state) = &filter.state {
        out.append_pair("state", state);
    }
    if let Some(county) = &filter.county_fips {
        out.append_pair("county", county);
    }
    for p in &filter.photographers {
        out.append_pair("photographer", p);
    }
    if let Some(y) = filter.year_start {
        out.append_pair("year_start", &y.to_string());
    }
    if let Some(y) = filter.year_end {
        out.append_pair("year_end", &y.to_string());
    }
    if let Some(path) = &filter.theme_prefix {
        out.append_pair("theme", &path.join(&THEME_SEPARATOR.to_string()));
    }
    if filter.page != 0 {
        out.append_pair("page", &filter.page.to_string());
    }
    if filter.page_size != default_page_size {
        out.append_pair("page_size", &filter.page_size.to_string());
    }
    out.finish()
}
