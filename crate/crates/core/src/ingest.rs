//! Archive CSV ingestion: parse, standardize, and validate raw metadata rows.
//!
//! Rows that violate a record invariant are rejected with a reason and listed
//! in the [`IngestReport`]; they are never repaired by guessing.

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::regions;

/// Archive columns, in header order.
pub const COLUMNS: [&str; 13] = [
    "id",
    "caption",
    "photographer",
    "year",
    "month",
    "state",
    "county_fips",
    "county_name",
    "lat",
    "lon",
    "theme_path",
    "image_url",
    "thumb_url",
];

pub const MIN_YEAR: i32 = 1929;
pub const MAX_YEAR: i32 = 1949;

/// Separator between theme levels in the `theme_path` column.
pub const THEME_SEPARATOR: char = '/';

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("archive header mismatch: missing {missing:?}, unknown {unknown:?}")]
    Header { missing: Vec<String>, unknown: Vec<String> },
    #[error("archive header columns out of order; expected `{}`", COLUMNS.join(","))]
    HeaderOrder,
    #[error("archive is empty (no header row)")]
    NoHeader,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// One data row as read, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub line_number: u64,
    pub cells: BTreeMap<String, String>,
}

impl RawRecord {
    fn cell(&self, column: &str) -> &str {
        self.cells.get(column).map(String::as_str).unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotoRecord {
    pub id: String,
    pub caption: Option<String>,
    pub photographer: Option<String>,
    pub year: Option<i32>,
    pub month: Option<u32>,
    pub state: Option<String>,
    pub county_fips: Option<String>,
    pub county_name: Option<String>,
    pub lat: Option<f64>,
    pub lon: Option<f64>,
    pub theme_path: Option<Vec<String>>,
    pub image_url: String,
    pub thumb_url: String,
}

impl PhotoRecord {
    /// Checks the record-level invariants. Returns the first violation.
    pub fn validate(&self) -> Result<(), String> {
        if self.id.trim().is_empty() {
            return Err("missing id".into());
        }
        if let Some(year) = self.year {
            if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
                return Err(format!("year {year} out of range {MIN_YEAR}..={MAX_YEAR}"));
            }
        }
        match (self.month, self.year) {
            (Some(_), None) => return Err("month without year".into()),
            (Some(m), Some(_)) if !(1..=12).contains(&m) => {
                return Err(format!("month {m} out of range 1..=12"))
            }
            _ => {}
        }
        if let Some(fips) = &self.county_fips {
            if !regions::is_county_fips(fips) {
                return Err(format!("invalid county_fips `{fips}`"));
            }
            let Some(state) = &self.state else {
                return Err("county_fips without state".into());
            };
            match regions::by_name(state) {
                Some(region) if fips.starts_with(region.fips) => {}
                _ => return Err(format!("county_fips {fips} is not in {state}")),
            }
        }
        match (self.lat, self.lon) {
            (Some(lat), Some(lon)) => {
                if !(-90.0..=90.0).contains(&lat) {
                    return Err(format!("lat {lat} out of range"));
                }
                if !(-180.0..=180.0).contains(&lon) {
                    return Err(format!("lon {lon} out of range"));
                }
            }
            (None, None) => {}
            _ => return Err("lat and lon must be given together".into()),
        }
        if let Some(path) = &self.theme_path {
            if path.is_empty() || path.iter().any(|node| node.is_empty()) {
                return Err("empty theme node".into());
            }
        }
        if self.image_url.is_empty() {
            return Err("missing image_url".into());
        }
        if self.thumb_url.is_empty() {
            return Err("missing thumb_url".into());
        }
        Ok(())
    }

    /// Theme path joined with `/`, as written in the archive.
    pub fn theme_string(&self) -> Option<String> {
        self.theme_path.as_ref().map(|p| p.join("/"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub line_number: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IngestReport {
    pub total_rows: usize,
    pub accepted: usize,
    pub rejected: Vec<Rejection>,
    /// Fraction of accepted rows with a non-empty value, per column.
    pub field_fill_rates: BTreeMap<String, f64>,
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn optional_text(raw: &str) -> Option<String> {
    let text = collapse_whitespace(raw);
    (!text.is_empty()).then_some(text)
}

/// `"Lee, Russell"` becomes `"Russell Lee"`; names with zero or several commas
/// are kept as written.
fn canonical_photographer(raw: &str) -> Option<String> {
    let name = optional_text(raw)?;
    let parts: Vec<&str> = name.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [last, first] if !last.is_empty() && !first.is_empty() => Some(format!("{first} {last}")),
        _ => Some(name),
    }
}

fn parse_optional<T: std::str::FromStr>(raw: &str, column: &str) -> Result<Option<T>, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse()
        .map(Some)
        .map_err(|_| format!("invalid {column} `{raw}`"))
}

/// Standardizes one raw row into a validated record.
pub fn normalize(raw: &RawRecord) -> Result<PhotoRecord, String> {
    let state = match optional_text(raw.cell("state")) {
        Some(s) => Some(
            regions::lookup(&s)
                .ok_or_else(|| format!("unknown state `{s}`"))?
                .name
                .to_string(),
        ),
        None => None,
    };
    let lat: Option<f64> = parse_optional(raw.cell("lat"), "lat")?;
    let lon: Option<f64> = parse_optional(raw.cell("lon"), "lon")?;
    if lat.is_some_and(|v| !v.is_finite()) || lon.is_some_and(|v| !v.is_finite()) {
        return Err("non-finite coordinate".into());
    }
    let theme_path = {
        let raw_path = raw.cell("theme_path").trim();
        (!raw_path.is_empty()).then(|| {
            raw_path
                .split(THEME_SEPARATOR)
                .map(collapse_whitespace)
                .collect::<Vec<_>>()
        })
    };
    let record = PhotoRecord {
        id: raw.cell("id").trim().to_string(),
        caption: optional_text(raw.cell("caption")),
        photographer: canonical_photographer(raw.cell("photographer")),
        year: parse_optional(raw.cell("year"), "year")?,
        month: parse_optional(raw.cell("month"), "month")?,
        state,
        county_fips: optional_text(raw.cell("county_fips")),
        county_name: optional_text(raw.cell("county_name")),
        lat,
        lon,
        theme_path,
        image_url: raw.cell("image_url").trim().to_string(),
        thumb_url: raw.cell("thumb_url").trim().to_string(),
    };
    record.validate()?;
    Ok(record)
}

fn check_header(header: &csv::StringRecord) -> Result<(), IngestError> {
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found == COLUMNS {
        return Ok(());
    }
    let missing: Vec<String> = COLUMNS
        .iter()
        .filter(|c| !found.contains(c))
        .map(|c| c.to_string())
        .collect();
    let unknown: Vec<String> = found
        .iter()
        .filter(|c| !COLUMNS.contains(c))
        .map(|c| c.to_string())
        .collect();
    if missing.is_empty() && unknown.is_empty() {
        Err(IngestError::HeaderOrder)
    } else {
        Err(IngestError::Header { missing, unknown })
    }
}

fn fill_rates(records: &[PhotoRecord]) -> BTreeMap<String, f64> {
    let mut filled = [0usize; COLUMNS.len()];
    for r in records {
        let present = [
            true,
            r.caption.is_some(),
            r.photographer.is_some(),
            r.year.is_some(),
            r.month.is_some(),
            r.state.is_some(),
            r.county_fips.is_some(),
            r.county_name.is_some(),
            r.lat.is_some(),
            r.lon.is_some(),
            r.theme_path.is_some(),
            !r.image_url.is_empty(),
            !r.thumb_url.is_empty(),
        ];
        for (count, p) in filled.iter_mut().zip(present) {
            *count += usize::from(p);
        }
    }
    COLUMNS
        .iter()
        .zip(filled)
        .map(|(c, n)| {
            let rate = if records.is_empty() {
                0.0
            } else {
                n as f64 / records.len() as f64
            };
            (c.to_string(), rate)
        })
        .collect()
}

/// Parses an archive CSV. Header problems are fatal; row problems are
/// collected in the report and the row is skipped.
pub fn parse_archive<R: Read>(source: R) -> Result<(Vec<PhotoRecord>, IngestReport), IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut rows = reader.records();
    let header = match rows.next() {
        Some(h) => h?,
        None => return Err(IngestError::NoHeader),
    };
    check_header(&header)?;

    let mut records = Vec::new();
    let mut report = IngestReport::default();
    let mut seen = HashSet::new();
    for row in rows {
        report.total_rows += 1;
        let row = match row {
            Ok(row) => row,
            Err(err) => {
                if let csv::ErrorKind::Io(_) = err.kind() {
                    return Err(err.into());
                }
                let line_number = err.position().map(|p| p.line()).unwrap_or(0);
                report.rejected.push(Rejection { line_number, reason: err.to_string() });
                continue;
            }
        };
        let line_number = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != COLUMNS.len() {
            report.rejected.push(Rejection {
                line_number,
                reason: format!("expected {} fields, found {}", COLUMNS.len(), row.len()),
            });
            continue;
        }
        let raw = RawRecord {
            line_number,
            cells: COLUMNS
                .iter()
                .zip(row.iter())
                .map(|(c, v)| (c.to_string(), v.to_string()))
                .collect(),
        };
        match normalize(&raw) {
            Ok(record) if !seen.insert(record.id.clone()) => report.rejected.push(Rejection {
                line_number,
                reason: format!("duplicate id `{}`", record.id),
            }),
            Ok(record) => records.push(record),
            Err(reason) => report.rejected.push(Rejection { line_number, reason }),
        }
    }
    report.accepted = records.len();
    report.field_fill_rates = fill_rates(&records);
    Ok((records, report))
}

/// Writes records in the archive CSV format; `parse_archive` reads them back unchanged.
pub fn write_archive<W: Write>(records: &[PhotoRecord], sink: W) -> Result<(), IngestError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(COLUMNS)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in records {
        writer.write_record([
            r.id.clone(),
            opt(r.caption.clone()),
            opt(r.photographer.clone()),
            opt(r.year.map(|v| v.to_string())),
            opt(r.month.map(|v| v.to_string())),
            opt(r.state.clone()),
            opt(r.county_fips.clone()),
            opt(r.county_name.clone()),
            opt(r.lat.map(|v| v.to_string())),
            opt(r.lon.map(|v| v.to_string())),
            opt(r.theme_string()),
            r.image_url.clone(),
            r.thumb_url.clone(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
