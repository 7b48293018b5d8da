//! Canonical U.S. state and territory table.
//!
//! Used to standardize the `state` column on ingest, to check that a county
//! FIPS code belongs to its state, and to place the inset territories on the
//! exported map.

/// One state, district, or territory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub name: &'static str,
    pub postal: &'static str,
    /// Two-digit FIPS state code; the first two digits of every county FIPS in the region.
    pub fips: &'static str,
}

macro_rules! regions {
    ($(($name:literal, $postal:literal, $fips:literal)),* $(,)?) => {
        &[$(Region { name: $name, postal: $postal, fips: $fips }),*]
    };
}

pub const REGIONS: &[Region] = regions![
    ("Alabama", "AL", "01"),
    ("Alaska", "AK", "02"),
    ("Arizona", "AZ", "04"),
    ("Arkansas", "AR", "05"),
    ("California", "CA", "06"),
    ("Colorado", "CO", "08"),
    ("Connecticut", "CT", "09"),
    ("Delaware", "DE", "10"),
    ("District of Columbia", "DC", "11"),
    ("Florida", "FL", "12"),
    ("Georgia", "GA", "13"),
    ("Hawaii", "HI", "15"),
    ("Idaho", "ID", "16"),
    ("Illinois", "IL", "17"),
    ("Indiana", "IN", "18"),
    ("Iowa", "IA", "19"),
    ("Kansas", "KS", "20"),
    ("Kentucky", "KY", "21"),
    ("Louisiana", "LA", "22"),
    ("Maine", "ME", "23"),
    ("Maryland", "MD", "24"),
    ("Massachusetts", "MA", "25"),
    ("Michigan", "MI", "26"),
    ("Minnesota", "MN", "27"),
    ("Mississippi", "MS", "28"),
    ("Missouri", "MO", "29"),
    ("Montana", "MT", "30"),
    ("Nebraska", "NE", "31"),
    ("Nevada", "NV", "32"),
    ("New Hampshire", "NH", "33"),
    ("New Jersey", "NJ", "34"),
    ("New Mexico", "NM", "35"),
    ("New York", "NY", "36"),
    ("North Carolina", "NC", "37"),
    ("North Dakota", "ND", "38"),
    ("Ohio", "OH", "39"),
    ("Oklahoma", "OK", "40"),
    ("Oregon", "OR", "41"),
    ("Pennsylvania", "PA", "42"),
    ("Rhode Island", "RI", "44"),
    ("South Carolina", "SC", "45"),
    ("South Dakota", "SD", "46"),
    ("Tennessee", "TN", "47"),
    ("Texas", "TX", "48"),
    ("Utah", "UT", "49"),
    ("Vermont", "VT", "50"),
    ("Virginia", "VA", "51"),
    ("Washington", "WA", "53"),
    ("West Virginia", "WV", "54"),
    ("Wisconsin", "WI", "55"),
    ("Wyoming", "WY", "56"),
    ("Puerto Rico", "PR", "72"),
    ("Virgin Islands", "VI", "78"),
];

/// Looks up a region by full name or postal abbreviation, ignoring case and
/// surrounding/internal whitespace runs.
pub fn lookup(raw: &str) -> Option<&'static Region> {
    let cleaned = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    REGIONS.iter().find(|r| {
        r.name.eq_ignore_ascii_case(&cleaned) || r.postal.eq_ignore_ascii_case(&cleaned)
    })
}

pub fn by_name(name: &str) -> Option<&'static Region> {
    REGIONS.iter().find(|r| r.name == name)
}

pub fn by_fips(fips: &str) -> Option<&'static Region> {
    REGIONS.iter().find(|r| r.fips == fips)
}

/// True when `county_fips` is five ASCII digits.
pub fn is_county_fips(county_fips: &str) -> bool {
    county_fips.len() == 5 && county_fips.bytes().all(|b| b.is_ascii_digit())
}
