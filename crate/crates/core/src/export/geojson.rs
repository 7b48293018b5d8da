use std::path::Path;

use serde_json::Value;

use super::{write_file, ExportError, ExportManifest};
use crate::facet::{AggregateSet, FacetIndex, FilterState};
use crate::geo::{inset_for_county, inset_for_state, map_geometry};

/// Which choropleth a base file describes, and the property keying its features.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeoLevel {
    /// Features carry a five-digit `fips` property.
    Counties,
    /// Features carry a `state` property with the canonical state name.
    States,
}

impl GeoLevel {
    pub fn key(self) -> &'static str {
        match self {
            GeoLevel::Counties => "fips",
            GeoLevel::States => "state",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            GeoLevel::Counties => "counties.geojson",
            GeoLevel::States => "states.geojson",
        }
    }
}

fn feature_key(feature: &Value, level: GeoLevel) -> Option<String> {
    match feature.get("properties")?.get(level.key())? {
        Value::String(s) => Some(s.clone()),
        // Numeric FIPS codes lose their leading zero in some sources.
        Value::Number(n) if level == GeoLevel::Counties => n.as_u64().map(|v| format!("{v:05}")),
        _ => None,
    }
}

/// Copies `base`, adding a `count` property to every feature and moving the
/// inset territories into their frames. Base geometry must be in Conus
/// Albers meters.
pub fn annotate_geojson(
    base: &Value,
    aggregates: &AggregateSet,
    level: GeoLevel,
) -> Result<Value, ExportError> {
    if base.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(ExportError::NotFeatureCollection);
    }
    let mut out = base.clone();
    let features = out
        .get_mut("features")
        .and_then(Value::as_array_mut)
        .ok_or(ExportError::NotFeatureCollection)?;
    for (index, feature) in features.iter_mut().enumerate() {
        let key = feature_key(feature, level)
            .ok_or(ExportError::MissingKey { index, key: level.key() })?;
        let (count, inset) = match level {
            GeoLevel::Counties => (aggregates.county_counts.get(&key), inset_for_county(&key)),
            GeoLevel::States => (aggregates.state_counts.get(&key), inset_for_state(&key)),
        };
        if let Some(props) = feature.get_mut("properties").and_then(Value::as_object_mut) {
            props.insert("count".into(), Value::from(count.copied().unwrap_or(0)));
        }
        if let (Some(inset), Some(geometry)) = (inset, feature.get_mut("geometry")) {
            let transform = inset.transform();
            map_geometry(geometry, &mut |x, y| transform(x, y));
        }
    }
    Ok(out)
}

/// Count-annotated GeoJSON for the photos matching `filter`.
pub fn export_geojson(
    index: &FacetIndex,
    base: &Value,
    filter: &FilterState,
    level: GeoLevel,
) -> Result<Value, ExportError> {
    let aggregates = index.aggregates(filter)?;
    annotate_geojson(base, &aggregates, level)
}

/// Writes `counties.geojson` or `states.geojson` under `root`.
pub fn write_geojson(document: &Value, level: GeoLevel, root: &Path) -> Result<ExportManifest, ExportError> {
    let bytes = serde_json::to_vec(document).map_err(|e| ExportError::json(root, e))?;
    let sum = write_file(root, level.file_name(), &bytes)?;
    let mut manifest = ExportManifest::new(root);
    manifest.geo_files = 1;
    manifest.checksums.insert(level.file_name().to_string(), sum);
    Ok(manifest)
}
