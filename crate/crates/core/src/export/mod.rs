//! Static files for the web front end: per-photo similarity lists, the theme
//! tree, and count-annotated county/state GeoJSON.
//!
//! Layout under the export root:
//!
//! ```text
//! similar/graphs.json          methods and k of the exported graphs
//! similar/<ab>/<abcdef>.json   one file per photo, sharded by the first two id characters
//! themes.json
//! counties.geojson
//! states.geojson
//! manifest.json
//! ```

mod geojson;
mod similarity;
mod themes;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use geojson::{annotate_geojson, export_geojson, write_geojson, GeoLevel};
pub use similarity::{
    export_similarity, load_similarity, round_score, shard_path, similarity_file, ExportedNeighbor,
    SimilarityFile, SIGNIFICANT_DIGITS,
};
pub use themes::{export_theme_tree, load_theme_tree};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("photo id `{0}` cannot be used as a file name")]
    UnsafeId(String),
    #[error("more than one {0} graph")]
    ConflictingGraphs(crate::graph::Method),
    #[error("GeoJSON feature {index} has no `{key}` property")]
    MissingKey { index: usize, key: &'static str },
    #[error("base GeoJSON is not a FeatureCollection")]
    NotFeatureCollection,
    #[error("invalid export: {0}")]
    Invalid(String),
    #[error(transparent)]
    Filter(#[from] crate::facet::FilterError),
}

impl ExportError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }

    pub(crate) fn json(path: &Path, source: serde_json::Error) -> Self {
        Self::Json { path: path.to_path_buf(), source }
    }
}

/// What an export wrote: per-class file counts and a SHA-256 per file,
/// keyed by `/`-separated path relative to the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportManifest {
    pub root: PathBuf,
    pub similarity_files: usize,
    pub geo_files: usize,
    pub theme_files: usize,
    pub checksums: BTreeMap<String, String>,
}

impl ExportManifest {
    pub fn new(root: &Path) -> Self {
        Self { root: root.to_path_buf(), ..Default::default() }
    }

    pub fn merge(&mut self, other: ExportManifest) {
        self.similarity_files += other.similarity_files;
        self.geo_files += other.geo_files;
        self.theme_files += other.theme_files;
        self.checksums.extend(other.checksums);
    }

    /// Re-reads every listed file, checking it parses as JSON and matches its checksum.
    pub fn verify(&self) -> Result<(), ExportError> {
        for (relative, expected) in &self.checksums {
            let path = self.root.join(relative);
            let bytes = fs::read(&path).map_err(|e| ExportError::io(&path, e))?;
            serde_json::from_slice::<serde_json::Value>(&bytes)
                .map_err(|e| ExportError::json(&path, e))?;
            if &checksum(&bytes) != expected {
                return Err(ExportError::Invalid(format!("checksum mismatch for {relative}")));
            }
        }
        Ok(())
    }

    /// Writes `manifest.json` (with paths relative to the root) into the root.
    pub fn write(&self) -> Result<(), ExportError> {
        let relative = ExportManifest { root: PathBuf::from("."), ..self.clone() };
        let bytes = serde_json::to_vec_pretty(&relative)
            .map_err(|e| ExportError::json(&self.root, e))?;
        write_file(&self.root, MANIFEST_FILE, &bytes).map(|_| ())
    }
}

pub fn checksum(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `bytes` to `root/relative`, creating parent directories, and
/// returns the content checksum.
pub(crate) fn write_file(root: &Path, relative: &str, bytes: &[u8]) -> Result<String, ExportError> {
    let path = root.join(relative);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| ExportError::io(parent, e))?;
    }
    fs::write(&path, bytes).map_err(|e| ExportError::io(&path, e))?;
    Ok(checksum(bytes))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ExportError> {
    let bytes = fs::read(path).map_err(|e| ExportError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| ExportError::json(path, e))
}
