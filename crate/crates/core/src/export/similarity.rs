use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{read_json, write_file, ExportError, ExportManifest};
use crate::graph::{Method, Neighbor, SimilarityGraph};
use crate::scalar::Scalar;

/// Scores are written with this many significant digits.
pub const SIGNIFICANT_DIGITS: usize = 6;

const SIMILAR_DIR: &str = "similar";
const GRAPHS_FILE: &str = "similar/graphs.json";

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_score(score: f64) -> f64 {
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, score)
        .parse()
        .unwrap_or(score)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportedNeighbor {
    pub id: String,
    pub score: f64,
}

/// Contents of one `similar/<shard>/<id>.json` file. A method key is absent
/// when the photo has no entry in that graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityFile {
    pub id: String,
    pub neighbors: BTreeMap<Method, Vec<ExportedNeighbor>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GraphInfo {
    method: Method,
    k: usize,
    photos: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GraphsIndex {
    graphs: Vec<GraphInfo>,
}

fn check_id(id: &str) -> Result<(), ExportError> {
    let unsafe_id = id.is_empty()
        || id == "."
        || id == ".."
        || id.chars().any(|c| c == '/' || c == '\\' || c.is_control());
    if unsafe_id {
        Err(ExportError::UnsafeId(id.to_string()))
    } else {
        Ok(())
    }
}

/// `similar/<first two characters of id>/<id>.json`.
pub fn shard_path(id: &str) -> String {
    let shard: String = id.chars().take(2).collect();
    format!("{SIMILAR_DIR}/{shard}/{id}.json")
}

/// Gathers one photo's lists from every graph, with rounded scores.
pub fn similarity_file<T: Scalar>(id: &str, graphs: &[&SimilarityGraph<T>]) -> SimilarityFile {
    let neighbors = graphs
        .iter()
        .filter_map(|g| {
            let list = g.neighbors(id)?;
            let list = list
                .iter()
                .map(|n| ExportedNeighbor {
                    id: n.id.clone(),
                    score: round_score(n.score.to_f64().unwrap_or(0.0)),
                })
                .collect();
            Some((g.method, list))
        })
        .collect();
    SimilarityFile { id: id.to_string(), neighbors }
}

/// Writes one file per photo appearing in any graph, plus `similar/graphs.json`.
pub fn export_similarity<T: Scalar>(
    graphs: &[&SimilarityGraph<T>],
    root: &Path,
) -> Result<ExportManifest, ExportError> {
    let mut methods = BTreeSet::new();
    for g in graphs {
        if !methods.insert(g.method) {
            return Err(ExportError::ConflictingGraphs(g.method));
        }
    }
    let ids: BTreeSet<&str> = graphs
        .iter()
        .flat_map(|g| g.edges.keys().map(String::as_str))
        .collect();
    for id in &ids {
        check_id(id)?;
    }
    fs::create_dir_all(root).map_err(|e| ExportError::io(root, e))?;

    let written: Vec<(String, String)> = ids
        .par_iter()
        .map(|id| {
            let file = similarity_file(id, graphs);
            let bytes = serde_json::to_vec(&file).map_err(|e| ExportError::json(root, e))?;
            let relative = shard_path(id);
            let sum = write_file(root, &relative, &bytes)?;
            Ok((relative, sum))
        })
        .collect::<Result<_, ExportError>>()?;

    let index = GraphsIndex {
        graphs: graphs
            .iter()
            .map(|g| GraphInfo { method: g.method, k: g.k, photos: g.len() })
            .collect(),
    };
    let index_bytes = serde_json::to_vec(&index).map_err(|e| ExportError::json(root, e))?;
    let index_sum = write_file(root, GRAPHS_FILE, &index_bytes)?;

    let mut manifest = ExportManifest::new(root);
    manifest.similarity_files = written.len();
    manifest.checksums.extend(written);
    manifest.checksums.insert(GRAPHS_FILE.to_string(), index_sum);
    Ok(manifest)
}

/// Reads an exported similarity directory back into graphs, ordered by method.
pub fn load_similarity(root: &Path) -> Result<Vec<SimilarityGraph<f64>>, ExportError> {
    let index: GraphsIndex = read_json(&root.join(GRAPHS_FILE))?;
    let mut graphs: BTreeMap<Method, SimilarityGraph<f64>> = index
        .graphs
        .iter()
        .map(|info| (info.method, SimilarityGraph::new(info.method, info.k)))
        .collect();

    let dir = root.join(SIMILAR_DIR);
    let mut shards: Vec<_> = fs::read_dir(&dir)
        .map_err(|e| ExportError::io(&dir, e))?
        .collect::<Result<_, _>>()
        .map_err(|e| ExportError::io(&dir, e))?;
    shards.sort_by_key(|e| e.file_name());
    for shard in shards.into_iter().filter(|e| e.path().is_dir()) {
        let shard_dir = shard.path();
        let entries = fs::read_dir(&shard_dir).map_err(|e| ExportError::io(&shard_dir, e))?;
        for entry in entries {
            let path = entry.map_err(|e| ExportError::io(&shard_dir, e))?.path();
            let file: SimilarityFile = read_json(&path)?;
            for (method, list) in file.neighbors {
                let graph = graphs.get_mut(&method).ok_or_else(|| {
                    ExportError::Invalid(format!("{}: {method} graph not in index", path.display()))
                })?;
                let list = list
                    .into_iter()
                    .map(|n| Neighbor { id: n.id, score: n.score })
                    .collect();
                graph.edges.insert(file.id.clone(), list);
            }
        }
    }

    for (info, graph) in index.graphs.iter().zip(graphs.values()) {
        if graph.len() != info.photos {
            return Err(ExportError::Invalid(format!(
                "{} graph lists {} photos, found {}",
                info.method,
                info.photos,
                graph.len()
            )));
        }
    }
    Ok(graphs.into_values().collect())
}
