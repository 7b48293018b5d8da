use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use explorer_core::caption::{build_text_graph, build_tfidf, tokenize_records};
use explorer_core::export::{
    annotate_geojson, export_geojson, export_similarity, export_theme_tree, load_similarity,
    load_theme_tree, round_score, write_geojson, GeoLevel,
};
use explorer_core::facet::build_index;
use explorer_core::gazetteer::build_gazetteer;
use explorer_core::geo::{inset_for_state, vertex_centroid, AlbersEqualArea};
use explorer_core::synthetic::{county_geojson, generate, state_geojson, SyntheticConfig};
use explorer_core::visual::build_visual_graph;
use explorer_core::{EmbeddingMatrix, FilterState, PhotoRecord, SimilarityGraph, TfidfModel};
use serde_json::{json, Value};

fn graphs(records: &[PhotoRecord], embeddings: Vec<(String, Vec<f64>)>, dim: usize) -> (SimilarityGraph, SimilarityGraph) {
    let gazetteer = build_gazetteer(records);
    let model: TfidfModel = build_tfidf(&tokenize_records(records, &gazetteer));
    let text = build_text_graph(&model, 12);
    let visual = build_visual_graph(&EmbeddingMatrix::from_rows(dim, embeddings).unwrap(), 12);
    (text, visual)
}

fn read_tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, fs::read(&path).unwrap());
            }
        }
    }
    out
}

#[test]
fn similarity_round_trip_and_idempotence() {
    let archive = generate(&SyntheticConfig { records: 500, seed: 8, ..Default::default() });
    let (text, visual) = graphs(&archive.records, archive.embeddings.clone(), archive.embedding_dim);
    assert!(text.len() < visual.len());

    let dir = tempfile::tempdir().unwrap();
    let manifest = export_similarity(&[&text, &visual], dir.path()).unwrap();
    assert_eq!(manifest.similarity_files, 500);
    manifest.verify().unwrap();

    let loaded = load_similarity(dir.path()).unwrap();
    assert_eq!(loaded, vec![text.map_scores(round_score), visual.map_scores(round_score)]);
    for (a, b) in loaded[1].edges.values().flatten().zip(visual.edges.values().flatten()) {
        assert!((a.score - b.score).abs() <= 5e-6 * b.score.abs().max(1e-3));
    }

    // Uncaptioned photos carry only the visual key.
    let uncaptioned = archive.records.iter().find(|r| r.caption.is_none()).unwrap();
    let file: Value = serde_json::from_slice(
        &fs::read(dir.path().join(explorer_core::export::shard_path(&uncaptioned.id))).unwrap(),
    )
    .unwrap();
    assert!(file["neighbors"].get("text").is_none());
    assert!(file["neighbors"]["visual"].is_array());

    let first = read_tree(dir.path());
    let again = tempfile::tempdir().unwrap();
    export_similarity(&[&text, &visual], again.path()).unwrap();
    assert_eq!(first, read_tree(again.path()));
}

#[test]
fn theme_tree_round_trip() {
    let archive = generate(&SyntheticConfig { records: 400, seed: 2, ..Default::default() });
    let index = build_index(archive.records).unwrap();
    let tree = index.theme_tree(&FilterState::default().photographer("Russell Lee")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let manifest = export_theme_tree(&tree, dir.path()).unwrap();
    assert_eq!(manifest.theme_files, 1);
    assert_eq!(load_theme_tree(dir.path()).unwrap(), tree);
    let bytes = fs::read(dir.path().join("themes.json")).unwrap();
    export_theme_tree(&tree, dir.path()).unwrap();
    assert_eq!(fs::read(dir.path().join("themes.json")).unwrap(), bytes);
}

fn jasper_archive() -> Vec<PhotoRecord> {
    let mut records = generate(&SyntheticConfig { records: 300, seed: 4, ..Default::default() }).records;
    records.retain(|r| r.county_fips.as_deref() != Some("19099"));
    for i in 0..7 {
        records.push(PhotoRecord {
            id: format!("jasper{i}"),
            caption: Some("Apple orchard near Jasper, Iowa".into()),
            photographer: Some("Arthur Rothstein".into()),
            year: Some(1939),
            month: Some(5),
            state: Some("Iowa".into()),
            county_fips: Some("19099".into()),
            county_name: Some("Jasper".into()),
            lat: Some(41.69),
            lon: Some(-93.05),
            theme_path: None,
            image_url: "i".into(),
            thumb_url: "t".into(),
        });
    }
    records
}

#[test]
fn county_counts_and_round_trip() {
    let records = jasper_archive();
    let expected_jasper = records.iter().filter(|r| r.county_fips.as_deref() == Some("19099")).count();
    assert_eq!(expected_jasper, 7);
    let index = build_index(records.clone()).unwrap();
    let base = county_geojson();
    let doc = export_geojson(&index, &base, &FilterState::default(), GeoLevel::Counties).unwrap();
    let features = doc["features"].as_array().unwrap();
    for feature in features {
        let fips = feature["properties"]["fips"].as_str().unwrap();
        let brute = records.iter().filter(|r| r.county_fips.as_deref() == Some(fips)).count();
        assert_eq!(feature["properties"]["count"], json!(brute), "{fips}");
    }
    let jasper = features.iter().find(|f| f["properties"]["fips"] == "19099").unwrap();
    assert_eq!(jasper["properties"]["count"], 7);

    let dir = tempfile::tempdir().unwrap();
    let manifest = write_geojson(&doc, GeoLevel::Counties, dir.path()).unwrap();
    manifest.verify().unwrap();
    let bytes = fs::read(dir.path().join("counties.geojson")).unwrap();
    let reparsed: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(reparsed, doc);
    write_geojson(&doc, GeoLevel::Counties, dir.path()).unwrap();
    assert_eq!(fs::read(dir.path().join("counties.geojson")).unwrap(), bytes);
}

#[test]
fn texas_filter_only_lights_texas() {
    let records = jasper_archive();
    let index = build_index(records).unwrap();
    let doc = export_geojson(&index, &county_geojson(), &FilterState::default().state("Texas"), GeoLevel::Counties).unwrap();
    for f in doc["features"].as_array().unwrap() {
        if f["properties"]["count"].as_u64().unwrap() > 0 {
            assert_eq!(f["properties"]["state"], "Texas");
        }
    }
}

#[test]
fn empty_archive_counts_zero_and_moves_only_insets() {
    let index = build_index(Vec::new()).unwrap();
    let base = state_geojson();
    let doc = export_geojson(&index, &base, &FilterState::default(), GeoLevel::States).unwrap();
    for (before, after) in base["features"].as_array().unwrap().iter().zip(doc["features"].as_array().unwrap()) {
        assert_eq!(after["properties"]["count"], 0);
        let state = before["properties"]["state"].as_str().unwrap();
        if inset_for_state(state).is_none() {
            assert_eq!(before["geometry"], after["geometry"], "{state}");
        } else {
            assert_ne!(before["geometry"], after["geometry"], "{state}");
        }
    }
}

#[test]
fn alaska_centroid_lands_in_inset_frame() {
    // Simplified Alaska outline (lon, lat), projected to Conus Albers meters.
    let outline = [
        (-141.0, 69.6), (-141.0, 60.3), (-137.5, 58.9), (-133.4, 55.0), (-130.0, 55.9),
        (-135.0, 59.8), (-140.0, 59.7), (-146.0, 60.5), (-151.8, 59.2), (-154.0, 57.0),
        (-158.0, 56.0), (-163.0, 54.8), (-164.8, 54.4), (-162.0, 55.7), (-157.5, 58.0),
        (-161.9, 59.0), (-164.9, 60.9), (-166.1, 61.5), (-164.6, 63.1), (-161.0, 64.4),
        (-166.5, 65.5), (-168.0, 65.6), (-163.0, 67.1), (-166.5, 68.3), (-161.0, 70.3),
        (-156.8, 71.3), (-151.0, 70.4), (-145.0, 70.1), (-141.0, 69.6),
    ];
    let proj = AlbersEqualArea::conus();
    let ring: Vec<Value> = outline
        .iter()
        .map(|&(lon, lat)| {
            let (x, y) = proj.project(lon, lat);
            json!([x, y])
        })
        .collect();
    let base = json!({"type": "FeatureCollection", "features": [
        {"type": "Feature", "properties": {"state": "Alaska"},
         "geometry": {"type": "Polygon", "coordinates": [ring]}}
    ]});
    let doc = annotate_geojson(&base, &Default::default(), GeoLevel::States).unwrap();
    let (cx, cy) = vertex_centroid(&doc["features"][0]["geometry"]).unwrap();
    let inset = inset_for_state("Alaska").unwrap();
    assert!(inset.frame_contains(cx, cy), "centroid ({cx}, {cy})");
    let (bx, by) = vertex_centroid(&base["features"][0]["geometry"]).unwrap();
    assert!(!inset.frame_contains(bx, by));
}

#[test]
fn synthetic_base_insets_land_in_frames() {
    let index = build_index(Vec::new()).unwrap();
    for (base, level) in [(county_geojson(), GeoLevel::Counties), (state_geojson(), GeoLevel::States)] {
        let doc = export_geojson(&index, &base, &FilterState::default(), level).unwrap();
        for f in doc["features"].as_array().unwrap() {
            let state = f["properties"]["state"].as_str().unwrap();
            if let Some(inset) = inset_for_state(state) {
                let (x, y) = vertex_centroid(&f["geometry"]).unwrap();
                assert!(inset.frame_contains(x, y), "{state}: ({x}, {y})");
            }
        }
    }
}
