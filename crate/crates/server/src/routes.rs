use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::{Path, RawQuery, State};
use axum::http::header::CONTENT_TYPE;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use explorer_core::export::{export_geojson, similarity_file, ExportedNeighbor, GeoLevel};
use explorer_core::{AggregateSet, Method, PhotoRecord, ThemeTree};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::query::decode_filter;
use crate::snapshot::Snapshot;

pub const GEO_JSON: &str = "application/geo+json";

/// The fields the photo grid needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub id: String,
    pub thumb_url: String,
    pub photographer: Option<String>,
    pub year: Option<i32>,
    pub month: Option<u32>,
    pub state: Option<String>,
    pub county_name: Option<String>,
}

impl From<&PhotoRecord> for GridRecord {
    fn from(r: &PhotoRecord) -> Self {
        Self {
            id: r.id.clone(),
            thumb_url: r.thumb_url.clone(),
            photographer: r.photographer.clone(),
            year: r.year,
            month: r.month,
            state: r.state.clone(),
            county_name: r.county_name.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotosResponse {
    pub aggregates: AggregateSet,
    pub page_records: Vec<GridRecord>,
    pub page: usize,
    pub total_pages: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapPoint {
    pub lat: f64,
    pub lon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotoDetail {
    #[serde(flatten)]
    pub record: PhotoRecord,
    pub neighbors: BTreeMap<Method, Vec<ExportedNeighbor>>,
    pub map_point: Option<MapPoint>,
}

type Shared = State<Arc<Snapshot>>;

pub fn router(snapshot: Arc<Snapshot>) -> Router {
    Router::new()
        .route("/api/photos", get(photos))
        .route("/api/photos/{id}", get(photo))
        .route("/api/themes", get(themes))
        .route("/geo/counties", get(counties))
        .route("/geo/states", get(states))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .with_state(snapshot)
}

async fn photos(State(snap): Shared, RawQuery(query): RawQuery) -> Result<Json<PhotosResponse>, ApiError> {
    let filter = decode_filter(query.as_deref(), snap.page_size)?;
    let result = snap.index.query(&filter)?;
    Ok(Json(PhotosResponse {
        aggregates: result.aggregates,
        page_records: result.page_records.iter().map(GridRecord::from).collect(),
        page: result.page,
        total_pages: result.total_pages,
    }))
}

async fn photo(State(snap): Shared, Path(id): Path<String>) -> Result<Json<PhotoDetail>, ApiError> {
    let record = snap
        .index
        .get(&id)
        .ok_or_else(|| ApiError::not_found(format!("no photo with id `{id}`")))?;
    let neighbors = similarity_file(&id, &[&snap.text, &snap.visual]).neighbors;
    let map_point = match (record.lat, record.lon) {
        (Some(lat), Some(lon)) => Some(MapPoint { lat, lon }),
        _ => None,
    };
    Ok(Json(PhotoDetail { record: record.clone(), neighbors, map_point }))
}

async fn themes(State(snap): Shared, RawQuery(query): RawQuery) -> Result<Json<ThemeTree>, ApiError> {
    let filter = decode_filter(query.as_deref(), snap.page_size)?;
    Ok(Json(snap.index.theme_tree(&filter)?))
}

fn geo(snap: &Snapshot, query: Option<&str>, level: GeoLevel) -> Result<Response, ApiError> {
    let filter = decode_filter(query, snap.page_size)?;
    let base = snap
        .geo
        .get(level)
        .ok_or_else(|| ApiError::not_found(format!("no {} geometry loaded", level.file_name())))?;
    let doc = export_geojson(&snap.index, base, &filter, level).map_err(|e| match e {
        explorer_core::export::ExportError::Filter(f) => ApiError::from(f),
        other => ApiError::internal(other.to_string()),
    })?;
    let body = serde_json::to_vec(&doc).map_err(|e| ApiError::internal(e.to_string()))?;
    Ok(([(CONTENT_TYPE, GEO_JSON)], body).into_response())
}

async fn counties(State(snap): Shared, RawQuery(query): RawQuery) -> Result<Response, ApiError> {
    geo(&snap, query.as_deref(), GeoLevel::Counties)
}

async fn states(State(snap): Shared, RawQuery(query): RawQuery) -> Result<Response, ApiError> {
    geo(&snap, query.as_deref(), GeoLevel::States)
}
