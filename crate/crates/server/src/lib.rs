//! HTTP API over one immutable archive snapshot.
//!
//! | route | body |
//! |---|---|
//! | `GET /api/photos?{filter}` | aggregates and one page of grid records |
//! | `GET /api/photos/{id}` | full record, similarity lists, map point |
//! | `GET /api/themes?{filter}` | theme tree with counts |
//! | `GET /geo/counties?{filter}` | count-annotated county GeoJSON |
//! | `GET /geo/states?{filter}` | count-annotated state GeoJSON |
//!
//! Filter parameters are described in [`query`].

pub mod error;
pub mod query;
pub mod routes;
pub mod snapshot;

pub use error::{ApiError, ErrorCode};
pub use query::{decode_filter, encode_filter};
pub use routes::{router, GridRecord, MapPoint, PhotoDetail, PhotosResponse, GEO_JSON};
pub use snapshot::{GeoBase, Snapshot, SnapshotOptions, SnapshotPaths, INGEST_REPORT_FILE};
