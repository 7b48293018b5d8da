//! Archive exploration engine for photographic collections.
//!
//! The pipeline is: [`ingest`] a metadata CSV into validated [`PhotoRecord`]s,
//! build a [`FacetIndex`] answering one [`FilterState`] at a time with linked
//! map/timeline/theme aggregates, compute caption ([`caption`]) and image
//! embedding ([`visual`]) similarity graphs, and write everything as static
//! files with [`export`].
//!
//! Similarity and projection math is generic over [`Scalar`] (`f32` or
//! `f64`); the aliases below fix the scalar for common use.

pub mod caption;
pub mod export;
pub mod facet;
pub mod gazetteer;
pub mod geo;
pub mod graph;
pub mod ingest;
pub mod regions;
pub mod scalar;
pub mod synthetic;
pub mod visual;

pub use facet::{AggregateSet, FacetIndex, FilterError, FilterState, QueryResult, ThemeNode, ThemeTree};
pub use gazetteer::Gazetteer;
pub use graph::{Method, Neighbor};
pub use ingest::{IngestError, IngestReport, PhotoRecord};
pub use scalar::Scalar;

/// Default neighbor count for both recommendation graphs.
pub const DEFAULT_K: usize = 12;

pub type SimilarityGraph = graph::SimilarityGraph<f64>;
pub type SimilarityGraph32 = graph::SimilarityGraph<f32>;
pub type TfidfModel = caption::TfidfModel<f64>;
pub type TfidfModel32 = caption::TfidfModel<f32>;
pub type EmbeddingMatrix = visual::EmbeddingMatrix<f64>;
pub type EmbeddingMatrix32 = visual::EmbeddingMatrix<f32>;
pub type AlbersEqualArea = geo::AlbersEqualArea<f64>;
