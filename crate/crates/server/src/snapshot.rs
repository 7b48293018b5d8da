use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use explorer_core::caption::{build_text_graph, build_tfidf, tokenize_records};
use explorer_core::export::{
    export_geojson, export_similarity, export_theme_tree, write_geojson, ExportManifest, GeoLevel,
};
use explorer_core::facet::DEFAULT_PAGE_SIZE;
use explorer_core::gazetteer::build_gazetteer;
use explorer_core::ingest::parse_archive;
use explorer_core::visual::{build_visual_graph, load_embeddings, EmbeddingReport};
use explorer_core::{
    EmbeddingMatrix, FacetIndex, FilterState, IngestReport, Method, PhotoRecord, SimilarityGraph,
    TfidfModel, DEFAULT_K,
};
use serde_json::Value;

pub const INGEST_REPORT_FILE: &str = "ingest_report.json";

#[derive(Debug, Clone, Copy)]
pub struct SnapshotOptions {
    pub k: usize,
    pub page_size: usize,
}

impl Default for SnapshotOptions {
    fn default() -> Self {
        Self { k: DEFAULT_K, page_size: DEFAULT_PAGE_SIZE }
    }
}

/// Base geometry in Conus Albers meters. Either level may be absent.
#[derive(Debug, Clone, Default)]
pub struct GeoBase {
    pub counties: Option<Value>,
    pub states: Option<Value>,
}

impl GeoBase {
    /// Reads `counties.geojson` and `states.geojson` from `dir`; both must exist.
    pub fn load(dir: &Path) -> Result<Self> {
        let read = |level: GeoLevel| -> Result<Value> {
            let path = dir.join(level.file_name());
            let bytes = fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))
        };
        Ok(Self { counties: Some(read(GeoLevel::Counties)?), states: Some(read(GeoLevel::States)?) })
    }

    pub fn get(&self, level: GeoLevel) -> Option<&Value> {
        match level {
            GeoLevel::Counties => self.counties.as_ref(),
            GeoLevel::States => self.states.as_ref(),
        }
    }
}

/// Everything the API serves, built once at startup and never mutated.
#[derive(Debug)]
pub struct Snapshot {
    pub index: FacetIndex,
    pub text: SimilarityGraph,
    pub visual: SimilarityGraph,
    pub geo: GeoBase,
    pub page_size: usize,
    pub ingest: IngestReport,
    pub embeddings: Option<EmbeddingReport>,
}

impl Snapshot {
    /// Builds the index and both graphs. Without embeddings the visual graph is empty.
    pub fn build(
        records: Vec<PhotoRecord>,
        embeddings: Option<EmbeddingMatrix>,
        geo: GeoBase,
        options: SnapshotOptions,
    ) -> Result<Self> {
        if options.k == 0 {
            bail!("k must be at least 1");
        }
        if options.page_size == 0 {
            bail!("page size must be at least 1");
        }
        let gazetteer = build_gazetteer(&records);
        let model: TfidfModel = build_tfidf(&tokenize_records(&records, &gazetteer));
        let text = build_text_graph(&model, options.k);
        let visual = match &embeddings {
            Some(matrix) => build_visual_graph(matrix, options.k),
            None => SimilarityGraph::new(Method::Visual, options.k),
        };
        let index = FacetIndex::build(records)?;
        Ok(Self {
            index,
            text,
            visual,
            geo,
            page_size: options.page_size,
            ingest: IngestReport::default(),
            embeddings: None,
        })
    }

    /// Reads the archive, optional embedding file, and optional geometry
    /// directory, then builds.
    pub fn load(paths: &SnapshotPaths, options: SnapshotOptions) -> Result<Self> {
        let file = File::open(&paths.archive)
            .with_context(|| format!("opening {}", paths.archive.display()))?;
        let (records, ingest) = parse_archive(BufReader::new(file))
            .with_context(|| format!("reading {}", paths.archive.display()))?;
        log::info!(
            "ingested {} of {} rows ({} rejected)",
            ingest.accepted,
            ingest.total_rows,
            ingest.rejected.len()
        );
        for r in ingest.rejected.iter().take(20) {
            log::warn!("line {}: {}", r.line_number, r.reason);
        }

        let (matrix, report) = match &paths.embeddings {
            Some(path) => {
                let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                let (matrix, report) = load_embeddings(BufReader::new(file), &records)
                    .with_context(|| format!("reading {}", path.display()))?;
                log::info!(
                    "loaded {} embeddings of dimension {} ({} photos without one)",
                    matrix.len(),
                    matrix.dim(),
                    report.missing.len()
                );
                (Some(matrix), Some(report))
            }
            None => (None, None),
        };
        let geo = match &paths.geo {
            Some(dir) => GeoBase::load(dir)?,
            None => GeoBase::default(),
        };
        let mut snapshot = Self::build(records, matrix, geo, options)?;
        snapshot.ingest = ingest;
        snapshot.embeddings = report;
        log::info!(
            "text graph covers {} photos, visual graph {}",
            snapshot.text.len(),
            snapshot.visual.len()
        );
        Ok(snapshot)
    }

    /// Writes the static export for the unfiltered archive, plus the ingest report.
    pub fn export(&self, out: &Path) -> Result<ExportManifest> {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        let mut manifest = export_similarity(&[&self.text, &self.visual], out)?;
        let unfiltered = FilterState::default();
        manifest.merge(export_theme_tree(&self.index.theme_tree(&unfiltered)?, out)?);
        for level in [GeoLevel::Counties, GeoLevel::States] {
            if let Some(base) = self.geo.get(level) {
                let doc = export_geojson(&self.index, base, &unfiltered, level)?;
                manifest.merge(write_geojson(&doc, level, out)?);
            }
        }
        manifest.write()?;
        let report = serde_json::to_vec_pretty(&self.ingest)?;
        fs::write(out.join(INGEST_REPORT_FILE), report)?;
        Ok(manifest)
    }
}

#[derive(Debug, Clone)]
pub struct SnapshotPaths {
    pub archive: PathBuf,
    pub embeddings: Option<PathBuf>,
    pub geo: Option<PathBuf>,
}
