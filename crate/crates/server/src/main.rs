use std::fs::{self, File};
use std::io::BufWriter;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use explorer_core::export::GeoLevel;
use explorer_core::facet::DEFAULT_PAGE_SIZE;
use explorer_core::ingest::write_archive;
use explorer_core::synthetic::{county_geojson, generate, state_geojson, SyntheticConfig};
use explorer_core::visual::write_embeddings;
use explorer_core::DEFAULT_K;
use explorer_server::{router, Snapshot, SnapshotOptions, SnapshotPaths};

#[derive(Parser)]
#[command(name = "explorer", version, about = "Faceted photo archive explorer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a snapshot and serve the HTTP API.
    Serve {
        #[command(flatten)]
        input: Input,
        /// Listening port. The PORT environment variable takes precedence.
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "0.0.0.0")]
        host: String,
    },
    /// Ingest, index, build both graphs, and write the static export.
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic archive, embedding file, and base geometry for trying things out.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2000)]
        records: usize,
        #[arg(long, default_value_t = 1935)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    archive: PathBuf,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Directory holding counties.geojson and states.geojson in Conus Albers meters.
    #[arg(long)]
    geo: Option<PathBuf>,
    /// Neighbors kept per photo in each similarity graph.
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_PAGE_SIZE)]
    page_size: usize,
}

impl Input {
    fn load(&self) -> Result<Snapshot> {
        let paths = SnapshotPaths {
            archive: self.archive.clone(),
            embeddings: self.embeddings.clone(),
            geo: self.geo.clone(),
        };
        Snapshot::load(&paths, SnapshotOptions { k: self.k, page_size: self.page_size })
    }
}

fn port_override(flag: u16) -> Result<u16> {
    match std::env::var("PORT") {
        Ok(value) => value.trim().parse().with_context(|| format!("PORT `{value}` is not a port number")),
        Err(_) => Ok(flag),
    }
}

async fn serve(snapshot: Snapshot, host: &str, port: u16) -> Result<()> {
    let addr: SocketAddr = format!("{host}:{port}").parse().context("invalid listen address")?;
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("binding {addr}"))?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(snapshot)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

fn synth(out: &Path, records: usize, seed: u64) -> Result<()> {
    let archive = generate(&SyntheticConfig { records, seed, ..Default::default() });
    fs::create_dir_all(out.join("geo"))?;
    write_archive(&archive.records, BufWriter::new(File::create(out.join("archive.csv"))?))?;
    write_embeddings(
        archive.embedding_dim,
        &archive.embeddings,
        BufWriter::new(File::create(out.join("embeddings.txt"))?),
    )?;
    for (level, doc) in [(GeoLevel::Counties, county_geojson()), (GeoLevel::States, state_geojson())] {
        fs::write(out.join("geo").join(level.file_name()), serde_json::to_vec(&doc)?)?;
    }
    println!(
        "wrote {} records and {} embeddings to {}",
        archive.records.len(),
        archive.embeddings.len(),
        out.display()
    );
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Serve { input, port, host } => {
            let port = port_override(port)?;
            let snapshot = input.load()?;
            tokio::runtime::Runtime::new()?.block_on(serve(snapshot, &host, port))
        }
        Command::Build { input, out } => {
            let snapshot = input.load()?;
            let manifest = snapshot.export(&out)?;
            println!(
                "{} similarity files, {} theme files, {} geo files written to {}",
                manifest.similarity_files,
                manifest.theme_files,
                manifest.geo_files,
                out.display()
            );
            println!(
                "ingest: {} rows, {} accepted, {} rejected",
                snapshot.ingest.total_rows,
                snapshot.ingest.accepted,
                snapshot.ingest.rejected.len()
            );
            Ok(())
        }
        Command::Synth { out, records, seed } => synth(&out, records, seed),
    }
}
