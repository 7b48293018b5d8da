//! Visual recommender: exact cosine kNN over externally computed image embeddings.
//!
//! Embedding file format (UTF-8 text): the first line is `<n> <dim>`, followed
//! by `n` lines of `<photo_id> <v1> ... <v_dim>`, single-space separated.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Method, Neighbor, SimilarityGraph, TopK};
use crate::ingest::PhotoRecord;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("line 1: expected `<n> <dim>`, found `{0}`")]
    Header(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("row `{id}` has {found} components, expected {expected}")]
    DimensionMismatch { id: String, expected: usize, found: usize },
    #[error("line {line}: cannot parse component `{value}`")]
    Number { line: usize, value: String },
    #[error("row `{id}` has a non-finite component")]
    NonFinite { id: String },
    #[error("embedding for `{0}` is the zero vector")]
    ZeroVector(String),
    #[error("embedding for unknown photo id `{0}`")]
    UnknownId(String),
    #[error("duplicate embedding for `{0}`")]
    DuplicateId(String),
    #[error("header declares {declared} rows, file has {found}")]
    RowCount { declared: usize, found: usize },
    #[error("line {0}: empty row")]
    EmptyRow(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Unit-length embedding rows stored row-major in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix<T> {
    dim: usize,
    ids: Vec<String>,
    data: Vec<T>,
    normalized: bool,
}

/// Records without an embedding row; they get no visual neighbors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub missing: Vec<String>,
}

impl<T: Scalar> EmbeddingMatrix<T> {
    /// Validates and L2-normalizes rows. Row order does not matter.
    pub fn from_rows(
        dim: usize,
        rows: impl IntoIterator<Item = (String, Vec<T>)>,
    ) -> Result<Self, EmbeddingError> {
        if dim == 0 {
            return Err(EmbeddingError::ZeroDimension);
        }
        let mut rows: Vec<(String, Vec<T>)> = rows.into_iter().collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(pair) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(EmbeddingError::DuplicateId(pair[0].0.clone()));
        }
        let mut data = Vec::with_capacity(rows.len() * dim);
        let mut ids = Vec::with_capacity(rows.len());
        for (id, mut row) in rows {
            if row.len() != dim {
                return Err(EmbeddingError::DimensionMismatch {
                    id,
                    expected: dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(EmbeddingError::NonFinite { id });
            }
            let norm = row.iter().map(|&v| v * v).sum::<T>().sqrt();
            if norm == T::zero() || !norm.is_finite() {
                return Err(EmbeddingError::ZeroVector(id));
            }
            row.iter_mut().for_each(|v| *v = *v / norm);
            data.extend(row);
            ids.push(id);
        }
        Ok(Self { dim, ids, data, normalized: true })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn row(&self, index: usize) -> &[T] {
        &self.data[index * self.dim..(index + 1) * self.dim]
    }

    pub fn row_by_id(&self, id: &str) -> Option<&[T]> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .ok()
            .map(|i| self.row(i))
    }
}

type Rows<T> = Vec<(String, Vec<T>)>;

fn parse_rows<T: Scalar, R: BufRead>(source: R) -> Result<(usize, Rows<T>), EmbeddingError> {
    let mut lines = source.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (declared, dim) = match fields.as_slice() {
        [n, d] => match (n.parse::<usize>(), d.parse::<usize>()) {
            (Ok(n), Ok(d)) => (n, d),
            _ => return Err(EmbeddingError::Header(header.clone())),
        },
        _ => return Err(EmbeddingError::Header(header.clone())),
    };
    if dim == 0 {
        return Err(EmbeddingError::ZeroDimension);
    }

    let mut rows = Vec::with_capacity(declared);
    for (offset, line) in lines.enumerate() {
        let line_no = offset + 2;
        let line = line?;
        if line.trim().is_empty() {
            // Trailing blank lines are tolerated; interior ones are not.
            if rows.len() == declared {
                continue;
            }
            return Err(EmbeddingError::EmptyRow(line_no));
        }
        let mut fields = line.split_whitespace();
        let id = fields.next().unwrap_or_default().to_string();
        let values = fields
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .and_then(T::from_f64)
                    .ok_or_else(|| EmbeddingError::Number { line: line_no, value: v.to_string() })
            })
            .collect::<Result<Vec<T>, _>>()?;
        if values.len() != dim {
            return Err(EmbeddingError::DimensionMismatch {
                id,
                expected: dim,
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(EmbeddingError::NonFinite { id });
        }
        rows.push((id, values));
    }
    if rows.len() != declared {
        return Err(EmbeddingError::RowCount { declared, found: rows.len() });
    }
    Ok((dim, rows))
}

/// Reads an embedding file, checks every row id against the archive, and
/// normalizes rows to unit length.
pub fn load_embeddings<T: Scalar, R: BufRead>(
    source: R,
    records: &[PhotoRecord],
) -> Result<(EmbeddingMatrix<T>, EmbeddingReport), EmbeddingError> {
    let (dim, rows) = parse_rows::<T, _>(source)?;
    let known: HashSet<&str> = records.iter().map(|r| r.id.as_str()).collect();
    if let Some((id, _)) = rows.iter().find(|(id, _)| !known.contains(id.as_str())) {
        return Err(EmbeddingError::UnknownId(id.clone()));
    }
    let matrix = EmbeddingMatrix::from_rows(dim, rows)?;
    let mut missing: Vec<String> = records
        .iter()
        .filter(|r| matrix.row_by_id(&r.id).is_none())
        .map(|r| r.id.clone())
        .collect();
    missing.sort();
    Ok((matrix, EmbeddingReport { missing }))
}

/// Writes rows in the embedding file format.
pub fn write_embeddings<T: Scalar, W: Write>(
    dim: usize,
    rows: &[(String, Vec<T>)],
    mut sink: W,
) -> std::io::Result<()> {
    writeln!(sink, "{} {}", rows.len(), dim)?;
    for (id, values) in rows {
        write!(sink, "{id}")?;
        for v in values {
            write!(sink, " {v}")?;
        }
        writeln!(sink)?;
    }
    Ok(())
}

/// Dot product with eight independent accumulators. The summation order
/// depends only on the vector length, so the result does not depend on tiling.
#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 8];
    let (ca, cb) = (a.chunks_exact(8), b.chunks_exact(8));
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for lane in 0..8 {
            acc[lane] = acc[lane] + x[lane] * y[lane];
        }
    }
    let mut sum = ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
    for (x, y) in ra.iter().zip(rb) {
        sum = sum + *x * *y;
    }
    sum
}

const SOURCE_TILE: usize = 32;
const TARGET_TILE: usize = 256;

/// Exact top-`k` cosine neighbors for every embedded photo.
///
/// Sources are processed in tiles in parallel; each source tile streams over
/// target tiles so that both stay cache resident.
pub fn build_visual_graph<T: Scalar>(matrix: &EmbeddingMatrix<T>, k: usize) -> SimilarityGraph<T> {
    let n = matrix.len();
    let lists: Vec<Vec<Neighbor<T>>> = (0..n.div_ceil(SOURCE_TILE))
        .into_par_iter()
        .flat_map_iter(|tile| {
            let sources = tile * SOURCE_TILE..((tile + 1) * SOURCE_TILE).min(n);
            let mut tops: Vec<TopK<T>> = sources.clone().map(|_| TopK::new(k)).collect();
            for target_start in (0..n).step_by(TARGET_TILE) {
                let targets = target_start..(target_start + TARGET_TILE).min(n);
                for (top, s) in tops.iter_mut().zip(sources.clone()) {
                    let row = matrix.row(s);
                    for t in targets.clone() {
                        if t != s {
                            let score = dot(row, matrix.row(t)).max(-T::one()).min(T::one());
                            top.push(score, t as u32);
                        }
                    }
                }
            }
            tops.into_iter().map(|top| {
                top.into_sorted()
                    .into_iter()
                    .map(|(score, t)| Neighbor { id: matrix.ids[t as usize].clone(), score })
                    .collect()
            })
        })
        .collect();

    SimilarityGraph {
        method: Method::Visual,
        k,
        edges: matrix.ids.iter().cloned().zip(lists).collect(),
    }
}
