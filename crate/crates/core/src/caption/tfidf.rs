use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::{Method, Neighbor, SimilarityGraph, TopK};
use crate::scalar::Scalar;

/// Captions with fewer surviving tokens are left out of the model.
pub const MIN_TOKENS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermStats {
    pub column: u32,
    /// Number of included documents containing the term.
    pub df: usize,
}

/// Sparse vector with entries sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector<T> {
    entries: Vec<(u32, T)>,
}

impl<T: Scalar> SparseVector<T> {
    pub fn entries(&self) -> &[(u32, T)] {
        &self.entries
    }

    pub fn get(&self, column: u32) -> Option<T> {
        self.entries
            .binary_search_by_key(&column, |&(c, _)| c)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(|&(_, w)| w * w).sum::<T>().sqrt()
    }

    /// Merge-join dot product, accumulated in ascending column order.
    pub fn dot(&self, other: &Self) -> T {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = T::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc + a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

/// TF-IDF weights for the included captions.
///
/// `weight(t, d) = tf(t, d) * (ln((1 + N) / (1 + df(t))) + 1)` with raw term
/// counts for `tf`, then every document vector is scaled to unit length.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfModel<T> {
    vocabulary: BTreeMap<String, TermStats>,
    doc_vectors: BTreeMap<String, SparseVector<T>>,
    n_docs: usize,
}

impl<T: Scalar> TfidfModel<T> {
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn vocabulary(&self) -> &BTreeMap<String, TermStats> {
        &self.vocabulary
    }

    pub fn doc_vectors(&self) -> &BTreeMap<String, SparseVector<T>> {
        &self.doc_vectors
    }

    pub fn contains(&self, photo_id: &str) -> bool {
        self.doc_vectors.contains_key(photo_id)
    }

    pub fn idf(&self, term: &str) -> Option<T> {
        self.vocabulary.get(term).map(|s| smoothed_idf(self.n_docs, s.df))
    }

    /// Normalized weight of `term` in a document, or `None` if either is unknown
    /// or the term does not occur in it.
    pub fn weight(&self, photo_id: &str, term: &str) -> Option<T> {
        let column = self.vocabulary.get(term)?.column;
        self.doc_vectors.get(photo_id)?.get(column)
    }

    pub fn cosine(&self, a: &str, b: &str) -> Option<T> {
        Some(self.doc_vectors.get(a)?.dot(self.doc_vectors.get(b)?))
    }
}

fn smoothed_idf<T: Scalar>(n_docs: usize, df: usize) -> T {
    let ratio = T::lit((1 + n_docs) as f64) / T::lit((1 + df) as f64);
    ratio.ln() + T::one()
}

/// Builds the model from already-filtered token lists.
pub fn build_tfidf<T: Scalar>(captions: &BTreeMap<String, Vec<String>>) -> TfidfModel<T> {
    let included: Vec<(&String, BTreeMap<&str, usize>)> = captions
        .iter()
        .filter(|(_, tokens)| tokens.len() >= MIN_TOKENS)
        .map(|(id, tokens)| {
            let mut tf = BTreeMap::new();
            for t in tokens {
                *tf.entry(t.as_str()).or_insert(0usize) += 1;
            }
            (id, tf)
        })
        .collect();
    let n_docs = included.len();

    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, tf) in &included {
        for term in tf.keys() {
            *df.entry(term).or_default() += 1;
        }
    }
    let vocabulary: BTreeMap<String, TermStats> = df
        .iter()
        .enumerate()
        .map(|(column, (term, &df))| (term.to_string(), TermStats { column: column as u32, df }))
        .collect();

    let doc_vectors = included
        .into_iter()
        .map(|(id, tf)| {
            // tf is keyed by term and columns follow term order, so entries come out sorted.
            let mut entries: Vec<(u32, T)> = tf
                .into_iter()
                .map(|(term, count)| {
                    let stats = vocabulary[term];
                    (stats.column, T::lit(count as f64) * smoothed_idf(n_docs, stats.df))
                })
                .collect();
            let norm = entries.iter().map(|&(_, w)| w * w).sum::<T>().sqrt();
            for (_, w) in &mut entries {
                *w = *w / norm;
            }
            (id.clone(), SparseVector { entries })
        })
        .collect();

    TfidfModel { vocabulary, doc_vectors, n_docs }
}

/// Links every included caption to its `k` most similar other captions by
/// cosine (fewer when the model has at most `k` documents).
pub fn build_text_graph<T: Scalar>(model: &TfidfModel<T>, k: usize) -> SimilarityGraph<T> {
    let ids: Vec<&String> = model.doc_vectors.keys().collect();
    let vectors: Vec<&SparseVector<T>> = model.doc_vectors.values().collect();
    let n = ids.len();

    let mut postings: Vec<Vec<(u32, T)>> = vec![Vec::new(); model.vocabulary.len()];
    for (doc, v) in vectors.iter().enumerate() {
        for &(column, w) in &v.entries {
            postings[column as usize].push((doc as u32, w));
        }
    }

    let lists: Vec<Vec<Neighbor<T>>> = (0..n)
        .into_par_iter()
        .map_init(
            || vec![T::zero(); n],
            |scores, source| {
                scores.iter_mut().for_each(|s| *s = T::zero());
                // Accumulating per source column in ascending order matches SparseVector::dot bit for bit.
                for &(column, w) in &vectors[source].entries {
                    for &(doc, other) in &postings[column as usize] {
                        let s = &mut scores[doc as usize];
                        *s = *s + w * other;
                    }
                }
                let mut top = TopK::new(k);
                for (doc, &score) in scores.iter().enumerate() {
                    if doc != source {
                        top.push(score, doc as u32);
                    }
                }
                top.into_sorted()
                    .into_iter()
                    .map(|(score, doc)| Neighbor { id: ids[doc as usize].clone(), score })
                    .collect()
            },
        )
        .collect();

    SimilarityGraph {
        method: Method::Text,
        k,
        edges: ids.into_iter().cloned().zip(lists).collect(),
    }
}
