//! Per-photo neighbor lists shared by the caption and visual recommenders.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Text,
    Visual,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Text, Method::Visual];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Text => "text",
            Method::Visual => "visual",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Neighbor<T> {
    pub id: String,
    pub score: T,
}

/// Directed kNN graph: each source photo maps to at most `k` neighbors,
/// best first (descending score, ties by ascending id).
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph<T> {
    pub method: Method,
    pub k: usize,
    pub edges: BTreeMap<String, Vec<Neighbor<T>>>,
}

impl<T: Scalar> SimilarityGraph<T> {
    pub fn new(method: Method, k: usize) -> Self {
        Self { method, k, edges: BTreeMap::new() }
    }

    pub fn neighbors(&self, id: &str) -> Option<&[Neighbor<T>]> {
        self.edges.get(id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks ordering, self-exclusion, list length, and that every endpoint is a source.
    pub fn validate(&self) -> Result<(), String> {
        for (source, list) in &self.edges {
            if list.len() > self.k {
                return Err(format!("{source}: {} neighbors exceeds k={}", list.len(), self.k));
            }
            for pair in list.windows(2) {
                let ordered = match pair[0].score.partial_cmp(&pair[1].score) {
                    Some(Ordering::Greater) => true,
                    Some(Ordering::Equal) => pair[0].id < pair[1].id,
                    _ => false,
                };
                if !ordered {
                    return Err(format!("{source}: neighbors out of order at {}", pair[1].id));
                }
            }
            for n in list {
                if &n.id == source {
                    return Err(format!("{source}: lists itself"));
                }
                if !self.edges.contains_key(&n.id) {
                    return Err(format!("{source}: unknown neighbor {}", n.id));
                }
            }
        }
        Ok(())
    }

    /// Applies `f` to every score.
    pub fn map_scores<U: Scalar>(&self, f: impl Fn(T) -> U) -> SimilarityGraph<U> {
        SimilarityGraph {
            method: self.method,
            k: self.k,
            edges: self
                .edges
                .iter()
                .map(|(id, list)| {
                    let list = list
                        .iter()
                        .map(|n| Neighbor { id: n.id.clone(), score: f(n.score) })
                        .collect();
                    (id.clone(), list)
                })
                .collect(),
        }
    }
}

/// Candidate in a bounded top-k selection, identified by its position in an
/// id-sorted list so that a smaller position means a smaller id.
#[derive(Debug, Clone, Copy)]
struct Candidate<T> {
    score: T,
    position: u32,
}

impl<T: Scalar> Candidate<T> {
    /// `Less` means `self` ranks ahead of `other`.
    fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .score
            .partial_cmp(&self.score)
            .unwrap_or(Ordering::Equal)
            .then(self.position.cmp(&other.position))
    }
}

impl<T: Scalar> PartialEq for Candidate<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rank_cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Candidate<T> {}
impl<T: Scalar> PartialOrd for Candidate<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Candidate<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank_cmp(other)
    }
}

/// Keeps the `k` best candidates seen so far; the heap top is the worst kept.
#[derive(Debug, Clone)]
pub(crate) struct TopK<T> {
    k: usize,
    heap: BinaryHeap<Candidate<T>>,
}

impl<T: Scalar> TopK<T> {
    pub(crate) fn new(k: usize) -> Self {
        Self { k, heap: BinaryHeap::with_capacity(k + 1) }
    }

    #[inline]
    pub(crate) fn push(&mut self, score: T, position: u32) {
        if self.k == 0 {
            return;
        }
        let candidate = Candidate { score, position };
        if self.heap.len() < self.k {
            self.heap.push(candidate);
        } else if let Some(mut worst) = self.heap.peek_mut() {
            if candidate < *worst {
                *worst = candidate;
            }
        }
    }

    /// Best first.
    pub(crate) fn into_sorted(self) -> Vec<(T, u32)> {
        self.heap
            .into_sorted_vec()
            .into_iter()
            .map(|c| (c.score, c.position))
            .collect()
    }
}
