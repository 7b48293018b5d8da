//! Caption recommender: tokenize captions without place names, weight them
//! with TF-IDF, and link each captioned photo to its most similar captions.

mod tfidf;
mod tokenize;

pub use tfidf::{build_text_graph, build_tfidf, SparseVector, TermStats, TfidfModel, MIN_TOKENS};
pub use tokenize::{is_stopword, stopwords, tokenize_caption, tokenize_records, TokenizedCaption};
