//! Fixed and seeded inputs shared by the integration and acceptance tests.
#![allow(dead_code, clippy::excessive_precision)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn toy_corpus() -> BTreeMap<String, Vec<String>> {
    [
        ("d1", "apple orchard apple picker"),
        ("d2", "apple orchard pear trees"),
        ("d3", "farmer plowing field field"),
        ("d4", "pear trees orchard blossom blossom"),
        ("d5", "migrant mother children tent"),
        ("d6", "dust storm"),
    ]
    .into_iter()
    .map(|(id, text)| (id.to_string(), text.split(' ').map(String::from).collect()))
    .collect()
}

// Frozen from a 40-digit hand computation of
// w = tf * (ln((1+N)/(1+df)) + 1), L2-normalized, N = 5 (d6 has too few tokens).
pub const IDF: &[(&str, f64)] = &[
    ("apple", 1.693_147_180_559_945_3),
    ("blossom", 2.098_612_288_668_109_7),
    ("orchard", 1.405_465_108_108_164_4),
    ("pear", 1.693_147_180_559_945_3),
];
pub const WEIGHTS: &[(&str, &str, f64)] = &[
    ("d1", "apple", 0.801_582_519_146_996_43),
    ("d1", "orchard", 0.332_692_950_401_975_2),
    ("d1", "picker", 0.496_770_435_664_989_99),
    ("d2", "apple", 0.520_646_234_140_669_24),
    ("d2", "orchard", 0.432_183_406_235_614_6),
    ("d2", "pear", 0.520_646_234_140_669_24),
    ("d2", "trees", 0.520_646_234_140_669_24),
    ("d3", "farmer", 0.408_248_290_463_863),
    ("d3", "field", 0.816_496_580_927_726),
    ("d3", "plowing", 0.408_248_290_463_863),
    ("d4", "blossom", 0.834_032_573_241_250_5),
    ("d4", "orchard", 0.279_280_667_288_045_64),
    ("d4", "pear", 0.336_446_114_297_462_26),
    ("d4", "trees", 0.336_446_114_297_462_26),
    ("d5", "children", 0.5),
    ("d5", "migrant", 0.5),
    ("d5", "mother", 0.5),
    ("d5", "tent", 0.5),
];
pub const COSINES: &[(&str, &str, f64)] = &[
    ("d1", "d2", 0.561_125_292_482_176_6),
    ("d1", "d3", 0.0),
    ("d1", "d4", 0.092_914_709_190_292_31),
    ("d1", "d5", 0.0),
    ("d2", "d3", 0.0),
    ("d2", "d4", 0.471_039_274_884_772_75),
    ("d2", "d5", 0.0),
    ("d3", "d4", 0.0),
    ("d3", "d5", 0.0),
    ("d4", "d5", 0.0),
];

pub fn random_corpus(n: usize, seed: u64) -> BTreeMap<String, Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab: Vec<String> = (0..400).map(|i| format!("w{i}")).collect();
    (0..n)
        .map(|i| {
            let len = rng.gen_range(1..14);
            // Skew toward a common head so documents overlap.
            let tokens = (0..len)
                .map(|_| {
                    let r: f64 = rng.gen();
                    vocab[((vocab.len() as f64) * r * r * r) as usize].clone()
                })
                .collect();
            (format!("c{i:04}"), tokens)
        })
        .collect()
}

pub fn random_rows(n: usize, dim: usize, seed: u64) -> Vec<(String, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| (format!("p{i:05}"), (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()))
        .collect()
}
