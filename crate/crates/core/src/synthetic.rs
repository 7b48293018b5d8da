//! Seeded synthetic archives for demos, benchmarks, and tests.
//!
//! The generator mimics the shape of a 1930s and 1940s documentary photo archive:
//! a skewed photographer distribution, fewer than half the photos captioned,
//! patchy geotags, and theme-clustered image embeddings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::geo::AlbersEqualArea;
use crate::ingest::PhotoRecord;

/// (state, county FIPS, county name, lon, lat)
pub const COUNTIES: &[(&str, &str, &str, f64, f64)] = &[
    ("Alabama", "01065", "Hale", -87.63, 32.76),
    ("Alaska", "02020", "Anchorage", -149.9, 61.2),
    ("California", "06029", "Kern", -118.73, 35.34),
    ("California", "06037", "Los Angeles", -118.23, 34.32),
    ("District of Columbia", "11001", "District of Columbia", -77.02, 38.9),
    ("Georgia", "13133", "Greene", -83.17, 33.58),
    ("Hawaii", "15003", "Honolulu", -157.96, 21.46),
    ("Illinois", "17031", "Cook", -87.65, 41.84),
    ("Iowa", "19099", "Jasper", -93.05, 41.69),
    ("Iowa", "19153", "Polk", -93.57, 41.69),
    ("Kansas", "20055", "Finney", -100.74, 38.04),
    ("Mississippi", "28133", "Sunflower", -90.59, 33.6),
    ("Montana", "30063", "Missoula", -113.92, 47.04),
    ("Nebraska", "31055", "Douglas", -96.15, 41.3),
    ("New Mexico", "35041", "Roosevelt", -103.48, 34.02),
    ("New York", "36061", "New York", -73.97, 40.78),
    ("North Carolina", "37063", "Durham", -78.88, 36.03),
    ("Ohio", "39035", "Cuyahoga", -81.68, 41.43),
    ("Oklahoma", "40109", "Oklahoma", -97.41, 35.55),
    ("Oregon", "41031", "Jefferson", -121.17, 44.63),
    ("Pennsylvania", "42003", "Allegheny", -79.98, 40.47),
    ("Puerto Rico", "72127", "San Juan", -66.06, 18.41),
    ("Texas", "48113", "Dallas", -96.78, 32.77),
    ("Texas", "48201", "Harris", -95.39, 29.86),
    ("Texas", "48241", "Jasper", -94.02, 30.74),
    ("Texas", "48453", "Travis", -97.78, 30.33),
    ("Virgin Islands", "78030", "St. Thomas", -64.93, 18.35),
    ("West Virginia", "54109", "Wyoming", -81.55, 37.6),
];

/// Ordered from most to least prolific.
pub const PHOTOGRAPHERS: &[&str] = &[
    "Russell Lee",
    "Jack Delano",
    "John Vachon",
    "Marion Post Wolcott",
    "Arthur Rothstein",
    "Dorothea Lange",
    "John Collier",
    "Walker Evans",
    "Carl Mydans",
    "Esther Bubley",
    "Marjory Collins",
    "Ben Shahn",
    "Gordon Parks",
    "Theodor Jung",
    "Arthur Siegel",
    "Howard Liberman",
    "Alfred T. Palmer",
    "Louise Rosskam",
];

/// (theme path, caption vocabulary)
pub const THEMES: &[(&str, &[&str])] = &[
    ("The Land/Farms/Corn", &["corn", "field", "harvest", "husking", "crib", "tractor", "farmer"]),
    ("The Land/Farms/Cotton", &["cotton", "pickers", "sharecropper", "gin", "bale", "field", "hoeing"]),
    ("The Land/Erosion", &["dust", "storm", "eroded", "gullies", "drought", "abandoned", "farm"]),
    ("Work/Mining/Coal", &["coal", "miner", "tipple", "shaft", "company", "camp", "lamp"]),
    ("Work/Migrant labor", &["migrant", "pea", "pickers", "camp", "tent", "family", "trailer"]),
    ("Cities and towns/Street scenes", &["street", "sidewalk", "storefront", "sign", "crowd", "saturday", "corner"]),
    ("Homes and living conditions/Interiors", &["kitchen", "stove", "bedroom", "newspaper", "walls", "table", "child"]),
    ("War/Industry/Aircraft", &["bomber", "assembly", "rivet", "plant", "worker", "wing", "factory"]),
    ("Transportation/Railroads", &["railroad", "freight", "yard", "locomotive", "engineer", "roundhouse", "cars"]),
    ("People/Children", &["children", "school", "playing", "boy", "girl", "schoolhouse", "lunch"]),
];

const COMMON_WORDS: &[&str] = &["old", "man", "woman", "house", "road", "near", "of", "the", "in", "a", "with", "and"];

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub records: usize,
    pub seed: u64,
    pub caption_rate: f64,
    pub embedding_dim: usize,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self { records: 2_000, seed: 1935, caption_rate: 0.45, embedding_dim: 32 }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticArchive {
    pub records: Vec<PhotoRecord>,
    pub embedding_dim: usize,
    /// One raw (unnormalized) embedding per record.
    pub embeddings: Vec<(String, Vec<f64>)>,
}

fn caption(rng: &mut impl Rng, theme: usize, county: Option<usize>) -> String {
    let vocab = THEMES[theme].1;
    let mut words: Vec<String> = Vec::new();
    // Short captions are common; some will not survive token filtering.
    let len = if rng.gen_bool(0.2) { rng.gen_range(1..3) } else { rng.gen_range(3..9) };
    for _ in 0..len {
        let word = if rng.gen_bool(0.75) {
            vocab.choose(rng).unwrap()
        } else {
            COMMON_WORDS.choose(rng).unwrap()
        };
        words.push(word.to_string());
    }
    if let Some(c) = county {
        let (state, _, county_name, _, _) = COUNTIES[c];
        words.push(format!("{county_name} County, {state}"));
    }
    if rng.gen_bool(0.3) {
        words.push(rng.gen_range(1935..1943).to_string());
    }
    let mut text = words.join(" ");
    if let Some(first) = text.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    text
}

/// Generates a deterministic archive for `config.seed`.
pub fn generate(config: &SyntheticConfig) -> SyntheticArchive {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let prefixes = ["8a", "8b", "8c", "8d", "fsa"];
    let dim = config.embedding_dim;
    let centers: Vec<Vec<f64>> = (0..THEMES.len())
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();

    let mut records = Vec::with_capacity(config.records);
    let mut embeddings = Vec::with_capacity(config.records);
    for n in 0..config.records {
        let id = format!("{}{:05}", prefixes[n % prefixes.len()], n);
        let theme = rng.gen_range(0..THEMES.len());
        // Zipf-like weight toward the front of the photographer list.
        let photographer = (!rng.gen_bool(0.05)).then(|| {
            let r: f64 = rng.gen();
            let index = ((PHOTOGRAPHERS.len() as f64) * r * r) as usize;
            PHOTOGRAPHERS[index.min(PHOTOGRAPHERS.len() - 1)].to_string()
        });
        let year = (!rng.gen_bool(0.08)).then(|| rng.gen_range(1935..=1944));
        let month = year.and_then(|_| rng.gen_bool(0.7).then(|| rng.gen_range(1..=12)));
        let county = (!rng.gen_bool(0.1)).then(|| rng.gen_range(0..COUNTIES.len()));
        let with_county = county.filter(|_| rng.gen_bool(0.8));
        let (state, county_fips, county_name, lat, lon) = match (county, with_county) {
            (Some(c), Some(_)) => {
                let (state, fips, name, lon, lat) = COUNTIES[c];
                (
                    Some(state.to_string()),
                    Some(fips.to_string()),
                    Some(name.to_string()),
                    Some(((lat + rng.gen_range(-0.2..0.2)) * 1e4f64).round() / 1e4),
                    Some(((lon + rng.gen_range(-0.2..0.2)) * 1e4f64).round() / 1e4),
                )
            }
            (Some(c), None) => (Some(COUNTIES[c].0.to_string()), None, None, None, None),
            _ => (None, None, None, None, None),
        };
        let caption = rng
            .gen_bool(config.caption_rate)
            .then(|| caption(&mut rng, theme, with_county));
        let theme_path = (!rng.gen_bool(0.15))
            .then(|| THEMES[theme].0.split('/').map(String::from).collect());

        let scale = rng.gen_range(0.5..4.0);
        let vector = centers[theme]
            .iter()
            .map(|c| scale * (c + rng.gen_range(-0.8..0.8)))
            .collect();
        embeddings.push((id.clone(), vector));
        records.push(PhotoRecord {
            image_url: format!("https://images.example.org/{id}.jpg"),
            thumb_url: format!("https://images.example.org/{id}_150px.jpg"),
            id,
            caption,
            photographer,
            year,
            month,
            state,
            county_fips,
            county_name,
            lat,
            lon,
            theme_path,
        });
    }
    SyntheticArchive { records, embedding_dim: dim, embeddings }
}

fn projected_box(proj: &AlbersEqualArea<f64>, west: f64, south: f64, east: f64, north: f64) -> Value {
    let steps = 4;
    let mut ring = Vec::new();
    for i in 0..steps {
        ring.push((west + (east - west) * i as f64 / steps as f64, south));
    }
    for i in 0..steps {
        ring.push((east, south + (north - south) * i as f64 / steps as f64));
    }
    for i in 0..steps {
        ring.push((east - (east - west) * i as f64 / steps as f64, north));
    }
    for i in 0..steps {
        ring.push((west, north - (north - south) * i as f64 / steps as f64));
    }
    ring.push(ring[0]);
    let coords: Vec<Value> = ring
        .into_iter()
        .map(|(lon, lat)| {
            let (x, y) = proj.project(lon, lat);
            json!([(x * 10.0).round() / 10.0, (y * 10.0).round() / 10.0])
        })
        .collect();
    json!({"type": "Polygon", "coordinates": [coords]})
}

/// Base county polygons (small boxes around each county seat) in Conus Albers meters.
pub fn county_geojson() -> Value {
    let proj = AlbersEqualArea::conus();
    let features: Vec<Value> = COUNTIES
        .iter()
        .map(|&(state, fips, name, lon, lat)| {
            json!({
                "type": "Feature",
                "properties": {"fips": fips, "name": name, "state": state},
                "geometry": projected_box(&proj, lon - 0.3, lat - 0.25, lon + 0.3, lat + 0.25),
            })
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}

/// Base state polygons (bounding boxes of their counties, padded) in Conus Albers meters.
pub fn state_geojson() -> Value {
    let proj = AlbersEqualArea::conus();
    let mut states: Vec<&str> = COUNTIES.iter().map(|c| c.0).collect();
    states.dedup();
    let features: Vec<Value> = states
        .into_iter()
        .map(|state| {
            let members = COUNTIES.iter().filter(|c| c.0 == state);
            let (mut w, mut s, mut e, mut n) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
            for c in members {
                w = w.min(c.3);
                e = e.max(c.3);
                s = s.min(c.4);
                n = n.max(c.4);
            }
            json!({
                "type": "Feature",
                "properties": {"state": state},
                "geometry": projected_box(&proj, w - 1.0, s - 0.8, e + 1.0, n + 0.8),
            })
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}
