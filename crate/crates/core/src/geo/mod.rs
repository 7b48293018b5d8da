//! Map geometry: the conterminous-U.S. Albers projection and the fixed inset
//! placement of Alaska, Hawaii, Puerto Rico, and the Virgin Islands.

mod albers;
mod inset;

pub use albers::AlbersEqualArea;
pub use inset::{inset_for_county, inset_for_state, Inset, INSETS};

use serde_json::Value;

/// Calls `f` on every `[x, y, ...]` position inside a GeoJSON geometry's
/// `coordinates`, at any nesting depth. Non-numeric entries are left alone.
pub fn map_positions(coordinates: &mut Value, f: &mut impl FnMut(f64, f64) -> (f64, f64)) {
    let Value::Array(items) = coordinates else { return };
    let is_position = items.len() >= 2 && items[0].is_number() && items[1].is_number();
    if is_position {
        let (x, y) = (items[0].as_f64().unwrap_or(0.0), items[1].as_f64().unwrap_or(0.0));
        let (nx, ny) = f(x, y);
        items[0] = Value::from(nx);
        items[1] = Value::from(ny);
    } else {
        for item in items {
            map_positions(item, f);
        }
    }
}

/// Applies `f` to every position of a geometry object, descending into
/// `GeometryCollection` members.
pub fn map_geometry(geometry: &mut Value, f: &mut impl FnMut(f64, f64) -> (f64, f64)) {
    if let Some(members) = geometry.get_mut("geometries").and_then(Value::as_array_mut) {
        for member in members {
            map_geometry(member, f);
        }
    }
    if let Some(coordinates) = geometry.get_mut("coordinates") {
        map_positions(coordinates, f);
    }
}

/// Vertex centroid of every position in a geometry; `None` for empty geometries.
pub fn vertex_centroid(geometry: &Value) -> Option<(f64, f64)> {
    let mut copy = geometry.clone();
    let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
    map_geometry(&mut copy, &mut |x, y| {
        sx += x;
        sy += y;
        n += 1;
        (x, y)
    });
    (n > 0).then(|| (sx / n as f64, sy / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn positions_at_every_depth() {
        let mut g = json!({"type": "MultiPolygon", "coordinates": [[[[0, 0], [2, 0], [2, 2], [0, 0]]]]});
        map_geometry(&mut g, &mut |x, y| (x + 1.0, y * 10.0));
        assert_eq!(g["coordinates"][0][0][1], json!([3.0, 0.0]));
        assert_eq!(vertex_centroid(&g), Some((2.0, 5.0)));

        let mut p = json!({"type": "GeometryCollection", "geometries": [{"type": "Point", "coordinates": [1.0, 1.0]}]});
        map_geometry(&mut p, &mut |x, y| (-x, -y));
        assert_eq!(p["geometries"][0]["coordinates"], json!([-1.0, -1.0]));
        assert_eq!(vertex_centroid(&json!({"type": "Polygon", "coordinates": []})), None);
    }
}
