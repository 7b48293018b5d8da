use super::AlbersEqualArea;

/// Scale-and-translate placing an outlying state or territory next to the
/// conterminous states, in Conus Albers meters:
/// `p' = scale * (p - project(anchor)) + target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inset {
    pub state: &'static str,
    /// Two-digit state FIPS prefix of the region's counties.
    pub fips: &'static str,
    pub scale: f64,
    /// (lon, lat) in degrees; its projection is moved onto `target`.
    pub anchor: (f64, f64),
    pub target: (f64, f64),
    /// Inset frame `[min_x, min_y, max_x, max_y]` the region lands in.
    pub frame: [f64; 4],
}

/// Puerto Rico and the Virgin Islands share anchor, scale, and target so
/// they keep their relative placement.
pub const INSETS: [Inset; 4] = [
    Inset {
        state: "Alaska",
        fips: "02",
        scale: 0.35,
        anchor: (-152.0, 63.0),
        target: (-1_850_000.0, 350_000.0),
        frame: [-2_400_000.0, -150_000.0, -1_450_000.0, 850_000.0],
    },
    Inset {
        state: "Hawaii",
        fips: "15",
        scale: 1.0,
        anchor: (-157.0, 20.5),
        target: (-1_000_000.0, 400_000.0),
        frame: [-1_450_000.0, 50_000.0, -600_000.0, 850_000.0],
    },
    Inset {
        state: "Puerto Rico",
        fips: "72",
        scale: 1.5,
        anchor: (-66.5, 18.2),
        target: (1_350_000.0, 50_000.0),
        frame: [1_100_000.0, -150_000.0, 1_800_000.0, 300_000.0],
    },
    Inset {
        state: "Virgin Islands",
        fips: "78",
        scale: 1.5,
        anchor: (-66.5, 18.2),
        target: (1_350_000.0, 50_000.0),
        frame: [1_100_000.0, -150_000.0, 1_800_000.0, 300_000.0],
    },
];

impl Inset {
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        self.transform()(x, y)
    }

    /// The affine map with the anchor projection computed once.
    pub fn transform(&self) -> impl Fn(f64, f64) -> (f64, f64) {
        let (ax, ay) = AlbersEqualArea::<f64>::conus().project(self.anchor.0, self.anchor.1);
        let (scale, (tx, ty)) = (self.scale, self.target);
        move |x, y| (scale * (x - ax) + tx, scale * (y - ay) + ty)
    }

    pub fn frame_contains(&self, x: f64, y: f64) -> bool {
        let [x0, y0, x1, y1] = self.frame;
        (x0..=x1).contains(&x) && (y0..=y1).contains(&y)
    }
}

pub fn inset_for_state(state: &str) -> Option<&'static Inset> {
    INSETS.iter().find(|i| i.state == state)
}

pub fn inset_for_county(fips: &str) -> Option<&'static Inset> {
    INSETS.iter().find(|i| fips.starts_with(i.fips))
}
