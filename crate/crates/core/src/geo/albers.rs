use crate::scalar::Scalar;

/// Ellipsoidal Albers equal-area conic projection (forward only).
///
/// [`AlbersEqualArea::conus`] uses the NAD83 / Conus Albers parameters
/// (standard parallels 29.5° and 45.5°, origin 23°N 96°W, GRS80), which is the
/// projected coordinate system the exported map geometry is expected in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlbersEqualArea<T> {
    semi_major: T,
    eccentricity: T,
    lon0: T,
    n: T,
    c: T,
    rho0: T,
}

impl<T: Scalar> AlbersEqualArea<T> {
    /// Angles in degrees.
    pub fn new(lat1: T, lat2: T, lat0: T, lon0: T, semi_major: T, inverse_flattening: T) -> Self {
        let f = T::one() / inverse_flattening;
        let e2 = f * (T::lit(2.0) - f);
        let eccentricity = e2.sqrt();
        let (phi1, phi2, phi0) = (lat1.to_radians(), lat2.to_radians(), lat0.to_radians());
        let m1 = Self::m(phi1, e2);
        let m2 = Self::m(phi2, e2);
        let q1 = Self::q(phi1, eccentricity);
        let q2 = Self::q(phi2, eccentricity);
        let q0 = Self::q(phi0, eccentricity);
        let n = if (lat1 - lat2).abs() > T::lit(1e-10) {
            (m1 * m1 - m2 * m2) / (q2 - q1)
        } else {
            phi1.sin()
        };
        let c = m1 * m1 + n * q1;
        let rho0 = semi_major * (c - n * q0).sqrt() / n;
        Self { semi_major, eccentricity, lon0: lon0.to_radians(), n, c, rho0 }
    }

    pub fn conus() -> Self {
        Self::new(
            T::lit(29.5),
            T::lit(45.5),
            T::lit(23.0),
            T::lit(-96.0),
            T::lit(6_378_137.0),
            T::lit(298.257_222_101),
        )
    }

    fn m(phi: T, e2: T) -> T {
        let s = phi.sin();
        phi.cos() / (T::one() - e2 * s * s).sqrt()
    }

    /// Authalic function q(φ).
    fn q(phi: T, e: T) -> T {
        let s = phi.sin();
        let es = e * s;
        let one = T::one();
        (one - e * e)
            * (s / (one - es * es) - (one / (T::lit(2.0) * e)) * ((one - es) / (one + es)).ln())
    }

    /// Projects (longitude, latitude) in degrees to meters.
    pub fn project(&self, lon: T, lat: T) -> (T, T) {
        let q = Self::q(lat.to_radians(), self.eccentricity);
        let rho = self.semi_major * (self.c - self.n * q).max(T::zero()).sqrt() / self.n;
        let theta = self.n * (lon.to_radians() - self.lon0);
        (rho * theta.sin(), self.rho0 - rho * theta.cos())
    }
}
