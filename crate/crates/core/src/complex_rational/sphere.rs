use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Parameter point for local coordinate `h`: `p + h`, or `1/h` at infinity.
    pub fn from_local(&self, h: Complex64) -> Complex64 {
        match *self {
            SpherePoint::Finite(p) => p + h,
            SpherePoint::Infinity => h.inv(),
        }
    }

    /// Local coordinate of the parameter point `z`.
    pub fn to_local(&self, z: Complex64) -> Complex64 {
        match *self {
            SpherePoint::Finite(p) => z - p,
            SpherePoint::Infinity => z.inv(),
        }
    }

    /// Equality up to the clustering radius `tol * (1 + |p|)`.
    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
                (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
            }
            _ => false,
        }
    }

    /// Deterministic order: finite points by (re, im), infinity last.
    pub fn sort_key(&self) -> (u8, f64, f64) {
        match *self {
            SpherePoint::Finite(z) => (0, z.re, z.im),
            SpherePoint::Infinity => (1, 0.0, 0.0),
        }
    }
}

pub fn sort_points(points: &mut [SpherePoint]) {
    points.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => write!(f, "∞"),
        }
    }
}

const INFINITY_TAG: &str = "infinity";

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
            SpherePoint::Infinity => s.serialize_str(INFINITY_TAG),
        }
    }
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Tag(String),
        }
        match Repr::deserialize(d)? {
            Repr::Pair([re, im]) => Ok(SpherePoint::finite(re, im)),
            Repr::Tag(t) if t == INFINITY_TAG => Ok(SpherePoint::Infinity),
            Repr::Tag(t) => Err(de::Error::custom(format!(
                "expected [re, im] or \"{INFINITY_TAG}\", found \"{t}\""
            ))),
        }
    }
}
