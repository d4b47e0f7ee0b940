//! JSON interchange format for Weierstrass data.
//!
//! ```json
//! {
//!   "n": 3,
//!   "label": "catenoid",
//!   "components": [
//!     { "num": [[1, 0], [0, 0], [-1, 0]], "den": [[0, 0], [0, 0], [2, 0]] },
//!     { "num": [[0, 1], [0, 0], [0, 1]],  "den": [[0, 0], [0, 0], [2, 0]] },
//!     { "num": [[1, 0]],                  "den": [[0, 0], [1, 0]] }
//!   ],
//!   "punctures": [[0, 0], "infinity"]
//! }
//! ```
//!
//! Coefficients are ascending `[re, im]` pairs. `punctures` and `basepoint`
//! are optional. The raw coefficients are kept as written so that a parsed
//! file serializes back to the same values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::WeierstrassData;
use crate::complex_rational::{ComplexPoly, RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRepr {
    pub num: Vec<[f64; 2]>,
    pub den: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub n: usize,
    #[serde(default)]
    pub label: String,
    pub components: Vec<ComponentRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctures: Option<Vec<SpherePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<[f64; 2]>,
}

fn to_poly(c: &[[f64; 2]]) -> ComplexPoly {
    ComplexPoly::new(c.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

fn from_poly(p: &ComplexPoly) -> Vec<[f64; 2]> {
    if p.is_zero() {
        return vec![[0.0, 0.0]];
    }
    p.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

impl ComponentRepr {
    pub fn from_map(r: &RationalMap) -> Self {
        Self {
            num: from_poly(r.num()),
            den: from_poly(r.den()),
        }
    }
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum serializes")
    }

    pub fn from_datum(w: &WeierstrassData) -> Self {
        let b = w.basepoint();
        Self {
            n: w.n(),
            label: w.label.clone(),
            components: w.phi().iter().map(ComponentRepr::from_map).collect(),
            punctures: Some(w.punctures().to_vec()),
            basepoint: Some([b.re, b.im]),
        }
    }

    /// Build the reduced datum.
    pub fn to_datum(&self, tol: Tolerances) -> Result<WeierstrassData> {
        if self.components.len() != self.n {
            return Err(Error::InvalidDatum(format!(
                "n = {} but {} components given",
                self.n,
                self.components.len()
            )));
        }
        let all = self
            .components
            .iter()
            .flat_map(|c| c.num.iter().chain(&c.den))
            .chain(self.basepoint.iter());
        for v in all {
            if !v[0].is_finite() || !v[1].is_finite() {
                return Err(Error::InvalidDatum("non-finite coefficient".into()));
            }
        }
        let phi = self
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let den = to_poly(&c.den);
                if den.is_zero() {
                    return Err(Error::InvalidDatum(format!("component {j} has a zero denominator")));
                }
                RationalMap::new(to_poly(&c.num), den, tol.cluster)
            })
            .collect::<Result<Vec<_>>>()?;
        WeierstrassData::new(
            self.label.clone(),
            phi,
            self.punctures.clone(),
            self.basepoint.map(|[re, im]| Complex64::new(re, im)),
            tol,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATENOID: &str = r#"{
        "n": 3,
        "label": "catenoid",
        "components": [
            { "num": [[1, 0], [0, 0], [-1, 0]], "den": [[0, 0], [0, 0], [2, 0]] },
            { "num": [[0, 1], [0, 0], [0, 1]],  "den": [[0, 0], [0, 0], [2, 0]] },
            { "num": [[1, 0]],                  "den": [[0, 0], [1, 0]] }
        ],
        "punctures": [[0, 0], "infinity"]
    }"#;

    #[test]
    fn parse_and_build() {
        let f = DatumFile::parse(CATENOID).unwrap();
        assert_eq!(f.punctures.as_ref().unwrap()[1], SpherePoint::Infinity);
        let w = f.to_datum(Tolerances::default()).unwrap();
        assert_eq!(w.n(), 3);
        assert_eq!(w.punctures().len(), 2);
    }

    #[test]
    fn round_trip_is_exact() {
        let mut f = DatumFile::parse(CATENOID).unwrap();
        f.components[0].num[1] = [0.1, 1.0 / 3.0];
        f.basepoint = Some([0.7, -1e-300]);
        let g = DatumFile::parse(&f.to_json()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_error_has_position() {
        match DatumFile::parse("{\n  \"n\": 3,\n  \"components\": [oops]\n}") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut f = DatumFile::parse(CATENOID).unwrap();
        f.n = 4;
        assert!(matches!(f.to_datum(Tolerances::default()), Err(Error::InvalidDatum(_))));
    }
}
