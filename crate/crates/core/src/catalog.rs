//! Built-in surfaces with their expected invariants.

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_rational::{ComplexPoly, RationalMap, SpherePoint};
use crate::curvature::PiMultiple;
use crate::ends::Classification;
use crate::error::{Error, Result};
use crate::tol::Tolerances;
use crate::weierstrass::WeierstrassData;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 5] = [
    "catenoid",
    "plane",
    "enneper",
    "generalized-jorge-meeks",
    "counterexample",
];

pub const JORGE_MEEKS_RANGE: std::ops::RangeInclusive<u32> = 1..=6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedEnd {
    pub point: SpherePoint,
    pub mu: i64,
    pub classification: Classification,
    pub rotation_index: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub n: usize,
    pub d: u32,
    pub tc: PiMultiple,
    pub m: usize,
    pub chi: i64,
    pub co_rhs: PiMultiple,
    pub co_equality: bool,
    pub ends: Vec<ExpectedEnd>,
    pub full: bool,
    pub l: usize,
    pub gackstatter_rhs: PiMultiple,
    pub ejiri_rhs: PiMultiple,
    pub ejiri_equality: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub data: WeierstrassData,
    pub expected: Expected,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn poly(coeffs: &[Complex64]) -> ComplexPoly {
    ComplexPoly::new(coeffs.to_vec())
}

fn rational(num: ComplexPoly, den: ComplexPoly) -> RationalMap {
    RationalMap::new(num, den, Tolerances::default().cluster).expect("catalog denominators are nonzero")
}

fn build(label: &str, phi: Vec<RationalMap>) -> WeierstrassData {
    WeierstrassData::new(label, phi, None, None, Tolerances::default()).expect("catalog data is well formed")
}

fn end(point: SpherePoint, mu: i64, classification: Classification) -> ExpectedEnd {
    ExpectedEnd {
        point,
        mu,
        classification,
        rotation_index: (-mu - 1) as u32,
    }
}

/// `φ = ((1-z²)/(2z²), i(1+z²)/(2z²), 1/z)`.
pub fn catenoid() -> CatalogEntry {
    let z2 = poly(&[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
    let data = build(
        "catenoid",
        vec![
            rational(poly(&[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]), z2.clone()),
            rational(poly(&[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 1.0)]), z2),
            rational(ComplexPoly::one(), poly(&[c(0.0, 0.0), c(1.0, 0.0)])),
        ],
    );
    CatalogEntry {
        name: "catenoid".into(),
        data,
        expected: Expected {
            n: 3,
            d: 2,
            tc: PiMultiple(-4),
            m: 2,
            chi: 0,
            co_rhs: PiMultiple(-4),
            co_equality: true,
            ends: vec![
                end(SpherePoint::finite(0.0, 0.0), -2, Classification::CatenoidType),
                end(SpherePoint::Infinity, -2, Classification::CatenoidType),
            ],
            full: true,
            l: 0,
            gackstatter_rhs: PiMultiple(-2),
            ejiri_rhs: PiMultiple(-4),
            ejiri_equality: true,
        },
    }
}

/// `φ = (1/2, -i/2, 0)`, so `f(z) = (Re z, Im z, 0)` from the basepoint 0.
pub fn plane() -> CatalogEntry {
    let data = build(
        "plane",
        vec![
            RationalMap::from_poly(ComplexPoly::constant(c(0.5, 0.0))),
            RationalMap::from_poly(ComplexPoly::constant(c(0.0, -0.5))),
            RationalMap::zero(),
        ],
    );
    CatalogEntry {
        name: "plane".into(),
        data,
        expected: Expected {
            n: 3,
            d: 0,
            tc: PiMultiple(0),
            m: 1,
            chi: 1,
            co_rhs: PiMultiple(0),
            co_equality: true,
            ends: vec![end(SpherePoint::Infinity, -2, Classification::Planar)],
            full: false,
            l: 2,
            gackstatter_rhs: PiMultiple(-1),
            ejiri_rhs: PiMultiple(0),
            ejiri_equality: true,
        },
    }
}

/// `φ = ((1-z²)/2, i(1+z²)/2, z)`: one end of order −4.
pub fn enneper() -> CatalogEntry {
    let data = build(
        "enneper",
        vec![
            RationalMap::from_poly(poly(&[c(0.5, 0.0), c(0.0, 0.0), c(-0.5, 0.0)])),
            RationalMap::from_poly(poly(&[c(0.0, 0.5), c(0.0, 0.0), c(0.0, 0.5)])),
            RationalMap::from_poly(poly(&[c(0.0, 0.0), c(1.0, 0.0)])),
        ],
    );
    CatalogEntry {
        name: "enneper".into(),
        data,
        expected: Expected {
            n: 3,
            d: 2,
            tc: PiMultiple(-4),
            m: 1,
            chi: 1,
            co_rhs: PiMultiple(0),
            co_equality: false,
            ends: vec![end(SpherePoint::Infinity, -4, Classification::HigherOrder)],
            full: true,
            l: 0,
            gackstatter_rhs: PiMultiple(-1),
            ejiri_rhs: PiMultiple(-4),
            ejiri_equality: true,
        },
    }
}

/// Generalized Jorge–Meeks surface in `R^{2m+1}` with `m + 1` catenoid ends
/// at the `(m+1)`-th roots of unity. Components are half the classical ones
/// because the immersion is `2 Re ∫ ∂f`.
pub fn generalized_jorge_meeks(m: u32) -> Result<CatalogEntry> {
    if !JORGE_MEEKS_RANGE.contains(&m) {
        return Err(Error::Parameter(format!(
            "generalized Jorge–Meeks parameter must lie in {}..={}, got {m}",
            JORGE_MEEKS_RANGE.start(),
            JORGE_MEEKS_RANGE.end()
        )));
    }
    let mu = m as usize;
    // (z^{m+1} - 1)^2
    let mut base = vec![c(0.0, 0.0); mu + 2];
    base[0] = c(-1.0, 0.0);
    base[mu + 1] = c(1.0, 0.0);
    let den = poly(&base).powi(2);
    let mut phi = Vec::with_capacity(2 * mu + 1);
    for j in 0..mu {
        let top = 2 * mu - j;
        let mut g = vec![c(0.0, 0.0); top + 1];
        let mut h = vec![c(0.0, 0.0); top + 1];
        g[j] = c(0.5, 0.0);
        g[top] = c(-0.5, 0.0);
        h[j] = c(0.0, 0.5);
        h[top] = c(0.0, 0.5);
        phi.push(rational(poly(&g), den.clone()));
        phi.push(rational(poly(&h), den.clone()));
    }
    phi.push(rational(
        ComplexPoly::monomial(c((m as f64).sqrt(), 0.0), mu),
        den,
    ));
    let label = format!("generalized-jorge-meeks-{m}");
    let data = build(&label, phi);
    let ends = (0..=mu)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / (mu + 1) as f64);
            end(SpherePoint::Finite(z), -2, Classification::CatenoidType)
        })
        .collect();
    let m = m as i64;
    let n = 2 * m + 1;
    let chi = 1 - m;
    Ok(CatalogEntry {
        name: label,
        data,
        expected: Expected {
            n: n as usize,
            d: 2 * m as u32,
            tc: PiMultiple(-4 * m),
            m: (m + 1) as usize,
            chi,
            co_rhs: PiMultiple(-4 * m),
            co_equality: true,
            ends,
            full: true,
            l: 0,
            gackstatter_rhs: PiMultiple(1 - 3 * m),
            ejiri_rhs: PiMultiple(-4 * m),
            ejiri_equality: true,
        },
    })
}

/// The holomorphic curve `(z, 1/z²)` in `C² = R⁴`:
/// `φ = (1/2, -i/2, -z⁻³, i z⁻³)`.
pub fn holomorphic_counterexample() -> CatalogEntry {
    let z3 = ComplexPoly::monomial(c(1.0, 0.0), 3);
    let data = build(
        "counterexample",
        vec![
            RationalMap::from_poly(ComplexPoly::constant(c(0.5, 0.0))),
            RationalMap::from_poly(ComplexPoly::constant(c(0.0, -0.5))),
            rational(ComplexPoly::constant(c(-1.0, 0.0)), z3.clone()),
            rational(ComplexPoly::constant(c(0.0, 1.0)), z3),
        ],
    );
    CatalogEntry {
        name: "counterexample".into(),
        data,
        expected: Expected {
            n: 4,
            d: 3,
            tc: PiMultiple(-6),
            m: 2,
            chi: 0,
            co_rhs: PiMultiple(-4),
            co_equality: false,
            ends: vec![
                end(SpherePoint::finite(0.0, 0.0), -3, Classification::HigherOrder),
                end(SpherePoint::Infinity, -2, Classification::Planar),
            ],
            full: true,
            l: 2,
            gackstatter_rhs: PiMultiple(-3),
            ejiri_rhs: PiMultiple(-2),
            ejiri_equality: false,
        },
    }
}

/// Entry by CLI name; `param` is the Jorge–Meeks `m`.
pub fn by_name(name: &str, param: Option<u32>) -> Result<CatalogEntry> {
    match name {
        "catenoid" => Ok(catenoid()),
        "plane" => Ok(plane()),
        "enneper" => Ok(enneper()),
        "generalized-jorge-meeks" => generalized_jorge_meeks(param.unwrap_or(2)),
        "counterexample" => Ok(holomorphic_counterexample()),
        other => Err(Error::Parameter(format!(
            "unknown catalog entry '{other}'; available: {}",
            NAMES.join(", ")
        ))),
    }
}

/// Every entry, with Jorge–Meeks for `m = 1..=4`.
pub fn all() -> Vec<CatalogEntry> {
    let mut v = vec![catenoid(), plane(), enneper()];
    v.extend((1..=4).map(|m| generalized_jorge_meeks(m).expect("m in range")));
    v.push(holomorphic_counterexample());
    v
}
