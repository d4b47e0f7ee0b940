use num_complex::Complex64;
use serde::Serialize;

use super::rational::RationalMap;
use super::sphere::SpherePoint;
use crate::error::{Error, Result};

/// Truncated Laurent expansion about a point of the sphere.
///
/// `coeffs[i]` multiplies `h^(order + i)` where `h` is the local coordinate
/// (`z - center`, or `1/z` at infinity). `coeffs[0]` is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentSeries {
    pub center: SpherePoint,
    pub order: i64,
    pub coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    /// Coefficient of `h^exponent` (zero below the order or past the depth).
    pub fn coeff(&self, exponent: i64) -> Complex64 {
        let idx = exponent - self.order;
        if idx < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs
            .get(idx as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Highest exponent carried.
    pub fn top_exponent(&self) -> i64 {
        self.order + self.coeffs.len() as i64 - 1
    }

    pub fn eval(&self, h: Complex64) -> Complex64 {
        let head = self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * h + c);
        head * h.powi(self.order as i32)
    }
}

/// Power-series quotient `n / d` with `d[0] != 0`, `terms` coefficients.
fn series_div(n: &[Complex64], d: &[Complex64], terms: usize) -> Vec<Complex64> {
    let get = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
    let inv = d[0].inv();
    let mut q: Vec<Complex64> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = get(n, k);
        for j in 1..=k {
            acc -= get(d, j) * q[k - j];
        }
        q.push(acc * inv);
    }
    q
}

/// Laurent expansion of the function `r` about `center`, carrying `depth`
/// coefficients beyond the leading one. At infinity this is the expansion of
/// `r(1/w)` in `w`.
pub fn laurent_expand(
    r: &RationalMap,
    center: &SpherePoint,
    depth: usize,
    tol: f64,
) -> Result<LaurentSeries> {
    if r.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (n, d, shift) = match *center {
        SpherePoint::Finite(c) => (r.num().shift(c), r.den().shift(c), 0i64),
        SpherePoint::Infinity => {
            let dn = r.num().degree().unwrap();
            let dd = r.den().degree().unwrap();
            (r.num().reversed(dn), r.den().reversed(dd), dd as i64 - dn as i64)
        }
    };
    let vn = n.valuation(tol).ok_or(Error::ZeroFunction)?;
    let vd = d
        .valuation(tol)
        .ok_or_else(|| Error::Degenerate("denominator vanished identically".into()))?;
    let coeffs = series_div(&n.coeffs()[vn..], &d.coeffs()[vd..], depth + 1);
    Ok(LaurentSeries {
        center: *center,
        order: vn as i64 - vd as i64 + shift,
        coeffs,
    })
}

/// Laurent expansion of the 1-form `r(z) dz` in the local coordinate at
/// `center`. At infinity `dz = -dw / w^2`, so coefficients are negated and
/// the order drops by two.
pub fn laurent_expand_form(
    r: &RationalMap,
    center: &SpherePoint,
    depth: usize,
    tol: f64,
) -> Result<LaurentSeries> {
    let mut s = laurent_expand(r, center, depth, tol)?;
    if center.is_infinity() {
        s.order -= 2;
        for c in &mut s.coeffs {
            *c = -*c;
        }
    }
    Ok(s)
}

/// Coefficient of `(z - pole)^-1`; zero at regular points.
pub fn residue(r: &RationalMap, pole: Complex64, tol: f64) -> Result<Complex64> {
    if r.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let center = SpherePoint::Finite(pole);
    let probe = laurent_expand(r, &center, 0, tol)?;
    if probe.order > -1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let s = laurent_expand(r, &center, (-1 - probe.order) as usize, tol)?;
    Ok(s.coeff(-1))
}

/// Residue of the form `r(z) dz` at infinity, read in `w = 1/z`.
pub fn residue_form_at_infinity(r: &RationalMap, tol: f64) -> Result<Complex64> {
    if r.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let probe = laurent_expand_form(r, &SpherePoint::Infinity, 0, tol)?;
    if probe.order > -1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let s = laurent_expand_form(r, &SpherePoint::Infinity, (-1 - probe.order) as usize, tol)?;
    Ok(s.coeff(-1))
}
