//! Per-end analysis: metric order, leading Laurent data, adapted frame,
//! classification, asymptotic model and rotation index of the end curve.

mod chart;
mod rotation;

pub use chart::EndChart;
pub use rotation::{limit_circle_deviation, rotation_index_numeric, trace_end_curve, EndCurve, RotationCheck};

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_rational::{laurent_expand_form, SpherePoint};
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    CatenoidType,
    Planar,
    HigherOrder,
}

/// Orthonormal vectors `e1, e2, e3` of `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub e3: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndAnalysis {
    pub puncture: SpherePoint,
    pub mu: i64,
    pub k: u32,
    /// Leading coefficient `a_{-k}` of `∂f` in the local coordinate.
    pub leading: Vec<Complex64>,
    pub a_minus2: Vec<Complex64>,
    /// Residue vector (real part; validation bounds the imaginary part).
    pub a_minus1: Vec<f64>,
    pub frame: Frame,
    pub a: f64,
    pub b: f64,
    pub classification: Classification,
    pub rotation_index: u32,
    pub embedded: bool,
    /// `|<a_{-k}, a_{-k}>|` and, for order −2, `|<a_{-2}, a_{-1}>|`, relative.
    pub bilinear_defects: [f64; 2],
}

fn bilinear(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unit vector orthogonal to `e1, e2`: the standard basis vector with the
/// largest residual after projection (lowest index on ties), normalized.
fn complete_frame(e1: &[f64], e2: &[f64]) -> Vec<f64> {
    let n = e1.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for i in 0..n {
        let mut r = vec![0.0; n];
        r[i] = 1.0;
        let (p1, p2) = (e1[i], e2[i]);
        for j in 0..n {
            r[j] -= p1 * e1[j] + p2 * e2[j];
        }
        let len = norm(&r);
        if best.as_ref().is_none_or(|(l, _)| len > l + 1e-12) {
            best = Some((len, r));
        }
    }
    let (len, r) = best.expect("n >= 3");
    r.into_iter().map(|x| x / len).collect()
}

pub fn analyze_end(w: &WeierstrassData, p: &SpherePoint) -> Result<EndAnalysis> {
    if !w.has_puncture(p) {
        return Err(Error::InvalidDatum(format!("{p} is not an end of the datum")));
    }
    let tol = w.tol();
    let mu = w.metric_order_at(p)?.order;
    if mu > -2 {
        return Err(Error::InvalidDatum(format!("end {p} has metric order {mu} > -2")));
    }
    let k = (-mu) as u32;
    let zero = Complex64::new(0.0, 0.0);
    let n = w.n();
    let mut leading = vec![zero; n];
    let mut a_minus2 = vec![zero; n];
    let mut residue = vec![zero; n];
    for (j, r) in w.phi().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let s = laurent_expand_form(r, p, (k - 1) as usize, tol.cluster)?;
        leading[j] = s.coeff(mu);
        a_minus2[j] = s.coeff(-2);
        residue[j] = s.coeff(-1);
    }
    let a_minus1: Vec<f64> = residue.iter().map(|c| c.re).collect();

    let lead_sq: f64 = leading.iter().map(|c| c.norm_sqr()).sum();
    let res_norm = norm(&a_minus1);
    let self_defect = bilinear(&leading, &leading).norm() / lead_sq;
    let cross_defect = if k == 2 {
        bilinear(&a_minus2, &residue).norm() / (lead_sq.sqrt() * lead_sq.sqrt().max(res_norm))
    } else {
        0.0
    };
    if self_defect > tol.bilinear || cross_defect > tol.bilinear {
        return Err(Error::Consistency(format!(
            "bilinear relations fail at {p}: <a,a> defect {self_defect:e}, <a_-2,a_-1> defect {cross_defect:e}"
        )));
    }

    let re: Vec<f64> = leading.iter().map(|c| c.re).collect();
    let im: Vec<f64> = leading.iter().map(|c| c.im).collect();
    let a = norm(&re);
    let e1: Vec<f64> = re.iter().map(|x| x / a).collect();
    let im_norm = norm(&im);
    let e2: Vec<f64> = im.iter().map(|x| x / im_norm).collect();
    let b = res_norm;

    let classification = if k >= 3 {
        Classification::HigherOrder
    } else if b > tol.planar * a {
        Classification::CatenoidType
    } else {
        Classification::Planar
    };
    let e3 = if classification == Classification::CatenoidType {
        a_minus1.iter().map(|x| x / b).collect()
    } else {
        complete_frame(&e1, &e2)
    };
    Ok(EndAnalysis {
        puncture: *p,
        mu,
        k,
        leading,
        a_minus2,
        a_minus1,
        frame: Frame { e1, e2, e3 },
        a,
        b,
        classification,
        rotation_index: k - 1,
        embedded: k == 2,
        bilinear_defects: [self_defect, cross_defect],
    })
}

/// Analyses of every end, in puncture order.
pub fn analyze_all(w: &WeierstrassData) -> Result<Vec<EndAnalysis>> {
    w.punctures().iter().map(|p| analyze_end(w, p)).collect()
}

/// Leading-term model `f0(h) = 2 Re(-a_{-2}/h) + 2 a_{-1} log|h| + C` of an
/// end in its local coordinate `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticModel {
    pub puncture: SpherePoint,
    pub a_minus2: Vec<Complex64>,
    pub a_minus1: Vec<f64>,
    pub constant: Vec<f64>,
}

/// Radius of the circle on which the model constant is matched, as a
/// fraction of the chart radius.
const MATCH_FRACTION: f64 = 0.5;
const MATCH_SAMPLES: usize = 32;

impl AsymptoticModel {
    pub fn eval_local(&self, h: Complex64) -> Vec<f64> {
        let inv = -h.inv();
        let log_r = h.norm().ln();
        (0..self.a_minus2.len())
            .map(|j| 2.0 * (self.a_minus2[j] * inv).re + 2.0 * self.a_minus1[j] * log_r + self.constant[j])
            .collect()
    }

    pub fn eval(&self, z: Complex64) -> Vec<f64> {
        self.eval_local(self.puncture.to_local(z))
    }

    /// Leading terms without any classification check; the constant is the
    /// circle mean of `f - f0`, which is exact because the remainder is
    /// harmonic in the punctured disc.
    fn fitted(chart: &EndChart, a_minus2: Vec<Complex64>, a_minus1: Vec<f64>) -> Result<Self> {
        let n = a_minus2.len();
        let mut model = Self {
            puncture: chart.point(),
            a_minus2,
            a_minus1,
            constant: vec![0.0; n],
        };
        let r = MATCH_FRACTION * chart.radius();
        let mut mean = vec![0.0; n];
        for i in 0..MATCH_SAMPLES {
            let h = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * i as f64 / MATCH_SAMPLES as f64);
            let f = chart.eval(h)?;
            let f0 = model.eval_local(h);
            for j in 0..n {
                mean[j] += (f[j] - f0[j]) / MATCH_SAMPLES as f64;
            }
        }
        model.constant = mean;
        Ok(model)
    }

    /// Planar model built from the order −2 coefficient of any end, even when
    /// the end is of higher order. Used as a negative control.
    pub fn forced_planar(w: &WeierstrassData, e: &EndAnalysis) -> Result<Self> {
        let chart = EndChart::new(w, &e.puncture)?;
        Self::fitted(&chart, e.a_minus2.clone(), vec![0.0; e.a_minus1.len()])
    }
}

pub fn asymptotic_model(w: &WeierstrassData, e: &EndAnalysis) -> Result<AsymptoticModel> {
    if e.classification == Classification::HigherOrder {
        return Err(Error::ModelUndefined(e.puncture));
    }
    let chart = EndChart::new(w, &e.puncture)?;
    AsymptoticModel::fitted(&chart, e.a_minus2.clone(), e.a_minus1.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticCheck {
    pub radii: Vec<f64>,
    /// `sup_θ |f - f0| / r` per radius.
    pub ratios: Vec<f64>,
    pub bounded: bool,
}

const CHECK_SAMPLES: usize = 64;
const NOISE_FACTOR: f64 = 100.0;

/// Sup-ratios `|f - f0|/|h|` on circles of decreasing radius. Bounded means
/// that over the last three radii no ratio more than doubles, up to the
/// quadrature noise floor.
pub fn verify_asymptotic(
    w: &WeierstrassData,
    model: &AsymptoticModel,
    radii: &[f64],
) -> Result<AsymptoticCheck> {
    if radii.len() < 3 || radii.windows(2).any(|x| x[1] >= x[0]) || radii[radii.len() - 1] <= 0.0 {
        return Err(Error::Parameter(
            "radii must be at least three positive, strictly decreasing values".into(),
        ));
    }
    let chart = EndChart::new(w, &model.puncture)?;
    if radii[0] > chart.radius() {
        return Err(Error::Parameter(format!(
            "radius {} exceeds the end chart radius {}",
            radii[0],
            chart.radius()
        )));
    }
    let mut ratios = Vec::with_capacity(radii.len());
    let mut noise = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut sup: f64 = 0.0;
        let mut size: f64 = 0.0;
        for i in 0..CHECK_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / CHECK_SAMPLES as f64;
            let h = Complex64::from_polar(r, theta);
            let f = chart.eval(h)?;
            let f0 = model.eval_local(h);
            let d: f64 = f.iter().zip(&f0).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
            sup = sup.max(d / r);
            size = size.max(f.iter().map(|x| x * x).sum::<f64>().sqrt());
        }
        ratios.push(sup);
        // quadrature noise in |f - f0| relative to the size of f
        noise.push(NOISE_FACTOR * w.tol().quad_rel * size / r);
    }
    let k = ratios.len();
    let bounded = (k - 2..k).all(|i| ratios[i] <= 2.0 * ratios[i - 1] + noise[i]);
    Ok(AsymptoticCheck {
        radii: radii.to_vec(),
        ratios,
        bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_prefers_lowest_index() {
        let e3 = complete_frame(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(e3, vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn completion_is_orthonormal() {
        let s = 0.5f64.sqrt();
        let e1 = [s, s, 0.0];
        let e2 = [0.0, 0.0, 1.0];
        let e3 = complete_frame(&e1, &e2);
        assert!((norm(&e3) - 1.0).abs() < 1e-15);
        assert!(dot(&e3, &e1).abs() < 1e-15);
        assert!(dot(&e3, &e2).abs() < 1e-15);
        assert!(e3[0] > 0.0);
    }
}
