//! The curve `E_R = f(end) ∩ {|x| = R}` and its rotation index.

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::{analyze_end, dot, EndAnalysis, EndChart};
use crate::complex_rational::SpherePoint;
use crate::error::{Error, Result};
use crate::weierstrass::{Segment, WeierstrassData};

pub const DEFAULT_SAMPLES: usize = 720;
const MAX_REFINEMENTS: u32 = 4;
const MAX_NEWTON: usize = 60;
const NEWTON_TOL: f64 = 1e-12;

/// Samples of `E_R / R` over the parameter angle `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, Serialize)]
pub struct EndCurve {
    pub big_r: f64,
    pub theta: Vec<f64>,
    /// Local radius `r(θ)` with `|f(r e^{iθ})| = R`.
    pub local_radius: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RotationCheck {
    pub radii: Vec<f64>,
    pub windings: Vec<u32>,
    pub index: u32,
}

fn norm_sq(v: &[f64]) -> f64 {
    dot(v, v)
}

/// Newton on `log|f(r e^{iθ})| = log R` in the variable `log r`; `f` is the
/// value at the starting radius.
fn solve_radius(
    chart: &EndChart,
    theta: f64,
    mut r: f64,
    mut f: Vec<f64>,
    target: f64,
) -> Result<(f64, Vec<f64>)> {
    let dir = Complex64::from_polar(1.0, theta);
    let mut buf = vec![Complex64::new(0.0, 0.0); f.len()];
    for _ in 0..MAX_NEWTON {
        let n2 = norm_sq(&f);
        let g = 0.5 * n2.ln() - target;
        if g.abs() <= NEWTON_TOL {
            return Ok((r, f));
        }
        let h = dir * r;
        chart.form(h, &mut buf);
        // ∂f/∂(log r) = 2 Re(φ(h) h)
        let ds: Vec<f64> = buf.iter().map(|c| 2.0 * (c * h).re).collect();
        let dg = dot(&f, &ds) / n2;
        if !(dg.is_finite() && dg != 0.0) {
            break;
        }
        let step = (-g / dg).clamp(-0.5, 0.5);
        let new_r = (r * step.exp()).min(chart.radius());
        if new_r == r {
            break;
        }
        let inc = chart.increment(&[Segment::Line {
            from: h,
            to: dir * new_r,
        }])?;
        for (a, b) in f.iter_mut().zip(&inc) {
            *a += b;
        }
        r = new_r;
    }
    Err(Error::NumericInstability(format!(
        "no solution of |f| = {:e} at θ = {theta} inside the end chart",
        target.exp()
    )))
}

/// Trace `E_R` by continuation in `θ`: an arc at the previous local radius,
/// then Newton along the ray.
pub fn trace_end_curve(chart: &EndChart, e: &EndAnalysis, big_r: f64, samples: usize) -> Result<EndCurve> {
    let km1 = (e.k - 1) as f64;
    let guess = (2.0 * e.a / (km1 * big_r)).powf(1.0 / km1).min(0.9 * chart.radius());
    let target = big_r.ln();
    let f = chart.eval(Complex64::new(guess, 0.0))?;
    let (mut r, mut f) = solve_radius(chart, 0.0, guess, f, target)?;
    let first = f.clone();
    let mut curve = EndCurve {
        big_r,
        theta: Vec::with_capacity(samples),
        local_radius: Vec::with_capacity(samples),
        points: Vec::with_capacity(samples),
    };
    let step = 2.0 * PI / samples as f64;
    for i in 0..samples {
        let theta = i as f64 * step;
        curve.theta.push(theta);
        curve.local_radius.push(r);
        curve.points.push(f.iter().map(|x| x / big_r).collect());
        let inc = chart.increment(&[Segment::Arc {
            center: Complex64::new(0.0, 0.0),
            radius: r,
            start: theta,
            sweep: step,
        }])?;
        for (a, b) in f.iter_mut().zip(&inc) {
            *a += b;
        }
        let next = if i + 1 == samples { 0.0 } else { theta + step };
        (r, f) = solve_radius(chart, next, r, f, target)?;
    }
    let gap = norm_sq(&f.iter().zip(&first).map(|(a, b)| a - b).collect::<Vec<_>>()).sqrt();
    if gap > 1e-6 * big_r {
        return Err(Error::NumericInstability(format!(
            "traced curve at R = {big_r:e} fails to close (gap {gap:e})"
        )));
    }
    Ok(curve)
}

/// Orthonormal basis of the plane through the origin best fitting the points.
fn best_fit_plane(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = points[0].len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for p in points {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += p[i] * p[j];
            }
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let col = |k: usize| eig.eigenvectors.column(order[k]).iter().copied().collect();
    (col(0), col(1))
}

/// Winding number of the projected curve and its largest turning step.
fn winding(points: &[Vec<f64>], u: &[f64], v: &[f64]) -> (i64, f64) {
    let angles: Vec<f64> = points.iter().map(|p| dot(p, v).atan2(dot(p, u))).collect();
    let mut total = 0.0;
    let mut largest: f64 = 0.0;
    for i in 0..angles.len() {
        let mut d = angles[(i + 1) % angles.len()] - angles[i];
        while d > PI {
            d -= 2.0 * PI;
        }
        while d <= -PI {
            d += 2.0 * PI;
        }
        total += d;
        largest = largest.max(d.abs());
    }
    ((total / (2.0 * PI)).round() as i64, largest)
}

fn projection_plane(e: &EndAnalysis, curve: &EndCurve) -> (Vec<f64>, Vec<f64>) {
    if e.mu == -2 {
        (e.frame.e1.clone(), e.frame.e2.clone())
    } else {
        best_fit_plane(&curve.points)
    }
}

fn winding_at(chart: &EndChart, e: &EndAnalysis, big_r: f64) -> Result<u32> {
    let mut samples = DEFAULT_SAMPLES;
    for _ in 0..=MAX_REFINEMENTS {
        let curve = trace_end_curve(chart, e, big_r, samples)?;
        let (u, v) = projection_plane(e, &curve);
        let (wnd, largest) = winding(&curve.points, &u, &v);
        if largest <= FRAC_PI_4 {
            return Ok(wnd.unsigned_abs() as u32);
        }
        samples *= 2;
    }
    Err(Error::NumericInstability(format!(
        "projected end curve at R = {big_r:e} turns too fast to resolve"
    )))
}

/// Rotation index of `E_R` for each radius; the winding must agree across
/// all radii.
pub fn rotation_index_numeric(w: &WeierstrassData, p: &SpherePoint, radii: &[f64]) -> Result<RotationCheck> {
    if radii.is_empty() || radii.windows(2).any(|x| x[1] <= x[0]) {
        return Err(Error::Parameter("radii must be increasing and non-empty".into()));
    }
    let e = analyze_end(w, p)?;
    let chart = EndChart::new(w, p)?;
    let windings = radii
        .iter()
        .map(|&r| winding_at(&chart, &e, r))
        .collect::<Result<Vec<_>>>()?;
    if windings.iter().any(|&x| x != windings[0]) {
        return Err(Error::NumericInstability(format!(
            "winding of the end curve at {p} is not stable across R: {windings:?}"
        )));
    }
    Ok(RotationCheck {
        radii: radii.to_vec(),
        index: windings[0],
        windings,
    })
}

/// `sup_θ |f(r(θ)e^{iθ})/R - c(θ)|` with the limit curve
/// `c(θ) = -(cos((k-1)θ) e1 + sin((k-1)θ) e2)` in the end frame.
pub fn limit_circle_deviation(w: &WeierstrassData, p: &SpherePoint, big_r: f64) -> Result<f64> {
    let e = analyze_end(w, p)?;
    let chart = EndChart::new(w, p)?;
    let curve = trace_end_curve(&chart, &e, big_r, DEFAULT_SAMPLES)?;
    let km1 = (e.k - 1) as f64;
    let mut sup: f64 = 0.0;
    for (theta, x) in curve.theta.iter().zip(&curve.points) {
        let (s, c) = (km1 * theta).sin_cos();
        let d: f64 = (0..x.len())
            .map(|j| (x[j] + c * e.frame.e1[j] + s * e.frame.e2[j]).powi(2))
            .sum::<f64>()
            .sqrt();
        sup = sup.max(d);
    }
    Ok(sup)
}
