//! Total curvature by the Green identity.
//!
//! With `u = ½ log Σ|φ_j|²` we have `K dA = -Δu dx dy`, so over the disc of
//! radius `R` minus small discs around the finite ends and branch points the
//! integral is a difference of boundary fluxes `∮ ∂u/∂r ds`. Each flux is a
//! periodic trapezoid sum, which converges geometrically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gauss_map;
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassData;

const MAX_ITER: usize = 10;
const MIN_SAMPLES: usize = 64;
const MAX_SAMPLES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericCurvature {
    pub value: f64,
    pub outer_radius: f64,
    /// Shrink factor applied to the excision radii at the final iteration.
    pub inner_scale: f64,
    pub iterations: usize,
}

/// `∮_{|z-c|=r} ∂u/∂r ds`.
fn circle_flux(w: &WeierstrassData, c: Complex64, r: f64) -> f64 {
    let phi = w.phi();
    let sample = |theta: f64| {
        let dir = Complex64::from_polar(1.0, theta);
        let z = c + dir * r;
        let mut s = 0.0;
        let mut cross = Complex64::new(0.0, 0.0);
        for f in phi.iter().filter(|f| !f.is_zero()) {
            let (v, dv) = f.eval_with_derivative(z);
            s += v.norm_sqr();
            cross += dv * v.conj();
        }
        (dir * cross).re / s * r
    };
    let mut n = MIN_SAMPLES;
    let mut sum: f64 = (0..n).map(|i| sample(2.0 * PI * i as f64 / n as f64)).sum();
    let mut prev = sum * 2.0 * PI / n as f64;
    while n < MAX_SAMPLES {
        // odd points of the doubled grid
        sum += (0..n)
            .map(|i| sample(2.0 * PI * (2 * i + 1) as f64 / (2 * n) as f64))
            .sum::<f64>();
        n *= 2;
        let cur = sum * 2.0 * PI / n as f64;
        if (cur - prev).abs() <= 1e-13 * (1.0 + cur.abs()) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `∫ K dA`, enlarging the outer circle and shrinking the excised discs by
/// a factor 10 per iteration until successive estimates agree within `tol`.
pub fn total_curvature_numeric(w: &WeierstrassData, tol: f64) -> Result<NumericCurvature> {
    let g = gauss_map(w)?;
    let mut excised: Vec<Complex64> = w.finite_punctures().collect();
    for &(z, _) in &g.removed_zeros {
        if !excised.iter().any(|q| (q - z).norm() <= w.tol().cluster * (1.0 + z.norm())) {
            excised.push(z);
        }
    }
    let base: Vec<f64> = excised
        .iter()
        .map(|&q| {
            let mut d: f64 = 1.0;
            for &o in &excised {
                if o != q {
                    d = d.min((o - q).norm());
                }
            }
            0.3 * d
        })
        .collect();
    let scale = excised.iter().map(|q| q.norm()).fold(1.0, f64::max);

    let estimate = |k: usize| {
        let shrink = 10f64.powi(-(k as i32) - 1);
        let outer_radius = 10.0 * scale * 10f64.powi(k as i32);
        let outer = circle_flux(w, Complex64::new(0.0, 0.0), outer_radius);
        let inner: f64 = excised
            .iter()
            .zip(&base)
            .map(|(&q, &rho)| circle_flux(w, q, rho * shrink))
            .sum();
        (-(outer - inner), outer_radius, shrink)
    };

    let mut prev = estimate(0).0;
    let mut before = prev;
    for k in 1..MAX_ITER {
        let (value, outer_radius, inner_scale) = estimate(k);
        if (value - prev).abs() <= tol {
            return Ok(NumericCurvature {
                value,
                outer_radius,
                inner_scale,
                iterations: k + 1,
            });
        }
        before = prev;
        prev = value;
    }
    Err(Error::ConvergenceFailure {
        last: prev,
        previous: before,
    })
}
