//! Polynomial roots with multiplicities, and root-based GCDs.
//!
//! Roots come from Aberth–Ehrlich iteration. Multiple roots only converge to
//! about `eps^(1/m)`, so the raw approximations are grouped hierarchically:
//! a loose grouping is accepted only if the polished group centre is verified
//! to be a root of the claimed multiplicity; otherwise the group is split with
//! a tighter radius, down to the configured cluster radius.

use num_complex::Complex64;

use super::poly::ComplexPoly;
use crate::error::{Error, Result};

const ABERTH_MAX_ITERS: usize = 800;
/// Successively tighter grouping radii (relative to 1 + |z|) tried before the
/// configured cluster radius.
const GROUPING_RADII: [f64; 3] = [1e-3, 1e-5, 1e-7];
/// A group of size m is a genuine m-fold root when the Taylor coefficients
/// t_j (j < m) at its polished centre satisfy |t_j| <= SPREAD^(m-j) |t_m|,
/// up to evaluation roundoff.
const MULTIPLICITY_SPREAD: f64 = 1e-7;
const ROUNDOFF_FACTOR: f64 = 1e3;

/// A root and its multiplicity.
pub type Root = (Complex64, usize);

/// All roots of `p`, clustered, with multiplicities summing to the degree.
pub fn roots(p: &ComplexPoly, cluster_tol: f64) -> Result<Vec<Root>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::Degenerate("roots of the zero polynomial".into()))?;
    if deg == 0 {
        return Err(Error::Degenerate("roots of a constant polynomial".into()));
    }

    let mut out = Vec::new();
    // exact zero roots first
    let zeros = p.coeffs().iter().take_while(|c| **c == Complex64::new(0.0, 0.0)).count();
    if zeros > 0 {
        out.push((Complex64::new(0.0, 0.0), zeros));
    }
    let reduced = ComplexPoly::new(p.coeffs()[zeros..].to_vec());
    if reduced.degree().unwrap_or(0) > 0 {
        let approx = aberth(&reduced);
        let members: Vec<usize> = (0..approx.len()).collect();
        group(&reduced, &approx, &members, 0, cluster_tol, &mut out);
    }
    merge_close(&mut out, cluster_tol);
    sort_roots(&mut out);
    Ok(out)
}

fn sort_roots(r: &mut [Root]) {
    r.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.im.partial_cmp(&b.0.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn merge_close(out: &mut Vec<Root>, tol: f64) {
    let mut i = 0;
    while i < out.len() {
        let mut j = i + 1;
        while j < out.len() {
            if (out[i].0 - out[j].0).norm() <= tol * (1.0 + out[i].0.norm()) {
                out[i].1 += out[j].1;
                out.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

fn aberth(p: &ComplexPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let c = p.coeffs();
    let lead = c[n].norm();
    // Fujiwara-style bound for the initial circle
    let radius = (0..n)
        .map(|k| (c[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, t)
        })
        .collect();
    let dp = p.derivative();
    for _ in 0..ABERTH_MAX_ITERS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, _) = p.eval_with_derivative(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let d = dp.eval(z[k]);
            let ratio = v / d;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Union-find grouping of `members` with the radius at `level`, verifying
/// each group and recursing on failures.
fn group(
    p: &ComplexPoly,
    approx: &[Complex64],
    members: &[usize],
    level: usize,
    cluster_tol: f64,
    out: &mut Vec<Root>,
) {
    let final_level = level >= GROUPING_RADII.len();
    let radius = if final_level {
        cluster_tol
    } else {
        GROUPING_RADII[level].max(cluster_tol)
    };

    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let (za, zb) = (approx[members[a]], approx[members[b]]);
            if (za - zb).norm() <= radius * (1.0 + za.norm().max(zb.norm())) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<Option<usize>> = vec![None; members.len()];
    for a in 0..members.len() {
        let r = find(&mut parent, a);
        match seen[r] {
            Some(g) => groups[g].push(members[a]),
            None => {
                seen[r] = Some(groups.len());
                groups.push(vec![members[a]]);
            }
        }
    }

    for g in groups {
        let m = g.len();
        let centre = g.iter().map(|&i| approx[i]).sum::<Complex64>() / m as f64;
        let polished = polish(p, centre, m);
        if m == 1 || final_level || is_multiple_root(p, polished, m) {
            out.push((polished, m));
        } else {
            group(p, approx, &g, level + 1, cluster_tol, out);
        }
    }
}

/// Newton steps on the (m-1)-th derivative, where an m-fold root is simple.
fn polish(p: &ComplexPoly, start: Complex64, m: usize) -> Complex64 {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    let dq = q.derivative();
    let mut z = start;
    let mut best = (q.eval(z).norm(), z);
    for _ in 0..8 {
        let d = dq.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - q.eval(z) / d;
        if !next.is_finite() {
            break;
        }
        let val = q.eval(next).norm();
        if val < best.0 {
            best = (val, next);
            z = next;
        } else {
            break;
        }
    }
    best.1
}

fn is_multiple_root(p: &ComplexPoly, z: Complex64, m: usize) -> bool {
    let t = p.shift(z);
    let lead = t.coeff(m).norm();
    let eval_scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * (1.0 + z.norm()).powi(k as i32))
        .sum();
    let floor = ROUNDOFF_FACTOR * f64::EPSILON * eval_scale;
    (0..m).all(|j| {
        let allowed = MULTIPLICITY_SPREAD.powi((m - j) as i32) * lead;
        t.coeff(j).norm() <= allowed.max(floor)
    })
}

/// Multiplicity of `z` as a root of `p`: the number of leading Taylor
/// coefficients at `z` that vanish relative to `tol`.
pub fn root_multiplicity(p: &ComplexPoly, z: Complex64, tol: f64) -> usize {
    p.shift(z).valuation(tol).unwrap_or(0)
}

/// Monic greatest common divisor, built from the roots of `a` and their
/// multiplicities in `b`.
pub fn poly_gcd(a: &ComplexPoly, b: &ComplexPoly, tol: f64) -> Result<ComplexPoly> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::Degenerate("gcd of two zero polynomials".into())),
        (true, false) => Ok(b.monic()),
        (false, true) => Ok(a.monic()),
        (false, false) => {
            // use the lower-degree input for root finding
            let (small, large) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
            if small.degree() == Some(0) {
                return Ok(ComplexPoly::one());
            }
            let common: Vec<Root> = roots(small, tol)?
                .into_iter()
                .filter_map(|(r, m)| {
                    let k = root_multiplicity(large, r, tol).min(m);
                    (k > 0).then_some((r, k))
                })
                .collect();
            Ok(ComplexPoly::from_roots(&common))
        }
    }
}

/// GCD of several polynomials; zero polynomials are skipped.
pub fn poly_gcd_many(polys: &[ComplexPoly], tol: f64) -> Result<ComplexPoly> {
    let mut nonzero = polys.iter().filter(|p| !p.is_zero());
    let first = nonzero
        .next()
        .ok_or_else(|| Error::Degenerate("gcd of zero polynomials".into()))?;
    let mut g = first.monic();
    for p in nonzero {
        if g.degree() == Some(0) {
            break;
        }
        g = poly_gcd(&g, p, tol)?;
    }
    Ok(g)
}
