//! Triangulated samples of the immersion and OBJ export.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use delaunator::{triangulate, Point};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex_rational::SpherePoint;
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassData;

/// Ratio between consecutive annulus rings.
pub const RING_RATIO: f64 = 1.3;
const SHRINK: f64 = 0.8;

/// Triangulation of the parameter domain.
#[derive(Debug, Clone, Serialize)]
pub struct ParamMesh {
    pub nodes: Vec<Complex64>,
    pub faces: Vec<[usize; 3]>,
    /// Effective outer radius of the end annuli after any shrinking.
    pub r_max: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Projection {
    /// Three coordinate axes (0-based).
    Axes([usize; 3]),
    /// Three vectors of `R^n`; coordinates are the dot products.
    Frame([Vec<f64>; 3]),
}

impl Projection {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Projection::Axes(a) => {
                if a.iter().any(|&i| i >= n) {
                    return Err(Error::Parameter(format!("projection axes {a:?} out of range for n = {n}")));
                }
                if a[0] == a[1] || a[1] == a[2] || a[0] == a[2] {
                    return Err(Error::Parameter(format!("projection axes {a:?} repeat")));
                }
            }
            Projection::Frame(f) => {
                if f.iter().any(|v| v.len() != n) {
                    return Err(Error::Parameter("projection frame has the wrong dimension".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[f64]) -> [f64; 3] {
        match self {
            Projection::Axes(a) => [x[a[0]], x[a[1]], x[a[2]]],
            Projection::Frame(f) => {
                let dot = |v: &[f64]| v.iter().zip(x).map(|(a, b)| a * b).sum();
                [dot(&f[0]), dot(&f[1]), dot(&f[2])]
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vec<f64>>,
    pub faces: Vec<[usize; 3]>,
    pub param: Vec<Complex64>,
    pub projection: Projection,
}

fn ring_radii(r_min: f64, r_max: f64) -> Vec<f64> {
    let steps = ((r_max / r_min).ln() / RING_RATIO.ln()).ceil().max(1.0) as usize;
    let q = (r_max / r_min).powf(1.0 / steps as f64);
    (0..=steps).map(|i| if i == steps { r_max } else { r_min * q.powi(i as i32) }).collect()
}

fn overlapping(finite: &[Complex64], has_inf: bool, r: f64) -> bool {
    for (i, p) in finite.iter().enumerate() {
        if finite[i + 1..].iter().any(|q| (p - q).norm() < 2.0 * r) {
            return true;
        }
    }
    if has_inf {
        let reach = finite.iter().map(|p| p.norm() + r).fold(0.0, f64::max);
        // the central region must keep a margin between the holes and the outer circle
        if 1.0 / r < 1.5 * reach.max(r) {
            return true;
        }
    }
    false
}

/// Annular fans around every end from `r_min` to `r_max` (in the local
/// coordinate, `w = 1/z` at infinity), glued to a Delaunay triangulation of
/// the remaining region of the plane.
pub fn sample_domain(w: &WeierstrassData, r_min: f64, r_max: f64, res: usize) -> Result<ParamMesh> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::Parameter(format!(
            "need 0 < r_min < r_max, got r_min = {r_min}, r_max = {r_max}"
        )));
    }
    if res < 8 {
        return Err(Error::Parameter(format!("resolution must be at least 8, got {res}")));
    }
    let finite: Vec<Complex64> = w.finite_punctures().collect();
    let has_inf = w.has_puncture(&SpherePoint::Infinity);
    let mut warnings = Vec::new();
    let mut r_max = r_max;
    if overlapping(&finite, has_inf, r_max) {
        let start = r_max;
        while overlapping(&finite, has_inf, r_max) {
            r_max *= SHRINK;
            if r_max <= r_min * RING_RATIO {
                return Err(Error::Parameter(format!(
                    "end annuli overlap for every r_max above r_min = {r_min}"
                )));
            }
        }
        let msg = format!("end annuli overlap; r_max shrunk from {start} to {r_max}");
        log::warn!("{msg}");
        warnings.push(msg);
    }

    let radii = ring_radii(r_min, r_max);
    let mut nodes: Vec<Complex64> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    // indices of the outermost ring of each fan, glued to the central region
    let mut boundary: Vec<usize> = Vec::new();

    let mut fans: Vec<SpherePoint> = finite.iter().map(|&p| SpherePoint::Finite(p)).collect();
    if has_inf {
        fans.push(SpherePoint::Infinity);
    }
    for p in &fans {
        let base = nodes.len();
        for &r in &radii {
            for j in 0..res {
                let h = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / res as f64);
                nodes.push(p.from_local(h));
            }
        }
        for i in 0..radii.len() - 1 {
            for j in 0..res {
                let a = base + i * res + j;
                let b = base + i * res + (j + 1) % res;
                let c = b + res;
                let d = a + res;
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
        boundary.extend((0..res).map(|j| base + (radii.len() - 1) * res + j));
    }

    // central region: holes of radius r_max around finite ends, inside the
    // outer circle
    let outer = if has_inf {
        1.0 / r_max
    } else {
        2.0 * finite.iter().map(|p| p.norm() + r_max).fold(1.0, f64::max)
    };
    let mut central: Vec<usize> = boundary.clone();
    if !has_inf {
        for j in 0..res {
            nodes.push(Complex64::from_polar(outer, 2.0 * std::f64::consts::PI * j as f64 / res as f64));
            central.push(nodes.len() - 1);
        }
    }
    let spacing = 2.0 * outer / res as f64;
    let count = (outer / spacing).ceil() as i64;
    for ix in -count..=count {
        for iy in -count..=count {
            let z = Complex64::new(ix as f64 * spacing, iy as f64 * spacing);
            if z.norm() > outer - 0.5 * spacing {
                continue;
            }
            if finite.iter().any(|p| (z - p).norm() < r_max + 0.5 * spacing) {
                continue;
            }
            nodes.push(z);
            central.push(nodes.len() - 1);
        }
    }
    let points: Vec<Point> = central
        .iter()
        .map(|&i| Point {
            x: nodes[i].re,
            y: nodes[i].im,
        })
        .collect();
    let tri = triangulate(&points);
    let min_area = 1e-12 * spacing.min(r_max).powi(2);
    for t in tri.triangles.chunks_exact(3) {
        let [a, b, c] = [central[t[0]], central[t[1]], central[t[2]]];
        let (za, zb, zc) = (nodes[a], nodes[b], nodes[c]);
        let centroid = (za + zb + zc) / 3.0;
        if centroid.norm() > outer || finite.iter().any(|p| (centroid - p).norm() < r_max) {
            continue;
        }
        let area = 0.5 * ((zb - za).conj() * (zc - za)).im;
        if area.abs() <= min_area {
            continue;
        }
        faces.push(if area > 0.0 { [a, b, c] } else { [a, c, b] });
    }
    Ok(ParamMesh {
        nodes,
        faces,
        r_max,
        warnings,
    })
}

/// Axes of largest vertex variance, in increasing index order.
pub fn default_projection(vertices: &[Vec<f64>], n: usize) -> Projection {
    if n <= 3 || vertices.is_empty() {
        return Projection::Axes([0, 1, 2]);
    }
    let count = vertices.len() as f64;
    let mut var: Vec<(usize, f64)> = (0..n)
        .map(|j| {
            let mean = vertices.iter().map(|v| v[j]).sum::<f64>() / count;
            (j, vertices.iter().map(|v| (v[j] - mean).powi(2)).sum::<f64>() / count)
        })
        .collect();
    var.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut axes = [var[0].0, var[1].0, var[2].0];
    axes.sort_unstable();
    Projection::Axes(axes)
}

/// Evaluate the immersion at every node (in parallel; output order follows
/// the nodes).
pub fn build_mesh(w: &WeierstrassData, tri: &ParamMesh, projection: Option<Projection>) -> Result<SurfaceMesh> {
    let vertices = tri
        .nodes
        .par_iter()
        .map(|&z| w.immersion_eval(z))
        .collect::<Result<Vec<_>>>()?;
    let projection = match projection {
        Some(p) => {
            p.validate(w.n())?;
            p
        }
        None => default_projection(&vertices, w.n()),
    };
    Ok(SurfaceMesh {
        vertices,
        faces: tri.faces.clone(),
        param: tri.nodes.clone(),
        projection,
    })
}

/// Write the projected mesh as OBJ. For `n > 3` the full coordinates go to a
/// tab-separated sidecar next to it; its path is returned.
pub fn export_obj(mesh: &SurfaceMesh, path: &Path) -> Result<Option<PathBuf>> {
    let mut out = String::new();
    for v in &mesh.vertices {
        let [x, y, z] = mesh.projection.apply(v);
        let _ = writeln!(out, "v {x} {y} {z}");
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    fs::write(path, out)?;
    let n = mesh.vertices.first().map_or(0, |v| v.len());
    if n <= 3 {
        return Ok(None);
    }
    let side = path.with_extension("tsv");
    let mut table = String::from("re\tim");
    for j in 1..=n {
        let _ = write!(table, "\tx{j}");
    }
    table.push('\n');
    for (v, z) in mesh.vertices.iter().zip(&mesh.param) {
        let _ = write!(table, "{}\t{}", z.re, z.im);
        for x in v {
            let _ = write!(table, "\t{x}");
        }
        table.push('\n');
    }
    fs::write(&side, table)?;
    Ok(Some(side))
}
