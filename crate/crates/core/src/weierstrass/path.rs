//! Integration paths avoiding the punctures, and path quadrature of `∂f`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::WeierstrassData;
use crate::complex_rational::SpherePoint;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_on, QuadTolerance};

/// Radius of the excluded disc around a finite puncture, as a fraction of
/// its distance to the nearest other puncture or the basepoint (capped at 1).
pub const ROUTE_FRACTION: f64 = 0.3;

/// Pieces longer than this fraction of their distance to a singular point
/// are split before quadrature.
const GRADING: f64 = 0.5;
const MAX_PIECES: usize = 4000;

/// Oriented path piece in some complex coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius * exp(i (start + sweep t))`, `t ∈ [0, 1]`.
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Segment {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc {
                center,
                radius,
                start,
                sweep,
            } => center + Complex64::from_polar(radius, start + sweep * t),
        }
    }

    pub fn velocity(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius,
                start,
                sweep,
                ..
            } => Complex64::new(0.0, sweep) * Complex64::from_polar(radius, start + sweep * t),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Arc about `center` from `a` to `b` along the shorter way, at radius `|a - center|`.
    pub fn arc_between(center: Complex64, a: Complex64, b: Complex64) -> Self {
        let start = (a - center).arg();
        let mut sweep = (b - center).arg() - start;
        if sweep > PI {
            sweep -= 2.0 * PI;
        } else if sweep <= -PI {
            sweep += 2.0 * PI;
        }
        Segment::Arc {
            center,
            radius: (a - center).norm(),
            start,
            sweep,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Disc {
    center: Complex64,
    radius: f64,
}

impl Disc {
    fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius * (1.0 - 1e-12)
    }

    fn project(&self, z: Complex64) -> Complex64 {
        let d = z - self.center;
        self.center + d * (self.radius / d.norm())
    }
}

/// Path from `a` to `b` that keeps out of every disc except where an
/// endpoint lies inside one, entered or left radially.
fn route(discs: &[Disc], a: Complex64, b: Complex64) -> Vec<Segment> {
    let mut out = Vec::new();
    let disc_a = discs.iter().find(|d| d.contains(a));
    let disc_b = discs.iter().find(|d| d.contains(b));

    if let (Some(da), Some(db)) = (disc_a, disc_b) {
        if da.center == db.center {
            let mid = da.center + (b - da.center) * ((a - da.center).norm() / (b - da.center).norm());
            out.push(Segment::arc_between(da.center, a, mid));
            out.push(Segment::Line { from: mid, to: b });
            return out;
        }
    }

    let mut cur = a;
    if let Some(d) = disc_a {
        let exit = d.project(a);
        out.push(Segment::Line { from: a, to: exit });
        cur = exit;
    }
    let target = disc_b.map_or(b, |d| d.project(b));

    let dir = target - cur;
    let len = dir.norm();
    let mut crossings: Vec<(f64, f64, &Disc)> = Vec::new();
    if len > 0.0 {
        for d in discs {
            // |cur + t dir - c|^2 = r^2
            let w = cur - d.center;
            let qa = dir.norm_sqr();
            let qb = 2.0 * (w.re * dir.re + w.im * dir.im);
            let qc = w.norm_sqr() - d.radius * d.radius;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc <= 0.0 {
                continue;
            }
            let s = disc.sqrt();
            let t1 = ((-qb - s) / (2.0 * qa)).max(0.0);
            let t2 = ((-qb + s) / (2.0 * qa)).min(1.0);
            if (t2 - t1) * len > 1e-9 * d.radius {
                crossings.push((t1, t2, d));
            }
        }
    }
    crossings.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    for (t1, t2, d) in crossings {
        let p1 = d.project(cur + dir * t1);
        let p2 = d.project(cur + dir * t2);
        let last = out.last().map_or(a, |s: &Segment| s.point(1.0));
        if (p1 - last).norm() > 0.0 {
            out.push(Segment::Line { from: last, to: p1 });
        }
        out.push(Segment::arc_between(d.center, p1, p2));
    }
    let last = out.last().map_or(a, |s| s.point(1.0));
    if (target - last).norm() > 0.0 {
        out.push(Segment::Line { from: last, to: target });
    }
    if disc_b.is_some() {
        out.push(Segment::Line { from: target, to: b });
    }
    out
}

/// Split `[0, 1]` so that each piece is short relative to its distance from
/// the singular points.
fn graded_breaks(seg: &Segment, singular: &[Complex64]) -> Vec<f64> {
    let dist = |t: f64| {
        let z = seg.point(t);
        singular.iter().map(|s| (z - s).norm()).fold(f64::INFINITY, f64::min)
    };
    let total = seg.length();
    let mut breaks = vec![0.0];
    let mut stack = vec![(0.0, 1.0)];
    // depth-first, right half pushed first so breaks come out increasing
    while let Some((t0, t1)) = stack.pop() {
        let d = dist(t0).min(dist(t1)).min(dist(0.5 * (t0 + t1)));
        let l = total * (t1 - t0);
        if l > GRADING * d && breaks.len() + stack.len() < MAX_PIECES && t1 - t0 > 1e-14 {
            let m = 0.5 * (t0 + t1);
            stack.push((m, t1));
            stack.push((t0, m));
        } else {
            breaks.push(t1);
        }
    }
    breaks
}

impl WeierstrassData {
    fn discs(&self) -> Vec<Disc> {
        let finite: Vec<Complex64> = self.finite_punctures().collect();
        finite
            .iter()
            .map(|&p| {
                let mut d = (p - self.basepoint).norm().min(1.0);
                for &q in &finite {
                    if q != p {
                        d = d.min((p - q).norm());
                    }
                }
                Disc {
                    center: p,
                    radius: ROUTE_FRACTION * d,
                }
            })
            .collect()
    }

    /// Radius of the routing disc around a finite puncture.
    pub fn routing_radius(&self, p: Complex64) -> Option<f64> {
        self.discs()
            .into_iter()
            .find(|d| (d.center - p).norm() <= self.tol.cluster * (1.0 + p.norm()))
            .map(|d| d.radius)
    }

    fn check_clearance(&self, z: Complex64) -> Result<()> {
        let clearance = self.singular_clearance();
        match self.nearest_puncture_within(z, clearance) {
            Some(puncture) => Err(Error::NearSingularity {
                z,
                puncture,
                clearance,
            }),
            None => Ok(()),
        }
    }

    /// Routed path from the basepoint to `z` through the given waypoints.
    pub fn route_path(&self, waypoints: &[Complex64], z: Complex64) -> Result<Vec<Segment>> {
        let discs = self.discs();
        let mut stops = vec![self.basepoint];
        stops.extend_from_slice(waypoints);
        stops.push(z);
        for &s in &stops {
            self.check_clearance(s)?;
        }
        Ok(stops.windows(2).flat_map(|w| route(&discs, w[0], w[1])).collect())
    }

    /// `∂f` in the local coordinate of `chart` (`z - p`, or `w = 1/z`).
    pub fn local_form(&self, chart: &SpherePoint, h: Complex64, out: &mut [Complex64]) {
        match *chart {
            SpherePoint::Finite(p) => self.eval_phi(p + h, out),
            SpherePoint::Infinity => {
                let z = h.inv();
                self.eval_phi(z, out);
                let s = -(z * z);
                for o in out.iter_mut() {
                    *o *= s;
                }
            }
        }
    }

    /// Punctures in the local coordinate of `chart` (those at local infinity dropped).
    fn local_singular_points(&self, chart: &SpherePoint) -> Vec<Complex64> {
        self.punctures
            .iter()
            .filter_map(|q| match (*chart, *q) {
                (SpherePoint::Finite(p), SpherePoint::Finite(q)) => Some(q - p),
                (SpherePoint::Infinity, SpherePoint::Infinity) => Some(Complex64::new(0.0, 0.0)),
                (SpherePoint::Infinity, SpherePoint::Finite(q)) if q != Complex64::new(0.0, 0.0) => {
                    Some(q.inv())
                }
                _ => None,
            })
            .collect()
    }

    /// `∫ ∂f` along a chain of segments given in the local coordinate of `chart`.
    pub fn integrate_local(&self, chart: &SpherePoint, segments: &[Segment]) -> Result<Vec<Complex64>> {
        let n = self.n();
        if segments.is_empty() {
            return Ok(vec![Complex64::new(0.0, 0.0); n]);
        }
        let singular = self.local_singular_points(chart);
        let mut breaks = vec![0.0];
        for (k, seg) in segments.iter().enumerate() {
            for &t in &graded_breaks(seg, &singular)[1..] {
                breaks.push(k as f64 + t);
            }
        }
        let mut f = |t: f64, out: &mut [Complex64]| {
            let k = (t.floor() as usize).min(segments.len() - 1);
            let s = t - k as f64;
            let seg = &segments[k];
            self.local_form(chart, seg.point(s), out);
            let v = seg.velocity(s);
            for o in out.iter_mut() {
                *o *= v;
            }
        };
        let tol = QuadTolerance {
            abs: self.tol.quad_abs,
            rel: self.tol.quad_rel,
        };
        integrate_on(&mut f, &breaks, n, tol)
    }

    /// `∫ ∂f` along segments in the global coordinate `z`.
    pub fn integrate_path(&self, segments: &[Segment]) -> Result<Vec<Complex64>> {
        self.integrate_local(&SpherePoint::Finite(Complex64::new(0.0, 0.0)), segments)
    }

    /// `f(z) = 2 Re ∫_{z0}^{z} ∂f`, integrated along the routed path.
    pub fn immersion_eval(&self, z: Complex64) -> Result<Vec<f64>> {
        self.immersion_eval_via(&[], z)
    }

    /// As [`Self::immersion_eval`], but forcing the path through `waypoints`.
    pub fn immersion_eval_via(&self, waypoints: &[Complex64], z: Complex64) -> Result<Vec<f64>> {
        let path = self.route_path(waypoints, z)?;
        let v = self.integrate_path(&path)?;
        Ok(v.iter().map(|c| 2.0 * c.re).collect())
    }
}
