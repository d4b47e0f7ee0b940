//! Genus-zero Weierstrass data `∂f = (φ_1, …, φ_n) dz` and the immersion
//! `f = 2 Re ∫ ∂f` it defines.

mod format;
mod path;

pub use format::{ComponentRepr, DatumFile};
pub use path::{Segment, ROUTE_FRACTION};

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_rational::{
    laurent_expand_form, residue, residue_form_at_infinity, sort_points, ComplexPoly, RationalMap,
    SpherePoint,
};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Complete immersion datum on the Riemann sphere minus finitely many points.
#[derive(Debug, Clone)]
pub struct WeierstrassData {
    pub label: String,
    phi: Vec<RationalMap>,
    punctures: Vec<SpherePoint>,
    basepoint: Complex64,
    tol: Tolerances,
}

/// Conformal factor sample: `ds^2 = lambda_sq |dz|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricSample {
    pub z: Complex64,
    pub lambda_sq: f64,
}

/// Result of the null-condition check `Σ φ_j^2 ≡ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullReport {
    pub ok: bool,
    /// Largest coefficient of the cleared `Σ φ_j^2`, relative to the squared
    /// component scale.
    pub defect: f64,
    /// `(power, relative magnitude)` of every coefficient above tolerance.
    pub offending: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueReport {
    pub ok: bool,
    pub worst_imag: f64,
    /// Residue vectors per puncture, in datum order.
    pub residues: Vec<(SpherePoint, Vec<Complex64>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricOrder {
    pub order: i64,
    /// False when the point is not a listed puncture of the datum.
    pub is_end: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validation {
    pub null: NullReport,
    pub residues: ResidueReport,
    pub orders: Vec<(SpherePoint, i64)>,
    /// Human-readable reasons for rejection; empty when valid.
    pub problems: Vec<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Components over a common denominator: `φ_j = nums[j] / den`.
#[derive(Debug, Clone)]
pub struct Cleared {
    pub den: ComplexPoly,
    pub nums: Vec<ComplexPoly>,
}

/// Union of the pole sets of the forms `φ_j dz`, including infinity when some
/// form has negative order there.
pub fn detect_punctures(phi: &[RationalMap], tol: f64) -> Result<Vec<SpherePoint>> {
    if phi.iter().all(|p| p.is_zero()) {
        return Err(Error::Degenerate("all Weierstrass components are zero".into()));
    }
    let mut out: Vec<SpherePoint> = Vec::new();
    for r in phi.iter().filter(|r| !r.is_zero()) {
        for &(p, _) in r.poles() {
            let sp = SpherePoint::Finite(p);
            if !out.iter().any(|q| q.approx_eq(&sp, tol)) {
                out.push(sp);
            }
        }
        let at_inf = r.form_order_at(&SpherePoint::Infinity, tol).unwrap_or(0);
        if at_inf < 0 && !out.contains(&SpherePoint::Infinity) {
            out.push(SpherePoint::Infinity);
        }
    }
    sort_points(&mut out);
    Ok(out)
}

fn default_basepoint(punctures: &[SpherePoint]) -> Complex64 {
    let finite: Vec<Complex64> = punctures.iter().filter_map(|p| p.as_finite()).collect();
    let origin = Complex64::new(0.0, 0.0);
    let Some(nearest) = finite
        .iter()
        .copied()
        .min_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
    else {
        return origin;
    };
    let mut min_sep = f64::INFINITY;
    for (i, a) in finite.iter().enumerate() {
        for b in &finite[i + 1..] {
            min_sep = min_sep.min((a - b).norm());
        }
    }
    if !min_sep.is_finite() {
        min_sep = 1.0;
    }
    if nearest.norm() > 1e-3 * min_sep {
        return origin;
    }
    // move along the real axis away from the nearest puncture
    let dir = if nearest.re > 0.0 { -1.0 } else { 1.0 };
    nearest + Complex64::new(dir * 0.5 * min_sep, 0.0)
}

impl WeierstrassData {
    /// Assemble a datum. Punctures are detected when `punctures` is `None`;
    /// when given, they must contain every pole. The basepoint defaults to 0,
    /// or half the minimal puncture separation along the real axis when 0 is
    /// a puncture.
    pub fn new(
        label: impl Into<String>,
        phi: Vec<RationalMap>,
        punctures: Option<Vec<SpherePoint>>,
        basepoint: Option<Complex64>,
        tol: Tolerances,
    ) -> Result<Self> {
        if phi.len() < 3 {
            return Err(Error::InvalidDatum(format!(
                "ambient dimension must be at least 3, got {}",
                phi.len()
            )));
        }
        let detected = detect_punctures(&phi, tol.cluster)?;
        let punctures = match punctures {
            None => detected,
            Some(mut given) => {
                for (i, a) in given.iter().enumerate() {
                    if given[i + 1..].iter().any(|b| a.approx_eq(b, tol.cluster)) {
                        return Err(Error::InvalidDatum(format!("puncture {a} listed twice")));
                    }
                }
                for d in &detected {
                    if !given.iter().any(|g| g.approx_eq(d, tol.cluster)) {
                        return Err(Error::InvalidDatum(format!(
                            "pole {d} is missing from the puncture list"
                        )));
                    }
                }
                sort_points(&mut given);
                given
            }
        };
        let basepoint = basepoint.unwrap_or_else(|| default_basepoint(&punctures));
        let w = Self {
            label: label.into(),
            phi,
            punctures,
            basepoint,
            tol,
        };
        if let Some(p) = w.nearest_puncture_within(basepoint, w.singular_clearance()) {
            return Err(Error::InvalidDatum(format!("basepoint {basepoint} coincides with puncture {p}")));
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[RationalMap] {
        &self.phi
    }

    pub fn punctures(&self) -> &[SpherePoint] {
        &self.punctures
    }

    pub fn basepoint(&self) -> Complex64 {
        self.basepoint
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn finite_punctures(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.punctures.iter().filter_map(|p| p.as_finite())
    }

    pub fn has_puncture(&self, p: &SpherePoint) -> bool {
        self.punctures.iter().any(|q| q.approx_eq(p, self.tol.cluster))
    }

    /// Minimal distance between distinct finite punctures (1 if fewer than two).
    pub fn min_separation(&self) -> f64 {
        let finite: Vec<Complex64> = self.finite_punctures().collect();
        let mut sep = f64::INFINITY;
        for (i, a) in finite.iter().enumerate() {
            for b in &finite[i + 1..] {
                sep = sep.min((a - b).norm());
            }
        }
        if sep.is_finite() {
            sep
        } else {
            1.0
        }
    }

    pub(crate) fn singular_clearance(&self) -> f64 {
        self.tol.singular * self.min_separation()
    }

    pub(crate) fn nearest_puncture_within(&self, z: Complex64, radius: f64) -> Option<SpherePoint> {
        for p in &self.punctures {
            match *p {
                SpherePoint::Finite(q) if (z - q).norm() <= radius * (1.0 + q.norm()) => return Some(*p),
                SpherePoint::Infinity if z.norm() * radius >= 1.0 => return Some(*p),
                _ => {}
            }
        }
        None
    }

    /// All components at `z`.
    pub fn eval_phi(&self, z: Complex64, out: &mut [Complex64]) {
        for (o, r) in out.iter_mut().zip(&self.phi) {
            *o = if r.is_zero() { Complex64::new(0.0, 0.0) } else { r.eval(z) };
        }
    }

    /// Components over a common denominator, built from the clustered poles
    /// of all components.
    pub fn cleared(&self) -> Cleared {
        let tol = self.tol.cluster;
        let mut global: Vec<(Complex64, usize)> = Vec::new();
        for r in &self.phi {
            for &(p, m) in r.poles() {
                match global
                    .iter_mut()
                    .find(|(q, _)| SpherePoint::Finite(*q).approx_eq(&SpherePoint::Finite(p), tol))
                {
                    Some(entry) => entry.1 = entry.1.max(m),
                    None => global.push((p, m)),
                }
            }
        }
        let den = ComplexPoly::from_roots(&global);
        let nums = self
            .phi
            .iter()
            .map(|r| {
                if r.is_zero() {
                    return ComplexPoly::zero();
                }
                let missing: Vec<(Complex64, usize)> = global
                    .iter()
                    .map(|&(q, big)| {
                        let own = r
                            .poles()
                            .iter()
                            .find(|(p, _)| SpherePoint::Finite(*p).approx_eq(&SpherePoint::Finite(q), tol))
                            .map_or(0, |x| x.1);
                        (q, big - own)
                    })
                    .collect();
                let lead = r.den().leading().unwrap();
                (r.num() * &ComplexPoly::from_roots(&missing)).scale(lead.inv())
            })
            .collect();
        Cleared { den, nums }
    }

    /// Null condition `Σ φ_j^2 ≡ 0` checked on the cleared numerators.
    pub fn validate_null(&self) -> NullReport {
        let cleared = self.cleared();
        let mut sum = ComplexPoly::zero();
        let mut scale: f64 = 0.0;
        for p in &cleared.nums {
            sum = &sum + &(p * p);
            scale = scale.max(p.norm_inf().powi(2));
        }
        if scale == 0.0 {
            return NullReport {
                ok: true,
                defect: 0.0,
                offending: Vec::new(),
            };
        }
        let rel: Vec<f64> = sum.coeffs().iter().map(|c| c.norm() / scale).collect();
        let defect = rel.iter().copied().fold(0.0, f64::max);
        let offending: Vec<(usize, f64)> = rel
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > self.tol.null)
            .map(|(k, &m)| (k, m))
            .collect();
        NullReport {
            ok: offending.is_empty(),
            defect,
            offending,
        }
    }

    /// Residue vector of `∂f` at a puncture (read in `w = 1/z` at infinity).
    pub fn residue_vector(&self, p: &SpherePoint) -> Result<Vec<Complex64>> {
        self.phi
            .iter()
            .map(|r| match *p {
                SpherePoint::Finite(z) => residue(r, z, self.tol.cluster),
                SpherePoint::Infinity => residue_form_at_infinity(r, self.tol.cluster),
            })
            .collect()
    }

    pub fn check_residues_real(&self) -> Result<ResidueReport> {
        let mut worst: f64 = 0.0;
        let mut residues = Vec::with_capacity(self.punctures.len());
        for p in &self.punctures {
            let v = self.residue_vector(p)?;
            worst = v.iter().map(|c| c.im.abs()).fold(worst, f64::max);
            residues.push((*p, v));
        }
        Ok(ResidueReport {
            ok: worst <= self.tol.residue,
            worst_imag: worst,
            residues,
        })
    }

    /// Order of `∂f` at `p`: the minimum 1-form order over the components.
    pub fn metric_order_at(&self, p: &SpherePoint) -> Result<MetricOrder> {
        let order = self
            .phi
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| laurent_expand_form(r, p, 0, self.tol.cluster).map(|s| s.order))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or_else(|| Error::Degenerate("all components are zero".into()))?;
        Ok(MetricOrder {
            order,
            is_end: self.has_puncture(p),
        })
    }

    /// Null condition, real residues, puncture completeness and `μ ≤ -2` at
    /// every end.
    pub fn validate(&self) -> Result<Validation> {
        let null = self.validate_null();
        let residues = self.check_residues_real()?;
        let mut problems = Vec::new();
        if !null.ok {
            problems.push(format!("null condition fails: relative defect {:e}", null.defect));
        }
        if !residues.ok {
            problems.push(format!(
                "residues are not real: worst |Im| = {:e}",
                residues.worst_imag
            ));
        }
        let mut orders = Vec::with_capacity(self.punctures.len());
        for p in &self.punctures {
            let mu = self.metric_order_at(p)?.order;
            if mu > -2 {
                problems.push(format!(
                    "end {p} has metric order {mu} > -2; not a complete finite-total-curvature end"
                ));
            }
            orders.push((*p, mu));
        }
        Ok(Validation {
            null,
            residues,
            orders,
            problems,
        })
    }

    /// `λ² = 2 Σ |φ_j(z)|²`.
    pub fn conformal_factor(&self, z: Complex64) -> Result<MetricSample> {
        if let Some(p) = self.nearest_puncture_within(z, self.singular_clearance()) {
            return Err(Error::SingularMetric(p));
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.n()];
        self.eval_phi(z, &mut buf);
        let lambda_sq = 2.0 * buf.iter().map(|c| c.norm_sqr()).sum::<f64>();
        Ok(MetricSample { z, lambda_sq })
    }

    /// Pull the datum back by the Möbius map `ζ ↦ (aζ + b)/(cζ + d)`:
    /// `φ̃_j(ζ) = φ_j(M(ζ)) M'(ζ)`. Punctures are re-detected.
    pub fn pullback_mobius(
        &self,
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < 1e-12 {
            return Err(Error::Parameter("singular Möbius map".into()));
        }
        let top = ComplexPoly::new(vec![b, a]);
        let bottom = ComplexPoly::new(vec![d, c]);
        // homogenised composition: Σ c_k top^k bottom^(deg-k)
        let compose = |p: &ComplexPoly, deg: usize| -> ComplexPoly {
            let mut acc = ComplexPoly::zero();
            for (k, &ck) in p.coeffs().iter().enumerate() {
                let term = &top.powi(k) * &bottom.powi(deg - k);
                acc = &acc + &term.scale(ck);
            }
            acc
        };
        let phi = self
            .phi
            .iter()
            .map(|r| {
                if r.is_zero() {
                    return Ok(RationalMap::zero());
                }
                let dn = r.num().degree().unwrap();
                let dd = r.den().degree().unwrap();
                // φ(M) = compose(num)/compose(den) * bottom^(dd - dn); M' = det / bottom^2
                let mut num = compose(r.num(), dn).scale(det);
                let mut den = compose(r.den(), dd);
                let shift = dd as i64 - dn as i64 - 2;
                if shift >= 0 {
                    num = &num * &bottom.powi(shift as usize);
                } else {
                    den = &den * &bottom.powi((-shift) as usize);
                }
                RationalMap::new(num, den, self.tol.cluster)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(format!("{} (Möbius pullback)", self.label), phi, None, None, self.tol)
    }
}
