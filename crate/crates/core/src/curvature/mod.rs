//! Gauss map, total curvature, and the Chern–Osserman, Gackstatter and Ejiri
//! inequalities.

mod numeric;

pub use numeric::{total_curvature_numeric, NumericCurvature};

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::complex_rational::{poly_gcd_many, roots, ComplexPoly, SpherePoint};
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassData;

/// Exact integer multiple of π. Inequalities between such quantities are
/// decided on the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMultiple(pub i64);

impl PiMultiple {
    pub fn value(self) -> f64 {
        self.0 as f64 * std::f64::consts::PI
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π", self.0)
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `ν = [ψ_1 : … : ψ_n]` with the `ψ_j` coprime polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct GaussMap {
    pub psi: Vec<ComplexPoly>,
    pub degree: u32,
    /// Common zeros removed from the cleared components, with multiplicity.
    pub removed_zeros: Vec<(Complex64, usize)>,
}

/// Points where `∂f` vanishes, with their orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchPoint {
    pub point: SpherePoint,
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChernOsserman {
    pub d: u32,
    pub tc_algebraic: PiMultiple,
    pub m: usize,
    pub chi: i64,
    pub co_rhs: PiMultiple,
    pub co_equality: bool,
    /// Every end has metric order −2.
    pub orders_all_minus_two: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fullness {
    pub full: bool,
    pub l: usize,
    pub real_rank: usize,
    pub complex_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GackstatterEjiri {
    pub gackstatter_rhs: PiMultiple,
    pub gackstatter_holds: bool,
    pub ejiri_rhs: PiMultiple,
    pub ejiri_holds: bool,
    pub ejiri_equality: bool,
    /// Both inequalities are stated for full immersions only; values are
    /// reported regardless.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub d: u32,
    pub tc_algebraic: PiMultiple,
    pub tc_numeric: Option<f64>,
    pub genus: u32,
    pub m: usize,
    pub chi: i64,
    pub co_rhs: PiMultiple,
    pub co_equality: bool,
    pub orders_all_minus_two: bool,
    pub gackstatter_rhs: PiMultiple,
    pub gackstatter_holds: bool,
    pub full: bool,
    pub l: usize,
    pub ejiri_rhs: PiMultiple,
    pub ejiri_holds: bool,
    pub ejiri_equality: bool,
    pub inequalities_applicable: bool,
    pub branch_points: Vec<BranchPoint>,
}

pub fn gauss_map(w: &WeierstrassData) -> Result<GaussMap> {
    let cleared = w.cleared();
    let tol = w.tol().cluster;
    let g = poly_gcd_many(&cleared.nums, tol)?;
    let removed_zeros = if g.degree().unwrap_or(0) > 0 {
        roots(&g, tol)?
    } else {
        Vec::new()
    };
    let scale = cleared.nums.iter().map(|p| p.norm_inf()).fold(0.0, f64::max);
    let psi: Vec<ComplexPoly> = cleared
        .nums
        .iter()
        .map(|p| {
            let mut q = p.clone();
            for &(r, mult) in &removed_zeros {
                for _ in 0..mult {
                    q = q.deflate(r);
                }
            }
            // drop leading coefficients lost to cancellation
            let cut = tol * scale;
            let mut c = q.coeffs().to_vec();
            while c.last().is_some_and(|x| x.norm() <= cut) {
                c.pop();
            }
            ComplexPoly::new(c)
        })
        .collect();
    let degree = psi.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as u32;
    Ok(GaussMap {
        psi,
        degree,
        removed_zeros,
    })
}

pub fn total_curvature_algebraic(g: &GaussMap) -> PiMultiple {
    PiMultiple(-2 * g.degree as i64)
}

/// Zeros of `∂f`: common zeros of the cleared components, plus infinity
/// when it is not an end and the form vanishes there.
pub fn branch_points(w: &WeierstrassData, g: &GaussMap) -> Result<Vec<BranchPoint>> {
    let mut out: Vec<BranchPoint> = g
        .removed_zeros
        .iter()
        .map(|&(z, m)| BranchPoint {
            point: SpherePoint::Finite(z),
            order: m as u32,
        })
        .collect();
    if !w.has_puncture(&SpherePoint::Infinity) {
        let mu = w.metric_order_at(&SpherePoint::Infinity)?.order;
        if mu > 0 {
            out.push(BranchPoint {
                point: SpherePoint::Infinity,
                order: mu as u32,
            });
        }
    }
    Ok(out)
}

pub fn chern_osserman(w: &WeierstrassData) -> Result<ChernOsserman> {
    let g = gauss_map(w)?;
    let tc = total_curvature_algebraic(&g);
    let m = w.punctures().len();
    let chi = 2 - m as i64;
    let co_rhs = PiMultiple(2 * (chi - m as i64));
    let co_equality = tc == co_rhs;
    let mut orders_all_minus_two = true;
    for p in w.punctures() {
        if w.metric_order_at(p)?.order != -2 {
            orders_all_minus_two = false;
        }
    }
    if co_equality != orders_all_minus_two && branch_points(w, &g)?.is_empty() {
        return Err(Error::Consistency(format!(
            "Chern–Osserman equality is {co_equality} but end orders say {orders_all_minus_two}"
        )));
    }
    Ok(ChernOsserman {
        d: g.degree,
        tc_algebraic: tc,
        m,
        chi,
        co_rhs,
        co_equality,
        orders_all_minus_two,
    })
}

fn rank<T: nalgebra::ComplexField<RealField = f64>>(m: DMatrix<T>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Fullness (no real hyperplane contains the image) and the Gauss-image
/// degeneracy `l = n - rank_C`, from the coefficient matrix of the cleared
/// components.
pub fn fullness_and_degeneracy(w: &WeierstrassData) -> Fullness {
    let cleared = w.cleared();
    let n = w.n();
    let cols = cleared.nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let c = DMatrix::from_fn(n, cols, |i, k| cleared.nums[i].coeff(k));
    let stacked = DMatrix::from_fn(n, 2 * cols, |i, k| {
        let v = c[(i, k % cols)];
        if k < cols {
            v.re
        } else {
            v.im
        }
    });
    let tol = w.tol().rank;
    let real_rank = rank(stacked, tol);
    let complex_rank = rank(c, tol);
    Fullness {
        full: real_rank == n,
        l: n - complex_rank,
        real_rank,
        complex_rank,
    }
}

pub fn gackstatter_and_ejiri(
    w: &WeierstrassData,
    co: &ChernOsserman,
    fullness: &Fullness,
) -> GackstatterEjiri {
    let n = w.n() as i64;
    let m = co.m as i64;
    let chi = co.chi;
    let gackstatter_rhs = PiMultiple(2 * chi + m - 1 - n);
    let ejiri_rhs = PiMultiple(chi + m - 2 * n + 2 * fullness.l as i64);
    if !fullness.full {
        log::warn!("{}: datum is not full; Gackstatter and Ejiri bounds reported for reference only", w.label);
    }
    GackstatterEjiri {
        gackstatter_rhs,
        gackstatter_holds: co.tc_algebraic <= gackstatter_rhs,
        ejiri_rhs,
        ejiri_holds: co.tc_algebraic <= ejiri_rhs,
        ejiri_equality: co.tc_algebraic == ejiri_rhs,
        applicable: fullness.full,
    }
}

/// Full curvature report; `numeric_tol` additionally runs the quadrature
/// cross-check to that absolute tolerance.
pub fn curvature_report(w: &WeierstrassData, numeric_tol: Option<f64>) -> Result<CurvatureReport> {
    let g = gauss_map(w)?;
    let co = chern_osserman(w)?;
    let fullness = fullness_and_degeneracy(w);
    let ge = gackstatter_and_ejiri(w, &co, &fullness);
    let tc_numeric = match numeric_tol {
        Some(tol) => Some(total_curvature_numeric(w, tol)?.value),
        None => None,
    };
    Ok(CurvatureReport {
        d: co.d,
        tc_algebraic: co.tc_algebraic,
        tc_numeric,
        genus: 0,
        m: co.m,
        chi: co.chi,
        co_rhs: co.co_rhs,
        co_equality: co.co_equality,
        orders_all_minus_two: co.orders_all_minus_two,
        gackstatter_rhs: ge.gackstatter_rhs,
        gackstatter_holds: ge.gackstatter_holds,
        full: fullness.full,
        l: fullness.l,
        ejiri_rhs: ge.ejiri_rhs,
        ejiri_holds: ge.ejiri_holds,
        ejiri_equality: ge.ejiri_equality,
        inequalities_applicable: ge.applicable,
        branch_points: branch_points(w, &g)?,
    })
}
