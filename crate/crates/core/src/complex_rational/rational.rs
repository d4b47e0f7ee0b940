use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use super::roots::{root_multiplicity, roots, Root};
use super::sphere::SpherePoint;
use crate::error::{Error, Result};

/// Reduced quotient `num / den` of complex polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMap {
    num: ComplexPoly,
    den: ComplexPoly,
    /// Roots of `den` with multiplicity (the finite poles).
    #[serde(skip)]
    poles: Vec<Root>,
}

impl RationalMap {
    /// Reduce `num / den`, cancelling common roots found within `tol`.
    pub fn new(num: ComplexPoly, den: ComplexPoly, tol: f64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("rational map with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: ComplexPoly::one(),
                poles: Vec::new(),
            });
        }
        if den.degree() == Some(0) {
            return Ok(Self {
                num,
                den,
                poles: Vec::new(),
            });
        }
        let mut num = num;
        let mut den = den;
        let mut poles = Vec::new();
        for (r, m) in roots(&den, tol)? {
            let cancel = root_multiplicity(&num, r, tol).min(m);
            for _ in 0..cancel {
                num = num.deflate(r);
                den = den.deflate(r);
            }
            if m > cancel {
                poles.push((r, m - cancel));
            }
        }
        Ok(Self { num, den, poles })
    }

    pub fn from_poly(p: ComplexPoly) -> Self {
        Self {
            num: p,
            den: ComplexPoly::one(),
            poles: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(ComplexPoly::zero())
    }

    pub fn num(&self) -> &ComplexPoly {
        &self.num
    }

    pub fn den(&self) -> &ComplexPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Finite poles with their orders.
    pub fn poles(&self) -> &[Root] {
        &self.poles
    }

    /// Denominator at `z` and `Σ m_i/(z - r_i)`, from the factored form when
    /// the poles are known. The product keeps full relative accuracy next to
    /// a pole, where the expanded coefficients cancel catastrophically.
    fn den_factored(&self, z: Complex64) -> (Complex64, Complex64) {
        if self.poles.is_empty() || self.den.degree() == Some(0) {
            let (d, dd) = self.den.eval_with_derivative(z);
            return (d, dd / d);
        }
        let mut prod = self.den.leading().unwrap();
        let mut log_deriv = Complex64::new(0.0, 0.0);
        for &(r, m) in &self.poles {
            let t = z - r;
            prod *= t.powi(m as i32);
            log_deriv += m as f64 / t;
        }
        (prod, log_deriv)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den_factored(z).0
    }

    /// Value and derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, log_deriv) = self.den_factored(z);
        let inv = d.inv();
        let v = n * inv;
        (v, dn * inv - v * log_deriv)
    }

    /// `deg num - deg den`; `None` for the zero map.
    pub fn degree_difference(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    /// Order of `self(z) dz` as a 1-form at `p` (local coordinate `z - p`, or
    /// `w = 1/z` at infinity). `None` for the zero map.
    pub fn form_order_at(&self, p: &SpherePoint, tol: f64) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match *p {
            SpherePoint::Infinity => Some(-self.degree_difference()? - 2),
            SpherePoint::Finite(c) => {
                let vn = root_multiplicity(&self.num, c, tol) as i64;
                let vd = root_multiplicity(&self.den, c, tol) as i64;
                Some(vn - vd)
            }
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
            poles: if s == Complex64::new(0.0, 0.0) {
                Vec::new()
            } else {
                self.poles.clone()
            },
        }
    }

    /// Rebuild the cached pole list (after deserialization).
    pub fn rebuilt(&self, tol: f64) -> Result<Self> {
        Self::new(self.num.clone(), self.den.clone(), tol)
    }
}
