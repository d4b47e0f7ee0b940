use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial with complex coefficients in ascending powers.
///
/// The zero polynomial has no coefficients; every other polynomial has a
/// nonzero leading coefficient.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl From<Vec<Complex64>> for ComplexPoly {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<ComplexPoly> for Vec<Complex64> {
    fn from(p: ComplexPoly) -> Self {
        p.coeffs
    }
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Build from real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots (repeated according to multiplicity).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a (Complex64, usize)>) -> Self {
        let mut p = Self::one();
        for &(r, mult) in roots {
            let lin = Self::new(vec![-r, ONE]);
            for _ in 0..mult {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Largest coefficient modulus.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(lead.inv()),
            None => Self::zero(),
        }
    }

    /// Taylor coefficients about `center`: the polynomial q with q(h) = p(center + h).
    pub fn shift(&self, center: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let hi = c[j + 1];
                c[j] += hi * center;
            }
        }
        Self::new(c)
    }

    /// Coefficients reversed with respect to `degree`: z^degree * p(1/z).
    pub fn reversed(&self, degree: usize) -> Self {
        let mut c = vec![ZERO; degree + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            c[degree - k] = a;
        }
        Self::new(c)
    }

    pub fn powi(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Degenerate("division by the zero polynomial".into()))?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] * lead_inv;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = ZERO;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Divide out `(z - root)` by synthetic division, dropping the remainder.
    pub fn deflate(&self, root: Complex64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut q = vec![ZERO; n - 1];
        let mut acc = ZERO;
        for k in (1..n).rev() {
            acc = acc * root + self.coeffs[k];
            q[k - 1] = acc;
        }
        Self::new(q)
    }

    /// Drop leading coefficients whose modulus is below `tol * norm_inf`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let cut = tol * self.norm_inf();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.norm() <= cut) {
            c.pop();
        }
        Self::new(c)
    }

    /// Number of leading (lowest-power) coefficients that vanish relative to
    /// `tol` times the largest coefficient. `None` for the zero polynomial.
    pub(crate) fn valuation(&self, tol: f64) -> Option<usize> {
        let cut = tol * self.norm_inf();
        self.coeffs.iter().position(|c| c.norm() > cut)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut c = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ComplexPoly::new(c)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(-ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexPoly {
            type Output = ComplexPoly;
            fn $m(self, rhs: ComplexPoly) -> ComplexPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Which ring operation [`poly_arith`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &ComplexPoly, b: &ComplexPoly, op: PolyOp) -> ComplexPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn difference_of_squares() {
        let a = ComplexPoly::from_real(&[1.0, 1.0]);
        let b = ComplexPoly::from_real(&[-1.0, 1.0]);
        assert_eq!(
            poly_arith(&a, &b, PolyOp::Mul),
            ComplexPoly::from_real(&[-1.0, 0.0, 1.0])
        );
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = ComplexPoly::new(vec![c(1.0, 2.0), c(0.0, -3.0), c(4.0, 0.0)]);
        assert_eq!(poly_arith(&p, &ComplexPoly::zero(), PolyOp::Add), p);
        assert!(poly_arith(&p, &p, PolyOp::Sub).is_zero());
        assert_eq!(poly_arith(&p, &p, PolyOp::Sub).degree(), None);
    }

    #[test]
    fn jorge_meeks_numerator_m2_j0() {
        // 1 - z^(2m-2j) with m = 2, j = 0
        let m = 2;
        let j = 0;
        let p = &ComplexPoly::one() - &ComplexPoly::monomial(ONE, 2 * m - 2 * j);
        assert_eq!(p, ComplexPoly::from_real(&[1.0, 0.0, 0.0, 0.0, -1.0]));
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = ComplexPoly::new(vec![c(1.0, -1.0), c(2.0, 0.5), c(0.0, 3.0), c(-1.0, 0.0)]);
        let center = c(0.3, -0.7);
        let q = p.shift(center);
        for h in [c(0.1, 0.2), c(-1.0, 0.5), c(2.0, -3.0)] {
            assert!((q.eval(h) - p.eval(center + h)).norm() < 1e-12);
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, -1.0), c(1.0, 1.0)]);
        let b = ComplexPoly::new(vec![c(-1.0, 0.5), c(2.0, 0.0)]);
        let (q, r) = a.div_rem(&b).unwrap();
        let back = &(&q * &b) + &r;
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            assert!((x - y).norm() < 1e-14);
        }
        assert!(r.degree().unwrap_or(0) < 1);
        assert!(a.div_rem(&ComplexPoly::zero()).is_err());
    }

    #[test]
    fn deflate_exact_root() {
        let p = ComplexPoly::from_real(&[-1.0, 0.0, 1.0]);
        assert_eq!(p.deflate(ONE), ComplexPoly::from_real(&[1.0, 1.0]));
    }

    #[test]
    fn derivative_and_horner() {
        let p = ComplexPoly::from_real(&[1.0, -2.0, 0.0, 4.0]);
        let z = c(0.5, 1.5);
        let (v, dv) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-14);
        assert!((dv - p.derivative().eval(z)).norm() < 1e-14);
    }

    #[test]
    fn reversal() {
        let p = ComplexPoly::from_real(&[0.0, 1.0, 2.0]);
        assert_eq!(p.reversed(3), ComplexPoly::from_real(&[0.0, 2.0, 1.0, 0.0]));
    }
}
