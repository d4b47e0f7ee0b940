use num_complex::Complex64;

use crate::complex_rational::SpherePoint;
use crate::error::{Error, Result};
use crate::weierstrass::{Segment, WeierstrassData, ROUTE_FRACTION};

/// Local evaluator of `f` on a punctured disc around an end.
///
/// One global evaluation fixes `f` at an anchor; every other value comes
/// from short integrals in the local coordinate, which keeps evaluation
/// cheap and accurate close to the puncture.
#[derive(Debug, Clone)]
pub struct EndChart<'a> {
    w: &'a WeierstrassData,
    point: SpherePoint,
    radius: f64,
    anchor: Complex64,
    anchor_value: Vec<f64>,
}

impl<'a> EndChart<'a> {
    pub fn new(w: &'a WeierstrassData, p: &SpherePoint) -> Result<Self> {
        if !w.has_puncture(p) {
            return Err(Error::InvalidDatum(format!("{p} is not an end of the datum")));
        }
        let radius = match *p {
            SpherePoint::Finite(z) => w
                .routing_radius(z)
                .ok_or_else(|| Error::InvalidDatum(format!("no routing disc at {p}")))?,
            SpherePoint::Infinity => {
                let far = w
                    .finite_punctures()
                    .map(|q| q.norm())
                    .fold(w.basepoint().norm().max(1.0), f64::max);
                ROUTE_FRACTION / far
            }
        };
        let anchor = Complex64::new(0.5 * radius, 0.0);
        let anchor_value = w.immersion_eval(p.from_local(anchor))?;
        Ok(Self {
            w,
            point: *p,
            radius,
            anchor,
            anchor_value,
        })
    }

    pub fn point(&self) -> SpherePoint {
        self.point
    }

    /// Radius of the disc in the local coordinate containing no other end.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn datum(&self) -> &WeierstrassData {
        self.w
    }

    /// `∂f` in the local coordinate.
    pub fn form(&self, h: Complex64, out: &mut [Complex64]) {
        self.w.local_form(&self.point, h, out);
    }

    /// `2 Re ∫ ∂f` along local segments.
    pub fn increment(&self, segments: &[Segment]) -> Result<Vec<f64>> {
        let v = self.w.integrate_local(&self.point, segments)?;
        Ok(v.iter().map(|c| 2.0 * c.re).collect())
    }

    /// `f` at local coordinate `h`, reached by an arc at the anchor radius
    /// followed by a radial segment.
    pub fn eval(&self, h: Complex64) -> Result<Vec<f64>> {
        let r = h.norm();
        if r == 0.0 || r > self.radius * (1.0 + 1e-9) {
            return Err(Error::Parameter(format!(
                "local point {h} outside the end chart of radius {}",
                self.radius
            )));
        }
        let turn = self.anchor * (h / r);
        let path = [
            Segment::arc_between(Complex64::new(0.0, 0.0), self.anchor, turn),
            Segment::Line { from: turn, to: h },
        ];
        let inc = self.increment(&path)?;
        Ok(self.anchor_value.iter().zip(&inc).map(|(a, b)| a + b).collect())
    }
}
