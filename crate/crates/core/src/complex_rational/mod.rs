//! Complex polynomials, rational maps and Laurent expansions.

mod laurent;
mod poly;
mod rational;
mod roots;
mod sphere;

pub use laurent::{laurent_expand, laurent_expand_form, residue, residue_form_at_infinity, LaurentSeries};
pub use poly::{poly_arith, ComplexPoly, PolyOp};
pub use rational::RationalMap;
pub use roots::{poly_gcd, poly_gcd_many, root_multiplicity, roots, Root};
pub use sphere::{sort_points, SpherePoint};
