//! Complete minimal surfaces of finite total curvature in R^n, given by
//! genus-zero Weierstrass data.
//!
//! The crate validates the data, classifies every end, computes the Gauss-map
//! degree and total curvature, evaluates the Chern–Osserman, Gackstatter and
//! Ejiri inequalities, and samples surface meshes.

pub mod catalog;
pub mod complex_rational;
pub mod curvature;
pub mod ends;
pub mod error;
pub mod mesh;
pub mod quadrature;
pub mod tol;
pub mod weierstrass;

pub use error::{Error, Result};
pub use tol::Tolerances;
