//! Numerical tolerances shared by every module.
//!
//! All values are relative unless noted. [`Tolerances::scaled`] multiplies
//! every entry by one factor, which is what the CLI `--tol` flag drives.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Root clustering radius factor (radius = cluster * (1 + |root|)) and the
    /// vanishing threshold used when reducing rational maps and reading
    /// Laurent valuations.
    pub cluster: f64,
    /// Null-condition defect, relative to the squared component scale.
    pub null: f64,
    /// Largest tolerated |Im residue|.
    pub residue: f64,
    /// Singular values below `rank * sigma_max` count as zero.
    pub rank: f64,
    /// Planar threshold: b <= planar * a.
    pub planar: f64,
    /// Bilinear relations at an end, relative to |a_{-2}|^2.
    pub bilinear: f64,
    /// Relative accuracy requested from path quadrature.
    pub quad_rel: f64,
    /// Absolute accuracy requested from path quadrature.
    pub quad_abs: f64,
    /// Points closer than `singular * (1 + scale)` to a puncture are refused.
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster: 1e-8,
            null: 1e-10,
            residue: 1e-10,
            rank: 1e-8,
            planar: 1e-8,
            bilinear: 1e-9,
            quad_rel: 1e-12,
            quad_abs: 1e-13,
            singular: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            cluster: self.cluster * factor,
            null: self.null * factor,
            residue: self.residue * factor,
            rank: self.rank * factor,
            planar: self.planar * factor,
            bilinear: self.bilinear * factor,
            quad_rel: self.quad_rel * factor,
            quad_abs: self.quad_abs * factor,
            singular: self.singular * factor,
        }
    }
}
