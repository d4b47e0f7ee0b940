//! The `analyze` report: module outputs gathered once, then printed as a
//! summary or serialized as JSON.

use std::fmt::Write as _;

use minsurf::complex_rational::SpherePoint;
use minsurf::curvature::{curvature_report, total_curvature_numeric, CurvatureReport};
use minsurf::ends::{analyze_all, rotation_index_numeric, Classification, EndAnalysis};
use minsurf::weierstrass::{Validation, WeierstrassData};
use minsurf::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Absolute accuracy asked of the numeric total curvature.
const NUMERIC_TC_TOL: f64 = 1e-6;
/// Radii at which the rotation index of each end curve is measured.
const ROTATION_RADII: [f64; 3] = [1e2, 1e3, 1e4];

#[derive(Debug, Serialize)]
pub struct EndOrder {
    pub puncture: SpherePoint,
    pub mu: i64,
}

#[derive(Debug, Serialize)]
pub struct ValidationSummary {
    pub null_defect: f64,
    pub residue_worst_imag: f64,
    pub end_orders: Vec<EndOrder>,
}

#[derive(Debug, Serialize)]
pub struct NumericRotation {
    pub puncture: SpherePoint,
    pub radii: Vec<f64>,
    pub windings: Vec<u32>,
    pub index: Option<u32>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Verdicts {
    pub co_equality: bool,
    pub all_ends_embedded: bool,
    /// Equality holds exactly when every end is embedded, and every measured
    /// rotation index matches the algebraic one.
    pub main_theorem_consistent: bool,
    pub tc_numeric_agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub label: String,
    pub n: usize,
    pub input_sha256: String,
    pub version: String,
    pub validation: ValidationSummary,
    pub curvature: CurvatureReport,
    pub tc_numeric_error: Option<String>,
    pub ends: Vec<EndAnalysis>,
    pub rotation: Vec<NumericRotation>,
    pub verdicts: Verdicts,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl AnalysisReport {
    pub fn build(w: &WeierstrassData, input: &[u8], validation: Validation) -> Result<Self> {
        let mut curvature = curvature_report(w, None)?;
        let tc_numeric_error = match total_curvature_numeric(w, NUMERIC_TC_TOL) {
            Ok(nc) => {
                curvature.tc_numeric = Some(nc.value);
                None
            }
            Err(e) => Some(e.to_string()),
        };
        let ends = analyze_all(w)?;
        let rotation: Vec<NumericRotation> = ends
            .iter()
            .map(|e| match rotation_index_numeric(w, &e.puncture, &ROTATION_RADII) {
                Ok(r) => NumericRotation {
                    puncture: e.puncture,
                    radii: r.radii,
                    windings: r.windings,
                    index: Some(r.index),
                    error: None,
                },
                Err(err) => NumericRotation {
                    puncture: e.puncture,
                    radii: ROTATION_RADII.to_vec(),
                    windings: Vec::new(),
                    index: None,
                    error: Some(err.to_string()),
                },
            })
            .collect();

        let all_ends_embedded = ends.iter().all(|e| e.embedded);
        let rotation_matches = ends
            .iter()
            .zip(&rotation)
            .all(|(e, r)| r.index.is_none_or(|i| i == e.rotation_index));
        let tc_numeric_agrees = curvature
            .tc_numeric
            .map(|x| (x - curvature.tc_algebraic.value()).abs() <= 1e3 * NUMERIC_TC_TOL);
        let verdicts = Verdicts {
            co_equality: curvature.co_equality,
            all_ends_embedded,
            main_theorem_consistent: curvature.co_equality == all_ends_embedded && rotation_matches,
            tc_numeric_agrees,
        };
        Ok(Self {
            label: w.label.clone(),
            n: w.n(),
            input_sha256: sha256_hex(input),
            version: env!("CARGO_PKG_VERSION").to_string(),
            validation: ValidationSummary {
                null_defect: validation.null.defect,
                residue_worst_imag: validation.residues.worst_imag,
                end_orders: validation
                    .orders
                    .iter()
                    .map(|&(puncture, mu)| EndOrder { puncture, mu })
                    .collect(),
            },
            curvature,
            tc_numeric_error,
            ends,
            rotation,
            verdicts,
        })
    }

    pub fn summary(&self) -> String {
        let c = &self.curvature;
        let yes = |b: bool| if b { "TRUE" } else { "FALSE" };
        let mut s = String::new();
        let _ = writeln!(s, "{}  (n = {}, {} ends)", self.label, self.n, c.m);
        let _ = writeln!(s, "  Gauss map degree    d = {}", c.d);
        let _ = write!(s, "  total curvature     {}", c.tc_algebraic);
        match (c.tc_numeric, &self.tc_numeric_error) {
            (Some(x), _) => {
                let _ = writeln!(s, "  (numeric {:.10})", x + 0.0);
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "  (numeric failed: {e})");
            }
            (None, None) => s.push('\n'),
        }
        let _ = writeln!(s, "  Euler characteristic {}", c.chi);
        let _ = writeln!(
            s,
            "  Chern–Osserman      {} <= {}  equality {}",
            c.tc_algebraic,
            c.co_rhs,
            yes(c.co_equality)
        );
        let note = if c.inequalities_applicable { "" } else { "  (immersion not full)" };
        let _ = writeln!(
            s,
            "  Gackstatter         {} <= {}  holds {}{note}",
            c.tc_algebraic,
            c.gackstatter_rhs,
            yes(c.gackstatter_holds)
        );
        let _ = writeln!(
            s,
            "  Ejiri               {} <= {}  holds {}  equality {}  (l = {}){note}",
            c.tc_algebraic,
            c.ejiri_rhs,
            yes(c.ejiri_holds),
            yes(c.ejiri_equality),
            c.l
        );
        for bp in &c.branch_points {
            let _ = writeln!(s, "  branch point {} of order {}", bp.point, bp.order);
        }
        for (e, r) in self.ends.iter().zip(&self.rotation) {
            let class = match e.classification {
                Classification::CatenoidType => "catenoid-type",
                Classification::Planar => "planar",
                Classification::HigherOrder => "higher-order",
            };
            let measured = match (r.index, &r.error) {
                (Some(i), _) => format!("measured {i}"),
                (None, Some(err)) => format!("measurement failed: {err}"),
                (None, None) => String::new(),
            };
            let _ = writeln!(
                s,
                "  end {}: mu = {}, k = {}, {class}, rotation index {} ({measured}), {}",
                e.puncture,
                e.mu,
                e.k,
                e.rotation_index,
                if e.embedded { "embedded" } else { "not embedded" }
            );
        }
        let _ = writeln!(
            s,
            "  main theorem cross-check: {}",
            if self.verdicts.main_theorem_consistent { "PASS" } else { "FAIL" }
        );
        s
    }
}
