use minsurf::catalog::{self, CatalogEntry};
use minsurf::complex_rational::{laurent_expand_form, SpherePoint};
use minsurf::weierstrass::WeierstrassData;
use num_complex::Complex64;
use proptest::prelude::*;

fn entries() -> Vec<CatalogEntry> {
    catalog::all()
}

fn point() -> impl Strategy<Value = Complex64> {
    (-2.5f64..2.5, -2.5f64..2.5).prop_map(|(re, im)| Complex64::new(re, im))
}

fn clear_of_punctures(w: &WeierstrassData, z: Complex64, margin: f64) -> bool {
    w.finite_punctures().all(|p| (p - z).norm() > margin)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn path_independence(
        waypoints in prop::collection::vec(point(), 1..=4),
        target in point(),
    ) {
        for e in entries() {
            let w = &e.data;
            if !clear_of_punctures(w, target, 0.05) || !waypoints.iter().all(|&q| clear_of_punctures(w, q, 0.05)) {
                continue;
            }
            let direct = w.immersion_eval(target).unwrap();
            let detour = w.immersion_eval_via(&waypoints, target).unwrap();
            let d = dist(&direct, &detour);
            prop_assert!(d <= 1e-8 * norm(&direct).max(1.0), "{}: {d:e}", e.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn finite_difference_metric(z in point(), angle in 0.0f64..std::f64::consts::TAU) {
        for e in entries() {
            let w = &e.data;
            if !clear_of_punctures(w, z, 0.1) {
                continue;
            }
            let lambda_sq = w.conformal_factor(z).unwrap().lambda_sq;
            let h = Complex64::from_polar(1e-4, angle);
            let fp = w.immersion_eval(z + h).unwrap();
            let fm = w.immersion_eval(z - h).unwrap();
            let est = (dist(&fp, &fm) / (2.0 * h.norm())).powi(2);
            let rel = (est - lambda_sq).abs() / lambda_sq;
            prop_assert!(rel < 1e-4, "{} at {z}: {est} vs {lambda_sq}", e.name);
        }
    }

    #[test]
    fn components_are_harmonic(z in point()) {
        for e in entries() {
            let w = &e.data;
            if !clear_of_punctures(w, z, 0.3) {
                continue;
            }
            let f0 = w.immersion_eval(z).unwrap();
            let laplacian = |h: f64| -> (Vec<f64>, f64) {
                let mut acc: Vec<f64> = f0.iter().map(|x| -4.0 * x).collect();
                let mut size = norm(&f0);
                for d in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
                    let f = w.immersion_eval(z + d).unwrap();
                    size = size.max(norm(&f));
                    for (a, b) in acc.iter_mut().zip(&f) {
                        *a += b;
                    }
                }
                (acc.into_iter().map(|x| x / (h * h)).collect(), size)
            };
            let (coarse, size) = laplacian(0.04);
            let (fine, _) = laplacian(0.02);
            // O(h²) truncation: halving h divides the stencil by about 4
            let noise = 64.0 * w.tol().quad_rel * size / (0.02f64 * 0.02);
            for j in 0..f0.len() {
                prop_assert!(
                    fine[j].abs() <= 0.35 * coarse[j].abs() + noise,
                    "{} component {j} at {z}: {} then {}", e.name, coarse[j], fine[j]
                );
            }
        }
    }
}

#[test]
fn metric_order_is_dominant_laurent_order() {
    for e in entries() {
        let w = &e.data;
        let mut points: Vec<SpherePoint> = w.punctures().to_vec();
        points.push(SpherePoint::finite(0.3, 0.2));
        if !w.has_puncture(&SpherePoint::Infinity) {
            points.push(SpherePoint::Infinity);
        }
        for p in points {
            let dominant = w
                .phi()
                .iter()
                .filter(|r| !r.is_zero())
                .map(|r| laurent_expand_form(r, &p, 0, w.tol().cluster).unwrap().order)
                .min()
                .unwrap();
            assert_eq!(w.metric_order_at(&p).unwrap().order, dominant, "{} at {p}", e.name);
        }
    }
}

#[test]
fn catalog_entries_validate() {
    for e in entries() {
        let v = e.data.validate().unwrap();
        assert!(v.is_valid(), "{}: {:?}", e.name, v.problems);
        assert!(v.null.defect < 1e-12, "{}", e.name);
        assert!(v.residues.worst_imag < 1e-10, "{}", e.name);
        let found: Vec<SpherePoint> = e.data.punctures().to_vec();
        assert_eq!(found.len(), e.expected.ends.len(), "{}", e.name);
        for x in &e.expected.ends {
            let p = found.iter().find(|p| p.approx_eq(&x.point, 1e-9));
            let p = p.unwrap_or_else(|| panic!("{}: no puncture at {}", e.name, x.point));
            assert_eq!(e.data.metric_order_at(p).unwrap().order, x.mu);
        }
    }
}
