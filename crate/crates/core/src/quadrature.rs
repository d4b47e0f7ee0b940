//! Adaptive Gauss–Kronrod (7/15) quadrature for complex vector integrands on
//! `[0, 1]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_845_693_01,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy)]
pub struct QuadTolerance {
    pub abs: f64,
    pub rel: f64,
}

struct Interval {
    a: f64,
    b: f64,
    value: Vec<Complex64>,
    err: f64,
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn gk15<F>(f: &mut F, a: f64, b: f64, dim: usize, buf: &mut [Complex64]) -> (Vec<Complex64>, f64)
where
    F: FnMut(f64, &mut [Complex64]),
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = Complex64::new(0.0, 0.0);
    let mut kron = vec![zero; dim];
    let mut gauss = vec![zero; dim];

    f(centre, buf);
    for i in 0..dim {
        kron[i] += buf[i] * WGK[7];
        gauss[i] += buf[i] * WG[3];
    }
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        for &t in &[centre - dx, centre + dx] {
            f(t, buf);
            for i in 0..dim {
                kron[i] += buf[i] * WGK[j];
                if j % 2 == 1 {
                    gauss[i] += buf[i] * WG[j / 2];
                }
            }
        }
    }
    let mut err: f64 = 0.0;
    for i in 0..dim {
        kron[i] *= half;
        gauss[i] *= half;
        err = err.max((kron[i] - gauss[i]).norm());
    }
    (kron, err)
}

/// Integrate `f` over `[0, 1]`; `f(t, out)` writes the `dim` integrand
/// components at `t`.
pub fn integrate<F>(mut f: F, dim: usize, tol: QuadTolerance) -> Result<Vec<Complex64>>
where
    F: FnMut(f64, &mut [Complex64]),
{
    integrate_on(&mut f, &[0.0, 1.0], dim, tol)
}

/// Integrate over `[breaks[0], breaks[last]]` with the given initial partition.
pub fn integrate_on<F>(f: &mut F, breaks: &[f64], dim: usize, tol: QuadTolerance) -> Result<Vec<Complex64>>
where
    F: FnMut(f64, &mut [Complex64]),
{
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    let mut pieces: Vec<Interval> = breaks
        .windows(2)
        .map(|w| {
            let (value, err) = gk15(f, w[0], w[1], dim, &mut buf);
            Interval {
                a: w[0],
                b: w[1],
                value,
                err,
            }
        })
        .collect();

    loop {
        let mut total = vec![Complex64::new(0.0, 0.0); dim];
        let mut err = 0.0;
        for p in &pieces {
            for i in 0..dim {
                total[i] += p.value[i];
            }
            err += p.err;
        }
        let target = tol.abs.max(tol.rel * max_norm(&total));
        if err <= target {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            if err <= 1e3 * target {
                return Ok(total);
            }
            return Err(Error::ConvergenceFailure {
                last: err,
                previous: target,
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.err > acc.1 { (i, p.err) } else { acc });
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval can no longer be split in double precision
            return Ok(total);
        }
        for (a, b) in [(p.a, mid), (mid, p.b)] {
            let (value, err) = gk15(f, a, b, dim, &mut buf);
            pieces.push(Interval { a, b, value, err });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: QuadTolerance = QuadTolerance { abs: 1e-14, rel: 1e-13 };

    #[test]
    fn polynomial_exact() {
        let v = integrate(|t, out| out[0] = Complex64::new(t * t * t, 2.0 * t), 1, TOL).unwrap();
        assert!((v[0] - Complex64::new(0.25, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn near_singular_endpoint() {
        // ∫_0^1 1/(t + 1e-6)^2 dt = 1/1e-6 - 1/(1 + 1e-6)
        let e = 1e-6;
        let v = integrate(|t, out| out[0] = Complex64::new(1.0 / ((t + e) * (t + e)), 0.0), 1, TOL)
            .unwrap();
        let exact = 1.0 / e - 1.0 / (1.0 + e);
        assert!((v[0].re - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn vector_components_independent() {
        let v = integrate(
            |t, out| {
                out[0] = Complex64::new((t * 10.0).sin(), 0.0);
                out[1] = Complex64::new(0.0, t.exp());
            },
            2,
            TOL,
        )
        .unwrap();
        assert!((v[0].re - (1.0 - 10f64.cos()) / 10.0).abs() < 1e-13);
        assert!((v[1].im - (1f64.exp() - 1.0)).abs() < 1e-13);
    }
}
