//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 2000;

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Error estimate above which the result is rejected.
    pub fail_above: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            fail_above: 1e-9,
        }
    }
}

/// Integral value together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
}

fn kronrod15(f: &impl Fn(f64) -> C64, a: f64, b: f64) -> (C64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * half, ((kron - gauss) * half).norm())
}

/// Adaptive G7/K15 integration of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> C64, a: f64, b: f64, cfg: QuadConfig) -> Result<QuadResult> {
    let (v0, e0) = kronrod15(&f, a, b);
    let mut pieces = vec![(a, b, v0, e0)];
    loop {
        let value: C64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureFailure {
                estimate: f64::INFINITY,
                tolerance: cfg.fail_above,
            });
        }
        let target = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if error <= target || pieces.len() >= MAX_INTERVALS {
            if error > cfg.fail_above {
                return Err(Error::QuadratureFailure {
                    estimate: error,
                    tolerance: cfg.fail_above,
                });
            }
            return Ok(QuadResult { value, error });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted in floating point
            return Err(Error::QuadratureFailure {
                estimate: error,
                tolerance: cfg.fail_above,
            });
        }
        let (vl, el) = kronrod15(&f, lo, mid);
        let (vr, er) = kronrod15(&f, mid, hi);
        pieces.push((lo, mid, vl, el));
        pieces.push((mid, hi, vr, er));
    }
}

/// Integral over `(0, 1)` of an integrand with algebraic endpoint behaviour.
///
/// The interval is split at `1/2`; the substitutions `s = u²` and
/// `1 - s = v²` soften `s^p` and `(1-s)^p` singularities with `Re p > -1`.
pub fn integrate_unit_interval(
    f: impl Fn(f64) -> C64 + Sync,
    cfg: QuadConfig,
) -> Result<QuadResult> {
    let upper = std::f64::consts::FRAC_1_SQRT_2;
    let left = integrate(|u| f(u * u) * (2.0 * u), 0.0, upper, cfg)?;
    let right = integrate(|v| f(1.0 - v * v) * (2.0 * v), 0.0, upper, cfg)?;
    Ok(QuadResult {
        value: left.value + right.value,
        error: left.error + right.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(
            |x| C64::new(x.powi(5), -x * x),
            -1.0,
            2.0,
            QuadConfig::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.value.re, (64.0 - 1.0) / 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.value.im, -3.0, epsilon = 1e-13);
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^π e^{ix} dx = 2i
        let r = integrate(
            |x| C64::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            QuadConfig::default(),
        )
        .unwrap();
        assert!((r.value - C64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn endpoint_singularities() {
        // ∫_0^1 s^{-1/2}(1-s)^{-1/2} ds = π
        let f = |s: f64| C64::new((s * (1.0 - s)).powf(-0.5), 0.0);
        let r = integrate_unit_interval(f, QuadConfig::default()).unwrap();
        assert_abs_diff_eq!(r.value.re, std::f64::consts::PI, epsilon = 1e-11);
    }

    #[test]
    fn nonintegrable_fails() {
        let f = |s: f64| C64::new(1.0 / (s * s), 0.0);
        assert!(matches!(
            integrate_unit_interval(f, QuadConfig::default()),
            Err(Error::QuadratureFailure { .. })
        ));
    }
}
