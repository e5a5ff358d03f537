//! Eigenfunctions `ψ(s) = N s^A (1-s)^B P_n^{(2A,2B)}(1-2s)`, their
//! normalization (closed form and quadrature) and sampling.

use std::io::Write;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{map_x_to_s, PotentialParams, Variant};
use crate::quad::{integrate_unit_interval, QuadConfig};
use crate::specfun::{
    ascending_form_coefficients, gauss_2f1, jacobi_sum_product_form, pochhammer,
    product_form_coefficients, Hyp2F1Args, JacobiParams,
};
use crate::spectra::{BoundState, Equation};

/// Largest degree accepted by [`rodrigues_eval`].
pub const RODRIGUES_MAX_N: usize = 8;

const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// How the normalization constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NormKind {
    /// Square-integrable real-variant state.
    Closed,
    /// Formal integral of `ψ²` over `s ∈ (0,1)` for a non-Hermitian state.
    Formal,
    /// The integral diverges; `ψ` is left unnormalized.
    Divergent,
}

/// Below this size every Jacobi coefficient counts as zero.
const DEGENERATE_TOL: f64 = 1e-12;

/// Everything needed to evaluate one eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSpec {
    pub n: usize,
    /// Exponent of `s`.
    pub a: C64,
    /// Exponent of `1 - s`.
    pub b: C64,
    /// `(ρ, ν) = (2A, 2B)`.
    pub jacobi: JacobiParams,
    /// Normalization constant (`1` when divergent).
    pub norm: C64,
    pub norm_kind: NormKind,
    pub variant: Variant,
    pub equation: Equation,
    /// Ascending coefficients of the polynomial part when `P_n^{(2A,2B)}`
    /// vanishes identically (see [`monic_polynomial_solution`]).
    pub degenerate_poly: Option<Vec<C64>>,
}

impl WavefunctionSpec {
    /// `s^A (1-s)^B P_n^{(2A,2B)}(1-2s)` without the constant `N`.
    pub fn unnormalized(&self, s: C64) -> C64 {
        self.prefactor(s) * self.polynomial(s)
    }

    /// `s^A (1-s)^B`.
    pub fn prefactor(&self, s: C64) -> C64 {
        s.powc(self.a) * (1.0 - s).powc(self.b)
    }

    /// Polynomial part, `P_n^{(2A,2B)}(1-2s)` or its degenerate replacement.
    ///
    /// The product form in powers of `s` and `1 - s` is used because it keeps
    /// near-multiple zeros at `s = 0` or `s = 1` (exponents close to negative
    /// integers) free of cancellation.
    pub fn polynomial(&self, s: C64) -> C64 {
        match &self.degenerate_poly {
            Some(c) => c
                .iter()
                .rev()
                .fold(C64::new(0.0, 0.0), |acc, ck| acc * s + ck),
            None => jacobi_sum_product_form(self.jacobi, s, ONE),
        }
    }

    pub fn eval(&self, s: C64) -> C64 {
        self.norm * self.unnormalized(s)
    }
}

/// Argument of the ₂F₁ in the closed-form normalization integrals.
fn norm_argument(state: &BoundState) -> C64 {
    match (state.equation, state.variant) {
        (Equation::Schrodinger, _) => ONE,
        (_, Variant::RealHermitian | Variant::PtSymmetric) => ONE,
        (_, Variant::NonPtNonHermitian | Variant::PseudoHermitian) => I,
    }
}

fn spec_without_norm(state: &BoundState) -> WavefunctionSpec {
    let (a, b) = (state.b_signed, state.eps);
    let jacobi = JacobiParams::new(state.n, 2.0 * a, 2.0 * b);
    let vanishes = ascending_form_coefficients(jacobi, ONE)
        .iter()
        .all(|d| d.norm() < DEGENERATE_TOL);
    WavefunctionSpec {
        n: state.n,
        a,
        b,
        jacobi,
        norm: ONE,
        norm_kind: NormKind::Divergent,
        variant: state.variant,
        equation: state.equation,
        degenerate_poly: vanishes.then(|| monic_polynomial_solution(jacobi)),
    }
}

/// Ascending coefficients `c_k` (with `c_n = 1`) of a degree-`n` polynomial
/// solution of `s(1-s)y'' + [ρ+1 - (ρ+ν+2)s]y' + n(n+ρ+ν+1)y = 0`.
///
/// This is the Jacobi equation in `s`. When `P_n^{(ρ,ν)}(1-2s)` vanishes
/// identically the equation still has this solution. A downward step with
/// `0/0` leaves `c_k` free; it is set to zero.
pub fn monic_polynomial_solution(p: JacobiParams) -> Vec<C64> {
    let JacobiParams { n, rho, nu } = p;
    let lambda = n as f64 * (n as f64 + rho + nu + 1.0);
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = ONE;
    for k in (0..n).rev() {
        let kf = k as f64;
        let num = c[k + 1] * (kf + 1.0) * (kf + rho + 1.0);
        let den = kf * (kf - 1.0) + (rho + nu + 2.0) * kf - lambda;
        c[k] = if den.norm() < DEGENERATE_TOL {
            C64::new(0.0, 0.0)
        } else {
            num / den
        };
    }
    c
}

/// Builds `ψ` for a level, with exponents `(A, B) = (b_signed, ε)` taken from
/// the level's quantizing branch.
pub fn build_wavefunction(
    params: &PotentialParams,
    state: &BoundState,
) -> Result<WavefunctionSpec> {
    let mut spec = spec_without_norm(state);
    match normalization_closed_form(params, state) {
        Ok(norm) => {
            spec.norm = norm;
            spec.norm_kind = if state.variant == Variant::RealHermitian
                && state.equation == Equation::KleinGordon
            {
                NormKind::Closed
            } else {
                NormKind::Formal
            };
        }
        Err(Error::Divergence(_)) | Err(Error::NonNormalizable(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(spec)
}

/// `s^{-2A} (1-s)^{-2B} dⁿ/dsⁿ [s^{n+2A} (1-s)^{n+2B}]` by the Leibniz rule.
///
/// Equals `n! P_n^{(2A,2B)}(1-2s)`.
pub fn rodrigues_eval(n: usize, a: C64, b: C64, s: C64) -> Result<C64> {
    if n > RODRIGUES_MAX_N {
        return Err(Error::InvalidParams(format!(
            "Rodrigues evaluation supports n <= {RODRIGUES_MAX_N}, got {n}"
        )));
    }
    // falling factorial z(z-1)…(z-k+1) = (z-k+1)_k
    let falling = |z: C64, k: usize| pochhammer(z - k as f64 + 1.0, k);
    let mut sum = C64::new(0.0, 0.0);
    let mut binom = 1.0;
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let d_left = falling(2.0 * a + n as f64, k);
        let d_right = falling(2.0 * b + n as f64, n - k);
        sum += binom * sign * d_left * d_right * s.powi((n - k) as i32) * (1.0 - s).powi(k as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(sum)
}

/// `I(p, r) = ∫₀¹ s^{α0-1} (1 - z s)^{-β0} ds = ₂F₁(α0, β0; α0+1; z)/α0`.
fn norm_integral(alpha0: C64, beta0: C64, z: C64) -> Result<C64> {
    if alpha0.re <= 0.0 {
        return Err(Error::Divergence(format!(
            "s-exponent integral needs Re(alpha0) > 0, got {}",
            alpha0.re
        )));
    }
    if z == ONE && (1.0 - beta0).re <= 0.0 {
        return Err(Error::Divergence(format!(
            "(1-s)-exponent integral needs Re(1 - beta0) > 0, got {}",
            (1.0 - beta0).re
        )));
    }
    Ok(gauss_2f1(Hyp2F1Args::new(alpha0, beta0, alpha0 + 1.0, z))? / alpha0)
}

/// `N^{-2} = Σ_p Σ_r c_p d_r I(p, r)`, the double sum of the product and
/// ascending Jacobi forms against the ₂F₁ integrals.
pub fn inverse_norm_squared(state: &BoundState) -> Result<C64> {
    let spec = spec_without_norm(state);
    let n = state.n;
    let z = norm_argument(state);
    let c = product_form_coefficients(spec.jacobi, ONE);
    let d = ascending_form_coefficients(spec.jacobi, ONE);
    let mut total = C64::new(0.0, 0.0);
    for (p, cp) in c.iter().enumerate() {
        for (r, dr) in d.iter().enumerate() {
            let alpha0 = (n + r) as f64 - p as f64 + 2.0 * spec.a + 1.0;
            let beta0 = -(p as f64) - 2.0 * spec.b;
            total += cp * dr * norm_integral(alpha0, beta0, z)?;
        }
    }
    Ok(total)
}

/// Normalization constant `N` from the closed-form integrals.
///
/// Real and PT levels (and the Schrödinger case) use `₂F₁` at `z = 1`;
/// non-PT and pseudo levels use `z = i`. The result is complex in general.
pub fn normalization_closed_form(_params: &PotentialParams, state: &BoundState) -> Result<C64> {
    let inv = inverse_norm_squared(state)?;
    if !inv.is_finite() || inv.norm() == 0.0 {
        return Err(Error::NonNormalizable(format!("N^-2 = {inv}")));
    }
    if state.normalizable && inv.re < 0.0 && inv.im.abs() < 1e-12 * inv.norm() {
        return Err(Error::NonNormalizable(format!("N^-2 = {inv} is negative")));
    }
    Ok(inv.sqrt().inv())
}

/// `∫₀¹ |ψ_unnormalized(s)|² ds` by adaptive quadrature.
pub fn normalization_quadrature(_params: &PotentialParams, state: &BoundState) -> Result<f64> {
    let spec = spec_without_norm(state);
    squared_modulus_integral(&spec)
}

/// `∫₀¹ |ψ_unnormalized(s)|² ds` for an arbitrary spec.
pub fn squared_modulus_integral(spec: &WavefunctionSpec) -> Result<f64> {
    let spec = spec.clone();
    let r = integrate_unit_interval(
        move |s| C64::from(spec.unnormalized(C64::from(s)).norm_sqr()),
        QuadConfig::default(),
    )?;
    Ok(r.value.re)
}

/// Sign changes of `Re ψ` on a uniform interior grid of `points` nodes.
pub fn count_nodes(spec: &WavefunctionSpec, points: usize) -> usize {
    let mut last = 0.0;
    let mut count = 0;
    for i in 1..points {
        let s = i as f64 / points as f64;
        let v = spec.unnormalized(C64::from(s)).re;
        if v != 0.0 {
            if last != 0.0 && v.signum() != last {
                count += 1;
            }
            last = v.signum();
        }
    }
    count
}

/// One sample of `ψ` along `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub x: f64,
    pub s: C64,
    pub psi: C64,
}

/// Samples `ψ(s(x))` on `points` equally spaced `x ∈ [x_min, x_max]`.
/// Points at poles of the map are skipped.
pub fn sample(
    params: &PotentialParams,
    spec: &WavefunctionSpec,
    x_min: f64,
    x_max: f64,
    points: usize,
) -> Vec<WavefunctionSample> {
    let step = if points > 1 {
        (x_max - x_min) / (points - 1) as f64
    } else {
        0.0
    };
    (0..points)
        .filter_map(|i| {
            let x = x_min + step * i as f64;
            let s = map_x_to_s(params, x).ok()?;
            Some(WavefunctionSample {
                x,
                s,
                psi: spec.eval(s),
            })
        })
        .collect()
}

/// Writes samples as CSV with columns `x,s_re,s_im,psi_re,psi_im`.
pub fn write_samples_csv(
    out: &mut impl Write,
    samples: &[WavefunctionSample],
) -> std::io::Result<()> {
    writeln!(out, "x,s_re,s_im,psi_re,psi_im")?;
    for p in samples {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            p.x, p.s.re, p.s.im, p.psi.re, p.psi.im
        )?;
    }
    Ok(())
}
