//! Finite-difference residual of closed-form eigenfunctions in the
//! transformed equation `ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0`.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::nu::HypergeometricTypeProblem;
use crate::problem::{dimensionless_kg, PotentialParams};
use crate::spectra::{schrodinger_problem, schrodinger_state, BoundState, Equation};
use crate::wavefn::{build_wavefunction, WavefunctionSpec};

/// Interior `s` grid of the residual check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualGrid {
    pub s_min: f64,
    pub s_max: f64,
    pub points: usize,
}

impl Default for ResidualGrid {
    fn default() -> Self {
        Self {
            s_min: 0.05,
            s_max: 0.95,
            points: 181,
        }
    }
}

/// NU problem of a level at an arbitrary (possibly perturbed) energy.
fn problem_at(
    params: &PotentialParams,
    state: &BoundState,
    energy: C64,
) -> Result<HypergeometricTypeProblem> {
    match state.equation {
        Equation::KleinGordon => Ok(HypergeometricTypeProblem::klein_gordon(&dimensionless_kg(
            params, energy,
        )?)),
        Equation::Schrodinger => schrodinger_problem(params, energy),
    }
}

/// Finite-difference step for the polynomial part, divided by its degree.
const POLY_STEP: f64 = 5e-3;

/// First and second derivatives by 5-point central differences.
fn derivatives(f: &impl Fn(f64) -> C64, s: f64, h: f64) -> (C64, C64, C64) {
    let (fm2, fm1, f0, fp1, fp2) = (f(s - 2.0 * h), f(s - h), f(s), f(s + h), f(s + 2.0 * h));
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (f0, d1, d2)
}

/// 5-point derivatives at `h` and `h/2` combined to cancel the `h⁴` error
/// term, which makes them exact for polynomials up to degree 6.
fn richardson_derivatives(f: impl Fn(f64) -> C64, s: f64, h: f64) -> (C64, C64, C64) {
    let (f0, d1, d2) = derivatives(&f, s, h);
    let (_, e1, e2) = derivatives(&f, s, 0.5 * h);
    (f0, (16.0 * e1 - d1) / 15.0, (16.0 * e2 - d2) / 15.0)
}

/// `max |ψ'' + (τ̃/σ)ψ' + (σ̃/σ²)ψ| / max |ψ''|` over the grid, with the
/// equation evaluated at `energy`. When `ψ'' ≡ 0` the unscaled maximum is
/// returned.
///
/// `ψ = φ y` with `φ = s^A (1-s)^B`: the polynomial `y` is differentiated by
/// extrapolated 5-point differences and combined with the exact logarithmic derivatives
/// of `φ`, which keeps the stencil away from the steep power factors.
pub fn residual_at_energy(
    params: &PotentialParams,
    state: &BoundState,
    wf: &WavefunctionSpec,
    energy: C64,
    grid: &ResidualGrid,
) -> Result<f64> {
    let problem = problem_at(params, state, energy)?;
    let h = POLY_STEP / (wf.n.max(1) as f64);
    let poly = |s: f64| wf.polynomial(C64::from(s));
    let (a, b) = (wf.a, wf.b);
    let mut max_res = 0.0f64;
    let mut max_d2 = 0.0f64;
    for i in 0..grid.points {
        let s = grid.s_min + (grid.s_max - grid.s_min) * i as f64 / (grid.points - 1).max(1) as f64;
        let (y, y1, y2) = richardson_derivatives(poly, s, h);
        let sc = C64::from(s);
        // φ'/φ and φ''/φ
        let g1 = a / s - b / (1.0 - s);
        let g2 = g1 * g1 - a / (s * s) - b / ((1.0 - s) * (1.0 - s));
        let phi = wf.prefactor(sc);
        let (f0, d1, d2) = (
            phi * y,
            phi * (y1 + g1 * y),
            phi * (y2 + 2.0 * g1 * y1 + g2 * y),
        );
        let sigma = problem.sigma.eval(sc);
        let res = d2
            + problem.tau_tilde.eval(sc) / sigma * d1
            + problem.sigma_tilde.eval(sc) / (sigma * sigma) * f0;
        max_res = max_res.max(res.norm());
        max_d2 = max_d2.max(d2.norm());
    }
    Ok(if max_d2 > 0.0 {
        max_res / max_d2
    } else {
        max_res
    })
}

/// Residual of `wf` at the level's own energy.
pub fn residual_check(
    params: &PotentialParams,
    state: &BoundState,
    wf: &WavefunctionSpec,
    grid: &ResidualGrid,
) -> Result<f64> {
    residual_at_energy(params, state, wf, state.energy, grid)
}

/// Residual of the complex-α Schrödinger eigenfunction of level `n`.
pub fn schrodinger_check(params: &PotentialParams, n: usize, grid: &ResidualGrid) -> Result<f64> {
    let state = schrodinger_state(params, n)?;
    let wf = build_wavefunction(params, &state)?;
    residual_check(params, &state, &wf, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Variant;
    use crate::spectra::evaluate_levels;

    #[test]
    fn real_levels_have_small_residual() {
        let p = PotentialParams::with_alpha(0.45, 1.0, 1.0, 1.0, Variant::RealHermitian).unwrap();
        for st in evaluate_levels(&p, 5).unwrap().emitted() {
            let wf = build_wavefunction(&p, st).unwrap();
            let r = residual_check(&p, st, &wf, &ResidualGrid::default()).unwrap();
            assert!(r < 1e-7, "n={} residual {r}", st.n);
            let bumped =
                residual_at_energy(&p, st, &wf, st.energy + 0.01, &ResidualGrid::default())
                    .unwrap();
            assert!(bumped > 1e-3, "n={} perturbed residual {bumped}", st.n);
        }
    }

    #[test]
    fn schrodinger_levels() {
        let p = PotentialParams::with_alpha(0.7, 1.0, 1.0, 1.0, Variant::PtSymmetric).unwrap();
        for n in 0..3 {
            let r = schrodinger_check(&p, n, &ResidualGrid::default()).unwrap();
            assert!(r < 1e-7, "n={n} residual {r}");
        }
        let free = PotentialParams::with_alpha(0.0, 1.0, 1.0, 1.0, Variant::PtSymmetric).unwrap();
        assert!(schrodinger_check(&free, 0, &ResidualGrid::default()).unwrap() < 1e-7);
    }
}
