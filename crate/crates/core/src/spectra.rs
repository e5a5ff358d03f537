//! Closed-form bound-state energies for the four variants, the complex-α
//! Schrödinger spectrum, and the existence and level-counting conditions.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nu::{self, HypergeometricTypeProblem, NuBranch};
use crate::problem::{dimensionless_kg, PotentialParams, Variant};

/// Tolerance on the scaled back-substitution residual `|λ - λ_n|`.
pub const NU_RESIDUAL_TOL: f64 = 1e-9;

/// Tolerance on `|Im E| / m` for a level to count as real.
pub const REAL_ENERGY_TOL: f64 = 1e-9;

/// Slack used when flooring the level cap.
const CAP_SLACK: f64 = 1e-12;

/// Consecutive gate failures after which complex variants stop iterating.
const GATE_MISS_LIMIT: usize = 3;

/// Sign of the square-root term of the energy formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

/// Which wave equation a level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Equation {
    KleinGordon,
    /// Nonrelativistic limit of the complex-α potential.
    Schrodinger,
}

/// One eigenlevel together with its auxiliary quantities and flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: usize,
    pub energy: C64,
    pub xi: C64,
    /// Exponent of `s` in the eigenfunction (the signed `b`).
    pub b_signed: C64,
    /// Exponent of `1 - s` in the eigenfunction (the signed `ε`).
    pub eps: C64,
    pub branch: Branch,
    /// Passed every filter of its variant (emitted).
    pub physical: bool,
    /// `Re b_signed > 0` and `Re ε > 0`.
    pub normalizable: bool,
    /// `Re τ' < 0` for the quantizing NU branch.
    pub nu_accepted: bool,
    /// `|λ - λ_n| / max(1, |λ|)` of the quantizing branch.
    pub nu_residual: f64,
    /// Printed existence gate, for the complex variants.
    pub gate: Option<bool>,
    pub variant: Variant,
    pub equation: Equation,
}

/// Disagreement between a printed gate and the reality of the energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateDefect {
    pub n: usize,
    pub energy: C64,
    pub gate_holds: bool,
    pub energy_is_real: bool,
}

/// Every evaluated candidate level plus gate defects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub variant: Variant,
    pub levels: Vec<BoundState>,
    pub defects: Vec<GateDefect>,
}

impl Spectrum {
    pub fn emitted(&self) -> impl Iterator<Item = &BoundState> {
        self.levels.iter().filter(|l| l.physical)
    }

    fn into_emitted(self) -> Result<Vec<BoundState>> {
        let out: Vec<BoundState> = self.levels.into_iter().filter(|l| l.physical).collect();
        if out.is_empty() {
            Err(Error::EmptySpectrum)
        } else {
            Ok(out)
        }
    }
}

/// Nonrelativistic dimensionless set for the complex-α problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerDimensionless {
    /// `2mE/α²`
    pub eps2: C64,
    /// `-2mV0/(α²q)`
    pub beta2: f64,
    /// `√(ε² - β²)`
    pub c: C64,
    /// `mV0/(qα²)`
    pub gamma_nr: f64,
}

impl SchrodingerDimensionless {
    pub fn new(params: &PotentialParams, energy: C64) -> Result<Self> {
        params.require_q_nonzero()?;
        let (m, alpha) = (params.m(), params.alpha());
        let eps2 = 2.0 * m * energy / (alpha * alpha);
        let beta2 = -2.0 * m * params.v_tilde() / (alpha * alpha);
        Ok(Self {
            eps2,
            beta2,
            c: (eps2 - beta2).sqrt(),
            gamma_nr: m * params.v_tilde() / (alpha * alpha),
        })
    }
}

fn real_sqrt_checked(value: f64, condition: &str) -> Result<f64> {
    if value < 0.0 {
        Err(Error::violated(condition))
    } else {
        Ok(value.sqrt())
    }
}

/// Auxiliary `ξ` of the active variant.
///
/// * real, non-PT: `√(q²α² - 4V0²) - qα(2n+1)`
/// * PT: `√(q²α² + 4V0²) - qα(2n+1)`
/// * pseudo: `√(q²α² + 4V0²) + qα(2n+1)`
pub fn xi(params: &PotentialParams, n: usize) -> Result<C64> {
    let (v0, q, alpha) = (params.v0(), params.q(), params.alpha());
    let qa = q * alpha;
    let ladder = qa * (2 * n + 1) as f64;
    let value = match params.variant() {
        Variant::RealHermitian | Variant::NonPtNonHermitian => {
            real_sqrt_checked(qa * qa - 4.0 * v0 * v0, "q^2 alpha^2 >= 4 V0^2")? - ladder
        }
        Variant::PtSymmetric => (qa * qa + 4.0 * v0 * v0).sqrt() - ladder,
        Variant::PseudoHermitian => (qa * qa + 4.0 * v0 * v0).sqrt() + ladder,
    };
    Ok(C64::from(value))
}

/// Closed-form energy of the active variant for a given `ξ` and branch sign.
fn closed_form_energy(params: &PotentialParams, xi: C64, branch: Branch) -> C64 {
    let (v0, q, m) = (params.v0(), params.q(), params.m());
    let offset = C64::from(-v0 / (2.0 * q));
    let inv16q2 = 1.0 / (16.0 * q * q);
    let four_v2 = 4.0 * v0 * v0;
    let root = match params.variant() {
        Variant::RealHermitian | Variant::NonPtNonHermitian => {
            (m * m / (four_v2 + xi * xi) - inv16q2).sqrt()
        }
        Variant::PtSymmetric | Variant::PseudoHermitian => {
            (inv16q2 - m * m / (four_v2 - xi * xi)).sqrt()
        }
    };
    offset + branch.sign() * xi * root
}

/// Printed existence gate of a complex variant at level `n`.
fn complex_gate(params: &PotentialParams, xi: C64) -> bool {
    let (v0, q, m) = (params.v0(), params.q(), params.m());
    let lhs = 16.0 * q * q * m * m;
    let x2 = xi.re * xi.re;
    match params.variant() {
        Variant::NonPtNonHermitian => lhs >= 4.0 * v0 * v0 + x2,
        _ => lhs <= 4.0 * v0 * v0 - x2,
    }
}

/// Quantizing NU branch and its scaled residual for a Klein-Gordon level.
pub fn kg_branch(params: &PotentialParams, n: usize, energy: C64) -> Result<(NuBranch, f64)> {
    let d = dimensionless_kg(params, energy)?;
    let problem = HypergeometricTypeProblem::klein_gordon(&d);
    let (branch, residual) = nu::best_branch(&problem, n)?;
    Ok((branch, residual.norm() / branch.lambda.norm().max(1.0)))
}

fn assemble(
    params: &PotentialParams,
    n: usize,
    energy: C64,
    xi: C64,
    branch: Branch,
    equation: Equation,
    nu_branch: &NuBranch,
    nu_residual: f64,
) -> BoundState {
    let b_signed = nu_branch.pi.c0;
    let eps = -(nu_branch.pi.c0 + nu_branch.pi.c1);
    BoundState {
        n,
        energy,
        xi,
        b_signed,
        eps,
        branch,
        physical: false,
        normalizable: b_signed.re > 0.0 && eps.re > 0.0,
        nu_accepted: nu_branch.accepted,
        nu_residual,
        gate: None,
        variant: params.variant(),
        equation,
    }
}

/// Largest `n` allowed by the level cap, or `-1` when none.
///
/// For `q > 0` this is `(1/qα)(√(4q²m² - V0²) + √(q²α²/4 - V0²)) - 1/2`.
/// For `q < 0` (where `ξ > 0`) the same bound on `|ξ|` gives
/// `(1/|q|α)(√(4q²m² - V0²) - √(q²α²/4 - V0²)) - 1/2`.
pub fn max_level_index(params: &PotentialParams) -> Result<i64> {
    params.require_q_nonzero()?;
    let (v0, q, alpha, m) = (params.v0(), params.q(), params.alpha(), params.m());
    let outer = real_sqrt_checked(4.0 * q * q * m * m - v0 * v0, "4 q^2 m^2 >= V0^2")?;
    let inner = real_sqrt_checked(
        q * q * alpha * alpha / 4.0 - v0 * v0,
        "q^2 alpha^2 >= 4 V0^2",
    )?;
    let qa = q.abs() * alpha;
    let rhs = if q > 0.0 {
        (outer + inner) / qa - 0.5
    } else {
        (outer - inner) / qa - 0.5
    };
    if rhs < -CAP_SLACK {
        return Ok(-1);
    }
    Ok((rhs + CAP_SLACK).floor() as i64)
}

/// `qα - √(q²α² - 4V0²) ≤ 2√(4q²m² - V0²)`.
pub fn has_any_level(params: &PotentialParams) -> Result<bool> {
    let (v0, q, alpha, m) = (params.v0(), params.q(), params.alpha(), params.m());
    let qa = q * alpha;
    let outer = real_sqrt_checked(4.0 * q * q * m * m - v0 * v0, "4 q^2 m^2 >= V0^2")?;
    let inner = real_sqrt_checked(qa * qa - 4.0 * v0 * v0, "q^2 alpha^2 >= 4 V0^2")?;
    Ok(qa - inner <= 2.0 * outer + CAP_SLACK)
}

/// Evaluates every candidate level of the active variant up to `n_max`,
/// with flags, without discarding any.
pub fn evaluate_levels(params: &PotentialParams, n_max: usize) -> Result<Spectrum> {
    params.require_q_nonzero()?;
    match params.variant() {
        Variant::RealHermitian => evaluate_real(params, n_max),
        _ => evaluate_complex(params, n_max),
    }
}

fn evaluate_real(params: &PotentialParams, n_max: usize) -> Result<Spectrum> {
    // ξ precondition first so the violated inequality is reported by name
    xi(params, 0)?;
    let cap = max_level_index(params)?;
    let top = if cap < 0 {
        None
    } else {
        Some((cap as usize).min(n_max))
    };
    let m = params.m();
    let mut levels = Vec::new();
    let Some(top) = top else {
        return Ok(Spectrum {
            variant: params.variant(),
            levels,
            defects: Vec::new(),
        });
    };
    for n in 0..=top {
        let x = xi(params, n)?;
        if params.v0() == 0.0 {
            let ratio = params.alpha() * n as f64 / (2.0 * m);
            let energy = C64::from(m * (1.0 - ratio * ratio).max(0.0).sqrt());
            let (br, res) = kg_branch(params, n, energy)?;
            let mut state = assemble(
                params,
                n,
                energy,
                x,
                Branch::Plus,
                Equation::KleinGordon,
                &br,
                res,
            );
            state.physical = res < NU_RESIDUAL_TOL;
            levels.push(state);
            continue;
        }
        for branch in [Branch::Plus, Branch::Minus] {
            let energy = closed_form_energy(params, x, branch);
            let (br, res) = kg_branch(params, n, energy)?;
            let mut state = assemble(
                params,
                n,
                energy,
                x,
                branch,
                Equation::KleinGordon,
                &br,
                res,
            );
            let real = energy.im.abs() < REAL_ENERGY_TOL * m;
            let e = energy.re;
            let beta2 = 2.0 * e * params.v_tilde();
            state.physical =
                real && e * e <= m * m * (1.0 + 1e-12) && beta2 > 0.0 && res < NU_RESIDUAL_TOL;
            levels.push(state);
        }
    }
    Ok(Spectrum {
        variant: params.variant(),
        levels,
        defects: Vec::new(),
    })
}

fn evaluate_complex(params: &PotentialParams, n_max: usize) -> Result<Spectrum> {
    if params.variant() == Variant::NonPtNonHermitian {
        xi(params, 0)?;
    }
    let m = params.m();
    let mut levels = Vec::new();
    let mut defects = Vec::new();
    let mut misses = 0;
    for n in 0..=n_max {
        let x = xi(params, n)?;
        let energy = closed_form_energy(params, x, Branch::Plus);
        let gate = complex_gate(params, x);
        let real = energy.is_finite() && energy.im.abs() < REAL_ENERGY_TOL * m;
        if gate != real {
            defects.push(GateDefect {
                n,
                energy,
                gate_holds: gate,
                energy_is_real: real,
            });
        }
        let (br, res) = kg_branch(params, n, energy)?;
        let mut state = assemble(
            params,
            n,
            energy,
            x,
            Branch::Plus,
            Equation::KleinGordon,
            &br,
            res,
        );
        state.gate = Some(gate);
        state.physical = gate && real;
        levels.push(state);
        if gate {
            misses = 0;
        } else {
            misses += 1;
            if misses >= GATE_MISS_LIMIT {
                break;
            }
        }
    }
    Ok(Spectrum {
        variant: params.variant(),
        levels,
        defects,
    })
}

fn require_variant(params: &PotentialParams, variant: Variant) -> Result<()> {
    if params.variant() == variant {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "expected the {variant} variant, got {}",
            params.variant()
        )))
    }
}

/// Emitted levels of the real variant (both branches, filtered).
pub fn real_spectrum(params: &PotentialParams, n_max: usize) -> Result<Vec<BoundState>> {
    require_variant(params, Variant::RealHermitian)?;
    evaluate_levels(params, n_max)?.into_emitted()
}

/// Emitted levels of the PT-symmetric variant.
pub fn pt_spectrum(params: &PotentialParams, n_max: usize) -> Result<Vec<BoundState>> {
    require_variant(params, Variant::PtSymmetric)?;
    evaluate_levels(params, n_max)?.into_emitted()
}

/// Emitted levels of the non-PT non-Hermitian variant.
pub fn nonpt_spectrum(params: &PotentialParams, n_max: usize) -> Result<Vec<BoundState>> {
    require_variant(params, Variant::NonPtNonHermitian)?;
    evaluate_levels(params, n_max)?.into_emitted()
}

/// Emitted levels of the pseudo-Hermitian variant.
pub fn pseudo_spectrum(params: &PotentialParams, n_max: usize) -> Result<Vec<BoundState>> {
    require_variant(params, Variant::PseudoHermitian)?;
    evaluate_levels(params, n_max)?.into_emitted()
}

/// Emitted levels of whichever variant `params` carries.
pub fn spectrum(params: &PotentialParams, n_max: usize) -> Result<Vec<BoundState>> {
    evaluate_levels(params, n_max)?.into_emitted()
}

/// Nonrelativistic energy of the complex-α problem,
/// `E_n = (α²/2m) [(n+1)/2 - γ/(n+1)]²` with `γ = mV0/(qα²)`.
pub fn schrodinger_complex_spectrum(params: &PotentialParams, n: usize) -> Result<f64> {
    params.require_q_nonzero()?;
    let (m, alpha) = (params.m(), params.alpha());
    let gamma = m * params.v_tilde() / (alpha * alpha);
    let k = (n + 1) as f64;
    let bracket = k / 2.0 - gamma / k;
    Ok(alpha * alpha / (2.0 * m) * bracket * bracket)
}

/// NU problem of the complex-α Schrödinger equation at energy `E`.
pub fn schrodinger_problem(
    params: &PotentialParams,
    energy: C64,
) -> Result<HypergeometricTypeProblem> {
    let d = SchrodingerDimensionless::new(params, energy)?;
    Ok(HypergeometricTypeProblem::schrodinger(
        d.eps2,
        C64::from(d.beta2),
    ))
}

/// Schrödinger level `n` as a [`BoundState`], with exponents from the
/// quantizing NU branch.
pub fn schrodinger_state(params: &PotentialParams, n: usize) -> Result<BoundState> {
    let energy = C64::from(schrodinger_complex_spectrum(params, n)?);
    let problem = schrodinger_problem(params, energy)?;
    let (br, residual) = nu::best_branch(&problem, n)?;
    let res = residual.norm() / br.lambda.norm().max(1.0);
    let x = xi(&params.with_variant(Variant::PtSymmetric), n)?;
    let mut state = assemble(
        params,
        n,
        energy,
        x,
        Branch::Plus,
        Equation::Schrodinger,
        &br,
        res,
    );
    state.variant = Variant::PtSymmetric;
    state.physical = res < NU_RESIDUAL_TOL;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(v0: f64, q: f64, alpha: f64, m: f64, variant: Variant) -> PotentialParams {
        PotentialParams::with_alpha(v0, q, alpha, m, variant).unwrap()
    }

    #[test]
    fn xi_values() {
        let p = params(0.0, 1.0, 1.0, 1.0, Variant::RealHermitian);
        assert_eq!(xi(&p, 0).unwrap().re, 0.0);
        assert_eq!(xi(&p, 2).unwrap().re, -4.0);
        let p = params(0.45, 1.0, 1.0, 1.0, Variant::RealHermitian);
        assert_abs_diff_eq!(xi(&p, 0).unwrap().re, 0.19f64.sqrt() - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn xi_condition() {
        let p = params(0.6, 1.0, 1.0, 1.0, Variant::RealHermitian);
        assert!(matches!(xi(&p, 0), Err(Error::ConditionViolated { .. })));
    }

    #[test]
    fn xi_step_is_constant() {
        for variant in Variant::ALL {
            let p = params(0.3, 1.7, 0.9, 1.0, variant);
            for n in 0..5 {
                let step = xi(&p, n + 1).unwrap() - xi(&p, n).unwrap();
                let expected = if variant == Variant::PseudoHermitian {
                    2.0
                } else {
                    -2.0
                } * 1.7
                    * 0.9;
                assert_abs_diff_eq!(step.re, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn level_cap_examples() {
        let p = params(0.0, 1.0, 1.0, 1.0, Variant::RealHermitian);
        assert_eq!(max_level_index(&p).unwrap(), 2);
        let p = params(0.0, 1.0, 4.0, 1.0, Variant::RealHermitian);
        assert_eq!(max_level_index(&p).unwrap(), 0);
        assert!(has_any_level(&params(0.0, 1.0, 1.0, 1.0, Variant::RealHermitian)).unwrap());
        assert!(has_any_level(&params(0.5, 1.0, 1.0, 1.0, Variant::RealHermitian)).unwrap());
    }

    #[test]
    fn free_limit_levels() {
        let p = params(0.0, 1.0, 1.0, 1.0, Variant::RealHermitian);
        let levels = real_spectrum(&p, 10).unwrap();
        assert_eq!(levels.len(), 3);
        assert_abs_diff_eq!(levels[0].energy.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(levels[1].energy.re, 0.75f64.sqrt(), epsilon = 1e-15);
        assert_eq!(levels[2].energy.re, 0.0);
    }

    #[test]
    fn real_example_levels() {
        let p = params(0.45, 1.0, 1.0, 1.0, Variant::RealHermitian);
        let all = evaluate_levels(&p, 5).unwrap();
        let find = |n: usize, b: Branch| {
            all.levels
                .iter()
                .find(|l| l.n == n && l.branch == b)
                .unwrap()
        };
        assert_abs_diff_eq!(find(0, Branch::Plus).energy.re, -0.73702, epsilon = 1e-5);
        assert_abs_diff_eq!(find(0, Branch::Minus).energy.re, 0.28702, epsilon = 1e-5);
        assert_abs_diff_eq!(find(1, Branch::Minus).energy.re, 0.46738, epsilon = 1e-5);
        for l in &all.levels {
            assert!(l.nu_residual < NU_RESIDUAL_TOL, "{l:?}");
        }
        let emitted = real_spectrum(&p, 5).unwrap();
        assert!(emitted.iter().all(|l| l.energy.re > 0.0));
    }

    #[test]
    fn pt_sample() {
        let p = params(6.0, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        let levels = pt_spectrum(&p, 10).unwrap();
        assert_abs_diff_eq!(levels[0].energy.re, -1.5512, epsilon = 1e-4);
        assert!(levels
            .iter()
            .all(|l| l.energy.re < 0.0 && l.nu_residual < NU_RESIDUAL_TOL));
    }

    #[test]
    fn pseudo_sample() {
        let p = params(4.0, -1.0, 2.0, 1.0, Variant::PseudoHermitian);
        let levels = pseudo_spectrum(&p, 10).unwrap();
        let e: Vec<f64> = levels.iter().map(|l| l.energy.re).collect();
        assert_abs_diff_eq!(e[0], 2.936, epsilon = 1e-3);
        assert_abs_diff_eq!(e[1], 2.479, epsilon = 1e-3);
        assert_abs_diff_eq!(e[2], 1.6235, epsilon = 1e-3);
        assert!(levels.iter().all(|l| l.nu_residual < NU_RESIDUAL_TOL));
    }

    #[test]
    fn nonpt_sample_and_gate() {
        let p = params(0.3, 2.0, 1.0, 1.0, Variant::NonPtNonHermitian);
        let levels = nonpt_spectrum(&p, 10).unwrap();
        assert_eq!(levels.len(), 2);
        assert!(levels.iter().all(|l| l.nu_residual < NU_RESIDUAL_TOL));
    }

    #[test]
    fn gate_failure_gives_empty() {
        let p = params(0.1, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        assert_eq!(pt_spectrum(&p, 10), Err(Error::EmptySpectrum));
    }

    #[test]
    fn schrodinger_values() {
        let p = params(0.0, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        assert_abs_diff_eq!(
            schrodinger_complex_spectrum(&p, 0).unwrap(),
            0.125,
            epsilon = 1e-15
        );
        // γ = (n+1)²/2 zeroes the bracket
        let p = params(2.0, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        assert_eq!(schrodinger_complex_spectrum(&p, 1).unwrap(), 0.0);
        let p = params(0.7, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        let s = schrodinger_state(&p, 1).unwrap();
        assert!(s.nu_residual < 1e-12, "{}", s.nu_residual);
    }

    #[test]
    fn wrong_variant_rejected() {
        let p = params(0.3, 1.0, 1.0, 1.0, Variant::PtSymmetric);
        assert!(matches!(real_spectrum(&p, 3), Err(Error::InvalidParams(_))));
    }
}
