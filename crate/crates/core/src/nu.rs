//! Nikiforov-Uvarov reduction of equations of hypergeometric type,
//! `ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0`, to `π(s)`, `k`, `τ(s)`, `λ` and `λ_n`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::problem::DimensionlessKg;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Relative scale below which a polynomial coefficient counts as zero.
const COEFF_TOL: f64 = 1e-12;

/// `c0 + c1 s + c2 s²` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly2 {
    pub c0: C64,
    pub c1: C64,
    pub c2: C64,
}

impl Poly2 {
    pub fn new(c0: impl Into<C64>, c1: impl Into<C64>, c2: impl Into<C64>) -> Self {
        Self {
            c0: c0.into(),
            c1: c1.into(),
            c2: c2.into(),
        }
    }

    pub fn linear(c0: impl Into<C64>, c1: impl Into<C64>) -> Self {
        Self::new(c0, c1, ZERO)
    }

    pub fn eval(&self, s: C64) -> C64 {
        self.c0 + s * (self.c1 + s * self.c2)
    }

    pub fn derivative(&self) -> Poly2 {
        Poly2::linear(self.c1, 2.0 * self.c2)
    }

    /// Largest coefficient modulus, used as a scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.c0.norm().max(self.c1.norm()).max(self.c2.norm())
    }

    fn add(&self, other: &Poly2) -> Poly2 {
        Poly2::new(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)
    }

    fn scaled(&self, k: C64) -> Poly2 {
        Poly2::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

/// The polynomial triple `(τ̃, σ, σ̃)` with `deg τ̃ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricTypeProblem {
    pub tau_tilde: Poly2,
    pub sigma: Poly2,
    pub sigma_tilde: Poly2,
}

impl HypergeometricTypeProblem {
    pub fn new(tau_tilde: Poly2, sigma: Poly2, sigma_tilde: Poly2) -> Result<Self> {
        if tau_tilde.c2.norm() > COEFF_TOL * tau_tilde.scale().max(1.0) {
            return Err(Error::Degenerate("tau_tilde must be at most linear".into()));
        }
        if sigma.scale() == 0.0 {
            return Err(Error::Degenerate("sigma vanishes identically".into()));
        }
        Ok(Self {
            tau_tilde,
            sigma,
            sigma_tilde,
        })
    }

    /// Transformed Klein-Gordon problem:
    /// `τ̃ = 1 - 2s`, `σ = s - s²`, `σ̃ = γ²s² - (β² + 2γ²)s + β² + γ² - ε²`.
    pub fn klein_gordon(d: &DimensionlessKg) -> Self {
        Self {
            tau_tilde: Poly2::linear(1.0, -2.0),
            sigma: Poly2::new(0.0, 1.0, -1.0),
            sigma_tilde: Poly2::new(
                d.beta2 + d.gamma2 - d.eps2,
                -(d.beta2 + 2.0 * d.gamma2),
                d.gamma2,
            ),
        }
    }

    /// Complex-α Schrödinger problem: `σ̃ = -β²s + β² - ε²`.
    pub fn schrodinger(eps2: C64, beta2: C64) -> Self {
        Self {
            tau_tilde: Poly2::linear(1.0, -2.0),
            sigma: Poly2::new(0.0, 1.0, -1.0),
            sigma_tilde: Poly2::linear(beta2 - eps2, -beta2),
        }
    }

    /// `h = (σ' - τ̃)/2`, the rational part of `π`.
    fn half_gap(&self) -> Poly2 {
        self.sigma
            .derivative()
            .add(&self.tau_tilde.scaled(C64::from(-1.0)))
            .scaled(C64::from(0.5))
    }

    /// Coefficients of `R(s) = h² - σ̃ + kσ`, split as `a + k·b`.
    fn radicand_parts(&self) -> (Poly2, Poly2) {
        let h = self.half_gap();
        let h2 = Poly2::new(h.c0 * h.c0, 2.0 * h.c0 * h.c1, h.c1 * h.c1);
        (
            h2.add(&self.sigma_tilde.scaled(C64::from(-1.0))),
            self.sigma,
        )
    }

    fn radicand(&self, k: C64) -> Poly2 {
        let (a, b) = self.radicand_parts();
        a.add(&b.scaled(k))
    }
}

/// Which sign of the square root in `π = h ± √R` was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSign {
    Plus,
    Minus,
}

/// One admissible choice of `π(s)` and everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuBranch {
    pub k: C64,
    pub pi: Poly2,
    /// `τ = τ̃ + 2π`
    pub tau: Poly2,
    /// `λ = k + π'`
    pub lambda: C64,
    pub sign_choice: RootSign,
    /// `σ''`, carried so that `λ_n` needs only the branch.
    pub sigma_pp: C64,
    /// `Re τ' < 0`
    pub accepted: bool,
}

impl NuBranch {
    /// Slope `τ'`.
    pub fn tau_prime(&self) -> C64 {
        self.tau.c1
    }
}

/// Values of `k` for which `R(s) = h² - σ̃ + kσ` is a perfect square.
pub fn candidate_ks(problem: &HypergeometricTypeProblem) -> Result<Vec<C64>> {
    let (a, b) = problem.radicand_parts();
    // discriminant (a1 + k b1)² - 4 (a0 + k b0)(a2 + k b2) as a quadratic in k
    let qa = b.c1 * b.c1 - 4.0 * b.c0 * b.c2;
    let qb = 2.0 * a.c1 * b.c1 - 4.0 * (a.c0 * b.c2 + a.c2 * b.c0);
    let qc = a.c1 * a.c1 - 4.0 * a.c0 * a.c2;
    let scale = qa.norm().max(qb.norm()).max(qc.norm());
    if scale == 0.0 {
        return Err(Error::Degenerate(
            "perfect-square condition holds for every k".into(),
        ));
    }
    if qa.norm() > COEFF_TOL * scale {
        let disc = (qb * qb - 4.0 * qa * qc).sqrt();
        // pick the sign that avoids cancellation, then use Vieta for the other root
        let big = if (qb.conj() * disc).re >= 0.0 {
            -(qb + disc)
        } else {
            -(qb - disc)
        } * 0.5;
        if big.norm() == 0.0 {
            return Ok(vec![ZERO, ZERO]);
        }
        return Ok(vec![big / qa, qc / big]);
    }
    if qb.norm() > COEFF_TOL * scale {
        return Ok(vec![-qc / qb]);
    }
    Err(Error::Degenerate(
        "perfect-square condition has no solution in k".into(),
    ))
}

/// `√R(s)` as a linear polynomial when `R` is a perfect square.
fn linear_root(r: &Poly2) -> Poly2 {
    let a = r.c2.sqrt();
    let c = r.c0.sqrt();
    // R = (a s + c)² needs 2ac = r1; choose the sign of c accordingly
    if (2.0 * a * c - r.c1).norm() <= (2.0 * a * c + r.c1).norm() {
        Poly2::linear(c, a)
    } else {
        Poly2::linear(-c, a)
    }
}

/// Both `±` branches of `π = h ± √R` for one `k`.
pub fn branches(problem: &HypergeometricTypeProblem, k: C64) -> Vec<NuBranch> {
    let h = problem.half_gap();
    let root = linear_root(&problem.radicand(k));
    [RootSign::Plus, RootSign::Minus]
        .into_iter()
        .map(|sign| {
            let signed = match sign {
                RootSign::Plus => root,
                RootSign::Minus => root.scaled(C64::from(-1.0)),
            };
            let pi = h.add(&signed);
            let tau = problem.tau_tilde.add(&pi.scaled(C64::from(2.0)));
            NuBranch {
                k,
                pi,
                tau,
                lambda: k + pi.c1,
                sign_choice: sign,
                sigma_pp: 2.0 * problem.sigma.c2,
                accepted: tau.c1.re < 0.0,
            }
        })
        .collect()
}

/// All branches over all candidate `k`.
pub fn all_branches(problem: &HypergeometricTypeProblem) -> Result<Vec<NuBranch>> {
    Ok(candidate_ks(problem)?
        .into_iter()
        .flat_map(|k| branches(problem, k))
        .collect())
}

/// `λ_n = -n τ' - n(n-1) σ''/2`.
pub fn lambda_n(branch: &NuBranch, n: usize) -> C64 {
    let nf = n as f64;
    -nf * branch.tau_prime() - 0.5 * nf * (nf - 1.0) * branch.sigma_pp
}

/// The branch whose `λ` is closest to `λ_n`, with the residual `λ - λ_n`.
pub fn best_branch(problem: &HypergeometricTypeProblem, n: usize) -> Result<(NuBranch, C64)> {
    all_branches(problem)?
        .into_iter()
        .map(|b| {
            let r = b.lambda - lambda_n(&b, n);
            (b, r)
        })
        .min_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .ok_or_else(|| Error::Degenerate("no branch available".into()))
}

/// `λ - λ_n` at a trial energy, with the problem built by `problem_at`.
///
/// All branches are tried and the smallest residual is returned, so a root in
/// the energy is an eigenvalue of the level `n`.
pub fn quantization_residual(
    n: usize,
    energy: C64,
    problem_at: impl Fn(C64) -> Result<HypergeometricTypeProblem>,
) -> Result<C64> {
    let problem = problem_at(energy)?;
    Ok(best_branch(&problem, n)?.1)
}

/// Exponents of `φ = s^A (1-s)^B` and of the weight `ρ = s^{ρA} (1-s)^{ρB}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiWeight {
    pub phi_a: C64,
    pub phi_b: C64,
    pub rho_a: C64,
    pub rho_b: C64,
}

fn require_ws_sigma(problem: &HypergeometricTypeProblem) -> Result<()> {
    let s = problem.sigma;
    let off = s.c0.norm() + (s.c1 - 1.0).norm() + (s.c2 + 1.0).norm();
    if off > COEFF_TOL {
        return Err(Error::UnsupportedSigma);
    }
    Ok(())
}

/// Solves `φ'/φ = π/σ` and `(σρ)' = τρ` for `σ = s - s²`.
pub fn phi_and_weight(branch: &NuBranch, problem: &HypergeometricTypeProblem) -> Result<PhiWeight> {
    require_ws_sigma(problem)?;
    let phi_a = branch.pi.c0;
    let phi_b = -(branch.pi.c0 + branch.pi.c1);
    // τ/σ = p/s - r/(1-s) gives σρ = s^p (1-s)^r
    let p = branch.tau.c0;
    let r = -(branch.tau.c0 + branch.tau.c1);
    Ok(PhiWeight {
        phi_a,
        phi_b,
        rho_a: p - 1.0,
        rho_b: r - 1.0,
    })
}

/// Ascending coefficients of the Rodrigues polynomial
/// `y_n = ρ⁻¹ dⁿ/dsⁿ [σⁿ ρ]` for `σ = s - s²`, `ρ = s^a (1-s)^b`.
pub fn rodrigues_polynomial(n: usize, a: C64, b: C64) -> Vec<C64> {
    // Leibniz: Σ_k C(n,k) [s^{n+a}]^{(k)} [(1-s)^{n+b}]^{(n-k)} / ρ
    //        = Σ_k C(n,k) ff(n+a,k) (-1)^{n-k} ff(n+b,n-k) s^{n-k} (1-s)^k
    let falling = |z: C64, k: usize| (0..k).fold(C64::from(1.0), |acc, j| acc * (z - j as f64));
    let mut out = vec![ZERO; n + 1];
    let mut binom = 1.0;
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let coef = binom * sign * falling(a + n as f64, k) * falling(b + n as f64, n - k);
        // expand s^{n-k} (1-s)^k
        let mut inner = 1.0;
        for j in 0..=k {
            let term_sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[n - k + j] += coef * inner * term_sign;
            inner = inner * (k - j) as f64 / (j + 1) as f64;
        }
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    out
}

/// Coefficients of `σ y'' + τ y' + λ_n y` for the Rodrigues polynomial of the
/// branch; all vanish when the branch is consistent at level `n`.
pub fn rodrigues_ode_defect(
    branch: &NuBranch,
    problem: &HypergeometricTypeProblem,
    n: usize,
) -> Result<Vec<C64>> {
    let w = phi_and_weight(branch, problem)?;
    let y = rodrigues_polynomial(n, w.rho_a, w.rho_b);
    let lam = lambda_n(branch, n);
    let mut out = vec![ZERO; n + 1];
    let (sg, tau) = (problem.sigma, branch.tau);
    for (j, &c) in y.iter().enumerate() {
        let jf = j as f64;
        out[j] += lam * c;
        // τ y': (t0 + t1 s) j c s^{j-1}
        if j >= 1 {
            out[j - 1] += tau.c0 * jf * c;
            out[j] += tau.c1 * jf * c;
        }
        // σ y'': (s0 + s1 s + s2 s²) j(j-1) c s^{j-2}
        if j >= 2 {
            let d2 = jf * (jf - 1.0) * c;
            out[j - 2] += sg.c0 * d2;
            out[j - 1] += sg.c1 * d2;
            out[j] += sg.c2 * d2;
        }
    }
    Ok(out)
}
