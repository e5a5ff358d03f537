use num_complex::Complex64 as C64;

use super::gamma::pochhammer;

/// Degree and (possibly complex) parameters of `P_n^{(ρ,ν)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: usize,
    pub rho: C64,
    pub nu: C64,
}

impl JacobiParams {
    pub fn new(n: usize, rho: impl Into<C64>, nu: impl Into<C64>) -> Self {
        Self {
            n,
            rho: rho.into(),
            nu: nu.into(),
        }
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Generalized binomial `C(z, k) = (z-k+1)_k / k!`.
fn binomial(z: C64, k: usize) -> C64 {
    pochhammer(z - k as f64 + 1.0, k) / factorial(k)
}

/// Recurrence denominators `(k + ρ + ν)` and `(2k + ρ + ν - 2)` closer to
/// zero than this amplify rounding too much; the explicit sum is used instead.
const RECURRENCE_GUARD: f64 = 1.0;

/// `P_n^{(ρ,ν)}(z)` by the three-term recurrence.
///
/// Falls back to the explicit sum when a recurrence denominator is small,
/// which happens near special negative values of `ρ + ν`.
pub fn jacobi_poly(p: JacobiParams, z: C64) -> C64 {
    let JacobiParams { n, rho: a, nu: b } = p;
    let one = C64::new(1.0, 0.0);
    if n == 0 {
        return one;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) * 0.5;
    if n == 1 {
        return p1;
    }
    let ab = a + b;
    let ill_conditioned = (2..=n).any(|k| {
        let kf = k as f64;
        (kf + ab).norm() < RECURRENCE_GUARD || (2.0 * kf + ab - 2.0).norm() < RECURRENCE_GUARD
    });
    if ill_conditioned {
        return explicit_sum(p, z);
    }
    let (mut prev, mut cur) = (one, p1);
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let c1 = 2.0 * kf * (kf + ab) * (s - 2.0);
        let c2 = (s - 1.0) * (a * a - b * b);
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = ((c2 + c3 * z) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ_r C(n+ρ, n-r) C(n+ν, r) ((z-1)/2)^r ((z+1)/2)^{n-r}`.
fn explicit_sum(p: JacobiParams, z: C64) -> C64 {
    let JacobiParams { n, rho, nu } = p;
    let lo = (z - 1.0) * 0.5;
    let hi = (z + 1.0) * 0.5;
    (0..=n)
        .map(|r| {
            binomial(rho + n as f64, n - r)
                * binomial(nu + n as f64, r)
                * lo.powi(r as i32)
                * hi.powi((n - r) as i32)
        })
        .sum()
}

/// Coefficients `c_p` of the product form
/// `P_n^{(ρ,ν)}(1-2s) = Σ_p c_p s^{n-p} (1-s)^p`, including the shape
/// factors `q^{n-p}` (exact Jacobi polynomial only at `q = 1`).
///
/// `c_p = (-1)^{n+p} q^{n-p} Γ(n+ρ+1)Γ(n+ν+1) / (p!(n-p)! Γ(p+ν+1) Γ(n+ρ-p+1))`,
/// with the Gamma ratios taken as finite rising factorials.
pub fn product_form_coefficients(p: JacobiParams, q: C64) -> Vec<C64> {
    let JacobiParams { n, rho, nu } = p;
    (0..=n)
        .map(|k| {
            let sign = if (n + k) % 2 == 0 { 1.0 } else { -1.0 };
            // Γ(n+ρ+1)/Γ(n+ρ-k+1) and Γ(n+ν+1)/Γ(k+ν+1)
            let rho_ratio = pochhammer(rho + (n - k) as f64 + 1.0, k);
            let nu_ratio = pochhammer(nu + k as f64 + 1.0, n - k);
            sign * q.powi((n - k) as i32) * rho_ratio * nu_ratio / (factorial(k) * factorial(n - k))
        })
        .collect()
}

/// Coefficients `d_r` of the ascending form `P_n^{(ρ,ν)}(1-2s) = Σ_r d_r s^r`,
/// including the shape factors `q^r`.
///
/// `d_r = (-1)^r q^r Γ(n+ρ+1) Γ(n+ρ+ν+r+1) / (Γ(n+ρ+ν+1) r!(n-r)! Γ(ρ+r+1))`.
pub fn ascending_form_coefficients(p: JacobiParams, q: C64) -> Vec<C64> {
    let JacobiParams { n, rho, nu } = p;
    (0..=n)
        .map(|r| {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let upper = pochhammer(rho + nu + n as f64 + 1.0, r);
            let lower = pochhammer(rho + r as f64 + 1.0, n - r);
            sign * q.powi(r as i32) * upper * lower / (factorial(r) * factorial(n - r))
        })
        .collect()
}

/// Product-form double-power sum at `s`.
pub fn jacobi_sum_product_form(p: JacobiParams, s: C64, q: C64) -> C64 {
    let n = p.n;
    product_form_coefficients(p, q)
        .into_iter()
        .enumerate()
        .map(|(k, c)| c * s.powi((n - k) as i32) * (1.0 - s).powi(k as i32))
        .sum()
}

/// Ascending single-power sum at `s`.
pub fn jacobi_sum_ascending_form(p: JacobiParams, s: C64, q: C64) -> C64 {
    ascending_form_coefficients(p, q)
        .into_iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, d| acc * s + d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::ln_gamma;
    use approx::assert_abs_diff_eq;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn low_degrees() {
        let z = C64::new(0.3, -0.8);
        assert_eq!(jacobi_poly(JacobiParams::new(0, 1.7, -0.4), z), c(1.0));
        assert_abs_diff_eq!(
            jacobi_poly(JacobiParams::new(1, 0.0, 0.0), c(0.3)).re,
            0.3,
            epsilon = 1e-16
        );
    }

    #[test]
    fn legendre_values() {
        // P_3(x) = (5x^3 - 3x)/2
        let x = 0.42;
        let v = jacobi_poly(JacobiParams::new(3, 0.0, 0.0), c(x));
        assert_abs_diff_eq!(v.re, 0.5 * (5.0 * x * x * x - 3.0 * x), epsilon = 1e-15);
    }

    #[test]
    fn product_form_trivial_cases() {
        let s = c(0.37);
        assert_abs_diff_eq!(
            jacobi_sum_product_form(JacobiParams::new(0, 0.8, 1.4), s, c(1.0)).re,
            1.0,
            epsilon = 1e-15
        );
        let v = jacobi_sum_product_form(JacobiParams::new(1, 0.0, 0.0), c(0.5), c(1.0));
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn product_form_matches_recurrence() {
        // b = 0.2, ε = 0.5 → (ρ, ν) = (0.4, 1.0)
        let p = JacobiParams::new(3, 0.4, 1.0);
        let s = c(0.6);
        let sum = jacobi_sum_product_form(p, s, c(1.0));
        let rec = jacobi_poly(p, 1.0 - 2.0 * s);
        assert!((sum - rec).norm() < 1e-13 * rec.norm().max(1.0));
    }

    #[test]
    fn ascending_form_at_zero() {
        // only r = 0 survives: Γ(n+ρ+1)/(n! Γ(ρ+1))
        let (n, rho) = (2usize, 0.6);
        let v = jacobi_sum_ascending_form(JacobiParams::new(n, rho, 0.2), c(0.0), c(1.0));
        let expected =
            (ln_gamma(c(n as f64 + rho + 1.0)).unwrap() - ln_gamma(c(rho + 1.0)).unwrap()).exp()
                / 2.0;
        assert_abs_diff_eq!(v.re, expected.re, epsilon = 1e-14);
        assert_abs_diff_eq!(
            jacobi_sum_ascending_form(JacobiParams::new(0, 0.6, 0.2), c(0.7), c(1.0)).re,
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn fallback_when_recurrence_degenerates() {
        // ρ + ν = -2 zeroes the k + ρ + ν factor at k = 2
        let p = JacobiParams::new(3, -0.5, -1.5);
        let z = c(0.3);
        let v = jacobi_poly(p, z);
        let s = (1.0 - z) * 0.5;
        let w = jacobi_sum_ascending_form(p, s, c(1.0));
        assert!((v - w).norm() < 1e-13, "{v} vs {w}");
        assert_abs_diff_eq!(v.re, -0.25275, epsilon = 1e-14);
    }
}
