use num_complex::Complex64 as C64;

use super::gamma::{ln_gamma, rgamma};
use crate::error::{Error, Result};

/// Direct summation radius.
const SERIES_RADIUS: f64 = 0.9;
const MAX_TERMS: usize = 10_000;
const TERM_RTOL: f64 = 1e-16;

/// Arguments of `2F1(a0, b0; c0; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a0: C64,
    pub b0: C64,
    pub c0: C64,
    pub z: C64,
}

impl Hyp2F1Args {
    pub fn new(
        a0: impl Into<C64>,
        b0: impl Into<C64>,
        c0: impl Into<C64>,
        z: impl Into<C64>,
    ) -> Self {
        Self {
            a0: a0.into(),
            b0: b0.into(),
            c0: c0.into(),
            z: z.into(),
        }
    }
}

fn nonpositive_integer(z: C64) -> Option<usize> {
    (z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()).then(|| (-z.re) as usize)
}

/// Gauss hypergeometric function.
///
/// * `z = 0`: 1.
/// * `z = 1`: Gauss's closed form when `Re(c-a-b) > 0`, a finite sum when
///   `a` or `b` is a non-positive integer, otherwise [`Error::Divergence`].
/// * `|z| < 0.9`: power series.
/// * otherwise: Pfaff transformation to `z/(z-1)` before summing.
pub fn gauss_2f1(args: Hyp2F1Args) -> Result<C64> {
    let Hyp2F1Args { a0, b0, c0, z } = args;
    if let Some(k) = nonpositive_integer(c0) {
        // only fine if the series terminates before the bad denominator
        let terminating = [a0, b0]
            .into_iter()
            .filter_map(nonpositive_integer)
            .any(|m| m < k);
        if !terminating {
            return Err(Error::pole(format!("2F1 with c = {}", c0.re)));
        }
    }
    if z == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    if (z - 1.0).norm() < 1e-15 {
        return at_unit_argument(a0, b0, c0);
    }
    if z.norm() < SERIES_RADIUS {
        return series(a0, b0, c0, z);
    }
    let w = z / (z - 1.0);
    if w.norm() < SERIES_RADIUS {
        return Ok((1.0 - z).powc(-a0) * series(a0, c0 - b0, c0, w)?);
    }
    Err(Error::Divergence(format!(
        "2F1 argument {z} is outside the supported regime (|z| < 0.9, z = 1, or |z/(z-1)| < 0.9)"
    )))
}

fn at_unit_argument(a: C64, b: C64, c: C64) -> Result<C64> {
    if nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some() {
        return series(a, b, c, C64::new(1.0, 0.0));
    }
    let excess = c - a - b;
    if excess.re <= 0.0 {
        return Err(Error::Divergence(format!(
            "2F1 at z = 1 needs Re(c - a - b) > 0, got {}",
            excess.re
        )));
    }
    // Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))
    let num = (ln_gamma(c)? + ln_gamma(excess)?).exp();
    Ok(num * rgamma(c - a) * rgamma(c - b))
}

fn series(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == C64::new(0.0, 0.0) {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
        if term.norm() <= TERM_RTOL * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Divergence(format!(
        "2F1 series did not converge within {MAX_TERMS} terms at z = {z}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_argument_is_one() {
        let v = gauss_2f1(Hyp2F1Args::new(2.3, -1.1, 0.7, 0.0)).unwrap();
        assert_eq!(v, C64::new(1.0, 0.0));
    }

    #[test]
    fn gauss_value_at_one() {
        let v = gauss_2f1(Hyp2F1Args::new(1.0, 1.0, 3.0, 1.0)).unwrap();
        assert!((v - 2.0).norm() < 1e-12, "{v}");
    }

    #[test]
    fn divergent_at_one() {
        let r = gauss_2f1(Hyp2F1Args::new(1.0, 1.0, 2.0, 1.0));
        assert!(matches!(r, Err(Error::Divergence(_))));
    }

    #[test]
    fn invalid_c() {
        let r = gauss_2f1(Hyp2F1Args::new(1.0, 1.0, -2.0, 0.5));
        assert!(matches!(r, Err(Error::Pole { .. })));
        // terminates at k = 1 before hitting c + k = 0
        let ok = gauss_2f1(Hyp2F1Args::new(-1.0, 1.0, -2.0, 0.5)).unwrap();
        assert_abs_diff_eq!(ok.re, 1.25, epsilon = 1e-15);
    }

    #[test]
    fn elementary_closed_forms() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let z = C64::new(0.3, 0.4);
        let v = gauss_2f1(Hyp2F1Args::new(1.0, 1.0, 2.0, z)).unwrap();
        let expected = -(1.0 - z).ln() / z;
        assert!((v - expected).norm() < 1e-14);
        // same at z = i, which goes through the Pfaff branch
        let i = C64::new(0.0, 1.0);
        let v = gauss_2f1(Hyp2F1Args::new(1.0, 1.0, 2.0, i)).unwrap();
        assert!((v - (-(1.0 - i).ln() / i)).norm() < 1e-14);
        // 2F1(a,b;b;z) = (1-z)^{-a}
        let v = gauss_2f1(Hyp2F1Args::new(0.7, 1.9, 1.9, -3.0)).unwrap();
        assert_abs_diff_eq!(v.re, 4f64.powf(-0.7), epsilon = 1e-14);
    }

    #[test]
    fn terminating_at_unit_argument() {
        // Chu-Vandermonde: 2F1(-2, b; c; 1) = (c-b)_2/(c)_2
        let (b, c) = (0.4, 1.7);
        let v = gauss_2f1(Hyp2F1Args::new(-2.0, b, c, 1.0)).unwrap();
        let expected = (c - b) * (c - b + 1.0) / (c * (c + 1.0));
        assert_abs_diff_eq!(v.re, expected, epsilon = 1e-15);
    }
}
