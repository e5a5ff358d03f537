use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Stirling series is used once `Re z` reaches this value.
const STIRLING_MIN: f64 = 15.0;

/// B_{2k} / (2k (2k - 1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal-branch `ln Γ(z)`.
///
/// Shifts `z` up with the recurrence until the Stirling series converges to
/// double precision, summing principal logarithms of the shift factors.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if !z.is_finite() {
        return Err(Error::InvalidParams(format!("ln_gamma of non-finite {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::pole(format!("Gamma({})", z.re)));
    }
    let mut w = z;
    let mut shift = C64::new(0.0, 0.0);
    while w.re < STIRLING_MIN {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += c * power;
        power *= inv2;
    }
    let ln_2pi_half = 0.5 * (2.0 * PI).ln();
    Ok((w - 0.5) * w.ln() - w + ln_2pi_half + series - shift)
}

pub fn gamma(z: C64) -> Result<C64> {
    Ok(ln_gamma(z)?.exp())
}

/// `1/Γ(z)`, zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        C64::new(0.0, 0.0)
    } else {
        // ln_gamma only fails at poles or non-finite input
        ln_gamma(z)
            .map(|l| (-l).exp())
            .unwrap_or(C64::new(f64::NAN, f64::NAN))
    }
}

/// Rising factorial `(z)_k = z (z+1) ... (z+k-1)`.
pub fn pochhammer(z: C64, k: usize) -> C64 {
    (0..k).fold(C64::new(1.0, 0.0), |acc, j| acc * (z + j as f64))
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: C64, y: C64) -> Result<C64> {
    let lx = ln_gamma(x)?;
    let ly = ln_gamma(y)?;
    let lxy = ln_gamma(x + y)?;
    Ok((lx + ly - lxy).exp())
}
