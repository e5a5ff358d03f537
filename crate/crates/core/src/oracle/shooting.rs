//! Numerov shooting for `ψ'' + Q(E, x) ψ = 0` on a finite symmetric window.

use rayon::prelude::*;

use super::{FoundLevel, GridConfig};
use crate::error::{Error, Result};

/// Rescale threshold for the running solution.
const RESCALE_ABOVE: f64 = 1e100;

/// Largest `h² |Q|` the fixed-step scheme is trusted with.
const MAX_STEP_LOAD: f64 = 6.0;

/// Maximum bisection steps per bracket.
const MAX_BISECTIONS: usize = 200;

/// Abscissae `x_i = center - L + i h`.
fn abscissae(center: f64, grid: &GridConfig) -> Vec<f64> {
    let h = grid.step();
    (0..grid.n_points)
        .map(|i| center - grid.l + h * i as f64)
        .collect()
}

/// One Numerov sweep from the boundary `from` towards index `to`, started on
/// the decaying asymptote `exp(κ|x|)` read off `Q` at the boundary.
/// Returns the solution on the full index range, zero outside the sweep.
fn sweep(qv: &[f64], h2: f64, from: usize, to: usize) -> Result<Vec<f64>> {
    let n = qv.len();
    let forward = to > from;
    let next_index = |i: usize| if forward { i + 1 } else { i - 1 };
    let kappa = (-qv[from]).max(0.0).sqrt();
    let f = |i: usize| 1.0 + h2 * qv[i] / 12.0;
    let mut psi = vec![0.0; n];
    let (mut prev, mut cur) = (from, next_index(from));
    psi[prev] = 1.0;
    psi[cur] = (kappa * h2.sqrt()).exp();
    while cur != to {
        let nxt = next_index(cur);
        let value =
            (2.0 * psi[cur] * (1.0 - 5.0 * h2 * qv[cur] / 12.0) - f(prev) * psi[prev]) / f(nxt);
        if !value.is_finite() {
            return Err(Error::Stiffness(format!(
                "non-finite solution at index {nxt}"
            )));
        }
        psi[nxt] = value;
        if value.abs() > RESCALE_ABOVE {
            psi.iter_mut().for_each(|v| *v /= RESCALE_ABOVE);
        }
        prev = cur;
        cur = nxt;
    }
    Ok(psi)
}

/// Normalized Numerov Wronskian of the left and right solutions at the
/// matching point. Zero exactly at an eigenvalue, continuous in `E`.
pub fn mismatch(q_at: impl Fn(f64) -> f64, center: f64, grid: &GridConfig) -> Result<f64> {
    let xs = abscissae(center, grid);
    let h = grid.step();
    let h2 = h * h;
    let qv: Vec<f64> = xs.iter().map(|&x| q_at(x)).collect();
    if let Some(bad) = qv.iter().find(|v| !v.is_finite()) {
        return Err(Error::Stiffness(format!(
            "Q is not finite on the grid ({bad})"
        )));
    }
    let load = qv.iter().fold(0.0f64, |acc, v| acc.max(v.abs())) * h2;
    if load > MAX_STEP_LOAD {
        return Err(Error::Stiffness(format!(
            "h^2 |Q| = {load:.3e} exceeds {MAX_STEP_LOAD}; refine the grid"
        )));
    }
    let n = xs.len();
    let i_match = (((grid.match_x + grid.l) / h).round() as usize).clamp(2, n - 3);
    let left = sweep(&qv, h2, 0, i_match + 1)?;
    let right = sweep(&qv, h2, n - 1, i_match)?;
    let y = |psi: &[f64], i: usize| psi[i] * (1.0 + h2 * qv[i] / 12.0);
    let (l0, l1) = (y(&left, i_match), y(&left, i_match + 1));
    let (r0, r1) = (y(&right, i_match), y(&right, i_match + 1));
    let w = l0 * r1 - l1 * r0;
    let scale = (l0 * l0 + l1 * l1).sqrt() * (r0 * r0 + r1 * r1).sqrt();
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Stiffness("vanishing shooting solution".into()));
    }
    Ok(w / scale)
}

/// Bisection on a sign-changing bracket of the mismatch.
fn bisect(
    f: &(impl Fn(f64) -> Result<f64> + Sync),
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok((mid, 0.0));
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let e = 0.5 * (lo + hi);
    Ok((e, f(e)?.abs()))
}

/// All eigenvalues of `ψ'' + Q(E, x) ψ = 0` in the grid's energy scan.
///
/// The scan points are evaluated in parallel; results are in ascending `E`.
/// Errors with [`Error::NoBracket`] when no sign change occurs.
pub fn find_eigenvalues(
    q: impl Fn(f64, f64) -> f64 + Sync,
    center: f64,
    grid: &GridConfig,
) -> Result<Vec<FoundLevel>> {
    grid.validate()?;
    let (e_min, e_max, steps) = grid.e_scan;
    let energies: Vec<f64> = (0..=steps)
        .map(|i| e_min + (e_max - e_min) * i as f64 / steps as f64)
        .collect();
    let f = |e: f64| mismatch(|x| q(e, x), center, grid);
    let values: Vec<f64> = energies.par_iter().map(|&e| f(e)).collect::<Result<_>>()?;
    let brackets: Vec<usize> = (0..steps)
        .filter(|&i| {
            values[i] != 0.0 && values[i + 1] != 0.0 && (values[i] > 0.0) != (values[i + 1] > 0.0)
        })
        .collect();
    let exact: Vec<FoundLevel> = (0..=steps)
        .filter(|&i| values[i] == 0.0)
        .map(|i| FoundLevel {
            energy: energies[i],
            residual: 0.0,
        })
        .collect();
    if brackets.is_empty() && exact.is_empty() {
        return Err(Error::NoBracket { e_min, e_max });
    }
    let mut found: Vec<FoundLevel> = brackets
        .par_iter()
        .map(|&i| {
            let (energy, residual) =
                bisect(&f, energies[i], energies[i + 1], values[i], grid.tol_e)?;
            Ok(FoundLevel { energy, residual })
        })
        .collect::<Result<_>>()?;
    found.extend(exact);
    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(found)
}
