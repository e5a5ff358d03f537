use std::f64::consts::PI;

use kgws::problem::{map_x_to_s, potential_by_substitution, potential_value};
use kgws::{PotentialParams, Variant, C64};
use proptest::prelude::*;

const GRID: usize = 1000;

fn params(v0: f64, q: f64, alpha: f64, variant: Variant) -> PotentialParams {
    PotentialParams::with_alpha(v0, q, alpha, 1.0, variant).unwrap()
}

fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..GRID).map(move |i| lo + (hi - lo) * i as f64 / (GRID - 1) as f64)
}

fn rel_close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Hyperbolic form of the non-PT potential as printed in the source text.
fn printed_nonpt(v0: f64, q: f64, alpha: f64, x: f64) -> C64 {
    let ax = alpha * x;
    let bracket = 2.0 * ax.cosh().powi(2) - (2.0 * ax).sinh() - 1.0;
    let odd = ax.cosh() - ax.sinh();
    v0 * C64::new(bracket, -odd) / (1.0 + q * q * bracket)
}

#[test]
fn explicit_forms_match_substitution() {
    // |q| = 1 puts poles of the complex-α forms on the real axis; keep away from them
    for variant in Variant::ALL {
        for &(v0, q, alpha) in &[
            (5.0, 1.3, 1.0),
            (0.45, 0.7, 1.3),
            (2.0, 1.6, 0.5),
            (1.2, -0.4, 2.0),
        ] {
            let p = params(v0, q, alpha, variant);
            for x in grid(-8.0, 8.0) {
                let (Ok(explicit), Ok(sub)) =
                    (potential_value(&p, x), potential_by_substitution(&p, x))
                else {
                    continue;
                };
                assert!(
                    rel_close(explicit, sub, 1e-12),
                    "{variant} q={q} x={x}: {explicit} vs {sub}"
                );
            }
        }
    }
}

#[test]
fn pt_certificate() {
    for &(v0, q, alpha) in &[(3.0, 2.0, 1.0), (1.0, 0.5, 1.7), (6.0, -1.4, 0.8)] {
        let p = params(v0, q, alpha, Variant::PtSymmetric);
        for x in grid(-10.0, 10.0) {
            let v = potential_value(&p, x).unwrap();
            let w = potential_value(&p, -x).unwrap().conj();
            assert!(rel_close(v, w, 1e-12), "x={x}: {v} vs {w}");
        }
    }
}

#[test]
fn pseudo_reflection_center_is_pi_over_alpha() {
    let (v0, q, alpha) = (1.3, 0.7, 1.1);
    let p = params(v0, q, alpha, Variant::PseudoHermitian);
    let mut worst_half = 0.0f64;
    for x in grid(-10.0, 10.0) {
        let v = potential_value(&p, x).unwrap();
        let full = potential_value(&p, PI / alpha - x).unwrap().conj();
        assert!(rel_close(v, full, 1e-12), "x={x}: {v} vs {full}");
        let half = potential_value(&p, PI / (2.0 * alpha) - x).unwrap().conj();
        worst_half = worst_half.max((v - half).norm() / v.norm());
    }
    assert!(
        worst_half > 1e-3,
        "the π/(2α) reflection unexpectedly holds"
    );
}

#[test]
fn printed_hyperbolic_nonpt_form() {
    // agrees with the substitution only at q = -1; the printed bracket cancels
    // catastrophically for large |x|, so the window is kept small
    let p = params(0.8, -1.0, 1.2, Variant::NonPtNonHermitian);
    for x in grid(-2.0, 2.0) {
        let v = potential_value(&p, x).unwrap();
        assert!(rel_close(v, printed_nonpt(0.8, -1.0, 1.2, x), 1e-10));
    }
    let p = params(0.8, 2.0, 1.2, Variant::NonPtNonHermitian);
    let v = potential_value(&p, 0.3).unwrap();
    assert!((v - printed_nonpt(0.8, 2.0, 1.2, 0.3)).norm() > 1e-2);
}

#[test]
fn potential_spec_examples() {
    let p = params(5.0, 1.0, 1.0, Variant::RealHermitian);
    assert_eq!(potential_value(&p, 0.0).unwrap(), C64::from(-2.5));
    assert!(potential_value(&p, 800.0).unwrap().norm() < 1e-300);
    let p = params(3.0, 2.0, 1.0, Variant::PtSymmetric);
    assert!((potential_value(&p, 0.0).unwrap() - C64::from(-1.0)).norm() < 1e-15);
    let p = params(1.0, 3.0, 1.0, Variant::RealHermitian);
    assert_eq!(map_x_to_s(&p, 0.0).unwrap(), C64::from(0.25));
}

proptest! {
    #[test]
    fn real_s_map_is_monotone(q in 0.05f64..5.0, alpha in 0.1f64..4.0, x1 in -8.0f64..8.0, dx in 1e-3f64..2.0) {
        let p = params(1.0, q, alpha, Variant::RealHermitian);
        let s1 = map_x_to_s(&p, x1).unwrap().re;
        let s2 = map_x_to_s(&p, x1 + dx).unwrap().re;
        prop_assert!(s1 > 0.0 && s2 < 1.0);
        prop_assert!(s1 < s2);
    }

    #[test]
    fn pt_conjugate_symmetry(v0 in 0.1f64..8.0, q in 0.05f64..3.0, alpha in 0.2f64..3.0, x in -20.0f64..20.0) {
        prop_assume!((q - 1.0).abs() > 1e-3);
        let p = params(v0, q, alpha, Variant::PtSymmetric);
        let v = potential_value(&p, x).unwrap();
        let w = potential_value(&p, -x).unwrap().conj();
        prop_assert!(rel_close(v, w, 1e-12));
    }
}
