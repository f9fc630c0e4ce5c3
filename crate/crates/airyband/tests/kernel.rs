use std::f64::consts::PI;

use airyband::airy::{airy_eval, airy_eval_with, airy_modulus, aux_pq, Order, Regime};
use airyband::canonical::{canonical_eval, ratio_derivative_bounds, ratio_vu};
use airyband::verify::kernel_residuals;
use proptest::prelude::*;

#[test]
fn kernel_residuals_are_small() {
    let (w_airy, w_can, switch) = kernel_residuals().unwrap();
    assert!(w_airy < 1e-12 && w_can < 1e-12 && switch < 1e-12, "{w_airy:e} {w_can:e} {switch:e}");
}

#[test]
fn forced_regimes_agree_in_overlap() {
    for &x in &[-12.0, -11.0, -10.5] {
        let s = airy_eval_with(x, Regime::Series).unwrap();
        let a = airy_eval_with(x, Regime::NegativeAsymptotic).unwrap();
        let (m, _) = airy_modulus(x).unwrap();
        assert!((s.ai - a.ai).abs() / m < 1e-11, "x = {x}");
    }
    assert!(airy_eval_with(-3.0, Regime::PositiveAsymptotic).is_err());
}

#[test]
fn domain_errors() {
    assert!(airy_eval(f64::NAN).is_err());
    assert!(airy_modulus(0.5).is_err());
    assert!(aux_pq(Order::OneThird, 0.0).is_err());
    assert!(ratio_derivative_bounds(0.0).is_err());
}

proptest! {
    #[test]
    fn airy_wronskian(x in -200.0f64..25.0) {
        let a = airy_eval(x).unwrap();
        prop_assert!((PI * a.wronskian() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_wronskian(x in -60.0f64..8.0) {
        let c = canonical_eval(x).unwrap();
        let scale = ((c.u * c.vp).abs() + (c.up * c.v).abs()).max(1.0);
        prop_assert!((c.wronskian() - 1.0).abs() < 1e-12 * scale);
    }

    #[test]
    fn modulus_from_auxiliaries(x in 0.5f64..150.0) {
        let xi = 2.0 / 3.0 * x.powf(1.5);
        let (m, n) = airy_modulus(-x).unwrap();
        let p1 = aux_pq(Order::OneThird, xi).unwrap();
        let p2 = aux_pq(Order::TwoThirds, xi).unwrap();
        let m2 = (p1.p * p1.p + p1.q * p1.q) / (PI * x.sqrt());
        let n2 = (p2.p * p2.p + p2.q * p2.q) * x.sqrt() / PI;
        prop_assert!((m2 / (m * m) - 1.0).abs() < 1e-11);
        prop_assert!((n2 / (n * n) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn moduli_are_monotone(x in -80.0f64..-0.01, dx in 0.001f64..5.0) {
        let (m1, n1) = airy_modulus(x - dx).unwrap();
        let (m2, n2) = airy_modulus(x).unwrap();
        prop_assert!(m1 < m2);
        prop_assert!(n1 > n2);
    }

    #[test]
    fn ratio_increases_between_poles(x in -8.0f64..-0.05) {
        let (d1, _) = ratio_derivative_bounds(x).unwrap();
        prop_assert!(d1 > 0.0);
        let h = 1e-6;
        if let (Ok(a), Ok(b)) = (ratio_vu(x - h), ratio_vu(x + h)) {
            let fd = (b - a) / (2.0 * h);
            if fd.abs() < 1e6 {
                prop_assert!(fd > 0.0);
            }
        }
    }
}
