use airyband::sturm::{
    derivative_relation_residual, sign_audit, sturm_identity_check, sturm_probe, sturm_report,
    z_curve,
};
use airyband::zeros::tables;
use proptest::prelude::*;

#[test]
fn full_report_passes() {
    let r = sturm_report(4).unwrap();
    assert!(r.passes(1e-8), "{r:?}");
    assert!(!r.signs.printed_f_sign_holds);
}

#[test]
fn curves_start_at_table_values() {
    let t = tables(6).unwrap();
    for k in 0..5 {
        assert!((z_curve(k, 0.0).unwrap() - t.c(k)).abs() < 1e-12);
    }
    assert!(z_curve(0, -1.0).is_err());
}

#[test]
fn sign_pattern_holds_off_grid() {
    let audit = sign_audit(&[0.3, 1.7, 4.2], 4).unwrap();
    assert!(audit.all_hold());
}

#[test]
fn sturm_identity_for_constant_coefficients() {
    // y = cosh(t), z = cosh(2t): −y″ + y = 0 and −z″ + 4z = 0.
    let y = |t: f64| Ok((t.cosh(), t.sinh()));
    let z = |t: f64| Ok(((2.0 * t).cosh(), 2.0 * (2.0 * t).sinh()));
    let r = sturm_identity_check(&|_| 4.0, &|_| 1.0, &y, &z, (0.0, 1.0), 20).unwrap();
    assert!(r < 1e-8, "{r:e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn zeros_increase_in_x_and_k(x in 0.0f64..6.0, dx in 0.01f64..1.0) {
        let a = sturm_probe(x, 4).unwrap();
        let b = sturm_probe(x + dx, 4).unwrap();
        for k in 0..=4 {
            prop_assert!(a.residuals[k] < 1e-10);
            prop_assert!(b.z[k] > a.z[k]);
            if k > 0 {
                prop_assert!(a.z[k] > a.z[k - 1]);
            }
        }
    }

    #[test]
    fn derivative_relations(x in 0.0f64..5.0, z in 0.1f64..8.0) {
        prop_assert!(derivative_relation_residual(x, &[z]).unwrap() < 1e-8);
    }
}
