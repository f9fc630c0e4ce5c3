use airyband::bands::{solve_band_structure, EdgeKind, ScaleParams};
use airyband::error::Error;
use airyband::semiclassics::{
    estimate_edge, estimate_gap, estimate_width, ground_state_large_h, residual_ratio, Quantity,
    Semiclassics,
};

#[test]
fn estimates_refuse_large_h() {
    assert!(matches!(estimate_width(0, 5.0), Err(Error::Validity { .. })));
    assert!(matches!(estimate_gap(1, 5.0), Err(Error::Validity { .. })));
    assert!(matches!(estimate_edge(0, EdgeKind::Min, 5.0), Err(Error::Validity { .. })));
    assert!(matches!(estimate_width(0, -0.1), Err(Error::Domain { .. })));
}

#[test]
fn validity_bounds_shrink_with_p() {
    let s = Semiclassics::default();
    for q in [Quantity::EMin, Quantity::EMax, Quantity::Width, Quantity::Gap] {
        let b: Vec<f64> = (0..5).map(|p| s.validity_bound(q, p).unwrap()).collect();
        assert!(b.windows(2).all(|w| w[1] < w[0]), "{q:?}: {b:?}");
    }
}

#[test]
fn width_ratio_approaches_one() {
    let dev: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&h| residual_ratio(&estimate_width(0, h).unwrap()).unwrap().ratio.ln().abs())
        .collect();
    assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
}

#[test]
fn deep_width_uses_log_space() {
    let est = estimate_width(0, 0.02).unwrap();
    assert!(est.below_solver_resolution);
    assert!(est.value() > 0.0 && est.value() < 1e-20);
}

#[test]
fn ground_state_expansion_improves_with_h() {
    let resid = |h: f64| {
        let s = solve_band_structure(ScaleParams::from_h(h).unwrap(), 0).unwrap();
        let e = s.edge(0, EdgeKind::Min).unwrap().energy;
        (e - ground_state_large_h(h).unwrap()).abs() * h.powf(2.0 / 3.0)
    };
    let (r10, r20) = (resid(10.0), resid(20.0));
    assert!(r20 < r10 / 8.0, "{r10:e} {r20:e}");
}
