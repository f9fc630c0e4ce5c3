// Reference literals keep all the digits they were computed with.
#![allow(clippy::excessive_precision)]

use airyband::canonical::{canonical_eval, canonical_scaled, ratio_vpup, ratio_vu};
use airyband::error::Error;
use airyband::zeros::{airy_zero, tables, zero_asymptotics, AiryZeroKind};

// (x, u, u', v, v') from a 40-digit reference.
const CANONICAL: [(f64, f64, f64, f64, f64); 11] = [
    (-50.0, -0.3395014819581916, 0.43336709302164156, 0.15975955656622778, -3.149425235036839),
    (-30.0, -0.3063880284568588, 1.337020148237711, -0.08039643363593861, -2.9130000701315404),
    (-12.0, -0.3341836557687359, 1.2483986061344008, -0.20125769989029352, -2.240534972486199),
    (-10.5, -0.46398044799748106, -0.6944495928629395, 0.568736182061317, -1.3040234616187545),
    (-7.0, 0.4983894126648019, -0.6807159531828564, -0.028354180120527407, 2.045190200364483),
    (-2.0, -0.014978509199559066, 1.097408327143938, -0.8991799523626511, -0.8834278832453143),
    (0.7, 1.0578233940306094, 0.2506425056585452, 0.7201723588342612, 1.1159762689934278),
    (4.0, 68.17782465662391, 131.6606598347321, 93.5172884552001, 180.60928118465978),
    (9.5, 78783598.93348382, 240707387.39802018, 108069130.04878207, 330183417.67277914),
    (12.0, 268167949726.68176, 923286983976.8683, 367851652199.79486, 1266492296550.024),
    (20.0, 1.7105821700946298e+25, 7.628421763991528e+25, 2.346441765819314e+25, 1.046406758309924e+26),
];

const AIRY_ZEROS: [(usize, f64, f64); 8] = [
    (1, 2.33810741045976704, 1.01879297164747109),
    (2, 4.08794944413097062, 3.24819758217983654),
    (3, 5.52055982809555106, 4.82009921117873564),
    (4, 6.786708090071759, 6.16330735563948655),
    (5, 7.94413358712085312, 7.37217725504777018),
    (10, 12.8287767528657572, 12.3847883718457473),
    (50, 38.0210086772552544, 37.7656591005388711),
    (100, 60.4555572741166987, 60.2532959644247932),
];

const C_TABLE: [(usize, f64, f64); 16] = [
    (0, 1.51490605029665457, 1.98635270743047281),
    (1, 2.66635269040693788, 2.94868969393734088),
    (2, 3.53404857869318069, 3.82533919116045265),
    (3, 4.34247756803955738, 4.57805466862293236),
    (4, 5.05614620442481961, 5.29562113684275586),
    (5, 5.74102881611223979, 5.95034462404334275),
    (6, 6.37263250671739002, 6.58430786848608094),
    (7, 6.98614237426034724, 7.17794184984596506),
    (8, 7.56387857353925937, 7.7573206393945232),
    (9, 8.12877912621630029, 8.30774042934572175),
    (10, 8.66732471414472871, 8.84752256756641593),
    (11, 9.19609778359366253, 9.36508017176496997),
    (50, 24.2978997204780869, 24.4044272554744072),
    (100, 38.3597455927401997, 38.4444082686896196),
    (199, 60.5228796345541524, 60.5900964751194315),
    (200, 60.7245547196232676, 60.7917956862651262),
];

#[test]
fn canonical_matches_reference() {
    for &(x, u, up, v, vp) in &CANONICAL {
        let c = canonical_eval(x).unwrap();
        // Relative to the local envelope on the oscillatory side.
        let (su, sv) = if x < 0.0 {
            ((u * u + up * up / x.abs()).sqrt(), (v * v + vp * vp / x.abs()).sqrt())
        } else {
            (u.abs(), v.abs())
        };
        let sq = x.abs().sqrt().max(1.0);
        assert!((c.u - u).abs() < 1e-13 * su, "u at {x}: {} vs {u}", c.u);
        assert!((c.up - up).abs() < 1e-13 * su * sq, "u' at {x}");
        assert!((c.v - v).abs() < 1e-13 * sv, "v at {x}");
        assert!((c.vp - vp).abs() < 1e-13 * sv * sq, "v' at {x}");
    }
}

#[test]
fn trigonometric_form_agrees() {
    // u = −2πAi′(0)(cos(π/3)Bi + sin(π/3)Ai), v = 2πAi(0)(cos(π/3)Bi − sin(π/3)Ai).
    use airyband::airy::{airy_eval, AI0, AIP0};
    use std::f64::consts::PI;
    let (c3, s3) = ((PI / 3.0).cos(), (PI / 3.0).sin());
    for &x in &[-14.0, -6.0, -1.0, 0.3, 3.0] {
        let a = airy_eval(x).unwrap();
        let c = canonical_eval(x).unwrap();
        let u = -2.0 * PI * AIP0 * (c3 * a.bi + s3 * a.ai);
        let v = 2.0 * PI * AI0 * (c3 * a.bi - s3 * a.ai);
        let scale = 1.0 + a.bi.abs();
        assert!((c.u - u).abs() < 1e-13 * scale);
        assert!((c.v - v).abs() < 1e-13 * scale);
    }
}

#[test]
fn scaled_pair_is_consistent() {
    for &x in &[0.0, 2.0, 8.9, 9.1, 15.0] {
        let s = canonical_scaled(x).unwrap();
        let c = canonical_eval(x).unwrap();
        let e = s.zeta.exp();
        assert!((s.u * e - c.u).abs() < 1e-13 * c.u.abs());
        assert!((s.vp * e - c.vp).abs() < 1e-13 * c.vp.abs());
    }
    assert!(canonical_scaled(500.0).unwrap().u.is_finite());
}

#[test]
fn airy_zeros_match_reference() {
    for &(j, a, at) in &AIRY_ZEROS {
        let x = airy_zero(AiryZeroKind::Ai, j).unwrap();
        let y = airy_zero(AiryZeroKind::AiPrime, j).unwrap();
        assert!((x - a).abs() < 1e-12 * a, "a_{j}: {x} vs {a}");
        assert!((y - at).abs() < 1e-12 * at, "ã_{j}: {y} vs {at}");
    }
}

#[test]
fn canonical_zeros_match_reference() {
    let t = tables(200).unwrap();
    for &(p, c, ct) in &C_TABLE {
        assert!((t.c(p) - c).abs() < 1e-12 * c, "c_{p}: {} vs {c}", t.c(p));
        assert!((t.c_tilde(p) - ct).abs() < 1e-12 * ct, "c̃_{p}: {} vs {ct}", t.c_tilde(p));
    }
    t.check_interlacing().unwrap();
}

#[test]
fn phases_lie_in_enclosures() {
    let t = tables(200).unwrap();
    for p in 0..=200 {
        let z = zero_asymptotics(p);
        let (xi, xt) = (t.xi(p), t.xi_tilde(p));
        assert!(z.xi_interval.0 <= xi && xi <= z.xi_interval.1, "ξ_{p} = {xi}");
        assert!(z.xi_tilde_interval.0 <= xt && xt <= z.xi_tilde_interval.1, "ξ̃_{p} = {xt}");
    }
}

#[test]
fn ratio_poles_are_reported() {
    let t = tables(10).unwrap();
    match ratio_vu(-t.c_tilde(4)) {
        Err(Error::Pole { index, .. }) => assert_eq!(index, 4),
        other => panic!("expected pole, got {other:?}"),
    }
    match ratio_vpup(-t.c_tilde(3)) {
        Err(Error::Pole { index, .. }) => assert_eq!(index, 3),
        other => panic!("expected pole, got {other:?}"),
    }
    assert!(ratio_vu(-t.c_tilde(4) + 1e-6).is_ok());
}

#[test]
fn no_spurious_zeros_between_table_entries() {
    // Sample u, u', v, v' finely and check that each sign change matches a tabulated zero.
    let t = tables(30).unwrap();
    let limit = t.c_tilde(30);
    let mut zeros_u = Vec::new();
    let mut zeros_up = Vec::new();
    let mut zeros_v = Vec::new();
    let mut zeros_vp = Vec::new();
    let n = 40_000;
    let mut prev = canonical_eval(-1e-9).unwrap();
    for i in 1..=n {
        let x = -limit * i as f64 / n as f64;
        let c = canonical_eval(x).unwrap();
        if prev.u.signum() != c.u.signum() {
            zeros_u.push(-x);
        }
        if prev.up.signum() != c.up.signum() {
            zeros_up.push(-x);
        }
        if prev.v.signum() != c.v.signum() {
            zeros_v.push(-x);
        }
        if prev.vp.signum() != c.vp.signum() {
            zeros_vp.push(-x);
        }
        prev = c;
    }
    let step = limit / n as f64;
    let even: Vec<usize> = (0..=30).step_by(2).collect();
    let odd: Vec<usize> = (1..=30).step_by(2).collect();
    let check = |found: &[f64], expected: Vec<f64>| {
        assert_eq!(found.len(), expected.len(), "{found:?} vs {expected:?}");
        for (f, e) in found.iter().zip(&expected) {
            assert!((f - e).abs() <= step * 1.01, "{f} vs {e}");
        }
    };
    check(&zeros_u, even.iter().map(|&p| t.c_tilde(p)).collect());
    check(&zeros_up, odd.iter().map(|&p| t.c_tilde(p)).collect());
    check(&zeros_vp, even.iter().map(|&p| t.c(p)).collect());
    check(&zeros_v, odd.iter().map(|&p| t.c(p)).collect());
}
