//! Canonical solutions u, v of the Airy equation y″ = x·y with
//! u(0) = 1, u′(0) = 0 and v(0) = 0, v′(0) = 1.
//!
//! In the series range u and v are the two Maclaurin basis series
//! themselves. Outside it they are rebuilt from Ai and Bi:
//! u = π(Bi′(0)Ai − Ai′(0)Bi), v = π(Ai(0)Bi − Bi(0)Ai), using the phase
//! forms of the P/Q representation on the negative axis.

use serde::Serialize;
use std::f64::consts::PI;

use crate::airy::{
    airy_eval, airy_scaled, in_series_range, maclaurin, oscillatory, phase_variable, series_from,
    AI0, AIP0, BI0, BIP0, SERIES_LIMIT_POS,
};
use crate::dd::{cos_sin, Dd};
use crate::error::{Error, Result};
use crate::zeros;

/// α = −Ai(0)/Ai′(0), the common limit of v/u and v′/u′ at +∞.
pub const ALPHA: f64 = 1.371_721_164_198_448_4;

/// κ = 2√3·π·Ai(0), so that αu − v = κ·Ai and αu′ − v′ = κ·Ai′.
pub const KAPPA: f64 = 2.0 * 1.732_050_807_568_877_2 * PI * AI0;

const DD_7PI_12: Dd = Dd::new(1.8325957145940461, -7.659200666642527e-17);
const DD_PI_12: Dd = Dd::new(0.26179938779914946, -2.6802044161277275e-17);
const TWO_SQRT_PI: f64 = 3.544_907_701_811_032;

/// u, u′, v, v′ at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CanonicalPair {
    pub x: f64,
    pub u: f64,
    pub up: f64,
    pub v: f64,
    pub vp: f64,
}

impl CanonicalPair {
    /// u·v′ − u′·v, equal to 1.
    pub fn wronskian(&self) -> f64 {
        self.u * self.vp - self.up * self.v
    }
}

/// e^{−ζ}·(u, u′, v, v′) for x ≥ 0, ζ = (2/3)x^{3/2}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledCanonical {
    pub x: f64,
    pub zeta: f64,
    pub u: f64,
    pub up: f64,
    pub v: f64,
    pub vp: f64,
}

/// Evaluate the canonical pair at a real point.
pub fn canonical_eval(x: f64) -> Result<CanonicalPair> {
    if !x.is_finite() {
        return Err(Error::Domain { what: "canonical argument must be finite", value: x });
    }
    if in_series_range(x) {
        let m = maclaurin(x);
        return Ok(CanonicalPair {
            x,
            u: m.f.to_f64(),
            up: m.fp.to_f64(),
            v: m.g.to_f64(),
            vp: m.gp.to_f64(),
        });
    }
    if x < 0.0 {
        let o = oscillatory(-x);
        let (cu, su) = cos_sin(o.xi - DD_7PI_12);
        let (cv, sv) = cos_sin(o.xi + DD_PI_12);
        let lo = TWO_SQRT_PI / o.t_quarter;
        let hi = TWO_SQRT_PI * o.t_quarter;
        return Ok(CanonicalPair {
            x,
            u: lo * AIP0 * (su * o.p1 + cu * o.q1),
            up: -hi * AIP0 * (cu * o.p2 - su * o.q2),
            v: -lo * AI0 * (sv * o.p1 + cv * o.q1),
            vp: -hi * AI0 * (-cv * o.p2 + sv * o.q2),
        });
    }
    let a = airy_eval(x)?;
    Ok(CanonicalPair {
        x,
        u: PI * (BIP0 * a.ai - AIP0 * a.bi),
        up: PI * (BIP0 * a.aip - AIP0 * a.bip),
        v: PI * (AI0 * a.bi - BI0 * a.ai),
        vp: PI * (AI0 * a.bip - BI0 * a.aip),
    })
}

/// Exponentially scaled canonical pair, finite for every x ≥ 0.
pub fn canonical_scaled(x: f64) -> Result<ScaledCanonical> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain { what: "scaled canonical pair needs finite x ≥ 0", value: x });
    }
    if x <= SERIES_LIMIT_POS {
        let c = canonical_eval(x)?;
        let zeta = phase_variable(x);
        let down = (-zeta.hi).exp() * (1.0 - zeta.lo);
        return Ok(ScaledCanonical {
            x,
            zeta: zeta.to_f64(),
            u: c.u * down,
            up: c.up * down,
            v: c.v * down,
            vp: c.vp * down,
        });
    }
    let s = airy_scaled(x)?;
    let e2 = (-2.0 * s.zeta).exp();
    Ok(ScaledCanonical {
        x,
        zeta: s.zeta,
        u: PI * (BIP0 * s.ai * e2 - AIP0 * s.bi),
        up: PI * (BIP0 * s.aip * e2 - AIP0 * s.bip),
        v: PI * (AI0 * s.bi - BI0 * s.ai * e2),
        vp: PI * (AI0 * s.bip - BI0 * s.aip * e2),
    })
}

/// Ai, Ai′, u, u′ at one point, from a single series evaluation when possible.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Joint {
    pub ai: f64,
    pub aip: f64,
    pub u: f64,
    pub up: f64,
}

pub(crate) fn joint(x: f64) -> Result<Joint> {
    if in_series_range(x) {
        let m = maclaurin(x);
        let a = series_from(x, &m);
        return Ok(Joint { ai: a.ai, aip: a.aip, u: m.f.to_f64(), up: m.fp.to_f64() });
    }
    let a = airy_eval(x)?;
    let c = canonical_eval(x)?;
    Ok(Joint { ai: a.ai, aip: a.aip, u: c.u, up: c.up })
}

/// ζ and (e^{ζ}Ai, e^{ζ}Ai′, e^{−ζ}u, e^{−ζ}u′) for x ≥ 0.
pub(crate) fn joint_scaled(x: f64) -> Result<(f64, Joint)> {
    if x <= SERIES_LIMIT_POS {
        let m = maclaurin(x);
        let a = series_from(x, &m);
        let zeta = phase_variable(x);
        let down = (-zeta.hi).exp() * (1.0 - zeta.lo);
        let up = zeta.hi.exp() * (1.0 + zeta.lo);
        return Ok((
            zeta.to_f64(),
            Joint { ai: a.ai * up, aip: a.aip * up, u: m.f.to_f64() * down, up: m.fp.to_f64() * down },
        ));
    }
    let s = airy_scaled(x)?;
    let e2 = (-2.0 * s.zeta).exp();
    Ok((
        s.zeta,
        Joint {
            ai: s.ai,
            aip: s.aip,
            u: PI * (BIP0 * s.ai * e2 - AIP0 * s.bi),
            up: PI * (BIP0 * s.aip * e2 - AIP0 * s.bip),
        },
    ))
}

/// Radius around a tabulated zero inside which the ratio functions refuse to evaluate.
pub const POLE_GUARD: f64 = 1e-12;

fn guard(x: f64, family: &'static str, odd: bool) -> Result<()> {
    if x > 0.0 {
        return Ok(());
    }
    if odd && x.abs() <= POLE_GUARD {
        return Err(Error::Pole { family, index: 0, distance: x.abs() });
    }
    let t = zeros::tables(zeros::index_above(-x) + 2)?;
    for j in 0.. {
        let p = 2 * j + usize::from(odd);
        if p > t.max_index() {
            break;
        }
        let d = (x + t.c_tilde(p)).abs();
        if d <= POLE_GUARD {
            return Err(Error::Pole { family, index: p, distance: d });
        }
    }
    Ok(())
}

/// v/u; poles at the zeros −c̃_{2j} of u.
pub fn ratio_vu(x: f64) -> Result<f64> {
    guard(x, "v/u", false)?;
    if x > SERIES_LIMIT_POS {
        let s = canonical_scaled(x)?;
        return Ok(s.v / s.u);
    }
    let c = canonical_eval(x)?;
    Ok(c.v / c.u)
}

/// v′/u′; poles at 0 and at the zeros −c̃_{2j+1} of u′.
pub fn ratio_vpup(x: f64) -> Result<f64> {
    guard(x, "v'/u'", true)?;
    if x > SERIES_LIMIT_POS {
        let s = canonical_scaled(x)?;
        return Ok(s.vp / s.up);
    }
    let c = canonical_eval(x)?;
    Ok(c.vp / c.up)
}

/// (v/u)′ = 1/u² and the quantity −x/u′² that bounds (v′/u′)′ from below, for x < 0.
pub fn ratio_derivative_bounds(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() || x >= 0.0 {
        return Err(Error::Domain { what: "ratio derivative bounds need x < 0", value: x });
    }
    let c = canonical_eval(x)?;
    let d1 = if c.u == 0.0 { f64::INFINITY } else { 1.0 / (c.u * c.u) };
    let d2 = if c.up == 0.0 { f64::INFINITY } else { -x / (c.up * c.up) };
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_data() {
        let c = canonical_eval(0.0).unwrap();
        assert_eq!((c.u, c.up, c.v, c.vp), (1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn alpha_matches_origin_ratio() {
        assert!((ALPHA + AI0 / AIP0).abs() < 1e-15);
        assert!((ALPHA - 1.372).abs() < 1e-3);
    }

    #[test]
    fn wronskian_is_one() {
        for &x in &[-50.0, -12.0, -3.0, 0.5, 2.0, 8.0, 12.0] {
            let c = canonical_eval(x).unwrap();
            let scale = (c.u * c.vp).abs() + (c.up * c.v).abs();
            assert!((c.wronskian() - 1.0).abs() < 1e-12 * scale.max(1.0), "x = {x}");
        }
    }

    #[test]
    fn ratios_tend_to_alpha() {
        assert!((ratio_vu(30.0).unwrap() - ALPHA).abs() < 1e-10);
        assert!((ratio_vpup(30.0).unwrap() - ALPHA).abs() < 1e-10);
        assert_eq!(ratio_vu(0.0).unwrap(), 0.0);
        assert!(matches!(ratio_vpup(0.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn kappa_links_small_parts() {
        for &x in &[-4.0, 0.0, 1.5, 6.0] {
            let c = canonical_eval(x).unwrap();
            let a = airy_eval(x).unwrap();
            assert!((ALPHA * c.u - c.v - KAPPA * a.ai).abs() < 1e-13 * c.u.abs().max(1.0));
            assert!((ALPHA * c.up - c.vp - KAPPA * a.aip).abs() < 1e-13 * c.up.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_bounds_hold() {
        for &x in &[-0.5, -1.0, -10.0] {
            let (d1, d2) = ratio_derivative_bounds(x).unwrap();
            assert!(d1 > ALPHA / 2.0);
            assert!(d2 > ALPHA);
        }
        assert!(ratio_derivative_bounds(0.0).is_err());
    }
}
