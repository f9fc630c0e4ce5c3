//! Real Airy functions Ai, Bi and their derivatives, with the Bessel
//! auxiliaries P(ν, ξ) and Q(ν, ξ) of the oscillatory representation.
//!
//! For −[`SERIES_LIMIT_NEG`] ≤ x ≤ [`SERIES_LIMIT_POS`] the Maclaurin series
//! is summed in double-double arithmetic, which absorbs the cancellation
//! between the two basis series on either side of the origin. Beyond that the
//! Hankel-type expansions are used: the P/Q forms on the negative axis and
//! the exponential forms on the positive axis.

use serde::Serialize;
use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use crate::dd::{cos_sin, Dd};
use crate::error::{Error, Result};

/// Ai(0) = 3^{-2/3}/Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// Ai′(0) = -3^{-1/3}/Γ(1/3).
pub const AIP0: f64 = -0.258_819_403_792_806_8;
/// Bi(0) = √3·Ai(0).
pub const BI0: f64 = 0.614_926_627_446_000_7;
/// Bi′(0) = -√3·Ai′(0).
pub const BIP0: f64 = 0.448_288_357_353_826_4;

pub(crate) const DD_AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
pub(crate) const DD_AIP0: Dd = Dd::new(-0.2588194037928068, 2.522243111610832e-17);
pub(crate) const DD_BI0: Dd = Dd::new(0.6149266274460007, 5.0899207794891416e-17);
pub(crate) const DD_BIP0: Dd = Dd::new(0.4482883573538264, -2.5363237774417305e-17);
pub(crate) const DD_FRAC_PI_4: Dd = Dd::new(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);

/// Negative arguments down to −SERIES_LIMIT_NEG use the series.
pub const SERIES_LIMIT_NEG: f64 = 10.0;
/// Positive arguments up to SERIES_LIMIT_POS use the series.
pub const SERIES_LIMIT_POS: f64 = 9.0;

pub(crate) fn in_series_range(x: f64) -> bool {
    (-SERIES_LIMIT_NEG..=SERIES_LIMIT_POS).contains(&x)
}

const FRAC_1_SQRT_PI: f64 = FRAC_2_SQRT_PI / 2.0;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Which representation produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    NegativeAsymptotic,
    PositiveAsymptotic,
}

/// Ai, Ai′, Bi, Bi′ at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AiryQuartet {
    pub x: f64,
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
    pub regime: Regime,
    /// Set when Ai or Ai′ underflowed to zero (large positive x).
    pub underflow: bool,
}

impl AiryQuartet {
    /// Ai·Bi′ − Ai′·Bi, equal to 1/π.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bip - self.aip * self.bi
    }
}

/// Exponentially scaled values for x ≥ 0: e^{ζ}Ai, e^{ζ}Ai′, e^{-ζ}Bi,
/// e^{-ζ}Bi′ with ζ = (2/3)x^{3/2}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledAiry {
    pub x: f64,
    pub zeta: f64,
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

/// Order of the Bessel auxiliaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    OneThird,
    TwoThirds,
}

impl Order {
    pub fn nu(self) -> f64 {
        match self {
            Order::OneThird => 1.0 / 3.0,
            Order::TwoThirds => 2.0 / 3.0,
        }
    }

    fn four_nu_sq(self) -> f64 {
        match self {
            Order::OneThird => 4.0 / 9.0,
            Order::TwoThirds => 16.0 / 9.0,
        }
    }
}

/// P(ν, ξ) and Q(ν, ξ) at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuxPQ {
    pub nu: Order,
    pub xi: f64,
    pub p: f64,
    pub q: f64,
}

/// Maclaurin basis: u = f, v = g are the solutions with unit data at 0.
pub(crate) struct Maclaurin {
    pub f: Dd,
    pub fp: Dd,
    pub g: Dd,
    pub gp: Dd,
}

pub(crate) fn maclaurin(x: f64) -> Maclaurin {
    let xd = Dd::from_f64(x);
    let x2 = xd * xd;
    let x3 = x2.mul_f64(x);
    let one = Dd::from_f64(1.0);

    let (mut tf, mut tfp, mut tg, mut tgp) = (one, x2.div_f64(2.0), xd, one);
    let (mut f, mut fp, mut g, mut gp) = (one, tfp, xd, one);
    let (mut mf, mut mfp, mut mg, mut mgp) = (1.0f64, tfp.hi.abs(), x.abs(), 1.0f64);

    for k in 1..=200u32 {
        let k = k as f64;
        tf = (tf * x3).div_f64((3.0 * k - 1.0) * (3.0 * k));
        tg = (tg * x3).div_f64((3.0 * k) * (3.0 * k + 1.0));
        tgp = (tgp * x3).div_f64((3.0 * k - 2.0) * (3.0 * k));
        if k >= 2.0 {
            tfp = (tfp * x3).div_f64((3.0 * k - 3.0) * (3.0 * k - 1.0));
            fp = fp + tfp;
        }
        f = f + tf;
        g = g + tg;
        gp = gp + tgp;
        mf = mf.max(tf.hi.abs());
        mfp = mfp.max(tfp.hi.abs());
        mg = mg.max(tg.hi.abs());
        mgp = mgp.max(tgp.hi.abs());
        let small = |t: Dd, m: f64| t.hi.abs() <= 1e-34 * m;
        if small(tf, mf) && small(tfp, mfp) && small(tg, mg) && small(tgp, mgp) {
            break;
        }
    }
    Maclaurin { f, fp, g, gp }
}

/// ξ = (2/3)t^{3/2} in double-double.
pub(crate) fn phase_variable(t: f64) -> Dd {
    Dd::sqrt_f64(t).mul_f64(t).mul_f64(2.0).div_f64(3.0)
}

/// Hankel expansions of P(ν, ξ), Q(ν, ξ), truncated at the smallest term.
fn hankel_pq(order: Order, xi: f64) -> (f64, f64) {
    let mu = order.four_nu_sq();
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..=120u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (8.0 * k as f64 * xi);
        let mag = term.abs();
        if mag > last {
            break;
        }
        last = mag;
        let sign = if ((k - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += if (k / 2) % 2 == 0 { term } else { -term };
        }
        if mag < 1e-18 {
            break;
        }
    }
    (p, q)
}

/// Data shared by every oscillatory representation at −t, t > SERIES_LIMIT_NEG.
pub(crate) struct Oscillatory {
    pub xi: Dd,
    pub t_quarter: f64,
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
}

pub(crate) fn oscillatory(t: f64) -> Oscillatory {
    let xi = phase_variable(t);
    let xf = xi.to_f64();
    let (p1, q1) = hankel_pq(Order::OneThird, xf);
    let (p2, q2) = hankel_pq(Order::TwoThirds, xf);
    Oscillatory {
        xi,
        t_quarter: t.sqrt().sqrt(),
        p1,
        q1,
        p2,
        q2,
    }
}

fn negative_asymptotic(x: f64) -> AiryQuartet {
    let t = -x;
    let o = oscillatory(t);
    let (c, s) = cos_sin(o.xi - DD_FRAC_PI_4);
    let lo = FRAC_1_SQRT_PI / o.t_quarter;
    let hi = FRAC_1_SQRT_PI * o.t_quarter;
    AiryQuartet {
        x,
        ai: lo * (c * o.p1 - s * o.q1),
        bi: -lo * (s * o.p1 + c * o.q1),
        aip: hi * (s * o.p2 + c * o.q2),
        bip: hi * (c * o.p2 - s * o.q2),
        regime: Regime::NegativeAsymptotic,
        underflow: false,
    }
}

/// Exponential expansions for x > SERIES_LIMIT_POS; returns scaled values and ζ in double-double.
fn positive_asymptotic(x: f64) -> (Dd, ScaledAiry) {
    let zeta = phase_variable(x);
    let inv = 1.0 / zeta.to_f64();
    let (mut su, mut sua, mut sv, mut sva) = (1.0, 1.0, 1.0, 1.0);
    let mut uk = 1.0f64;
    let mut pw = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..=120u32 {
        let kf = k as f64;
        uk *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        pw *= inv;
        let tu = uk * pw;
        let tv = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * tu;
        let mag = tv.abs().max(tu.abs());
        if mag > last {
            break;
        }
        last = mag;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += tu;
        sua += sign * tu;
        sv += tv;
        sva += sign * tv;
        if mag < 1e-18 {
            break;
        }
    }
    let xq = x.sqrt().sqrt();
    let s = ScaledAiry {
        x,
        zeta: zeta.to_f64(),
        ai: sua * FRAC_1_SQRT_PI / (2.0 * xq),
        aip: -xq * sva * FRAC_1_SQRT_PI / 2.0,
        bi: su * FRAC_1_SQRT_PI / xq,
        bip: xq * sv * FRAC_1_SQRT_PI,
    };
    (zeta, s)
}

fn series(x: f64) -> AiryQuartet {
    series_from(x, &maclaurin(x))
}

pub(crate) fn series_from(x: f64, m: &Maclaurin) -> AiryQuartet {
    AiryQuartet {
        x,
        ai: (DD_AI0 * m.f + DD_AIP0 * m.g).to_f64(),
        aip: (DD_AI0 * m.fp + DD_AIP0 * m.gp).to_f64(),
        bi: (DD_BI0 * m.f + DD_BIP0 * m.g).to_f64(),
        bip: (DD_BI0 * m.fp + DD_BIP0 * m.gp).to_f64(),
        regime: Regime::Series,
        underflow: false,
    }
}

/// e^{∓(hi+lo)} evaluated without losing the low part.
fn exp_dd(z: Dd, sign: f64) -> f64 {
    (sign * z.hi).exp() * (1.0 + sign * z.lo)
}

/// Evaluate Ai, Ai′, Bi, Bi′ at a real point.
pub fn airy_eval(x: f64) -> Result<AiryQuartet> {
    if !x.is_finite() {
        return Err(Error::Domain { what: "Airy argument must be finite", value: x });
    }
    if in_series_range(x) {
        return Ok(series(x));
    }
    if x < 0.0 {
        return Ok(negative_asymptotic(x));
    }
    let (zeta, s) = positive_asymptotic(x);
    let down = exp_dd(zeta, -1.0);
    let up = exp_dd(zeta, 1.0);
    let ai = s.ai * down;
    let aip = s.aip * down;
    Ok(AiryQuartet {
        x,
        ai,
        aip,
        bi: s.bi * up,
        bip: s.bip * up,
        regime: Regime::PositiveAsymptotic,
        underflow: ai.abs() < f64::MIN_POSITIVE || aip.abs() < f64::MIN_POSITIVE,
    })
}

/// Evaluate with a forced representation, for checking agreement near switch points.
///
/// The negative expansion needs x < 0 and the positive one x > 0.
pub fn airy_eval_with(x: f64, regime: Regime) -> Result<AiryQuartet> {
    if !x.is_finite() {
        return Err(Error::Domain { what: "Airy argument must be finite", value: x });
    }
    match regime {
        Regime::Series => Ok(series(x)),
        Regime::NegativeAsymptotic if x < 0.0 => Ok(negative_asymptotic(x)),
        Regime::PositiveAsymptotic if x > 0.0 => {
            let (zeta, s) = positive_asymptotic(x);
            let (down, up) = (exp_dd(zeta, -1.0), exp_dd(zeta, 1.0));
            Ok(AiryQuartet {
                x,
                ai: s.ai * down,
                aip: s.aip * down,
                bi: s.bi * up,
                bip: s.bip * up,
                regime,
                underflow: false,
            })
        }
        _ => Err(Error::Domain { what: "expansion not defined on this side of 0", value: x }),
    }
}

/// Exponentially scaled Airy functions for x ≥ 0, finite for every x.
pub fn airy_scaled(x: f64) -> Result<ScaledAiry> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain { what: "scaled Airy functions need finite x ≥ 0", value: x });
    }
    if x > SERIES_LIMIT_POS {
        return Ok(positive_asymptotic(x).1);
    }
    let q = series(x);
    let zeta = phase_variable(x);
    let up = exp_dd(zeta, 1.0);
    let down = exp_dd(zeta, -1.0);
    Ok(ScaledAiry {
        x,
        zeta: zeta.to_f64(),
        ai: q.ai * up,
        aip: q.aip * up,
        bi: q.bi * down,
        bip: q.bip * down,
    })
}

fn xi_switch() -> f64 {
    phase_variable(SERIES_LIMIT_NEG).to_f64()
}

/// Bessel auxiliaries P(ν, ξ), Q(ν, ξ) for ν ∈ {1/3, 2/3}.
///
/// For large ξ the Hankel expansions are summed directly. Below the
/// series limit the values are recovered from [`airy_eval`] by inverting
/// the oscillatory representation of Ai(−x), Bi(−x) (ν = 1/3) or
/// Ai′(−x), Bi′(−x) (ν = 2/3), x = (3ξ/2)^{2/3}.
pub fn aux_pq(nu: Order, xi: f64) -> Result<AuxPQ> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain { what: "ξ must be positive and finite", value: xi });
    }
    if xi >= xi_switch() {
        let (p, q) = hankel_pq(nu, xi);
        return Ok(AuxPQ { nu, xi, p, q });
    }
    let x = (1.5 * xi).powf(2.0 / 3.0);
    let a = airy_eval(-x)?;
    let (s, c) = (xi - PI / 4.0).sin_cos();
    let xq = x.sqrt().sqrt();
    let (p, q) = match nu {
        Order::OneThird => (
            SQRT_PI * xq * (c * a.ai - s * a.bi),
            -SQRT_PI * xq * (s * a.ai + c * a.bi),
        ),
        Order::TwoThirds => (
            SQRT_PI / xq * (s * a.aip + c * a.bip),
            SQRT_PI / xq * (c * a.aip - s * a.bip),
        ),
    };
    Ok(AuxPQ { nu, xi, p, q })
}

/// Airy moduli M(x) = √(Ai² + Bi²) and N(x) = √(Ai′² + Bi′²) for x ≤ 0.
pub fn airy_modulus(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() || x > 0.0 {
        return Err(Error::Domain { what: "Airy modulus needs x ≤ 0", value: x });
    }
    let a = airy_eval(x)?;
    Ok((a.ai.hypot(a.bi), a.aip.hypot(a.bip)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn origin_values() {
        let q = airy_eval(0.0).unwrap();
        assert_eq!(q.ai, AI0);
        assert_eq!(q.aip, AIP0);
        assert!(rel(q.bi, 3f64.sqrt() * AI0) < 1e-15);
        assert!(rel(q.bip, -3f64.sqrt() * AIP0) < 1e-15);
        assert_eq!(q.regime, Regime::Series);
    }

    #[test]
    fn wronskian_on_sample_points() {
        for &x in &[-10.0, -1.0, 0.0, 1.0, 10.0] {
            let q = airy_eval(x).unwrap();
            assert!((q.wronskian() * PI - 1.0).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn positive_axis_signs() {
        for &x in &[0.0, 0.3, 2.0, 9.9, 10.1, 40.0] {
            let q = airy_eval(x).unwrap();
            assert!(q.ai > 0.0 && q.bi > 0.0 && q.bip > 0.0 && q.aip < 0.0);
        }
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(airy_eval(f64::NAN).is_err());
        assert!(airy_eval(f64::INFINITY).is_err());
        assert!(aux_pq(Order::OneThird, 0.0).is_err());
        assert!(airy_modulus(0.5).is_err());
    }

    #[test]
    fn far_positive_underflows() {
        let q = airy_eval(120.0).unwrap();
        assert!(q.underflow);
        assert_eq!(q.ai, 0.0);
        let s = airy_scaled(120.0).unwrap();
        assert!(s.ai > 0.0 && s.ai.is_finite());
    }

    #[test]
    fn hankel_limits() {
        let pq = aux_pq(Order::OneThird, 100.0).unwrap();
        assert!((pq.p - 1.0).abs() < 1.0 / (26.0 * 1e4));
        assert!((pq.q + 5.0 / 7200.0).abs() < 1.0 / (26.0 * 1e6));
        let pq = aux_pq(Order::TwoThirds, 2.0).unwrap();
        assert!((pq.q / pq.p).abs() < 7.0 / 24.0);
    }

    #[test]
    fn modulus_at_origin() {
        let (m, _) = airy_modulus(0.0).unwrap();
        assert!(rel(m, 2.0 * AI0) < 1e-15);
    }
}

