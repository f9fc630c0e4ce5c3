//! Closed-form semiclassical estimates of band edges, widths and gaps.
//!
//! Every estimate has the shape `leading ± exp(L)` with
//! L = −(4/3)/h + 2𝔞·h^{−1/3} + ln(α√3·K). The exponential is kept as its
//! logarithm so that values far below f64 range stay usable.

use serde::Serialize;

use crate::bands::{solve_band_structure, BandStructure, EdgeKind, ScaleParams};
use crate::canonical::{canonical_eval, ALPHA};
use crate::error::{Error, Result};
use crate::zeros;

/// Default τ in the (𝔞 + τ)^{−3/2} validity bounds.
pub const DEFAULT_TAU: f64 = 0.01;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Which quantity an estimate describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Quantity {
    #[serde(rename = "Emin_p")]
    EMin,
    #[serde(rename = "Emax_p")]
    EMax,
    #[serde(rename = "delta_p")]
    Width,
    #[serde(rename = "gamma_p")]
    Gap,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SemiclassicalEstimate {
    pub quantity: Quantity,
    pub p: usize,
    pub h: f64,
    /// Non-exponential part of the estimate.
    pub leading: f64,
    /// Natural log of the magnitude of the exponential correction.
    pub log_exponential: f64,
    /// Sign carried by the exponential correction.
    pub exponential_sign: f64,
    /// Upper end of the h interval on which the formula is asserted.
    pub validity_bound: f64,
    /// True when the correction is below what the band solver resolves at this h.
    pub below_solver_resolution: bool,
}

impl SemiclassicalEstimate {
    /// Signed exponential correction; may underflow to ±0.
    pub fn exponential_term(&self) -> f64 {
        self.exponential_sign * self.log_exponential.exp()
    }

    pub fn value(&self) -> f64 {
        self.leading + self.exponential_term()
    }
}

/// Estimator with an explicit τ and an option to skip the validity check.
#[derive(Clone, Copy, Debug)]
pub struct Semiclassics {
    pub tau: f64,
    pub enforce_validity: bool,
}

impl Default for Semiclassics {
    fn default() -> Self {
        Semiclassics { tau: DEFAULT_TAU, enforce_validity: true }
    }
}

/// ln(α√3·K_q), with K_q = u′(−𝔞_q)²/𝔞_q for even q and u(−𝔞_q)² for odd q.
fn log_prefactor(q: usize, a: f64) -> Result<f64> {
    let k = canonical_eval(-a)?;
    let kq = if q % 2 == 0 { k.up * k.up / a } else { k.u * k.u };
    Ok((ALPHA * SQRT3 * kq).ln())
}

fn exponent(h: f64, a: f64) -> f64 {
    -4.0 / (3.0 * h) + 2.0 * a * h.powf(-1.0 / 3.0)
}

impl Semiclassics {
    fn check(&self, quantity: &'static str, h: f64, bound: f64, closed: bool) -> Result<()> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::Domain { what: "h must be positive and finite", value: h });
        }
        if self.enforce_validity && (h > bound || (!closed && h == bound)) {
            return Err(Error::Validity { quantity, h, bound });
        }
        Ok(())
    }

    fn resolution_flag(h: f64, leading: f64, log_exp: f64) -> bool {
        let c = h.powf(-2.0 / 3.0);
        log_exp < (1e-14 * c.max(leading.abs()).max(1.0)).ln()
    }

    /// Validity bound for the given quantity.
    pub fn validity_bound(&self, quantity: Quantity, p: usize) -> Result<f64> {
        let t = zeros::tables(p + 2)?;
        Ok(match quantity {
            Quantity::EMin => (t.frak_a(p) + self.tau).powf(-1.5),
            Quantity::EMax | Quantity::Width => t.c(p).powf(-1.5),
            Quantity::Gap => (t.frak_a(p + 1) + self.tau).powf(-1.5),
        })
    }

    pub fn edge(&self, p: usize, kind: EdgeKind, h: f64) -> Result<SemiclassicalEstimate> {
        let (quantity, name, closed) = match kind {
            EdgeKind::Min => (Quantity::EMin, "Emin_p", true),
            EdgeKind::Max => (Quantity::EMax, "Emax_p", false),
        };
        let bound = self.validity_bound(quantity, p)?;
        self.check(name, h, bound, closed)?;
        let a = zeros::tables(p + 2)?.frak_a(p);
        let leading = -h.powf(-2.0 / 3.0) + a;
        let log_exponential = exponent(h, a) + log_prefactor(p, a)?;
        Ok(SemiclassicalEstimate {
            quantity,
            p,
            h,
            leading,
            log_exponential,
            exponential_sign: if kind == EdgeKind::Min { -1.0 } else { 1.0 },
            validity_bound: bound,
            below_solver_resolution: Self::resolution_flag(h, leading, log_exponential),
        })
    }

    pub fn width(&self, p: usize, h: f64) -> Result<SemiclassicalEstimate> {
        let bound = self.validity_bound(Quantity::Width, p)?;
        self.check("delta_p", h, bound, false)?;
        let a = zeros::tables(p + 2)?.frak_a(p);
        let log_exponential = exponent(h, a) + log_prefactor(p, a)? + std::f64::consts::LN_2;
        Ok(SemiclassicalEstimate {
            quantity: Quantity::Width,
            p,
            h,
            leading: 0.0,
            log_exponential,
            exponential_sign: 1.0,
            validity_bound: bound,
            below_solver_resolution: Self::resolution_flag(h, 0.0, log_exponential),
        })
    }

    pub fn gap(&self, p: usize, h: f64) -> Result<SemiclassicalEstimate> {
        let bound = self.validity_bound(Quantity::Gap, p)?;
        self.check("gamma_p", h, bound, true)?;
        let t = zeros::tables(p + 3)?;
        let (lo, hi) = (t.frak_a(p), t.frak_a(p + 1));
        let leading = hi - lo;
        let log_exponential = exponent(h, hi) + log_prefactor(p + 1, hi)?;
        Ok(SemiclassicalEstimate {
            quantity: Quantity::Gap,
            p,
            h,
            leading,
            log_exponential,
            exponential_sign: -1.0,
            validity_bound: bound,
            below_solver_resolution: Self::resolution_flag(h, leading, log_exponential),
        })
    }
}

pub fn estimate_edge(p: usize, kind: EdgeKind, h: f64) -> Result<SemiclassicalEstimate> {
    Semiclassics::default().edge(p, kind, h)
}

pub fn estimate_width(p: usize, h: f64) -> Result<SemiclassicalEstimate> {
    Semiclassics::default().width(p, h)
}

pub fn estimate_gap(p: usize, h: f64) -> Result<SemiclassicalEstimate> {
    Semiclassics::default().gap(p, h)
}

/// Solver value next to a formula, with (solver − leading)/exponential.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Comparison {
    pub estimate: SemiclassicalEstimate,
    pub solver: f64,
    /// Ratio of the observed correction to the predicted exponential term.
    pub ratio: f64,
}

/// Compare an estimate with a solved band structure at the same h.
///
/// Widths use the solver's log width, so collapsed bands still compare.
pub fn compare(est: &SemiclassicalEstimate, s: &BandStructure) -> Result<Comparison> {
    let band = s
        .bands
        .iter()
        .find(|b| b.p == est.p)
        .ok_or_else(|| Error::UnsupportedRange(format!("band {} not solved", est.p)))?;
    let (solver, ratio) = match est.quantity {
        Quantity::Width => (band.width, (band.log_width - est.log_exponential).exp()),
        Quantity::EMin | Quantity::EMax => {
            let e = if est.quantity == Quantity::EMin { band.e_min } else { band.e_max };
            (e, (e - est.leading) / est.exponential_term())
        }
        Quantity::Gap => {
            let g = band
                .gap_after
                .ok_or_else(|| Error::UnsupportedRange(format!("gap {} not solved", est.p)))?;
            (g, (g - est.leading) / est.exponential_term())
        }
    };
    Ok(Comparison { estimate: *est, solver, ratio })
}

/// Solve at h and compare one estimate.
pub fn residual_ratio(est: &SemiclassicalEstimate) -> Result<Comparison> {
    let s = solve_band_structure(ScaleParams::from_h(est.h)?, est.p + 1)?;
    compare(est, &s)
}

/// Two-term expansion of 𝐄min^0 for large h: h^{−2/3}(−1/2 − 1/(120h²)).
pub fn ground_state_large_h(h: f64) -> Result<f64> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Domain { what: "h must be positive and finite", value: h });
    }
    Ok(h.powf(-2.0 / 3.0) * (-0.5 - 1.0 / (120.0 * h * h)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_follow_parity() {
        let s = Semiclassics::default();
        let t = zeros::tables(4).unwrap();
        let b = s.validity_bound(Quantity::EMin, 0).unwrap();
        assert!((b - (t.a_tilde(1) + 0.01).powf(-1.5)).abs() < 1e-15);
        let b = s.validity_bound(Quantity::Gap, 0).unwrap();
        assert!((b - (t.a(1) + 0.01).powf(-1.5)).abs() < 1e-15);
        let b = s.validity_bound(Quantity::Width, 1).unwrap();
        assert!((b - t.c(1).powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn width_is_twice_edge_correction() {
        let e = estimate_edge(3, EdgeKind::Max, 0.1).unwrap();
        let w = estimate_width(3, 0.1).unwrap();
        assert!((w.log_exponential - e.log_exponential - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn validity_edges() {
        let s = Semiclassics::default();
        let b = s.validity_bound(Quantity::Width, 0).unwrap();
        assert!(estimate_width(0, b * (1.0 - 1e-12)).is_ok());
        assert!(matches!(estimate_width(0, b), Err(Error::Validity { .. })));
        let loose = Semiclassics { enforce_validity: false, ..s };
        assert!(loose.width(0, 2.0).is_ok());
    }

    #[test]
    fn large_h_limit() {
        let e = ground_state_large_h(1e6).unwrap();
        assert!((e / 1e-4 + 0.5).abs() < 1e-12);
    }
}
