//! Zeros of Ai, Ai′ and of the canonical solutions on the negative axis.
//!
//! All tabulated values are positive: the zero itself sits at −a_j, −ã_j,
//! −c_p or −c̃_p. Indexing follows the band structure:
//!
//! * `a_j`, `ã_j` for j ≥ 1 are the zeros of Ai and Ai′;
//! * `c_{2j}` and `c_{2j+1}` are the zeros of v′ and v, j ≥ 0;
//! * `c̃_{2j}` and `c̃_{2j+1}` are the zeros of u and u′, j ≥ 0.
//!
//! Every zero is bracketed from its phase ξ = (2/3)x^{3/2}, bisected to a
//! narrow interval and polished with two Newton steps.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::airy::airy_eval;
use crate::canonical::canonical_eval;
use crate::error::{Error, Result};

/// Zeros of Ai or of Ai′.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryZeroKind {
    Ai,
    AiPrime,
}

#[derive(Clone, Copy, Debug)]
enum Target {
    Ai,
    AiPrime,
    U,
    UPrime,
    V,
    VPrime,
}

/// Value and x-derivative of F(−x) for the target function F.
fn reflected(target: Target, x: f64) -> Result<(f64, f64)> {
    Ok(match target {
        Target::Ai => {
            let q = airy_eval(-x)?;
            (q.ai, -q.aip)
        }
        Target::AiPrime => {
            let q = airy_eval(-x)?;
            (q.aip, x * q.ai)
        }
        Target::U => {
            let c = canonical_eval(-x)?;
            (c.u, -c.up)
        }
        Target::UPrime => {
            let c = canonical_eval(-x)?;
            (c.up, x * c.u)
        }
        Target::V => {
            let c = canonical_eval(-x)?;
            (c.v, -c.vp)
        }
        Target::VPrime => {
            let c = canonical_eval(-x)?;
            (c.vp, x * c.v)
        }
    })
}

fn from_phase(xi: f64) -> f64 {
    (1.5 * xi).powf(2.0 / 3.0)
}

fn locate(target: Target, xi_lo: f64, xi_hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (from_phase(xi_lo), from_phase(xi_hi));
    let (flo, _) = reflected(target, lo)?;
    let (fhi, _) = reflected(target, hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Consistency(format!(
            "phase bracket [{xi_lo}, {xi_hi}] does not isolate a zero of {target:?}"
        )));
    }
    let slo = flo.signum();
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = reflected(target, mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let (f, df) = reflected(target, x)?;
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if (next - x).abs() > hi - lo {
            break;
        }
        x = next;
    }
    Ok(x)
}

fn a_bracket(j: usize) -> (f64, f64) {
    let centre = (j as f64 - 0.25) * PI;
    (centre - 0.5, centre + 0.5)
}

fn a_tilde_bracket(j: usize) -> (f64, f64) {
    let centre = (j as f64 - 0.75) * PI;
    ((centre - 0.5).max(0.05), centre + 0.5)
}

/// Phase interval known to contain ξ_p (`tilde = false`) or ξ̃_p (`tilde = true`).
pub fn phase_bracket(p: usize, tilde: bool) -> (f64, f64) {
    let base = (p / 2) as f64 * PI;
    let (lo, hi) = match (p % 2, tilde) {
        (0, false) => (PI / 3.0, PI / 2.0),
        (0, true) => (PI / 2.0, 2.0 * PI / 3.0),
        (_, false) => (5.0 * PI / 6.0, PI),
        (_, true) => (PI, 7.0 * PI / 6.0),
    };
    (base + lo, base + hi)
}

fn c_target(p: usize, tilde: bool) -> Target {
    match (p % 2, tilde) {
        (0, false) => Target::VPrime,
        (_, false) => Target::V,
        (0, true) => Target::U,
        (_, true) => Target::UPrime,
    }
}

/// Location a_j (or ã_j) of the j-th zero of Ai (or Ai′); the zero is at −a_j.
pub fn airy_zero(kind: AiryZeroKind, j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain { what: "Airy zeros are indexed from 1", value: 0.0 });
    }
    let ((lo, hi), target) = match kind {
        AiryZeroKind::Ai => (a_bracket(j), Target::Ai),
        AiryZeroKind::AiPrime => (a_tilde_bracket(j), Target::AiPrime),
    };
    locate(target, lo, hi)
}

/// c_p (`tilde = false`) or c̃_p (`tilde = true`) computed on its own, without the table.
pub fn canonical_zero(p: usize, tilde: bool) -> Result<f64> {
    let (lo, hi) = phase_bracket(p, tilde);
    locate(c_target(p, tilde), lo, hi)
}

/// Zero tables up to a maximal band index.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroTables {
    max_index: usize,
    a: Vec<f64>,
    a_tilde: Vec<f64>,
    c: Vec<f64>,
    c_tilde: Vec<f64>,
}

impl ZeroTables {
    /// Compute c_p, c̃_p for p ≤ `max_index` and enough Airy zeros to interleave them.
    pub fn build(max_index: usize) -> Result<Self> {
        let n_airy = max_index / 2 + 2;
        let a = (1..=n_airy)
            .into_par_iter()
            .map(|j| airy_zero(AiryZeroKind::Ai, j))
            .collect::<Result<Vec<_>>>()?;
        let a_tilde = (1..=n_airy)
            .into_par_iter()
            .map(|j| airy_zero(AiryZeroKind::AiPrime, j))
            .collect::<Result<Vec<_>>>()?;
        let c = (0..=max_index)
            .into_par_iter()
            .map(|p| canonical_zero(p, false))
            .collect::<Result<Vec<_>>>()?;
        let c_tilde = (0..=max_index)
            .into_par_iter()
            .map(|p| canonical_zero(p, true))
            .collect::<Result<Vec<_>>>()?;
        let t = ZeroTables { max_index, a, a_tilde, c, c_tilde };
        t.check_interlacing()?;
        Ok(t)
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// Number of tabulated Airy zeros of each kind.
    pub fn airy_count(&self) -> usize {
        self.a.len()
    }

    /// a_j, j ≥ 1.
    pub fn a(&self, j: usize) -> f64 {
        self.a[j - 1]
    }

    /// ã_j, j ≥ 1.
    pub fn a_tilde(&self, j: usize) -> f64 {
        self.a_tilde[j - 1]
    }

    pub fn c(&self, p: usize) -> f64 {
        self.c[p]
    }

    pub fn c_tilde(&self, p: usize) -> f64 {
        self.c_tilde[p]
    }

    /// ξ_p = (2/3)c_p^{3/2}.
    pub fn xi(&self, p: usize) -> f64 {
        2.0 / 3.0 * self.c[p].powf(1.5)
    }

    /// ξ̃_p = (2/3)c̃_p^{3/2}.
    pub fn xi_tilde(&self, p: usize) -> f64 {
        2.0 / 3.0 * self.c_tilde[p].powf(1.5)
    }

    /// 𝔞_p: ã_{j+1} for p = 2j and a_{j+1} for p = 2j+1.
    pub fn frak_a(&self, p: usize) -> f64 {
        let j = p / 2;
        if p % 2 == 0 {
            self.a_tilde(j + 1)
        } else {
            self.a(j + 1)
        }
    }

    pub fn c_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn c_tilde_slice(&self) -> &[f64] {
        &self.c_tilde
    }

    /// Check ã_{j+1} < c_{2j} < c̃_{2j} < a_{j+1} < c_{2j+1} < c̃_{2j+1} < ã_{j+2}.
    pub fn check_interlacing(&self) -> Result<()> {
        for p in 0..=self.max_index {
            let j = p / 2;
            let (lower, upper) = if p % 2 == 0 {
                (self.a_tilde(j + 1), self.a(j + 1))
            } else {
                (self.a(j + 1), self.a_tilde(j + 2))
            };
            let ok = lower < self.c[p] && self.c[p] < self.c_tilde[p] && self.c_tilde[p] < upper;
            if !ok {
                return Err(Error::Consistency(format!(
                    "interlacing fails at p = {p}: {lower} < {} < {} < {upper}",
                    self.c[p], self.c_tilde[p]
                )));
            }
        }
        Ok(())
    }
}

static CACHE: OnceLock<Mutex<Option<Arc<ZeroTables>>>> = OnceLock::new();

/// Shared tables covering at least `max_index`; grown on demand and reused.
pub fn tables(max_index: usize) -> Result<Arc<ZeroTables>> {
    let cell = CACHE.get_or_init(|| Mutex::new(None));
    let mut slot = cell.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = slot.as_ref() {
        if t.max_index >= max_index {
            return Ok(Arc::clone(t));
        }
    }
    let previous = slot.as_ref().map_or(0, |t| t.max_index);
    let n = max_index.max(2 * previous).max(32);
    let t = Arc::new(ZeroTables::build(n)?);
    *slot = Some(Arc::clone(&t));
    Ok(t)
}

/// A band index p with c̃_p > x, for x ≥ 0.
pub fn index_above(x: f64) -> usize {
    if !(x > 0.0) {
        return 1;
    }
    let xi = 2.0 / 3.0 * x.powf(1.5);
    (2.0 * xi / PI).ceil() as usize + 1
}

/// Large-index behaviour of c_p and of the gap c̃_p − c_p.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZeroAsymptotics {
    pub p: usize,
    /// (3pπ/4)^{2/3}.
    pub c_estimate: f64,
    /// (π/(9√2))^{2/3}·p^{−1/3}; infinite at p = 0.
    pub gap_estimate: f64,
    /// Interval guaranteed to contain ξ_p.
    pub xi_interval: (f64, f64),
    /// Interval guaranteed to contain ξ̃_p.
    pub xi_tilde_interval: (f64, f64),
}

pub fn zero_asymptotics(p: usize) -> ZeroAsymptotics {
    let pf = p as f64;
    let j = (p / 2) as f64;
    let (xi_interval, xi_tilde_interval) = if p % 2 == 0 {
        let w = 7.0 / (12.0 * (j * PI + PI / 3.0));
        let wt = 5.0 / (36.0 * (j * PI + PI / 2.0));
        let m = 5.0 * PI / 12.0 + j * PI;
        let mt = 7.0 * PI / 12.0 + j * PI;
        ((m - w, m + w), (mt - wt, mt + wt))
    } else {
        let w = 5.0 / (36.0 * (j * PI + 5.0 * PI / 6.0));
        let wt = 7.0 / (12.0 * (j + 1.0) * PI);
        let m = 11.0 * PI / 12.0 + j * PI;
        let mt = 13.0 * PI / 12.0 + j * PI;
        ((m - w, m + w), (mt - wt, mt + wt))
    };
    let gap_constant = (PI / (9.0 * 2f64.sqrt())).powf(2.0 / 3.0);
    ZeroAsymptotics {
        p,
        c_estimate: (0.75 * pf * PI).powf(2.0 / 3.0),
        gap_estimate: if p == 0 { f64::INFINITY } else { gap_constant * pf.powf(-1.0 / 3.0) },
        xi_interval,
        xi_tilde_interval,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_airy_zeros() {
        let a1 = airy_zero(AiryZeroKind::Ai, 1).unwrap();
        let at1 = airy_zero(AiryZeroKind::AiPrime, 1).unwrap();
        assert!((a1 - 2.338_107_410_459_767).abs() < 1e-13);
        assert!((at1 - 1.018_792_971_647_471).abs() < 1e-13);
        assert!(airy_zero(AiryZeroKind::Ai, 0).is_err());
    }

    #[test]
    fn first_canonical_zeros() {
        let t = ZeroTables::build(3).unwrap();
        assert!((t.c(0) - 1.514_906_050_296_654_6).abs() < 1e-13);
        assert!((t.c_tilde(0) - 1.986_352_707_430_472_8).abs() < 1e-13);
        assert!((t.c(1) - 2.666_352_690_406_938).abs() < 1e-13);
        assert!((t.c_tilde(1) - 2.948_689_693_937_341).abs() < 1e-13);
    }

    #[test]
    fn cache_grows() {
        let small = tables(4).unwrap();
        let big = tables(small.max_index() + 10).unwrap();
        assert!(big.max_index() >= small.max_index() + 10);
        assert_eq!(small.c(4), big.c(4));
    }

    #[test]
    fn index_above_covers() {
        let t = tables(40).unwrap();
        for &x in &[0.0, 0.5, 2.0, 7.3, 15.0] {
            let p = index_above(x);
            assert!(t.c_tilde(p) > x, "x = {x}, p = {p}");
        }
    }
}
