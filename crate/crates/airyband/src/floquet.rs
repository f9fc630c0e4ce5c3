//! Independent check of the band edges by direct integration of
//! −φ″ + (|y| − c)φ = 𝐄φ over one period, with no Airy functions involved.
//!
//! The potential is even about y = 0, so the half-cell solutions y1 (even)
//! and y2 (odd) on [0, c] determine the discriminant:
//! Δ − 2 = 4·y1′(c)·y2(c) and Δ + 2 = 4·y1(c)·y2′(c).
//! Each factor vanishes on one of the four edge families, which lets edges
//! be refined by bisection on a single factor even when Δ ∓ 2 has a near
//! double root.

use rayon::prelude::*;
use serde::Serialize;

use crate::bands::EdgeEquation;
use crate::error::{Error, Result};
use crate::roots::{bisect, sign};

/// Refined bracket width for oracle edges.
pub const EDGE_RESOLUTION: f64 = 1e-9;

/// How the integrator chooses its steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stepping {
    /// Embedded 5(4) error control with this tolerance.
    Adaptive(f64),
    /// This many equal steps on every smooth piece.
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct StepStats {
    pub steps: usize,
    pub rejected: usize,
    /// Largest accepted local error estimate, relative to the state norm.
    pub error_estimate: f64,
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [f64; 4];

/// Two solutions carried together: (φ1, φ1′, φ2, φ2′), φ″ = w(y)·φ.
fn rhs(w: f64, s: &State) -> State {
    [s[1], w * s[0], s[3], w * s[2]]
}

fn axpy(s: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *s;
    for (a, k) in terms {
        for i in 0..4 {
            out[i] += h * a * k[i];
        }
    }
    out
}

fn norm(s: &State) -> f64 {
    s.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// One Dormand–Prince step; returns the 5th-order state, the error vector and the last stage.
fn dp_step(w: &impl Fn(f64) -> f64, t: f64, s: &State, k1: &State, h: f64) -> (State, State, State) {
    let k2 = rhs(w(t + C2 * h), &axpy(s, h, &[(A21, k1)]));
    let k3 = rhs(w(t + C3 * h), &axpy(s, h, &[(A31, k1), (A32, &k2)]));
    let k4 = rhs(w(t + C4 * h), &axpy(s, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = rhs(w(t + C5 * h), &axpy(s, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
    let k6 = rhs(
        w(t + h),
        &axpy(s, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    );
    let y = axpy(s, h, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = rhs(w(t + h), &y);
    let mut err = [0.0; 4];
    for i in 0..4 {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    (y, err, k7)
}

/// Integrate over one smooth piece [t0, t1] of the coefficient w.
fn integrate_piece(
    w: &impl Fn(f64) -> f64,
    t0: f64,
    t1: f64,
    mut s: State,
    mode: Stepping,
    stats: &mut StepStats,
) -> Result<State> {
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(s);
    }
    match mode {
        Stepping::Fixed(n) => {
            let h = span / n.max(1) as f64;
            for i in 0..n.max(1) {
                let t = t0 + i as f64 * h;
                let k1 = rhs(w(t), &s);
                s = dp_step(w, t, &s, &k1, h).0;
                stats.steps += 1;
            }
            Ok(s)
        }
        Stepping::Adaptive(tol) => {
            let mut t = t0;
            let mut h = span.abs().min(0.05) * span.signum();
            let mut k1 = rhs(w(t), &s);
            loop {
                let remaining = t1 - t;
                if remaining.abs() <= 4.0 * f64::EPSILON * t1.abs().max(1.0) {
                    return Ok(s);
                }
                if h.abs() >= remaining.abs() {
                    h = remaining;
                }
                if h.abs() < 1e-14 * span.abs() {
                    return Err(Error::Integration { y: t, reason: "step size underflow".into() });
                }
                let (y, err, k7) = dp_step(w, t, &s, &k1, h);
                let scale = tol * norm(&s).max(norm(&y)).max(1e-300);
                let e = norm(&err) / scale;
                if !e.is_finite() {
                    return Err(Error::Integration { y: t, reason: "non-finite state".into() });
                }
                if e <= 1.0 {
                    // The final step may be clipped to land on t1; keep the
                    // reached point exact there.
                    t = if h == remaining { t1 } else { t + h };
                    s = y;
                    k1 = k7;
                    stats.steps += 1;
                    stats.error_estimate = stats.error_estimate.max(e * tol);
                    let fac = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
                    h *= fac;
                } else {
                    stats.rejected += 1;
                    h *= (0.9 * e.powf(-0.2)).clamp(0.2, 1.0);
                }
            }
        }
    }
}

fn check_args(c: f64, e: f64, mode: Stepping) -> Result<()> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain { what: "c must be positive and finite", value: c });
    }
    if !e.is_finite() {
        return Err(Error::Domain { what: "energy must be finite", value: e });
    }
    match mode {
        Stepping::Adaptive(tol) if !(1e-13..=1e-6).contains(&tol) => {
            Err(Error::Domain { what: "tol must lie in [1e-13, 1e-6]", value: tol })
        }
        Stepping::Fixed(0) => Err(Error::Domain { what: "fixed stepping needs at least one step", value: 0.0 }),
        _ => Ok(()),
    }
}

/// Periodic potential |y| − c folded into [−c, c].
fn potential(c: f64, y: f64) -> f64 {
    let r = (y + c).rem_euclid(2.0 * c) - c;
    r.abs() - c
}

/// Integrate the pair from `start` over one period, stopping at every kink.
fn propagate(c: f64, e: f64, start: f64, s: State, mode: Stepping) -> Result<(State, StepStats)> {
    let w = |y: f64| potential(c, y) - e;
    let end = start + 2.0 * c;
    let mut cuts = vec![start];
    let mut k = (start / c).floor() + 1.0;
    while k * c < end - 1e-14 * c {
        cuts.push(k * c);
        k += 1.0;
    }
    cuts.push(end);
    let mut stats = StepStats::default();
    let mut s = s;
    for pair in cuts.windows(2) {
        s = integrate_piece(&w, pair[0], pair[1], s, mode, &mut stats)?;
    }
    Ok((s, stats))
}

/// One-period monodromy matrix in rescaled units.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Monodromy {
    pub e_rescaled: f64,
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    pub discriminant: f64,
    pub step_count: usize,
    pub error_estimate: f64,
}

impl Monodromy {
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }
}

/// Monodromy over [start, start + 2c] with unit initial data.
pub fn monodromy_from(c: f64, e: f64, start: f64, mode: Stepping) -> Result<Monodromy> {
    check_args(c, e, mode)?;
    let (s, st) = propagate(c, e, start, [1.0, 0.0, 0.0, 1.0], mode)?;
    Ok(Monodromy {
        e_rescaled: e,
        m11: s[0],
        m21: s[1],
        m12: s[2],
        m22: s[3],
        discriminant: s[0] + s[3],
        step_count: st.steps,
        error_estimate: st.error_estimate,
    })
}

/// Monodromy over the period [−c, c].
pub fn monodromy(c: f64, e: f64, tol: f64) -> Result<Monodromy> {
    monodromy_from(c, e, -c, Stepping::Adaptive(tol))
}

/// Even and odd solutions at the cell edge y = c.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HalfCell {
    pub e: f64,
    pub y1: f64,
    pub y1p: f64,
    pub y2: f64,
    pub y2p: f64,
}

impl HalfCell {
    pub fn discriminant(&self) -> f64 {
        2.0 + 4.0 * self.y1p * self.y2
    }

    /// Δ − 2 for `family = +2`, Δ + 2 for `family = −2`, as products.
    pub fn shifted(&self, family: f64) -> f64 {
        if family > 0.0 {
            4.0 * self.y1p * self.y2
        } else {
            4.0 * self.y1 * self.y2p
        }
    }

    /// The factor that vanishes on edges solving `eq`.
    pub fn factor(&self, eq: EdgeEquation) -> f64 {
        match eq {
            EdgeEquation::DerivDeriv => self.y1p,
            EdgeEquation::ValueValue => self.y2,
            EdgeEquation::DerivValue => self.y1,
            EdgeEquation::ValueDeriv => self.y2p,
        }
    }
}

/// Integrate the even and odd solutions over [0, c].
pub fn half_cell(c: f64, e: f64, mode: Stepping) -> Result<HalfCell> {
    check_args(c, e, mode)?;
    let w = |y: f64| y - c - e;
    let mut st = StepStats::default();
    let s = integrate_piece(&w, 0.0, c, [1.0, 0.0, 0.0, 1.0], mode, &mut st)?;
    Ok(HalfCell { e, y1: s[0], y1p: s[1], y2: s[2], y2p: s[3] })
}

/// One refined |Δ| = 2 crossing.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OracleEdge {
    pub energy: f64,
    pub bracket: (f64, f64),
    /// +2 or −2.
    pub family: f64,
    pub equation: EdgeEquation,
    /// Two crossings of one family closer than the resolution, reported once.
    pub degenerate_crossing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantScan {
    pub c: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub edge_brackets: Vec<OracleEdge>,
}

impl DiscriminantScan {
    /// Crossings inside [lo, hi], degenerate pairs counted once.
    pub fn edges_in(&self, lo: f64, hi: f64) -> Vec<&OracleEdge> {
        self.edge_brackets.iter().filter(|e| e.energy >= lo && e.energy <= hi).collect()
    }
}

fn refine(c: f64, eq: EdgeEquation, lo: f64, hi: f64, tol: f64) -> Result<OracleEdge> {
    let mode = Stepping::Adaptive(tol);
    let f = |e: f64| half_cell(c, e, mode).map(|h| h.factor(eq));
    let (flo, fhi) = (f(lo)?, f(hi)?);
    let root = refine_factor(&f, lo, hi, flo, fhi)?;
    Ok(OracleEdge {
        energy: root.0,
        bracket: (root.1, root.2),
        family: eq.discriminant(),
        equation: eq,
        degenerate_crossing: false,
    })
}

fn refine_factor(
    f: &impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    flo: f64,
    fhi: f64,
) -> Result<(f64, f64, f64)> {
    if flo == 0.0 {
        return Ok((lo, lo, lo));
    }
    if fhi == 0.0 {
        return Ok((hi, hi, hi));
    }
    let slo = sign(flo);
    if slo == sign(fhi) {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > EDGE_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, mid, mid));
        }
        if sign(fm) == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), lo, hi))
}

/// Sample Δ on a uniform grid and refine every crossing of each factor.
pub fn scan_discriminant(c: f64, range: (f64, f64), n: usize, tol: f64) -> Result<DiscriminantScan> {
    if n < 16 {
        return Err(Error::Domain { what: "scan needs at least 16 samples", value: n as f64 });
    }
    let (lo, hi) = range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || lo < -c - 5.0 {
        return Err(Error::Domain { what: "scan range must be finite, ordered and above −c − 5", value: lo });
    }
    let mode = Stepping::Adaptive(tol);
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let cells: Vec<HalfCell> = grid.par_iter().map(|&e| half_cell(c, e, mode)).collect::<Result<_>>()?;
    let values = cells.iter().map(HalfCell::discriminant).collect();

    let mut jobs = Vec::new();
    for eq in EdgeEquation::ALL {
        for i in 0..n - 1 {
            let (a, b) = (cells[i].factor(eq), cells[i + 1].factor(eq));
            // A sample landing exactly on a root is attributed to the interval on its right.
            if a == 0.0 || (b != 0.0 && sign(a) != sign(b)) {
                jobs.push((eq, grid[i], grid[i + 1]));
            }
        }
    }
    let mut edges: Vec<OracleEdge> =
        jobs.par_iter().map(|&(eq, a, b)| refine(c, eq, a, b, tol)).collect::<Result<_>>()?;
    edges.sort_by(|a, b| a.energy.total_cmp(&b.energy));

    let mut merged: Vec<OracleEdge> = Vec::with_capacity(edges.len());
    for e in edges {
        if let Some(last) = merged.last_mut() {
            if last.family == e.family && e.energy - last.energy < EDGE_RESOLUTION {
                last.degenerate_crossing = true;
                last.bracket = (last.bracket.0.min(e.bracket.0), last.bracket.1.max(e.bracket.1));
                last.energy = 0.5 * (last.bracket.0 + last.bracket.1);
                continue;
            }
        }
        merged.push(e);
    }
    Ok(DiscriminantScan { c, grid, values, edge_brackets: merged })
}

/// Locate the crossing Δ = `family` (±2) inside a bracket.
pub fn oracle_edge(c: f64, bracket: (f64, f64), family: f64, tol: f64) -> Result<f64> {
    if family.abs() != 2.0 {
        return Err(Error::Domain { what: "family must be +2 or -2", value: family });
    }
    let mode = Stepping::Adaptive(tol);
    let f = |e: f64| half_cell(c, e, mode).map(|h| h.shifted(family));
    let (lo, hi) = bracket;
    let r = bisect(f, lo, hi, sign(f(lo)?), sign(f(hi)?), EDGE_RESOLUTION)?;
    Ok(r)
}

/// One solver edge next to the oracle edge at the same sorted position.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EdgePair {
    pub solver: f64,
    pub oracle: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pairing {
    pub c: f64,
    pub solver_count: usize,
    pub oracle_count: usize,
    pub pairs: Vec<EdgePair>,
    pub max_deviation: f64,
}

/// Pair solver edges in [−c, 0] with oracle edges by position.
///
/// Oracle edges within `slack` outside the window are admitted so that an
/// edge sitting on the boundary is not lost to rounding.
pub fn pair_edges(c: f64, solver: &[f64], scan: &DiscriminantScan, slack: f64) -> Pairing {
    let mut s: Vec<f64> = solver.iter().copied().filter(|&e| e >= -c && e <= 0.0).collect();
    s.sort_by(f64::total_cmp);
    let mut o: Vec<f64> = scan
        .edge_brackets
        .iter()
        .filter(|e| e.energy >= -c - slack && e.energy <= slack)
        .flat_map(|e| {
            // A degenerate bracket stands for two edges.
            let k = if e.degenerate_crossing { 2 } else { 1 };
            std::iter::repeat(e.energy).take(k)
        })
        .collect();
    o.sort_by(f64::total_cmp);
    let pairs: Vec<EdgePair> =
        s.iter().zip(o.iter()).map(|(&a, &b)| EdgePair { solver: a, oracle: b }).collect();
    let max_deviation = if s.len() == o.len() {
        pairs.iter().fold(0.0_f64, |m, p| m.max((p.solver - p.oracle).abs()))
    } else {
        f64::INFINITY
    };
    Pairing { c, solver_count: s.len(), oracle_count: o.len(), pairs, max_deviation }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_determinant() {
        for &(c, e) in &[(2.0, -1.0), (5.0, -4.5), (10.0, -0.3), (0.5, 3.0)] {
            let m = monodromy(c, e, 1e-12).unwrap();
            let scale = ((m.m11 * m.m22).abs() + (m.m12 * m.m21).abs()).max(1.0);
            assert!((m.det() - 1.0).abs() < 1e-10 * scale, "c={c} e={e} det={}", m.det());
        }
    }

    #[test]
    fn half_cell_matches_full_period() {
        let m = monodromy(3.0, -1.3, 1e-12).unwrap();
        let h = half_cell(3.0, -1.3, Stepping::Adaptive(1e-12)).unwrap();
        assert!((m.discriminant - h.discriminant()).abs() < 1e-9 * m.discriminant.abs().max(1.0));
        assert!((h.y1 * h.y2p - h.y1p * h.y2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn below_potential_is_a_gap() {
        let m = monodromy(2.0, -2.5, 1e-10).unwrap();
        assert!(m.discriminant.abs() > 2.0);
    }

    #[test]
    fn start_point_does_not_change_trace() {
        let a = monodromy_from(2.5, -0.7, -2.5, Stepping::Adaptive(1e-12)).unwrap();
        let b = monodromy_from(2.5, -0.7, 0.9, Stepping::Adaptive(1e-12)).unwrap();
        assert!((a.discriminant - b.discriminant).abs() < 1e-9);
    }

    #[test]
    fn argument_checks() {
        assert!(monodromy(-1.0, 0.0, 1e-10).is_err());
        assert!(monodromy(1.0, 0.0, 1e-3).is_err());
        assert!(scan_discriminant(1.0, (-1.0, 0.0), 8, 1e-10).is_err());
        assert!(oracle_edge(2.0, (-1.0, 0.0), 1.0, 1e-10).is_err());
    }
}
