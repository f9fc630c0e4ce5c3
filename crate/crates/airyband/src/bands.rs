//! Band edges of the rescaled operator −φ″ + (|y| − c)φ on the circle of
//! length 2c.
//!
//! With x = −𝐄 and z = −c − 𝐄 every band edge solves one of four product
//! equations in the canonical solutions, for instance
//! u′(z)v′(x) − v′(z)u′(x) = 0. They are evaluated here in the equivalent
//! form Ai′(z)u′(x) − u′(z)Ai′(x) (the two differ by the factor 2√3πAi(0)),
//! which keeps the exponentially small part Ai(x) separate from the
//! growing part u(x).
//!
//! Edges inside the potential range [−c, 0] are bracketed between a zero of
//! Ai or Ai′ and a zero c_p or c̃_p, where the edge is unique. Edges above
//! the range are located by a phase-controlled scan of the four factors.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::canonical::{joint, joint_scaled, Joint};
use crate::error::{Error, Result};
use crate::roots::{bisect, sign};
use crate::zeros::{canonical_zero, index_above, tables, ZeroTables};

/// Physical constants ħ, m, V₀, L₀ of the triangular potential.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub v0: f64,
    pub l0: f64,
}

/// Semiclassical parameter h, counting parameter c = h^{−2/3} and energy scale θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaleParams {
    pub h: f64,
    pub c: f64,
    /// 𝐄 = θE. Equal to 1 when no physical constants are attached.
    pub theta: f64,
    pub physical: Option<PhysicalConstants>,
}

impl ScaleParams {
    pub fn from_c(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain { what: "c must be positive and finite", value: c });
        }
        Ok(ScaleParams { h: c.powf(-1.5), c, theta: 1.0, physical: None })
    }

    pub fn from_h(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Domain { what: "h must be positive and finite", value: h });
        }
        Ok(ScaleParams { h, c: h.powf(-2.0 / 3.0), theta: 1.0, physical: None })
    }

    /// θ = (2mL₀²/(ħ²V₀²))^{1/3} and c = θV₀.
    pub fn from_physical(k: PhysicalConstants) -> Result<Self> {
        let all = [k.hbar, k.mass, k.v0, k.l0];
        if all.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Conversion(format!(
                "physical constants must be positive and finite, got {all:?}"
            )));
        }
        let theta = (2.0 * k.mass * k.l0 * k.l0 / (k.hbar * k.hbar * k.v0 * k.v0)).cbrt();
        let c = theta * k.v0;
        Ok(ScaleParams { h: c.powf(-1.5), c, theta, physical: Some(k) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Min,
    Max,
}

/// The four edge equations, named by which of the value or derivative of the
/// canonical pair enters at z and at x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeEquation {
    /// u′(z)v′(x) − v′(z)u′(x) = 0.
    DerivDeriv,
    /// u(z)v(x) − v(z)u(x) = 0.
    ValueValue,
    /// u′(z)v(x) − v′(z)u(x) = 0.
    DerivValue,
    /// u(z)v′(x) − v(z)u′(x) = 0.
    ValueDeriv,
}

impl EdgeEquation {
    pub const ALL: [EdgeEquation; 4] = [
        EdgeEquation::DerivDeriv,
        EdgeEquation::ValueValue,
        EdgeEquation::DerivValue,
        EdgeEquation::ValueDeriv,
    ];

    /// Equation solved by an edge inside the potential range.
    pub fn for_edge(p: usize, kind: EdgeKind) -> Self {
        match (kind, p % 2) {
            (EdgeKind::Min, 0) => EdgeEquation::DerivDeriv,
            (EdgeKind::Min, _) => EdgeEquation::ValueDeriv,
            (EdgeKind::Max, 0) => EdgeEquation::DerivValue,
            (EdgeKind::Max, _) => EdgeEquation::ValueValue,
        }
    }

    /// Value of the Floquet discriminant on the roots of this equation.
    pub fn discriminant(self) -> f64 {
        match self {
            EdgeEquation::DerivDeriv | EdgeEquation::ValueValue => 2.0,
            _ => -2.0,
        }
    }

    fn z_deriv(self) -> bool {
        matches!(self, EdgeEquation::DerivDeriv | EdgeEquation::DerivValue)
    }

    fn x_deriv(self) -> bool {
        matches!(self, EdgeEquation::DerivDeriv | EdgeEquation::ValueDeriv)
    }
}

struct XSide {
    zeta: f64,
    j: Joint,
}

/// x-side values, scaled by e^{±ζ(x)} for x > 1.
fn x_side(x: f64) -> Result<XSide> {
    if x > 1.0 {
        let (zeta, j) = joint_scaled(x)?;
        Ok(XSide { zeta, j })
    } else {
        Ok(XSide { zeta: 0.0, j: joint(x)? })
    }
}

fn envelope(value: f64, deriv: f64, t: f64, is_deriv: bool) -> f64 {
    let s = t.abs().max(1.0).sqrt();
    if is_deriv {
        deriv.hypot(value * s)
    } else {
        value.hypot(deriv / s)
    }
}

fn combine(eq: EdgeEquation, z: f64, zs: &Joint, xs: &XSide) -> (f64, f64) {
    let e2 = (-2.0 * xs.zeta).exp();
    let (az, uz) = if eq.z_deriv() { (zs.aip, zs.up) } else { (zs.ai, zs.u) };
    let (bx, ax) = if eq.x_deriv() { (xs.j.up, xs.j.aip) } else { (xs.j.u, xs.j.ai) };
    let t1 = az * bx;
    let t2 = uz * ax * e2;
    let env_a = envelope(zs.ai, zs.aip, z, eq.z_deriv());
    let env_u = envelope(zs.u, zs.up, z, eq.z_deriv());
    (t1 - t2, env_a * bx.abs() + env_u * (ax * e2).abs())
}

/// Edge equation at (z, x) in Ai form, divided by e^{ζ(x)} when x > 1,
/// together with the magnitude its rounding error should be measured against.
pub fn edge_factor(eq: EdgeEquation, z: f64, x: f64) -> Result<(f64, f64)> {
    let zs = joint(z)?;
    let xs = x_side(x)?;
    Ok(combine(eq, z, &zs, &xs))
}

/// |F| / magnitude for the edge equation along z = −c − 𝐄, x = −𝐄.
pub fn edge_residual(eq: EdgeEquation, c: f64, e: f64) -> Result<f64> {
    let (v, m) = edge_factor(eq, -c - e, -e)?;
    Ok(if m == 0.0 { v.abs() } else { v.abs() / m })
}

const NOISE: f64 = 64.0 * f64::EPSILON;

enum EndSign {
    Sign(f64),
    Root,
}

fn evaluated_sign(eq: EdgeEquation, z: f64, x: f64) -> Result<EndSign> {
    let (v, m) = edge_factor(eq, z, x)?;
    if v.abs() <= NOISE * m {
        Ok(EndSign::Root)
    } else {
        Ok(EndSign::Sign(sign(v)))
    }
}

/// Sign of the factor at z = −𝔞 where the z-side Airy factor vanishes: −U(−𝔞)·A(x).
fn airy_end_sign(eq: EdgeEquation, frak: f64, x: f64) -> Result<f64> {
    let zs = joint(-frak)?;
    let uz = if eq.z_deriv() { zs.up } else { zs.u };
    let xs = x_side(x)?;
    let ax = if eq.x_deriv() { xs.j.aip } else { xs.j.ai };
    Ok(-sign(uz) * sign(ax))
}

fn solve_z(eq: EdgeEquation, x: f64, lo: (f64, Option<f64>), hi: (f64, Option<f64>)) -> Result<f64> {
    let end = |z: f64, known: Option<f64>| -> Result<EndSign> {
        match known {
            Some(s) => Ok(EndSign::Sign(s)),
            None => evaluated_sign(eq, z, x),
        }
    };
    let s_lo = match end(lo.0, lo.1)? {
        EndSign::Root => return Ok(lo.0),
        EndSign::Sign(s) => s,
    };
    let s_hi = match end(hi.0, hi.1)? {
        EndSign::Root => return Ok(hi.0),
        EndSign::Sign(s) => s,
    };
    if s_lo == s_hi {
        return Err(Error::Consistency(format!(
            "{eq:?} has no sign change on z ∈ [{}, {}] at x = {x}",
            lo.0, hi.0
        )));
    }
    bisect(|z| Ok(edge_factor(eq, z, x)?.0), lo.0, hi.0, s_lo, s_hi, 0.0)
}

fn check_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain { what: "ψ functions need finite x ≥ 0", value: x });
    }
    Ok(())
}

/// ψ_k(x): the root z ∈ [−c_k, −𝔞_k) of the upper-edge equation of band k at fixed x.
pub fn psi_lower(k: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    let t = tables(k + 1)?;
    let eq = EdgeEquation::for_edge(k, EdgeKind::Max);
    let frak = t.frak_a(k);
    let s = airy_end_sign(eq, frak, x)?;
    solve_z(eq, x, (-t.c(k), None), (-frak, Some(s)))
}

/// ψ^k(x): the root z ∈ (−𝔞_{k+1}, −c̃_k] of the lower-edge equation of band k + 1 at fixed x.
pub fn psi_upper(k: usize, x: f64) -> Result<f64> {
    check_x(x)?;
    let t = tables(k + 2)?;
    let eq = EdgeEquation::for_edge(k + 1, EdgeKind::Min);
    let frak = t.frak_a(k + 1);
    let s = airy_end_sign(eq, frak, x)?;
    solve_z(eq, x, (-frak, Some(s)), (-t.c_tilde(k), None))
}

/// ψ(x): the root z ∈ (−ã₁, 0) of the ground-state equation at fixed x > 0.
pub fn psi_ground(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain { what: "ψ needs finite x > 0", value: x });
    }
    let t = tables(1)?;
    let eq = EdgeEquation::DerivDeriv;
    let frak = t.a_tilde(1);
    let s = airy_end_sign(eq, frak, x)?;
    solve_z(eq, x, (-frak, Some(s)), (0.0, None))
}

/// A computed band edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandEdge {
    pub p: usize,
    pub kind: EdgeKind,
    /// Rescaled energy 𝐄.
    pub energy: f64,
    pub equation: EdgeEquation,
    /// Interval in 𝐄 known to contain the edge.
    pub bracket: (f64, f64),
    /// Inside [−c, 0] and obtained from the certified brackets.
    pub in_range: bool,
    pub residual: f64,
}

/// One spectral band with its width and the gap above it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Band {
    pub p: usize,
    pub e_min: f64,
    pub e_max: f64,
    /// δ_p; may underflow to 0 for very deep bands, see `log_width`.
    pub width: f64,
    /// ln δ_p, finite even when the width is below the f64 range.
    pub log_width: f64,
    /// γ_p = 𝐄min^{p+1} − 𝐄max^p.
    pub gap_after: Option<f64>,
    /// The two edges are closer than the resolution of the root solve.
    pub collapsed_at_precision: bool,
    pub in_range: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BandStructure {
    pub params: ScaleParams,
    /// 𝐄min^0, 𝐄max^0, 𝐄min^1, … in increasing order.
    pub edges: Vec<BandEdge>,
    pub bands: Vec<Band>,
    pub k0: Option<usize>,
    pub p0: Option<usize>,
    pub density: Option<f64>,
    /// c lies within 1e−9 of a tabulated difference c̃_q − c̃_r.
    pub near_excluded_set: bool,
}

impl BandStructure {
    pub fn widths(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.width).collect()
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.bands.iter().filter_map(|b| b.gap_after).collect()
    }

    pub fn edge(&self, p: usize, kind: EdgeKind) -> Option<&BandEdge> {
        let i = 2 * p + usize::from(kind == EdgeKind::Max);
        self.edges.get(i)
    }

    /// Number of bands contained in [−c, 0].
    pub fn bands_in_range(&self) -> usize {
        self.bands.iter().filter(|b| b.in_range && b.e_max <= 0.0).count()
    }
}

/// Above-range edges beyond this count are not computed.
pub const ABOVE_RANGE_LIMIT: usize = 64;

/// Solve an in-range edge, or return None if it lies above the range.
fn in_range_edge(t: &ZeroTables, c: f64, p: usize, kind: EdgeKind) -> Result<Option<BandEdge>> {
    let eq = EdgeEquation::for_edge(p, kind);
    let frak = t.frak_a(p);
    // (E, known sign) at each end; z = −c − E, x = −E.
    let (lo, hi, snapped) = match (kind, p) {
        (EdgeKind::Min, 0) => {
            let lo = (-c, None);
            if c > frak {
                let s = airy_end_sign(eq, frak, c - frak)?;
                (lo, (-c + frak, Some(s)), None)
            } else {
                (lo, (0.0, None), None)
            }
        }
        (EdgeKind::Min, _) => {
            let ct = t.c_tilde(p - 1);
            if c < ct {
                return Ok(None);
            }
            let snap = (c == ct).then_some(0.0);
            let lo = (-c + ct, None);
            if c > frak {
                let s = airy_end_sign(eq, frak, c - frak)?;
                (lo, (-c + frak, Some(s)), snap)
            } else {
                (lo, (0.0, None), snap)
            }
        }
        (EdgeKind::Max, _) => {
            let cp = t.c(p);
            if c < cp {
                return Ok(None);
            }
            let snap = (c == cp).then_some(0.0);
            let s = airy_end_sign(eq, frak, c - frak)?;
            ((-c + frak, Some(s)), (-c + cp, None), snap)
        }
    };
    let energy = match snapped {
        Some(e) => e,
        None => solve_line(eq, c, lo, hi)?,
    };
    Ok(Some(BandEdge {
        p,
        kind,
        energy,
        equation: eq,
        bracket: (lo.0, hi.0),
        in_range: true,
        residual: edge_residual(eq, c, energy)?,
    }))
}

fn solve_line(eq: EdgeEquation, c: f64, lo: (f64, Option<f64>), hi: (f64, Option<f64>)) -> Result<f64> {
    let end = |e: f64, known: Option<f64>| -> Result<EndSign> {
        match known {
            Some(s) => Ok(EndSign::Sign(s)),
            None => evaluated_sign(eq, -c - e, -e),
        }
    };
    let s_lo = match end(lo.0, lo.1)? {
        EndSign::Root => return Ok(lo.0),
        EndSign::Sign(s) => s,
    };
    let s_hi = match end(hi.0, hi.1)? {
        EndSign::Root => return Ok(hi.0),
        EndSign::Sign(s) => s,
    };
    if s_lo == s_hi {
        return Err(Error::Consistency(format!(
            "{eq:?} has no sign change on 𝐄 ∈ [{}, {}] at c = {c}",
            lo.0, hi.0
        )));
    }
    bisect(|e| Ok(edge_factor(eq, -c - e, -e)?.0), lo.0, hi.0, s_lo, s_hi, 0.0)
}

/// dΦ/d𝐄 for the half-cell phase Φ(𝐄) = ∫₀^c √(𝐄 + c − y) dy, 𝐄 ≥ 0.
fn phase_rate(c: f64, e: f64) -> f64 {
    c / ((e + c).sqrt() + e.max(0.0).sqrt())
}

/// The first `needed` roots of the four factors in (0, ∞), sorted.
fn scan_above(c: f64, needed: usize, zero_taken: bool) -> Result<Vec<BandEdge>> {
    let mut found: Vec<BandEdge> = Vec::new();
    let mut e0 = 0.0f64;
    let mut prev = [0.0f64; 4];
    for (i, eq) in EdgeEquation::ALL.iter().enumerate() {
        match evaluated_sign(*eq, -c, 0.0)? {
            EndSign::Root => {
                if !zero_taken && !found.iter().any(|e| e.energy == 0.0) {
                    found.push(above_edge(*eq, c, 0.0, (0.0, 0.0))?);
                }
                prev[i] = 0.0;
            }
            EndSign::Sign(s) => prev[i] = s,
        }
    }
    let mut steps = 0usize;
    while found.len() < needed {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::UnsupportedRange(format!(
                "scan above the potential range did not find {needed} edges at c = {c}"
            )));
        }
        let e1 = e0 + 0.1 / phase_rate(c, e0);
        let mut stepped = Vec::new();
        for (i, eq) in EdgeEquation::ALL.iter().enumerate() {
            let v = edge_factor(*eq, -c - e1, -e1)?.0;
            let s1 = sign(v);
            if s1 == 0.0 {
                stepped.push(above_edge(*eq, c, e1, (e0, e1))?);
                prev[i] = 0.0;
                continue;
            }
            if prev[i] != 0.0 && prev[i] != s1 {
                let e = bisect(|e| Ok(edge_factor(*eq, -c - e, -e)?.0), e0, e1, prev[i], s1, 0.0)?;
                stepped.push(above_edge(*eq, c, e, (e0, e1))?);
            }
            prev[i] = s1;
        }
        found.extend(stepped);
        e0 = e1;
    }
    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    found.truncate(needed);
    Ok(found)
}

fn above_edge(eq: EdgeEquation, c: f64, energy: f64, bracket: (f64, f64)) -> Result<BandEdge> {
    Ok(BandEdge {
        p: 0,
        kind: EdgeKind::Min,
        energy,
        equation: eq,
        bracket,
        in_range: false,
        residual: edge_residual(eq, c, energy)?,
    })
}

/// k₀: c_{k₀} < c < c̃_{k₀} or c̃_{k₀} ≤ c < c_{k₀+1}, for c > c₀.
pub fn count_k0(c: f64) -> Result<usize> {
    let t = tables(index_above(c) + 2)?;
    if !(c > t.c(0)) || !c.is_finite() {
        return Err(Error::Domain { what: "k₀ is defined for c > c₀", value: c });
    }
    Ok(t.c_slice().iter().take_while(|&&cp| cp < c).count() - 1)
}

/// p₀: c̃_{p₀+1} − c̃_{p₀} < c ≤ c̃_{p₀} − c̃_{p₀−1}, for 0 < c < c₀.
///
/// For c ∈ (c̃₁ − c̃₀, c₀) the defining inequality has no solution with
/// p₀ ≥ 1 and the value 0 is returned.
pub fn count_p0(c: f64) -> Result<usize> {
    let c0 = canonical_zero(0, false)?;
    if !(c > 0.0 && c < c0) {
        return Err(Error::Domain { what: "p₀ is defined for 0 < c < c₀", value: c });
    }
    let diff = |p: usize| -> Result<f64> { Ok(canonical_zero(p + 1, true)? - canonical_zero(p, true)?) };
    // Smallest p with c̃_{p+1} − c̃_p < c; the differences decrease strictly.
    let mut hi = 1usize;
    loop {
        let d = diff(hi)?;
        if d < c {
            break;
        }
        if d == c {
            return Err(Error::Boundary { c, lower: hi, upper: hi + 1 });
        }
        hi *= 2;
        if hi > 1 << 26 {
            return Err(Error::UnsupportedRange(format!("p₀ beyond 2^26 for c = {c}")));
        }
    }
    let d0 = diff(0)?;
    if d0 < c {
        return Ok(0);
    }
    if d0 == c {
        return Err(Error::Boundary { c, lower: 0, upper: 1 });
    }
    let mut lo = 0usize;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let d = diff(mid)?;
        if d == c {
            return Err(Error::Boundary { c, lower: mid, upper: mid + 1 });
        }
        if d < c {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn near_excluded(t: &ZeroTables, c: f64) -> bool {
    let ct = t.c_tilde_slice();
    ct.iter().enumerate().any(|(r, &base)| {
        let target = base + c;
        let q = ct.partition_point(|&v| v < target);
        [q.saturating_sub(1), q]
            .iter()
            .any(|&i| i > r && i < ct.len() && (ct[i] - base - c).abs() <= 1e-9)
    })
}

/// Solve bands 0..=max_band and the lower edge of band max_band + 1.
pub fn solve_band_structure(params: ScaleParams, max_band: usize) -> Result<BandStructure> {
    let c = params.c;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain { what: "c must be positive and finite", value: c });
    }
    let t = tables((index_above(c) + 2).max(max_band + 2))?;
    let n_edges = 2 * max_band + 3;
    let slots: Vec<(usize, EdgeKind)> = (0..n_edges)
        .map(|i| (i / 2, if i % 2 == 0 { EdgeKind::Min } else { EdgeKind::Max }))
        .collect();
    let solved: Vec<Option<BandEdge>> = slots
        .par_iter()
        .map(|&(p, kind)| in_range_edge(&t, c, p, kind))
        .collect::<Result<_>>()?;
    let n_in = solved.iter().take_while(|e| e.is_some()).count();
    if solved[n_in..].iter().any(|e| e.is_some()) {
        return Err(Error::Consistency(format!("in-range edges are not a prefix at c = {c}")));
    }
    let mut edges: Vec<BandEdge> = solved.into_iter().flatten().collect();
    let needed = n_edges - n_in;
    if needed > ABOVE_RANGE_LIMIT {
        return Err(Error::UnsupportedRange(format!(
            "{needed} edges above the potential range requested at c = {c}; at most {ABOVE_RANGE_LIMIT} are supported"
        )));
    }
    if needed > 0 {
        let zero_taken = edges.iter().any(|e| e.energy.abs() <= 1e-12 * c.max(1.0));
        edges.extend(scan_above(c, needed, zero_taken)?);
    }
    for (i, e) in edges.iter_mut().enumerate() {
        e.p = i / 2;
        e.kind = if i % 2 == 0 { EdgeKind::Min } else { EdgeKind::Max };
    }
    for (i, w) in edges.windows(2).enumerate() {
        // Gaps must be open; a band may collapse below the f64 resolution.
        let strict = w[0].in_range && w[1].in_range && i % 2 == 1;
        if (strict && !(w[0].energy < w[1].energy)) || w[0].energy > w[1].energy {
            return Err(Error::Consistency(format!(
                "edges out of order at c = {c}: {} then {}",
                w[0].energy, w[1].energy
            )));
        }
    }
    let bands = (0..=max_band)
        .map(|p| assemble_band(&t, c, p, &edges))
        .collect::<Result<Vec<_>>>()?;
    let c0 = t.c(0);
    let k0 = if c > c0 { Some(count_k0(c)?) } else { None };
    let p0 = if c < c0 { count_p0(c).ok() } else { None };
    let density = k0
        .filter(|&k| k <= max_band)
        .map(|k| bands[..=k].iter().map(|b| b.width).sum::<f64>() / c);
    Ok(BandStructure {
        params,
        near_excluded_set: near_excluded(&t, c),
        edges,
        bands,
        k0,
        p0,
        density,
    })
}

fn assemble_band(t: &ZeroTables, c: f64, p: usize, edges: &[BandEdge]) -> Result<Band> {
    let lo = edges[2 * p];
    let hi = edges[2 * p + 1];
    let direct = hi.energy - lo.energy;
    let in_range = lo.in_range && hi.in_range;
    let x0 = c - t.frak_a(p);
    let log_width = if in_range && direct < 1e-8 && x0 > 1.0 {
        narrow_log_width(t, p, lo.energy, hi.energy)?
    } else {
        direct.ln()
    };
    Ok(Band {
        p,
        e_min: lo.energy,
        e_max: hi.energy,
        width: log_width.exp(),
        log_width,
        gap_after: edges.get(2 * p + 2).map(|n| n.energy - hi.energy),
        collapsed_at_precision: direct < 1e-14 * c,
        in_range,
    })
}

/// ln δ_p from the first-order offsets of both edges from z = −𝔞_p.
///
/// Near a zero z₀ of the z-side Airy factor A, an edge solves
/// A(z)/U(z) = r(x) with r exponentially small, so z − z₀ ≈ U(z₀)r(x)/A′(z₀).
/// The width is the difference of the two offsets, computed in log space.
fn narrow_log_width(t: &ZeroTables, p: usize, e_min: f64, e_max: f64) -> Result<f64> {
    let z0 = -t.frak_a(p);
    let zs = joint(z0)?;
    // A′ from the Airy equation: (Ai′)′ = z·Ai.
    let (u, a_prime) = if p % 2 == 0 { (zs.up, z0 * zs.ai) } else { (zs.u, zs.aip) };
    let eq_min = EdgeEquation::for_edge(p, EdgeKind::Min);
    let eq_max = EdgeEquation::for_edge(p, EdgeKind::Max);
    let ratio = |eq: EdgeEquation, x: f64| -> Result<(f64, f64)> {
        let xs = x_side(x)?;
        let r = if eq.x_deriv() { xs.j.aip / xs.j.up } else { xs.j.ai / xs.j.u };
        Ok((r, xs.zeta))
    };
    let (r_min, zeta_min) = ratio(eq_min, -e_min)?;
    let (r_max, zeta_max) = ratio(eq_max, -e_max)?;
    let zeta = 0.5 * (zeta_min + zeta_max);
    Ok((u / a_prime).abs().ln() - 2.0 * zeta + (r_min - r_max).abs().ln())
}

/// First-order offset 𝐄 − (−c + 𝔞_p) of an edge of band p at energy `e`,
/// returned as (sign, ln|offset|).
///
/// Meant for deep edges that coincide with −c + 𝔞_p in f64; the relative
/// error is of the order of the offset itself.
pub fn edge_offset(c: f64, p: usize, kind: EdgeKind, e: f64) -> Result<(f64, f64)> {
    if !(c.is_finite() && c > 0.0 && e.is_finite() && -e >= 0.0) {
        return Err(Error::Domain { what: "edge offset needs c > 0 and −c ≤ 𝐄 ≤ 0", value: e });
    }
    let t = tables(p + 2)?;
    let z0 = -t.frak_a(p);
    let zs = joint(z0)?;
    let (u, a_prime) = if p % 2 == 0 { (zs.up, z0 * zs.ai) } else { (zs.u, zs.aip) };
    let eq = EdgeEquation::for_edge(p, kind);
    let xs = x_side(-e)?;
    let r = if eq.x_deriv() { xs.j.aip / xs.j.up } else { xs.j.ai / xs.j.u };
    // z − z₀ = U·r/A′ and 𝐄 − (−c + 𝔞_p) = −(z − z₀).
    let q = -u * r / a_prime;
    Ok((sign(q), q.abs().ln() - 2.0 * xs.zeta))
}

/// D(c) = (1/c)·Σ_{p ≤ k₀} δ_p, for c > c₀.
pub fn density(c: f64) -> Result<f64> {
    let k0 = count_k0(c)?;
    let s = solve_band_structure(ScaleParams::from_c(c)?, k0)?;
    s.density.ok_or_else(|| Error::Consistency(format!("density missing at c = {c}")))
}

/// I(y) = (3/2)^{1/3}(y^{3/2} + 1)/(y² + y + 1).
pub fn bound_i(y: f64) -> f64 {
    1.5f64.cbrt() * (y.powf(1.5) + 1.0) / (y * y + y + 1.0)
}

/// Upper bound on δ_p, p ≥ 2.
pub fn width_upper_bound(p: usize) -> f64 {
    let pf = p as f64;
    (PI / 3.0 + 7.0 / (3.0 * PI) * (pf + 1.0 / 3.0) / (pf * (pf + 2.0 / 3.0)))
        * (3.0 / PI).cbrt()
        * pf.powf(-1.0 / 3.0)
}

/// Lower and upper bounds on γ_p, p ≥ 2.
pub fn gap_bounds(p: usize) -> (f64, f64) {
    let pf = p as f64;
    let lower = bound_i((7.0f64 / 6.0).powf(2.0 / 3.0)) * 2f64.cbrt() * PI.powf(2.0 / 3.0) / 9.0
        * (pf + 1.0).powf(-1.0 / 3.0);
    let upper = (PI + 7.0 / (3.0 * PI) * pf / (pf * pf - 1.0)) * (3.0 / PI).cbrt() * (pf - 1.0).powf(-1.0 / 3.0);
    (lower, upper)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GapCheck {
    pub gamma: f64,
    pub lower: f64,
    pub upper: f64,
    /// c̃_p − c_p.
    pub sandwich_lower: f64,
    /// 𝔞_{p+1} − 𝔞_p.
    pub sandwich_upper: f64,
    pub bounds_hold: bool,
    pub sandwich_holds: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundReport {
    pub p: usize,
    pub delta: f64,
    pub delta_upper: f64,
    pub delta_holds: bool,
    /// Present for p ≤ k₀ − 1.
    pub gap: Option<GapCheck>,
}

/// Check δ_p and γ_p against their explicit bounds, 2 ≤ p ≤ k₀.
pub fn width_and_gap_bounds(p: usize, s: &BandStructure) -> Result<BoundReport> {
    let k0 = s.k0.ok_or_else(|| Error::UnsupportedRange("width bounds need c > c₀".into()))?;
    if p < 2 || p > k0 {
        return Err(Error::UnsupportedRange(format!("p = {p} outside 2..={k0}")));
    }
    let band = s
        .bands
        .get(p)
        .ok_or_else(|| Error::UnsupportedRange(format!("band {p} was not computed")))?;
    let delta_upper = width_upper_bound(p);
    let gap = if p < k0 {
        let t = tables(p + 2)?;
        let gamma = band
            .gap_after
            .ok_or_else(|| Error::UnsupportedRange(format!("gap {p} was not computed")))?;
        let (lower, upper) = gap_bounds(p);
        let sl = t.c_tilde(p) - t.c(p);
        let su = t.frak_a(p + 1) - t.frak_a(p);
        Some(GapCheck {
            gamma,
            lower,
            upper,
            sandwich_lower: sl,
            sandwich_upper: su,
            bounds_hold: lower < gamma && gamma <= upper,
            sandwich_holds: sl <= gamma && gamma <= su,
        })
    } else {
        None
    };
    Ok(BoundReport {
        p,
        delta: band.width,
        delta_upper,
        delta_holds: band.width > 0.0 && band.width <= delta_upper,
        gap,
    })
}

/// A band in physical energy units, E = 𝐄/θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysicalBand {
    pub p: usize,
    pub e_min: f64,
    pub e_max: f64,
    pub width: f64,
}

pub fn to_physical(s: &BandStructure) -> Result<Vec<PhysicalBand>> {
    if s.params.physical.is_none() {
        return Err(Error::Conversion("no physical constants attached to the parameters".into()));
    }
    let th = s.params.theta;
    Ok(s.bands
        .iter()
        .map(|b| PhysicalBand { p: b.p, e_min: b.e_min / th, e_max: b.e_max / th, width: b.width / th })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_params_round_trip() {
        let p = ScaleParams::from_h(0.5).unwrap();
        assert!((p.c - 0.5f64.powf(-2.0 / 3.0)).abs() < 1e-14 * p.c);
        let k = PhysicalConstants { hbar: 1.0, mass: 0.5, v0: 2.0, l0: 3.0 };
        let q = ScaleParams::from_physical(k).unwrap();
        let h = k.hbar / (k.l0 * (2.0 * k.mass * k.v0).sqrt());
        assert!((q.c - h.powf(-2.0 / 3.0)).abs() < 1e-13 * q.c);
        assert!(ScaleParams::from_c(-1.0).is_err());
    }

    #[test]
    fn psi_endpoints() {
        let t = tables(4).unwrap();
        for k in 0..4 {
            assert!((psi_lower(k, 0.0).unwrap() + t.c(k)).abs() < 1e-12, "k = {k}");
            assert!((psi_upper(k, 0.0).unwrap() + t.c_tilde(k)).abs() < 1e-12, "k = {k}");
        }
        let g = psi_ground(40.0).unwrap();
        assert!((g + t.a_tilde(1)).abs() < 1e-10);
        assert!(psi_ground(0.0).is_err());
    }

    #[test]
    fn c_three_has_two_bands() {
        let s = solve_band_structure(ScaleParams::from_c(3.0).unwrap(), 2).unwrap();
        assert_eq!(s.k0, Some(1));
        assert_eq!(s.bands_in_range(), 2);
    }

    #[test]
    fn p0_conventions() {
        assert_eq!(count_p0(1.2).unwrap(), 0);
        assert!(count_p0(2.0).is_err());
        let p = count_p0(0.5).unwrap();
        let d = |k: usize| canonical_zero(k + 1, true).unwrap() - canonical_zero(k, true).unwrap();
        assert!(d(p) < 0.5 && 0.5 <= d(p - 1));
    }

    #[test]
    fn edge_offset_matches_resolved_edges() {
        for &c in &[5.0, 6.0, 7.0] {
            let s = solve_band_structure(ScaleParams::from_c(c).unwrap(), 1).unwrap();
            let t = tables(3).unwrap();
            for (p, kind) in [(0, EdgeKind::Min), (0, EdgeKind::Max), (1, EdgeKind::Min)] {
                let e = s.edge(p, kind).unwrap().energy;
                let direct = e - (-c + t.frak_a(p));
                let (sg, ln) = edge_offset(c, p, kind, e).unwrap();
                assert_eq!(sg, direct.signum(), "c={c} p={p} {kind:?}");
                // First order: the log error is of the size of the offset.
                assert!((ln - direct.abs().ln()).abs() < 1e-6 + 10.0 * direct.abs(), "c={c} p={p} {kind:?}: {ln} vs {}", direct.abs().ln());
            }
        }
    }
}
