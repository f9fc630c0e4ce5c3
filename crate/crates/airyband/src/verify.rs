//! The claim suite behind `airyband verify` and the acceptance test.
//!
//! Each claim recomputes its quantities from scratch and reports one
//! measured value next to its threshold.

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::airy::{airy_eval, airy_eval_with, airy_modulus, Regime, SERIES_LIMIT_NEG, SERIES_LIMIT_POS};
use crate::bands::{count_k0, density, edge_offset, solve_band_structure, width_and_gap_bounds, EdgeKind, ScaleParams};
use crate::canonical::{canonical_eval, ALPHA};
use crate::error::{Error, Result};
use crate::floquet::{pair_edges, scan_discriminant, Pairing};
use crate::semiclassics::{compare, ground_state_large_h, Semiclassics};
use crate::sturm::sturm_report;
use crate::zeros::{phase_bracket, tables, zero_asymptotics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: &'static str,
    /// Position in the acceptance list, 1-based; 0 for checks outside it.
    pub criterion: usize,
    pub statement: &'static str,
    pub h_or_c: String,
    /// Measured value.
    pub lhs: f64,
    /// Threshold the measured value is compared with.
    pub rhs: f64,
    pub verdict: Verdict,
    /// Amount by which the claim is violated; 0 when it passes.
    pub residual: f64,
    pub detail: String,
    pub seconds: f64,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Integrator tolerance for the Floquet oracle.
    pub tol: f64,
    /// Run only claims whose id contains this string.
    pub filter: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: 1e-9, filter: None }
    }
}

struct Claim {
    id: &'static str,
    statement: &'static str,
    run: fn(&VerifyOptions) -> Result<Outcome>,
}

struct Outcome {
    h_or_c: String,
    lhs: f64,
    rhs: f64,
    pass: bool,
    residual: f64,
    detail: String,
}

const CLAIMS: [Claim; 12] = [
    Claim {
        id: "zero-tables",
        statement: "c_0..c_10 match the printed table to 0.01; c_0, c~_0, c_1, c~_1 to 0.005; alpha to 0.001; under 1 s",
        run: zero_tables,
    },
    Claim {
        id: "zero-ordering",
        statement: "c_p < c~_p and every zero and phase lies in its enclosure, p <= 200; under 5 s",
        run: zero_ordering,
    },
    Claim {
        id: "zero-gap-asymptotics",
        statement: "p^{1/3}(c~_p - c_p) is within 5% of (pi/(9 sqrt 2))^{2/3} at p = 200",
        run: zero_gap_asymptotics,
    },
    Claim {
        id: "oracle-equivalence",
        statement: "band edges in [-c, 0] match Floquet crossings to 1e-7 one-to-one, k0 + 1 bands, c in {2, 3, 5, 10}; under 60 s",
        run: oracle_equivalence,
    },
    Claim {
        id: "first-band",
        statement: "-c < Emin^0 < min(-c/2, -c + a~_1); band 0 covers [min(-c/2, -c + a~_1), 0] for c <= c_0; -c + a~_1 < Emax^0 < -c + c_0 for c > c_0",
        run: first_band,
    },
    Claim {
        id: "zero-edges",
        statement: "Emax^p = 0 at c = c_p and Emin^{p+1} = 0 at c = c~_p to 1e-9, p <= 10",
        run: zero_edges,
    },
    Claim {
        id: "explicit-bounds",
        statement: "at c = 50 the widths and gaps satisfy their explicit bounds and c~_p - c_p <= gamma_p",
        run: explicit_bounds,
    },
    Claim {
        id: "semiclassical-trend",
        statement: "correction ratios of Emin^0, delta_0, gamma_0 lie in [0.3, 3] at h in {0.5, 0.35, 0.25} and 1 - ratio shrinks like h^{1/3} within 50%",
        run: semiclassical_trend,
    },
    Claim {
        id: "large-h",
        statement: "residual of h^{2/3}Emin^0 + 1/2 + 1/(120h^2) drops by a factor in [8, 32] from h = 10 to 20; Emax^0(100) > Emax^0(10)",
        run: large_h,
    },
    Claim {
        id: "density",
        statement: "D(c) increases over c in {10, 30, 100} and 0 < D(100) <= (2/3)^{1/3} + 0.02",
        run: density_claim,
    },
    Claim {
        id: "sturm-lab",
        statement: "z_k(0) = c_k to 1e-10, z_k increasing, derivative and comparison identities below 1e-6, sign patterns hold, k <= 6",
        run: sturm_lab,
    },
    Claim {
        id: "kernel-invariants",
        statement: "Airy Wronskian 1/pi and canonical Wronskian 1 to 1e-12 on |x| <= 50; series and asymptotic forms agree to 1e-12 at the switch points",
        run: kernel_invariants,
    },
];

/// Identifiers of all claims in acceptance order.
pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// Run the selected claims in order. A claim whose computation errors is reported as failed.
pub fn run_claims(opts: &VerifyOptions) -> Result<Vec<ClaimResult>> {
    if !(1e-13..=1e-6).contains(&opts.tol) {
        return Err(Error::Domain { what: "tol must lie in [1e-13, 1e-6]", value: opts.tol });
    }
    let selected: Vec<(usize, &Claim)> = CLAIMS
        .iter()
        .enumerate()
        .filter(|(_, c)| opts.filter.as_deref().map_or(true, |f| c.id.contains(f)))
        .collect();
    if selected.is_empty() {
        return Err(Error::Precondition(format!(
            "no claim matches {:?}; ids are {}",
            opts.filter.as_deref().unwrap_or(""),
            claim_ids().join(", ")
        )));
    }
    Ok(selected.into_iter().map(|(i, c)| run_one(i + 1, c, opts)).collect())
}

fn run_one(criterion: usize, c: &Claim, opts: &VerifyOptions) -> ClaimResult {
    let t = Instant::now();
    let out = (c.run)(opts).unwrap_or_else(|e| Outcome {
        h_or_c: String::new(),
        lhs: f64::NAN,
        rhs: f64::NAN,
        pass: false,
        residual: f64::INFINITY,
        detail: format!("computation failed: {e}"),
    });
    ClaimResult {
        claim_id: c.id,
        criterion,
        statement: c.statement,
        h_or_c: out.h_or_c,
        lhs: out.lhs,
        rhs: out.rhs,
        verdict: if out.pass { Verdict::Pass } else { Verdict::Fail },
        residual: if out.pass { 0.0 } else { out.residual },
        detail: out.detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn within_time(start: Instant, limit: f64, detail: &mut String) -> bool {
    let s = start.elapsed().as_secs_f64();
    detail.push_str(&format!("; {s:.3} s (limit {limit} s)"));
    s < limit
}

const PRINTED_C: [f64; 11] = [1.515, 2.66, 3.53, 4.34, 5.06, 5.74, 6.37, 6.98, 7.56, 8.13, 8.67];

fn zero_tables(_: &VerifyOptions) -> Result<Outcome> {
    let start = Instant::now();
    let t = tables(10)?;
    // Each entry: deviation / tolerance.
    let mut worst = 0.0_f64;
    let mut worst_at = String::new();
    let mut note = |name: String, dev: f64, tol: f64| {
        if dev / tol > worst {
            worst = dev / tol;
            worst_at = name;
        }
    };
    for (p, &v) in PRINTED_C.iter().enumerate() {
        note(format!("c_{p}"), (t.c(p) - v).abs(), 0.01);
    }
    for (name, got, v) in [
        ("c_0", t.c(0), 1.515),
        ("c~_0", t.c_tilde(0), 1.986),
        ("c_1", t.c(1), 2.666),
        ("c~_1", t.c_tilde(1), 2.948),
    ] {
        note(name.to_string(), (got - v).abs(), 0.005);
    }
    note("alpha".into(), (ALPHA - 1.372).abs(), 0.001);
    let mut detail = format!(
        "worst {worst_at} at {worst:.3} of its tolerance; c_0 = {:.6}, c~_0 = {:.6}, alpha = {ALPHA:.6}",
        t.c(0),
        t.c_tilde(0)
    );
    let fast = within_time(start, 1.0, &mut detail);
    Ok(Outcome {
        h_or_c: "p <= 10".into(),
        lhs: worst,
        rhs: 1.0,
        pass: worst <= 1.0 && fast,
        residual: (worst - 1.0).max(0.0),
        detail,
    })
}

fn zero_ordering(_: &VerifyOptions) -> Result<Outcome> {
    let start = Instant::now();
    let t = tables(200)?;
    let to_x = |xi: f64| (1.5 * xi).powf(2.0 / 3.0);
    let mut bad = Vec::new();
    for p in 0..=200 {
        let (c, ct) = (t.c(p), t.c_tilde(p));
        if !(c < ct) {
            bad.push(format!("order at {p}"));
        }
        for (tilde, v) in [(false, c), (true, ct)] {
            let (lo, hi) = phase_bracket(p, tilde);
            if !(to_x(lo) <= v && v <= to_x(hi)) {
                bad.push(format!("bracket of {}_{p}", if tilde { "c~" } else { "c" }));
            }
        }
        let z = zero_asymptotics(p);
        let (xi, xt) = (t.xi(p), t.xi_tilde(p));
        if !(z.xi_interval.0 <= xi && xi <= z.xi_interval.1) {
            bad.push(format!("xi_{p}"));
        }
        if !(z.xi_tilde_interval.0 <= xt && xt <= z.xi_tilde_interval.1) {
            bad.push(format!("xi~_{p}"));
        }
    }
    let n = bad.len() as f64;
    let mut detail = if bad.is_empty() {
        "201 indices, 1005 statements hold".to_string()
    } else {
        format!("violations: {}", bad.join(", "))
    };
    let fast = within_time(start, 5.0, &mut detail);
    Ok(Outcome { h_or_c: "p <= 200".into(), lhs: n, rhs: 0.0, pass: n == 0.0 && fast, residual: n, detail })
}

fn zero_gap_asymptotics(_: &VerifyOptions) -> Result<Outcome> {
    let t = tables(200)?;
    let limit = (PI / (9.0 * 2f64.sqrt())).powf(2.0 / 3.0);
    let scaled = 200f64.cbrt() * (t.c_tilde(200) - t.c(200));
    let rel = (scaled / limit - 1.0).abs();
    Ok(Outcome {
        h_or_c: "p = 200".into(),
        lhs: rel,
        rhs: 0.05,
        pass: rel <= 0.05,
        residual: (rel - 0.05).max(0.0),
        detail: format!("p^(1/3) gap = {scaled:.9}, limit = {limit:.9}"),
    })
}

/// Solver edges in [−c, 0] against a Floquet scan at one c.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub c: f64,
    pub k0: usize,
    pub bands_in_range: usize,
    pub pairing: Pairing,
}

impl OracleCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.pairing.solver_count == self.pairing.oracle_count
            && self.bands_in_range == self.k0 + 1
            && self.pairing.max_deviation <= tol
    }
}

/// Pair the in-range edges at c with oracle crossings; needs c > c₀.
pub fn oracle_check(c: f64, tol: f64) -> Result<OracleCheck> {
    let k0 = count_k0(c)?;
    let s = solve_band_structure(ScaleParams::from_c(c)?, k0 + 1)?;
    let solver: Vec<f64> = s.edges.iter().filter(|e| e.in_range).map(|e| e.energy).collect();
    // Same-factor crossings are O(1) apart in range; 100 samples per unit suffice.
    let n = (100.0 * (c + 1.0)).ceil() as usize;
    let scan = scan_discriminant(c, (-c - 0.5, 0.5), n, tol)?;
    let pairing = pair_edges(c, &solver, &scan, 1e-7);
    Ok(OracleCheck { c, k0, bands_in_range: s.bands_in_range(), pairing })
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<Outcome> {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut parts = Vec::new();
    let mut pass = true;
    for c in [2.0, 3.0, 5.0, 10.0] {
        let r = oracle_check(c, opts.tol)?;
        pass &= r.passes(1e-7);
        worst = worst.max(r.pairing.max_deviation);
        parts.push(format!(
            "c = {c}: {}/{} edges, {} bands for k0 = {}, max dev {:.2e}",
            r.pairing.solver_count, r.pairing.oracle_count, r.bands_in_range, r.k0, r.pairing.max_deviation
        ));
    }
    let mut detail = parts.join("; ");
    pass &= within_time(start, 60.0, &mut detail);
    Ok(Outcome {
        h_or_c: "c in {2, 3, 5, 10}".into(),
        lhs: worst,
        rhs: 1e-7,
        pass,
        residual: if worst.is_finite() { (worst - 1e-7).max(0.0) } else { f64::INFINITY },
        detail,
    })
}

/// The oracle comparison at a user-chosen c, reported like a claim but outside the acceptance list.
pub fn oracle_claim_at(c: f64, tol: f64) -> ClaimResult {
    let t = Instant::now();
    let out = oracle_check(c, tol);
    let (lhs, pass, detail) = match &out {
        Ok(r) => (
            r.pairing.max_deviation,
            r.passes(1e-7),
            format!(
                "{}/{} edges, {} bands for k0 = {}",
                r.pairing.solver_count, r.pairing.oracle_count, r.bands_in_range, r.k0
            ),
        ),
        Err(e) => (f64::NAN, false, format!("computation failed: {e}")),
    };
    ClaimResult {
        claim_id: "oracle-equivalence-at-c",
        criterion: 0,
        statement: "band edges in [-c, 0] match Floquet crossings to 1e-7 one-to-one, k0 + 1 bands",
        h_or_c: format!("c = {c}"),
        lhs,
        rhs: 1e-7,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        residual: if pass { 0.0 } else if lhs.is_finite() { (lhs - 1e-7).max(0.0) } else { f64::INFINITY },
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn first_band(_: &VerifyOptions) -> Result<Outcome> {
    let t = tables(4)?;
    let (at1, c0) = (t.a_tilde(1), t.c(0));
    let mut bad = Vec::new();
    // Smallest distance to any of the inequalities' ends, over the grid.
    let mut margin = f64::INFINITY;
    let mut via_offset = 0usize;
    // Side of −c + ã₁ an edge lies on. Below a few ulps the f64 edge may sit
    // on the point itself and the offset is taken from its first-order form.
    let side = |c: f64, kind: EdgeKind, e: f64, via: &mut usize| -> Result<f64> {
        let d = e - (-c + at1);
        if d.abs() > 16.0 * f64::EPSILON * c {
            return Ok(d.signum());
        }
        *via += 1;
        Ok(edge_offset(c, 0, kind, e)?.0)
    };
    for i in 1..=50 {
        let c = 0.1 + 19.9 * i as f64 / 50.0;
        let s = solve_band_structure(ScaleParams::from_c(c)?, 0)?;
        let b = &s.bands[0];
        let upper = (-c / 2.0).min(-c + at1);
        let below_upper = if upper == -c / 2.0 && -c / 2.0 < -c + at1 {
            b.e_min < upper
        } else {
            side(c, EdgeKind::Min, b.e_min, &mut via_offset)? < 0.0
        };
        margin = margin.min(b.e_min + c);
        if !(b.e_min > -c && below_upper) {
            bad.push(format!("Emin^0 at c = {c}"));
        }
        if c <= c0 {
            margin = margin.min(b.e_max);
            if !(b.e_max >= 0.0 && b.e_min <= upper) {
                bad.push(format!("band 0 cover at c = {c}"));
            }
        } else {
            margin = margin.min(-c + c0 - b.e_max);
            let above = side(c, EdgeKind::Max, b.e_max, &mut via_offset)? > 0.0;
            if !(above && b.e_max < -c + c0) {
                bad.push(format!("Emax^0 at c = {c}"));
            }
        }
    }
    let n = bad.len() as f64;
    Ok(Outcome {
        h_or_c: "50 values of c in (0.1, 20]".into(),
        lhs: n,
        rhs: 0.0,
        pass: bad.is_empty(),
        residual: n,
        detail: if bad.is_empty() {
            format!("all inequalities hold; {via_offset} comparisons with -c + a~_1 resolved below f64 spacing by the edge offset; smallest other margin {margin:.3e}")
        } else {
            format!("violations: {}", bad.join(", "))
        },
    })
}

fn zero_edges(_: &VerifyOptions) -> Result<Outcome> {
    let t = tables(12)?;
    let mut worst = 0.0_f64;
    for p in 0..=10 {
        let s = solve_band_structure(ScaleParams::from_c(t.c(p))?, p + 1)?;
        let e = s.edge(p, EdgeKind::Max).ok_or_else(|| Error::Consistency(format!("Emax^{p} missing")))?;
        worst = worst.max(e.energy.abs());
        let s = solve_band_structure(ScaleParams::from_c(t.c_tilde(p))?, p + 1)?;
        let e = s
            .edge(p + 1, EdgeKind::Min)
            .ok_or_else(|| Error::Consistency(format!("Emin^{} missing", p + 1)))?;
        worst = worst.max(e.energy.abs());
    }
    Ok(Outcome {
        h_or_c: "c = c_p, c~_p for p <= 10".into(),
        lhs: worst,
        rhs: 1e-9,
        pass: worst <= 1e-9,
        residual: (worst - 1e-9).max(0.0),
        detail: format!("largest |edge| {worst:.3e}"),
    })
}

fn explicit_bounds(_: &VerifyOptions) -> Result<Outcome> {
    let c = 50.0;
    let k0 = count_k0(c)?;
    let s = solve_band_structure(ScaleParams::from_c(c)?, k0)?;
    let mut bad = Vec::new();
    // Largest ratio of a quantity to its own upper bound, or of a lower bound to the quantity.
    let mut tightest = 0.0_f64;
    for p in 2..=k0 {
        let r = width_and_gap_bounds(p, &s)?;
        tightest = tightest.max(r.delta / r.delta_upper);
        if !r.delta_holds {
            bad.push(format!("delta_{p}"));
        }
        if let Some(g) = r.gap {
            tightest = tightest.max(g.gamma / g.upper).max(g.lower / g.gamma).max(g.sandwich_lower / g.gamma);
            if !g.bounds_hold {
                bad.push(format!("gamma_{p} bounds"));
            }
            if !(g.sandwich_lower <= g.gamma) {
                bad.push(format!("gamma_{p} sandwich"));
            }
        }
    }
    let n = bad.len() as f64;
    Ok(Outcome {
        h_or_c: "c = 50".into(),
        lhs: n,
        rhs: 0.0,
        pass: bad.is_empty(),
        residual: n,
        detail: if bad.is_empty() {
            format!("k0 = {k0}; all bounds hold, tightest ratio {tightest:.6}")
        } else {
            format!("k0 = {k0}; violations: {}", bad.join(", "))
        },
    })
}

fn semiclassical_trend(_: &VerifyOptions) -> Result<Outcome> {
    let hs = [0.5, 0.35, 0.25];
    let strict = Semiclassics::default();
    // γ₀'s own validity interval ends near h = 0.278, below two of the h values.
    let loose = Semiclassics { enforce_validity: false, ..strict };
    let mut ratios = [[0.0; 3]; 3];
    for (i, &h) in hs.iter().enumerate() {
        let s = solve_band_structure(ScaleParams::from_h(h)?, 1)?;
        let ests = [strict.edge(0, EdgeKind::Min, h)?, strict.width(0, h)?, loose.gap(0, h)?];
        for (q, est) in ests.iter().enumerate() {
            ratios[q][i] = compare(est, &s)?.ratio;
        }
    }
    let names = ["Emin^0", "delta_0", "gamma_0"];
    let mut bad = Vec::new();
    let mut worst_window = 0.0_f64;
    let mut worst_pattern = 0.0_f64;
    for (q, r) in ratios.iter().enumerate() {
        for &v in r {
            // Distance outside [0.3, 3] on a log scale.
            worst_window = worst_window.max((0.3 / v).ln().max((v / 3.0).ln()).max(0.0));
            if !(0.3..=3.0).contains(&v) {
                bad.push(format!("{} ratio {v:.4}", names[q]));
            }
        }
        for i in 0..2 {
            let observed = (1.0 - r[i + 1]).abs() / (1.0 - r[i]).abs();
            let predicted = (hs[i + 1] / hs[i]).cbrt();
            let f = observed / predicted;
            worst_pattern = worst_pattern.max((f - 1.0).abs());
            if !(0.5..=1.5).contains(&f) {
                bad.push(format!("{} shrink factor {f:.3} of predicted", names[q]));
            }
        }
    }
    let table: Vec<String> = ratios
        .iter()
        .zip(names)
        .map(|(r, n)| format!("{n} [{:.4}, {:.4}, {:.4}]", r[0], r[1], r[2]))
        .collect();
    Ok(Outcome {
        h_or_c: "h in {0.5, 0.35, 0.25}".into(),
        lhs: bad.len() as f64,
        rhs: 0.0,
        pass: bad.is_empty(),
        residual: worst_window + (worst_pattern - 0.5).max(0.0),
        detail: format!(
            "ratios {}{}",
            table.join(", "),
            if bad.is_empty() { String::new() } else { format!("; violations: {}", bad.join(", ")) }
        ),
    })
}

fn large_h(_: &VerifyOptions) -> Result<Outcome> {
    let residual = |h: f64| -> Result<(f64, f64)> {
        let s = solve_band_structure(ScaleParams::from_h(h)?, 0)?;
        let e = s.bands[0].e_min;
        let r = h.powf(2.0 / 3.0) * (e - ground_state_large_h(h)?);
        Ok((r.abs(), s.bands[0].e_max))
    };
    let (r10, emax10) = residual(10.0)?;
    let (r20, _) = residual(20.0)?;
    let emax100 = solve_band_structure(ScaleParams::from_h(100.0)?, 0)?.bands[0].e_max;
    let factor = r10 / r20;
    let ratio_ok = (8.0..=32.0).contains(&factor);
    let grows = emax100 > emax10;
    Ok(Outcome {
        h_or_c: "h in {10, 20, 100}".into(),
        lhs: factor,
        rhs: 32.0,
        pass: ratio_ok && grows,
        residual: if ratio_ok { 0.0 } else { (factor / 32.0).max(8.0 / factor) - 1.0 } + if grows { 0.0 } else { 1.0 },
        detail: format!(
            "residuals {r10:.4e} (h = 10), {r20:.4e} (h = 20), factor {factor:.3} against [8, 32]; Emax^0 {emax10:.6} (h = 10) -> {emax100:.6} (h = 100)"
        ),
    })
}

fn density_claim(_: &VerifyOptions) -> Result<Outcome> {
    let d: Vec<f64> = [10.0, 30.0, 100.0].iter().map(|&c| density(c)).collect::<Result<_>>()?;
    let cap = (2.0f64 / 3.0).cbrt() + 0.02;
    let increasing = d[0] < d[1] && d[1] < d[2];
    let bounded = d[2] > 0.0 && d[2] <= cap;
    let mut residual = 0.0;
    if !increasing {
        residual += (d[0] - d[1]).max(0.0) + (d[1] - d[2]).max(0.0);
    }
    if !bounded {
        residual += (d[2] - cap).max(0.0) + (-d[2]).max(0.0);
    }
    Ok(Outcome {
        h_or_c: "c in {10, 30, 100}".into(),
        lhs: d[2],
        rhs: cap,
        pass: increasing && bounded,
        residual,
        detail: format!(
            "D = {:.9}, {:.9}, {:.9}; increasing: {increasing}; D(100) in (0, {cap:.6}]: {bounded}",
            d[0], d[1], d[2]
        ),
    })
}

fn sturm_lab(_: &VerifyOptions) -> Result<Outcome> {
    let r = sturm_report(6)?;
    let worst = r.derivative_residual.max(r.sturm_residual).max(r.picone.residual);
    let failing = r.signs.checks.iter().filter(|c| !c.holds).count();
    Ok(Outcome {
        h_or_c: "x in [0, 5], k <= 6".into(),
        lhs: worst,
        rhs: 1e-6,
        pass: r.passes(1e-6),
        residual: (worst - 1e-6).max(0.0) + failing as f64,
        detail: format!(
            "z_k(0) error {:.1e}, increasing {}, derivative {:.1e}, Sturm {:.1e}, Picone {:.1e}, {} of {} sign checks hold; the printed (-1)^(j+1) sign of f_x holds: {}",
            r.zk_at_zero_error,
            r.zk_increasing,
            r.derivative_residual,
            r.sturm_residual,
            r.picone.residual,
            r.signs.checks.len() - failing,
            r.signs.checks.len(),
            r.signs.printed_f_sign_holds
        ),
    })
}

/// Largest deviation of the Airy Wronskian from 1/π and of the canonical
/// Wronskian from 1, and the largest mismatch between representations.
pub fn kernel_residuals() -> Result<(f64, f64, f64)> {
    let mut w_airy = 0.0_f64;
    let mut w_can = 0.0_f64;
    for i in 0..=4000 {
        let x = -50.0 + 100.0 * i as f64 / 4000.0;
        let a = airy_eval(x)?;
        w_airy = w_airy.max((PI * a.wronskian() - 1.0).abs());
        let c = canonical_eval(x)?;
        let scale = (c.u * c.vp).abs() + (c.up * c.v).abs();
        w_can = w_can.max((c.wronskian() - 1.0).abs() / scale.max(1.0));
    }
    let mut switch = 0.0_f64;
    for x in [-SERIES_LIMIT_NEG, -SERIES_LIMIT_NEG - 1e-9, -SERIES_LIMIT_NEG + 1e-9] {
        let s = airy_eval_with(x, Regime::Series)?;
        let a = airy_eval_with(x, Regime::NegativeAsymptotic)?;
        let (m, n) = airy_modulus(x)?;
        switch = switch
            .max((s.ai - a.ai).abs() / m)
            .max((s.bi - a.bi).abs() / m)
            .max((s.aip - a.aip).abs() / n)
            .max((s.bip - a.bip).abs() / n);
    }
    for x in [SERIES_LIMIT_POS, SERIES_LIMIT_POS - 1e-9, SERIES_LIMIT_POS + 1e-9] {
        let s = airy_eval_with(x, Regime::Series)?;
        let a = airy_eval_with(x, Regime::PositiveAsymptotic)?;
        for (u, v) in [(s.ai, a.ai), (s.aip, a.aip), (s.bi, a.bi), (s.bip, a.bip)] {
            switch = switch.max(((u - v) / v).abs());
        }
    }
    Ok((w_airy, w_can, switch))
}

fn kernel_invariants(_: &VerifyOptions) -> Result<Outcome> {
    let (w_airy, w_can, switch) = kernel_residuals()?;
    let worst = w_airy.max(w_can).max(switch);
    Ok(Outcome {
        h_or_c: "|x| <= 50".into(),
        lhs: worst,
        rhs: 1e-12,
        pass: worst <= 1e-12,
        residual: (worst - 1e-12).max(0.0),
        detail: format!(
            "Airy Wronskian {w_airy:.2e}, canonical Wronskian {w_can:.2e} (relative to |uv'| + |u'v|), switch mismatch {switch:.2e}"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids = claim_ids();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 12);
    }

    #[test]
    fn filter_selects_and_rejects() {
        let opts = VerifyOptions { filter: Some("zero-gap".into()), ..Default::default() };
        let r = run_claims(&opts).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].passed());
        let opts = VerifyOptions { filter: Some("nothing".into()), ..Default::default() };
        assert!(run_claims(&opts).is_err());
        let opts = VerifyOptions { tol: 1e-3, ..Default::default() };
        assert!(run_claims(&opts).is_err());
    }
}
