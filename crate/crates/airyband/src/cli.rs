//! Orchestration behind the `airyband` binary: one `RunConfig` in, one
//! rendered artifact out.
//!
//! Every float is rounded to 15 significant digits before it is written, so
//! that the printed decimal and the parsed value agree bit for bit.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bands::{count_k0, density, solve_band_structure, to_physical, PhysicalConstants, ScaleParams};
use crate::canonical::{ratio_vpup, ratio_vu};
use crate::error::{Error, Result};
use crate::floquet::scan_discriminant;
use crate::sturm::sturm_report;
use crate::verify::{oracle_claim_at, run_claims, ClaimResult, VerifyOptions};
use crate::zeros::tables;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// How the problem size is given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scale {
    C(f64),
    H(f64),
    Physical(PhysicalConstants),
}

impl Scale {
    pub fn params(self) -> Result<ScaleParams> {
        match self {
            Scale::C(c) => ScaleParams::from_c(c),
            Scale::H(h) => ScaleParams::from_h(h),
            Scale::Physical(k) => ScaleParams::from_physical(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    /// Zero tables; with `ratios`, samples of v/u and v′/u′ on [−10, 5] instead.
    Zeros { max_index: usize, ratios: bool },
    /// Bands 0..=max_band; by default every band meeting [−c, 0].
    Bands { scale: Scale, max_band: Option<usize> },
    Density { scale: Scale },
    /// Δ(𝐄) on `samples` points of `range`, default [−c − 0.5, 0.5].
    Discriminant { scale: Scale, range: Option<(f64, f64)>, samples: usize },
    Verify { claims: Option<String>, scale: Option<Scale> },
    Sturm { max_index: usize },
    Convert { scale: Scale },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: f64,
    pub format: Format,
}

/// Rendered output and whether the command's own checks passed.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub text: String,
    pub success: bool,
}

pub const TOL_RANGE: (f64, f64) = (1e-13, 1e-6);

/// Round to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Decimal text of `round15(v)`; empty for non-finite values.
pub fn fmt15(v: f64) -> String {
    if !v.is_finite() {
        return String::new();
    }
    let r = round15(v);
    let a = r.abs();
    if r == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let f = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round15(f)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with every float rounded to 15 significant digits.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let value = serde_json::to_value(v).map_err(|e| Error::Consistency(format!("serialization: {e}")))?;
    serde_json::to_string_pretty(&rounded(value))
        .map(|s| s + "\n")
        .map_err(|e| Error::Consistency(format!("serialization: {e}")))
}

/// RFC-4180 CSV with a header row.
fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let io = |e: csv::Error| Error::Consistency(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Consistency(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Consistency(format!("csv: {e}")))
}

fn opt15(v: Option<f64>) -> String {
    v.map(fmt15).unwrap_or_default()
}

pub fn run(cfg: &RunConfig) -> Result<Artifact> {
    let (lo, hi) = TOL_RANGE;
    if !(lo..=hi).contains(&cfg.tol) {
        return Err(Error::Domain { what: "tol must lie in [1e-13, 1e-6]", value: cfg.tol });
    }
    let ok = |text: String| Ok(Artifact { text, success: true });
    match &cfg.command {
        Command::Zeros { max_index, ratios: false } => ok(zeros_table(*max_index, cfg.format)?),
        Command::Zeros { ratios: true, .. } => ok(ratio_export(cfg.format)?),
        Command::Bands { scale, max_band } => ok(bands(*scale, *max_band, cfg.format)?),
        Command::Density { scale } => {
            let p = scale.params()?;
            let d = density(p.c)?;
            ok(match cfg.format {
                Format::Json => to_json(&json!({ "h": p.h, "c": p.c, "k0": count_k0(p.c)?, "density": d }))?,
                Format::Csv => to_csv(&["h", "c", "density"], &[vec![fmt15(p.h), fmt15(p.c), fmt15(d)]])?,
            })
        }
        Command::Discriminant { scale, range, samples } => {
            ok(discriminant(*scale, *range, *samples, cfg.tol, cfg.format)?)
        }
        Command::Verify { claims, scale } => verify(claims.clone(), *scale, cfg.tol, cfg.format),
        Command::Sturm { max_index } => {
            let r = sturm_report(*max_index)?;
            let success = r.passes(1e-6);
            let text = match cfg.format {
                Format::Json => to_json(&json!({ "passes": success, "report": r }))?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = r
                        .signs
                        .checks
                        .iter()
                        .map(|c| {
                            vec![
                                fmt15(c.x),
                                c.function.to_string(),
                                fmt15(c.interval.0),
                                fmt15(c.interval.1),
                                fmt15(c.expected),
                                c.holds.to_string(),
                            ]
                        })
                        .collect();
                    to_csv(&["x", "function", "from", "to", "expected_sign", "holds"], &rows)?
                }
            };
            Ok(Artifact { text, success })
        }
        Command::Convert { scale } => {
            let p = scale.params()?;
            ok(match cfg.format {
                Format::Json => to_json(&json!({ "h": p.h, "c": p.c, "theta": p.theta }))?,
                Format::Csv => to_csv(&["h", "c", "theta"], &[vec![fmt15(p.h), fmt15(p.c), fmt15(p.theta)]])?,
            })
        }
    }
}

fn zeros_table(max_index: usize, format: Format) -> Result<String> {
    let t = tables(max_index)?;
    let rows: Vec<[f64; 5]> =
        (0..=max_index).map(|p| [p as f64, t.c(p), t.c_tilde(p), t.xi(p), t.xi_tilde(p)]).collect();
    match format {
        Format::Csv => to_csv(
            &["p", "c_p", "c_tilde_p", "xi_p", "xi_tilde_p"],
            &rows
                .iter()
                .map(|r| {
                    let mut v = vec![(r[0] as usize).to_string()];
                    v.extend(r[1..].iter().map(|&x| fmt15(x)));
                    v
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => {
            let zeros: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "p": r[0] as usize, "c_p": r[1], "c_tilde_p": r[2], "xi_p": r[3], "xi_tilde_p": r[4] }))
                .collect();
            let airy: Vec<Value> = (1..=t.airy_count())
                .map(|j| json!({ "j": j, "a_j": t.a(j), "a_tilde_j": t.a_tilde(j) }))
                .collect();
            to_json(&json!({ "max_index": max_index, "zeros": zeros, "airy_zeros": airy }))
        }
    }
}

/// Samples of v/u and v′/u′ on [−10, 5], step 0.01, plus one row per pole
/// with the value left empty.
fn ratio_export(format: Format) -> Result<String> {
    let pole = |r: Result<f64>| -> Result<Option<f64>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Pole { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let t = tables(12)?;
    let mut xs: Vec<f64> = (0..=1500).map(|i| -10.0 + i as f64 / 100.0).collect();
    // The poles themselves get a row, so a plotted curve breaks there.
    xs.push(0.0);
    xs.extend((0..=12).map(|p| -t.c_tilde(p)).filter(|&x| x >= -10.0));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut rows = Vec::with_capacity(xs.len());
    for x in xs {
        rows.push((x, pole(ratio_vu(x))?, pole(ratio_vpup(x))?));
    }
    match format {
        Format::Csv => to_csv(
            &["x", "v_over_u", "vp_over_up"],
            &rows.iter().map(|&(x, a, b)| vec![fmt15(x), opt15(a), opt15(b)]).collect::<Vec<_>>(),
        ),
        Format::Json => to_json(
            &rows.iter().map(|&(x, a, b)| json!({ "x": x, "v_over_u": a, "vp_over_up": b })).collect::<Vec<_>>(),
        ),
    }
}

fn default_max_band(c: f64) -> Result<usize> {
    let c0 = tables(1)?.c(0);
    if c > c0 {
        count_k0(c)
    } else {
        Ok(0)
    }
}

fn bands(scale: Scale, max_band: Option<usize>, format: Format) -> Result<String> {
    let params = scale.params()?;
    let n = match max_band {
        Some(n) => n,
        None => default_max_band(params.c)?,
    };
    let s = solve_band_structure(params, n)?;
    let physical = if params.physical.is_some() { Some(to_physical(&s)?) } else { None };
    match format {
        Format::Json => {
            let bands: Vec<Value> = s
                .bands
                .iter()
                .map(|b| {
                    json!({
                        "p": b.p,
                        "Emin": b.e_min,
                        "Emax": b.e_max,
                        "width": b.width,
                        "log_width": b.log_width,
                        "gap_after": b.gap_after,
                        "in_range": b.in_range,
                        "collapsed_at_precision": b.collapsed_at_precision,
                    })
                })
                .collect();
            to_json(&json!({
                "h": params.h,
                "c": params.c,
                "theta": params.theta,
                "k0": s.k0,
                "p0": s.p0,
                "bands_in_range": s.bands_in_range(),
                "bands": bands,
                "density": s.density,
                "near_excluded_set": s.near_excluded_set,
                "edges": s.edges,
                "physical": physical,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = s
                .edges
                .iter()
                .map(|e| {
                    let kind = match e.kind {
                        crate::bands::EdgeKind::Min => "min",
                        crate::bands::EdgeKind::Max => "max",
                    };
                    let mut r = vec![
                        e.p.to_string(),
                        kind.to_string(),
                        fmt15(e.energy),
                        format!("{:?}", e.equation),
                        e.in_range.to_string(),
                        fmt15(e.residual),
                    ];
                    if params.physical.is_some() {
                        r.push(fmt15(e.energy / params.theta));
                    }
                    r
                })
                .collect();
            let mut header = vec!["p", "kind", "energy", "equation", "in_range", "residual"];
            if params.physical.is_some() {
                header.push("energy_physical");
            }
            to_csv(&header, &rows)
        }
    }
}

fn discriminant(
    scale: Scale,
    range: Option<(f64, f64)>,
    samples: usize,
    tol: f64,
    format: Format,
) -> Result<String> {
    let p = scale.params()?;
    let c = p.c;
    let range = range.unwrap_or((-c - 0.5, 0.5));
    let scan = scan_discriminant(c, range, samples, tol)?;
    match format {
        Format::Csv => to_csv(
            &["E", "delta"],
            &scan.grid.iter().zip(&scan.values).map(|(&e, &d)| vec![fmt15(e), fmt15(d)]).collect::<Vec<_>>(),
        ),
        Format::Json => to_json(&json!({
            "h": p.h,
            "c": c,
            "tol": tol,
            "range": [range.0, range.1],
            "E": scan.grid,
            "delta": scan.values,
            "edges": scan.edge_brackets,
        })),
    }
}

fn verify(claims: Option<String>, scale: Option<Scale>, tol: f64, format: Format) -> Result<Artifact> {
    let mut results: Vec<ClaimResult> = run_claims(&VerifyOptions { tol, filter: claims })?;
    if let Some(s) = scale {
        results.push(oracle_claim_at(s.params()?.c, tol));
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let text = match format {
        Format::Json => to_json(&json!({
            "tol": tol,
            "passed": results.len() - failed,
            "failed": failed,
            "claims": results,
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.claim_id.to_string(),
                        r.criterion.to_string(),
                        r.h_or_c.clone(),
                        fmt15(r.lhs),
                        fmt15(r.rhs),
                        if r.passed() { "pass" } else { "fail" }.to_string(),
                        fmt15(r.residual),
                        fmt15(r.seconds),
                        r.detail.clone(),
                    ]
                })
                .collect();
            to_csv(
                &["claim_id", "criterion", "h_or_c", "lhs", "rhs", "verdict", "residual", "seconds", "detail"],
                &rows,
            )?
        }
    };
    Ok(Artifact { text, success: failed == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits_round_trip() {
        for &v in &[1.0 / 3.0, -2.338107410459767, 1e-300, 6.02214076e23, 0.1 + 0.2] {
            let s = fmt15(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, round15(v), "{v} -> {s}");
            assert!(((back - v) / v).abs() < 1e-14);
            let j = to_json(&json!({ "v": v })).unwrap();
            let parsed: Value = serde_json::from_str(&j).unwrap();
            assert_eq!(parsed["v"].as_f64().unwrap(), round15(v));
        }
        assert_eq!(fmt15(f64::NAN), "");
    }

    #[test]
    fn convert_h() {
        let cfg = RunConfig { command: Command::Convert { scale: Scale::H(0.973) }, tol: 1e-9, format: Format::Json };
        let a = run(&cfg).unwrap();
        let v: Value = serde_json::from_str(&a.text).unwrap();
        assert_eq!(v["c"].as_f64().unwrap(), round15(0.973f64.powf(-2.0 / 3.0)));
    }

    #[test]
    fn bands_default_covers_range() {
        let cfg = RunConfig {
            command: Command::Bands { scale: Scale::C(3.0), max_band: None },
            tol: 1e-9,
            format: Format::Json,
        };
        let v: Value = serde_json::from_str(&run(&cfg).unwrap().text).unwrap();
        assert_eq!(v["k0"], 1);
        assert_eq!(v["bands"].as_array().unwrap().len(), 2);
        assert_eq!(v["bands_in_range"], 2);
    }

    #[test]
    fn tol_is_checked() {
        let cfg = RunConfig { command: Command::Convert { scale: Scale::C(1.0) }, tol: 1e-3, format: Format::Csv };
        assert!(run(&cfg).is_err());
    }
}
