//! The auxiliary functions
//! f_x(z) = π(Bi′(x−z)Ai(x) − Ai′(x−z)Bi(x)) and
//! g_x(z) = π(Bi(x−z)Ai(x) − Ai(x−z)Bi(x)),
//! their zero curves z_k(x), and finite-difference checks of the Sturm and
//! Sturm–Picone identities behind the monotonicity of z_k.

use serde::Serialize;
use std::f64::consts::PI;

use crate::airy::airy_eval;
use crate::bands::psi_lower;
use crate::error::{Error, Result};
use crate::roots::{bisect, sign};
use crate::zeros;

/// Central-difference step used by every identity check.
pub const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FgValue {
    pub f: f64,
    pub g: f64,
}

pub fn f_g_eval(x: f64, z: f64) -> Result<FgValue> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain { what: "f_x and g_x need finite x ≥ 0", value: x });
    }
    let a = airy_eval(x)?;
    let s = airy_eval(x - z)?;
    Ok(FgValue {
        f: PI * (s.bip * a.ai - s.aip * a.bi),
        g: PI * (s.bi * a.ai - s.ai * a.bi),
    })
}

/// Richardson-extrapolated central difference of `f` at `t`.
pub fn richardson(f: &impl Fn(f64) -> Result<f64>, t: f64, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((f(t + h)? - f(t - h)?) / (2.0 * h)) };
    let (d1, d2) = (d(h)?, d(0.5 * h)?);
    Ok((4.0 * d2 - d1) / 3.0)
}

fn zero_fn(k: usize, x: f64) -> impl Fn(f64) -> Result<f64> {
    move |z: f64| f_g_eval(x, z).map(|v| if k % 2 == 0 { v.f } else { v.g })
}

/// z_k(x), the k-th zero of f_x (k even) or of g_x on (0, ∞) (k odd).
pub fn z_curve(k: usize, x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain { what: "z_k needs finite x ≥ 0", value: x });
    }
    let t = zeros::tables(k + 2)?;
    let (lo, hi) = (x + t.frak_a(k), x + t.c(k));
    let f = zero_fn(k, x);
    let fhi = f(hi)?;
    // At x = 0 the upper end is the zero itself.
    if fhi.abs() <= 1e-15 || x == 0.0 {
        return Ok(hi);
    }
    let mut z = bisect(&f, lo, hi, sign(f(lo)?), sign(fhi), 0.0)?;
    // f′ = −(x−z)g and g′ = −f.
    let v = f_g_eval(x, z)?;
    let (val, der) = if k % 2 == 0 { (v.f, -(x - z) * v.g) } else { (v.g, -v.f) };
    if der != 0.0 {
        let next = z - val / der;
        if next > lo && next <= hi && (next - z).abs() < 4.0 * f64::EPSILON * z.abs() {
            z = next;
        }
    }
    Ok(z)
}

/// Zeros z_0(x) < … < z_k(x) with their residuals.
#[derive(Clone, Debug, Serialize)]
pub struct SturmProbe {
    pub x: f64,
    pub z: Vec<f64>,
    pub residuals: Vec<f64>,
}

pub fn sturm_probe(x: f64, k_max: usize) -> Result<SturmProbe> {
    let mut z = Vec::with_capacity(k_max + 1);
    let mut residuals = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let zk = z_curve(k, x)?;
        residuals.push(zero_fn(k, x)(zk)?.abs());
        z.push(zk);
    }
    Ok(SturmProbe { x, z, residuals })
}

/// Maximum of |g′ + f| and |f′ + (x−z)g| on a grid, relative to the local size.
pub fn derivative_relation_residual(x: f64, zs: &[f64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in zs {
        let v = f_g_eval(x, z)?;
        let gp = richardson(&|t| f_g_eval(x, t).map(|w| w.g), z, FD_STEP)?;
        let fp = richardson(&|t| f_g_eval(x, t).map(|w| w.f), z, FD_STEP)?;
        let scale = 1.0 + v.f.abs() + ((x - z) * v.g).abs();
        worst = worst.max((gp + v.f).abs() / scale).max((fp + (x - z) * v.g).abs() / scale);
    }
    Ok(worst)
}

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// A function and its derivative, supplied together.
pub type Solution<'a> = &'a dyn Fn(f64) -> Result<(f64, f64)>;
pub type Coefficient<'a> = &'a dyn Fn(f64) -> f64;

/// Residual of (yz′ − zy′)′ = (g₁ − g₂)yz on a grid of interior points,
/// where z solves −z″ + g₁z = 0 and y solves −y″ + g₂y = 0.
pub fn sturm_identity_check(
    g1: Coefficient,
    g2: Coefficient,
    y: Solution,
    z: Solution,
    interval: (f64, f64),
    n: usize,
) -> Result<f64> {
    let (a, b) = interval;
    let w = |t: f64| -> Result<f64> {
        let (yv, yd) = y(t)?;
        let (zv, zd) = z(t)?;
        Ok(yv * zd - zv * yd)
    };
    let mut worst = 0.0_f64;
    let mut scale = 1.0_f64;
    for t in grid(a, b, n) {
        let lhs = richardson(&w, t, FD_STEP)?;
        let (yv, _) = y(t)?;
        let (zv, _) = z(t)?;
        let rhs = (g1(t) - g2(t)) * yv * zv;
        worst = worst.max((lhs - rhs).abs());
        scale = scale.max(rhs.abs()).max(w(t)?.abs());
    }
    Ok(worst / scale)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PiconeReport {
    /// Pointwise residual of the identity, normalised.
    pub residual: f64,
    /// Smallest right-hand side on the grid; a sum of non-negative terms.
    pub min_rhs: f64,
    /// [z/y·(q₁yz′ − q₂y′z)] between the interval ends.
    pub boundary_bracket: f64,
    pub integral_z2: f64,
    /// Smallest gap q₁ − q₂ on the grid.
    pub eta: f64,
    /// boundary_bracket / ∫z², positive when the integrated form holds.
    pub ratio: f64,
}

/// Residual of the Sturm–Picone identity
/// (z/y·(q₁yz′ − q₂y′z))′ = (q₁ − q₂)z′² + q₂(z′ − y′z/y)²,
/// for z solving −(q₁z′)′ + gz = 0 and y > 0 solving −(q₂y′)′ + gy = 0.
pub fn sturm_picone_check(
    q1: Coefficient,
    q2: Coefficient,
    y: Solution,
    z: Solution,
    interval: (f64, f64),
    n: usize,
) -> Result<PiconeReport> {
    let (a, b) = interval;
    let pts = grid(a, b, n);
    let mut eta = f64::INFINITY;
    for &t in &pts {
        let d = q1(t) - q2(t);
        if !(d > 0.0 && q2(t) > 0.0) {
            return Err(Error::Precondition(format!("need q1 > q2 > 0, violated at {t}")));
        }
        if y(t)?.0 <= 0.0 {
            return Err(Error::Precondition(format!("need y > 0, violated at {t}")));
        }
        eta = eta.min(d);
    }
    let bracket = |t: f64| -> Result<f64> {
        let (yv, yd) = y(t)?;
        let (zv, zd) = z(t)?;
        Ok(zv / yv * (q1(t) * yv * zd - q2(t) * yd * zv))
    };
    let mut worst = 0.0_f64;
    let mut scale = 1.0_f64;
    let mut min_rhs = f64::INFINITY;
    for &t in &pts {
        let lhs = richardson(&bracket, t, FD_STEP)?;
        let (yv, yd) = y(t)?;
        let (zv, zd) = z(t)?;
        let rhs = (q1(t) - q2(t)) * zd * zd + q2(t) * (zd - yd * zv / yv).powi(2);
        worst = worst.max((lhs - rhs).abs());
        scale = scale.max(rhs.abs());
        min_rhs = min_rhs.min(rhs);
    }
    let boundary_bracket = bracket(b)? - bracket(a)?;
    let integral_z2 = simpson(&|t| z(t).map(|v| v.0 * v.0), a, b, 2000)?;
    Ok(PiconeReport {
        residual: worst / scale,
        min_rhs,
        boundary_bracket,
        integral_z2,
        eta,
        ratio: boundary_bracket / integral_z2,
    })
}

fn simpson(f: &impl Fn(f64) -> Result<f64>, a: f64, b: f64, n: usize) -> Result<f64> {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a)? + f(b)?;
    for i in 1..n {
        s += f(a + i as f64 * h)? * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    Ok(s * h / 3.0)
}

fn f_solution(x: f64) -> impl Fn(f64) -> Result<(f64, f64)> {
    move |z| f_g_eval(x, z).map(|v| (v.f, -(x - z) * v.g))
}

fn g_solution(x: f64) -> impl Fn(f64) -> Result<(f64, f64)> {
    move |z| f_g_eval(x, z).map(|v| (v.g, -v.f))
}

/// Both sides of the integrated Sturm identity for g_{x₁}, g_{x₂} over
/// [z_{2j−1}(x₂), z_{2j+1}(x₂)], as used for the odd zero curves.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegralAudit {
    pub j: usize,
    pub x1: f64,
    pub x2: f64,
    pub interval: (f64, f64),
    /// [g_{x₂}g′_{x₁} − g_{x₁}g′_{x₂}] between the ends.
    pub boundary: f64,
    /// ∫(x₁ − x₂)g_{x₁}g_{x₂}.
    pub integral: f64,
    /// Both sides agree and share the sign forced by z_{2j+1}(x₁) < z_{2j+1}(x₂).
    pub consistent: bool,
}

pub fn sturm_integral_audit(j: usize, x1: f64, x2: f64) -> Result<IntegralAudit> {
    if j == 0 || !(x1 < x2) {
        return Err(Error::Precondition("need j ≥ 1 and x1 < x2".into()));
    }
    let a = z_curve(2 * j - 1, x2)?;
    let b = z_curve(2 * j + 1, x2)?;
    let (y1, y2) = (g_solution(x1), g_solution(x2));
    let w = |t: f64| -> Result<f64> {
        let (u1, d1) = y1(t)?;
        let (u2, d2) = y2(t)?;
        Ok(u2 * d1 - u1 * d2)
    };
    let boundary = w(b)? - w(a)?;
    let integral = simpson(&|t| Ok((x1 - x2) * y1(t)?.0 * y2(t)?.0), a, b, 4000)?;
    let agree = (boundary - integral).abs() <= 1e-8 * boundary.abs().max(integral.abs()).max(1e-300);
    // With the true ordering g_{x₁} changes sign inside the interval, so no
    // strict sign is forced on the integral; the identity itself must hold.
    Ok(IntegralAudit { j, x1, x2, interval: (a, b), boundary, integral, consistent: agree })
}

/// One sampled sign statement about f_x, f_x′, g_x or g_x′.
#[derive(Clone, Debug, Serialize)]
pub struct SignCheck {
    pub x: f64,
    pub function: &'static str,
    pub interval: (f64, f64),
    /// +1 or −1: the sign the function is expected to have on the open interval.
    pub expected: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignAudit {
    pub checks: Vec<SignCheck>,
    /// Largest k covered; higher k is assumed to follow the same pattern.
    pub k_max: usize,
    /// Whether the printed form of the f_x statement, with factor (−1)^{j+1} on
    /// (z_{2j−2}, z_{2j}), holds anywhere it was sampled.
    pub printed_f_sign_holds: bool,
}

impl SignAudit {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn sample_sign(
    h: &impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    expected: f64,
) -> Result<bool> {
    const SAMPLES: usize = 24;
    for i in 1..SAMPLES {
        let t = a + (b - a) * i as f64 / SAMPLES as f64;
        if sign(h(t)?) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sample the sign pattern of f_x, f_x′, g_x, g_x′ between the zero curves, for
/// intervals bounded by z_0 … z_{k_max+1}.
pub fn sign_audit(xs: &[f64], k_max: usize) -> Result<SignAudit> {
    let jmax = k_max / 2;
    let mut checks = Vec::new();
    let mut printed = false;
    for &x in xs {
        let probe = sturm_probe(x, 2 * jmax + 1)?;
        let z = &probe.z;
        let f = |t: f64| f_g_eval(x, t).map(|v| v.f);
        let fp = |t: f64| f_g_eval(x, t).map(|v| -(x - t) * v.g);
        let g = |t: f64| f_g_eval(x, t).map(|v| v.g);
        let gp = |t: f64| f_g_eval(x, t).map(|v| -v.f);
        let left = -4.0;
        let mut push = |function, a: f64, b: f64, expected: f64, h: &dyn Fn(f64) -> Result<f64>| -> Result<()> {
            if b > a {
                let holds = sample_sign(&h, a, b, expected)?;
                checks.push(SignCheck { x, function, interval: (a, b), expected, holds });
            }
            Ok(())
        };
        let alt = |j: usize| if j % 2 == 0 { 1.0 } else { -1.0 };

        push("f_x'", left, 0.0, -1.0, &fp)?;
        push("f_x'", 0.0, x, 1.0, &fp)?;
        push("f_x'", x, z[1], -1.0, &fp)?;
        for j in 1..=jmax {
            push("f_x'", z[2 * j - 1], z[2 * j + 1], alt(j + 1), &fp)?;
        }
        push("f_x", left, z[0], 1.0, &f)?;
        for j in 1..=jmax {
            push("f_x", z[2 * j - 2], z[2 * j], alt(j), &f)?;
            printed |= sample_sign(&f, z[2 * j - 2], z[2 * j], alt(j + 1))?;
        }
        push("g_x'", left, z[0], -1.0, &gp)?;
        for j in 1..=jmax {
            push("g_x'", z[2 * j - 2], z[2 * j], alt(j + 1), &gp)?;
        }
        push("g_x", left, 0.0, 1.0, &g)?;
        push("g_x", 0.0, z[1], -1.0, &g)?;
        for j in 1..=jmax {
            push("g_x", z[2 * j - 1], z[2 * j + 1], alt(j + 1), &g)?;
        }
    }
    Ok(SignAudit { checks, k_max, printed_f_sign_holds: printed })
}

/// Everything the `sturm` report and the acceptance suite need.
#[derive(Clone, Debug, Serialize)]
pub struct SturmReport {
    pub k_max: usize,
    /// max_k |z_k(0) − c_k|.
    pub zk_at_zero_error: f64,
    /// Each z_k strictly increasing on the x grid.
    pub zk_increasing: bool,
    /// max |z_k(x) − (x − ψ_k(x))|.
    pub psi_consistency: f64,
    pub max_zero_residual: f64,
    pub derivative_residual: f64,
    pub sturm_residual: f64,
    pub picone: PiconeReport,
    pub integral_audits: Vec<IntegralAudit>,
    pub signs: SignAudit,
}

impl SturmReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.zk_at_zero_error <= 1e-10
            && self.zk_increasing
            && self.psi_consistency <= 1e-10
            && self.derivative_residual < tol
            && self.sturm_residual < tol
            && self.picone.residual < tol
            && self.picone.min_rhs >= 0.0
            && self.picone.boundary_bracket > 0.0
            && self.integral_audits.iter().all(|a| a.consistent)
            && self.signs.all_hold()
    }
}

/// Run every check for k ≤ k_max on the grid x = 0, 0.25, …, 5.
pub fn sturm_report(k_max: usize) -> Result<SturmReport> {
    let t = zeros::tables(k_max + 2)?;
    let xs: Vec<f64> = (0..=20).map(|i| 0.25 * i as f64).collect();
    let mut zk_at_zero_error = 0.0_f64;
    let mut zk_increasing = true;
    let mut psi_consistency = 0.0_f64;
    let mut max_zero_residual = 0.0_f64;
    for k in 0..=k_max {
        let mut prev = f64::NEG_INFINITY;
        for &x in &xs {
            let z = z_curve(k, x)?;
            if x == 0.0 {
                zk_at_zero_error = zk_at_zero_error.max((z - t.c(k)).abs());
            }
            zk_increasing &= z > prev;
            prev = z;
            psi_consistency = psi_consistency.max((z - (x - psi_lower(k, x)?)).abs());
            max_zero_residual = max_zero_residual.max(zero_fn(k, x)(z)?.abs());
        }
    }

    let mut derivative_residual = 0.0_f64;
    for &x in &[0.0, 1.0, 2.5, 5.0] {
        derivative_residual = derivative_residual.max(derivative_relation_residual(x, &grid(-3.0, 12.0, 60))?);
    }

    let (x1, x2) = (1.0, 2.0);
    // z = g_{x₁} solves −z″ + (x₁ − s)z = 0, y = g_{x₂} likewise with x₂.
    let (y, z) = (g_solution(x2), g_solution(x1));
    let g1 = move |s: f64| x1 - s;
    let g2 = move |s: f64| x2 - s;
    let sturm_residual = sturm_identity_check(
        &g1,
        &g2,
        &y,
        &z,
        (z_curve(1, x2)?, z_curve(3, x2)?),
        200,
    )?;

    let (fy, fz) = (f_solution(x2), f_solution(x1));
    let q1 = move |s: f64| 1.0 / (x1 - s);
    let q2 = move |s: f64| 1.0 / (x2 - s);
    let picone = sturm_picone_check(&q1, &q2, &fy, &fz, (-2.0, 0.9), 200)?;

    let integral_audits =
        (1..=3).map(|j| sturm_integral_audit(j, x1, x2)).collect::<Result<Vec<_>>>()?;
    let signs = sign_audit(&[0.0, 0.5, 2.0, 5.0], k_max)?;
    Ok(SturmReport {
        k_max,
        zk_at_zero_error,
        zk_increasing,
        psi_consistency,
        max_zero_residual,
        derivative_residual,
        sturm_residual,
        picone,
        integral_audits,
        signs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        for &x in &[0.0, 0.7, 3.0] {
            let v = f_g_eval(x, 0.0).unwrap();
            // π·W(Ai, Bi) = 1.
            assert!((v.f - 1.0).abs() < 1e-14, "x = {x}");
            assert!(v.g.abs() < 1e-14);
        }
        let v = f_g_eval(1.0, -0.5).unwrap();
        assert!(v.f > 0.0 && v.g > 0.0);
    }

    #[test]
    fn z_curve_at_origin_is_table() {
        let t = zeros::tables(8).unwrap();
        for k in 0..6 {
            assert_eq!(z_curve(k, 0.0).unwrap(), t.c(k));
        }
    }

    #[test]
    fn z0_bracket() {
        let t = zeros::tables(4).unwrap();
        let z = z_curve(0, 2.0).unwrap();
        assert!(z > 2.0 + t.a_tilde(1) && z <= 2.0 + t.c(0));
    }

    #[test]
    fn equal_coefficients_keep_wronskian() {
        let y = g_solution(1.0);
        let g = |s: f64| 1.0 - s;
        let y2 = |s: f64| airy_eval(1.0 - s).map(|a| (a.ai, -a.aip));
        let r = sturm_identity_check(&g, &g, &y, &y2, (0.0, 3.0), 50).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn picone_precondition() {
        let y = f_solution(2.0);
        let z = f_solution(1.0);
        let q1 = |s: f64| 1.0 / (2.0 - s);
        let q2 = |s: f64| 1.0 / (1.0 - s);
        assert!(matches!(
            sturm_picone_check(&q1, &q2, &y, &z, (-1.0, 0.5), 20),
            Err(Error::Precondition(_))
        ));
    }
}
