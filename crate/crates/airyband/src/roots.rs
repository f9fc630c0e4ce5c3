//! Bracketed root finding shared by the solvers.

use crate::error::{Error, Result};

/// Bisection for `f` on `[lo, hi]` given the sign of `f` at `lo` and at `hi`.
///
/// The endpoint signs are passed in so that callers can supply signs known
/// analytically at points where `f` itself is only rounding noise. Iterates
/// until the interval is narrower than `xtol` or cannot be split further.
pub(crate) fn bisect<F>(mut f: F, lo: f64, hi: f64, sign_lo: f64, sign_hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(sign_lo * sign_hi < 0.0) {
        return Err(Error::Bracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2000 {
        let m = a + 0.5 * (b - a);
        if b - a <= xtol || m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == sign_lo {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(a + 0.5 * (b - a))
}

/// Sign of a value, with zero mapped to zero.
pub(crate) fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
