//! Double-double arithmetic, just enough for the Maclaurin series and
//! for phase reduction of large oscillatory arguments.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Dd::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    /// Square root of a non-negative f64, returned to double-double accuracy.
    pub fn sqrt_f64(x: f64) -> Self {
        if x <= 0.0 {
            return Dd::default();
        }
        let s = x.sqrt();
        let (p, e) = two_prod(s, s);
        let corr = ((x - p) - e) / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, corr);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[cfg(test)]
const DD_PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub(crate) const DD_TWO_PI: Dd = Dd::new(std::f64::consts::TAU, 2.4492935982947064e-16);

/// cos and sin of `theta`, reduced modulo 2π in double-double.
pub(crate) fn cos_sin(theta: Dd) -> (f64, f64) {
    let n = (theta.hi / DD_TWO_PI.hi).round();
    let r = theta - DD_TWO_PI.mul_f64(n);
    let (s, c) = r.hi.sin_cos();
    (c - s * r.lo, s + c * r.lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_keeps_low_bits() {
        let a = Dd::from_f64(1.0 + f64::EPSILON);
        let p = a * a;
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn division_round_trips() {
        let x = Dd::from_f64(1.0).div_f64(3.0);
        let back = x.mul_f64(3.0) - Dd::from_f64(1.0);
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn sqrt_residual_is_tiny() {
        let s = Dd::sqrt_f64(2.0);
        let r = s * s - Dd::from_f64(2.0);
        assert!(r.to_f64().abs() < 1e-30);
    }

    #[test]
    fn reduction_of_large_phase() {
        // 1000π + 0.5 reduces to 0.5 and keeps full accuracy.
        let theta = DD_PI.mul_f64(1000.0) + Dd::from_f64(0.5);
        let (c, s) = cos_sin(theta);
        assert!((c - 0.5f64.cos()).abs() < 1e-15);
        assert!((s - 0.5f64.sin()).abs() < 1e-15);
    }
}
