//! Double-double arithmetic: an unevaluated sum of two `f64`s giving roughly
//! 31 significant decimal digits.
//!
//! The logarithmic integral of a 10^9-scale argument is itself of order 10^7,
//! so plain `f64` cannot even represent it to the 1e-9 absolute accuracy the
//! rest of the crate wants. All li evaluation happens in this type and is
//! rounded once at the end.
//!
//! The primitives are the classical error-free transforms (Knuth's TwoSum,
//! FMA-based TwoProd) and the add/mul/div compositions from the QD library of
//! Hida, Li and Bailey.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An extended-precision value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires `|a| >= |b|` (or either being zero).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    /// ln 2 to double-double precision.
    pub const LN_2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };
    /// The Euler–Mascheroni constant.
    pub const EULER_GAMMA: Self = Self {
        hi: 0.577_215_664_901_532_9,
        lo: -4.942_915_152_430_645e-18,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    /// Builds from components that are already normalized
    /// (`|lo| <= ulp(hi)/2`), e.g. tabulated constants.
    #[inline]
    pub const fn new_unchecked(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Scales by 2^k exactly.
    #[inline]
    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// e^self, accurate to roughly 1 ulp of double-double.
    ///
    /// Argument reduction by ln 2, then the Taylor series of exp on
    /// `|r| <= ln(2)/2`.
    pub fn exp(self) -> Self {
        if self.hi < -700.0 {
            return Self::ZERO;
        }
        if self.hi > 700.0 {
            return Self {
                hi: f64::INFINITY,
                lo: 0.0,
            };
        }
        let k = (self.hi / Self::LN_2.hi).round();
        let r = self - Self::LN_2 * k;
        let mut sum = Self::ONE + r;
        let mut term = r;
        for i in 2..64u32 {
            term = term * r / f64::from(i);
            sum = sum + term;
            if term.hi.abs() < sum.hi.abs() * 1e-35 {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    /// Natural logarithm; `self` must be positive.
    ///
    /// Starts from the `f64` logarithm and applies one extended-precision
    /// correction step, which squares the initial 1e-16 relative error.
    pub fn ln(self) -> Self {
        assert!(
            self.hi > 0.0,
            "DoubleDouble::ln of non-positive value {}",
            self.hi
        );
        let y0 = self.hi.ln();
        let w = self * Self::from(-y0).exp();
        let d = w - 1.0;
        Self::from(y0) + d - d * d * 0.5
    }
}

impl From<f64> for DoubleDouble {
    #[inline]
    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }
}

impl From<u64> for DoubleDouble {
    #[inline]
    fn from(v: u64) -> Self {
        let hi = v as f64;
        // v <= 2^64, so the rounding error fits an i128 and converts exactly.
        let lo = (v as i128 - hi as i128) as f64;
        Self::new(hi, lo)
    }
}

impl From<DoubleDouble> for f64 {
    #[inline]
    fn from(v: DoubleDouble) -> f64 {
        v.to_f64()
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * rhs);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn div(self, rhs: f64) -> Self {
        self / Self::from(rhs)
    }
}
