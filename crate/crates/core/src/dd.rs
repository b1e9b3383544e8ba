//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi)/2`, giving roughly 106 bits of significand.
//!
//! Only what the Mittag-Leffler series needs is here: the four field
//! operations, `exp`, `ln` and `ln_gamma` for real arguments, plus a complex
//! wrapper. Algorithms follow the usual error-free transformations
//! (Knuth two-sum, FMA two-product).

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

/// Unit roundoff used for error bookkeeping. 2^-104 leaves a factor of four
/// of slack over the nominal 2^-106.
pub(crate) const EPS: f64 = 4.930380657631324e-32;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

const HALF_LN_2PI: DoubleDouble = DoubleDouble {
    hi: 0.9189385332046728,
    lo: -3.8782941580672414e-17,
};

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
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Self::renorm(p, e)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 = self.lo.mul_add(b, p2);
        Self::renorm(p1, p2)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let e = e - p2 + self.lo;
        let q2 = (s + e) / b;
        Self::renorm(q1, q2)
    }

    /// Multiplication by an exact power of two.
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        // Split the scale so that 2^k itself never overflows.
        let half = k / 2;
        let a = 2f64.powi(half);
        let b = 2f64.powi(k - half);
        Self {
            hi: self.hi * a * b,
            lo: self.lo * a * b,
        }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// Natural exponential. Overflows to +inf and underflows to zero the way
    /// `f64::exp` does.
    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 {
            return Self::ONE;
        }
        // a = k ln2 + r, then r is shrunk by 2^-10 and e^r - 1 is summed.
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        let mut term = r;
        let mut expm1 = r;
        for n in 2..=11 {
            term = (term * r).div_f64(n as f64);
            expm1 = expm1 + term;
        }
        // (1 + s)^2 - 1 = s (2 + s), applied ten times.
        for _ in 0..10 {
            expm1 = expm1 * (expm1 + Self::from_f64(2.0));
        }
        (expm1 + Self::ONE).ldexp(k as i32)
    }

    /// Natural logarithm of a strictly positive value; one Newton step on
    /// `exp` from the `f64` estimate.
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        if self.hi == 1.0 && self.lo == 0.0 {
            return Self::ZERO;
        }
        let x = Self::from_f64(self.hi.ln());
        x + self * (-x).exp() - Self::ONE
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
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
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::renorm(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        Self::renorm(p1, p2)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Self::renorm(q1, q2) + Self::from_f64(q3)
    }
}

/// Stirling coefficients B_2n / (2n (2n - 1)) for n = 1..=14.
fn stirling_coefficients() -> &'static [DoubleDouble; 14] {
    static COEFFS: OnceLock<[DoubleDouble; 14]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // Bernoulli numbers B_2 .. B_28 as exact integer ratios.
        const BERNOULLI: [(f64, f64); 14] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
        ];
        let mut out = [DoubleDouble::ZERO; 14];
        for (i, &(num, den)) in BERNOULLI.iter().enumerate() {
            let n = (i + 1) as f64;
            // den * 2n * (2n - 1) stays far below 2^53, so it is exact.
            out[i] = DoubleDouble::from_f64(num) / DoubleDouble::from_f64(den * 2.0 * n * (2.0 * n - 1.0));
        }
        out
    })
}

/// ln Γ(x) for real x >= 1, to double-double accuracy.
///
/// The argument is shifted to y = x + N >= 40 so that fourteen Stirling
/// terms are far below 2^-106, then the shift is undone through
/// ln(x (x+1) ... (x+N-1)).
pub(crate) fn ln_gamma(x: DoubleDouble) -> DoubleDouble {
    debug_assert!(x.hi >= 1.0);
    if x == DoubleDouble::ONE || x == DoubleDouble::from_f64(2.0) {
        return DoubleDouble::ZERO;
    }
    let shift = (40.0 - x.hi).ceil().max(0.0) as usize;
    let mut y = x;
    let mut product = DoubleDouble::ONE;
    for _ in 0..shift {
        product = product * y;
        y = y + DoubleDouble::ONE;
    }
    let ln_y = y.ln();
    let mut s = (y - DoubleDouble::from_f64(0.5)) * ln_y - y + HALF_LN_2PI;
    let w = y.recip();
    let w2 = w.sqr();
    let coeffs = stirling_coefficients();
    let mut acc = coeffs[13];
    for c in coeffs[..13].iter().rev() {
        acc = acc * w2 + *c;
    }
    s = s + acc * w;
    if shift > 0 {
        s = s - product.ln();
    }
    s
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub const ONE: Self = Self {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    /// Product with an `f64` complex factor.
    #[inline]
    pub fn mul_c64(self, z: Complex64) -> Self {
        Self {
            re: self.re.mul_f64(z.re) - self.im.mul_f64(z.im),
            im: self.re.mul_f64(z.im) + self.im.mul_f64(z.re),
        }
    }

    #[inline]
    pub fn scale(self, s: DoubleDouble) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    #[inline]
    pub fn norm_f64(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for ComplexDd {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        Self {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}
