//! Minimal binary floating point on top of `BigInt`: value = mant · 2^exp,
//! mantissa truncated to `PREC` bits after every operation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{float::FloatCore, ToPrimitive, Zero};

pub const PREC: u64 = 512;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            mant: BigInt::from(1),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn normalized(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > PREC {
            let sh = bits - PREC;
            self.mant >>= sh;
            self.exp += sh as i64;
        }
        self
    }

    /// Exact.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite input {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let (m, e, s) = FloatCore::integer_decode(x);
        Self {
            mant: BigInt::from(m) * s,
            exp: e as i64,
        }
    }

    /// Parses a plain decimal such as "1.1032626513".
    pub fn from_decimal(s: &str) -> Self {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits = format!("{int}{frac}");
        let d = BigInt::parse_bytes(digits.as_bytes(), 10).expect("decimal digits");
        let ten = BigInt::from(10).pow(frac.len() as u32);
        let shift = PREC + ten.bits();
        Self {
            mant: (d << shift) / ten,
            exp: -(shift as i64),
        }
        .normalized()
    }

    /// ⌊log₂|x|⌋ up to one; −∞ for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.mant.bits() as i64 + self.exp) as f64
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
        .normalized()
    }

    pub fn mul_int(&self, m: u64) -> Self {
        Self {
            mant: &self.mant * m,
            exp: self.exp,
        }
        .normalized()
    }

    /// Division by a positive integer.
    pub fn div_int(&self, d: &BigInt) -> Self {
        let shift = PREC + d.bits();
        Self {
            mant: (&self.mant << shift) / d,
            exp: self.exp - shift as i64,
        }
        .normalized()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let gap = self.log2() - o.log2();
        let guard = (PREC + 16) as f64;
        if gap > guard {
            return self.clone();
        }
        if gap < -guard {
            return o.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Self { mant: a + b, exp: e }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Nearest f64 up to one unit in the last place; ±∞ on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let sh = bits.saturating_sub(64);
        let m = (&self.mant >> sh).to_f64().expect("64-bit mantissa");
        let mut e = self.exp + sh as i64;
        let mut v = m;
        while e > 900 {
            v *= 2f64.powi(900);
            e -= 900;
            if v.is_infinite() {
                return v;
            }
        }
        while e < -900 {
            v *= 2f64.powi(-900);
            e += 900;
            if v == 0.0 {
                return v;
            }
        }
        v * 2f64.powi(e as i32)
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero() -> Self {
        Self {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigFloat::one(),
            im: BigFloat::zero(),
        }
    }

    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: BigFloat::from_f64(z.re),
            im: BigFloat::from_f64(z.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// log₂ of the larger component, within one.
    pub fn log2(&self) -> f64 {
        self.re.log2().max(self.im.log2())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, r: &BigFloat) -> Self {
        Self {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trips() {
        let a = BigFloat::from_f64(1.5);
        let b = BigFloat::from_f64(-0.25);
        assert_eq!(a.add(&b).to_f64(), 1.25);
        assert_eq!(a.mul(&b).to_f64(), -0.375);
        assert_eq!(a.div_int(&BigInt::from(3)).to_f64(), 0.5);
        let third = BigFloat::one().div_int(&BigInt::from(3));
        let back = third.mul_int(3).sub(&BigFloat::one());
        assert!(back.log2() < -(PREC as f64) + 4.0);
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(BigFloat::from_decimal("2.5").to_f64(), 2.5);
        assert_eq!(BigFloat::from_decimal("0.1").to_f64(), 0.1);
        assert_eq!(
            BigFloat::from_f64(1e300).mul(&BigFloat::from_f64(1e300)).to_f64(),
            f64::INFINITY
        );
    }
}
