use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Default working precision in bits.
pub const DEFAULT_PREC: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

// Mantissa words must be u64 for the exact BigInt import below.
const _: () = assert!(std::mem::size_of::<astro_float::Word>() == 8);

thread_local! {
    // Cache of math constants (pi, e, ln2...) used by transcendental ops.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Sign of a [`Big`] value; zero is reported as `Zero`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// Arbitrary-precision binary float with value-carried precision.
///
/// Binary operations round to the larger of the two operand precisions;
/// elementary functions round to the operand's precision. Every operation
/// rounds to nearest, ties to even.
#[derive(Clone)]
pub struct Big {
    v: BigFloat,
    p: usize,
}

impl Big {
    fn wrap(v: BigFloat, p: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN produced in Big arithmetic");
        Big { v, p }
    }

    pub fn zero(p: usize) -> Self {
        Big { v: BigFloat::new(p), p }
    }

    pub fn from_u64(n: u64, p: usize) -> Self {
        Big { v: BigFloat::from_u64(n, p), p }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Big { v: BigFloat::from_i64(n, p), p }
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        assert!(x.is_finite(), "Big::from_f64 requires finite input");
        Big { v: BigFloat::from_f64(x, p), p }
    }

    /// Exact integer import (no rounding as long as `p` covers the bit length).
    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        if n.is_zero() {
            return Big::zero(p);
        }
        let bits = n.magnitude().bits() as usize;
        let words: Vec<u64> = n.magnitude().iter_u64_digits().collect();
        let sign = if n.is_negative() { astro_float::Sign::Neg } else { astro_float::Sign::Pos };
        let mut v = BigFloat::from_words(&words, sign, bits as astro_float::Exponent);
        let target = p.max(bits.next_multiple_of(64));
        v.set_precision(target, RM).expect("set_precision");
        Big { v, p: target.max(p) }
    }

    /// Rational import with a single rounding: exact numerator and denominator,
    /// one division at precision `p`.
    pub fn from_rational(q: &BigRational, p: usize) -> Self {
        let num = Big::from_bigint(q.numer(), p);
        let den = Big::from_bigint(q.denom(), p);
        let v = num.v.div(&den.v, p, RM);
        Big::wrap(v, p)
    }

    pub fn from_ratio(num: i64, den: i64, p: usize) -> Self {
        assert!(den != 0);
        let n = Big::from_i64(num, p);
        let d = Big::from_i64(den, p);
        Big::wrap(n.v.div(&d.v, p, RM), p)
    }

    /// Parse a decimal literal ("1.25", "-3e-2") at precision `p`.
    pub fn parse_decimal(s: &str, p: usize) -> Option<Self> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Big { v, p })
        }
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    /// Re-round to precision `p` (used at pipeline precision boundaries).
    pub fn with_prec(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("set_precision");
        Big { v, p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_inf() && !self.v.is_nan()
    }

    pub fn sign(&self) -> Sign {
        if self.v.is_zero() {
            Sign::Zero
        } else if self.v.is_negative() {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    /// Binary exponent e with |x| ∈ [2^(e−1), 2^e); 0 for zero.
    pub fn exponent(&self) -> i64 {
        self.v.exponent().map(|e| e as i64).unwrap_or(0)
    }

    pub fn abs(&self) -> Self {
        Big::wrap(self.v.abs(), self.p)
    }

    /// Multiply by 2^k exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.v.is_zero() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = self.exponent() + k;
        assert!(e >= i32::MIN as i64 && e <= i32::MAX as i64, "exponent overflow");
        v.set_exponent(e as astro_float::Exponent);
        Big::wrap(v, self.p)
    }

    fn join(&self, rhs: &Big) -> usize {
        self.p.max(rhs.p)
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.sign() != Sign::Neg, "sqrt of negative");
        Big::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        Big::wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn ln(&self) -> Self {
        assert!(self.sign() == Sign::Pos, "ln of non-positive");
        Big::wrap(with_consts(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Self {
        Big::wrap(with_consts(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    pub fn cos(&self) -> Self {
        Big::wrap(with_consts(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Big::wrap(self.v.reciprocal(self.p, RM), self.p)
    }

    /// Integer power by astro's binary exponentiation.
    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        Big::wrap(self.v.powi(n as usize, self.p, RM), self.p)
    }

    /// x^q for rational q; negative base requires integral q.
    pub fn pow_rational(&self, q: &BigRational) -> Option<Self> {
        use num_traits::ToPrimitive;
        if q.is_integer() {
            let n = q.numer().to_i64()?;
            if self.is_zero() && n < 0 {
                return None;
            }
            return Some(self.powi(n));
        }
        match self.sign() {
            Sign::Neg => None,
            Sign::Zero => {
                if q.is_positive() {
                    Some(Big::zero(self.p))
                } else {
                    None
                }
            }
            Sign::Pos => {
                let e = Big::from_rational(q, self.p + 64);
                let v = with_consts(|cc| self.v.pow(&e.v, self.p, RM, cc));
                Some(Big::wrap(v, self.p))
            }
        }
    }

    pub fn cmp_abs(&self, rhs: &Big) -> Ordering {
        match self.v.abs_cmp(&rhs.v) {
            Some(c) => c.cmp(&0),
            None => panic!("NaN in comparison"),
        }
    }

    pub fn min(&self, rhs: &Big) -> Big {
        if self <= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    pub fn max(&self, rhs: &Big) -> Big {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    /// Round-trip through decimal text; exact up to the carried precision.
    pub fn to_decimal_string(&self) -> String {
        with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).expect("format")
    }

    /// Nearest f64 (±inf on overflow, 0 on underflow).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent();
        if e > 1100 {
            return if self.sign() == Sign::Neg { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if e < -1100 {
            return 0.0;
        }
        self.to_decimal_string().parse::<f64>().unwrap_or(f64::NAN)
    }

    /// (decimal mantissa string "d.ddd…", power of ten) with `digits`
    /// significant digits; deterministic for a fixed value.
    pub fn to_sci_parts(&self, digits: usize) -> (String, i64) {
        if self.is_zero() {
            return ("0".to_string(), 0);
        }
        let s = self.to_decimal_string();
        // astro format: [-]d[.ddd]e[+-]ddd (exponent part optional).
        let (mant, exp10) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m.to_string(), e.parse::<i64>().expect("exp10")),
            None => (s, 0),
        };
        let neg = mant.starts_with('-');
        let digits_str: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let point = mant.find('.').map_or(digits_str.len() + neg as usize, |i| i) - neg as usize;
        // Normalize to one leading digit.
        let lead_zeros = digits_str.chars().take_while(|&c| c == '0').count();
        if lead_zeros == digits_str.len() {
            return ("0".to_string(), 0);
        }
        let norm_exp = exp10 + point as i64 - 1 - lead_zeros as i64;
        let sig: String = digits_str.chars().skip(lead_zeros).take(digits).collect();
        let sig = sig.trim_end_matches('0');
        let sig = if sig.is_empty() { "0" } else { sig };
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&sig[..1]);
        if sig.len() > 1 {
            out.push('.');
            out.push_str(&sig[1..]);
        }
        (out, norm_exp)
    }
}

impl fmt::Debug for Big {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.to_sci_parts(10);
        write!(f, "{m}e{e}")
    }
}

impl fmt::Display for Big {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.to_sci_parts(f.precision().unwrap_or(20));
        if e == 0 {
            write!(f, "{m}")
        } else {
            write!(f, "{m}e{e}")
        }
    }
}

impl PartialEq for Big {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Big {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($trait:ident, $m:ident) => {
        impl $trait for &Big {
            type Output = Big;
            fn $m(self, rhs: &Big) -> Big {
                let p = self.join(rhs);
                Big::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $trait for Big {
            type Output = Big;
            fn $m(self, rhs: Big) -> Big {
                (&self).$m(&rhs)
            }
        }
        impl $trait<&Big> for Big {
            type Output = Big;
            fn $m(self, rhs: &Big) -> Big {
                (&self).$m(rhs)
            }
        }
        impl $trait<Big> for &Big {
            type Output = Big;
            fn $m(self, rhs: Big) -> Big {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Big {
    type Output = Big;
    fn neg(self) -> Big {
        Big::wrap(self.v.neg(), self.p)
    }
}

impl Neg for Big {
    type Output = Big;
    fn neg(self) -> Big {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn exact_integer_roundtrip() {
        let n = BigInt::from_str("123456789012345678901234567890123456789").unwrap();
        let b = Big::from_bigint(&n, DEFAULT_PREC);
        assert_eq!(b.to_decimal_string().contains("e+"), true);
        let back: f64 = b.to_f64();
        assert!((back - 1.2345678901234568e38).abs() / 1e38 < 1e-12);
    }

    #[test]
    fn rational_single_rounding() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let b = Big::from_rational(&q, 256);
        let three = Big::from_u64(3, 256);
        let prod = &b * &three;
        let one = Big::from_u64(1, 256);
        let err = (&prod - &one).abs();
        assert!(err <= one.mul_pow2(-250));
    }

    #[test]
    fn mul_pow2_exact() {
        let x = Big::from_f64(3.0, 128);
        assert_eq!(x.mul_pow2(4), Big::from_f64(48.0, 128));
        assert_eq!(x.mul_pow2(-1), Big::from_f64(1.5, 128));
    }

    #[test]
    fn sci_parts() {
        let x = Big::from_f64(-12345.678, 128);
        let (m, e) = x.to_sci_parts(8);
        assert_eq!(e, 4);
        assert!(m.starts_with("-1.2345678"), "{m}");
        let tiny = Big::from_f64(2.0, 64).powi(-3000);
        let (_, e) = tiny.to_sci_parts(5);
        assert_eq!(e, -904);
    }

    #[test]
    fn elementary_sanity() {
        let p = 256;
        let x = Big::from_f64(0.5, p);
        let lhs = x.exp().ln();
        let err = (&lhs - &x).abs();
        assert!(err <= Big::from_u64(1, p).mul_pow2(-250));
        let s = x.sin();
        let c = x.cos();
        let one = &s * &s + &c * &c;
        assert!((&one - &Big::from_u64(1, p)).abs() <= Big::from_u64(1, p).mul_pow2(-250));
    }

    #[test]
    fn pow_rational_matches_sqrt() {
        let p = 256;
        let x = Big::from_f64(2.0, p);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = x.pow_rational(&half).unwrap();
        let b = x.sqrt();
        assert!((&a - &b).abs() <= Big::from_u64(1, p).mul_pow2(-250));
    }
}
