use std::ops::{Add, Mul, Neg, Sub};

use crate::Big;

/// Complex number over [`Big`]; used by the simultaneous root iteration and
/// the root-product construction of generalized resultants.
#[derive(Clone, Debug)]
pub struct CBig {
    pub re: Big,
    pub im: Big,
}

impl CBig {
    pub fn new(re: Big, im: Big) -> Self {
        CBig { re, im }
    }

    pub fn from_re(re: Big) -> Self {
        let p = re.prec();
        CBig { re, im: Big::zero(p) }
    }

    pub fn zero(p: usize) -> Self {
        CBig { re: Big::zero(p), im: Big::zero(p) }
    }

    pub fn one(p: usize) -> Self {
        CBig { re: Big::from_u64(1, p), im: Big::zero(p) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |z|² — cheaper than abs, monotone for comparisons.
    pub fn norm_sq(&self) -> Big {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Big {
        self.norm_sq().sqrt()
    }

    pub fn conj(&self) -> CBig {
        CBig { re: self.re.clone(), im: -&self.im }
    }

    pub fn recip(&self) -> CBig {
        let d = self.norm_sq();
        assert!(!d.is_zero(), "complex reciprocal of zero");
        CBig { re: &self.re / &d, im: -&self.im / &d }
    }

    pub fn div(&self, rhs: &CBig) -> CBig {
        self * &rhs.recip()
    }

    pub fn scale(&self, s: &Big) -> CBig {
        CBig { re: &self.re * s, im: &self.im * s }
    }
}

impl Add for &CBig {
    type Output = CBig;
    fn add(self, rhs: &CBig) -> CBig {
        CBig { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &CBig {
    type Output = CBig;
    fn sub(self, rhs: &CBig) -> CBig {
        CBig { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &CBig {
    type Output = CBig;
    fn mul(self, rhs: &CBig) -> CBig {
        CBig {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &CBig {
    type Output = CBig;
    fn neg(self) -> CBig {
        CBig { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let p = 192;
        let z = CBig::new(Big::from_f64(3.0, p), Big::from_f64(4.0, p));
        assert_eq!(z.abs(), Big::from_f64(5.0, p));
        let w = z.div(&z);
        assert!((&w.re - &Big::from_u64(1, p)).abs() <= Big::from_u64(1, p).mul_pow2(-180));
        assert!(w.im.abs() <= Big::from_u64(1, p).mul_pow2(-180));
    }
}
