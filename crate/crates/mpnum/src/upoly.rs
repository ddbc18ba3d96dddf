use std::fmt;

use crate::{Big, CBig};

/// Univariate polynomial in `u` with [`Big`] coefficients, ascending powers.
///
/// The working degree is established by [`UPoly::trim`]: leading coefficients
/// whose magnitude falls below `eps · max|cᵢ|` are dropped, so tiny numerical
/// residue never inflates the degree.
#[derive(Clone)]
pub struct UPoly {
    c: Vec<Big>,
}

impl UPoly {
    pub fn new(coeffs: Vec<Big>) -> Self {
        assert!(!coeffs.is_empty(), "UPoly needs at least one coefficient");
        UPoly { c: coeffs }
    }

    pub fn zero(p: usize) -> Self {
        UPoly { c: vec![Big::zero(p)] }
    }

    pub fn constant(v: Big) -> Self {
        UPoly { c: vec![v] }
    }

    pub fn coeffs(&self) -> &[Big] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Big {
        self.c.get(k).cloned().unwrap_or_else(|| Big::zero(self.prec()))
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn prec(&self) -> usize {
        self.c.iter().map(|c| c.prec()).max().unwrap_or(crate::DEFAULT_PREC)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn leading(&self) -> &Big {
        self.c.last().expect("nonempty")
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> Big {
        let mut m = Big::zero(self.prec());
        for c in &self.c {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Drop leading coefficients with |c| ≤ eps_rel · max|cᵢ|.
    pub fn trim(&self, eps_rel: &Big) -> UPoly {
        let norm = self.norm_inf();
        if norm.is_zero() {
            return UPoly::zero(self.prec());
        }
        let thr = &norm * eps_rel;
        let mut n = self.c.len();
        while n > 1 && self.c[n - 1].abs() <= thr {
            n -= 1;
        }
        UPoly { c: self.c[..n].to_vec() }
    }

    /// Trim at the conventional threshold 2^(−p/2).
    pub fn trim_default(&self) -> UPoly {
        let p = self.prec();
        self.trim(&Big::from_u64(1, p).mul_pow2(-((p / 2) as i64)))
    }

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        let p = self.prec().max(rhs.prec());
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.c.get(k).cloned().unwrap_or_else(|| Big::zero(p));
            let b = rhs.c.get(k).cloned().unwrap_or_else(|| Big::zero(p));
            out.push(&a + &b);
        }
        UPoly { c: out }
    }

    pub fn sub(&self, rhs: &UPoly) -> UPoly {
        self.add(&rhs.scale(&Big::from_i64(-1, rhs.prec())))
    }

    pub fn scale(&self, s: &Big) -> UPoly {
        UPoly { c: self.c.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        let p = self.prec().max(rhs.prec());
        let mut out = vec![Big::zero(p); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly { c: out }
    }

    /// Shift coefficients up by `k` powers (multiply by u^k).
    pub fn shift_up(&self, k: usize) -> UPoly {
        let p = self.prec();
        let mut c = vec![Big::zero(p); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn derivative(&self) -> UPoly {
        if self.c.len() == 1 {
            return UPoly::zero(self.prec());
        }
        let p = self.prec();
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * &Big::from_u64(k as u64, p))
            .collect();
        UPoly { c }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Big) -> Big {
        let mut acc = Big::zero(self.prec());
        for c in self.c.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &CBig) -> CBig {
        let p = self.prec();
        let mut acc = CBig::zero(p);
        for c in self.c.iter().rev() {
            acc = &(&acc * z) + &CBig::from_re(c.clone());
        }
        acc
    }

    /// Monic normalization (divides by the leading coefficient).
    pub fn monic(&self) -> UPoly {
        let lc = self.leading();
        assert!(!lc.is_zero(), "monic of zero-leading polynomial");
        let inv = lc.recip();
        let mut c: Vec<Big> = self.c.iter().map(|a| a * &inv).collect();
        let n = c.len();
        c[n - 1] = Big::from_u64(1, self.prec());
        UPoly { c }
    }

    /// Euclidean division: self = q·div + r with deg r < deg div.
    pub fn div_rem(&self, div: &UPoly) -> (UPoly, UPoly) {
        let p = self.prec().max(div.prec());
        assert!(!div.leading().is_zero(), "division by zero-leading polynomial");
        if self.degree() < div.degree() {
            return (UPoly::zero(p), self.clone());
        }
        let mut rem = self.c.clone();
        let dq = self.degree() - div.degree();
        let mut q = vec![Big::zero(p); dq + 1];
        let lc_inv = div.leading().recip();
        for k in (0..=dq).rev() {
            let t = &rem[k + div.degree()] * &lc_inv;
            if !t.is_zero() {
                for (j, d) in div.c.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&t * d);
                }
            }
            rem[k + div.degree()] = Big::zero(p);
            q[k] = t;
        }
        rem.truncate(div.degree().max(1));
        (UPoly { c: q }, UPoly { c: rem })
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() && self.c.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})·u^{k}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
