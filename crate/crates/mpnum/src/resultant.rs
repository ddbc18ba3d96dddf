use std::collections::BTreeMap;

use crate::{complex_roots, Big, CBig, PolyError, UPoly};

/// Resultant of two polynomials: determinant of the Sylvester matrix of size
/// deg f + deg g, evaluated by Gaussian elimination with partial pivoting at
/// working precision.
pub fn resultant(f: &UPoly, g: &UPoly) -> Result<Big, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial("resultant"));
    }
    let m = f.degree();
    let n = g.degree();
    let p = f.prec().max(g.prec());
    if m == 0 {
        return Ok(f.leading().powi(n as i64));
    }
    if n == 0 {
        return Ok(g.leading().powi(m as i64));
    }
    let size = m + n;
    // Row i < n holds u^(n-1-i)·f, rows n..n+m hold u^(m-1-(i-n))·g,
    // columns indexed by descending power.
    let mut a = vec![vec![Big::zero(p); size]; size];
    for i in 0..n {
        for (k, c) in f.coeffs().iter().enumerate() {
            // coefficient of u^k sits at column (size-1) - (k + n-1-i)
            a[i][size - 1 - k - (n - 1 - i)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().enumerate() {
            a[n + i][size - 1 - k - (m - 1 - i)] = c.clone();
        }
    }
    Ok(determinant(a, p))
}

fn determinant(mut a: Vec<Vec<Big>>, p: usize) -> Big {
    let n = a.len();
    let mut det = Big::from_u64(1, p);
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].cmp_abs(&a[piv][col]) == std::cmp::Ordering::Greater {
                piv = r;
            }
        }
        if a[piv][col].is_zero() {
            return Big::zero(p);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col + 1..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            a[r][col] = Big::zero(p);
        }
    }
    det
}

/// Coefficients R_σ of R(T, x₁S₁ + … + xₙSₙ) = Σ_σ x^σ R_σ, computed through
/// the complex roots λᵢ of T as lc(T)^m · ∏ᵢ Σⱼ xⱼSⱼ(λᵢ) with m = max deg Sⱼ.
///
/// Each value is paired with an "incoherent" scale: the same product expanded
/// with absolute values, which bounds attainable magnitude and gives a
/// scale-free vanishing test for that multi-index.
pub struct GenResultants {
    /// σ → (value, incoherent scale)
    pub values: BTreeMap<Vec<u32>, (Big, Big)>,
    /// Largest |Im| residual kept after conjugate cancellation, relative to scale.
    pub max_im_rel: Big,
}

pub fn generalized_resultants(t: &UPoly, s: &[UPoly]) -> Result<GenResultants, PolyError> {
    assert!(!s.is_empty(), "need at least one pencil member");
    if t.is_zero() || t.degree() == 0 {
        return Err(PolyError::ZeroPolynomial("generalized_resultants"));
    }
    let p = t.prec();
    let n = s.len();
    let roots = complex_roots(t)?;
    let m = s.iter().map(|si| si.degree()).max().unwrap() as i64;
    let lc_pow = t.leading().powi(m);

    // Product of linear forms over roots, expanded over multi-indices.
    let mut acc: BTreeMap<Vec<u32>, CBig> = BTreeMap::new();
    acc.insert(vec![0; n], CBig::one(p));
    let mut acc_abs: BTreeMap<Vec<u32>, Big> = BTreeMap::new();
    acc_abs.insert(vec![0; n], Big::from_u64(1, p));

    for (lam, mult) in &roots {
        let vals: Vec<CBig> = s.iter().map(|si| si.eval_complex(lam)).collect();
        let abses: Vec<Big> = vals.iter().map(|v| v.abs()).collect();
        for _ in 0..*mult {
            let mut next: BTreeMap<Vec<u32>, CBig> = BTreeMap::new();
            for (sigma, coeff) in &acc {
                for (j, v) in vals.iter().enumerate() {
                    let mut key = sigma.clone();
                    key[j] += 1;
                    let term = coeff * v;
                    match next.get_mut(&key) {
                        Some(e) => *e = &*e + &term,
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
            acc = next;
            let mut next_abs: BTreeMap<Vec<u32>, Big> = BTreeMap::new();
            for (sigma, mag) in &acc_abs {
                for (j, a) in abses.iter().enumerate() {
                    let mut key = sigma.clone();
                    key[j] += 1;
                    let term = mag * a;
                    match next_abs.get_mut(&key) {
                        Some(e) => *e = &*e + &term,
                        None => {
                            next_abs.insert(key, term);
                        }
                    }
                }
            }
            acc_abs = next_abs;
        }
    }

    let mut values = BTreeMap::new();
    let mut max_im_rel = Big::zero(p);
    for (sigma, z) in acc {
        let scale = &acc_abs[&sigma] * &lc_pow.abs();
        let val = &z.re * &lc_pow;
        if !scale.is_zero() {
            let rel = (&z.im * &lc_pow).abs() / &scale;
            if rel > max_im_rel {
                max_im_rel = rel.clone();
            }
        }
        values.insert(sigma, (val, scale));
    }
    Ok(GenResultants { values, max_im_rel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[f64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| Big::from_f64(c, 256)).collect())
    }

    #[test]
    fn resultant_linear_pair() {
        // res(u - a, u - b) = a - b
        let f = poly(&[-3.0, 1.0]);
        let g = poly(&[-5.0, 1.0]);
        let r = resultant(&f, &g).unwrap();
        assert!((&r - &Big::from_f64(2.0, 256)).abs() <= Big::from_u64(1, 256).mul_pow2(-200));
    }

    #[test]
    fn resultant_shared_root_vanishes() {
        // (u-1)(u-2) vs u-1
        let f = poly(&[2.0, -3.0, 1.0]);
        let g = poly(&[-1.0, 1.0]);
        let r = resultant(&f, &g).unwrap();
        assert!(r.abs() <= Big::from_u64(1, 256).mul_pow2(-200));
    }

    #[test]
    fn resultant_antisymmetry() {
        let f = poly(&[1.0, 4.0, -2.0, 1.0]); // deg 3
        let g = poly(&[2.0, -1.0, 3.0]); // deg 2
        let rfg = resultant(&f, &g).unwrap();
        let rgf = resultant(&g, &f).unwrap();
        // (-1)^(3·2) = 1
        assert!((&rfg - &rgf).abs() <= rfg.abs().mul_pow2(-180));
    }

    #[test]
    fn generalized_matches_hand_expansion() {
        // T=(u-1)(u-2), S1=u-1, S2=u-2: R_(1,1) = -1, others 0.
        let t = poly(&[2.0, -3.0, 1.0]);
        let s1 = poly(&[-1.0, 1.0]);
        let s2 = poly(&[-2.0, 1.0]);
        let gr = generalized_resultants(&t, &[s1, s2]).unwrap();
        let one = Big::from_u64(1, 256);
        let (v11, _) = &gr.values[&vec![1u32, 1u32]];
        assert!((v11 + &one).abs() <= one.mul_pow2(-120));
        let (v20, s20) = &gr.values[&vec![2u32, 0u32]];
        assert!(v20.abs() <= s20 * &one.mul_pow2(-120));
        let (v02, s02) = &gr.values[&vec![0u32, 2u32]];
        assert!(v02.abs() <= s02 * &one.mul_pow2(-120));
    }

    #[test]
    fn generalized_reduces_to_resultant() {
        let t = poly(&[1.0, -4.0, 0.0, 2.0]);
        let s = poly(&[3.0, 2.0, 1.0]);
        let gr = generalized_resultants(&t, std::slice::from_ref(&s)).unwrap();
        let (v, _) = &gr.values[&vec![3u32]];
        let r = resultant(&t, &s).unwrap();
        assert!((v - &r).abs() <= r.abs().mul_pow2(-120) + Big::from_u64(1, 256).mul_pow2(-120));
    }

    #[test]
    fn count_matches_stars_and_bars() {
        // t=4, n=3 → C(6,2)=15 multi-indices.
        let t = poly(&[1.0, 0.0, -3.0, 0.0, 1.0]);
        let s = [poly(&[1.0, 1.0]), poly(&[2.0, -1.0]), poly(&[0.5, 0.0, 1.0])];
        let gr = generalized_resultants(&t, &s).unwrap();
        assert_eq!(gr.values.len(), 15);
        for sigma in gr.values.keys() {
            assert_eq!(sigma.iter().sum::<u32>(), 4);
        }
    }
}
