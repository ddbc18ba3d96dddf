use thiserror::Error;

use crate::{Big, CBig, Sign, UPoly};

#[derive(Debug, Error)]
pub enum RootError {
    #[error("zero polynomial input")]
    ZeroPolynomial,
    #[error("root iteration failed to converge within the iteration cap")]
    NonConvergence,
    #[error("sign determination ambiguous at working precision (escalate)")]
    IllConditioned,
}

/// Σ|cᵢ|·|x|ⁱ — attainable evaluation magnitude, the scale for backward-error
/// zero tests at `x`.
fn incoherent_eval(f: &UPoly, x_abs: &Big) -> Big {
    let p = f.prec();
    let mut acc = Big::zero(p);
    for c in f.coeffs().iter().rev() {
        acc = &acc * x_abs + &c.abs();
    }
    acc
}

/// All complex roots of `f` by the Aberth–Ehrlich simultaneous iteration.
///
/// Roots are clustered at radius 2^(−p/4)·(1+|z|); each cluster is returned
/// once with its size, sizes summing to deg f. Simple roots converge to
/// relative 2^(−(p−16)) — tighter than the 2^(−p/2) contract, nearly free
/// given the quadratic tail — so downstream root products stay accurate.
/// Multiple roots are accepted on backward error (|f(z)| at the attainable
/// floor) and reported through the cluster size.
pub fn complex_roots(f: &UPoly) -> Result<Vec<(CBig, usize)>, RootError> {
    let p = f.prec();
    let f = f.trim_default();
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let n = f.degree();
    if n == 0 {
        return Ok(vec![]);
    }

    // Fujiwara-style radius bound in log2.
    let en = f.leading().exponent();
    let mut rad_log2: f64 = 0.0;
    for k in 0..n {
        let ck = f.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let t = (ck.exponent() - en) as f64 / (n - k) as f64;
        rad_log2 = rad_log2.max(t);
    }
    rad_log2 += 1.0;

    // Initial guesses on a circle, angles offset from symmetry axes.
    let mut z: Vec<CBig> = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64 + 0.353) / n as f64;
            let scale = (0.75 + 0.5 * (j % 3) as f64 / 3.0) * rad_log2.rem_euclid(1.0).exp2();
            let re = Big::from_f64(theta.cos() * scale, p).mul_pow2(rad_log2.floor() as i64);
            let im = Big::from_f64(theta.sin() * scale, p).mul_pow2(rad_log2.floor() as i64);
            CBig::new(re, im)
        })
        .collect();

    let df = f.derivative();
    let one = Big::from_u64(1, p);
    let tol = one.mul_pow2(-(p as i64 - 16));
    let residual_floor = one.mul_pow2(-(p as i64 - 32));
    let tiny = one.mul_pow2(-2 * p as i64);
    let mut converged = vec![false; n];
    let max_iter = 96 + 32 * n;

    for _ in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let pz = f.eval_complex(&z[i]);
            let z_abs = z[i].abs();
            // Backward-error acceptance (handles multiple roots, whose
            // forward iteration is only linearly convergent).
            if pz.abs() <= &incoherent_eval(&f, &z_abs) * &residual_floor {
                converged[i] = true;
                continue;
            }
            let dpz = df.eval_complex(&z[i]);
            if dpz.is_zero() {
                // Sitting on a critical point: nudge off it.
                z[i] = &z[i] + &CBig::new(&tol * &(&z_abs + &one), tiny.clone());
                all_done = false;
                continue;
            }
            let w = pz.div(&dpz);
            let mut s = CBig::zero(p);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = &z[i] - zj;
                    if d.is_zero() {
                        continue;
                    }
                    s = &s + &d.recip();
                }
            }
            let denom = &CBig::one(p) - &(&w * &s);
            let dz = if denom.norm_sq() <= tiny { w } else { w.div(&denom) };
            z[i] = &z[i] - &dz;
            let scale = &z[i].abs() + &one.mul_pow2(-(p as i64) / 2);
            if dz.abs() <= &tol * &scale {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    if converged.iter().any(|c| !c) {
        return Err(RootError::NonConvergence);
    }

    Ok(cluster(z, p))
}

fn cluster(mut roots: Vec<CBig>, p: usize) -> Vec<(CBig, usize)> {
    // Deterministic order before greedy merging.
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let mut out: Vec<(CBig, usize)> = Vec::new();
    let quarter = -(p as i64) / 4;
    for r in roots {
        let radius = (&r.abs() + &Big::from_u64(1, p)).mul_pow2(quarter);
        match out.iter_mut().find(|(c, _)| (&r - c).abs() <= radius) {
            Some((c, k)) => {
                // Running centroid keeps the representative stable.
                let kk = Big::from_u64(*k as u64, p);
                let kk1 = Big::from_u64(*k as u64 + 1, p);
                *c = CBig::new((&c.re * &kk + &r.re) / &kk1, (&c.im * &kk + &r.im) / &kk1);
                *k += 1;
            }
            None => out.push((r, 1)),
        }
    }
    out
}

/// Isolated real roots of `f` with multiplicity estimates, via sign-change
/// counting on a Sturm remainder sequence, interval bisection, and Newton
/// refinement once isolated.
pub fn real_roots(f: &UPoly) -> Result<Vec<(Big, usize)>, RootError> {
    let p = f.prec();
    let f = f.trim_default();
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(vec![]);
    }
    let norm = f.norm_inf();
    let f = f.scale(&norm.recip());
    let one = Big::from_u64(1, p);

    // Sturm chain with relative truncation of negligible remainders; each
    // element rescaled to unit norm (sign patterns are scale-invariant).
    let mut chain = vec![f.clone(), f.derivative()];
    let chain_eps = one.mul_pow2(-(p as i64) / 2);
    loop {
        let k = chain.len();
        let a = &chain[k - 2];
        let b = &chain[k - 1];
        if b.degree() == 0 {
            break;
        }
        let (_, r) = a.div_rem(b);
        let r = r.trim(&chain_eps);
        if r.norm_inf() <= &(&a.norm_inf() + &b.norm_inf()) * &chain_eps {
            break;
        }
        let neg = r.scale(&Big::from_i64(-1, p));
        let nrm = neg.norm_inf();
        chain.push(neg.scale(&nrm.recip()));
    }

    // Sign-variation count; `None` sign (value below the trust floor but not
    // exactly zero) is an escalation signal.
    let variations = |x: &Big| -> Result<u32, RootError> {
        let mut v = 0;
        let mut last: Option<bool> = None;
        for s in &chain {
            let val = s.eval(x);
            if val.is_zero() {
                continue;
            }
            let scale = incoherent_eval(s, &x.abs());
            if val.abs() <= scale.mul_pow2(-(p as i64) + 24) {
                return Err(RootError::IllConditioned);
            }
            let neg = val.sign() == Sign::Neg;
            if let Some(l) = last {
                if l != neg {
                    v += 1;
                }
            }
            last = Some(neg);
        }
        Ok(v)
    };

    // Root radius bound.
    let en = f.leading().exponent();
    let mut rad_log2: i64 = 0;
    for k in 0..f.degree() {
        let ck = f.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let t = (ck.exponent() - en) / (f.degree() - k) as i64 + 2;
        rad_log2 = rad_log2.max(t);
    }
    let bound = one.mul_pow2(rad_log2 + 1);

    let va = variations(&-&bound)?;
    let vb = variations(&bound)?;
    if va.saturating_sub(vb) == 0 {
        return Ok(vec![]);
    }

    // Bisect (a,b] by variation counts; refine once isolated or at width floor.
    let mut stack = vec![(-&bound, bound.clone(), va, vb)];
    let mut found: Vec<(Big, usize)> = Vec::new();
    let width_floor = |a: &Big, b: &Big| {
        let m = a.abs().max(&b.abs()) + one.clone();
        m.mul_pow2(-(p as i64) / 2)
    };
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        if count == 0 {
            continue;
        }
        let width = &b - &a;
        if count == 1 || width <= width_floor(&a, &b) {
            let seed = newton_polish(&f, &(&a + &b).mul_pow2(-1), &width, p);
            found.push((seed, count as usize));
            continue;
        }
        let mid = (&a + &b).mul_pow2(-1);
        let vm = variations(&mid)?;
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }

    // Merge refined roots that collapsed to the same cluster.
    found.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut out: Vec<(Big, usize)> = Vec::new();
    let quarter = -(p as i64) / 4;
    for (r, m) in found {
        let radius = (&r.abs() + &one).mul_pow2(quarter);
        match out.last_mut() {
            Some((c, k)) if (&r - &*c).abs() <= radius => *k += m,
            _ => out.push((r, m)),
        }
    }
    Ok(out)
}

/// Newton polish from an isolating-interval midpoint: steps are clamped to the
/// interval radius so the iterate cannot escape to a different root.
fn newton_polish(f: &UPoly, x0: &Big, width: &Big, p: usize) -> Big {
    let df = f.derivative();
    let one = Big::from_u64(1, p);
    let tol = one.mul_pow2(-(p as i64) + 8);
    let residual_floor = one.mul_pow2(-(p as i64) + 32);
    let mut x = x0.clone();
    let clamp = width.abs();
    for _ in 0..2 * p {
        let fx = f.eval(&x);
        if fx.is_zero() || fx.abs() <= &incoherent_eval(f, &x.abs()) * &residual_floor {
            break;
        }
        let dfx = df.eval(&x);
        if dfx.is_zero() {
            break;
        }
        let mut step = &fx / &dfx;
        if step.abs() > clamp {
            step = if step.sign() == Sign::Neg { -clamp.clone() } else { clamp.clone() };
        }
        let next = &x - &step;
        let delta = step.abs();
        x = next;
        if delta <= &tol * &(&x.abs() + &one) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[f64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| Big::from_f64(c, 256)).collect())
    }

    #[test]
    fn no_real_roots() {
        let f = poly(&[1.0, 0.0, 1.0]); // u²+1
        assert!(real_roots(&f).unwrap().is_empty());
    }

    #[test]
    fn cubic_roots() {
        let f = poly(&[0.0, -1.0, 0.0, 1.0]); // u³-u
        let roots = real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        let expect = [-1.0, 0.0, 1.0];
        for ((r, m), e) in roots.iter().zip(expect) {
            assert_eq!(*m, 1);
            assert!((r - &Big::from_f64(e, 256)).abs() <= Big::from_u64(1, 256).mul_pow2(-200));
        }
    }

    #[test]
    fn rational_root() {
        // 7u - 3
        let f = poly(&[-3.0, 7.0]);
        let roots = real_roots(&f).unwrap();
        assert_eq!(roots.len(), 1);
        let expect = Big::from_ratio(3, 7, 256);
        assert!((&roots[0].0 - &expect).abs() <= Big::from_u64(1, 256).mul_pow2(-200));
    }

    #[test]
    fn double_root_multiplicity() {
        // (u-1)²(u+2)
        let f = poly(&[2.0, -3.0, 0.0, 1.0]);
        let roots = real_roots(&f).unwrap();
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3, "{roots:?}");
        let at_one: usize = roots
            .iter()
            .filter(|(r, _)| (r - &Big::from_u64(1, 256)).abs() <= Big::from_u64(1, 256).mul_pow2(-40))
            .map(|(_, m)| *m)
            .sum();
        assert_eq!(at_one, 2);
    }

    #[test]
    fn complex_sqrt2() {
        let f = poly(&[-2.0, 0.0, 1.0]);
        let roots = complex_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        let s2 = Big::from_f64(2.0, 256).sqrt();
        for (z, m) in &roots {
            assert_eq!(*m, 1);
            assert!(z.im.abs() <= Big::from_u64(1, 256).mul_pow2(-200));
            assert!((&z.re.abs() - &s2).abs() <= Big::from_u64(1, 256).mul_pow2(-200));
        }
    }

    #[test]
    fn complex_triple_root_clusters() {
        // (u-1)³ = u³ - 3u² + 3u - 1
        let f = poly(&[-1.0, 3.0, -3.0, 1.0]);
        let roots = complex_roots(&f).unwrap();
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3);
        assert_eq!(roots.len(), 1, "cluster of 3 expected: {roots:?}");
        let one = Big::from_u64(1, 256);
        assert!((&roots[0].0.re - &one).abs() <= one.mul_pow2(-40));
    }

    #[test]
    fn unit_circle_17() {
        // u^17 + 1: all roots on the unit circle.
        let mut cs = vec![0.0; 18];
        cs[0] = 1.0;
        cs[17] = 1.0;
        let f = poly(&cs);
        let roots = complex_roots(&f).unwrap();
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 17);
        for (z, _) in &roots {
            let r = z.abs();
            assert!((&r - &Big::from_u64(1, 256)).abs() <= Big::from_u64(1, 256).mul_pow2(-180));
        }
    }

    #[test]
    fn close_but_distinct_roots_not_merged() {
        // Roots at 1 and 1+2^-20: separated well above the 2^-64 cluster radius.
        let p = 256;
        let eps = Big::from_u64(1, p).mul_pow2(-20);
        let r2 = &Big::from_u64(1, p) + &eps;
        let f = UPoly::new(vec![
            r2.clone(),
            -(&Big::from_u64(1, p) + &r2),
            Big::from_u64(1, p),
        ]);
        let roots = complex_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        let rr = real_roots(&f).unwrap();
        assert_eq!(rr.len(), 2);
        assert!((&rr[1].0 - &r2).abs() <= Big::from_u64(1, p).mul_pow2(-180));
    }
}
