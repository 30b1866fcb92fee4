//! Psi_D(k, l) and the sums of L(1, chi_{Dm}) over m of fixed degree.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::lpoly::{integer_coefficients, l_polynomial_fast};
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_all, enumerate_monic, factor, is_squarefree, Poly};
use crate::upoly::{int, Rational};

/// Ψ_D(k,l) by enumerating pairs of monic x, y.
pub fn psi_count_direct(d: &Poly, k: usize, l: usize) -> Result<u64> {
    let q = d.modulus();
    let ys: Vec<Poly> = enumerate_monic(q, l).filter(|y| y.gcd(d).map(|g| g.is_one()).unwrap_or(false)).collect();
    let mut n = 0u64;
    for x in enumerate_monic(q, k) {
        if !x.gcd(d)?.is_one() {
            continue;
        }
        for y in &ys {
            if x.gcd(y)?.is_one() {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Coefficients [k][l] (k + l <= n) of
/// M*_D(u) M*_D(v) (1 - q u v) / (M*_D(uv) (1 - q u) (1 - q v)).
pub fn psi_series(d: &Poly, n: usize) -> Result<Vec<Vec<i128>>> {
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    let q = d.modulus() as i128;
    let prime_degrees: Vec<usize> = factor(d)?.factors.iter().map(|(p, _)| p.degree().unwrap()).collect();
    // univariate pieces
    let mut m_star = vec![0i128; n + 1];
    m_star[0] = 1;
    for &e in &prime_degrees {
        for i in (e..=n).rev() {
            m_star[i] -= m_star[i - e];
        }
    }
    let geom: Vec<i128> = (0..=n).map(|i| q.pow(i as u32)).collect();
    // a(u) = M*(u) / (1 - q u)
    let mut a = vec![0i128; n + 1];
    for i in 0..=n {
        a[i] = (0..=i).map(|j| m_star[j] * geom[i - j]).sum();
    }
    // w(t) = (1 - q t) / M*(t), a series in t = uv
    let mut inv_m = vec![0i128; n + 1];
    inv_m[0] = 1;
    for &e in &prime_degrees {
        // multiply by 1/(1 - t^e)
        for i in e..=n {
            inv_m[i] += inv_m[i - e];
        }
    }
    let mut w = vec![0i128; n + 1];
    for i in 0..=n {
        w[i] = inv_m[i] - if i > 0 { q * inv_m[i - 1] } else { 0 };
    }
    let mut out = vec![vec![0i128; n + 1]; n + 1];
    for (k, row) in out.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate().take(n + 1 - k) {
            let mut s = 0i128;
            for j in 0..=k.min(l) {
                s += w[j] * a[k - j] * a[l - j];
            }
            *cell = s;
        }
    }
    Ok(out)
}

/// Ψ_D(k,l) from the generating identity.
pub fn psi_count(d: &Poly, k: usize, l: usize) -> Result<u64> {
    let s = psi_series(d, k + l)?;
    u64::try_from(s[k][l]).map_err(|_| Error::Invariant(format!("negative Psi({k},{l})")))
}

/// For each k, the sum over m of degree l (any leading coefficient, coprime
/// to D) of c_k(chi_{Dm}).
pub fn sum_l_coefficients(d: &Poly, l: usize) -> Result<Vec<BigInt>> {
    let ms: Vec<Poly> = enumerate_all(d.modulus(), l)
        .filter(|m| m.gcd(d).map(|g| g.is_one()).unwrap_or(false))
        .collect();
    let len = l + d.degree().unwrap_or(0);
    let partial: Result<Vec<Vec<BigInt>>> = ms
        .par_iter()
        .map(|m| {
            let lp = l_polynomial_fast(&(d * m))?;
            let mut c = integer_coefficients(&lp);
            c.resize(len, BigInt::zero());
            Ok(c)
        })
        .collect();
    let mut acc = vec![BigInt::zero(); len];
    for c in partial? {
        for (a, b) in acc.iter_mut().zip(c) {
            *a += b;
        }
    }
    Ok(acc)
}

/// Σ•_{deg m = l} L(1, χ_{Dm}), exact.
pub fn sum_l_values(d: &Poly, l: usize) -> Result<Rational> {
    if l == 0 {
        return Err(Error::Precondition("l >= 1".into()));
    }
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    let q = int(d.modulus() as i64);
    let coeffs = sum_l_coefficients(d, l)?;
    let mut s = Rational::zero();
    let mut pw = Rational::from_integer(1.into());
    for c in coeffs {
        s += Rational::from_integer(c) * &pw;
        pw /= &q;
    }
    Ok(s)
}

/// Right-hand side of the finite-l identity at s = 1:
/// (q-1) Σ_{k <= (l-δ)/2} Ψ_D(k,l) q^{-2k} + Σ_{k=l-δ+1}^{l+δ-1} (Σ_m c_k) q^{-k}.
pub fn sum_l_split(d: &Poly, l: usize) -> Result<Rational> {
    let delta = d.degree().unwrap_or(0) as i64;
    let qq = d.modulus() as i64;
    let q = int(qq);
    let coeffs = sum_l_coefficients(d, l)?;
    let mut s = Rational::zero();
    let kmax = (l as i64 - delta).div_euclid(2);
    for k in 0..=kmax {
        let psi = psi_count(d, k as usize, l)?;
        s += int(qq - 1) * int(psi as i64) / q.pow((2 * k) as i32);
    }
    for k in (l as i64 - delta + 1).max(0)..=(l as i64 + delta - 1) {
        if let Some(c) = coeffs.get(k as usize) {
            s += Rational::from_integer(c.clone()) / q.pow(k as i32);
        }
    }
    Ok(s)
}
