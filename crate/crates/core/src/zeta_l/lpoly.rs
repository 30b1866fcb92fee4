use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sieve::MonicSieve;
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic, factor, jacobi, legendre, Poly};
use crate::upoly::{int, Rational, UPolynomial};

/// Splitting type of the infinite place of K in K(sqrt m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfinityType {
    Ramified,
    Inert,
    Split,
}

impl InfinityType {
    pub fn of(m: &Poly) -> Result<Self> {
        let d = m.degree().ok_or(Error::ZeroInput)?;
        Ok(if d % 2 == 1 {
            InfinityType::Ramified
        } else if legendre(m.lc(), m.modulus()) == -1 {
            InfinityType::Inert
        } else {
            InfinityType::Split
        })
    }

    /// True unless m is a square in K_inf.
    pub fn is_imaginary(self) -> bool {
        self != InfinityType::Split
    }

    /// Linear factor f(u) with L*(u, chi) = f(u) L_E(u) for square-free
    /// nonconstant m: 1, 1+u, 1-u.
    pub fn infinite_factor(self) -> UPolynomial {
        match self {
            InfinityType::Ramified => UPolynomial::one(),
            InfinityType::Inert => UPolynomial::from_ints(&[1, 1]),
            InfinityType::Split => UPolynomial::from_ints(&[1, -1]),
        }
    }

    fn linear_coeff(self) -> i64 {
        match self {
            InfinityType::Ramified => 0,
            InfinityType::Inert => 1,
            InfinityType::Split => -1,
        }
    }
}

/// `m = m0 * f^2` with m0 square-free (carrying the leading coefficient) and f monic.
pub fn squarefree_decomposition(m: &Poly) -> Result<(Poly, Poly)> {
    let fac = factor(m)?;
    let q = m.modulus();
    let mut m0 = Poly::constant(q, fac.unit as i64);
    let mut f = Poly::one(q);
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            m0 = &m0 * p;
        }
        f = &f * &p.pow((e / 2) as u64);
    }
    Ok((m0, f))
}

/// c_k(chi_b) = sum over monic a of degree k of (b/a), by direct enumeration.
pub fn l_coefficient(b: &Poly, k: usize) -> Result<i64> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut s = 0i64;
    for a in enumerate_monic(b.modulus(), k) {
        s += jacobi(b, &a)? as i64;
    }
    Ok(s)
}

/// c_0..=c_k of chi_b through the monic sieve (character values on primes only).
pub fn l_coefficients_sieved(b: &Poly, k: usize, sieve: &MonicSieve) -> Result<Vec<i64>> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let np = sieve.prime_count_upto(k);
    let mut chi = Vec::with_capacity(np);
    for p in &sieve.primes()[..np] {
        chi.push(jacobi(b, p)?);
    }
    chi.resize(sieve.primes().len(), 0);
    Ok(sieve.degree_sums(&chi, k))
}

fn check_nonsquare(b: &Poly) -> Result<(Poly, Poly)> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (b0, f) = squarefree_decomposition(b)?;
    if b0.is_constant() {
        if legendre(b0.lc(), b.modulus()) == 1 {
            return Err(Error::PerfectSquare(b.to_string()));
        }
        return Err(Error::PerfectSquare(format!("{b} (a constant times a square)")));
    }
    Ok((b0, f))
}

/// L*(u, chi_b) = sum_{k < deg b} c_k(chi_b) u^k, every coefficient an explicit
/// character sum. Requires b to be a non-square, and not a constant times a square.
pub fn l_polynomial(b: &Poly) -> Result<UPolynomial> {
    check_nonsquare(b)?;
    let n = b.degree().unwrap() - 1;
    let sieve = MonicSieve::cached(b.modulus(), n.max(1));
    let c = l_coefficients_sieved(b, n, &sieve)?;
    Ok(UPolynomial::from_ints(&c))
}

/// Same polynomial from c_0..c_g of the square-free part, completed by the
/// functional equation of L_E and the Euler factors at primes dividing f.
pub fn l_polynomial_fast(b: &Poly) -> Result<UPolynomial> {
    let (b0, f) = check_nonsquare(b)?;
    let q = b.modulus();
    let d0 = b0.degree().unwrap();
    let kind = InfinityType::of(&b0)?;
    let g = if d0 % 2 == 1 { (d0 - 1) / 2 } else { (d0 - 2) / 2 };
    let sieve = MonicSieve::cached(q, g.max(1));
    let c = l_coefficients_sieved(&b0, g, &sieve)?;
    let f1 = kind.linear_coeff();
    let mut e = vec![0i64; 2 * g + 1];
    for k in 0..=g {
        e[k] = c[k] - if k > 0 { f1 * e[k - 1] } else { 0 };
    }
    for k in 0..g {
        e[2 * g - k] = (q as i64).pow((g - k) as u32) * e[k];
    }
    let mut out = &kind.infinite_factor() * &UPolynomial::from_ints(&e);
    for (p, _) in factor(&f)?.factors {
        let s = jacobi(&b0, &p)? as i64;
        let dp = p.degree().unwrap();
        let mut v = vec![0i64; dp + 1];
        v[0] = 1;
        v[dp] -= s;
        out = &out * &UPolynomial::from_ints(&v);
    }
    Ok(out)
}

/// Integer coefficients of an L-polynomial.
pub fn integer_coefficients(l: &UPolynomial) -> Vec<BigInt> {
    l.integer_coeffs().expect("L-polynomial coefficients are integers")
}

/// Binomial bound binom(n, k) q^{k/2}, compared via squares: returns true if
/// c^2 <= binom(n,k)^2 q^k.
pub fn within_rh_bound(c: &BigInt, n: usize, k: usize, q: u32) -> bool {
    if k > n {
        return c.is_zero();
    }
    let mut binom = BigInt::one();
    for i in 0..k {
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c * c <= &binom * &binom * num_traits::pow(BigInt::from(q), k)
}

/// L*(1/q, chi).
pub fn eval_at_inverse_q(l: &UPolynomial, q: u32) -> Rational {
    l.eval(&int(q as i64).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{enumerate_all, is_squarefree};

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(l_coefficient(&p(3, &[0, 1]), 0).unwrap(), 1);
        assert_eq!(l_coefficient(&p(3, &[0, 1]), 1).unwrap(), 0);
        assert_eq!(l_polynomial(&p(3, &[0, 1])).unwrap(), UPolynomial::one());
        // -t = 2t: chi(t)=0, chi(t+1)=(2t/t+1)=(1/t+1)... direct sum is the oracle
        let c1 = l_coefficient(&p(3, &[0, 2]), 1).unwrap();
        assert_eq!(l_polynomial(&p(3, &[0, 2])).unwrap(), UPolynomial::from_ints(&[1, c1]));
        assert!(matches!(l_polynomial(&p(3, &[1, 2, 1])), Err(Error::PerfectSquare(_))));
        assert!(matches!(l_polynomial(&p(3, &[2])), Err(Error::PerfectSquare(_))));
    }

    #[test]
    fn higher_coefficients_vanish() {
        for q in [3u32, 5] {
            for d in 1..=3 {
                for b in enumerate_all(q, d) {
                    if check_nonsquare(&b).is_err() {
                        continue;
                    }
                    for k in d..=d + 1 {
                        assert_eq!(l_coefficient(&b, k).unwrap(), 0, "b={b} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn sieve_matches_direct_sums() {
        for q in [3u32, 5] {
            let sieve = MonicSieve::new(q, 3);
            for b in enumerate_all(q, 3) {
                let s = l_coefficients_sieved(&b, 3, &sieve).unwrap();
                for (k, &ck) in s.iter().enumerate() {
                    assert_eq!(ck, l_coefficient(&b, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn fast_route_matches_character_sums() {
        for (q, dmax) in [(3u32, 6usize), (5, 4)] {
            for d in 1..=dmax {
                for b in enumerate_all(q, d) {
                    if check_nonsquare(&b).is_err() {
                        continue;
                    }
                    assert_eq!(l_polynomial_fast(&b).unwrap(), l_polynomial(&b).unwrap(), "b={b}");
                }
            }
        }
    }

    #[test]
    fn rh_bound_on_squarefree() {
        for b in enumerate_all(3, 5) {
            if !is_squarefree(&b).unwrap() {
                continue;
            }
            let l = l_polynomial(&b).unwrap();
            for (k, c) in integer_coefficients(&l).iter().enumerate() {
                assert!(within_rh_bound(c, 4, k, 3));
            }
        }
    }
}
