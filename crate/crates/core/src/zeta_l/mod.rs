//! M_d(s), ζ_A(s), Dirichlet L-polynomials L*(u, χ_b), class numbers of
//! imaginary quadratic orders and a brute-force Picard-group oracle.

mod classno;
mod lpoly;
mod picard;
mod psi;
mod sieve;

pub use classno::{class_number, class_number_odd_degree_relation, QuadraticOrderDescriptor};
pub use lpoly::{
    eval_at_inverse_q, integer_coefficients, l_coefficient, l_coefficients_sieved, l_polynomial, l_polynomial_fast,
    squarefree_decomposition, within_rh_bound, InfinityType,
};
pub use picard::{picard_oracle, picard_oracle_bounded, PICARD_MAX_DEGREE};
pub use psi::{psi_count, psi_count_direct, psi_series, sum_l_coefficients, sum_l_split, sum_l_values};
pub use sieve::MonicSieve;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, mobius, monic_divisors, Poly};
use crate::upoly::{int, rpow, Rational, UPolynomial};
use num_traits::{One, Zero};

/// M_d(s) = Π_{p|d} (1 - |p|^{-s}).
pub fn m_d(d: &Poly, s: i64) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let q = int(d.modulus() as i64);
    let mut acc = Rational::one();
    for (p, _) in factor(d)?.factors {
        acc *= Rational::one() - rpow(&q, -s * p.degree().unwrap() as i64);
    }
    Ok(acc)
}

/// M_d(s) as Σ_{e|d monic} μ(e) |e|^{-s}.
pub fn m_d_sum(d: &Poly, s: i64) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let q = int(d.modulus() as i64);
    let mut acc = Rational::zero();
    for e in monic_divisors(d)? {
        let mu = mobius(&e)?;
        if mu != 0 {
            acc += int(mu as i64) * rpow(&q, -s * e.degree().unwrap() as i64);
        }
    }
    Ok(acc)
}

/// M*_d(u) = Π_{p|d} (1 - u^{deg p}).
pub fn m_d_upoly(d: &Poly) -> Result<UPolynomial> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut acc = UPolynomial::one();
    for (p, _) in factor(d)?.factors {
        let k = p.degree().unwrap();
        acc = &acc * &(&UPolynomial::one() - &UPolynomial::monomial(int(1), k));
    }
    Ok(acc)
}

/// ζ_A(s) = 1/(1 - q^{1-s}) for s >= 2.
pub fn zeta_a(q: u32, s: i64) -> Result<Rational> {
    if s < 2 {
        return Err(Error::Precondition(format!("zeta_A(s) needs s >= 2, got {s}")));
    }
    Ok((Rational::one() - rpow(&int(q as i64), 1 - s)).recip())
}

/// Denominator of ζ*_A(u) = 1/(1 - q u).
pub fn zeta_a_denominator(q: u32) -> UPolynomial {
    UPolynomial::from_ints(&[1, -(q as i64)])
}

/// ζ*_A(u) truncated at u^n.
pub fn zeta_a_series(q: u32, n: usize) -> UPolynomial {
    zeta_a_denominator(q).inverse_series(n).expect("constant term is 1")
}
