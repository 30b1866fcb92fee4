//! Closed-form right-hand sides: mass, exact class numbers for irreducible D,
//! β-limits and the L-average limits, all as exact rationals.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, is_irreducible, is_squarefree, smallest_nonsquare, Poly};
use crate::upoly::{fmt_rational, int, rpow, Rational, UPolynomial};
use crate::zeta_l::{l_polynomial_fast, m_d, zeta_a, InfinityType};

fn check_split(d: &Poly, d0: &Poly, d1: &Poly) -> Result<usize> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    if (d0 * d1).monic() != d.monic() {
        return Err(Error::Precondition(format!("D0·D1 = {}·{} is not D = {d} up to a unit", d0, d1)));
    }
    Ok(factor(d)?.factors.len())
}

/// The mass formula in the stated form and in the derivation form, with
/// r = number of primes of D:
///   q^δ M_D(1) M_{D0}(2) / (2^r (q²-1)(2M_{D0}(1) - M_{D0}(2)))
///   q^δ M_D(1) M_D(2) / (2^r (q²-1)(2M_{D0}(1)M_{D1}(2) - M_D(2))).
pub fn mass_formula_forms(d: &Poly, d0: &Poly, d1: &Poly) -> Result<(Rational, Rational)> {
    let r = check_split(d, d0, d1)?;
    let q = d.modulus() as i64;
    let delta = d.degree().unwrap() as i64;
    let qd = rpow(&int(q), delta);
    let two_r = int(2).pow(r as i32);
    let base = &two_r * int(q * q - 1);
    let stated = &qd * m_d(d, 1)? * m_d(d0, 2)? / (&base * (int(2) * m_d(d0, 1)? - m_d(d0, 2)?));
    let c = int(2) * m_d(d0, 1)? * m_d(d1, 2)? - m_d(d, 2)?;
    let derived = &qd * m_d(d, 1)? * m_d(d, 2)? / (&base * c);
    Ok((stated, derived))
}

/// Mass of the genus with isotropic part D0 and anisotropic part D1; both
/// forms are evaluated and must agree.
pub fn mass_formula(d: &Poly, d0: &Poly, d1: &Poly) -> Result<Rational> {
    let (a, b) = mass_formula_forms(d, d0, d1)?;
    if a != b {
        return Err(Error::Invariant(format!(
            "mass formula forms disagree: {} vs {}",
            fmt_rational(&a),
            fmt_rational(&b)
        )));
    }
    Ok(a)
}

/// (q^δ - 1)/(2(q² - 1)), the irreducible case.
pub fn mass_irreducible(q: u32, delta: usize) -> Rational {
    let q = int(q as i64);
    (rpow(&q, delta as i64) - int(1)) / (int(2) * (&q * &q - int(1)))
}

/// L_E(u) for χ_m: L*(u, χ_m) with the infinite-place factor removed.
pub fn l_e_polynomial(m: &Poly) -> Result<UPolynomial> {
    let l = l_polynomial_fast(m)?;
    l.div_exact(&InfinityType::of(m)?.infinite_factor())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactClassNumbers {
    pub h: u64,
    pub h_dec: u64,
    pub h_ind: u64,
    #[serde(serialize_with = "ser_rat")]
    pub l_at_one: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub l_at_minus_one: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn to_count(r: &Rational, what: &str) -> Result<u64> {
    if !r.is_integer() || *r < Rational::zero() {
        return Err(Error::Invariant(format!("{what} = {} is not a nonnegative integer", fmt_rational(r))));
    }
    r.to_integer().try_into().map_err(|_| Error::Invariant(format!("{what} overflows")))
}

/// h, h_dec, h_ind for D irreducible of odd degree δ:
///   h     = ½[1 + q(q^{δ-1}-1)/(q²-1) + (L(1)+L(-1))/2]
///   h_ind = ½[1 + q(q^{δ-1}-1)/(q²-1) - (L(1)+L(-1))/2]
/// with L = L_{-D}. Also checks L_{-εD}(u) = L_{-D}(-u).
pub fn exact_class_numbers(d: &Poly) -> Result<ExactClassNumbers> {
    let delta = d.degree().ok_or(Error::ZeroInput)?;
    if delta % 2 == 0 || !is_irreducible(d)? {
        return Err(Error::Precondition(format!("{d} must be irreducible of odd degree")));
    }
    let q = d.modulus();
    let minus_d = -d;
    let l = l_e_polynomial(&minus_d)?;
    let eps = smallest_nonsquare(q);
    let l_eps = l_e_polynomial(&minus_d.scale(eps))?;
    if l_eps != l.scale_var(&int(-1)) {
        return Err(Error::Invariant("L_{-εD}(u) != L_{-D}(-u)".into()));
    }
    let l1 = l.eval(&int(1));
    let lm1 = l.eval(&int(-1));
    let qq = int(q as i64);
    let head = int(1) + &qq * (rpow(&qq, delta as i64 - 1) - int(1)) / (&qq * &qq - int(1));
    let dec = (&l1 + &lm1) / int(2);
    let h = to_count(&((&head + &dec) / int(2)), "h")?;
    let h_ind = to_count(&((&head - &dec) / int(2)), "h_ind")?;
    let h_dec = to_count(&dec, "h_dec")?;
    if h_dec + h_ind != h {
        return Err(Error::Invariant("h_dec + h_ind != h".into()));
    }
    Ok(ExactClassNumbers { h, h_dec, h_ind, l_at_one: l1, l_at_minus_one: lm1 })
}

/// C = 2 M_{D0}(1) M_{D1}(2) - M_D(2).
pub fn twist_constant(d: &Poly, d0: &Poly, d1: &Poly) -> Result<Rational> {
    check_split(d, d0, d1)?;
    Ok(int(2) * m_d(d0, 1)? * m_d(d1, 2)? - m_d(d, 2)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaLimits {
    /// lim β_{δ+2m}/q^{3m}
    pub even: Rational,
    /// lim β_{δ+2m+1}/q^{3m}
    pub odd: Rational,
}

/// Limits of β_{δ+2m}/q^{3m} and β_{δ+2m+1}/q^{3m}:
/// C/(M_D(3)ζ(3)) times (1-q^{-1})q^{δ+2} resp. (1-q^{-2})q^{δ+4}.
pub fn beta_limit(d: &Poly, d0: &Poly, d1: &Poly) -> Result<BetaLimits> {
    let c = twist_constant(d, d0, d1)?;
    let q = int(d.modulus() as i64);
    let delta = d.degree().unwrap() as i64;
    let k = c / (m_d(d, 3)? * zeta_a(d.modulus(), 3)?);
    let even = &k * (int(1) - q.recip()) * rpow(&q, delta + 2);
    let odd = &k * (int(1) - rpow(&q, -2)) * rpow(&q, delta + 4);
    Ok(BetaLimits { even, odd })
}

/// lim q^{-l} Σ•_{deg m = l} L(1, χ_{Dm}) = M_D(1)M_D(2)/M_D(3) · q(1-q^{-2}).
pub fn l_average_limit(d: &Poly) -> Result<Rational> {
    let q = int(d.modulus() as i64);
    Ok(m_d(d, 1)? * m_d(d, 2)? / m_d(d, 3)? * &q * (int(1) - rpow(&q, -2)))
}

/// The same limit normalized by the number (q-1)q^l M_D(1) of m:
/// M_D(2)ζ(2)/(M_D(3)ζ(3)).
pub fn normalized_l_average_limit(d: &Poly) -> Result<Rational> {
    let q = d.modulus();
    Ok(m_d(d, 2)? * zeta_a(q, 2)? / (m_d(d, 3)? * zeta_a(q, 3)?))
}

/// Class-number average limit q^{2δ}(q²-1) M_D(1)M_D(2)/M_D(3), which
/// equals q^{2δ+1}·l_average_limit.
pub fn classno_average_limit(d: &Poly) -> Result<Rational> {
    let q = int(d.modulus() as i64);
    let delta = d.degree().ok_or(Error::ZeroInput)? as i64;
    Ok(rpow(&q, 2 * delta) * (&q * &q - int(1)) * m_d(d, 1)? * m_d(d, 2)? / m_d(d, 3)?)
}

/// Product M*_D(u²) ζ*(u²) as a power series truncated at u^n.
pub fn m_zeta_series(d: &Poly, n: usize) -> Result<UPolynomial> {
    let m = crate::zeta_l::m_d_upoly(d)?.substitute_power(2);
    let z = crate::zeta_l::zeta_a_series(d.modulus(), n / 2 + 1).substitute_power(2);
    Ok(m.mul_trunc(&z, n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::rat;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    #[test]
    fn mass_values() {
        let one = Poly::one(3);
        let t = p(3, &[0, 1]);
        assert_eq!(mass_formula(&t, &one, &t).unwrap(), rat(1, 8));
        let t5 = p(5, &[0, 1]);
        assert_eq!(mass_formula(&t5, &Poly::one(5), &t5).unwrap(), rat(1, 12));
        let d = p(3, &[2, 2, 0, 1]);
        assert_eq!(mass_formula(&d, &one, &d).unwrap(), rat(13, 8));
        assert_eq!(mass_irreducible(3, 3), rat(13, 8));
        let d2 = p(3, &[0, 1, 1]);
        assert_eq!(mass_formula(&d2, &t, &p(3, &[1, 1])).unwrap(), rat(1, 4));
        assert!(mass_formula(&d2, &one, &t).is_err());
    }

    #[test]
    fn class_numbers_small_degrees() {
        let e = exact_class_numbers(&p(3, &[0, 1])).unwrap();
        assert_eq!((e.h, e.h_dec, e.h_ind), (1, 1, 0));
        let e = exact_class_numbers(&p(3, &[2, 2, 0, 1])).unwrap();
        assert_eq!((e.h, e.h_dec, e.h_ind), (4, 4, 0));
        assert!(exact_class_numbers(&p(3, &[0, 1, 1])).is_err());
    }

    #[test]
    fn limits_at_t() {
        let t = p(3, &[0, 1]);
        let one = Poly::one(3);
        let b = beta_limit(&t, &one, &t).unwrap();
        assert_eq!(b.odd, rat(32, 39) * int(216));
        assert_eq!(&b.odd / &b.even, int(12));
        let l = l_average_limit(&t).unwrap();
        assert_eq!(l, rat(2, 3) * rat(8, 9) * rat(27, 26) * int(3) * rat(8, 9));
        assert_eq!(classno_average_limit(&t).unwrap(), rpow(&int(3), 3) * &l);
        let one_l = l_average_limit(&one).unwrap();
        assert_eq!(one_l, rat(8, 3));
        assert_eq!(normalized_l_average_limit(&t).unwrap() * int(2) * m_d(&t, 1).unwrap(), l);
    }
}
