use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Checks that `q` is an odd prime small enough for `u64` products of residues.
pub fn check_modulus(q: u32) -> Result<()> {
    if q < 3 || q % 2 == 0 || q > 65_521 || !is_prime_u32(q) {
        return Err(Error::InvalidModulus(q));
    }
    Ok(())
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, q: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, q: u32) -> u32 {
    let mut acc = 1u32 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    pow_mod(a, q as u64 - 2, q)
}

/// Legendre symbol of a residue in F_q: 0, 1 or -1.
pub fn legendre(a: u32, q: u32) -> i8 {
    let a = a % q;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q as u64 - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// The smallest quadratic nonresidue of F_q.
pub fn smallest_nonsquare(q: u32) -> u32 {
    (2..q).find(|&a| legendre(a, q) == -1).expect("odd prime has a nonresidue")
}

/// An element of the prime field F_q.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    q: u32,
}

impl FieldElement {
    pub fn new(value: i64, q: u32) -> Result<Self> {
        check_modulus(q)?;
        Ok(Self::reduce(value, q))
    }

    pub(crate) fn reduce(value: i64, q: u32) -> Self {
        Self {
            value: value.rem_euclid(q as i64) as u32,
            q,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            value: inv_mod(self.value, self.q),
            q: self.q,
        })
    }

    pub fn pow(self, exp: u64) -> Self {
        Self {
            value: pow_mod(self.value, exp, self.q),
            q: self.q,
        }
    }

    pub fn is_square(self) -> bool {
        legendre(self.value, self.q) >= 0
    }

    fn same(self, other: Self) -> u32 {
        assert_eq!(self.q, other.q, "modulus mismatch");
        self.q
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        Self { value: add_mod(self.value, rhs.value, q), q }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        Self { value: sub_mod(self.value, rhs.value, q), q }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        Self { value: mul_mod(self.value, rhs.value, q), q }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: sub_mod(0, self.value, self.q), q: self.q }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        for q in [0, 1, 2, 4, 9, 15] {
            assert_eq!(check_modulus(q), Err(Error::InvalidModulus(q)));
        }
        for q in [3, 5, 7, 11, 13] {
            assert!(check_modulus(q).is_ok());
        }
    }

    #[test]
    fn inverses() {
        for q in [3u32, 5, 7, 11] {
            for a in 1..q {
                let x = FieldElement::new(a as i64, q).unwrap();
                assert_eq!((x * x.inv().unwrap()).value(), 1);
            }
            assert!(FieldElement::new(0, q).unwrap().inv().is_err());
        }
    }

    #[test]
    fn nonsquares() {
        assert_eq!(smallest_nonsquare(3), 2);
        assert_eq!(smallest_nonsquare(5), 2);
        assert_eq!(smallest_nonsquare(7), 3);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(FieldElement::new(-1, 3).unwrap().value(), 2);
    }
}
