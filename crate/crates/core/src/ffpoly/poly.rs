use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{add_mod, check_modulus, inv_mod, legendre, mul_mod, sub_mod, FieldElement};
use crate::error::{Error, Result};

/// A dense polynomial over F_q, lowest degree first.
///
/// The zero polynomial has an empty coefficient vector and `degree() == None`;
/// every other value keeps a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(q: u32) -> Self {
        Self { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        Self::constant(q, 1)
    }

    /// The variable `t`.
    pub fn t(q: u32) -> Self {
        Self::from_coeffs_unchecked(q, vec![0, 1])
    }

    pub fn constant(q: u32, c: i64) -> Self {
        Self::from_i64(q, &[c])
    }

    pub fn monomial(q: u32, c: i64, k: usize) -> Self {
        let mut v = vec![0i64; k + 1];
        v[k] = c;
        Self::from_i64(q, &v)
    }

    /// Builds a polynomial from integer coefficients (lowest degree first),
    /// validating the modulus.
    pub fn new(q: u32, coeffs: &[i64]) -> Result<Self> {
        check_modulus(q)?;
        Ok(Self::from_i64(q, coeffs))
    }

    pub fn from_i64(q: u32, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u32).collect();
        Self::from_coeffs_unchecked(q, v)
    }

    pub(crate) fn from_coeffs_unchecked(q: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { q, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, i: usize) -> FieldElement {
        FieldElement::reduce(self.coeff(i) as i64, self.q)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with `-1` standing in for the zero polynomial.
    /// Only for loop bounds; never fed into arithmetic on degrees.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// |f| = q^deg f.
    pub fn norm(&self) -> Option<u128> {
        self.degree().map(|d| (self.q as u128).pow(d as u32))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        Ok(())
    }

    fn assert_same(&self, other: &Poly) {
        assert_eq!(self.q, other.q, "modulus mismatch");
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.q;
        let v = self.coeffs.iter().map(|&a| mul_mod(a, c, self.q)).collect();
        Poly::from_coeffs_unchecked(self.q, v)
    }

    /// Monic associate of a nonzero polynomial (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.q))
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { q: self.q, coeffs: v }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_impl(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.sub_impl(other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Poly) -> Poly {
        let q = self.q;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), q)).collect();
        Poly::from_coeffs_unchecked(q, v)
    }

    fn sub_impl(&self, other: &Poly) -> Poly {
        let q = self.q;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), q)).collect();
        Poly::from_coeffs_unchecked(q, v)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
                if acc[i + j] >= 1 << 62 {
                    acc[i + j] %= q;
                }
            }
        }
        let v = acc.into_iter().map(|c| (c % q) as u32).collect();
        Poly::from_coeffs_unchecked(self.q, v)
    }

    /// Euclidean division: `self = quot * g + rem` with `deg rem < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q;
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Poly::zero(q), self.clone()));
        }
        let inv = inv_mod(g.lc(), q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = mul_mod(rem[i], inv, q);
            if c == 0 {
                continue;
            }
            quot[i - dg] = c;
            for (j, &gj) in g.coeffs.iter().enumerate() {
                let k = i - dg + j;
                rem[k] = sub_mod(rem[k], mul_mod(c, gj, q), q);
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs_unchecked(q, quot), Poly::from_coeffs_unchecked(q, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact quotient, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        match self.divmod(g) {
            Ok((quot, rem)) if rem.is_zero() => Some(quot),
            _ => None,
        }
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.div_exact(self).is_some()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(other)?;
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(q), Poly::zero(q));
        let (mut t0, mut t1) = (Poly::zero(q), Poly::one(q));
        while !r1.is_zero() {
            let (quot, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&quot * &s1);
            let t = &t0 - &(&quot * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = inv_mod(r0.lc(), q);
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Result<Option<Poly>> {
        let (g, s, _) = self.xgcd(m)?;
        if !g.is_one() {
            return Ok(None);
        }
        Ok(Some(s.rem(m)?))
    }

    pub fn eval(&self, x: u32) -> u32 {
        let q = self.q;
        let x = x % q;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, q), c, q))
    }

    pub fn derivative(&self) -> Poly {
        let q = self.q;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u32) % q, q))
            .collect();
        Poly::from_coeffs_unchecked(q, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m` (big exponents as u128).
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.q).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Square root in A when `self` is a perfect square (the root with the
    /// smaller leading coefficient representative is returned).
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let q = self.q;
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.degree().unwrap();
        if d % 2 == 1 || legendre(self.lc(), q) != 1 {
            return None;
        }
        let lead = (1..q).find(|&r| mul_mod(r, r, q) == self.lc())?;
        let n = d / 2;
        // Solve coefficients of the root from the top down.
        let mut root = vec![0u32; n + 1];
        root[n] = lead;
        let inv2l = inv_mod(mul_mod(2, lead, q), q);
        for k in (0..n).rev() {
            // coefficient of t^{n+k} in root^2 must match self
            let mut s = 0u32;
            for i in (k + 1)..=n {
                let j = n + k - i;
                if j > n || j <= k {
                    continue;
                }
                s = add_mod(s, mul_mod(root[i], root[j], q), q);
            }
            let target = sub_mod(self.coeff(n + k), s, q);
            root[k] = mul_mod(target, inv2l, q);
        }
        let r = Poly::from_coeffs_unchecked(q, root);
        if &(&r * &r) == self {
            Some(r)
        } else {
            None
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }

    /// Index in the deterministic enumeration: sum of `c_i q^i`.
    pub fn to_index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    pub fn from_index(q: u32, mut idx: u64) -> Poly {
        let mut v = Vec::new();
        while idx > 0 {
            v.push((idx % q as u64) as u32);
            idx /= q as u64;
        }
        Poly::from_coeffs_unchecked(q, v)
    }

    /// Total order: by degree, then by enumeration index.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q.cmp(&other.q).then_with(|| self.cmp_canonical(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.assert_same(rhs);
                self.$imp(rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(self.q).sub_impl(self)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    #[test]
    fn product_over_f3() {
        // (t+1)(t+2) = t^2 + 3t + 2 = t^2 + 2
        assert_eq!(&p(3, &[1, 1]) * &p(3, &[2, 1]), p(3, &[2, 0, 1]));
    }

    #[test]
    fn gcd_over_f3() {
        let g = p(3, &[2, 0, 1]).gcd(&p(3, &[1, 1])).unwrap();
        assert_eq!(g, p(3, &[1, 1]));
        assert_eq!(Poly::zero(3).gcd(&p(3, &[2, 2])).unwrap(), p(3, &[1, 1]));
    }

    #[test]
    fn divmod_over_f5() {
        // t^3 = t (t^2 + 1) - t
        let (quot, rem) = p(5, &[0, 0, 0, 1]).divmod(&p(5, &[1, 0, 1])).unwrap();
        assert_eq!(quot, p(5, &[0, 1]));
        assert_eq!(rem, p(5, &[0, 4]));
    }

    #[test]
    fn errors() {
        assert_eq!(p(3, &[1]).divmod(&Poly::zero(3)), Err(Error::DivisionByZero));
        assert_eq!(p(3, &[1]).gcd(&p(5, &[1])), Err(Error::ModulusMismatch(3, 5)));
        assert_eq!(p(3, &[1]).checked_add(&p(5, &[1])), Err(Error::ModulusMismatch(3, 5)));
        assert!(Poly::new(4, &[1]).is_err());
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero(3).degree(), None);
        assert_eq!(p(3, &[3, 6]).degree(), None);
        assert_eq!(p(3, &[0, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(5, &[1, 2, 3, 1]);
        let b = p(5, &[4, 0, 1]);
        let (g, s, u) = a.xgcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert!(g.is_monic());
    }

    #[test]
    fn sqrt_exact_roundtrip() {
        let r = p(5, &[3, 1, 2]);
        let sq = &r * &r;
        let s = sq.sqrt_exact().unwrap();
        assert_eq!(&s * &s, sq);
        assert!(p(3, &[0, 1]).sqrt_exact().is_none());
        assert!(p(3, &[2]).sqrt_exact().is_none());
    }

    #[test]
    fn index_roundtrip() {
        for idx in 0..200u64 {
            assert_eq!(Poly::from_index(3, idx).to_index(), idx);
        }
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(7, &[1, 2, 3]);
        assert_eq!(f.derivative(), p(7, &[2, 6]));
        assert_eq!(f.eval(2), (1 + 4 + 12) % 7);
    }
}
