use super::field::legendre;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Jacobi symbol (b/a) for monic a, via quadratic reciprocity in F_q[t]:
/// for monic coprime a, b, (a/b)(b/a) = (-1)^{((q-1)/2) deg a deg b}, and a
/// constant c contributes legendre(c)^{deg a}.
pub fn jacobi(b: &Poly, a: &Poly) -> Result<i8> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !a.is_monic() {
        return Err(Error::NotMonic(a.to_string()));
    }
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    let q = a.modulus();
    let half_odd = ((q - 1) / 2) % 2 == 1;
    let mut a = a.clone();
    let mut b = b.rem(&a)?;
    let mut sign = 1i8;
    loop {
        let da = a.degree().unwrap();
        if da == 0 {
            return Ok(sign);
        }
        if b.is_zero() {
            return Ok(0);
        }
        let c = b.lc();
        if da % 2 == 1 && legendre(c, q) == -1 {
            sign = -sign;
        }
        let bm = b.monic();
        let db = bm.degree().unwrap();
        if half_odd && da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        b = a.rem(&bm)?;
        a = bm;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::enumerate::{enumerate_all, enumerate_monic};
    use crate::ffpoly::factor::{factor, irreducibles};

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    /// Euler criterion on an irreducible modulus.
    fn euler(b: &Poly, pr: &Poly) -> i8 {
        let q = pr.modulus() as u128;
        let e = (q.pow(pr.degree().unwrap() as u32) - 1) / 2;
        let r = b.pow_mod(e, pr).unwrap();
        if r.is_zero() {
            0
        } else if r.is_one() {
            1
        } else {
            assert_eq!(r, Poly::constant(pr.modulus(), -1));
            -1
        }
    }

    fn euler_composite(b: &Poly, a: &Poly) -> i8 {
        factor(a)
            .unwrap()
            .factors
            .iter()
            .map(|(pr, e)| euler(b, pr).pow(*e))
            .product()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(jacobi(&p(3, &[0, 1]), &p(3, &[1, 1])).unwrap(), -1);
        for a in enumerate_monic(3, 3) {
            assert_eq!(jacobi(&Poly::one(3), &a).unwrap(), 1);
        }
        assert_eq!(jacobi(&p(3, &[1, 1]), &p(3, &[0, 1, 1])).unwrap(), 0);
        assert!(jacobi(&p(3, &[1]), &p(3, &[0, 2])).is_err());
    }

    #[test]
    fn reciprocity_agrees_with_euler_on_primes() {
        for q in [3u32, 5] {
            for k in 1..=3 {
                for pr in irreducibles(q, k).iter() {
                    for db in 0..=4 {
                        for b in enumerate_all(q, db) {
                            assert_eq!(jacobi(&b, pr).unwrap(), euler(&b, pr), "q={q} b={b} p={pr}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composite_moduli() {
        for q in [3u32, 5] {
            for da in 1..=3 {
                for a in enumerate_monic(q, da) {
                    for b in enumerate_all(q, 2) {
                        assert_eq!(jacobi(&b, &a).unwrap(), euler_composite(&b, &a));
                    }
                }
            }
        }
    }
}
