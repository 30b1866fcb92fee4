//! Brute-force |Pic(A[sqrt m])| for imaginary m, independent of L-functions.
//!
//! Every invertible ideal class contains a primitive ideal [a, b + sqrt m]
//! (a monic, deg b < deg a, a | b^2 - m). Reduction of the associated binary
//! form (a, 2b, (b^2-m)/a) gives deg b < deg a <= deg c, and because m is not a
//! square in K_inf, deg(ac) = max(2 deg b, deg m); hence deg a <= deg m / 2.
//! Two ideals I = [a, b+sqrt m], J = [a', b'+sqrt m] are equivalent iff some
//! lambda in O with N(lambda) = c a a' (c a unit) satisfies lambda I = a J.

use super::lpoly::InfinityType;
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic, enumerate_upto, Poly};

/// Default degree cap for the oracle.
pub const PICARD_MAX_DEGREE: usize = 8;

#[derive(Clone, Debug)]
struct Ideal {
    a: Poly,
    b: Poly,
}

fn invertible_ideals(m: &Poly) -> Result<Vec<Ideal>> {
    let q = m.modulus();
    let n = m.degree().unwrap();
    let two = Poly::constant(q, 2);
    let mut out = Vec::new();
    for da in 0..=n / 2 {
        for a in enumerate_monic(q, da) {
            let bs: Vec<Poly> = if da == 0 { vec![Poly::zero(q)] } else { enumerate_upto(q, da - 1).collect() };
            for b in bs {
                let nb = &(&b * &b) - m;
                let Some(c) = nb.div_exact(&a) else { continue };
                let g = a.gcd(&(&two * &b))?.gcd(&c)?;
                if g.is_one() {
                    out.push(Ideal { a: a.clone(), b });
                }
            }
        }
    }
    Ok(out)
}

/// (u + v sqrt m) in the A-module spanned by (a a', 0) and (a b', a)?
fn in_scaled(u: &Poly, v: &Poly, a: &Poly, j: &Ideal) -> bool {
    let Some(k) = v.div_exact(a) else { return false };
    let rest = u - &(&(&k * a) * &j.b);
    (a * &j.a).divides(&rest)
}

fn equivalent(m: &Poly, i: &Ideal, j: &Ideal) -> Result<bool> {
    let q = m.modulus();
    let n = m.degree().unwrap() as i64;
    let target = &i.a * &j.a;
    let dt = target.degree().unwrap() as i64;
    if (dt - n) < 0 && dt % 2 == 1 {
        return Ok(false);
    }
    let ymax = (dt - n).div_euclid(2);
    let ys: Vec<Poly> = if ymax < 0 { vec![Poly::zero(q)] } else { enumerate_upto(q, ymax as usize).collect() };
    for y in &ys {
        let my2 = &(m * y) * y;
        for c in 1..q {
            let x2 = &target.scale(c) + &my2;
            let Some(x) = x2.sqrt_exact() else { continue };
            for x in [x.clone(), -&x] {
                // lambda * a and lambda * (b + sqrt m)
                let (u1, v1) = (&x * &i.a, y * &i.a);
                let u2 = &(&x * &i.b) + &(y * m);
                let v2 = &x + &(y * &i.b);
                if in_scaled(&u1, &v1, &i.a, j) && in_scaled(&u2, &v2, &i.a, j) {
                    return Ok(true);
                }
                if x.is_zero() {
                    break;
                }
            }
        }
    }
    Ok(false)
}

/// |Pic(A[sqrt m])| by ideal enumeration; fails above `max_degree`.
pub fn picard_oracle_bounded(m: &Poly, max_degree: usize) -> Result<u64> {
    let n = m.degree().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::Precondition("picard oracle needs deg m >= 1".into()));
    }
    if n > max_degree {
        return Err(Error::BoundExceeded(format!("deg m = {n} > {max_degree}")));
    }
    if !InfinityType::of(m)?.is_imaginary() {
        return Err(Error::RealQuadratic(m.to_string()));
    }
    let ideals = invertible_ideals(m)?;
    let mut reps: Vec<Ideal> = Vec::new();
    for i in ideals {
        let mut found = false;
        for r in &reps {
            if equivalent(m, &i, r)? {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(i);
        }
    }
    Ok(reps.len() as u64)
}

pub fn picard_oracle(m: &Poly) -> Result<u64> {
    picard_oracle_bounded(m, PICARD_MAX_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::enumerate_all;
    use crate::zeta_l::classno::class_number;

    #[test]
    fn degree_one() {
        assert_eq!(picard_oracle(&Poly::from_i64(3, &[0, 2])).unwrap(), 1);
        assert!(picard_oracle(&Poly::from_i64(3, &[2])).is_err());
        assert!(matches!(
            picard_oracle_bounded(&Poly::from_i64(3, &[1, 0, 0, 1]), 2),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn oracle_matches_formula_small() {
        for (q, dmax) in [(3u32, 4usize), (5, 3)] {
            for d in 1..=dmax {
                for m in enumerate_all(q, d) {
                    let Ok(h) = class_number(&m) else { continue };
                    assert_eq!(picard_oracle(&m).unwrap(), h, "q={q} m={m}");
                }
            }
        }
    }
}
