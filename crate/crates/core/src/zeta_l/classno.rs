use num_traits::One;
use serde::Serialize;

use super::lpoly::{eval_at_inverse_q, l_polynomial_fast, squarefree_decomposition, InfinityType};
use crate::error::{Error, Result};
use crate::ffpoly::{factor, jacobi, Poly};
use crate::upoly::{int, Rational};

/// The order A[sqrt m] with m = m0 f^2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticOrderDescriptor {
    pub m: Poly,
    pub squarefree_part: Poly,
    pub conductor_square_part: Poly,
    pub infinity_type: InfinityType,
}

impl QuadraticOrderDescriptor {
    pub fn new(m: &Poly) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (m0, f) = squarefree_decomposition(m)?;
        if m0.is_constant() && crate::ffpoly::legendre(m0.lc(), m.modulus()) == 1 {
            return Err(Error::PerfectSquare(m.to_string()));
        }
        Ok(Self {
            m: m.clone(),
            squarefree_part: m0,
            conductor_square_part: f,
            infinity_type: InfinityType::of(m)?,
        })
    }

    pub fn is_imaginary(&self) -> bool {
        self.infinity_type.is_imaginary()
    }

    pub fn is_maximal(&self) -> bool {
        self.conductor_square_part.is_one()
    }
}

/// h of the maximal order A[sqrt m0] for square-free nonconstant imaginary m0.
///
/// Ramified: h = |Jac| = L_E(1) = q^g L*(1/q), deg m0 = 2g+1.
/// Inert: the place at infinity has degree 2, so h = 2 |Jac| = L*(1), which
/// is 2 q^{g+1} L*(1/q) / (q+1) with deg m0 = 2g+2. Pinned against the
/// Picard oracle in tests.
fn maximal_class_number(m0: &Poly, kind: InfinityType) -> Result<Rational> {
    let q = m0.modulus() as i64;
    let d = m0.degree().unwrap();
    let l1q = eval_at_inverse_q(&l_polynomial_fast(m0)?, m0.modulus());
    Ok(match kind {
        InfinityType::Ramified => l1q * int(q).pow(((d - 1) / 2) as i32),
        InfinityType::Inert => {
            let g = (d - 2) / 2;
            l1q * int(2) * int(q).pow((g + 1) as i32) / int(q + 1)
        }
        InfinityType::Split => return Err(Error::RealQuadratic(m0.to_string())),
    })
}

/// h(m) = |Pic(A[sqrt m])| for imaginary non-square m of positive degree.
pub fn class_number(m: &Poly) -> Result<u64> {
    let desc = QuadraticOrderDescriptor::new(m)?;
    if m.degree() == Some(0) {
        return Err(Error::Precondition("class_number needs deg m >= 1".into()));
    }
    if !desc.is_imaginary() {
        return Err(Error::RealQuadratic(m.to_string()));
    }
    let m0 = &desc.squarefree_part;
    let f = &desc.conductor_square_part;
    let q = m.modulus() as i64;
    // Constant m0: A[sqrt m0] = F_{q^2}[t], a PID whose units F_{q^2}^x are
    // q+1 times larger than those of any proper suborder.
    let (h0, unit_index) = if m0.is_constant() {
        (Rational::one(), q + 1)
    } else {
        (maximal_class_number(m0, InfinityType::of(m0)?)?, 1)
    };
    let mut h = h0;
    if !f.is_one() {
        h *= int(q).pow(f.degree().unwrap() as i32);
        for (p, _) in factor(f)?.factors {
            let chi = jacobi(m0, &p)? as i64;
            let np = int(q).pow(p.degree().unwrap() as i32);
            h *= Rational::one() - int(chi) / np;
        }
        h /= int(unit_index);
    }
    if !h.is_integer() || h < Rational::one() {
        return Err(Error::Invariant(format!("class number of {m} came out as {h}")));
    }
    u64::try_from(h.to_integer()).map_err(|_| Error::BoundExceeded("class number exceeds u64".into()))
}

/// The relation h = L(1, chi_m) |m|^{1/2} / q^{1/2} for square-free m of odd
/// degree, computed from the character-sum L-polynomial (not the fast route).
pub fn class_number_odd_degree_relation(m: &Poly) -> Result<Rational> {
    let d = m.degree().ok_or(Error::ZeroInput)?;
    if d % 2 == 0 {
        return Err(Error::Precondition("odd degree required".into()));
    }
    let l = super::lpoly::l_polynomial(m)?;
    let q = m.modulus() as i64;
    Ok(eval_at_inverse_q(&l, m.modulus()) * int(q).pow(((d - 1) / 2) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    #[test]
    fn descriptor_types() {
        let d = QuadraticOrderDescriptor::new(&p(3, &[0, 2])).unwrap();
        assert_eq!(d.infinity_type, InfinityType::Ramified);
        assert!(d.is_maximal());
        let d = QuadraticOrderDescriptor::new(&p(3, &[0, 2, 2])).unwrap();
        assert_eq!(d.infinity_type, InfinityType::Inert);
        let d = QuadraticOrderDescriptor::new(&p(3, &[0, 1, 1])).unwrap();
        assert_eq!(d.infinity_type, InfinityType::Split);
        let d = QuadraticOrderDescriptor::new(&p(3, &[0, 0, 2])).unwrap();
        assert_eq!(d.squarefree_part, p(3, &[2]));
        assert_eq!(d.conductor_square_part, p(3, &[0, 1]));
        assert!(QuadraticOrderDescriptor::new(&p(3, &[1, 2, 1])).is_err());
    }

    #[test]
    fn small_class_numbers() {
        assert_eq!(class_number(&p(3, &[0, 2])).unwrap(), 1);
        assert!(matches!(class_number(&p(3, &[0, 1, 1])), Err(Error::RealQuadratic(_))));
        assert!(class_number(&p(3, &[2])).is_err());
    }
}
