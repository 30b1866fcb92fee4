//! Box enumeration of lattice vectors.

use super::{is_primitive, TernaryLattice, Vector};
use crate::error::{Error, Result};
use crate::ffpoly::{count_upto, Poly};

/// All coordinate vectors with deg x_i <= bounds[i] (a negative bound forces
/// x_i = 0), in index order with the first coordinate fastest.
pub struct BoxIter {
    q: u32,
    sizes: [usize; 3],
    next: usize,
    total: usize,
}

impl BoxIter {
    pub fn new(q: u32, bounds: [i64; 3]) -> Self {
        let sizes = bounds.map(|b| count_upto(q, b) as usize);
        let total = sizes.iter().product();
        Self { q, sizes, next: 0, total }
    }

    pub fn len_total(&self) -> usize {
        self.total
    }
}

impl Iterator for BoxIter {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.next >= self.total {
            return None;
        }
        let mut n = self.next;
        self.next += 1;
        let mut out: [Poly; 3] = std::array::from_fn(|_| Poly::zero(self.q));
        for (i, o) in out.iter_mut().enumerate() {
            *o = Poly::from_index(self.q, (n % self.sizes[i]) as u64);
            n /= self.sizes[i];
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.total - self.next;
        (r, Some(r))
    }
}

/// Coordinate degree bounds of L_k in a reduced basis: deg x_i <= ⌊(k-μ_i)/2⌋.
pub(crate) fn box_bounds(mu: [usize; 3], k: usize) -> [i64; 3] {
    mu.map(|m| {
        if k < m {
            -1
        } else {
            ((k - m) / 2) as i64
        }
    })
}

/// L_k = {x : deg Q(x) <= k}, including zero.
pub fn short_vectors(l: &TernaryLattice, k: usize) -> Result<BoxIter> {
    let mu = l.require_reduced()?;
    Ok(BoxIter::new(l.q(), box_bounds(mu, k)))
}

fn check_target(l: &TernaryLattice, a: &Poly) -> Result<usize> {
    if a.modulus() != l.q() {
        return Err(Error::ModulusMismatch(a.modulus(), l.q()));
    }
    a.degree().ok_or(Error::ZeroInput)
}

/// R(L, a): number of x (primitive if requested) with Q(x) = a.
pub fn representation_count(l: &TernaryLattice, a: &Poly, primitive_only: bool) -> Result<u64> {
    let k = check_target(l, a)?;
    let mut n = 0;
    for x in short_vectors(l, k)? {
        if l.q_value(&x) == *a && (!primitive_only || is_primitive(&x)) {
            n += 1;
        }
    }
    Ok(n)
}

/// All primitive x with Q(x) = a.
pub fn primitive_representations(l: &TernaryLattice, a: &Poly) -> Result<Vec<Vector>> {
    let k = check_target(l, a)?;
    Ok(short_vectors(l, k)?
        .filter(|x| l.q_value(x) == *a && is_primitive(x))
        .collect())
}
