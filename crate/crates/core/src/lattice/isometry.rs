//! Isometry testing and automorphism groups by backtracking over vectors of
//! prescribed norm.

use super::{is_primitive, short_vectors, TernaryLattice, Vector};
use crate::error::{Error, Result};
use crate::ffpoly::Poly;
use crate::matrix::Mat3;

/// Candidates for the image of each basis vector of the target: vectors of
/// `src` with Q = target Q(e_j), together with G_src·v for fast inner products.
fn candidates(src: &TernaryLattice, norms: [&Poly; 3]) -> Result<[Vec<(Vector, Vector)>; 3]> {
    let mut out: [Vec<(Vector, Vector)>; 3] = Default::default();
    for j in 0..3 {
        let k = norms[j].degree().ok_or(Error::NotDefinite)?;
        for x in short_vectors(src, k)? {
            if src.q_value(&x) == *norms[j] {
                let gx = src.gram().mul_vec(&x);
                out[j].push((x, gx));
            }
        }
    }
    Ok(out)
}

fn dot(a: &Vector, b: &Vector) -> Poly {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// All T with Tᵀ G_src T = G_dst (columns: images of the dst basis in src
/// coordinates). Stops after `limit` solutions.
fn search(src: &TernaryLattice, dst: &TernaryLattice, limit: usize) -> Result<Vec<Mat3>> {
    let g = dst.gram();
    let cand = candidates(src, [&g.e[0][0], &g.e[1][1], &g.e[2][2]])?;
    let mut out = Vec::new();
    for (v1, gv1) in &cand[0] {
        for (v2, gv2) in &cand[1] {
            if dot(v2, gv1) != g.e[0][1] {
                continue;
            }
            for (v3, _) in &cand[2] {
                if dot(v3, gv1) != g.e[0][2] || dot(v3, gv2) != g.e[1][2] {
                    continue;
                }
                let t = Mat3::from_columns(&[v1.clone(), v2.clone(), v3.clone()]);
                if !t.is_unimodular() {
                    return Err(Error::Invariant("isometry candidate is not unimodular".into()));
                }
                out.push(t);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// A transform T with Tᵀ G1 T = G2, or None when L1 and L2 are not isometric.
pub fn isometry(l1: &TernaryLattice, l2: &TernaryLattice) -> Result<Option<Mat3>> {
    l1.require_reduced()?;
    let mu2 = l2.require_reduced()?;
    if l1.q() != l2.q() {
        return Err(Error::ModulusMismatch(l1.q(), l2.q()));
    }
    let ratio = l2.det().div_exact(l1.det());
    match ratio {
        Some(r) if r.degree() == Some(0) && r.is_square() => {}
        _ => {
            return Err(Error::DeterminantMismatch(format!("{} vs {}", l1.det(), l2.det())));
        }
    }
    if l1.minima() != Some(mu2) {
        return Ok(None);
    }
    Ok(search(l1, l2, 1)?.pop())
}

/// SO(L) listed in full, with |O(L)| for reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphisms {
    pub so_order: usize,
    pub o_order: usize,
    pub elements: Vec<Mat3>,
}

pub fn automorphisms(l: &TernaryLattice) -> Result<Automorphisms> {
    l.require_reduced()?;
    let all = search(l, l, usize::MAX)?;
    let o_order = all.len();
    let elements: Vec<Mat3> = all.into_iter().filter(|t| t.det().is_one()).collect();
    Ok(Automorphisms { so_order: elements.len(), o_order, elements })
}

/// Whether L = ⟨v⟩ ⊥ M for some v. Such v can be taken primitive with
/// deg Q(v) <= δ, and ⟨v⟩ splits off iff Q(v) divides every B(v, e_i).
pub fn is_decomposable(l: &TernaryLattice) -> Result<bool> {
    for v in short_vectors(l, l.delta())? {
        if v.iter().all(|c| c.is_zero()) || !is_primitive(&v) {
            continue;
        }
        let qv = l.q_value(&v);
        if l.gram().mul_vec(&v).iter().all(|b| qv.divides(b)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sizes of the orbits of SO(L) on a set of vectors closed under SO(L).
pub fn orbit_sizes(so: &Automorphisms, vectors: &[Vector]) -> Result<Vec<usize>> {
    let mut seen = vec![false; vectors.len()];
    let mut sizes = Vec::new();
    for i in 0..vectors.len() {
        if seen[i] {
            continue;
        }
        let mut orbit: Vec<Vector> = Vec::new();
        for t in &so.elements {
            let y = t.mul_vec(&vectors[i]);
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        for y in &orbit {
            let j = vectors
                .iter()
                .position(|v| v == y)
                .ok_or_else(|| Error::Invariant("vector set is not SO(L)-stable".into()))?;
            seen[j] = true;
        }
        sizes.push(orbit.len());
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{primitive_representations, reduce};

    fn q0(q: u32, eps: i64, d: &[i64]) -> TernaryLattice {
        let dd = Poly::from_i64(q, d).scale((q as i64 - eps) as u32);
        let l = TernaryLattice::diagonal([Poly::one(q), Poly::constant(q, -eps), dd]).unwrap();
        reduce(&l).unwrap().0
    }

    #[test]
    fn so_of_q0() {
        // |SO(Q0)| = 2(q+1)
        assert_eq!(automorphisms(&q0(3, 2, &[0, 1])).unwrap().so_order, 8);
        assert_eq!(automorphisms(&q0(5, 2, &[0, 1])).unwrap().so_order, 12);
        assert_eq!(automorphisms(&q0(3, 2, &[2, 2, 0, 1])).unwrap().so_order, 8);
    }

    #[test]
    fn group_closure() {
        let a = automorphisms(&q0(3, 2, &[0, 1])).unwrap();
        for x in &a.elements {
            for y in &a.elements {
                assert!(a.elements.contains(&x.mul(y)));
            }
            assert!(a.elements.contains(&x.inverse_unimodular().unwrap()));
        }
        assert_eq!(a.o_order, 2 * a.so_order);
    }

    #[test]
    fn free_action_on_representations() {
        let l = q0(3, 2, &[0, 1]);
        let a = automorphisms(&l).unwrap();
        let reps = primitive_representations(&l, &Poly::from_i64(3, &[1, 1])).unwrap();
        let sizes = orbit_sizes(&a, &reps).unwrap();
        assert!(sizes.iter().all(|&s| s == a.so_order));
    }

    #[test]
    fn decomposable_q0() {
        assert!(is_decomposable(&q0(3, 2, &[0, 1])).unwrap());
    }
}
