//! Local invariants at the places of K = F_q(t): Hilbert symbols, Hasse
//! invariants, definiteness, and the isotropic/anisotropic split of D.
//!
//! Conventions: the Hasse invariant of ⟨a1,a2,a3⟩ is Π_{i<j} (a_i,a_j)_v; a
//! ternary form of determinant d is anisotropic at v iff S_v = -(-1,-d)_v.
//! At infinity the uniformizer is 1/t, so v(a) = -deg a and the residue of a
//! polynomial unit is its leading coefficient.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, is_squarefree, jacobi, legendre, smallest_nonsquare, Poly};
use crate::matrix::Mat3;
use crate::zeta_l::InfinityType;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(p: &Poly) -> Result<Self> {
        if !p.is_monic() || !crate::ffpoly::is_irreducible(p)? {
            return Err(Error::Precondition(format!("{p} is not a monic irreducible")));
        }
        Ok(Place::Finite(p.clone()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// (-1)^{(N-1)/2} for the residue field at v, i.e. whether -1 is a square there.
fn minus_one_residue(q: u32, v: &Place) -> i8 {
    let base = legendre(q - 1, q);
    match v {
        Place::Infinity => base,
        Place::Finite(p) => base.pow(p.degree().unwrap() as u32),
    }
}

/// Valuation and residue symbol (Legendre of the unit part) of a at v.
fn split(a: &Poly, v: &Place) -> Result<(i64, i8)> {
    match v {
        Place::Infinity => Ok((-(a.degree().unwrap() as i64), legendre(a.lc(), a.modulus()))),
        Place::Finite(p) => {
            let mut u = a.clone();
            let mut k = 0;
            while let Some(quot) = u.div_exact(p) {
                u = quot;
                k += 1;
            }
            Ok((k, jacobi(&u, p)?))
        }
    }
}

/// Tame Hilbert symbol (a, b)_v for nonzero polynomials.
pub fn hilbert_symbol(a: &Poly, b: &Poly, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (al, ua) = split(a, v)?;
    let (be, ub) = split(b, v)?;
    let mut s = 1i8;
    if (al * be).rem_euclid(2) == 1 {
        s *= minus_one_residue(a.modulus(), v);
    }
    if be.rem_euclid(2) == 1 {
        s *= ua;
    }
    if al.rem_euclid(2) == 1 {
        s *= ub;
    }
    Ok(s)
}

/// Hilbert symbol of K-elements given as (numerator, denominator).
pub fn hilbert_symbol_frac(a: (&Poly, &Poly), b: (&Poly, &Poly), v: &Place) -> Result<i8> {
    hilbert_symbol(&(a.0 * a.1), &(b.0 * b.1), v)
}

pub fn hasse_invariant(diag: &[Poly; 3], v: &Place) -> Result<i8> {
    let mut s = 1;
    for i in 0..3 {
        for j in i + 1..3 {
            s *= hilbert_symbol(&diag[i], &diag[j], v)?;
        }
    }
    Ok(s)
}

/// Diagonal entries, up to square classes, of G over K:
/// ⟨m1, m1 m2, m2 m3⟩ from leading principal minors m_i. A unimodular change
/// of basis is applied first if a minor vanishes.
pub fn diagonalize(gram: &Mat3) -> Result<[Poly; 3]> {
    let q = gram.modulus();
    if gram.det().is_zero() {
        return Err(Error::Singular);
    }
    let one = Poly::one(q);
    let zero = Poly::zero(q);
    let mut tries = vec![Mat3::identity(q)];
    for c in 1..q as i64 {
        for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
            let mut m = Mat3::identity(q);
            m.e[i][j] = Poly::constant(q, c);
            tries.push(m);
        }
    }
    let mut a = Mat3::identity(q);
    a.e[0][1] = one.clone();
    a.e[0][2] = one.clone();
    a.e[1][2] = one.clone();
    a.e[2][0] = zero.clone();
    tries.push(a.clone());
    tries.push(a.transpose());
    for b in tries {
        let g = gram.congruence(&b);
        let m1 = g.e[0][0].clone();
        let m2 = &(&g.e[0][0] * &g.e[1][1]) - &(&g.e[0][1] * &g.e[0][1]);
        let m3 = g.det();
        if !m1.is_zero() && !m2.is_zero() {
            return Ok([m1.clone(), &m1 * &m2, &m2 * &m3]);
        }
    }
    Err(Error::Invariant("no diagonalizing transform found".into()))
}

/// Anisotropy at a place, by the Hasse-invariant criterion.
pub fn is_anisotropic_at(gram: &Mat3, v: &Place) -> Result<bool> {
    let diag = diagonalize(gram)?;
    let d = gram.det();
    let minus_d = -&d;
    let minus_one = Poly::constant(gram.modulus(), -1);
    Ok(hasse_invariant(&diag, v)? == -hilbert_symbol(&minus_one, &minus_d, v)?)
}

/// Anisotropic over K_inf.
pub fn is_definite(gram: &Mat3) -> Result<bool> {
    if !gram.is_symmetric() {
        return Err(Error::Precondition("Gram matrix must be symmetric".into()));
    }
    is_anisotropic_at(gram, &Place::Infinity)
}

/// Isotropy at p | det with p exactly dividing det: the unimodular binary
/// part mod p is hyperbolic iff -adj(G)_ii is a square mod p for any i with
/// adj(G)_ii a unit at p.
pub fn is_isotropic_at_divisor(gram: &Mat3, p: &Poly) -> Result<bool> {
    let adj = gram.adjugate();
    for i in 0..3 {
        let a = adj.e[i][i].rem(p)?;
        if !a.is_zero() {
            return Ok(jacobi(&(-&a), p)? == 1);
        }
    }
    // All diagonal adjugate entries vanish: use an off-diagonal combination,
    // the value of the rank-one adjugate form at e_i + e_j.
    for i in 0..3 {
        for j in i + 1..3 {
            let v = &(&adj.e[i][i] + &adj.e[j][j]) + &(&adj.e[i][j] + &adj.e[j][i]);
            let a = v.rem(p)?;
            if !a.is_zero() {
                return Ok(jacobi(&(-&a), p)? == 1);
            }
        }
    }
    Err(Error::Precondition(format!("{p}^2 divides the determinant")))
}

/// Square class of a determinant: leading coefficient normalized to 1 or ε.
pub fn det_class(d: &Poly) -> Poly {
    let q = d.modulus();
    let eps = smallest_nonsquare(q);
    let target = if legendre(d.lc(), q) == 1 { 1 } else { eps };
    d.monic().scale(target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusSymbol {
    pub det: Poly,
    pub delta: usize,
    pub r: usize,
    #[serde(rename = "D0")]
    pub d0: Poly,
    #[serde(rename = "D1")]
    pub d1: Poly,
    #[serde(serialize_with = "ser_hasse")]
    pub hasse: BTreeMap<Poly, i8>,
    pub hasse_inf: i8,
}

fn ser_hasse<S: serde::Serializer>(m: &BTreeMap<Poly, i8>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), v)?;
    }
    map.end()
}

impl GenusSymbol {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("genus symbol serializes")
    }
}

/// Splits D = D0 D1 into isotropic and anisotropic primes and records the
/// Hasse invariants. D must be square-free and equal det(gram) up to a
/// square unit.
pub fn classify_primes(gram: &Mat3, d: &Poly) -> Result<GenusSymbol> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    let det = gram.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if det_class(&det) != det_class(d) {
        return Err(Error::DeterminantMismatch(format!("det = {det}, D = {d}")));
    }
    let q = d.modulus();
    let diag = diagonalize(gram)?;
    let mut d0 = Poly::one(q);
    let mut d1 = Poly::one(q);
    let mut hasse = BTreeMap::new();
    let fac = factor(d)?;
    for (p, _) in &fac.factors {
        let place = Place::Finite(p.clone());
        hasse.insert(p.clone(), hasse_invariant(&diag, &place)?);
        if is_isotropic_at_divisor(gram, p)? {
            d0 = &d0 * p;
        } else {
            d1 = &d1 * p;
        }
    }
    Ok(GenusSymbol {
        det: det_class(&det),
        delta: d.degree().unwrap(),
        r: fac.factors.len(),
        d0,
        d1,
        hasse,
        hasse_inf: hasse_invariant(&diag, &Place::Infinity)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representability {
    pub representable: bool,
    pub reason: String,
}

/// Whether a (prime to D) is primitively represented by some lattice in the
/// genus: equivalent to -aD not being a square in K_inf.
pub fn representability_conditions(d: &Poly, a: &Poly) -> Result<Representability> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !a.gcd(d)?.is_one() {
        return Err(Error::Precondition(format!("gcd({a}, {d}) != 1")));
    }
    let m = -&(a * d);
    let kind = InfinityType::of(&m)?;
    let reason = match kind {
        InfinityType::Ramified => "deg(aD) odd".to_string(),
        InfinityType::Inert => "deg(aD) even, leading coefficient of -aD a nonsquare".to_string(),
        InfinityType::Split => "-aD is a square in K_inf".to_string(),
    };
    Ok(Representability { representable: kind.is_imaginary(), reason })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{enumerate_all, irreducibles};

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    fn places_of(a: &Poly, b: &Poly) -> Vec<Place> {
        let mut v = vec![Place::Infinity];
        for (pr, _) in factor(&(a * b)).unwrap().factors {
            v.push(Place::Finite(pr));
        }
        v
    }

    #[test]
    fn product_formula() {
        for q in [3u32, 5] {
            let polys: Vec<Poly> = (0..=2).flat_map(|d| enumerate_all(q, d).collect::<Vec<_>>()).collect();
            for a in &polys {
                for b in &polys {
                    let mut prod = 1;
                    for v in places_of(a, b) {
                        prod *= hilbert_symbol(a, b, &v).unwrap();
                    }
                    assert_eq!(prod, 1, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn symmetry_and_norm_identity() {
        let q = 3;
        let places: Vec<Place> = std::iter::once(Place::Infinity)
            .chain(irreducibles(q, 1).iter().chain(irreducibles(q, 2).iter()).map(|p| Place::Finite(p.clone())))
            .collect();
        for a in enumerate_all(q, 2) {
            for b in enumerate_all(q, 1) {
                for v in &places {
                    assert_eq!(hilbert_symbol(&a, &b, v).unwrap(), hilbert_symbol(&b, &a, v).unwrap());
                    assert_eq!(hilbert_symbol(&a, &(-&a), v).unwrap(), 1);
                    assert_eq!(hilbert_symbol(&Poly::one(q), &b, v).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn q0_is_definite() {
        // ⟨1, -ε, -εt⟩ with ε = 2: -ε = 1 over F_3.
        let g = Mat3::diag([p(3, &[1]), p(3, &[1]), p(3, &[0, 1])]);
        assert!(is_definite(&g).unwrap());
        let h = Mat3::diag([p(3, &[1]), p(3, &[2]), p(3, &[0, 1])]);
        assert!(!is_definite(&h).unwrap());
    }

    #[test]
    fn representability_examples() {
        let t = p(3, &[0, 1]);
        assert!(representability_conditions(&t, &p(3, &[1, 1])).unwrap().representable);
        assert!(representability_conditions(&t, &p(3, &[1, 0, 1])).unwrap().representable);
        // -aD = -(t+2) t = 2t^2 + t: leading coefficient 2 nonsquare, representable
        assert!(representability_conditions(&t, &p(3, &[2, 1])).unwrap().representable);
        // a = 2t + 1: -aD = -2t^2 - t = t^2 + 2t, split
        assert!(!representability_conditions(&t, &p(3, &[1, 2])).unwrap().representable);
        assert!(representability_conditions(&t, &t).is_err());
    }
}
