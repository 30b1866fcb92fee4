//! Shell counts: how many x have deg Q(x) = k, split by which primes of D
//! divide Q(x) and by primitivity. Every Epstein-type coefficient used by the
//! crate is a sum over these cells.

use std::collections::HashMap;

use rayon::prelude::*;

use super::enumerate::box_bounds;
use super::{is_primitive, short_vectors, TernaryLattice};
use crate::error::{Error, Result};
use crate::ffpoly::{count_upto, factor, Poly};

/// Largest residue field A/p handled by the table-driven engine.
const MAX_RESIDUE_FIELD: usize = 4096;

/// Which twist of the Epstein zeta function to expand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    /// α_k: all nonzero x.
    None,
    /// χ_d: d | Q(x), for a divisor d of D.
    ChiD(Poly),
    /// ψ: gcd(Q(x), D) = 1.
    Psi,
    /// φψ: x primitive and gcd(Q(x), D) = 1 (these are β_k).
    PhiPsi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellCounts {
    kmax: usize,
    primes: Vec<Poly>,
    /// counts[k][mask] = [non-primitive, primitive]; bit i of mask set iff
    /// primes[i] | Q(x).
    counts: Vec<Vec<[u64; 2]>>,
}

impl ShellCounts {
    fn empty(kmax: usize, primes: Vec<Poly>) -> Self {
        let nmask = 1usize << primes.len();
        Self { kmax, primes, counts: vec![vec![[0; 2]; nmask]; kmax + 1] }
    }

    fn merge(mut self, o: &Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&o.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                x[0] += y[0];
                x[1] += y[1];
            }
        }
        self
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Monic primes of D, in the bit order of the masks.
    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }

    pub fn cell(&self, k: usize, mask: usize, primitive: bool) -> u64 {
        self.counts[k][mask][primitive as usize]
    }

    fn sum(&self, k: usize, f: impl Fn(usize, bool) -> bool) -> u64 {
        let mut s = 0;
        for (mask, c) in self.counts[k].iter().enumerate() {
            for prim in [false, true] {
                if f(mask, prim) {
                    s += c[prim as usize];
                }
            }
        }
        s
    }

    pub fn alpha(&self, k: usize) -> u64 {
        self.sum(k, |_, _| true)
    }

    pub fn beta(&self, k: usize) -> u64 {
        self.sum(k, |mask, prim| mask == 0 && prim)
    }

    /// |L_k| including the zero vector.
    pub fn ball(&self, k: usize) -> u64 {
        1 + (0..=k).map(|j| self.alpha(j)).sum::<u64>()
    }

    fn mask_of(&self, d: &Poly) -> Result<usize> {
        let d = d.monic();
        let mut rest = d.clone();
        let mut mask = 0;
        for (i, p) in self.primes.iter().enumerate() {
            if let Some(r) = rest.div_exact(p) {
                rest = r;
                mask |= 1 << i;
            }
        }
        if !rest.is_one() {
            return Err(Error::Precondition(format!("{d} does not divide the determinant")));
        }
        Ok(mask)
    }

    pub fn coefficient(&self, k: usize, twist: &Twist) -> Result<u64> {
        Ok(match twist {
            Twist::None => self.alpha(k),
            Twist::ChiD(d) => {
                let m = self.mask_of(d)?;
                self.sum(k, |mask, _| mask & m == m)
            }
            Twist::Psi => self.sum(k, |mask, _| mask == 0),
            Twist::PhiPsi => self.beta(k),
        })
    }

    pub fn coefficients(&self, twist: &Twist) -> Result<Vec<u64>> {
        (0..=self.kmax).map(|k| self.coefficient(k, twist)).collect()
    }
}

fn det_primes(l: &TernaryLattice) -> Result<Vec<Poly>> {
    let f = factor(l.det())?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(l.det().to_string()));
    }
    Ok(f.primes().cloned().collect())
}

/// Arithmetic in A/p via lookup tables on residue indices.
struct ResidueField {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl ResidueField {
    fn new(p: &Poly) -> Result<Self> {
        let q = p.modulus();
        let d = p.degree().unwrap();
        let n = count_upto(q, d as i64 - 1) as usize;
        if n > MAX_RESIDUE_FIELD {
            return Err(Error::BoundExceeded(format!("residue field of {p} has {n} elements")));
        }
        let elems: Vec<Poly> = (0..n).map(|i| Poly::from_index(q, i as u64)).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = (&elems[i] + &elems[j]).to_index() as u16;
                mul[i * n + j] = (&elems[i] * &elems[j]).rem(p)?.to_index() as u16;
            }
        }
        Ok(Self { n, add, mul })
    }

    #[inline]
    fn a(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.n + y as usize]
    }

    #[inline]
    fn m(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.n + y as usize]
    }
}

struct PrimeData {
    field: ResidueField,
    /// Gram entries mod p: g11, g22, g33, 2g12, 2g13, 2g23.
    g: [u16; 6],
    /// residue index of each coordinate index, per coordinate.
    res: [Vec<u16>; 3],
}

/// Shell counts for 0 <= k <= kmax by the table-driven engine. Requires a
/// reduced basis, where deg Q(x) = max(2 deg x_i + μ_i) is read off the
/// coordinate degrees and only Q(x) mod p is ever evaluated.
pub fn shell_counts(l: &TernaryLattice, kmax: usize) -> Result<ShellCounts> {
    let mu = l.require_reduced()?;
    let q = l.q();
    let primes = det_primes(l)?;
    let bounds = box_bounds(mu, kmax);
    let sizes: [usize; 3] = bounds.map(|b| count_upto(q, b) as usize);
    let polys: [Vec<Poly>; 3] = std::array::from_fn(|i| (0..sizes[i]).map(|n| Poly::from_index(q, n as u64)).collect());
    // 2·deg x_i + μ_i, or -1 for the zero coordinate.
    let dq: [Vec<i64>; 3] = std::array::from_fn(|i| {
        polys[i].iter().map(|p| p.degree().map_or(-1, |d| (2 * d + mu[i]) as i64)).collect()
    });
    let two = Poly::constant(q, 2);
    let mut pdata = Vec::new();
    for p in &primes {
        let field = ResidueField::new(p)?;
        let r = |x: &Poly| -> Result<u16> { Ok(x.rem(p)?.to_index() as u16) };
        let e = |i: usize, j: usize| &l.gram().e[i][j];
        let g = [
            r(e(0, 0))?,
            r(e(1, 1))?,
            r(e(2, 2))?,
            r(&(&two * e(0, 1)))?,
            r(&(&two * e(0, 2)))?,
            r(&(&two * e(1, 2)))?,
        ];
        let mut res: [Vec<u16>; 3] = Default::default();
        for i in 0..3 {
            res[i] = polys[i].iter().map(&r).collect::<Result<_>>()?;
        }
        pdata.push(PrimeData { field, g, res });
    }

    let empty = ShellCounts::empty(kmax, primes.clone());
    let n3 = sizes[2];
    let result = (0..sizes[0])
        .into_par_iter()
        .fold(
            || (empty.clone(), HashMap::<u64, Vec<bool>>::new()),
            |(mut acc, mut cache), i1| {
                let mut zero_tabs: Vec<Vec<bool>> = pdata.iter().map(|pd| vec![false; pd.field.n]).collect();
                for i2 in 0..sizes[1] {
                    let d12 = dq[0][i1].max(dq[1][i2]);
                    let g = polys[0][i1].gcd(&polys[1][i2]).unwrap();
                    // For each p: table of r3 ↦ [Q ≡ 0 mod p].
                    for (pd, zt) in pdata.iter().zip(zero_tabs.iter_mut()) {
                        let f = &pd.field;
                        let (r1, r2) = (pd.res[0][i1], pd.res[1][i2]);
                        let c0 = f.a(f.a(f.m(pd.g[0], f.m(r1, r1)), f.m(pd.g[1], f.m(r2, r2))), f.m(pd.g[3], f.m(r1, r2)));
                        let lin = f.a(f.m(pd.g[4], r1), f.m(pd.g[5], r2));
                        for (r3, z) in zt.iter_mut().enumerate() {
                            let r3 = r3 as u16;
                            let v = f.a(c0, f.a(f.m(lin, r3), f.m(pd.g[2], f.m(r3, r3))));
                            *z = v == 0;
                        }
                    }
                    let coprime: Option<&Vec<bool>> = if g.is_one() {
                        None
                    } else {
                        let key = g.to_index();
                        Some(cache.entry(key).or_insert_with(|| {
                            polys[2].iter().map(|x3| g.gcd(x3).unwrap().is_one()).collect()
                        }))
                    };
                    for i3 in 0..n3 {
                        let d = d12.max(dq[2][i3]);
                        if d < 0 {
                            continue;
                        }
                        let mut mask = 0usize;
                        for (b, (pd, zt)) in pdata.iter().zip(&zero_tabs).enumerate() {
                            if zt[pd.res[2][i3] as usize] {
                                mask |= 1 << b;
                            }
                        }
                        let prim = coprime.map_or(true, |c| c[i3]);
                        acc.counts[d as usize][mask][prim as usize] += 1;
                    }
                }
                (acc, cache)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(|| empty.clone(), |a, b| a.merge(&b));
    Ok(result)
}

/// Oracle for `shell_counts`: evaluates Q(x) as a polynomial on a box one
/// degree larger in every coordinate, checks that nothing outside the L_kmax
/// box has deg Q <= kmax, and classifies with gcds.
pub fn shell_counts_direct(l: &TernaryLattice, kmax: usize) -> Result<ShellCounts> {
    let mu = l.require_reduced()?;
    let q = l.q();
    let primes = det_primes(l)?;
    let inner = box_bounds(mu, kmax);
    let outer = inner.map(|b| b.max(-1) + 1);
    let mut out = ShellCounts::empty(kmax, primes.clone());
    for x in super::BoxIter::new(q, outer) {
        let v = l.q_value(&x);
        let Some(d) = v.degree() else { continue };
        if d > kmax {
            continue;
        }
        if (0..3).any(|i| x[i].degree_or_neg() > inner[i]) {
            return Err(Error::Invariant(format!("vector {x:?} with deg Q = {d} escaped the box")));
        }
        let mut mask = 0;
        for (b, p) in primes.iter().enumerate() {
            if p.divides(&v) {
                mask |= 1 << b;
            }
        }
        out.counts[d][mask][is_primitive(&x) as usize] += 1;
    }
    Ok(out)
}

/// α_k(L).
pub fn epstein_alpha(l: &TernaryLattice, k: usize) -> Result<u64> {
    let mu = l.require_reduced()?;
    let mut n = 0;
    for x in short_vectors(l, k)? {
        if x.iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| 2 * d + mu[i])).max() == Some(k) {
            n += 1;
        }
    }
    Ok(n)
}

/// β_k(L): primitive x with deg Q(x) = k and gcd(Q(x), D) = 1.
pub fn epstein_beta(l: &TernaryLattice, k: usize) -> Result<u64> {
    Ok(shell_counts(l, k)?.beta(k))
}

/// Coefficients of Z*_L(u, twist) up to u^kmax.
pub fn twisted_zeta_coefficients(l: &TernaryLattice, kmax: usize, twist: &Twist) -> Result<Vec<u64>> {
    shell_counts(l, kmax)?.coefficients(twist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reduce;

    fn lat(q: u32, d: [&[i64]; 3]) -> TernaryLattice {
        let l = TernaryLattice::diagonal(d.map(|c| Poly::from_i64(q, c))).unwrap();
        reduce(&l).unwrap().0
    }

    #[test]
    fn fast_matches_direct() {
        let cases = [
            lat(3, [&[1], &[1], &[0, 1]]),
            lat(3, [&[1], &[1], &[0, 1, 0, 1]]),
            lat(5, [&[1], &[3], &[0, 3]]),
        ];
        for l in cases {
            let k = l.delta() + 2;
            assert_eq!(shell_counts(&l, k).unwrap(), shell_counts_direct(&l, k).unwrap());
        }
    }

    #[test]
    fn alpha_agrees_with_counts() {
        let l = lat(3, [&[1], &[1], &[0, 1]]);
        let s = shell_counts(&l, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(s.alpha(k), epstein_alpha(&l, k).unwrap());
        }
        assert_eq!(s.ball(1), 27);
    }

    #[test]
    fn chi_d_rejects_non_divisor() {
        let l = lat(3, [&[1], &[1], &[0, 1]]);
        let s = shell_counts(&l, 2).unwrap();
        assert!(s.coefficient(2, &Twist::ChiD(Poly::from_i64(3, &[1, 1]))).is_err());
        assert!(s.coefficient(2, &Twist::ChiD(Poly::from_i64(3, &[0, 2]))).is_ok());
    }
}
