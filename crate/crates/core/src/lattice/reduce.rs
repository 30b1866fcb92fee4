//! Reduction to a basis realizing the successive minima.
//!
//! With μ_i = deg Q(e_i), definiteness forces 2 deg B(e_i,e_j) <= μ_i + μ_j.
//! For each parity class S of indices, the leading form Λ_S over F_q takes
//! the coefficient of t^{(μ_i+μ_j)/2} in B(e_i,e_j). If some Λ_S is
//! isotropic with zero c, the vector Σ c_i t^{(μ_j-μ_i)/2} e_i (j the index of
//! largest μ in supp c) replaces e_j and has strictly smaller Q-degree, so
//! Σμ drops. When every Λ_S is anisotropic, deg Q(x) = max(2 deg x_i + μ_i)
//! for all x, which certifies definiteness and gives Σμ = deg det.

use super::TernaryLattice;
use crate::error::{Error, Result};
use crate::ffpoly::{add_mod, mul_mod, Poly};
use crate::matrix::Mat3;

fn minima_of(g: &Mat3) -> Result<[usize; 3]> {
    let mut mu = [0usize; 3];
    for (i, m) in mu.iter_mut().enumerate() {
        *m = g.e[i][i].degree().ok_or(Error::NotDefinite)?;
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if let Some(d) = g.e[i][j].degree() {
                if 2 * d > mu[i] + mu[j] {
                    return Err(Error::NotDefinite);
                }
            }
        }
    }
    Ok(mu)
}

/// A nonzero isotropic vector of the leading form on `idx`, if any.
fn isotropic_leading(g: &Mat3, mu: &[usize; 3], idx: &[usize], q: u32) -> Option<Vec<u32>> {
    let s = idx.len();
    let lam: Vec<Vec<u32>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| g.e[i][j].coeff((mu[i] + mu[j]) / 2)).collect())
        .collect();
    let total = (q as usize).pow(s as u32);
    for n in 1..total {
        let mut c = vec![0u32; s];
        let mut r = n;
        for ci in c.iter_mut() {
            *ci = (r % q as usize) as u32;
            r /= q as usize;
        }
        let mut v = 0u32;
        for a in 0..s {
            for b in 0..s {
                v = add_mod(v, mul_mod(mul_mod(c[a], c[b], q), lam[a][b], q), q);
            }
        }
        if v == 0 {
            return Some(c);
        }
    }
    None
}

/// Whether G is a reduced Gram matrix of a definite lattice: degree bounds
/// hold and every leading form is anisotropic.
pub(crate) fn is_reduced_gram(g: &Mat3) -> bool {
    let Ok(mu) = minima_of(g) else { return false };
    let q = g.modulus();
    (0..2).all(|parity| {
        let idx: Vec<usize> = (0..3).filter(|&i| mu[i] % 2 == parity).collect();
        idx.len() < 2 || isotropic_leading(g, &mu, &idx, q).is_none()
    })
}

/// Reduces a definite lattice. Returns the reduced lattice and the unimodular
/// T (columns = new basis in old coordinates) with Tᵀ G T = G_red.
pub fn reduce(l: &TernaryLattice) -> Result<(TernaryLattice, Mat3)> {
    let q = l.q();
    let delta = l.delta();
    let g0 = l.gram().clone();
    let mut t = Mat3::identity(q);
    let mut g = g0.clone();
    loop {
        let mu = minima_of(&g)?;
        if mu.iter().sum::<usize>() < delta {
            return Err(Error::NotDefinite);
        }
        let mut step = None;
        for parity in 0..2 {
            let idx: Vec<usize> = (0..3).filter(|&i| mu[i] % 2 == parity).collect();
            if idx.len() < 2 {
                continue;
            }
            if let Some(c) = isotropic_leading(&g, &mu, &idx, q) {
                step = Some((idx, c));
                break;
            }
        }
        let Some((idx, c)) = step else { break };
        let j = *idx
            .iter()
            .zip(&c)
            .filter(|(_, &ci)| ci != 0)
            .max_by_key(|(&i, _)| mu[i])
            .unwrap()
            .0;
        let mut col: [Poly; 3] = std::array::from_fn(|_| Poly::zero(q));
        for (&i, &ci) in idx.iter().zip(&c) {
            if ci == 0 {
                continue;
            }
            let coef = Poly::monomial(q, ci as i64, (mu[j] - mu[i]) / 2);
            for r in 0..3 {
                col[r] = &col[r] + &(&coef * &t.e[r][i]);
            }
        }
        for (r, v) in col.into_iter().enumerate() {
            t.e[r][j] = v;
        }
        g = g0.congruence(&t);
    }
    let mut mu = minima_of(&g)?;
    if mu.iter().sum::<usize>() != delta {
        return Err(Error::Invariant(format!("reduced minima {mu:?} do not sum to {delta}")));
    }
    // Size-reduce off-diagonal entries against the smaller diagonal entry.
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)] {
        if mu[i] > mu[j] || (mu[i] == mu[j] && i > j) {
            continue;
        }
        let (k, _) = g.e[i][j].divmod(&g.e[i][i])?;
        if k.is_zero() {
            continue;
        }
        for r in 0..3 {
            t.e[r][j] = &t.e[r][j] - &(&k * &t.e[r][i]);
        }
        g = g0.congruence(&t);
        mu = minima_of(&g)?;
    }
    // Order basis by (μ, Q(e_i)).
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| mu[a].cmp(&mu[b]).then_with(|| g.e[a][a].cmp_canonical(&g.e[b][b])));
    let perm = Mat3::from_fn(|r, c| if r == order[c] { Poly::one(q) } else { Poly::zero(q) });
    let t = t.mul(&perm);
    let g = g0.congruence(&t);
    let mu = minima_of(&g)?;
    if mu.iter().sum::<usize>() != delta || !t.is_unimodular() {
        return Err(Error::Invariant("reduction lost its invariants".into()));
    }
    Ok((TernaryLattice::with_minima(g, l.det().clone(), mu), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    pub(crate) fn random_unimodular(q: u32, rng: &mut ChaCha8Rng, steps: usize, deg: usize) -> Mat3 {
        let mut t = Mat3::identity(q);
        for _ in 0..steps {
            let i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            while j == i {
                j = rng.gen_range(0..3);
            }
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q as i64)).collect();
            let mut e = Mat3::identity(q);
            e.e[i][j] = Poly::from_i64(q, &coeffs);
            t = t.mul(&e);
        }
        t
    }

    #[test]
    fn reduced_diagonal_is_fixed() {
        let l = TernaryLattice::diagonal([p(3, &[1]), p(3, &[1]), p(3, &[0, 1])]).unwrap();
        let (r, t) = reduce(&l).unwrap();
        assert_eq!(r.gram(), l.gram());
        assert_eq!(t, Mat3::identity(3));
        assert_eq!(r.minima(), Some([0, 0, 1]));
    }

    #[test]
    fn scrambled_lattices_reduce_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = [
            (3u32, [p(3, &[1]), p(3, &[1]), p(3, &[0, 1])]),
            (5, [p(5, &[1]), p(5, &[3]), p(5, &[0, 3])]),
            (3, [p(3, &[1]), p(3, &[1]), p(3, &[1, 2, 0, 1])]),
        ];
        for (q, d) in cases {
            let l = TernaryLattice::diagonal(d).unwrap();
            let (base, _) = reduce(&l).unwrap();
            for _ in 0..20 {
                let s = random_unimodular(q, &mut rng, 6, 2);
                let scrambled = l.transform(&s).unwrap();
                let (r, t) = reduce(&scrambled).unwrap();
                assert_eq!(r.minima(), base.minima());
                assert_eq!(scrambled.gram().congruence(&t), *r.gram());
                assert!(t.is_unimodular());
                assert_eq!(r.det(), l.det());
                // idempotent
                let (rr, _) = reduce(&r).unwrap();
                assert_eq!(rr.minima(), r.minima());
            }
        }
    }

    #[test]
    fn hyperbolic_rejected() {
        let l = TernaryLattice::diagonal([p(3, &[1]), p(3, &[2]), p(3, &[0, 1])]).unwrap();
        assert_eq!(reduce(&l).unwrap_err(), Error::NotDefinite);
    }
}
