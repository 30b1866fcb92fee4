use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::enumerate::enumerate_monic;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Ben-Or test: f of degree n is irreducible iff gcd(t^{q^i} - t, f) = 1 for i <= n/2.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let q = f.modulus();
    let t = Poly::t(q);
    let mut power = t.clone();
    for _ in 1..=n / 2 {
        power = power.pow_mod(q as u128, f)?;
        let g = (&power - &t).gcd(f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

type Table = HashMap<(u32, usize), std::sync::Arc<Vec<Poly>>>;

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All monic irreducibles of degree exactly `k`, in enumeration order. Cached.
pub fn irreducibles(q: u32, k: usize) -> std::sync::Arc<Vec<Poly>> {
    if let Some(v) = table().read().expect("irreducible table poisoned").get(&(q, k)) {
        return v.clone();
    }
    let list: Vec<Poly> = enumerate_monic(q, k)
        .filter(|f| is_irreducible(f).unwrap_or(false))
        .collect();
    let arc = std::sync::Arc::new(list);
    table()
        .write()
        .expect("irreducible table poisoned")
        .entry((q, k))
        .or_insert(arc)
        .clone()
}

/// A factorization `unit * prod p_i^{e_i}` with monic irreducible `p_i` sorted
/// by degree and then enumeration index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn expand(&self, q: u32) -> Poly {
        let mut acc = Poly::constant(q, self.unit as i64);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }
}

/// Factors f by trial division against the cached irreducible tables, with an
/// irreducibility test on the remaining cofactor to stop early.
pub fn factor(f: &Poly) -> Result<Factorization> {
    let n = f.degree().ok_or(Error::ZeroInput)?;
    let q = f.modulus();
    let unit = f.lc();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut k = 1;
    while let Some(d) = rest.degree() {
        if d == 0 {
            break;
        }
        if 2 * k > d || (k > 2 && is_irreducible(&rest)?) {
            factors.push((rest.clone(), 1));
            break;
        }
        for p in irreducibles(q, k).iter() {
            let mut e = 0;
            while let Some(quot) = rest.div_exact(p) {
                rest = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((p.clone(), e));
            }
            if rest.degree().unwrap_or(0) < 2 * k {
                break;
            }
        }
        k += 1;
    }
    debug_assert!(n == 0 || !factors.is_empty());
    // A prime found as the final cofactor may repeat an earlier one.
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    // In characteristic q, f' = 0 means f is a q-th power.
    let d = f.derivative();
    if d.is_zero() {
        return Ok(f.is_constant());
    }
    Ok(f.gcd(&d)?.is_one())
}

/// Möbius function of a monic polynomial.
pub fn mobius(f: &Poly) -> Result<i8> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let fac = factor(f)?;
    if !fac.is_squarefree() {
        return Ok(0);
    }
    Ok(if fac.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Monic divisors of f (from its factorization), in no particular order.
pub fn monic_divisors(f: &Poly) -> Result<Vec<Poly>> {
    let fac = factor(f)?;
    let q = f.modulus();
    let mut divs = vec![Poly::one(q)];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                cur = &cur * p;
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    /// Independent oracle: no monic divisor of degree 1..=deg/2.
    fn irreducible_by_divisors(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        if n == 0 {
            return false;
        }
        (1..=n / 2).all(|k| enumerate_monic(f.modulus(), k).all(|g| !g.divides(f)))
    }

    #[test]
    fn spec_examples() {
        let f = factor(&p(3, &[0, 2, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(3, &[0, 1]), 1), (p(3, &[2, 1]), 1)]);
        let f = factor(&p(3, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(3, &[1, 0, 1]), 1)]);
        let f = factor(&p(3, &[1, 2, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(3, &[1, 1]), 2)]);
        assert_eq!(mobius(&Poly::one(3)).unwrap(), 1);
        assert_eq!(mobius(&p(3, &[0, 1, 1])).unwrap(), 1);
        assert_eq!(mobius(&p(3, &[1, 2, 1])).unwrap(), 0);
        assert_eq!(factor(&Poly::zero(3)), Err(Error::ZeroInput));
    }

    #[test]
    fn irreducible_counts() {
        // Gauss: number of monic irreducibles of degree n is (1/n) sum_{d|n} mu(d) q^{n/d}.
        assert_eq!(irreducibles(3, 1).len(), 3);
        assert_eq!(irreducibles(3, 2).len(), 3);
        assert_eq!(irreducibles(3, 3).len(), 8);
        assert_eq!(irreducibles(3, 4).len(), 18);
        assert_eq!(irreducibles(5, 2).len(), 10);
        assert_eq!(irreducibles(5, 3).len(), 40);
    }

    #[test]
    fn ben_or_matches_divisor_oracle() {
        for q in [3u32, 5] {
            for k in 1..=4 {
                for f in enumerate_monic(q, k) {
                    assert_eq!(is_irreducible(&f).unwrap(), irreducible_by_divisors(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn factor_roundtrip_exhaustive() {
        for q in [3u32, 5] {
            for k in 0..=5 {
                if q == 5 && k > 4 {
                    continue;
                }
                for f in enumerate_monic(q, k) {
                    let g = f.scale(2);
                    let fac = factor(&g).unwrap();
                    assert_eq!(fac.expand(q), g);
                    for (pr, _) in &fac.factors {
                        assert!(pr.is_monic());
                        if pr.degree().unwrap() <= 4 {
                            assert!(irreducible_by_divisors(pr));
                        }
                    }
                    assert_eq!(fac.is_squarefree(), is_squarefree(&g).unwrap());
                }
            }
        }
    }

    #[test]
    fn divisors_of_t_times_t_plus_one() {
        let mut d = monic_divisors(&p(3, &[0, 1, 1])).unwrap();
        d.sort();
        assert_eq!(d, vec![p(3, &[1]), p(3, &[0, 1]), p(3, &[1, 1]), p(3, &[0, 1, 1])]);
    }
}
