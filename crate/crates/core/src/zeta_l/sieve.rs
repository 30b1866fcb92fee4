//! Smallest-prime-factor sieve over monic polynomials of bounded degree, used to
//! evaluate completely multiplicative characters on every monic polynomial at once.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::ffpoly::{enumerate_monic, Poly};

pub struct MonicSieve {
    q: u32,
    kmax: usize,
    /// Prime id of the smallest prime factor, per `Poly::to_index`; u32::MAX for 1.
    spf: Vec<u32>,
    /// Index of a / spf(a).
    cof: Vec<u32>,
    primes: Vec<Poly>,
}

impl MonicSieve {
    pub fn new(q: u32, kmax: usize) -> Self {
        let size = (q as usize).pow(kmax as u32 + 1);
        let mut spf = vec![u32::MAX; size];
        let mut cof = vec![0u32; size];
        let mut primes = Vec::new();
        for d in 1..=kmax {
            for a in enumerate_monic(q, d) {
                let i = a.to_index() as usize;
                if spf[i] != u32::MAX {
                    continue;
                }
                let pid = primes.len() as u32;
                for e in 0..=(kmax - d) {
                    for c in enumerate_monic(q, e) {
                        let j = (&a * &c).to_index() as usize;
                        if spf[j] == u32::MAX {
                            spf[j] = pid;
                            cof[j] = c.to_index() as u32;
                        }
                    }
                }
                primes.push(a);
            }
        }
        Self { q, kmax, spf, cof, primes }
    }

    /// Shared sieve for (q, kmax), built on first use.
    pub fn cached(q: u32, kmax: usize) -> Arc<MonicSieve> {
        type Cache = RwLock<HashMap<(u32, usize), Arc<MonicSieve>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.read().expect("sieve cache poisoned").get(&(q, kmax)) {
            return s.clone();
        }
        let s = Arc::new(MonicSieve::new(q, kmax));
        cache.write().expect("sieve cache poisoned").entry((q, kmax)).or_insert(s).clone()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }

    /// Number of primes of degree at most k.
    pub fn prime_count_upto(&self, k: usize) -> usize {
        self.primes.partition_point(|p| p.degree().unwrap() <= k)
    }

    /// Sums of a completely multiplicative function over monic polynomials of
    /// each degree 0..=k, given its values on the primes of degree <= k.
    pub fn degree_sums(&self, prime_values: &[i8], k: usize) -> Vec<i64> {
        assert!(k <= self.kmax);
        let q = self.q as usize;
        let mut vals = vec![0i8; q.pow(k as u32 + 1)];
        let mut sums = vec![0i64; k + 1];
        vals[1] = 1;
        sums[0] = 1;
        let mut start = 1usize;
        for s in sums.iter_mut().skip(1) {
            start *= q;
            for i in start..2 * start {
                let v = prime_values[self.spf[i] as usize] * vals[self.cof[i] as usize];
                vals[i] = v;
                *s += v as i64;
            }
        }
        sums
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{factor, irreducibles};

    #[test]
    fn primes_match_irreducible_tables() {
        let s = MonicSieve::new(3, 5);
        for d in 1..=5 {
            let from_sieve: Vec<_> = s.primes().iter().filter(|p| p.degree() == Some(d)).cloned().collect();
            assert_eq!(from_sieve, *irreducibles(3, d));
        }
    }

    #[test]
    fn counting_function_counts_prime_factors() {
        // Value -1 on every prime gives the Liouville function; compare with factor().
        let s = MonicSieve::new(3, 4);
        let ones = vec![-1i8; s.primes().len()];
        let sums = s.degree_sums(&ones, 4);
        for (d, &got) in sums.iter().enumerate() {
            let want: i64 = enumerate_monic(3, d)
                .map(|a| {
                    let n: u32 = factor(&a).unwrap().factors.iter().map(|f| f.1).sum();
                    if n % 2 == 0 { 1 } else { -1 }
                })
                .sum();
            assert_eq!(got, want);
        }
    }
}
