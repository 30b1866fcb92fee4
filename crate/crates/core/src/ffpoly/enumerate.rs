//! Deterministic enumeration of polynomials of a fixed degree.
//!
//! Order: coefficient vectors counted in base q with the constant coefficient
//! varying fastest, i.e. increasing `Poly::to_index`.

use super::poly::Poly;

/// All monic polynomials of degree exactly `k` (q^k of them).
pub fn enumerate_monic(q: u32, k: usize) -> impl Iterator<Item = Poly> {
    let base = (q as u64).pow(k as u32);
    (0..base).map(move |i| Poly::from_index(q, base + i))
}

/// All polynomials of degree exactly `k` ((q-1) q^k of them), grouped by
/// leading coefficient 1, 2, ..., q-1.
pub fn enumerate_all(q: u32, k: usize) -> impl Iterator<Item = Poly> {
    let base = (q as u64).pow(k as u32);
    (base..q as u64 * base).map(move |i| Poly::from_index(q, i))
}

/// All polynomials of degree at most `k`, including zero (q^{k+1} of them).
pub fn enumerate_upto(q: u32, k: usize) -> impl Iterator<Item = Poly> {
    let n = (q as u64).pow(k as u32 + 1);
    (0..n).map(move |i| Poly::from_index(q, i))
}

/// Number of polynomials of degree at most `k`, zero included.
pub fn count_upto(q: u32, k: i64) -> u64 {
    if k < 0 {
        1
    } else {
        (q as u64).pow(k as u32 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_and_order() {
        let v: Vec<String> = enumerate_monic(3, 1).map(|p| p.to_string()).collect();
        assert_eq!(v, ["t", "t+1", "t+2"]);
        assert_eq!(enumerate_monic(3, 0).collect::<Vec<_>>(), vec![Poly::one(3)]);
        assert_eq!(enumerate_all(3, 2).count(), 18);
        assert!(enumerate_all(3, 2).all(|p| p.degree() == Some(2)));
        let set: HashSet<_> = enumerate_all(5, 2).collect();
        assert_eq!(set.len(), 100);
        assert_eq!(enumerate_upto(3, 1).count(), 9);
    }
}
