//! The even Clifford order C_0(L) with A-basis {1, e1e2, e1e3, e2e3}.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{count_upto, Poly};
use crate::lattice::{is_primitive, reduce, short_vectors, TernaryLattice};
use crate::matrix::Mat3;

/// Basis words of C_0(L) and their bitmasks in the full Clifford algebra.
const WORDS: [&[usize]; 4] = [&[], &[0, 1], &[0, 2], &[1, 2]];
const MASKS: [usize; 4] = [0b000, 0b011, 0b101, 0b110];

/// Largest number of coordinate vectors the square-root search will visit.
pub const SQRT_SEARCH_CAP: u64 = 20_000_000;

pub type Element = [Poly; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCliffordOrder {
    q: u32,
    gram: Mat3,
    /// mult[a][b] = coordinates of b_a·b_b.
    mult: Vec<Vec<Element>>,
    norm_gram: [[Poly; 4]; 4],
}

/// Normal form of the Clifford word e_{w0} e_{w1} ..., as coefficients on
/// the 8 sorted monomials (indexed by bitmask).
fn normal_form(word: &[usize], gram: &Mat3) -> [Poly; 8] {
    let q = gram.modulus();
    let k = (0..word.len().saturating_sub(1)).find(|&k| word[k] >= word[k + 1]);
    let Some(k) = k else {
        let mut out: [Poly; 8] = std::array::from_fn(|_| Poly::zero(q));
        out[word.iter().fold(0, |m, &i| m | (1 << i))] = Poly::one(q);
        return out;
    };
    let (i, j) = (word[k], word[k + 1]);
    let mut shorter = word[..k].to_vec();
    shorter.extend_from_slice(&word[k + 2..]);
    let rest = normal_form(&shorter, gram);
    if i == j {
        // e_i e_i = Q(e_i)
        return rest.map(|c| &c * &gram.e[i][i]);
    }
    // e_i e_j = -e_j e_i + 2B(e_i, e_j)
    let mut swapped = word.to_vec();
    swapped.swap(k, k + 1);
    let sw = normal_form(&swapped, gram);
    let two_b = gram.e[i][j].scale(2);
    std::array::from_fn(|m| &(&rest[m] * &two_b) - &sw[m])
}

fn det4(m: &[[Poly; 4]; 4]) -> Poly {
    let q = m[0][0].modulus();
    let mut acc = Poly::zero(q);
    for c in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
        let minor = Mat3::from_fn(|i, j| m[i + 1][cols[j]].clone()).det();
        let term = &m[0][c] * &minor;
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl EvenCliffordOrder {
    pub fn new(l: &TernaryLattice) -> Result<Self> {
        let gram = l.gram().clone();
        let q = l.q();
        let mut mult = vec![vec![std::array::from_fn(|_| Poly::zero(q)); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut w = WORDS[a].to_vec();
                w.extend_from_slice(WORDS[b]);
                let nf = normal_form(&w, &gram);
                for (m, c) in nf.iter().enumerate() {
                    if !MASKS.contains(&m) && !c.is_zero() {
                        return Err(Error::Invariant("odd part in an even product".into()));
                    }
                }
                mult[a][b] = MASKS.map(|m| nf[m].clone());
            }
        }
        let mut o = Self { q, gram, mult, norm_gram: std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero(q))) };
        let basis: Vec<Element> = (0..4).map(|a| o.basis(a)).collect();
        for a in 0..4 {
            for b in 0..4 {
                o.norm_gram[a][b] = o.pairing(&basis[a], &basis[b]);
            }
        }
        Ok(o)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn basis(&self, a: usize) -> Element {
        std::array::from_fn(|i| if i == a { Poly::one(self.q) } else { Poly::zero(self.q) })
    }

    pub fn norm_gram(&self) -> &[[Poly; 4]; 4] {
        &self.norm_gram
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Element>> {
        &self.mult
    }

    /// B(e_i, e_j) for the generator pair of basis element a >= 1.
    fn pair_b(&self, a: usize) -> &Poly {
        let w = WORDS[a];
        &self.gram.e[w[0]][w[1]]
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out: Element = std::array::from_fn(|_| Poly::zero(self.q));
        for a in 0..4 {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for k in 0..4 {
                    out[k] = &out[k] + &(&c * &self.mult[a][b][k]);
                }
            }
        }
        out
    }

    /// Canonical involution: conj(e_i e_j) = e_j e_i = 2B(e_i,e_j) - e_i e_j.
    pub fn conj(&self, x: &Element) -> Element {
        let mut out = x.clone();
        for a in 1..4 {
            out[a] = -&x[a];
            out[0] = &out[0] + &(&x[a] * &self.pair_b(a).scale(2));
        }
        out
    }

    /// Tr(x) = x + conj(x), a scalar.
    pub fn trace(&self, x: &Element) -> Poly {
        let s = self.conj(x);
        debug_assert!((1..4).all(|a| (&x[a] + &s[a]).is_zero()));
        &x[0] + &s[0]
    }

    /// ⟨x, y⟩ = ½ Tr(x conj(y)).
    pub fn pairing(&self, x: &Element, y: &Element) -> Poly {
        let half = (self.q + 1) / 2;
        self.trace(&self.mul(x, &self.conj(y))).scale(half)
    }

    /// N(x) = x conj(x); errors if the product is not scalar.
    pub fn norm(&self, x: &Element) -> Result<Poly> {
        let n = self.mul(x, &self.conj(x));
        if (1..4).any(|a| !n[a].is_zero()) {
            return Err(Error::Invariant("x·conj(x) is not scalar".into()));
        }
        Ok(n[0].clone())
    }

    pub fn is_associative(&self) -> bool {
        let b: Vec<Element> = (0..4).map(|a| self.basis(a)).collect();
        for x in &b {
            for y in &b {
                for z in &b {
                    if self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn norm_det(&self) -> Poly {
        det4(&self.norm_gram)
    }

    /// Trace-zero elements b_a - B(e_i,e_j), a = 1..3: an A-basis of the
    /// trace-zero part of C_0(L).
    pub fn trace_zero_basis(&self) -> [Element; 3] {
        std::array::from_fn(|k| {
            let a = k + 1;
            let mut e = self.basis(a);
            e[0] = -self.pair_b(a);
            e
        })
    }

    /// The trace-zero part with the norm form, as a ternary lattice.
    pub fn trace_zero_lattice(&self) -> Result<TernaryLattice> {
        let b = self.trace_zero_basis();
        TernaryLattice::new(Mat3::from_fn(|i, j| self.pairing(&b[i], &b[j])))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump {
            q: u32,
            basis: [&'static str; 4],
            structure_constants: Vec<Vec<Vec<String>>>,
            norm_gram: Vec<Vec<String>>,
        }
        let d = Dump {
            q: self.q,
            basis: ["1", "e1e2", "e1e3", "e2e3"],
            structure_constants: self
                .mult
                .iter()
                .map(|r| r.iter().map(|e| e.iter().map(|p| p.to_string()).collect()).collect())
                .collect(),
            norm_gram: self.norm_gram.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect(),
        };
        serde_json::to_value(d).expect("order serializes")
    }
}

pub fn even_clifford(l: &TernaryLattice) -> Result<EvenCliffordOrder> {
    EvenCliffordOrder::new(l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtSearch {
    /// A primitive trace-zero λ with λ² = target.
    Found(Element),
    /// The bound covers every candidate and none works.
    Absent,
    /// Search incomplete within the bound, or too large to run.
    Unknown(String),
}

impl SqrtSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, SqrtSearch::Found(_))
    }
}

/// Searches trace-zero λ = Σ c_k f_k over a reduced basis f_k of the
/// trace-zero part, deg c_k <= degree_bound, for primitive λ with λ² =
/// target (λ² = -N(λ) for trace-zero λ). Reports Absent only when the bound
/// reaches ⌊(deg target - ν_k)/2⌋ for every k, with ν the minima of N there.
pub fn primitive_sqrt_search(order: &EvenCliffordOrder, target: &Poly, degree_bound: usize) -> Result<SqrtSearch> {
    let k = target.degree().ok_or(Error::ZeroInput)?;
    let lat = order.trace_zero_lattice()?;
    let (red, t) = reduce(&lat)?;
    let nu = red.require_reduced()?;
    let full: [i64; 3] = nu.map(|m| if k < m { -1 } else { ((k - m) / 2) as i64 });
    let bounds = full.map(|b| b.min(degree_bound as i64));
    let size: u64 = bounds.iter().map(|&b| count_upto(order.q, b)).product();
    if size > SQRT_SEARCH_CAP {
        return Ok(SqrtSearch::Unknown(format!("search space of {size} elements exceeds the cap")));
    }
    let want = -target;
    let basis = order.trace_zero_basis();
    let vectors = if bounds == full { short_vectors(&red, k)? } else { crate::lattice::BoxIter::new(order.q, bounds) };
    for c in vectors {
        if !is_primitive(&c) || red.q_value(&c) != want {
            continue;
        }
        // back to order coordinates: coefficients on the trace-zero basis are T·c
        let y = t.mul_vec(&c);
        let mut lam: Element = std::array::from_fn(|_| Poly::zero(order.q));
        for (yk, bk) in y.iter().zip(&basis) {
            for i in 0..4 {
                lam[i] = &lam[i] + &(yk * &bk[i]);
            }
        }
        let sq = order.mul(&lam, &lam);
        if sq[0] != *target || (1..4).any(|a| !sq[a].is_zero()) || !order.trace(&lam).is_zero() {
            return Err(Error::Invariant("square-root candidate fails its recheck".into()));
        }
        return Ok(SqrtSearch::Found(lam));
    }
    Ok(if bounds == full {
        SqrtSearch::Absent
    } else {
        SqrtSearch::Unknown(format!("no root with coefficient degree <= {degree_bound}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    fn random_lattice(q: u32, rng: &mut ChaCha8Rng) -> TernaryLattice {
        loop {
            let mut e: Vec<Poly> = Vec::new();
            for _ in 0..6 {
                let deg = rng.gen_range(0..3);
                let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q as i64)).collect();
                e.push(Poly::from_i64(q, &c));
            }
            if let Ok(l) = TernaryLattice::from_entries([&e[0], &e[1], &e[2], &e[3], &e[4], &e[5]]) {
                return l;
            }
        }
    }

    #[test]
    fn diagonal_norm_gram() {
        let (a, b, c) = (p(3, &[1, 1]), p(3, &[2]), p(3, &[0, 1, 1]));
        let l = TernaryLattice::diagonal([a.clone(), b.clone(), c.clone()]).unwrap();
        let o = even_clifford(&l).unwrap();
        let want = [Poly::one(3), &a * &b, &a * &c, &b * &c];
        for i in 0..4 {
            for j in 0..4 {
                let w = if i == j { want[i].clone() } else { Poly::zero(3) };
                assert_eq!(o.norm_gram()[i][j], w);
            }
        }
    }

    #[test]
    fn random_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [3u32, 5] {
            for _ in 0..15 {
                let l = random_lattice(q, &mut rng);
                let o = even_clifford(&l).unwrap();
                assert!(o.is_associative());
                assert_eq!(o.norm_det(), l.det() * l.det());
                let x: Element = std::array::from_fn(|_| Poly::from_i64(q, &[rng.gen_range(0..q as i64), rng.gen_range(0..q as i64)]));
                let y: Element = std::array::from_fn(|_| Poly::from_i64(q, &[rng.gen_range(0..q as i64)]));
                let nxy = o.norm(&o.mul(&x, &y)).unwrap();
                assert_eq!(nxy, &o.norm(&x).unwrap() * &o.norm(&y).unwrap());
                assert_eq!(o.norm(&x).unwrap(), o.pairing(&x, &x));
            }
        }
    }

    #[test]
    fn sqrt_matches_representation() {
        let q = 3;
        let l = reduce(&TernaryLattice::diagonal([p(q, &[1]), p(q, &[1]), p(q, &[0, 1])]).unwrap()).unwrap().0;
        let o = even_clifford(&l).unwrap();
        for a in [p(q, &[1]), p(q, &[2]), p(q, &[1, 1]), p(q, &[1, 2]), p(q, &[2, 0, 1])] {
            let r = crate::lattice::representation_count(&l, &a, true).unwrap();
            let target = -&(&a * l.det());
            let s = primitive_sqrt_search(&o, &target, 10).unwrap();
            assert_eq!(r > 0, s.is_found(), "a = {a}");
            if r == 0 {
                assert_eq!(s, SqrtSearch::Absent);
            }
        }
    }
}
