//! Class lists of a genus of definite ternary lattices with square-free
//! determinant: exhaustive search over reduced Gram matrices, and Kneser
//! neighbors with the mass formula as completeness certificate.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{count_upto, irreducibles, is_irreducible, is_squarefree, smallest_nonsquare, Poly};
use crate::formulas::mass_formula;
use crate::lattice::{
    automorphisms, is_decomposable, is_reduced_gram, isometry, primitive_representations, reduce, short_vectors,
    TernaryLattice, Vector,
};
use crate::localsym::{classify_primes, det_class, GenusSymbol};
use crate::matrix::{hermite_rows, Mat3};
use crate::upoly::{fmt_rational, Rational};

/// Default cap on the number of Gram candidates scanned by the exhaustive search.
pub const EXHAUSTIVE_MAX_CANDIDATES: u64 = 5_000_000;

#[derive(Clone, Debug)]
pub struct ClassList {
    pub representatives: Vec<TernaryLattice>,
    pub so_orders: Vec<usize>,
    pub genus_symbol: GenusSymbol,
}

#[derive(Serialize)]
struct ClassJson {
    gram: [[String; 3]; 3],
    minima: [usize; 3],
    so_order: usize,
}

impl ClassList {
    pub fn h(&self) -> usize {
        self.representatives.len()
    }

    pub fn mass(&self) -> Rational {
        self.so_orders.iter().map(|&n| Rational::new(1.into(), (n as i64).into())).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<ClassJson> = self
            .representatives
            .iter()
            .zip(&self.so_orders)
            .map(|(l, &n)| ClassJson {
                gram: std::array::from_fn(|i| std::array::from_fn(|j| l.entry(i, j).to_string())),
                minima: l.minima().unwrap_or([0; 3]),
                so_order: n,
            })
            .collect();
        serde_json::json!({
            "genus_symbol": self.genus_symbol.to_json(),
            "h": self.h(),
            "classes": classes,
            "mass": fmt_rational(&self.mass()),
        })
    }

    /// Whether both lists contain the same classes (up to isometry and order).
    pub fn same_classes(&self, other: &ClassList) -> Result<bool> {
        if self.h() != other.h() || self.genus_symbol != other.genus_symbol {
            return Ok(false);
        }
        for l in &self.representatives {
            let mut found = false;
            for m in &other.representatives {
                if isometry(l, m)?.is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_det(d: &Poly) -> Result<()> {
    if d.degree().is_none() {
        return Err(Error::ZeroInput);
    }
    if d.degree() == Some(0) {
        return Err(Error::Precondition("determinant must be non-constant".into()));
    }
    if !is_squarefree(d)? {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    Ok(())
}

/// Genus symbol of a lattice relative to its own determinant.
pub fn genus_symbol(l: &TernaryLattice) -> Result<GenusSymbol> {
    classify_primes(l.gram(), l.det())
}

/// Cheap isometry invariant: minima and the multiset of values Q(x) on L_{μ3}.
pub fn fingerprint(l: &TernaryLattice) -> Result<(Vec<usize>, Vec<(u64, u64)>)> {
    let mu = l.require_reduced()?;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for x in short_vectors(l, mu[2])? {
        let v = l.q_value(&x);
        if !v.is_zero() {
            *counts.entry(v.to_index()).or_default() += 1;
        }
    }
    Ok((mu.to_vec(), counts.into_iter().collect()))
}

type Fingerprint = (Vec<usize>, Vec<(u64, u64)>);

/// Isometry-deduplicating store of class representatives.
struct ClassStore {
    reps: Vec<TernaryLattice>,
    so: Vec<usize>,
    by_print: HashMap<Fingerprint, Vec<usize>>,
}

impl ClassStore {
    fn new() -> Self {
        Self { reps: Vec::new(), so: Vec::new(), by_print: HashMap::new() }
    }

    /// Inserts l (reduced) unless isometric to a stored class; returns the
    /// new index when inserted.
    fn insert(&mut self, l: TernaryLattice) -> Result<Option<usize>> {
        let fp = fingerprint(&l)?;
        if let Some(ids) = self.by_print.get(&fp) {
            for &i in ids {
                if isometry(&self.reps[i], &l)?.is_some() {
                    return Ok(None);
                }
            }
        }
        let n = automorphisms(&l)?.so_order;
        let i = self.reps.len();
        self.reps.push(l);
        self.so.push(n);
        self.by_print.entry(fp).or_default().push(i);
        Ok(Some(i))
    }

    fn mass(&self) -> Rational {
        self.so.iter().map(|&n| Rational::new(1.into(), (n as i64).into())).sum()
    }

    fn into_list(self, genus_symbol: GenusSymbol) -> ClassList {
        ClassList { representatives: self.reps, so_orders: self.so, genus_symbol }
    }
}

/// Polynomials of degree exactly k with leading coefficient 1 or ε.
fn normalized_of_degree(q: u32, k: usize) -> Vec<Poly> {
    let eps = smallest_nonsquare(q);
    let low = count_upto(q, k as i64 - 1);
    let mut out = Vec::new();
    for lc in [1, eps] {
        for i in 0..low {
            let mut c = Poly::from_index(q, i).coeffs().to_vec();
            c.resize(k + 1, 0);
            c[k] = lc;
            out.push(Poly::from_i64(q, &c.iter().map(|&x| x as i64).collect::<Vec<_>>()));
        }
    }
    out
}

fn upto(q: u32, b: i64) -> Vec<Poly> {
    (0..count_upto(q, b)).map(|i| Poly::from_index(q, i)).collect()
}

/// Sorted minima triples summing to δ.
fn minima_triples(delta: usize) -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..=delta / 3 {
        for b in a..=(delta - a) / 2 {
            v.push([a, b, delta - a - b]);
        }
    }
    v
}

/// Candidate ranges for a minima triple. Every reduced lattice has a reduced
/// basis with diagonal leading coefficients in {1, ε} (scaling), deg g12,
/// deg g13 < μ1 (subtracting multiples of e1), and, when μ1 = 0 (so g12 =
/// g13 = 0), deg g23 < μ2.
fn candidate_ranges(q: u32, mu: [usize; 3]) -> [Vec<Poly>; 6] {
    let g23_bound = if mu[0] == 0 { mu[1] as i64 - 1 } else { ((mu[1] + mu[2]) / 2) as i64 };
    [
        normalized_of_degree(q, mu[0]),
        normalized_of_degree(q, mu[1]),
        normalized_of_degree(q, mu[2]),
        upto(q, mu[0] as i64 - 1),
        upto(q, mu[0] as i64 - 1),
        upto(q, g23_bound),
    ]
}

/// Number of Gram candidates the exhaustive search would scan.
pub fn exhaustive_candidate_count(q: u32, delta: usize) -> u64 {
    minima_triples(delta)
        .into_iter()
        .map(|mu| candidate_ranges(q, mu).iter().map(|r| r.len() as u64).product::<u64>())
        .sum()
}

/// Visits every reduced definite Gram candidate with det ≡ D mod unit squares.
fn for_each_candidate(d: &Poly, max_candidates: u64, mut f: impl FnMut(TernaryLattice) -> Result<()>) -> Result<()> {
    check_det(d)?;
    let q = d.modulus();
    let delta = d.degree().unwrap();
    let n = exhaustive_candidate_count(q, delta);
    if n > max_candidates {
        return Err(Error::BoundExceeded(format!(
            "exhaustive search over {n} Gram candidates exceeds the cap {max_candidates}"
        )));
    }
    let target = det_class(d);
    for mu in minima_triples(delta) {
        let [r11, r22, r33, r12, r13, r23] = candidate_ranges(q, mu);
        for g11 in &r11 {
            for g22 in &r22 {
                for g12 in &r12 {
                    let m12 = &(g11 * g22) - &(g12 * g12);
                    for g33 in &r33 {
                        for g13 in &r13 {
                            for g23 in &r23 {
                                // cofactor expansion along the last column
                                let c13 = &(g12 * g23) - &(g22 * g13);
                                let c23 = &(g11 * g23) - &(g12 * g13);
                                let det = &(&(g33 * &m12) + &(g13 * &c13)) - &(g23 * &c23);
                                if det.degree() != Some(delta) || det_class(&det) != target {
                                    continue;
                                }
                                let g = Mat3::from_fn(|i, j| {
                                    let e = [[g11, g12, g13], [g12, g22, g23], [g13, g23, g33]];
                                    e[i][j].clone()
                                });
                                if !is_reduced_gram(&g) {
                                    continue;
                                }
                                f(TernaryLattice::with_minima(g, det, mu))?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// All genera of determinant D, each with its complete class list, found by
/// exhaustive search over reduced Gram matrices.
pub fn exhaustive_genera(q: u32, d: &Poly) -> Result<Vec<ClassList>> {
    exhaustive_genera_bounded(q, d, EXHAUSTIVE_MAX_CANDIDATES)
}

pub fn exhaustive_genera_bounded(q: u32, d: &Poly, max_candidates: u64) -> Result<Vec<ClassList>> {
    if d.modulus() != q {
        return Err(Error::ModulusMismatch(d.modulus(), q));
    }
    let mut stores: Vec<(GenusSymbol, ClassStore)> = Vec::new();
    for_each_candidate(d, max_candidates, |l| {
        let sym = classify_primes(l.gram(), d)?;
        let pos = match stores.iter().position(|(s, _)| *s == sym) {
            Some(p) => p,
            None => {
                stores.push((sym, ClassStore::new()));
                stores.len() - 1
            }
        };
        stores[pos].1.insert(l)?;
        Ok(())
    })?;
    let mut out: Vec<ClassList> = stores.into_iter().map(|(s, st)| st.into_list(s)).collect();
    out.sort_by(|a, b| a.genus_symbol.d1.cmp_canonical(&b.genus_symbol.d1));
    Ok(out)
}

/// The complete class list of one genus by exhaustive search. With no target,
/// the genus of `seed_lattice(q, D)` is used.
pub fn exhaustive_classes(q: u32, d: &Poly, target: Option<&GenusSymbol>) -> Result<ClassList> {
    let target = match target {
        Some(t) => t.clone(),
        None => genus_symbol(&seed_lattice(q, d)?)?,
    };
    exhaustive_genera(q, d)?
        .into_iter()
        .find(|c| c.genus_symbol == target)
        .ok_or_else(|| Error::NotFound("no lattice in the requested genus".into()))
}

/// One definite lattice of determinant D (up to a square unit): the diagonal
/// ⟨1, -ε, -εD⟩ when D is irreducible of odd degree, otherwise the first
/// reduced candidate found by the exhaustive scan.
pub fn seed_lattice(q: u32, d: &Poly) -> Result<TernaryLattice> {
    if d.modulus() != q {
        return Err(Error::ModulusMismatch(d.modulus(), q));
    }
    check_det(d)?;
    let delta = d.degree().unwrap();
    if delta % 2 == 1 && is_irreducible(d)? {
        let eps = smallest_nonsquare(q);
        let me = (q - eps) as i64;
        let l = TernaryLattice::diagonal([Poly::one(q), Poly::constant(q, me), d.scale(me as u32)])?;
        return Ok(reduce(&l)?.0);
    }
    let mut found = None;
    let r = for_each_candidate(d, EXHAUSTIVE_MAX_CANDIDATES, |l| {
        found = Some(l);
        Err(Error::NotFound(String::new()))
    });
    match (found, r) {
        (Some(l), _) => Ok(l),
        (None, Err(e)) => Err(e),
        (None, Ok(())) => Err(Error::NotFound(format!(
            "no definite lattice of determinant {d} among {} reduced candidates",
            exhaustive_candidate_count(q, delta)
        ))),
    }
}

fn require_neighbor_prime(l: &TernaryLattice, p: &Poly) -> Result<()> {
    if p.modulus() != l.q() {
        return Err(Error::ModulusMismatch(p.modulus(), l.q()));
    }
    if !p.is_monic() || !is_irreducible(p)? {
        return Err(Error::Precondition(format!("{p} is not a monic irreducible")));
    }
    if p.divides(l.det()) {
        return Err(Error::Precondition(format!("{p} divides the determinant")));
    }
    Ok(())
}

fn rem_vec(x: &Vector, p: &Poly) -> Result<Vector> {
    Ok([x[0].rem(p)?, x[1].rem(p)?, x[2].rem(p)?])
}

/// The p-neighbor L' = L_x + A·x/p, where L_x = {y : B(x, y) ≡ 0 mod p} and x
/// is first adjusted modulo pL so that Q(x) ≡ 0 mod p². Returned reduced.
pub fn neighbor(l: &TernaryLattice, p: &Poly, x: &Vector) -> Result<TernaryLattice> {
    require_neighbor_prime(l, p)?;
    let q = l.q();
    if rem_vec(x, p)?.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("x lies in pL".into()));
    }
    if !p.divides(&l.q_value(x)) {
        return Err(Error::Precondition(format!("Q(x) is not divisible by {p}")));
    }
    let g = l.gram();
    let mut x = x.clone();
    let b = g.mul_vec(&x);
    let i0 = (0..3).find(|&i| !p.divides(&b[i])).ok_or(Error::Singular)?;
    let bi0_inv = b[i0].inv_mod(p)?.ok_or(Error::Singular)?;
    let p2 = p * p;
    let qx = l.q_value(&x);
    if !p2.divides(&qx) {
        // Q(x + p c e_i0) ≡ Q(x) + 2 p c b_i0 (mod p²)
        let two_inv = Poly::constant(q, ((q + 1) / 2) as i64);
        let c = (&(&-&qx.div_exact(p).unwrap() * &bi0_inv) * &two_inv).rem(p)?;
        x[i0] = &x[i0] + &(p * &c);
        debug_assert!(p2.divides(&l.q_value(&x)));
    }
    // Rows spanning p·L'.
    let mut rows: Vec<[Poly; 3]> = Vec::new();
    let zero = Poly::zero(q);
    let mut r0: [Poly; 3] = std::array::from_fn(|_| zero.clone());
    r0[i0] = p2.clone();
    rows.push(r0);
    for j in (0..3).filter(|&j| j != i0) {
        let cj = (&b[j] * &bi0_inv).rem(p)?;
        let mut r: [Poly; 3] = std::array::from_fn(|_| zero.clone());
        r[j] = p.clone();
        r[i0] = -&(p * &cj);
        rows.push(r);
    }
    rows.push(x.clone());
    let h = hermite_rows(&rows)?;
    let basis = Mat3::from_columns(&h);
    let big = g.congruence(&basis);
    let mut e: Vec<Poly> = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            e.push(big.e[i][j].div_exact(&p2).ok_or_else(|| Error::Invariant("neighbor Gram is not integral".into()))?);
        }
    }
    let gn = Mat3::from_fn(|i, j| e[3 * i + j].clone());
    let ln = TernaryLattice::new(gn)?;
    if det_class(ln.det()) != det_class(l.det()) {
        return Err(Error::Invariant(format!("neighbor changed the determinant: {} vs {}", ln.det(), l.det())));
    }
    let (red, _) = reduce(&ln)?;
    if genus_symbol(&red)? != genus_symbol(l)? {
        return Err(Error::Invariant("neighbor left the genus".into()));
    }
    Ok(red)
}

/// All p-neighbors of L, one per isotropic line of L/pL.
pub fn neighbors_at(l: &TernaryLattice, p: &Poly) -> Result<Vec<TernaryLattice>> {
    require_neighbor_prime(l, p)?;
    let q = l.q();
    let n = count_upto(q, p.degree().unwrap() as i64 - 1);
    let res: Vec<Poly> = (0..n).map(|i| Poly::from_index(q, i)).collect();
    let mut out = Vec::new();
    for lead in 0..3 {
        let free = 2 - lead;
        let total = n.pow(free as u32);
        for idx in 0..total {
            let mut x: [Poly; 3] = std::array::from_fn(|_| Poly::zero(q));
            x[lead] = Poly::one(q);
            let mut r = idx;
            for c in x.iter_mut().skip(lead + 1) {
                *c = res[(r % n) as usize].clone();
                r /= n;
            }
            if p.divides(&l.q_value(&x)) {
                out.push(neighbor(l, p, &x)?);
            }
        }
    }
    Ok(out)
}

/// Degree-1 and degree-2 monic primes not dividing D (at most `count`).
pub fn default_neighbor_primes(d: &Poly, count: usize) -> Vec<Poly> {
    let q = d.modulus();
    irreducibles(q, 1)
        .iter()
        .chain(irreducibles(q, 2).iter())
        .filter(|p| !p.divides(d))
        .take(count)
        .cloned()
        .collect()
}

/// Breadth-first neighbor search from `seed`, deduplicated up to isometry,
/// stopping once the accumulated mass reaches the mass formula. An empty
/// `primes` list selects `default_neighbor_primes(D, 4)`.
pub fn neighbor_closure(seed: &TernaryLattice, primes: &[Poly]) -> Result<ClassList> {
    let (seed, _) = reduce(seed)?;
    check_det(seed.det())?;
    let sym = genus_symbol(&seed)?;
    let expected = mass_formula(seed.det(), &sym.d0, &sym.d1)?;
    let primes: Vec<Poly> = if primes.is_empty() { default_neighbor_primes(seed.det(), 4) } else { primes.to_vec() };
    if primes.is_empty() {
        return Err(Error::Precondition("no neighbor primes available".into()));
    }
    let mut store = ClassStore::new();
    let mut queue = VecDeque::new();
    queue.push_back(store.insert(seed)?.unwrap());
    'bfs: while let Some(i) = queue.pop_front() {
        if store.mass() == expected {
            break;
        }
        for p in &primes {
            for nb in neighbors_at(&store.reps[i].clone(), p)? {
                if let Some(j) = store.insert(nb)? {
                    queue.push_back(j);
                    if store.mass() >= expected {
                        break 'bfs;
                    }
                }
            }
        }
    }
    let m = store.mass();
    if m != expected {
        return Err(Error::Invariant(format!(
            "neighbor closure reached mass {} but the mass formula gives {}",
            fmt_rational(&m),
            fmt_rational(&expected)
        )));
    }
    Ok(store.into_list(sym))
}

/// Σ_i R(L_i, a)/|SO(L_i)| over the classes, with R counting primitive
/// representations.
pub fn siegel_lhs(classes: &ClassList, a: &Poly) -> Result<Rational> {
    let d = classes.genus_symbol.det.clone();
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !a.gcd(&d)?.is_one() {
        return Err(Error::Precondition(format!("gcd({a}, D) != 1")));
    }
    let mut s = Rational::zero();
    for (l, &n) in classes.representatives.iter().zip(&classes.so_orders) {
        let r = primitive_representations(l, a)?.len() as i64;
        s += Rational::new(r.into(), (n as i64).into());
    }
    Ok(s)
}

/// (h_dec, h_ind) for D irreducible of odd degree.
pub fn classify_decomposable(classes: &ClassList) -> Result<(usize, usize)> {
    let d = &classes.genus_symbol.det;
    if d.degree().unwrap_or(0) % 2 == 0 || !is_irreducible(d)? {
        return Err(Error::Precondition("decomposability split needs D irreducible of odd degree".into()));
    }
    let mut dec = 0;
    for l in &classes.representatives {
        if is_decomposable(l)? {
            dec += 1;
        }
    }
    Ok((dec, classes.h() - dec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, c: &[i64]) -> Poly {
        Poly::from_i64(q, c)
    }

    #[test]
    fn seed_template() {
        let s = seed_lattice(3, &p(3, &[0, 1])).unwrap();
        assert_eq!(s.gram(), &Mat3::diag([p(3, &[1]), p(3, &[1]), p(3, &[0, 1])]));
    }

    #[test]
    fn class_number_one_at_t() {
        let c = exhaustive_classes(3, &p(3, &[0, 1]), None).unwrap();
        assert_eq!(c.h(), 1);
        assert_eq!(c.so_orders, vec![8]);
        assert_eq!(c.mass(), Rational::new(1.into(), 8.into()));
    }

    #[test]
    fn neighbors_stay_in_class() {
        let s = seed_lattice(3, &p(3, &[0, 1])).unwrap();
        for pr in default_neighbor_primes(s.det(), 3) {
            for nb in neighbors_at(&s, &pr).unwrap() {
                assert_eq!(nb.det(), s.det());
                assert!(isometry(&s, &nb).unwrap().is_some());
            }
        }
    }

    #[test]
    fn neighbor_rejects_bad_input() {
        let s = seed_lattice(3, &p(3, &[0, 1])).unwrap();
        let one = Poly::one(3);
        let z = Poly::zero(3);
        let t1 = p(3, &[1, 1]);
        // Q(1,0,0) = 1 is not divisible by t+1
        assert!(neighbor(&s, &t1, &[one.clone(), z.clone(), z.clone()]).is_err());
        // t divides D
        assert!(neighbor(&s, &p(3, &[0, 1]), &[z.clone(), z.clone(), one]).is_err());
    }

    #[test]
    fn closure_matches_exhaustive_small() {
        let d = p(3, &[0, 1]);
        let s = seed_lattice(3, &d).unwrap();
        let c = neighbor_closure(&s, &[]).unwrap();
        assert!(c.same_classes(&exhaustive_classes(3, &d, None).unwrap()).unwrap());
    }
}
