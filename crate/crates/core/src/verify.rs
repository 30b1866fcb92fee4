//! Acceptance checks. Each criterion runs its two independent routes and
//! reports PASS/FAIL with a one-line detail.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{even_clifford, primitive_sqrt_search, SqrtSearch};
use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_all, factor, irreducibles, is_squarefree, monic_divisors, Poly};
use crate::formulas::{
    beta_limit, exact_class_numbers, m_zeta_series, mass_formula, mass_formula_forms, mass_irreducible,
    normalized_l_average_limit, twist_constant,
};
use crate::genus::{
    classify_decomposable, exhaustive_classes, exhaustive_genera, genus_symbol, neighbor_closure, seed_lattice,
    siegel_lhs, ClassList,
};
use crate::lattice::{
    automorphisms, orbit_sizes, primitive_representations, representation_count, shell_counts, shell_counts_direct,
    TernaryLattice, Twist,
};
use crate::localsym::representability_conditions;
use crate::upoly::{fmt_rational, int, rpow, to_f64, Rational};
use crate::zeta_l::{
    class_number, class_number_odd_degree_relation, integer_coefficients, l_polynomial_fast, m_d, picard_oracle,
    psi_count_direct, psi_series, sum_l_split, sum_l_values, within_rh_bound,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Fast,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:02} {} ({:.1} s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "mass-irreducible"),
    (2, "mass-composite"),
    (3, "siegel-representation"),
    (4, "exact-class-numbers"),
    (5, "epstein-coefficients"),
    (6, "twisted-zeta"),
    (7, "beta-limit"),
    (8, "psi-generating-identity"),
    (9, "finite-l-identity"),
    (10, "l-average-limit"),
    (11, "class-number-relation"),
    (12, "clifford-invariants"),
    (13, "stabilizer-orbits"),
];

/// Criteria that fail for a documented reason; see the decision ledger.
/// Criterion 6: the twisted tails agree with the constant multiple of α_k
/// only from k = δ+2 on, while the criterion asks for k > δ.
pub const KNOWN_GAPS: [u8; 1] = [6];

pub fn run_suite(suite: Suite, seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, suite, seed)).collect()
}

pub fn run_criterion(id: u8, suite: Suite, seed: u64) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    let t0 = Instant::now();
    let fast = suite == Suite::Fast;
    let out = match id {
        1 => mass_irreducible_check(fast),
        2 => mass_composite_check(),
        3 => siegel_check(fast),
        4 => exact_class_number_check(fast),
        5 => epstein_check(fast),
        6 => twisted_check(fast),
        7 => beta_check(fast),
        8 => psi_check(fast),
        9 => finite_l_check(),
        10 => l_average_check(fast),
        11 => class_relation_check(fast),
        12 => clifford_check(fast, seed),
        13 => orbit_check(fast),
        _ => Err(Error::Precondition(format!("no acceptance criterion {id}"))),
    };
    let (pass, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, pass, detail, seconds: t0.elapsed().as_secs_f64() }
}

type Check = Result<(bool, String)>;

fn p(q: u32, c: &[i64]) -> Poly {
    Poly::from_i64(q, c)
}

fn big(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn within(t0: Instant, limit: Duration) -> bool {
    t0.elapsed() < limit
}

// Genus lists are shared between criteria, keyed by (q, D).
fn genera_cache() -> &'static Mutex<HashMap<(u32, String), Vec<ClassList>>> {
    static C: OnceLock<Mutex<HashMap<(u32, String), Vec<ClassList>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn genera(q: u32, d: &Poly) -> Result<Vec<ClassList>> {
    let key = (q, d.to_string());
    if let Some(v) = genera_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = exhaustive_genera(q, d)?;
    genera_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Corpus of reduced class representatives, with their D.
fn corpus(fast: bool) -> Result<Vec<(Poly, TernaryLattice)>> {
    let mut ds = vec![p(3, &[0, 1]), p(3, &[0, 1, 1]), p(5, &[0, 1])];
    if !fast {
        ds.push(p(3, &[2, 2, 0, 1]));
        ds.push(p(3, &[0, 1, 0, 1]));
    }
    let mut out = Vec::new();
    for d in ds {
        for g in genera(d.modulus(), &d)? {
            for l in g.representatives {
                out.push((d.clone(), l));
            }
        }
    }
    Ok(out)
}

fn mass_irreducible_check(fast: bool) -> Check {
    let mut cases = vec![(3u32, p(3, &[0, 1]), (1, 8), None, 10u64), (5, p(5, &[0, 1]), (1, 12), None, 600)];
    if !fast {
        cases.push((3, p(3, &[2, 2, 0, 1]), (13, 8), Some(4usize), 600));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, d, (n, den), h_want, limit) in cases {
        let t0 = Instant::now();
        let cl = exhaustive_classes(q, &d, None)?;
        let secs = t0.elapsed();
        let want = Rational::new(n.into(), den.into());
        let formula = mass_formula(&d, &Poly::one(q), &d)?;
        let good = cl.mass() == want
            && mass_irreducible(q, d.degree().unwrap()) == want
            && formula == want
            && h_want.map_or(true, |h| cl.h() == h)
            && secs < Duration::from_secs(limit);
        ok &= good;
        parts.push(format!(
            "q={q} D={d}: h={} mass={} formula={} {:.1}s",
            cl.h(),
            fmt_rational(&cl.mass()),
            fmt_rational(&formula),
            secs.as_secs_f64()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn mass_composite_check() -> Check {
    let t0 = Instant::now();
    let q = 3;
    let d = p(q, &[0, 1, 1]);
    let gs = genera(q, &d)?;
    let mut ok = gs.len() == 2;
    let mut parts = vec![format!("{} genera", gs.len())];
    for g in &gs {
        let sym = &g.genus_symbol;
        let (stated, derived) = mass_formula_forms(&d, &sym.d0, &sym.d1)?;
        let closure = neighbor_closure(&g.representatives[0], &[])?;
        let good = closure.mass() == stated && stated == derived && g.mass() == stated && closure.same_classes(g)?;
        ok &= good;
        parts.push(format!(
            "D1={}: closure h={} mass={} formula={} derivation={} exhaustive={}",
            sym.d1,
            closure.h(),
            fmt_rational(&closure.mass()),
            fmt_rational(&stated),
            fmt_rational(&derived),
            fmt_rational(&g.mass())
        ));
    }
    ok &= within(t0, Duration::from_secs(600));
    Ok((ok, parts.join("; ")))
}

/// Admissible a for D: coprime to D and represented by the genus, a few of
/// each degree up to max_deg.
fn admissible(d: &Poly, max_deg: usize, per_degree: usize) -> Result<Vec<Poly>> {
    let q = d.modulus();
    let mut out = Vec::new();
    for k in 0..=max_deg {
        let mut taken = 0;
        for a in enumerate_all(q, k) {
            if taken == per_degree {
                break;
            }
            if a.gcd(d)?.is_one() && representability_conditions(d, &a)?.representable {
                out.push(a);
                taken += 1;
            }
        }
    }
    Ok(out)
}

fn siegel_check(fast: bool) -> Check {
    let q = 3;
    let d = p(q, &[0, 1]);
    let r = factor(&d)?.factors.len() as i64;
    let classes = exhaustive_classes(q, &d, None)?;
    let a_list = admissible(&d, if fast { 2 } else { 3 }, 2)?;
    let mut ok = a_list.len() >= 5
        && a_list.iter().any(|a| a.degree() == Some(0))
        && (fast || a_list.iter().any(|a| a.degree().unwrap() >= 3));
    let mut parts = Vec::new();
    for a in &a_list {
        let t0 = Instant::now();
        let lhs = siegel_lhs(&classes, a)?;
        let m = -&(a * &d);
        let h = class_number(&m)?;
        let h_oracle = picard_oracle(&m)?;
        let rhs = big(h) / rpow(&int(2), r);
        let good = lhs == rhs && h == h_oracle && within(t0, Duration::from_secs(300));
        ok &= good;
        parts.push(format!("a={a}: {}={} h={h}/{h_oracle}", fmt_rational(&lhs), fmt_rational(&rhs)));
    }
    Ok((ok, parts.join("; ")))
}

fn exact_class_number_check(fast: bool) -> Check {
    let mut cases = vec![
        (p(3, &[0, 1]), false),
        (irreducibles(3, 3)[0].clone(), false),
        (p(3, &[2, 2, 0, 1]), false),
        (p(5, &[0, 1]), false),
    ];
    if !fast {
        cases.push((irreducibles(5, 3)[0].clone(), false));
        cases.push((irreducibles(3, 5)[0].clone(), true));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, by_closure) in cases {
        let q = d.modulus();
        let exact = exact_class_numbers(&d)?;
        let cl = if by_closure {
            neighbor_closure(&seed_lattice(q, &d)?, &[])?
        } else {
            exhaustive_classes(q, &d, None)?
        };
        let (dec, ind) = classify_decomposable(&cl)?;
        let good = exact.h as usize == cl.h() && exact.h_dec as usize == dec && exact.h_ind as usize == ind;
        ok &= good;
        parts.push(format!(
            "q={q} D={d}: formula ({},{},{}) enumerated ({},{},{})",
            exact.h,
            exact.h_dec,
            exact.h_ind,
            cl.h(),
            dec,
            ind
        ));
    }
    Ok((ok, parts.join("; ")))
}

/// Closed form for α_k, k > δ.
pub fn alpha_closed_form(q: u32, delta: usize, k: usize) -> Rational {
    let qq = int(q as i64);
    if (k + delta) % 2 == 0 {
        (int(1) - qq.recip()) * rpow(&qq, ((3 * k + 4 - delta) / 2) as i64)
    } else {
        (int(1) - rpow(&qq, -2)) * rpow(&qq, ((3 * k + 5 - delta) / 2) as i64)
    }
}

fn epstein_kmax(l: &TernaryLattice, fast: bool) -> usize {
    let extra = if fast || l.q() > 3 { 4 } else { 6 };
    l.delta() + extra
}

fn epstein_check(fast: bool) -> Check {
    let mut ok = true;
    let mut n = 0;
    let mut bad = Vec::new();
    for (d, l) in corpus(fast)? {
        // q = 5 is run to δ+6 only for D = t
        let kmax = if l.q() == 5 && l.delta() == 1 && !fast { l.delta() + 6 } else { epstein_kmax(&l, fast) };
        let s = shell_counts(&l, kmax)?;
        let direct = shell_counts_direct(&l, (l.delta() + 2).min(kmax))?;
        for k in 0..=direct.kmax() {
            if direct.alpha(k) != s.alpha(k) {
                ok = false;
                bad.push(format!("D={d} k={k}: fast {} direct {}", s.alpha(k), direct.alpha(k)));
            }
        }
        for k in l.delta() + 1..=kmax {
            n += 1;
            if big(s.alpha(k)) != alpha_closed_form(l.q(), l.delta(), k) {
                ok = false;
                bad.push(format!("D={d} minima={:?} k={k}", l.minima().unwrap()));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{n} coefficients match the closed form") } else { bad.join("; ") };
    Ok((ok, detail))
}

fn twisted_check(fast: bool) -> Check {
    let mut identity_ok = true;
    let mut tail_ok = true;
    let mut late_ok = true;
    let mut first_bad: Vec<String> = Vec::new();
    let mut lattices = 0;
    for (d, l) in corpus(fast)? {
        lattices += 1;
        let delta = l.delta();
        let kmax = epstein_kmax(&l, fast);
        let s = shell_counts(&l, kmax)?;
        let psi = s.coefficients(&Twist::Psi)?;
        let phipsi = s.coefficients(&Twist::PhiPsi)?;
        let series = m_zeta_series(&d, kmax)?;
        for k in 0..=kmax {
            let rhs: Rational = (0..=k).map(|j| series.coeff(j) * big(phipsi[k - j])).sum();
            if rhs != big(psi[k]) {
                identity_ok = false;
                first_bad.push(format!("identity D={d} k={k}"));
            }
        }
        let sym = genus_symbol(&l)?;
        let norm = |x: &Poly| rpow(&int(l.q() as i64), x.degree().unwrap() as i64);
        let mut twists = Vec::new();
        for e in monic_divisors(&d)? {
            if e.is_one() {
                continue;
            }
            let e1 = e.gcd(&sym.d1)?;
            let e0 = e.div_exact(&e1).unwrap();
            let c = int(2) / norm(&e0) / norm(&e1) / norm(&e1) - (norm(&e) * norm(&e)).recip();
            twists.push((format!("chi_{e}"), Twist::ChiD(e), c));
        }
        twists.push(("psi".to_string(), Twist::Psi, twist_constant(&d, &sym.d0, &sym.d1)?));
        for (label, tw, c) in twists {
            let coeffs = s.coefficients(&tw)?;
            let bad: Vec<usize> =
                (delta + 1..=kmax).filter(|&k| big(coeffs[k]) != &c * big(s.alpha(k))).collect();
            if !bad.is_empty() {
                tail_ok = false;
                if bad.iter().any(|&k| k >= delta + 2) {
                    late_ok = false;
                }
                first_bad.push(format!("{label} D={d} δ={delta} minima={:?} k={bad:?}", l.minima().unwrap()));
            }
        }
    }
    let mut detail = format!(
        "{lattices} lattices; exact ψ identity {}; ∼ tails from k>δ {}; tails from k≥δ+2 {}",
        if identity_ok { "holds" } else { "fails" },
        if tail_ok { "hold" } else { "fail" },
        if late_ok { "hold" } else { "fail" }
    );
    if !first_bad.is_empty() {
        first_bad.truncate(4);
        detail += &format!(" [{}]", first_bad.join("; "));
    }
    Ok((identity_ok && tail_ok, detail))
}

/// Relative deviations of β_{δ+2m+1}/q^{3m} from the odd limit, m = 0..=mmax.
pub fn beta_deviations(l: &TernaryLattice, mmax: usize) -> Result<Vec<(Rational, f64)>> {
    let d = l.det().monic();
    let sym = genus_symbol(l)?;
    let lim = beta_limit(&d, &sym.d0, &sym.d1)?.odd;
    let delta = l.delta();
    let s = shell_counts(l, delta + 2 * mmax + 1)?;
    let q = int(l.q() as i64);
    Ok((0..=mmax)
        .map(|m| {
            let r = big(s.beta(delta + 2 * m + 1)) / rpow(&q, 3 * m as i64);
            let dev = to_f64(&((&r - &lim) / &lim).abs());
            (r, dev)
        })
        .collect())
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn beta_check(fast: bool) -> Check {
    let t0 = Instant::now();
    let l = seed_lattice(3, &p(3, &[0, 1]))?;
    let mmax = if fast { 3 } else { 4 };
    let devs = beta_deviations(&l, mmax)?;
    let d: Vec<f64> = devs.iter().map(|x| x.1).collect();
    let last = *d.last().unwrap();
    let ok = strictly_decreasing(&d) && (fast || last < 0.05) && within(t0, Duration::from_secs(600));
    let lim = beta_limit(&p(3, &[0, 1]), &Poly::one(3), &p(3, &[0, 1]))?.odd;
    Ok((ok, format!("limit {} deviations {:?}", fmt_rational(&lim), d.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>())))
}

fn psi_check(fast: bool) -> Check {
    let n = if fast { 6 } else { 8 };
    let mut checked = 0;
    for q in [3u32, 5] {
        for d in [p(q, &[0, 1]), p(q, &[0, 1, 1])] {
            let s = psi_series(&d, n)?;
            for k in 0..=n {
                for l in 0..=n - k {
                    let direct = psi_count_direct(&d, k, l)?;
                    checked += 1;
                    if s[k][l] != direct as i128 {
                        return Ok((false, format!("q={q} D={d} k={k} l={l}: series {} direct {direct}", s[k][l])));
                    }
                }
            }
        }
    }
    Ok((true, format!("{checked} coefficients, k+l <= {n}")))
}

fn finite_l_check() -> Check {
    let d = p(3, &[0, 1]);
    let mut parts = Vec::new();
    let mut ok = true;
    for l in 2..=4 {
        let a = sum_l_values(&d, l)?;
        let b = sum_l_split(&d, l)?;
        ok &= a == b;
        parts.push(format!("l={l}: {} vs {}", fmt_rational(&a), fmt_rational(&b)));
    }
    Ok((ok, parts.join("; ")))
}

/// Σ•_{deg m = l} L(1, χ_{Dm}) / ((q-1) q^l M_D(1)).
pub fn normalized_l_average(d: &Poly, l: usize) -> Result<Rational> {
    let q = int(d.modulus() as i64);
    Ok(sum_l_values(d, l)? / ((&q - int(1)) * rpow(&q, l as i64) * m_d(d, 1)?))
}

/// Checks the coefficient bound |c_k| <= binom(n,k) q^{k/2} for L*(u, χ_{Dm})
/// over every m of degree l coprime to D; returns the number of m checked.
pub fn rh_bound_holds(d: &Poly, l: usize) -> Result<(bool, usize)> {
    let mut n = 0;
    for m in enumerate_all(d.modulus(), l) {
        if !m.gcd(d)?.is_one() {
            continue;
        }
        n += 1;
        let lp = l_polynomial_fast(&(d * &m))?;
        let c = integer_coefficients(&lp);
        let deg = c.len().saturating_sub(1);
        if !c.iter().enumerate().all(|(k, ck)| within_rh_bound(ck, deg, k, d.modulus())) {
            return Ok((false, n));
        }
    }
    Ok((true, n))
}

fn l_average_check(fast: bool) -> Check {
    let d = p(3, &[0, 1]);
    let lim = normalized_l_average_limit(&d)?;
    let ls: Vec<usize> = if fast { vec![2, 4, 6] } else { vec![2, 4, 6, 8] };
    let mut devs = Vec::new();
    let mut rh = true;
    let mut ms = 0;
    for &l in &ls {
        let avg = normalized_l_average(&d, l)?;
        devs.push(to_f64(&((&avg - &lim) / &lim).abs()));
        let (ok, n) = rh_bound_holds(&d, l)?;
        rh &= ok;
        ms += n;
    }
    let last = *devs.last().unwrap();
    let ok = strictly_decreasing(&devs) && (fast || last < 0.10) && rh;
    Ok((
        ok,
        format!(
            "limit {} deviations {:?}; bound {} on {ms} m",
            fmt_rational(&lim),
            devs.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>(),
            if rh { "holds" } else { "fails" }
        ),
    ))
}

fn class_relation_check(fast: bool) -> Check {
    let mut cases: Vec<(Poly, Vec<usize>)> = vec![(p(3, &[0, 1]), vec![0, 2]), (p(5, &[0, 1]), vec![0, 2])];
    if !fast {
        cases[0].1.push(4);
    }
    let mut n = 0;
    for (d, degs) in cases {
        for k in degs {
            for m in enumerate_all(d.modulus(), k) {
                let md = &m * &d;
                if !is_squarefree(&md)? {
                    continue;
                }
                let rel = class_number_odd_degree_relation(&md)?;
                let h = class_number(&md)?;
                let oracle = picard_oracle(&md)?;
                n += 1;
                if !rel.is_integer() || rel != big(h) || h != oracle {
                    return Ok((false, format!("mD={md}: relation {} h {h} oracle {oracle}", fmt_rational(&rel))));
                }
            }
        }
    }
    Ok((true, format!("{n} square-free odd-degree mD agree")))
}

fn random_lattice(q: u32, rng: &mut ChaCha8Rng) -> TernaryLattice {
    loop {
        let e: Vec<Poly> = (0..6)
            .map(|_| {
                let deg = rng.gen_range(0..3);
                let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..q as i64)).collect();
                Poly::from_i64(q, &c)
            })
            .collect();
        if let Ok(l) = TernaryLattice::from_entries([&e[0], &e[1], &e[2], &e[3], &e[4], &e[5]]) {
            return l;
        }
    }
}

fn clifford_check(fast: bool, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = if fast { 30 } else { 100 };
    for i in 0..trials {
        let q = if i % 2 == 0 { 3 } else { 5 };
        let l = random_lattice(q, &mut rng);
        let o = even_clifford(&l)?;
        if o.norm_det() != l.det() * l.det() || !o.is_associative() {
            return Ok((false, format!("det/associativity fails on {}", l.to_json())));
        }
    }
    let pairs_wanted = if fast { 8 } else { 20 };
    let mut pairs = Vec::new();
    'outer: for d in [p(3, &[0, 1]), p(3, &[0, 1, 1]), p(3, &[2, 2, 0, 1])] {
        for g in genera(3, &d)? {
            for l in &g.representatives {
                for a in admissible_any(&d, 2)? {
                    pairs.push((l.clone(), a));
                }
            }
        }
        if pairs.len() >= 4 * pairs_wanted {
            break 'outer;
        }
    }
    // spread the chosen pairs over the list
    let step = (pairs.len() / pairs_wanted).max(1);
    let chosen: Vec<_> = pairs.into_iter().step_by(step).take(pairs_wanted).collect();
    let (mut found, mut absent) = (0, 0);
    for (l, a) in &chosen {
        let o = even_clifford(l)?;
        let r = representation_count(l, a, true)?;
        let target = -&(a * l.det());
        match primitive_sqrt_search(&o, &target, 64)? {
            SqrtSearch::Found(_) if r > 0 => found += 1,
            SqrtSearch::Absent if r == 0 => absent += 1,
            other => {
                return Ok((false, format!("L={} a={a}: R={r} search {:?}", l.to_json(), other)));
            }
        }
    }
    Ok((
        chosen.len() == pairs_wanted,
        format!("det(C0)=det(L)^2 on {trials} lattices; {} pairs ({found} represented, {absent} not)", chosen.len()),
    ))
}

/// Every nonzero a of degree <= max_deg coprime to D.
fn admissible_any(d: &Poly, max_deg: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for k in 0..=max_deg {
        for a in enumerate_all(d.modulus(), k) {
            if a.gcd(d)?.is_one() {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn orbit_check(fast: bool) -> Check {
    let mut ds = vec![p(3, &[0, 1]), p(3, &[0, 1, 1])];
    if !fast {
        ds.push(p(3, &[2, 2, 0, 1]));
    }
    let mut orbits = 0;
    for d in ds {
        for g in genera(3, &d)? {
            for (l, &n) in g.representatives.iter().zip(&g.so_orders) {
                let so = automorphisms(l)?;
                for a in admissible(&d, 2, usize::MAX)? {
                    let reps = primitive_representations(l, &a)?;
                    if reps.is_empty() {
                        continue;
                    }
                    let want = if a.degree() == Some(0) { n / 2 } else { n };
                    let sizes = orbit_sizes(&so, &reps)?;
                    orbits += sizes.len();
                    if sizes.iter().any(|&s| s != want) {
                        return Ok((false, format!("D={d} a={a} |SO|={n}: orbit sizes {sizes:?}")));
                    }
                }
            }
        }
    }
    Ok((true, format!("{orbits} orbits of the expected size")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small() {
        // ⟨1,1,t⟩ at q=3: α_2 = (1-1/9)·3^{(6-1+5)/2}
        assert_eq!(alpha_closed_form(3, 1, 2), int(8) / int(9) * int(243));
        assert!(alpha_closed_form(3, 1, 3).is_integer());
    }
}
