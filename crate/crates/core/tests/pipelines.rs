use fqt_forms::ffpoly::{enumerate_all, factor, irreducibles, Poly};
use fqt_forms::formulas::{exact_class_numbers, mass_formula};
use fqt_forms::genus::{
    exhaustive_genera, genus_symbol, neighbor_closure, neighbors_at, seed_lattice, siegel_lhs, default_neighbor_primes,
};
use fqt_forms::lattice::{is_decomposable, isometry, TernaryLattice};
use fqt_forms::localsym::representability_conditions;
use fqt_forms::upoly::{int, rpow, Rational};
use fqt_forms::zeta_l::class_number;

fn p(q: u32, c: &[i64]) -> Poly {
    Poly::from_i64(q, c)
}

#[test]
fn closure_agrees_with_exhaustive_on_composite_determinants() {
    for d in [p(3, &[0, 1, 0, 1]), p(3, &[0, 2, 1, 1]), p(5, &[0, 1, 1])] {
        let gs = exhaustive_genera(d.modulus(), &d).unwrap();
        assert!(!gs.is_empty());
        for g in gs {
            let sym = &g.genus_symbol;
            assert_eq!(g.mass(), mass_formula(&d, &sym.d0, &sym.d1).unwrap(), "D={d} D1={}", sym.d1);
            let cl = neighbor_closure(&g.representatives[0], &[]).unwrap();
            assert!(cl.same_classes(&g).unwrap());
        }
    }
}

#[test]
fn siegel_holds_in_every_genus_of_a_composite_determinant() {
    let q = 3;
    let d = p(q, &[0, 1, 1]);
    let r = factor(&d).unwrap().factors.len() as i64;
    for g in exhaustive_genera(q, &d).unwrap() {
        for k in 0..=2 {
            for a in enumerate_all(q, k) {
                if !a.gcd(&d).unwrap().is_one() || !representability_conditions(&d, &a).unwrap().representable {
                    continue;
                }
                let lhs = siegel_lhs(&g, &a).unwrap();
                let h = class_number(&(-&(&a * &d))).unwrap();
                assert_eq!(lhs, Rational::from_integer(h.into()) / rpow(&int(2), r), "a={a}");
            }
        }
    }
}

#[test]
fn stabilizer_orders_follow_the_decomposition() {
    let q = 3;
    let d = irreducibles(q, 5)[0].clone();
    let cl = neighbor_closure(&seed_lattice(q, &d).unwrap(), &[]).unwrap();
    let exact = exact_class_numbers(&d).unwrap();
    assert_eq!(cl.h() as u64, exact.h);
    let mut template = 0;
    for (l, &n) in cl.representatives.iter().zip(&cl.so_orders) {
        if n == 2 * (q as usize + 1) {
            template += 1;
            assert!(isometry(l, &seed_lattice(q, &d).unwrap()).unwrap().is_some());
        } else if is_decomposable(l).unwrap() {
            assert_eq!(n, 2);
        } else {
            assert_eq!(n, 1);
        }
    }
    assert_eq!(template, 1);
}

#[test]
fn neighbors_stay_in_the_genus() {
    let q = 3;
    let d = p(q, &[2, 2, 0, 1]);
    let seed = seed_lattice(q, &d).unwrap();
    let sym = genus_symbol(&seed).unwrap();
    for pr in default_neighbor_primes(&d, 2) {
        for n in neighbors_at(&seed, &pr).unwrap() {
            assert_eq!(n.det().monic(), d.monic());
            assert_eq!(genus_symbol(&n).unwrap(), sym);
        }
    }
}

#[test]
fn lattice_json_round_trip() {
    let seed = seed_lattice(5, &p(5, &[1, 1, 0, 1])).unwrap();
    let back = TernaryLattice::from_json(&seed.to_json()).unwrap();
    assert_eq!(back.gram(), seed.gram());
}
