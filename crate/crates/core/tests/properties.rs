use proptest::prelude::*;

use fqt_forms::ffpoly::{is_squarefree, jacobi, Poly};
use fqt_forms::formulas::mass_formula_forms;
use fqt_forms::lattice::{isometry, reduce, shell_counts, shell_counts_direct, TernaryLattice};
use fqt_forms::matrix::Mat3;
use fqt_forms::zeta_l::{l_polynomial, l_polynomial_fast, m_d, m_d_sum};

fn poly(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..q as i64, 0..=max_deg + 1).prop_map(move |c| Poly::from_i64(q, &c))
}

fn nonzero(q: u32, max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(q, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn field() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

/// Product of elementary matrices I + c·E_ij.
fn unimodular(q: u32) -> impl Strategy<Value = Mat3> {
    prop::collection::vec((0usize..3, 1usize..3, prop::collection::vec(0..q as i64, 1..3)), 1..6).prop_map(move |ops| {
        let mut t = Mat3::identity(q);
        for (i, off, c) in ops {
            let j = (i + off) % 3;
            let mut e = Mat3::identity(q);
            e.e[i][j] = Poly::from_i64(q, &c);
            t = t.mul(&e);
        }
        t
    })
}

/// Small definite lattices, already reduced.
fn definite(q: u32) -> impl Strategy<Value = TernaryLattice> {
    prop::collection::vec(prop::collection::vec(0..q as i64, 0..3), 6)
        .prop_filter_map("definite with square-free det", move |e| {
            let e: Vec<Poly> = e.iter().map(|c| Poly::from_i64(q, c)).collect();
            let l = TernaryLattice::from_entries([&e[0], &e[1], &e[2], &e[3], &e[4], &e[5]]).ok()?;
            if l.delta() > 3 || !is_squarefree(l.det()).ok()? {
                return None;
            }
            reduce(&l).ok().map(|r| r.0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((a, b, c) in field().prop_flat_map(|q| (poly(q, 6), poly(q, 6), poly(q, 6)))) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn division_and_gcd((a, b) in field().prop_flat_map(|q| (poly(q, 8), nonzero(q, 4)))) {
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
        prop_assert!(rem.degree_or_neg() < b.degree_or_neg());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        let (g2, s, t) = a.xgcd(&b).unwrap();
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g2);
    }

    #[test]
    fn text_round_trip(a in field().prop_flat_map(|q| poly(q, 7))) {
        prop_assert_eq!(Poly::parse(a.modulus(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn jacobi_is_multiplicative((a, b, m) in field().prop_flat_map(|q| (nonzero(q, 4), nonzero(q, 4), nonzero(q, 4)))) {
        let m = m.monic();
        prop_assume!(m.degree() != Some(0));
        let ab = jacobi(&(&a * &b), &m).unwrap();
        prop_assert_eq!(ab, jacobi(&a, &m).unwrap() * jacobi(&b, &m).unwrap());
    }

    #[test]
    fn m_d_product_equals_divisor_sum(d in field().prop_flat_map(|q| nonzero(q, 5)), s in 1i64..4) {
        prop_assert_eq!(m_d(&d, s).unwrap(), m_d_sum(&d, s).unwrap());
    }

    #[test]
    fn mass_forms_agree((d0, d1) in prop::sample::select(vec![3u32, 5]).prop_flat_map(|q| (nonzero(q, 3), nonzero(q, 3)))) {
        let d = &d0 * &d1;
        prop_assume!(is_squarefree(&d).unwrap());
        let (a, b) = mass_formula_forms(&d, &d0, &d1).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fast_l_polynomial_matches_character_sums(b in prop::sample::select(vec![3u32, 5]).prop_flat_map(|q| nonzero(q, 5))) {
        prop_assume!(b.degree().unwrap_or(0) >= 1 && is_squarefree(&b).unwrap());
        prop_assert_eq!(l_polynomial_fast(&b).unwrap(), l_polynomial(&b).unwrap());
    }

    #[test]
    fn reduce_is_idempotent_and_keeps_det((l, t) in prop::sample::select(vec![3u32, 5]).prop_flat_map(|q| (definite(q), unimodular(q)))) {
        let scrambled = l.transform(&t).unwrap();
        prop_assert_eq!(scrambled.det(), l.det());
        let (r, tr) = reduce(&scrambled).unwrap();
        prop_assert_eq!(r.det(), l.det());
        prop_assert_eq!(&scrambled.gram().congruence(&tr), r.gram());
        let (rr, _) = reduce(&r).unwrap();
        prop_assert_eq!(rr.gram(), r.gram());
        prop_assert_eq!(r.minima(), l.minima());
    }

    #[test]
    fn isometry_is_symmetric((l, t) in prop::sample::select(vec![3u32, 5]).prop_flat_map(|q| (definite(q), unimodular(q)))) {
        let (m, _) = reduce(&l.transform(&t).unwrap()).unwrap();
        let f = isometry(&l, &m).unwrap().expect("forward isometry");
        let g = isometry(&m, &l).unwrap().expect("backward isometry");
        prop_assert_eq!(&l.gram().congruence(&f), m.gram());
        prop_assert_eq!(&m.gram().congruence(&g), l.gram());
    }

    #[test]
    fn fast_shells_match_direct(l in prop::sample::select(vec![3u32, 5]).prop_flat_map(definite)) {
        let kmax = l.delta() + if l.q() == 3 { 2 } else { 1 };
        let fast = shell_counts(&l, kmax).unwrap();
        let direct = shell_counts_direct(&l, kmax).unwrap();
        prop_assert_eq!(fast, direct);
    }
}
