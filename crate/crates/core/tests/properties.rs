use proptest::prelude::*;

use nilmirror::cplx::{invariants, span_conditions, transform, BasisChange, ComplexStructureEq};
use nilmirror::exterior::basis_masks;
use nilmirror::notation::{catalog_lookup, classify, parse, print, CATALOG};
use nilmirror::scalars::{rat, sign};
use nilmirror::tables::{Sampler, TAB_F1};
use nilmirror::{LieAlgebra, Matrix, Multivector, GR};

fn gr() -> impl Strategy<Value = GR> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GR::new(rat(a, b), rat(c, d)))
}

fn form(dim: usize, k: usize) -> impl Strategy<Value = Multivector> {
    let masks = basis_masks(dim, k);
    proptest::collection::vec(prop_oneof![Just(GR::zero()), gr()], masks.len()).prop_map(move |cs| {
        let mut m = Multivector::zero(dim);
        for (mask, c) in masks.iter().zip(cs) {
            m.add_term(*mask, c);
        }
        m
    })
}

fn catalog_algebra() -> impl Strategy<Value = LieAlgebra> {
    (0..CATALOG.len()).prop_map(|i| catalog_lookup(CATALOG[i].0).unwrap())
}

/// `de^k` built from `e^{ij}` with `i < j < k`, small integer coefficients.
fn triangular() -> impl Strategy<Value = Vec<Multivector>> {
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], 20).prop_map(|cs| {
        let mut it = cs.into_iter();
        (0..6)
            .map(|k| {
                let mut d = Multivector::zero(6);
                for i in 0..k {
                    for j in i + 1..k {
                        d.add_term((1 << i) | (1 << j), GR::from_int(it.next().unwrap()));
                    }
                }
                d
            })
            .collect()
    })
}

fn sampled_eq() -> impl Strategy<Value = ComplexStructureEq> {
    (any::<u64>(), 0usize..22).prop_map(|(seed, row)| Sampler::new(seed).tab_f1(row + 1, TAB_F1[row].g[0]))
}

proptest! {
    #[test]
    fn field_axioms(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
        prop_assert_eq!((&a * &b).abs2(), a.abs2() * b.abs2());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in gr()) {
        prop_assert_eq!(a.to_string().parse::<GR>().unwrap(), a);
    }

    #[test]
    fn wedge_is_associative_and_graded(a in form(5, 1), b in form(5, 2), c in form(5, 2)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        // degrees 1 and 2 commute; 1 and 1 anticommute
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn d_is_an_antiderivation(g in catalog_algebra(), a in form(6, 1), b in form(6, 2)) {
        let lhs = g.d(&a.wedge(&b));
        let rhs = g.d(&a).wedge(&b).sub(&a.wedge(&g.d(&b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.d(&g.d(&b)).is_zero());
    }

    #[test]
    fn rank_plus_nullity(rows in proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(GR::zero()), gr()], 5), 4)) {
        let m = Matrix::from_rows(&rows);
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), 5);
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn d_squared_iff_jacobi(diffs in triangular()) {
        let g = LieAlgebra::new(diffs).unwrap();
        prop_assert_eq!(g.check_jacobi(), g.check_jacobi_brackets());
    }

    #[test]
    fn shorthand_round_trip(diffs in triangular()) {
        let g = LieAlgebra::new(diffs).unwrap();
        prop_assume!(g.check_jacobi());
        if let Ok(text) = print(&g) {
            prop_assert_eq!(parse(&text).unwrap(), g);
        }
    }

    #[test]
    fn span_conditions_match_span(eq in sampled_eq()) {
        prop_assert_eq!(span_conditions(&eq), invariants(&eq).unwrap().d_span <= 1);
    }

    #[test]
    fn transformation_laws(eq in sampled_eq(), entries in proptest::collection::vec(gr(), 7)) {
        let mut s = BasisChange::identity();
        let slots = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)];
        for ((i, j), v) in slots.iter().zip(entries) {
            s.s[*i][*j] = v;
        }
        if !eq.epsilon.is_zero() {
            s.s[0][1] = GR::zero();
        }
        prop_assume!(s.check(&eq).is_ok());
        let t = transform(&eq, &s).unwrap();
        let inv = rat(1, 1) / s.delta_prime().abs2();
        let s33 = &s.s[2][2];
        prop_assert_eq!(t.delta1(), (eq.delta1() * s33 * s33).scale(&inv));
        prop_assert_eq!(t.delta2(), eq.delta2() * s33.abs2() * &inv);
        let sg = |e: &ComplexStructureEq| sign(&(e.delta1().abs2() - e.delta2() * e.delta2()));
        prop_assert_eq!(sg(&t), sg(&eq));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_and_class_survive_basis_change(i in 0..CATALOG.len(), entries in proptest::collection::vec(-1i64..=1, 36)) {
        let rows: Vec<Vec<GR>> = entries.chunks(6).map(|r| r.iter().map(|&x| GR::from_int(x)).collect()).collect();
        let p = Matrix::from_rows(&rows);
        prop_assume!(!p.determinant().is_zero());
        let g = catalog_lookup(CATALOG[i].0).unwrap();
        let h = g.change_basis(&p).unwrap();
        prop_assert!(h.check_jacobi());
        prop_assert_eq!(h.fingerprint().unwrap(), g.fingerprint().unwrap());
        prop_assert_eq!(classify(&h).unwrap(), CATALOG[i].0);
    }
}
