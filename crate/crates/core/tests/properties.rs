use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use tcp_core::ez::ez_reduction;
use tcp_core::morse::{
    classify, hd0_witness, morse_reduction, CellClass, DiscreteVectorField, EmlField,
};
use tcp_core::reductions::{basic_perturbation_lemma, check_reduction_on, Guard};
use tcp_core::simplicial::{
    all_simplices, check_simplicial_identities, kz1_simplex, kz1_tuple, make_pair,
    normalized_chains, FiniteSimplicialSet, Kz1, Simplex, SimplicialSet,
};
use tcp_core::twisted::{check_twisting, hopf, twisted_ez};
use tcp_core::zchain::{smith_normal_form, FormalSum, Gen, IntMatrix};

fn entry() -> impl Strategy<Value = i64> {
    (-9i64..=9).prop_filter("nonzero", |a| *a != 0)
}

fn bar(max_len: usize) -> impl Strategy<Value = Gen> {
    prop::collection::vec(entry(), 0..=max_len).prop_map(|a| Gen::bar(&a))
}

fn tuple(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn kz1(cap: usize) -> Arc<dyn SimplicialSet> {
    Arc::new(Kz1::with_cap(cap))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_certificates(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.diagonal.clone());
        prop_assert!(s.diagonal.is_diagonal());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for w in s.invariants.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        prop_assert!(s.invariants.iter().all(|d| *d > BigInt::from(0)));
    }

    #[test]
    fn kz1_boundary_squares_to_zero(g in bar(5)) {
        let c = normalized_chains(&kz1(6));
        let d = c.boundary(&FormalSum::from_gen(g)).unwrap();
        prop_assert!(c.boundary(&d).unwrap().is_zero());
    }

    #[test]
    fn kz1_simplicial_identities(a in tuple(4)) {
        let s = kz1_simplex(&a);
        prop_assert_eq!(kz1_tuple(&s).unwrap(), a);
        prop_assert_eq!(check_simplicial_identities(&Kz1::new(), &[s]).unwrap(), None);
    }

    #[test]
    fn eml_field_pairs_are_inverse(g in bar(5)) {
        match classify(&EmlField, &g) {
            CellClass::Source => {
                let (t, i) = EmlField.target_of(&g).unwrap();
                prop_assert_eq!(t.degree(), g.degree() + 1);
                prop_assert_eq!(EmlField.source_of(&t), Some((g.clone(), i)));
            }
            CellClass::Target => {
                let (s, i) = EmlField.source_of(&g).unwrap();
                prop_assert_eq!(EmlField.target_of(&s), Some((g.clone(), i)));
            }
            CellClass::Critical => {
                prop_assert!(g.degree() <= 1);
            }
        }
    }

    #[test]
    fn eml_reduction_identities(g in bar(4)) {
        let m = morse_reduction(kz1(5), Arc::new(EmlField), None);
        let report = check_reduction_on(&m.reduction, std::slice::from_ref(&g), &[]).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.first_failure());
        prop_assert!(hd0_witness(&m, &g, 10).unwrap() <= 2);
    }

    #[test]
    fn ez_identities_on_kz1_squared(a in tuple(3), b in tuple(3), x in bar(2), y in bar(2)) {
        let k = kz1(4);
        let ez = ez_reduction(&k, &k);
        let pair = make_pair(kz1_simplex(&a), kz1_simplex(&b));
        let top: Vec<Gen> = if pair.is_degenerate() { vec![] } else { vec![pair.into_core()] };
        let report = check_reduction_on(&ez.reduction, &top, &[Gen::tensor(x, y)]).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.first_failure());
    }

    #[test]
    fn zero_perturbation_changes_nothing(x in bar(3), y in bar(3)) {
        let k = kz1(4);
        let ez = ez_reduction(&k, &k);
        let p = basic_perturbation_lemma(&ez.reduction, &tcp_core::zchain::GradedMap::zero(-1), Guard::Default);
        let g = Gen::tensor(x, y);
        prop_assert_eq!(p.reduction.g.apply_gen(&g).unwrap(), ez.reduction.g.apply_gen(&g).unwrap());
    }

    #[test]
    fn hopf_twisted_differential(x in bar(3), top in any::<bool>()) {
        let tcp = hopf(5);
        let tw = twisted_ez(&tcp, Guard::Default);
        let y = if top { Gen::cell(2, "σ2") } else { Gen::cell(0, "*") };
        let g = Gen::tensor(x, y);
        let b = &tw.reduction().bottom;
        let d = b.boundary(&FormalSum::from_gen(g.clone())).unwrap();
        prop_assert!(b.boundary(&d).unwrap().is_zero());
        let report = check_reduction_on(tw.reduction(), &[], &[g]).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.first_failure());
    }

    #[test]
    fn formal_sums_form_a_group(a in prop::collection::vec((bar(2), -5i64..=5), 0..6),
                                b in prop::collection::vec((bar(2), -5i64..=5), 0..6)) {
        let a = FormalSum::from_terms(a);
        let b = FormalSum::from_terms(b);
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() + b.clone() - b, a.clone());
        prop_assert!(a.iter().all(|(_, k)| *k != BigInt::from(0)));
    }
}

#[test]
fn hopf_operator_is_a_twisting_operator() {
    let s = FiniteSimplicialSet::sphere(2);
    let tcp = hopf(3);
    let simplices: Vec<Simplex> = (0..=3)
        .flat_map(|n| all_simplices(&s, n).unwrap())
        .collect();
    assert_eq!(check_twisting(&tcp.tau, &simplices).unwrap(), None);
}
