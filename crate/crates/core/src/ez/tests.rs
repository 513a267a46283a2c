use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::reductions::check_reduction;
use crate::simplicial::FiniteSimplicialSet;
use crate::zchain::{homology, HomologyGroup};

fn s1() -> Arc<dyn SimplicialSet> {
    Arc::new(FiniteSimplicialSet::sphere(1))
}

fn nd(g: &Gen) -> Simplex {
    Simplex::nondegenerate(g.clone())
}

#[test]
fn shuffle_signs() {
    let s = shuffles(1, 1);
    assert_eq!(s, vec![(vec![0], vec![1], 1), (vec![1], vec![0], -1)]);
    assert_eq!(shuffles(2, 1).len(), 3);
    assert_eq!(shuffles(0, 2), vec![(vec![], vec![0, 1], 1)]);
}

#[test]
fn aw_low_dimensions() {
    let (x, y) = (Gen::cell(0, "x"), Gen::cell(0, "y"));
    let aw = alexander_whitney(s1(), s1());
    let g = Gen::pair(nd(&x), nd(&y));
    assert_eq!(
        aw.apply_gen(&g).unwrap(),
        FormalSum::from_gen(Gen::tensor(x, y))
    );

    let c2: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::circle2());
    let aw = alexander_whitney(c2.clone(), c2);
    let (e0, e1) = (Gen::cell(1, "e0"), Gen::cell(1, "e1"));
    // n = 1: d1 x ⊗ y + x ⊗ d0 y
    let g = Gen::pair(nd(&e0), nd(&e1));
    let expect = FormalSum::from_terms([
        (Gen::tensor(Gen::cell(0, "v0"), e1.clone()), 1),
        (Gen::tensor(e0.clone(), Gen::cell(0, "v1")), 1),
    ]);
    assert_eq!(aw.apply_gen(&g).unwrap(), expect);
    // (s0 v, e) keeps only v ⊗ e
    let v = Gen::cell(0, "v0");
    let g = Gen::pair(nd(&v).degenerate(0), nd(&e0));
    assert_eq!(
        aw.apply_gen(&g).unwrap(),
        FormalSum::from_gen(Gen::tensor(v, e0))
    );
}

#[test]
fn eml_one_one() {
    let (x, y) = (Gen::cell(1, "x"), Gen::cell(1, "y"));
    let out = eml_shuffle()
        .apply_gen(&Gen::tensor(x.clone(), y.clone()))
        .unwrap();
    let expect = FormalSum::from_terms([
        (Gen::pair(nd(&x).degenerate(1), nd(&y).degenerate(0)), 1),
        (Gen::pair(nd(&x).degenerate(0), nd(&y).degenerate(1)), -1),
    ]);
    assert_eq!(out, expect);
}

#[test]
fn eml_with_vertex_factor() {
    let (v, y) = (Gen::cell(0, "v"), Gen::cell(2, "y"));
    let out = eml_shuffle()
        .apply_gen(&Gen::tensor(v.clone(), y.clone()))
        .unwrap();
    let expect = FormalSum::from_gen(Gen::pair(Simplex::degenerate_vertex(v, 2), nd(&y)));
    assert_eq!(out, expect);
}

#[test]
fn homotopy_vanishes_on_vertices() {
    let g = Gen::pair(nd(&Gen::cell(0, "*")), nd(&Gen::cell(0, "*")));
    assert!(ez_homotopy(s1(), s1()).apply_gen(&g).unwrap().is_zero());
}

#[test]
fn torus_identities() {
    let ez = ez_reduction(&s1(), &s1());
    let report = check_reduction(&ez.reduction, 0..=3).unwrap();
    assert!(report.is_ok(), "{:?}", report.failures);
}

#[test]
fn circle2_times_sphere2_identities() {
    let c2: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::circle2());
    let s2: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::sphere(2));
    let ez = ez_reduction(&c2, &s2);
    let report = check_reduction(&ez.reduction, 0..=3).unwrap();
    assert!(report.is_ok(), "{:?}", report.failures);
}

#[test]
fn torus_homology_both_sides() {
    let ez = ez_reduction(&s1(), &s1());
    let expect = [
        HomologyGroup::free(1),
        HomologyGroup::free(2),
        HomologyGroup::free(1),
    ];
    for (n, h) in expect.iter().enumerate() {
        assert_eq!(&homology(&ez.reduction.top, n).unwrap(), h);
        assert_eq!(&homology(&ez.reduction.bottom, n).unwrap(), h);
    }
}

#[test]
fn point_fiber_is_an_isomorphism() {
    let pt: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::point());
    let s2: Arc<dyn SimplicialSet> = Arc::new(FiniteSimplicialSet::sphere(2));
    let ez = ez_reduction(&pt, &s2);
    for n in 0..=3 {
        let top: Vec<_> = ez.reduction.top.finite_basis(n).unwrap().to_vec();
        assert_eq!(
            top.len(),
            ez.reduction.bottom.finite_basis(n).unwrap().len()
        );
        for g in &top {
            assert!(ez.reduction.h.apply_gen(g).unwrap().is_zero());
        }
    }
}
