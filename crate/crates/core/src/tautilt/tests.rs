use std::sync::Arc;

use super::*;
use crate::algebra::{
    ground_field, nakayama, path_algebra_linear, radical_square_truncation, triangular_matrix, truncated_polynomial,
    BoundPresentation,
};
use crate::field::PrimeField;
use crate::repmod::oracle::brute_force_stau_count;

fn ctx(p: &BoundPresentation) -> Arc<TauTiltingContext<PrimeField>> {
    let f = PrimeField::new(32003).unwrap();
    Arc::new(TauTiltingContext::new(Arc::new(Algebra::compute(p, f).unwrap())))
}

fn run(p: &BoundPresentation) -> Exploration<PrimeField> {
    explore_in(ctx(p), &ExploreOptions::default()).unwrap()
}

#[test]
fn bareiss_determinants() {
    assert_eq!(GMatrix(vec![vec![1, 0], vec![0, 1]]).determinant(), 1);
    assert_eq!(GMatrix(vec![vec![0, 1], vec![1, 0]]).determinant(), -1);
    assert_eq!(GMatrix(vec![vec![2, 1], vec![1, 1]]).determinant(), 1);
    assert_eq!(GMatrix(vec![vec![2, 4], vec![1, 2]]).determinant(), 0);
    let m = GMatrix(vec![vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]);
    assert_eq!(m.determinant(), 25);
}

#[test]
fn small_counts_match_the_oracle() {
    let cases = [
        ground_field(),
        truncated_polynomial(2).unwrap(),
        path_algebra_linear(2).unwrap(),
        radical_square_truncation(&path_algebra_linear(2).unwrap()),
    ];
    for p in &cases {
        let e = run(p);
        assert!(e.report.is_finite());
        assert_eq!(e.report.count, brute_force_stau_count(p).unwrap());
    }
}

#[test]
fn known_counts() {
    // A_n linear: Catalan numbers
    assert_eq!(run(&path_algebra_linear(3).unwrap()).report.count, 14);
    assert_eq!(run(&path_algebra_linear(4).unwrap()).report.count, 42);
    let t2 = run(&triangular_matrix(&ground_field(), 2).unwrap());
    assert_eq!(t2.report.count, 5);
}

#[test]
fn finite_graphs_are_regular_with_unique_ends() {
    for p in [
        path_algebra_linear(3).unwrap(),
        triangular_matrix(&path_algebra_linear(2).unwrap(), 2).unwrap(),
        nakayama(2, true, 3).unwrap(),
    ] {
        let r = run(&p).report;
        assert!(r.is_finite());
        assert!(r.regular && r.unique_source && r.unique_sink && r.connected, "{r:?}");
    }
}

#[test]
fn mutation_is_an_involution() {
    let c = ctx(&triangular_matrix(&path_algebra_linear(2).unwrap(), 2).unwrap());
    let e = explore_in(Arc::clone(&c), &ExploreOptions::default()).unwrap();
    for p in &e.pairs {
        for k in 0..p.len() {
            let (q, dir) = c.mutate(p, k).unwrap();
            assert_ne!(c.key(&q), c.key(p));
            assert_eq!(q.len(), p.len());
            c.validate_pair(&q).unwrap();
            let back = (0..q.len()).find(|&j| c.mutate(&q, j).map(|(r, _)| c.key(&r) == c.key(p)).unwrap_or(false));
            assert!(back.is_some(), "no mutation of {q:?} returns to {p:?}");
            match dir {
                Direction::Down => assert!(c.leq(&q, p)),
                Direction::Up => assert!(c.leq(p, &q)),
            }
        }
    }
}

#[test]
fn order_has_extremes() {
    let c = ctx(&path_algebra_linear(3).unwrap());
    let e = explore_in(Arc::clone(&c), &ExploreOptions::default()).unwrap();
    let top = c.initial_pair().unwrap();
    let bottom = c.final_pair();
    for p in &e.pairs {
        assert!(c.leq(p, &top));
        assert!(c.leq(&bottom, p));
        assert!(c.g_matrix(p).is_unimodular());
    }
}

#[test]
fn workers_do_not_change_the_report() {
    let p = triangular_matrix(&path_algebra_linear(3).unwrap(), 2).unwrap();
    let one = explore_in(ctx(&p), &ExploreOptions { chunk: 7, ..Default::default() }).unwrap();
    let many = explore_in(ctx(&p), &ExploreOptions { chunk: 7, workers: 4, ..Default::default() }).unwrap();
    assert_eq!(one.report.deterministic_json(), many.report.deterministic_json());
    assert_eq!(one.hasse.keys, many.hasse.keys);
}

#[test]
fn budget_is_reported() {
    let p = triangular_matrix(&path_algebra_linear(3).unwrap(), 3).unwrap();
    let e = explore_in(ctx(&p), &ExploreOptions { budget: 30, ..Default::default() }).unwrap();
    assert_eq!(e.report.status, ExploreStatus::BudgetExceeded);
    assert!(e.report.frontier > 0);
    assert!(explore_in(ctx(&p), &ExploreOptions { budget: 0, ..Default::default() }).is_err());
}

#[test]
fn budget_stops_do_not_depend_on_chunking() {
    let p = triangular_matrix(&path_algebra_linear(3).unwrap(), 3).unwrap();
    let run = |chunk, workers, max_module_dim| {
        let opts = ExploreOptions { budget: 100, chunk, workers, max_module_dim, ..Default::default() };
        let e = explore_in(ctx(&p), &opts).unwrap();
        assert_eq!(e.report.status, ExploreStatus::BudgetExceeded);
        (e.report.deterministic_json(), e.hasse.keys, e.hasse.edges)
    };
    assert_eq!(run(1, 1, 256), run(256, 1, 256));
    assert_eq!(run(1, 1, 256), run(5, 3, 256));
    assert_eq!(run(2, 1, 12), run(256, 2, 12));
}
