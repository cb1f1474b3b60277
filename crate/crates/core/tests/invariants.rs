mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use tautri::algebra::{
    radical_square_truncation, tensor_product, triangular_matrix, truncated_polynomial, Algebra, BoundPresentation,
};
use tautri::field::{Field, PrimeField};
use tautri::repmod::{
    ar_translate, decompose_seeded, hom_space, injective, is_isomorphic, projective, simple, Representation,
};
use tautri::tautilt::ExploreOptions;

fn algebra(p: &BoundPresentation) -> Arc<Algebra<PrimeField>> {
    Arc::new(Algebra::compute(p, field()).unwrap())
}

fn presentation() -> impl Strategy<Value = BoundPresentation> {
    any::<u64>().prop_map(|seed| random_algebra(&mut rng(seed)))
}

/// Dense product of two sparse elements.
fn multiply(alg: &Algebra<PrimeField>, x: &[(usize, u32)], y: &[(usize, u32)]) -> Vec<u32> {
    let f = alg.field();
    let mut out = vec![f.zero(); alg.dim()];
    for (a, ca) in x {
        for (b, cb) in y {
            let c = f.mul(ca, cb);
            for (k, ck) in alg.product(*a, *b) {
                out[*k] = f.add(&out[*k], &f.mul(&c, ck));
            }
        }
    }
    out
}

fn sparse(v: &[u32]) -> Vec<(usize, u32)> {
    v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k, *c)).collect()
}

/// Projectives, injectives and simples of `alg`.
fn test_modules(alg: &Arc<Algebra<PrimeField>>) -> Vec<Representation<PrimeField>> {
    (0..alg.vertex_count())
        .flat_map(|i| [projective(alg, i), injective(alg, i), simple(alg, i)])
        .collect()
}

/// Hom dimensions against projectives and simples in both directions.
fn hom_profile(alg: &Arc<Algebra<PrimeField>>, x: &Representation<PrimeField>) -> Vec<usize> {
    (0..alg.vertex_count())
        .flat_map(|i| {
            let (p, s) = (projective(alg, i), simple(alg, i));
            [hom_space(&p, x).len(), hom_space(x, &p).len(), hom_space(&s, x).len(), hom_space(x, &s).len()]
        })
        .collect()
}

const ISOMORPHISM_LIMIT: usize = 40;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(p in presentation(), seed in any::<u64>()) {
        let alg = algebra(&p);
        let mut r = rng(seed);
        for _ in 0..200 {
            let [x, y, z] = [(); 3].map(|_| vec![(r.gen_range(0..alg.dim()), 1u32)]);
            let left = multiply(&alg, &sparse(&multiply(&alg, &x, &y)), &z);
            let right = multiply(&alg, &x, &sparse(&multiply(&alg, &y, &z)));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn construction_dimensions(p in presentation(), q in presentation()) {
        let (dp, dq) = (p.dimension().unwrap(), q.dimension().unwrap());
        let t1 = triangular_matrix(&p, 1).unwrap();
        prop_assert_eq!(t1.dimension().unwrap(), dp);
        prop_assert_eq!(t1.vertex_count(), p.vertex_count());
        prop_assume!(dp * dq <= 120);
        prop_assert_eq!(tensor_product(&p, &q).unwrap().dimension().unwrap(), dp * dq);
    }

    #[test]
    fn radical_square_truncation_is_idempotent(p in presentation()) {
        let once = radical_square_truncation(&p);
        let twice = radical_square_truncation(&once);
        let (a, b) = (algebra(&once), algebra(&twice));
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(once.dimension().unwrap(), once.vertex_count() + once.quiver.arrows().len());
    }

    #[test]
    fn hom_from_projectives_reads_dimension_vectors(p in presentation()) {
        let alg = algebra(&p);
        for x in test_modules(&alg) {
            for i in 0..alg.vertex_count() {
                prop_assert_eq!(hom_space(&projective(&alg, i), &x).len(), x.dims()[i]);
            }
        }
    }

    #[test]
    fn translation_is_additive(p in presentation(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let alg = algebra(&p);
        let pool: Vec<_> = test_modules(&alg).into_iter().filter(|m| !ar_translate(m).unwrap().is_zero()).collect();
        prop_assume!(!pool.is_empty());
        let (m, n) = (a.get(&pool), b.get(&pool));
        let (tm, tn) = (ar_translate(m).unwrap(), ar_translate(n).unwrap());
        let whole = ar_translate(&Representation::direct_sum(&alg, &[m, n])).unwrap();
        let parts = Representation::direct_sum(&alg, &[&tm, &tn]);
        prop_assert_eq!(whole.dims(), parts.dims());
        prop_assert_eq!(hom_profile(&alg, &whole), hom_profile(&alg, &parts));
        if whole.dim() <= ISOMORPHISM_LIMIT {
            prop_assert!(is_isomorphic(&whole, &parts));
        }
    }

    #[test]
    fn decomposition_reassembles(p in presentation(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4), seed in any::<u64>()) {
        let alg = algebra(&p);
        let pool = test_modules(&alg);
        let parts: Vec<_> = picks.iter().map(|k| k.get(&pool)).collect();
        let m = Representation::direct_sum(&alg, &parts);
        let summands = decompose_seeded(&m, seed).unwrap();
        let total: usize = summands.iter().map(|(s, k)| s.dim() * k).sum();
        prop_assert_eq!(total, m.dim());
        let flat: Vec<&Representation<PrimeField>> =
            summands.iter().flat_map(|(s, k)| std::iter::repeat_n(s, *k)).collect();
        prop_assert!(is_isomorphic(&Representation::direct_sum(&alg, &flat), &m));
    }

    #[test]
    fn exploration_ignores_the_seed(p in presentation(), seed in 1u64..) {
        let plain = explore_with(&p, &small_options());
        let seeded = explore_with(&p, &ExploreOptions { seed, ..small_options() });
        prop_assert_eq!(&plain.hasse.keys, &seeded.hasse.keys);
        prop_assert_eq!(plain.report.count, seeded.report.count);
        prop_assert_eq!(plain.report.status, seeded.report.status);
    }
}

#[test]
fn simples_of_the_dual_numbers_are_translation_periodic() {
    let alg = algebra(&truncated_polynomial(2).unwrap());
    let s = simple(&alg, 0);
    let tau = ar_translate(&s).unwrap();
    assert!(is_isomorphic(&tau, &s));
    assert!(is_isomorphic(&ar_translate(&tau).unwrap(), &s));
}
