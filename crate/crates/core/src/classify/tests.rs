use proptest::prelude::*;

use super::*;
use crate::algebra::{
    ground_field, nakayama, path_algebra_linear, radical_square_truncation, tensor_product, triangular_matrix,
    truncated_polynomial,
};
use crate::field::FieldSpec;
use crate::quiver::Quiver;

fn tau(p: &BoundPresentation, n: usize) -> (Conclusion, RuleId) {
    let v = classify_tn_tau_finiteness(p, n).unwrap();
    (v.conclusion, v.rule)
}

fn lin_rad2(r: usize) -> BoundPresentation {
    nakayama(r, false, 2).unwrap()
}

#[test]
fn tau_rule_examples() {
    assert_eq!(tau(&lin_rad2(3), 3), (Conclusion::TauFinite, RuleId::R3));
    assert_eq!(tau(&path_algebra_linear(2).unwrap(), 5), (Conclusion::TauInfinite, RuleId::R2));
    assert_eq!(tau(&path_algebra_linear(3).unwrap(), 3), (Conclusion::TauInfinite, RuleId::R3));
    assert_eq!(tau(&truncated_polynomial(2).unwrap(), 7), (Conclusion::TauFinite, RuleId::R1));
    assert_eq!(tau(&path_algebra_linear(2).unwrap(), 4), (Conclusion::TauFinite, RuleId::R4));
    assert_eq!(tau(&path_algebra_linear(2).unwrap(), 3), (Conclusion::TauFinite, RuleId::R4));
    assert_eq!(tau(&nakayama(2, true, 2).unwrap(), 4), (Conclusion::TauInfinite, RuleId::R4));
    for m in 2..=4 {
        assert_eq!(tau(&path_algebra_linear(m).unwrap(), 2), (Conclusion::TauFinite, RuleId::R5));
    }
    assert_eq!(tau(&path_algebra_linear(5).unwrap(), 2), (Conclusion::TauInfinite, RuleId::R5));
}

#[test]
fn separated_quiver_and_tensor_rules() {
    let kron = Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "1", "2")].map(|(a, s, t)| (a.into(), s.into(), t.into())))
        .unwrap();
    let kron = BoundPresentation::new(kron, Vec::new(), 2, FieldSpec::default()).unwrap();
    assert_eq!(tau(&kron, 2), (Conclusion::TauInfinite, RuleId::R6));
    let a2 = path_algebra_linear(2).unwrap();
    let square = tensor_product(&a2, &a2).unwrap();
    assert_eq!(tau(&square, 2), (Conclusion::TauInfinite, RuleId::R7));
    assert_eq!(tau(&triangular_matrix(&a2, 2).unwrap(), 2), (Conclusion::TauInfinite, RuleId::R7));
    let untagged = BoundPresentation { tag: None, ..square };
    assert_eq!(tau(&untagged, 2), (Conclusion::Unknown, RuleId::R8));
}

#[test]
fn loops_block_the_loop_free_rules() {
    let ce = Quiver::new(
        ["1", "2", "3"],
        [("x", "1", "1"), ("a", "1", "2"), ("b", "1", "3")].map(|(a, s, t)| (a.into(), s.into(), t.into())),
    )
    .unwrap();
    let ce = BoundPresentation::new(ce, Vec::new(), 2, FieldSpec::default()).unwrap();
    let v = classify_tn_tau_finiteness(&ce, 2).unwrap();
    assert_eq!(v.conclusion, Conclusion::Unknown);
    assert!(v.provenance.is_none());
    assert_eq!(tau(&ce, 3), (Conclusion::Unknown, RuleId::R8));
}

#[test]
fn two_cycle_reduction() {
    let cyc = nakayama(2, true, 4).unwrap();
    let red = reduce_two_cycle(&cyc, 2).unwrap();
    assert_eq!(red.presentation.dimension().unwrap(), 4);
    assert_eq!(red.presentation.vertex_count(), 2);
    assert!(reduce_two_cycle(&path_algebra_linear(2).unwrap(), 2).is_none());
    assert!(reduce_two_cycle(&nakayama(3, true, 3).unwrap(), 2).is_none());
    let v = classify_tn_tau_finiteness(&cyc, 3).unwrap();
    assert_eq!(v.reductions.len(), 1);
    assert_eq!((v.conclusion, v.rule), (Conclusion::TauFinite, RuleId::R4));
}

#[test]
fn silting_table() {
    let sd = |r: usize, n: usize| {
        let p = if r == 1 { ground_field() } else { lin_rad2(r) };
        classify_silting_discreteness(&p, n).unwrap().conclusion
    };
    // the four cases
    assert_eq!(sd(5, 1), Conclusion::SiltingDiscrete);
    assert_eq!(sd(1, 9), Conclusion::SiltingDiscrete);
    for r in 2..=4 {
        assert_eq!(sd(r, 2), Conclusion::SiltingDiscrete);
    }
    for n in 2..=4 {
        assert_eq!(sd(2, n), Conclusion::SiltingDiscrete);
    }
    assert_eq!(sd(5, 2), Conclusion::NotSiltingDiscrete);
    assert_eq!(sd(3, 3), Conclusion::NotSiltingDiscrete);
    assert_eq!(sd(2, 5), Conclusion::NotSiltingDiscrete);
    let tagged = tensor_product(&truncated_polynomial(2).unwrap(), &path_algebra_linear(2).unwrap()).unwrap();
    let v = classify_silting_discreteness(&tagged, 1).unwrap();
    assert_eq!((v.conclusion, v.rule), (Conclusion::SiltingDiscrete, RuleId::S3));
    let unknown = classify_silting_discreteness(&path_algebra_linear(3).unwrap(), 2).unwrap();
    assert_eq!((unknown.conclusion, unknown.rule), (Conclusion::Unknown, RuleId::S4));
}

#[test]
fn hypotheses_are_enforced() {
    let two = Quiver::new(["1", "2"], Vec::<(String, String, String)>::new()).unwrap();
    let disconnected = BoundPresentation::new(two, Vec::new(), 2, FieldSpec::default()).unwrap();
    assert!(matches!(classify_tn_tau_finiteness(&disconnected, 2), Err(Error::Hypothesis(_))));
    assert!(matches!(classify_tn_tau_finiteness(&ground_field(), 0), Err(Error::Hypothesis(_))));
    assert!(matches!(classify_silting_discreteness(&disconnected, 1), Err(Error::Hypothesis(_))));
}

#[test]
fn provenance_table_is_fixed() {
    for rule in RuleId::ALL {
        let p = provenance(rule);
        assert_eq!(p.is_none(), matches!(rule, RuleId::R8 | RuleId::S4), "{rule:?}");
    }
    assert_eq!(provenance(RuleId::R1), provenance(RuleId::S1));
    let v = classify_tn_tau_finiteness(&radical_square_truncation(&path_algebra_linear(3).unwrap()), 3).unwrap();
    assert_eq!(v.provenance, provenance(RuleId::R3));
}

fn random_presentation() -> impl Strategy<Value = BoundPresentation> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..7), 2usize..=3))
        .prop_map(|(n, edges, cap)| {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let arrows: Vec<(String, String, String)> = edges
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| (format!("a{k}"), names[s].clone(), names[t].clone()))
                .collect();
            let q = Quiver::new(names.clone(), arrows).unwrap();
            BoundPresentation::new(q, Vec::new(), cap, FieldSpec::default()).unwrap()
        })
        .prop_filter("connected", |p| p.quiver.is_connected())
}

/// Independent restatement of each rule's hypotheses.
fn applies(rule: RuleId, p: &BoundPresentation, n: usize) -> bool {
    let q = &p.quiver;
    let v = q.vertex_count();
    match rule {
        RuleId::R1 => v == 1,
        RuleId::R2 => v > 1 && n >= 5,
        RuleId::R3 => n >= 3 && v >= 3 && !q.has_loop(),
        RuleId::R4 => n >= 3 && v == 2 && !q.has_loop(),
        RuleId::R5 => n == 2 && q.is_linear_an_shape() && p.dimension().unwrap() == v * (v + 1) / 2,
        RuleId::R6 => {
            n == 2
                && !q.has_loop()
                && component_types(&separated_quiver(q).quiver).iter().any(|(_, t)| !t.is_type_a())
        }
        RuleId::R7 => false,
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_input_matches_exactly_its_first_rule(p in random_presentation(), n in 1usize..7) {
        let base = reduce_two_cycle(&p, n).map(|r| r.presentation).unwrap_or_else(|| p.clone());
        let v = classify_tn_tau_finiteness(&p, n).unwrap();
        let order = [RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7, RuleId::R8];
        let first = order.iter().copied().find(|&r| applies(r, &base, n)).unwrap();
        prop_assert_eq!(v.rule, first);
        prop_assert_eq!(v.provenance.is_none(), v.conclusion == Conclusion::Unknown);
        prop_assert_eq!(v.reductions.len(), usize::from(reduce_two_cycle(&p, n).is_some()));
    }

    #[test]
    fn reduction_keeps_vertices_and_shrinks(r in 1usize..3, cap in 2usize..6, n in 1usize..5) {
        let cyc = nakayama(2, true, cap).unwrap();
        let red = reduce_two_cycle(&cyc, n).unwrap().presentation;
        prop_assert_eq!(red.vertex_count(), 2);
        let (d, e) = (cyc.dimension().unwrap(), red.dimension().unwrap());
        prop_assert!(e < d || cyc.is_radical_square_zero().unwrap());
        prop_assert!(reduce_two_cycle(&nakayama(r + 2, true, cap).unwrap(), n).is_none());
    }
}
