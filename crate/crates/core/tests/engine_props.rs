//! Closure engine properties: the closure contains its base, is a fixpoint,
//! never contradicts separation, and matches the path criterion on small
//! universes (the full corpus lives in the acceptance suite).

mod common;

use common::canonical_set_triples;
use polydep_core::{
    apply_rule, cwt_closure, dep, dependence_base, random_polytree, sep_dag, GraphSepOracle,
    RuleId, Statement,
};

#[test]
fn closure_contains_base_and_is_a_fixpoint() {
    for seed in 0..40 {
        let pt = random_polytree(2 + (seed as usize % 4), seed).unwrap();
        let base = dependence_base(&pt, &pt.topological_order()).unwrap();
        let closure = cwt_closure(&pt, &base).unwrap();
        assert!(closure.is_superset(&base));
        // Feeding the closure back in adds nothing.
        let again = cwt_closure(&pt, &closure).unwrap();
        assert_eq!(again, closure);
    }
}

#[test]
fn closure_statements_are_valid_and_consistent_with_sep() {
    for seed in 0..40 {
        let pt = random_polytree(2 + (seed as usize % 4), seed).unwrap();
        let base = dependence_base(&pt, &pt.topological_order()).unwrap();
        for s in &cwt_closure(&pt, &base).unwrap() {
            assert!(!s.x().is_empty() && !s.y().is_empty());
            assert!(s.x().is_disjoint(s.y()));
            assert!(s.x().is_disjoint(s.z()));
            assert!(s.y().is_disjoint(s.z()));
            assert!(
                !sep_dag(pt.as_dag(), s.x(), s.y(), s.z()).unwrap(),
                "a separated statement in the closure would break soundness: {s}"
            );
        }
    }
}

#[test]
fn closure_matches_criterion_on_small_graphs() {
    // Spot check of the main equivalence; the acceptance suite runs the full
    // 300-graph corpus.
    for seed in 0..30 {
        let n = 3 + (seed as usize % 3);
        let pt = random_polytree(n, seed).unwrap();
        let base = dependence_base(&pt, &pt.topological_order()).unwrap();
        let closure = cwt_closure(&pt, &base).unwrap();
        for (x, y, z) in canonical_set_triples(pt.as_dag()) {
            let statement = Statement::dependence(x.clone(), y.clone(), z.clone()).unwrap();
            let in_closure = closure.contains(&statement);
            let certified = dep(&pt, &x, &y, &z).unwrap().is_some();
            assert_eq!(in_closure, certified, "n={n} seed={seed} {statement}");
        }
    }
}

#[test]
fn base_statements_are_certified_by_the_criterion() {
    for seed in 0..100 {
        let pt = random_polytree(2 + (seed as usize % 6), seed).unwrap();
        let base = dependence_base(&pt, &pt.topological_order()).unwrap();
        for s in &base {
            assert!(
                dep(&pt, s.x(), s.y(), s.z()).unwrap().is_some(),
                "base statement {s} must be certified"
            );
        }
    }
}

#[test]
fn rule_firings_stay_inside_the_closure() {
    // One-step closedness, rule by rule: anything a rule derives from
    // closure members is already a member.
    for seed in 0..15 {
        let pt = random_polytree(3 + (seed as usize % 3), seed).unwrap();
        let universe = pt.all_nodes();
        let base = dependence_base(&pt, &pt.topological_order()).unwrap();
        let closure = cwt_closure(&pt, &base).unwrap();
        let members: Vec<Statement> = closure.iter().cloned().collect();
        let mut oracle = GraphSepOracle::new(pt.as_dag());
        for s in &members {
            for rule in [
                RuleId::Symmetry,
                RuleId::Decomposition,
                RuleId::WeakUnion,
                RuleId::Contraction1,
                RuleId::Contraction2,
                RuleId::Intersection,
                RuleId::Composition,
            ] {
                for t in
                    apply_rule(rule, std::slice::from_ref(s), &mut oracle, &universe).unwrap()
                {
                    assert!(closure.contains(&t), "{rule} escaped the fixpoint: {t}");
                }
            }
            for other in &members {
                for rule in [RuleId::WeakTransitivity1, RuleId::WeakTransitivity2] {
                    for t in
                        apply_rule(rule, &[s.clone(), other.clone()], &mut oracle, &universe)
                            .unwrap()
                    {
                        assert!(closure.contains(&t), "{rule} escaped the fixpoint: {t}");
                    }
                }
            }
        }
    }
}
