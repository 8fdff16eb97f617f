//! Numeric properties of the Gaussian oracle over random models: positive
//! definiteness, correlation bounds, and exact vanishing under separation.

mod common;

use common::pair_triples;
use polydep_core::{
    covariance, partial_correlation, random_model, random_polytree, sep_polytree, VarSet,
};

#[test]
fn covariances_are_positive_definite() {
    for seed in 0..100 {
        let pt = random_polytree(2 + (seed as usize % 8), seed).unwrap();
        let model = random_model(&pt, seed ^ 0xbeef);
        assert!(covariance(&model).is_positive_definite());
    }
}

#[test]
fn partial_correlations_stay_in_unit_range() {
    for seed in 0..60 {
        let pt = random_polytree(2 + (seed as usize % 6), seed).unwrap();
        let model = random_model(&pt, seed);
        let cov = covariance(&model);
        for (a, b, z) in pair_triples(pt.as_dag()) {
            let rho = partial_correlation(&cov, a, b, &z).unwrap();
            assert!(
                (-1.0 - 1e-12..=1.0 + 1e-12).contains(&rho),
                "rho={rho} out of range"
            );
        }
    }
}

#[test]
fn separation_forces_zero_partial_correlation() {
    for seed in 0..60 {
        let pt = random_polytree(2 + (seed as usize % 6), seed).unwrap();
        let model = random_model(&pt, seed.wrapping_mul(31));
        let cov = covariance(&model);
        for (a, b, z) in pair_triples(pt.as_dag()) {
            if sep_polytree(&pt, a, b, &z).unwrap() {
                let rho = partial_correlation(&cov, a, b, &z).unwrap();
                assert!(rho.abs() < 1e-9, "sep triple with rho={rho}");
            }
        }
    }
}

#[test]
fn correlation_is_symmetric_in_the_pair() {
    for seed in 0..30 {
        let pt = random_polytree(3 + (seed as usize % 4), seed).unwrap();
        let model = random_model(&pt, seed);
        let cov = covariance(&model);
        for (a, b, z) in pair_triples(pt.as_dag()) {
            assert_eq!(
                partial_correlation(&cov, a, b, &z).unwrap(),
                partial_correlation(&cov, b, a, &z).unwrap()
            );
        }
    }
}

#[test]
fn marginal_correlation_reduces_to_correlation() {
    let pt = random_polytree(4, 11).unwrap();
    let model = random_model(&pt, 5);
    let cov = covariance(&model);
    let ids: Vec<_> = pt.node_ids().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let rho = partial_correlation(&cov, a, b, &VarSet::empty()).unwrap();
            let direct = cov.get(a, b) / (cov.get(a, a) * cov.get(b, b)).sqrt();
            assert!((rho - direct).abs() < 1e-12);
        }
    }
}
