//! The closure-equivalence self test: over seeded random polytrees of 3 to 5
//! nodes, every disjoint triple must be certified by the path criterion
//! exactly when its dependence statement is in the rule closure of the
//! dependence base. CI and users share this entry point.

use polydep_core::{
    canonical_triples, cwt_closure, dep, dependence_base, random_polytree, Polytree, Statement,
};

use crate::format::statement_text;

/// The i-th corpus graph: 3 to 5 nodes in rotation, seeded off `seed`.
pub fn corpus_graph(i: usize, seed: u64) -> Polytree {
    let n = 3 + (i % 3);
    random_polytree(n, seed.wrapping_add(i as u64)).expect("n >= 3")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub graphs: usize,
    pub triples: usize,
    pub mismatches: usize,
    /// Up to ten rendered examples of mismatching triples.
    pub examples: Vec<String>,
}

pub fn closure_equivalence(graphs: usize, seed: u64) -> SelftestSummary {
    let mut summary = SelftestSummary {
        graphs,
        triples: 0,
        mismatches: 0,
        examples: Vec::new(),
    };
    for i in 0..graphs {
        let n = 3 + (i % 3);
        let graph_seed = seed.wrapping_add(i as u64);
        let pt = corpus_graph(i, seed);
        let base = dependence_base(&pt, &pt.topological_order()).expect("canonical order");
        let closure = cwt_closure(&pt, &base).expect("n <= 5");
        for (x, y, z) in canonical_triples(&pt.all_nodes()) {
            summary.triples += 1;
            let statement =
                Statement::dependence(x.clone(), y.clone(), z.clone()).expect("disjoint");
            let in_closure = closure.contains(&statement);
            let certified = dep(&pt, &x, &y, &z).expect("valid triple").is_some();
            if in_closure != certified {
                summary.mismatches += 1;
                if summary.examples.len() < 10 {
                    summary.examples.push(format!(
                        "seed {graph_seed}, n {n}: {} (closure: {in_closure}, criterion: {certified})",
                        statement_text(pt.as_dag(), &statement)
                    ));
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean() {
        let summary = closure_equivalence(9, 42);
        assert_eq!(summary.mismatches, 0, "{:?}", summary.examples);
        assert!(summary.triples > 0);
    }
}
