mod common;

use chordal::generate::random_chordal;
use chordal::separators::{clique_tree_union, non_loop_edges, separating_pair_edges, tree_labels};
use chordal::{minimal_separators_lattice, minimal_separators_oracle, reduced_clique_graph, FamilyLattice, Graph};
use proptest::prelude::*;

fn check_separators(g: &Graph, with_union: bool) -> Result<(), TestCaseError> {
    let lattice = FamilyLattice::from_graph(g).unwrap();
    let cg = lattice.clique_graph();
    let seps = minimal_separators_lattice(&lattice);
    prop_assert_eq!(&seps, &minimal_separators_oracle(g).unwrap());
    for s in &seps {
        prop_assert!(g.is_complete_set(s));
        let f = lattice.family_id_of(s).unwrap();
        prop_assert_eq!(&lattice.family(f).max_generator, s);
        prop_assert!(lattice.graphs(f).b.vertex_count() >= 2);
        prop_assert!(cg.edges().iter().any(|e| &e.label == s));
    }
    if with_union {
        let union = clique_tree_union(g).unwrap();
        prop_assert_eq!(&union.edges, &non_loop_edges(&lattice));
        prop_assert_eq!(&union.edges, &separating_pair_edges(g, cg));
        // the label-only reduced graph can only add loops of some B_F
        let reduced = reduced_clique_graph(cg, &seps);
        prop_assert!(union.edges.iter().all(|e| reduced.edges.contains(e)));
        for &e in reduced.edges.iter().filter(|e| !union.edges.contains(e)) {
            let f = lattice.edge_family(e);
            let gr = lattice.graphs(f);
            let edge = cg.edge(e);
            prop_assert_eq!(gr.class_of(edge.a), gr.class_of(edge.b));
        }
        for labels in &union.label_sets {
            prop_assert_eq!(labels, &seps);
        }
        let t = chordal::trees::first_clique_tree(&lattice);
        prop_assert_eq!(tree_labels(cg, &t), seps);
    }
    Ok(())
}

#[test]
fn separators_exhaustive() {
    for g in common::corpus(6, 0, 0, 0) {
        check_separators(&g, true).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn separators_random(n in 7usize..=12, seed in any::<u64>()) {
        check_separators(&random_chordal(&mut common::rng(seed), n), n <= 9)?;
    }
}
