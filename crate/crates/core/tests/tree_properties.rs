mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use chordal::generate::random_chordal;
use chordal::trees::first_clique_tree;
use chordal::validate::{rip_ordering, validate_rip};
use chordal::{
    assemble, count_clique_trees, count_spanning_trees, decompose, spanning_trees_stream, validate_all,
    CliqueTreeEnumerator, FamilyLattice, Graph, MultiEdge, Multigraph,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn check_trees(g: &Graph) -> Result<(), TestCaseError> {
    let lattice = Arc::new(FamilyLattice::from_graph(g).unwrap());
    let cg = lattice.clique_graph();
    let candidates = common::clique_graph_spanning_trees(cg);
    let mut valid = BTreeSet::new();
    for t in &candidates {
        let v = validate_all(&lattice, t);
        prop_assert!(v.all_agree(), "validators disagree on {:?}: {:?}", t, v);
        prop_assert_eq!(v.definition.is_ok(), decompose(&lattice, t).is_ok());
        if let Ok(Some(root)) = v.rip {
            let ordering = rip_ordering(cg, t, root).unwrap();
            let witnesses = validate_rip(cg, &ordering.order, Some(&ordering.parents)).unwrap();
            // the witnesses reproduce exactly the edges of t
            let mut edges: Vec<usize> = witnesses
                .iter()
                .enumerate()
                .filter_map(|(i, w)| w.map(|j| cg.edge_between(ordering.order[i], ordering.order[j]).unwrap()))
                .collect();
            edges.sort_unstable();
            prop_assert_eq!(&edges, &t.edges);
        }
        if v.definition.is_ok() {
            valid.insert(t.clone());
        }
    }

    let emitted: Vec<_> = CliqueTreeEnumerator::new(lattice.clone()).collect();
    let emitted_set: BTreeSet<_> = emitted.iter().cloned().collect();
    prop_assert_eq!(emitted.len(), emitted_set.len());
    prop_assert_eq!(&emitted_set, &valid);
    prop_assert_eq!(count_clique_trees(g).unwrap(), BigUint::from(valid.len()));
    prop_assert!(valid.contains(&first_clique_tree(&lattice)));

    let labels = |t: &chordal::CliqueTree| -> BTreeSet<Vec<usize>> {
        t.edges.iter().map(|&e| cg.edge(e).label.clone()).collect()
    };
    let reference = labels(&emitted[0]);
    for t in &emitted {
        let choice = decompose(&lattice, t).unwrap();
        prop_assert_eq!(&assemble(&lattice, &choice).unwrap(), t);
        prop_assert_eq!(labels(t), reference.clone());
    }

    for gr in lattice.all_graphs() {
        let streamed = spanning_trees_stream(&gr.b).unwrap().count();
        prop_assert_eq!(count_spanning_trees(&gr.b), BigUint::from(streamed));
    }
    Ok(())
}

#[test]
fn trees_exhaustive_small() {
    for g in common::corpus(5, 0, 0, 0) {
        check_trees(&g).unwrap();
    }
}

#[test]
fn enumerator_state_is_fixed_size() {
    // star of four triangles around vertex 0: one family with 4 cliques
    let g = Graph::from_edges(
        9,
        &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6), (0, 7), (0, 8), (7, 8)],
    )
    .unwrap();
    let lattice = Arc::new(FamilyLattice::from_graph(&g).unwrap());
    let mut it = CliqueTreeEnumerator::new(lattice.clone());
    let lists: Vec<usize> = it.state().local_trees.iter().map(Vec::len).collect();
    let mut emitted = 0;
    loop {
        let state = it.state();
        assert!(std::ptr::eq(state.lattice, &*lattice));
        assert_eq!(state.local_trees.iter().map(Vec::len).collect::<Vec<_>>(), lists);
        match state.choice_indices {
            Some(idx) => assert_eq!(idx.len(), lattice.len()),
            None => break,
        }
        it.next().unwrap();
        emitted += 1;
    }
    assert_eq!(emitted, 16);
    assert!(it.next().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn trees_random(n in 1usize..=9, seed in any::<u64>()) {
        check_trees(&random_chordal(&mut common::rng(seed), n))?;
    }

    #[test]
    fn matrix_tree_on_random_multigraphs(
        n in 1usize..=6,
        raw in prop::collection::vec((0usize..6, 0usize..6), 0..14),
    ) {
        let edges: Vec<MultiEdge> = raw
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| MultiEdge { u: u % n, v: v % n, label: i })
            .collect();
        let m = Multigraph::new(n, edges).unwrap();
        let count = count_spanning_trees(&m);
        match spanning_trees_stream(&m) {
            Ok(stream) => {
                let trees: Vec<_> = stream.collect();
                let distinct: BTreeSet<_> = trees.iter().cloned().collect();
                prop_assert_eq!(distinct.len(), trees.len());
                prop_assert_eq!(count, BigUint::from(trees.len()));
            }
            Err(_) => prop_assert_eq!(count, BigUint::from(0u32)),
        }
    }
}
