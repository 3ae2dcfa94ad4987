//! Clique trees of chordal graphs and block-factor Shearer laws.
//!
//! A connected chordal graph is turned into its clique graph and the
//! lattice of clique families `F(C)`. Every clique tree splits uniquely into
//! one spanning tree per family multigraph `B_F`, which gives exact counts,
//! a streaming enumerator and a bijection with per-family choices. The
//! [`shearer`] module builds tree orders from clique trees and uses them to
//! construct and verify Shearer's law.

pub mod recognition;
pub mod cliques;
pub mod error;
pub mod generate;
pub mod graph;
pub mod lattice;
pub mod separators;
pub mod shearer;
pub mod trees;
mod util;
pub mod validate;

pub use recognition::{
    chordless_cycle, find_two_chord, is_chordal, maximum_cardinality_search, require_chordal, ChordalityVerdict, Peo,
};
pub use cliques::{build_clique_graph, enumerate_cliques, Clique, CliqueEdge, CliqueGraph, CliqueId, EdgeId};
pub use error::{Error, Result};
pub use graph::{parse_graph, Cycle, Graph, MultiEdge, Multigraph, ParsedGraph, VertexId};
pub use lattice::{edge_partition, enumerate_families, family_graphs, family_of, CliqueFamily, FamilyId, FamilyLattice};
pub use separators::{minimal_separators_lattice, minimal_separators_oracle, reduced_clique_graph, SeparatorSet};
pub use trees::{
    assemble, count_clique_trees, count_spanning_trees, decompose, enumerate_clique_trees, spanning_trees_stream,
    CliqueTree, CliqueTreeEnumerator, FamilyChoice,
};
pub use validate::{validate_all, Validation, Violation};

/// Version string carried by every JSON document the CLI emits.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
