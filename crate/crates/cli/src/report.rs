use chordal::shearer::NotInRegion;
use chordal::{CliqueGraph, Error, Graph};
use serde_json::{json, Value};

/// Exit codes.
pub const OK: u8 = 0;
pub const VALIDATION_FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const DOMAIN: u8 = 3;

/// Output of one subcommand. `json` is the document root without the
/// version field, which `main` adds.
pub struct Report {
    pub json: Value,
    pub human: String,
    pub code: u8,
}

impl Report {
    pub fn ok(json: Value, human: String) -> Self {
        Report { json, human, code: OK }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub witness: Value,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            kind: "usage",
            message: message.into(),
            witness: Value::Null,
        }
    }

    /// Wraps a library error, translating vertex ids to names where the
    /// witness mentions vertices.
    pub fn from_error(e: Error, g: Option<&Graph>) -> Self {
        let message = e.to_string();
        let name = |v: usize| -> Value {
            match g {
                Some(g) if v < g.vertex_count() => json!(g.name(v)),
                _ => json!(v),
            }
        };
        let (code, kind, witness) = match e {
            Error::Parse { line, reason } => (USAGE, "parse", json!({ "line": line, "reason": reason })),
            Error::LoopEdge { line, name } => (USAGE, "loop_edge", json!({ "line": line, "vertex": name })),
            Error::UnknownVertex(name) => (USAGE, "unknown_vertex", json!({ "vertex": name })),
            Error::InvalidProbability { vertex, value } => (
                USAGE,
                "invalid_probability",
                json!({ "vertex": name(vertex), "value": value }),
            ),
            Error::DimensionMismatch { expected, found } => (
                USAGE,
                "dimension_mismatch",
                json!({ "expected": expected, "found": found }),
            ),
            Error::EmptyGraph => (DOMAIN, "empty_graph", Value::Null),
            Error::Disconnected { components } => (DOMAIN, "disconnected", json!({ "components": components })),
            Error::NotChordal(cycle) => (
                DOMAIN,
                "not_chordal",
                json!({ "cycle": cycle.vertices.iter().map(|&v| name(v)).collect::<Vec<_>>() }),
            ),
            Error::NotInRegion(NotInRegion { vertex, value }) => (
                DOMAIN,
                "not_in_region",
                json!({ "vertex": name(vertex), "coupling": value }),
            ),
            Error::NotStrictlyInside { vertex } => (DOMAIN, "not_strictly_inside", json!({ "vertex": name(vertex) })),
            Error::SizeGate { what, n, limit } => (
                DOMAIN,
                "size_gate",
                json!({ "operation": what, "vertices": n, "limit": limit }),
            ),
            Error::NotACliqueTree(v) => (DOMAIN, "not_a_clique_tree", json!(v)),
            Error::NotACliqueGraphEdge(a, b) => (DOMAIN, "not_a_clique_graph_edge", json!([a, b])),
            Error::InvalidClique(k) => (DOMAIN, "invalid_clique", json!({ "clique": k })),
            Error::InvalidOrder(reason) => (DOMAIN, "invalid_order", json!({ "reason": reason })),
            _ => (DOMAIN, "domain", Value::Null),
        };
        Failure {
            code,
            kind,
            message,
            witness,
        }
    }

    pub fn json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "witness": self.witness } })
    }
}

pub type Outcome = Result<Report, Failure>;

pub fn names(g: &Graph, set: &[usize]) -> Vec<String> {
    g.names_of(set)
}

/// `{a,b,c}`.
pub fn braces(g: &Graph, set: &[usize]) -> String {
    format!("{{{}}}", names(g, set).join(","))
}

pub fn clique_names(cg: &CliqueGraph, g: &Graph) -> Vec<Vec<String>> {
    cg.cliques().iter().map(|c| names(g, &c.members)).collect()
}
