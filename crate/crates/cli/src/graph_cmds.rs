use std::sync::Arc;

use chordal::separators::non_loop_edges;
use chordal::validate::{
    rip_ordering, rip_root, validate_cip, validate_definition, validate_local_max_weight, validate_rip, Violation,
};
use chordal::{
    count_spanning_trees, is_chordal, minimal_separators_lattice, minimal_separators_oracle, reduced_clique_graph,
    ChordalityVerdict, CliqueGraph, CliqueTree, CliqueTreeEnumerator, FamilyLattice, Graph,
};
use serde_json::{json, Value};

use crate::report::{braces, clique_names, names, Failure, Outcome, Report, DOMAIN, VALIDATION_FAILED};
use crate::Criterion;

fn lattice(g: &Graph) -> Result<FamilyLattice, Failure> {
    FamilyLattice::from_graph(g).map_err(|e| Failure::from_error(e, Some(g)))
}

fn tree_json(t: &CliqueTree, cg: &CliqueGraph, g: &Graph) -> Value {
    json!(t.named_pairs(cg, g))
}

fn tree_human(t: &CliqueTree, cg: &CliqueGraph, g: &Graph) -> String {
    t.clique_pairs(cg)
        .iter()
        .map(|&(a, b)| format!("{}-{}", braces(g, &cg.clique(a).members), braces(g, &cg.clique(b).members)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn check_chordal(g: &Graph) -> Outcome {
    match is_chordal(g).map_err(|e| Failure::from_error(e, Some(g)))? {
        ChordalityVerdict::Chordal(peo) => Ok(Report::ok(
            json!({ "chordal": true, "peo": names(g, peo.order()), "cycle": null }),
            format!("chordal\nperfect elimination ordering: {}\n", names(g, peo.order()).join(" ")),
        )),
        ChordalityVerdict::NotChordal(cycle) => Ok(Report {
            json: json!({ "chordal": false, "peo": null, "cycle": names(g, &cycle.vertices) }),
            human: format!("not chordal\nchordless cycle: {}\n", names(g, &cycle.vertices).join(" ")),
            code: DOMAIN,
        }),
    }
}

pub fn cliques(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let cg = l.clique_graph();
    let human: String = cg.cliques().iter().map(|c| braces(g, &c.members) + "\n").collect();
    Ok(Report::ok(json!({ "cliques": clique_names(cg, g) }), human))
}

pub fn clique_graph(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let cg = l.clique_graph();
    let mut human = String::new();
    for (k, c) in cg.cliques().iter().enumerate() {
        human.push_str(&format!("K{k} {}\n", braces(g, &c.members)));
    }
    let edges: Vec<Value> = cg
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            human.push_str(&format!("e{e} K{}-K{} {}\n", edge.a, edge.b, braces(g, &edge.label)));
            json!({ "id": e, "a": edge.a, "b": edge.b, "label": names(g, &edge.label) })
        })
        .collect();
    Ok(Report::ok(json!({ "cliques": clique_names(cg, g), "edges": edges }), human))
}

pub fn families(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let export = l.export(g);
    let mut human = String::new();
    for f in &export.families {
        let members: Vec<String> = f.members.iter().map(|k| format!("K{k}")).collect();
        human.push_str(&format!(
            "F{} {{{}}} max generator {{{}}} R {}/{} S {}/{} B {}/{} loops {}\n",
            f.id,
            members.join(","),
            f.max_generator.join(","),
            f.r.vertices,
            f.r.edges,
            f.s.vertices,
            f.s.edges,
            f.b.vertices,
            f.b.edges,
            f.b.loops
        ));
    }
    Ok(Report::ok(json!(export), human))
}

pub fn partition(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let cg = l.clique_graph();
    let mut human = String::new();
    let families: Vec<Value> = l
        .all_graphs()
        .iter()
        .map(|gr| {
            let fam = l.family(gr.family);
            let b_edges: Vec<Value> = gr
                .b
                .edges()
                .iter()
                .map(|me| json!({ "u": me.u, "v": me.v, "edge": me.label, "loop": me.is_loop() }))
                .collect();
            human.push_str(&format!(
                "F{} max generator {} R {:?} S {:?} classes {:?}\n",
                gr.family,
                braces(g, &fam.max_generator),
                gr.r_edges,
                gr.s_edges,
                gr.classes
            ));
            json!({
                "id": gr.family,
                "members": fam.members,
                "max_generator": names(g, &fam.max_generator),
                "r_edges": gr.r_edges,
                "s_edges": gr.s_edges,
                "classes": gr.classes,
                "b": { "vertices": gr.b.vertex_count(), "edges": b_edges },
            })
        })
        .collect();
    let edges: Vec<Value> = cg
        .edges()
        .iter()
        .map(|e| json!({ "a": e.a, "b": e.b, "family": l.family_id_of(&e.label).ok() }))
        .collect();
    Ok(Report::ok(
        json!({ "cliques": clique_names(cg, g), "edges": edges, "families": families }),
        human,
    ))
}

pub fn count_trees(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let per: Vec<_> = l.all_graphs().iter().map(|gr| count_spanning_trees(&gr.b)).collect();
    let total = chordal::trees::count_clique_trees_in(&l);
    let families: Vec<Value> = per
        .iter()
        .enumerate()
        .map(|(f, c)| json!({ "family": f, "spanning_trees": c.to_string() }))
        .collect();
    Ok(Report::ok(
        json!({ "count": total.to_string(), "families": families }),
        format!("{total}\n"),
    ))
}

pub fn enum_trees(g: &Graph, limit: Option<usize>) -> Outcome {
    let l = Arc::new(lattice(g)?);
    let cg = l.clique_graph().clone();
    let mut it = CliqueTreeEnumerator::new(l);
    let mut trees = Vec::new();
    let mut human = String::new();
    let limit = limit.unwrap_or(usize::MAX);
    while trees.len() < limit {
        let Some(t) = it.next() else { break };
        human.push_str(&tree_human(&t, &cg, g));
        human.push('\n');
        trees.push(tree_json(&t, &cg, g));
    }
    let truncated = it.state().choice_indices.is_some();
    if truncated {
        human.push_str("# truncated\n");
    }
    Ok(Report::ok(
        json!({ "cliques": clique_names(&cg, g), "trees": trees, "truncated": truncated }),
        human,
    ))
}

/// Reads one tree (`[[K, K], ...]` or `{"edges": ...}`) or several
/// (`{"trees": [...]}`, as printed by `enum-trees`).
fn read_trees(text: &str, cg: &CliqueGraph, g: &Graph) -> Result<Vec<CliqueTree>, Failure> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("tree file: {e}")))?;
    let raw: Vec<Value> = match &doc {
        Value::Array(_) => vec![doc.clone()],
        Value::Object(map) => match (map.get("trees"), map.get("edges")) {
            (Some(Value::Array(ts)), _) => ts.clone(),
            (_, Some(edges)) => vec![edges.clone()],
            _ => return Err(Failure::usage("tree file: expected `trees` or `edges`")),
        },
        _ => return Err(Failure::usage("tree file: expected an array or object")),
    };
    raw.iter()
        .map(|t| {
            let pairs: Vec<[Vec<String>; 2]> =
                serde_json::from_value(t.clone()).map_err(|e| Failure::usage(format!("tree file: {e}")))?;
            let mut ids = Vec::with_capacity(pairs.len());
            for [a, b] in &pairs {
                ids.push((clique_id(a, cg, g)?, clique_id(b, cg, g)?));
            }
            CliqueTree::from_clique_pairs(cg, &ids).map_err(|e| Failure::from_error(e, Some(g)))
        })
        .collect()
}

fn clique_id(members: &[String], cg: &CliqueGraph, g: &Graph) -> Result<usize, Failure> {
    let mut ids = members
        .iter()
        .map(|m| g.vertex_by_name(m).ok_or_else(|| Failure::usage(format!("tree file: unknown vertex `{m}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    ids.sort_unstable();
    cg.find_clique(&ids)
        .ok_or_else(|| Failure::usage(format!("tree file: {{{}}} is not a clique", members.join(","))))
}

fn violation_json(v: &Violation, l: &FamilyLattice, g: &Graph) -> Value {
    let cg = l.clique_graph();
    let clique = |k: usize| names(g, &cg.clique(k).members);
    let named = match v {
        Violation::Cip { k1, k2, k3 } => json!({ "k1": clique(*k1), "k2": clique(*k2), "k3": clique(*k3) }),
        Violation::Rip { clique: k, .. } => json!({ "clique": clique(*k) }),
        Violation::VertexSubtree { vertex, .. } => json!({ "vertex": g.name(*vertex) }),
        Violation::FamilyTree { family, .. } | Violation::MaxWeight { family, .. } => {
            json!({ "max_generator": names(g, &l.family(*family).max_generator) })
        }
        _ => Value::Null,
    };
    json!({ "message": v.to_string(), "detail": v, "named": named })
}

pub fn validate_tree(g: &Graph, tree_text: &str, criterion: Criterion) -> Outcome {
    let l = lattice(g)?;
    let cg = l.clique_graph();
    let trees = read_trees(tree_text, cg, g)?;
    let mut all = true;
    let mut human = String::new();
    let mut out = Vec::new();
    for t in &trees {
        let mut results = serde_json::Map::new();
        let mut lines = Vec::new();
        let mut record = |name: &str, verdict: Result<Value, Violation>| {
            let passed = verdict.is_ok();
            let (entry, line) = match verdict {
                Ok(extra) => (json!({ "passed": true, "violation": null, "root": extra }), "pass".to_string()),
                Err(v) => {
                    let line = format!("FAIL: {v}");
                    (json!({ "passed": false, "violation": violation_json(&v, &l, g) }), line)
                }
            };
            results.insert(name.to_string(), entry);
            lines.push(format!("  {name}: {line}"));
            passed
        };
        let mut passed = true;
        let want = |c: Criterion| criterion == Criterion::All || criterion == c;
        if want(Criterion::Def) {
            passed &= record("definition", validate_definition(cg, t).map(|_| Value::Null));
        }
        if want(Criterion::Cip) {
            passed &= record("cip", validate_cip(cg, t).map(|_| Value::Null));
        }
        if want(Criterion::Rip) {
            let verdict = match rip_root(cg, t) {
                Ok(Some(root)) => Ok(json!(names(g, &cg.clique(root).members))),
                // no root works; report the failure for the first root
                Ok(None) => rip_ordering(cg, t, 0).and_then(|o| {
                    validate_rip(cg, &o.order, Some(&o.parents)).map(|_| Value::Null)
                }),
                Err(v) => Err(v),
            };
            passed &= record("rip", verdict);
        }
        if want(Criterion::Maxw) {
            passed &= record("max_weight", validate_local_max_weight(&l, t).map(|_| Value::Null));
        }
        all &= passed;
        human.push_str(&format!("{} {}\n", if passed { "valid" } else { "invalid" }, tree_human(t, cg, g)));
        for line in lines {
            human.push_str(&line);
            human.push('\n');
        }
        out.push(json!({ "edges": tree_json(t, cg, g), "passed": passed, "results": results }));
    }
    Ok(Report {
        json: json!({ "trees": out, "passed": all }),
        human,
        code: if all { 0 } else { VALIDATION_FAILED },
    })
}

pub fn separators(g: &Graph, oracle: bool) -> Outcome {
    let l = lattice(g)?;
    let seps = minimal_separators_lattice(&l);
    let named: Vec<Vec<String>> = seps.iter().map(|s| names(g, s)).collect();
    let mut human: String = seps.iter().map(|s| braces(g, s) + "\n").collect();
    let mut code = 0;
    let (oracle_json, agree) = if oracle {
        let brute = minimal_separators_oracle(g).map_err(|e| Failure::from_error(e, Some(g)))?;
        let agree = brute == seps;
        if !agree {
            code = VALIDATION_FAILED;
        }
        human.push_str(&format!("# oracle {}\n", if agree { "agrees" } else { "DISAGREES" }));
        let named: Vec<Vec<String>> = brute.iter().map(|s| names(g, s)).collect();
        (json!(named), json!(agree))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(Report {
        json: json!({ "separators": named, "oracle": oracle_json, "agree": agree }),
        human,
        code,
    })
}

pub fn reduced_graph(g: &Graph) -> Outcome {
    let l = lattice(g)?;
    let cg = l.clique_graph();
    let reduced = reduced_clique_graph(cg, &minimal_separators_lattice(&l));
    let in_trees = non_loop_edges(&l);
    let pair = |e: usize| {
        let edge = cg.edge(e);
        [names(g, &cg.clique(edge.a).members), names(g, &cg.clique(edge.b).members)]
    };
    let mut human = String::new();
    for &e in &reduced.edges {
        let edge = cg.edge(e);
        let mark = if in_trees.contains(&e) { "" } else { " *" };
        human.push_str(&format!(
            "{}-{} {}{mark}\n",
            braces(g, &cg.clique(edge.a).members),
            braces(g, &cg.clique(edge.b).members),
            braces(g, &edge.label)
        ));
    }
    if reduced.edges.iter().any(|e| !in_trees.contains(e)) {
        human.push_str("# * lies in no clique tree\n");
    }
    let outside: Vec<_> = reduced.edges.iter().filter(|e| !in_trees.contains(e)).map(|&e| pair(e)).collect();
    Ok(Report::ok(
        json!({
            "edges": reduced.edges.iter().map(|&e| pair(e)).collect::<Vec<_>>(),
            "labels": reduced.edges.iter().map(|&e| names(g, &cg.edge(e).label)).collect::<Vec<_>>(),
            "outside_clique_trees": outside,
        }),
        human,
    ))
}
