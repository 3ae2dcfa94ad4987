use std::collections::BTreeMap;

use chordal::shearer::{
    c_from_p, default_tree_order, exact_block_factor_law, p_from_c, parse_vector, region_membership,
    verify_shearer_law, BlockFactorSampler, CheckWitness, CouplingVector, ProbVector, Scalar, TreeOrder,
};
use chordal::Graph;
use serde_json::{json, Value};

use crate::report::{names, Failure, Outcome, Report, VALIDATION_FAILED};
use crate::{Numeric, OrderArgs, ShearerCommand};

/// Reads a vector in the `name value` line format, or the JSON printed by
/// `c-from-p` / `p-from-c` (an object under `key` mapping names to values).
fn read_vector<T: Scalar>(text: &str, key: &str, g: &Graph) -> Result<Vec<T>, Failure> {
    let trimmed = text.trim_start();
    let lines = if trimmed.starts_with('{') {
        let doc: Value = serde_json::from_str(trimmed).map_err(|e| Failure::usage(format!("{key} file: {e}")))?;
        let map = doc
            .get(key)
            .and_then(Value::as_object)
            .ok_or_else(|| Failure::usage(format!("{key} file: no `{key}` object")))?;
        let mut out = String::new();
        for (name, value) in map {
            let value = match value {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(Failure::usage(format!("{key} file: bad value {other}"))),
            };
            out.push_str(&format!("{name} {value}\n"));
        }
        out
    } else {
        text.to_string()
    };
    parse_vector(&lines, g).map_err(|e| Failure::from_error(e, Some(g)))
}

fn order(g: &Graph, args: &OrderArgs) -> Result<TreeOrder, Failure> {
    default_tree_order(g, args.order_root).map_err(|e| Failure::from_error(e, Some(g)))
}

fn vector_json<T: Scalar>(values: &[T], g: &Graph) -> Value {
    let map: BTreeMap<&str, String> = values.iter().enumerate().map(|(v, x)| (g.name(v), x.to_string())).collect();
    json!(map)
}

fn vector_human<T: Scalar>(values: &[T], g: &Graph) -> String {
    chordal::shearer::format_vector(values, g)
}

fn linear_names(o: &TreeOrder, g: &Graph) -> Vec<String> {
    names(g, o.linear_extension())
}

fn bits(x: &[bool], o: &TreeOrder) -> String {
    o.linear_extension().iter().map(|&v| if x[v] { '1' } else { '0' }).collect()
}

fn witness_json(w: &CheckWitness, g: &Graph) -> Value {
    match w {
        CheckWitness::Subset(s) => json!({ "subset": names(g, s) }),
        CheckWitness::Vertex(v) => json!({ "vertex": g.name(*v) }),
        CheckWitness::Edge(u, v) => json!({ "edge": [g.name(*u), g.name(*v)] }),
        CheckWitness::Split { u, w, ones } => {
            json!({ "split": { "u": names(g, u), "w": names(g, w), "ones": names(g, ones) } })
        }
    }
}

pub fn run(g: &Graph, cmd: &ShearerCommand, read: &dyn Fn(&std::path::Path) -> Result<String, Failure>) -> Outcome {
    match cmd.order_args().numeric {
        Numeric::Exact => run_typed::<num_rational::BigRational>(g, cmd, read, "exact"),
        Numeric::Float => run_typed::<f64>(g, cmd, read, "float"),
    }
}

fn run_typed<T: Scalar>(
    g: &Graph,
    cmd: &ShearerCommand,
    read: &dyn Fn(&std::path::Path) -> Result<String, Failure>,
    numeric: &str,
) -> Outcome {
    let dom = |e: chordal::Error| Failure::from_error(e, Some(g));
    let prob = |path: &std::path::Path| -> Result<ProbVector<T>, Failure> {
        ProbVector::new(read_vector(&read(path)?, "prob", g)?).map_err(dom)
    };
    let coupling = |path: &std::path::Path| -> Result<CouplingVector<T>, Failure> {
        CouplingVector::new(read_vector(&read(path)?, "coupling", g)?).map_err(dom)
    };
    let args = cmd.order_args();
    let o = order(g, args)?;
    let head = json!({ "numeric": numeric, "order_root": args.order_root });
    let with = |extra: Value| {
        let mut doc = head.clone();
        doc.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
        doc
    };
    match cmd {
        ShearerCommand::Region { prob: path, .. } => {
            let p = prob(path)?;
            let verdict = region_membership(g, &o, &p).map_err(dom)?;
            let region = json!(verdict.region);
            let mut human = format!("{}\n", region.as_str().unwrap());
            if let Some(ob) = &verdict.obstruction {
                human.push_str(&format!("# {} ({})\n", ob, g.name(ob.vertex)));
            }
            Ok(Report::ok(
                with(json!({
                    "region": region,
                    "coupling": verdict.coupling.as_ref().map(|c| vector_json(c.values(), g)),
                    "obstruction": verdict.obstruction.as_ref().map(|ob| json!({
                        "vertex": g.name(ob.vertex),
                        "coupling": ob.value,
                    })),
                })),
                human,
            ))
        }
        ShearerCommand::CFromP { prob: path, .. } => {
            let p = prob(path)?;
            let c = c_from_p(g, &o, &p).map_err(dom)?;
            Ok(Report::ok(
                with(json!({ "coupling": vector_json(c.values(), g) })),
                vector_human(c.values(), g),
            ))
        }
        ShearerCommand::PFromC { coupling: path, .. } => {
            let c = coupling(path)?;
            let out = p_from_c(g, &o, &c).map_err(dom)?;
            Ok(Report::ok(
                with(json!({ "prob": vector_json(out.p.values(), g), "strict": out.strict })),
                format!("# strict: {}\n{}", out.strict, vector_human(out.p.values(), g)),
            ))
        }
        ShearerCommand::ExactLaw { coupling: path, .. } => {
            let c = coupling(path)?;
            let law = exact_block_factor_law(g, &o, &c).map_err(dom)?;
            let export = law.export();
            let mut human = format!("# order: {}\n", linear_names(&o, g).join(" "));
            for (k, v) in &export {
                human.push_str(&format!("{k} {v}\n"));
            }
            Ok(Report::ok(
                with(json!({ "linear_extension": linear_names(&o, g), "law": export })),
                human,
            ))
        }
        ShearerCommand::Sample {
            coupling: path,
            seed,
            samples,
            ..
        } => {
            let c = CouplingVector::new(read_vector::<f64>(&read(path)?, "coupling", g)?).map_err(dom)?;
            let mut sampler = BlockFactorSampler::new(g, &o, &c, *seed).map_err(dom)?;
            let draws: Vec<String> = (0..*samples).map(|_| bits(&sampler.sample(), &o)).collect();
            let mut human = format!("# order: {}\n", linear_names(&o, g).join(" "));
            for d in &draws {
                human.push_str(d);
                human.push('\n');
            }
            Ok(Report::ok(
                with(json!({
                    "numeric": "float",
                    "seed": seed,
                    "linear_extension": linear_names(&o, g),
                    "samples": draws,
                })),
                human,
            ))
        }
        ShearerCommand::Verify {
            prob: path,
            coupling: cpath,
            tol,
            ..
        } => {
            let p = prob(path)?;
            let c = match cpath {
                Some(cp) => coupling(cp)?,
                None => c_from_p(g, &o, &p).map_err(dom)?,
            };
            let tol = match tol {
                Some(t) => T::parse(t).ok_or_else(|| Failure::usage(format!("bad tolerance `{t}`")))?,
                None if numeric == "exact" => T::zero(),
                None => T::parse("1e-12").unwrap(),
            };
            let law = exact_block_factor_law(g, &o, &c).map_err(dom)?;
            let report = verify_shearer_law(&law, g, &p, &tol).map_err(dom)?;
            let mut checks = serde_json::Map::new();
            let mut human = String::new();
            for (name, check) in report.checks() {
                checks.insert(
                    name.to_string(),
                    json!({
                        "passed": check.passed,
                        "max_deviation": check.max_deviation,
                        "witness": check.witness.as_ref().map(|w| witness_json(w, g)),
                    }),
                );
                human.push_str(&format!(
                    "{name}: {} (max deviation {})\n",
                    if check.passed { "pass" } else { "FAIL" },
                    check.max_deviation
                ));
            }
            let passed = report.passed();
            Ok(Report {
                json: with(json!({ "tolerance": tol.to_string(), "checks": checks, "passed": passed })),
                human,
                code: if passed { 0 } else { VALIDATION_FAILED },
            })
        }
    }
}
