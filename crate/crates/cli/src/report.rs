//! JSON and text renderings of a pipeline run.

use std::fmt::Write as _;

use cohomotopy::cohomotopy::{ClassData, CohomotopyReport, CrossCheck, TypeClassification};
use cohomotopy::linalg::BitVector;
use cohomotopy::{Int, PresentedGroup, ValidationReport};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// Pivot rules behind every basis-dependent field.
pub const PIVOT_RULE: &str = "sparse unit-pivot reduction: per column the unit of least Markowitz cost (ties by row), \
     columns taken by (cost, degree, column); \
     dense Smith normal form: pivot of least absolute value, ties by (row, column)";

pub struct Input<'a> {
    pub path: &'a str,
    pub sha256: String,
    pub name: Option<&'a str>,
}

#[derive(Serialize)]
pub struct GroupJson {
    pub group: String,
    pub free_rank: usize,
    pub torsion: Vec<Value>,
}

fn int_json(v: &Int) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn group_json(g: &PresentedGroup) -> GroupJson {
    GroupJson { group: g.to_string(), free_rank: g.free_rank, torsion: g.torsion.iter().map(int_json).collect() }
}

fn bits(v: &BitVector) -> String {
    (0..v.len()).map(|i| if v.get(i) { '1' } else { '0' }).collect()
}

fn class_json(c: &ClassData) -> Value {
    json!({ "degree": c.degree, "zero": c.is_zero })
}

fn checks_json(checks: &[CrossCheck]) -> Value {
    checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect()
}

pub fn validation_json(v: &ValidationReport) -> Value {
    json!({
        "passed": v.passed(),
        "dimension": v.dimension,
        "vertices": v.vertices,
        "facets": v.facets,
        "violations": v.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn table(groups: &[PresentedGroup], max: usize) -> Value {
    groups
        .iter()
        .enumerate()
        .take(max + 1)
        .map(|(k, g)| {
            let mut entry = serde_json::to_value(group_json(g)).expect("serializable");
            entry["degree"] = json!(k);
            entry
        })
        .collect()
}

fn witness_json(c: &TypeClassification) -> Value {
    match c {
        TypeClassification::TypeI { generator, witness } => json!({
            "kind": "twisted 2-cycle with (w1^2 + w2) = 1",
            "generator": generator,
            "support": witness.iter().filter(|v| !v.is_zero()).count(),
        }),
        TypeClassification::TypeIIa { witness } => json!({
            "kind": "1-cochain y with coboundary w1^2 + w2",
            "support": witness.values.count_ones(),
        }),
        TypeClassification::TypeIIb { certificate } => json!({
            "kind": "mod-2 2-cycle with (w1^2 + w2) = 1",
            "support": certificate.count_ones(),
        }),
    }
}

pub struct Rendering {
    pub max_degree: Option<usize>,
    pub timing: bool,
    pub skipped_crosscheck: bool,
}

pub fn report_json(input: &Input, validation: &ValidationReport, r: &CohomotopyReport, opts: &Rendering) -> Value {
    let max = opts.max_degree.unwrap_or(r.dimension).min(r.dimension);
    let epsilon: Value = match &r.epsilon {
        None => Value::Null,
        Some(eps) => eps
            .entries
            .iter()
            .map(|e| {
                json!({
                    "factor": e.factor,
                    "order": int_json(&e.order),
                    "value": u8::from(e.value),
                    "second_preimage_value": e.second_value.map(u8::from),
                })
            })
            .collect(),
    };
    let steenrod = match &r.steenrod {
        Some(s) => json!({
            "status": "computed",
            "coker_sq2": group_json(&s.coker),
            "top_integral_cohomology": group_json(&s.top_integral),
            "sq2_on_generators": s.sq2_values.iter().map(|&v| u8::from(v)).collect::<Vec<_>>(),
        }),
        None => json!({ "status": "skipped" }),
    };
    let mut doc = json!({
        "schema": SCHEMA,
        "tool": { "name": "cohomotopy", "version": env!("CARGO_PKG_VERSION") },
        "input": { "path": input.path, "sha256": input.sha256, "name": input.name },
        "validation": validation_json(validation),
        "complex": {
            "dimension": r.dimension,
            "f_vector": r.f_vector,
            "euler_characteristic": r.euler_characteristic,
            "orientable": r.orientable,
        },
        "homology": {
            "max_degree": max,
            "integral": table(&r.tables.integral_homology, max),
            "integral_cohomology": table(&r.tables.integral_cohomology, max),
            "twisted": table(&r.tables.twisted_homology, max),
            "mod2_betti": r.tables.mod2_betti.iter().take(max + 1).collect::<Vec<_>>(),
        },
        "stiefel_whitney": {
            "w1": class_json(&r.w1),
            "w2": class_json(&r.w2),
            "pin_minus": r.pin_minus,
        },
        "classification": { "type": r.classification.label() },
        "h1_twisted": group_json(&r.h1_twisted),
        "F1": r.f1.to_string(),
        "F1_invariants": group_json(&r.f1),
        "steenrod_ses": steenrod,
        "crosschecks": {
            "skipped_steenrod": opts.skipped_crosscheck,
            "all_passed": r.all_checks_pass(),
            "checks": checks_json(&r.crosschecks),
        },
        "basis_relative": {
            "pivot_rule": PIVOT_RULE,
            "w1_coordinates": bits(&r.w1.coordinates),
            "w2_coordinates": bits(&r.w2.coordinates),
            "classification_witness": witness_json(&r.classification),
            "epsilon": epsilon,
        },
    });
    if opts.timing {
        let stages: serde_json::Map<String, Value> =
            r.timings.iter().map(|(s, t)| (s.clone(), json!(t.as_secs_f64()))).collect();
        doc["timing"] = Value::Object(stages);
    }
    doc
}

pub fn report_text(input: &Input, r: &CohomotopyReport, opts: &Rendering) -> String {
    let max = opts.max_degree.unwrap_or(r.dimension).min(r.dimension);
    let mut s = String::new();
    let _ = writeln!(s, "input      {} ({})", input.path, input.name.unwrap_or("unnamed"));
    let _ = writeln!(s, "sha256     {}", input.sha256);
    let _ = writeln!(s, "dimension  {}   f-vector {:?}   chi = {}", r.dimension, r.f_vector, r.euler_characteristic);
    let _ = writeln!(s, "orientable {}", r.orientable);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>3}  {:<16} {:<16} {:<16} {:>12}", "k", "H_k(Z)", "H^k(Z)", "H_k(o_X)", "dim H_k(Z_2)");
    for k in 0..=max {
        let _ = writeln!(
            s,
            "{:>3}  {:<16} {:<16} {:<16} {:>12}",
            k,
            r.tables.integral_homology[k].to_string(),
            r.tables.integral_cohomology[k].to_string(),
            r.tables.twisted_homology[k].to_string(),
            r.tables.mod2_betti[k]
        );
    }
    let _ = writeln!(s);
    let zero = |c: &ClassData| if c.is_zero { "0" } else { "nonzero" };
    let _ = writeln!(s, "w1 = {}   w2 = {}   Pin- = {}", zero(&r.w1), zero(&r.w2), r.pin_minus);
    let _ = writeln!(s, "type       {}", r.classification.label());
    let _ = writeln!(s, "H_1(o_X)   {}", r.h1_twisted);
    if let Some(eps) = &r.epsilon {
        let values: Vec<String> =
            eps.entries.iter().map(|e| format!("factor {} (Z_{}): {}", e.factor, e.order, u8::from(e.value))).collect();
        let _ = writeln!(
            s,
            "epsilon    {}",
            if values.is_empty() { "(no even torsion)".into() } else { values.join(", ") }
        );
    }
    let _ = writeln!(s, "F1         {}", r.f1);
    let _ = writeln!(s);
    for c in &r.crosschecks {
        let _ = writeln!(s, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    if opts.skipped_crosscheck {
        let _ = writeln!(s, "[skip] steenrod sequence cross-check");
    }
    if opts.timing {
        let _ = writeln!(s);
        for (stage, t) in &r.timings {
            let _ = writeln!(s, "{stage:<20} {:.3}s", t.as_secs_f64());
        }
    }
    s
}
