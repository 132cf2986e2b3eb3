//! Deterministic text and JSON rendering of reports. Wall-clock timings are
//! never printed: repeated runs must produce identical bytes.

use serde_json::{json, Map, Value};

use tba::classify::{ClassificationReport, TheoremVector};
use tba::laws::{EquationFailure, LawReport, Verdict};
use tba::model::PointedTernaryAlgebra;
use tba::term::Counterexample;

pub fn counterexample_text(m: &PointedTernaryAlgebra, cex: &Counterexample) -> String {
    cex.display_with(m)
}

fn counterexample_json(m: &PointedTernaryAlgebra, cex: &Counterexample) -> Value {
    let mut assignment = Map::new();
    for (var, value) in &cex.assignment {
        assignment.insert(var.clone(), Value::String(m.name(*value).to_string()));
    }
    json!({
        "assignment": assignment,
        "lhs": m.name(cex.lhs),
        "rhs": m.name(cex.rhs),
    })
}

pub fn verdict_text(m: &PointedTernaryAlgebra, verdict: &Verdict) -> String {
    match verdict {
        Verdict::Passed => "pass".to_string(),
        Verdict::HypothesisFailed(f) => format!(
            "vacuous (hypothesis {} fails at {})",
            f.equation,
            counterexample_text(m, &f.counterexample)
        ),
        Verdict::Violated(f) => format!(
            "VIOLATED {} at {}",
            f.equation,
            counterexample_text(m, &f.counterexample)
        ),
    }
}

fn failure_fields(m: &PointedTernaryAlgebra, f: &EquationFailure, key: &str, obj: &mut Map<String, Value>) {
    obj.insert(key.to_string(), Value::String(f.equation.clone()));
    obj.insert(
        "counterexample".to_string(),
        counterexample_json(m, &f.counterexample),
    );
}

fn verdict_json(m: &PointedTernaryAlgebra, verdict: &Verdict) -> Value {
    let mut obj = Map::new();
    match verdict {
        Verdict::Passed => {
            obj.insert("verdict".to_string(), json!("passed"));
        }
        Verdict::HypothesisFailed(f) => {
            obj.insert("verdict".to_string(), json!("vacuous"));
            failure_fields(m, f, "hypothesis", &mut obj);
        }
        Verdict::Violated(f) => {
            obj.insert("verdict".to_string(), json!("violated"));
            failure_fields(m, f, "equation", &mut obj);
        }
    }
    Value::Object(obj)
}

pub fn law_report_text(m: &PointedTernaryAlgebra, report: &LawReport, indent: &str) -> String {
    let mut out = String::new();
    for outcome in &report.outcomes {
        out.push_str(&format!(
            "{indent}{}: {}\n",
            outcome.id,
            verdict_text(m, &outcome.verdict)
        ));
    }
    out
}

fn law_report_json(m: &PointedTernaryAlgebra, report: &LawReport) -> Value {
    Value::Array(
        report
            .outcomes
            .iter()
            .map(|o| {
                let mut v = verdict_json(m, &o.verdict);
                v.as_object_mut()
                    .unwrap()
                    .insert("id".to_string(), json!(o.id.as_str()));
                v
            })
            .collect(),
    )
}

pub fn model_summary_text(m: &PointedTernaryAlgebra) -> String {
    format!(
        "model: size {} zero={} one={} elements: {}\n",
        m.size(),
        m.name(m.zero()),
        m.name(m.one()),
        m.names().join(" ")
    )
}

fn model_summary_json(m: &PointedTernaryAlgebra) -> Value {
    json!({
        "size": m.size(),
        "names": m.names(),
        "zero": m.name(m.zero()),
        "one": m.name(m.one()),
    })
}

fn vector_text(m: &PointedTernaryAlgebra, vector: &TheoremVector, out: &mut String) {
    out.push_str(&format!("  {}:\n", vector.theorem));
    for c in &vector.conditions {
        match &c.failure {
            None => out.push_str(&format!("    {}: true\n", c.id)),
            Some(f) => out.push_str(&format!(
                "    {}: false ({} fails at {})\n",
                c.id,
                f.equation,
                counterexample_text(m, &f.counterexample)
            )),
        }
    }
}

fn vector_json(m: &PointedTernaryAlgebra, vector: &TheoremVector) -> Value {
    Value::Array(
        vector
            .conditions
            .iter()
            .map(|c| {
                let mut obj = Map::new();
                obj.insert("id".to_string(), json!(c.id));
                obj.insert("holds".to_string(), json!(c.holds));
                if let Some(f) = &c.failure {
                    failure_fields(m, f, "equation", &mut obj);
                }
                Value::Object(obj)
            })
            .collect(),
    )
}

/// Full classification report as text: model, axioms, laws, condition
/// vectors, verdicts, disagreements.
pub fn classification_text(
    m: &PointedTernaryAlgebra,
    report: &ClassificationReport,
    laws: Option<&LawReport>,
) -> String {
    let mut out = model_summary_text(m);
    out.push_str("axioms:\n");
    out.push_str(&law_report_text(m, &report.axioms, "  "));
    if !report.applicable() {
        out.push_str("classification: not applicable (axioms fail)\n");
        return out;
    }
    if let Some(laws) = laws {
        out.push_str("laws:\n");
        out.push_str(&law_report_text(m, laws, "  "));
    }
    out.push_str("vectors:\n");
    for vector in report.vectors.as_ref().unwrap() {
        vector_text(m, vector, &mut out);
    }
    let v = report.verdicts.unwrap();
    out.push_str(&format!(
        "verdicts: boolean={} ring2={} nearRing2={}\n",
        v.boolean, v.ring2, v.near_ring2
    ));
    if report.disagreements.is_empty() {
        out.push_str("disagreements: none\n");
    } else {
        out.push_str("disagreements:\n");
        for d in &report.disagreements {
            let values: Vec<String> = d
                .values
                .iter()
                .map(|(id, holds)| format!("{id}={holds}"))
                .collect();
            out.push_str(&format!("  {}: {}\n", d.theorem, values.join(" ")));
        }
    }
    out
}

/// Same content as [`classification_text`] in the versioned JSON schema.
pub fn classification_json(
    m: &PointedTernaryAlgebra,
    report: &ClassificationReport,
    laws: Option<&LawReport>,
) -> Value {
    let axioms = json!({
        "pass": report.axioms.all_passed(),
        "results": law_report_json(m, &report.axioms),
    });
    let laws_value = match laws {
        Some(l) => law_report_json(m, l),
        None => Value::Null,
    };
    let vectors = match report.vectors.as_ref() {
        Some([v1, v2, v3]) => json!({
            "thm1": vector_json(m, v1),
            "thm2": vector_json(m, v2),
            "thm3": vector_json(m, v3),
        }),
        None => Value::Null,
    };
    let verdicts = match report.verdicts {
        Some(v) => json!({
            "boolean": v.boolean,
            "ring2": v.ring2,
            "nearRing2": v.near_ring2,
        }),
        None => Value::Null,
    };
    let disagreements: Vec<Value> = report
        .disagreements
        .iter()
        .map(|d| {
            let values: Map<String, Value> = d
                .values
                .iter()
                .map(|(id, holds)| (id.to_string(), json!(holds)))
                .collect();
            json!({"theorem": d.theorem, "values": values})
        })
        .collect();
    json!({
        "schema": "1",
        "model": model_summary_json(m),
        "axioms": axioms,
        "laws": laws_value,
        "vectors": vectors,
        "verdicts": verdicts,
        "disagreements": disagreements,
    })
}

/// The four derived-operation tables with labelled rows and columns.
pub fn derived_tables_text(m: &PointedTernaryAlgebra) -> String {
    let ops = m.derived_ops();
    let n = m.size();
    let width = m.names().iter().map(|s| s.len()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = String::new();

    out.push_str("bar (~a):\n");
    for a in 0..n {
        out.push_str(&format!(
            "  {} -> {}\n",
            pad(m.name(a)),
            pad(m.name(ops.bar(a)))
        ));
    }
    for (title, get) in [
        ("dot (a*b)", &(|a, b| ops.dot(a, b)) as &dyn Fn(usize, usize) -> usize),
        ("circ (a@b)", &|a, b| ops.circ(a, b)),
        ("plus (a+b)", &|a, b| ops.plus(a, b)),
    ] {
        out.push_str(&format!("{title}:\n"));
        let header: Vec<String> = (0..n).map(|b| pad(m.name(b))).collect();
        out.push_str(&format!("  {} | {}\n", pad(""), header.join(" ")));
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| pad(m.name(get(a, b)))).collect();
            out.push_str(&format!("  {} | {}\n", pad(m.name(a)), row.join(" ")));
        }
    }
    out
}

/// Stable 64-bit FNV-1a hash of a table, used to name emitted model files.
pub fn table_hash(table: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &v in table {
        for byte in (v as u64).to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}
