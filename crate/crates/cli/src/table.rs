//! Plain-text rendering of the JSON documents.

use std::fmt::Write;

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn parts(v: &Value) -> String {
    let list: Vec<String> = v
        .as_array()
        .map(|a| a.iter().map(s).collect())
        .unwrap_or_default();
    format!("({})", list.join(","))
}

pub fn coeff(doc: &Value) -> String {
    let mut out = String::new();
    for (label, value) in [
        ("n", s(&doc["n"])),
        (
            "mu",
            format!("{} {}", s(&doc["monomial"]), parts(&doc["mu"])),
        ),
        ("vertexCount", s(&doc["vertexCount"])),
        ("doubledGenus", s(&doc["doubledGenus"])),
        ("rawCount", s(&doc["rawCount"])),
        ("coefficient", s(&doc["coefficient"])),
    ] {
        let _ = writeln!(out, "{label:<14}{value}");
    }
    out
}

fn terms(out: &mut String, list: &Value, with_raw: bool) {
    let rows = list.as_array().cloned().unwrap_or_default();
    if rows.is_empty() {
        let _ = writeln!(out, "  (no terms)");
    }
    let width = rows
        .iter()
        .map(|t| s(&t["monomial"]).len())
        .max()
        .unwrap_or(0);
    for t in rows {
        let name = s(&t["monomial"]);
        if with_raw {
            let _ = writeln!(
                out,
                "  {name:<width$}  raw {:>10}  coefficient {}",
                s(&t["rawCount"]),
                s(&t["coefficient"])
            );
        } else {
            let _ = writeln!(out, "  {name:<width$}  {}", s(&t["coefficient"]));
        }
    }
}

pub fn expand(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Z_{} over {} gluings",
        s(&doc["n"]),
        s(&doc["gluings"])
    );
    for g in doc["genera"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "genus {} (doubled {})",
            s(&g["genus"]),
            s(&g["doubledGenus"])
        );
        terms(&mut out, &g["terms"], true);
    }
    out
}

pub fn genus1(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "genus-one part of Z_{} ({})",
        s(&doc["n"]),
        s(&doc["source"])
    );
    terms(&mut out, &doc["terms"], false);
    if let Some(checks) = doc["checks"].as_array().filter(|c| !c.is_empty()) {
        for c in checks {
            let mark = if c["passed"].as_bool() == Some(true) {
                "ok"
            } else {
                "MISMATCH"
            };
            let _ = writeln!(
                out,
                "check {:<16} {mark:<9}{}",
                s(&c["name"]),
                s(&c["detail"])
            );
        }
        let verdict = if doc["verified"].as_bool() == Some(true) {
            "verified"
        } else {
            "not verified"
        };
        let _ = writeln!(out, "{verdict}");
    }
    out
}

pub fn census(doc: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} classes covering {} gluings",
        s(&doc["classCount"]),
        s(&doc["gluingCount"])
    );
    for c in doc["classes"].as_array().into_iter().flatten() {
        let pairs: Vec<String> = c["pairs"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|p| {
                let a = p.as_array().cloned().unwrap_or_default();
                let twist = if a.get(2).and_then(Value::as_bool) == Some(true) {
                    "~"
                } else {
                    ""
                };
                format!("{}-{}{twist}", s(&a[0]), s(&a[1]))
            })
            .collect();
        let _ = writeln!(
            out,
            "n={} orbit {} stab {} degrees {} black {} white {} q {}  [{}]",
            s(&c["n"]),
            s(&c["orbitSize"]),
            s(&c["stabilizerOrder"]),
            parts(&c["degreeSequence"]),
            parts(&c["blackDegrees"]),
            parts(&c["whiteDegrees"]),
            s(&c["admissibleColorings"]),
            pairs.join(" ")
        );
    }
    out
}
