//! Stable JSON documents for command output.
//!
//! Counts and coefficients are decimal strings, partition parts are listed in
//! descending order, and every object has a fixed key set.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::acceptance::CriterionResult;
use crate::census::{CensusFilter, DecorationReport, ReducedMapClass};
use crate::engine::{render_rational, Coefficient, GenusPolynomial, Tally};
use crate::genus1::ClosedFormResult;
use crate::partition::Partition;
use crate::polygon::Twist;

/// Genus as a string: an integer or a half-integer `k/2`.
pub fn genus_label(doubled_genus: u32) -> String {
    if doubled_genus.is_multiple_of(2) {
        (doubled_genus / 2).to_string()
    } else {
        format!("{doubled_genus}/2")
    }
}

pub fn monomial_json(mu: &Partition) -> Value {
    json!({
        "mu": mu.parts(),
        "monomial": mu.to_string(),
        "sVector": mu
            .multiplicities()
            .iter()
            .rev()
            .map(|(&part, &count)| json!([part, count]))
            .collect::<Vec<_>>(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

pub fn term_json(mu: &Partition, c: &Coefficient) -> Value {
    merge(
        monomial_json(mu),
        json!({
            "vertexCount": mu.vertex_count(),
            "rawCount": c.raw.to_string(),
            "coefficient": render_rational(&c.value),
        }),
    )
}

pub fn genus_polynomial_json(p: &GenusPolynomial) -> Value {
    json!({
        "doubledGenus": p.doubled_genus,
        "genus": genus_label(p.doubled_genus),
        "terms": p.terms.iter().rev().map(|(mu, c)| term_json(mu, c)).collect::<Vec<_>>(),
    })
}

pub fn coeff_json(n: usize, mu: &Partition, c: &Coefficient) -> Value {
    let dg = crate::engine::doubled_genus_of(n, mu);
    merge(
        json!({ "command": "coeff", "n": n, "doubledGenus": dg }),
        term_json(mu, c),
    )
}

/// Expansion grouped by genus. With `only` set, a single genus part is shown
/// even when it has no terms.
pub fn expand_json(tally: &Tally, only: Option<u32>) -> Value {
    let genera: Vec<Value> = match only {
        Some(dg) => vec![genus_polynomial_json(&tally.restricted(dg))],
        None => tally.by_genus().iter().map(genus_polynomial_json).collect(),
    };
    json!({
        "command": "expand",
        "n": tally.n,
        "gluings": tally.gluings.to_string(),
        "genera": genera,
    })
}

pub fn closed_form_terms_json(terms: &std::collections::BTreeMap<Partition, BigInt>) -> Vec<Value> {
    terms
        .iter()
        .rev()
        .map(|(mu, c)| merge(monomial_json(mu), json!({ "coefficient": c.to_string() })))
        .collect()
}

/// A named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn genus1_json(result: &ClosedFormResult, checks: Option<&[Check]>) -> Value {
    json!({
        "command": "genus1",
        "n": result.n,
        "doubledGenus": 2,
        "source": result.source.to_string(),
        "terms": closed_form_terms_json(&result.terms),
        "verified": checks.map(|c| c.iter().all(|x| x.passed)),
        "checks": checks.unwrap_or(&[]).iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn class_json(c: &ReducedMapClass) -> Value {
    let g = &c.representative;
    let pairs: Vec<Value> = g
        .twisted_pairs()
        .iter()
        .map(|&(i, j, t)| {
            if g.has_explicit_twists() {
                json!([i, j, matches!(t, Twist::Twisted)])
            } else {
                json!([i, j])
            }
        })
        .collect();
    json!({
        "n": c.n,
        "pairs": pairs,
        "orbitSize": c.orbit_size,
        "stabilizerOrder": c.stabilizer_order,
        "groupOrder": c.group_order,
        "doubledGenus": c.doubled_genus,
        "vertexCount": c.vertex_count,
        "degreeSequence": c.degree_sequence,
        "bipartite": c.bipartite,
        "blackDegrees": c.black_degrees,
        "whiteDegrees": c.white_degrees,
        "bridgeless": c.bridgeless,
        "admissibleColorings": c.admissible_q,
    })
}

pub fn census_json(ns: &[usize], filter: &CensusFilter, classes: &[ReducedMapClass]) -> Value {
    json!({
        "command": "census",
        "n": ns,
        "filter": {
            "doubledGenus": filter.doubled_genus,
            "reduced": filter.reduced_only,
            "bipartite": filter.bipartite_only,
            "contributing": filter.contributing_only,
            "twisted": filter.twisted,
            "rotationStep": filter.group.step,
            "reflections": filter.group.reflections,
        },
        "classCount": classes.len(),
        "gluingCount": classes.iter().map(|c| c.orbit_size).sum::<usize>(),
        "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
    })
}

pub fn decoration_json(r: &DecorationReport) -> Value {
    json!({
        "baseN": r.base_n,
        "baseStabilizer": r.base_stabilizer,
        "targetBlack": r.target_black,
        "targetWhite": r.target_white,
        "addedPairs": r.added_pairs,
        "addedLeaves": r.added_leaves,
        "decoratedN": r.decorated_n,
        "decorations": r.decorations.to_string(),
        "predictedDecorations": r.predicted_decorations.to_string(),
        "labeledMaps": r.labeled_maps.to_string(),
        "passed": r.passed,
    })
}

pub fn selftest_json(max_n: usize, results: &[CriterionResult]) -> Value {
    json!({
        "command": "selftest",
        "maxN": max_n,
        "passed": results.iter().all(|r| r.passed),
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{tally, EngineConfig};

    #[test]
    fn expand_n2_document() {
        let t = tally(2, None, &EngineConfig::with_threads(1)).unwrap();
        let v = expand_json(&t, None);
        assert_eq!(v["gluings"], "3");
        assert_eq!(v["genera"][0]["terms"][0]["mu"], json!([3]));
        assert_eq!(v["genera"][0]["terms"][0]["coefficient"], "4");
        assert_eq!(v["genera"][1]["genus"], "1/2");
        assert_eq!(v["genera"][1]["terms"][0]["coefficient"], "-2");
    }

    #[test]
    fn monomial_forms() {
        let mu: Partition = "3,2,2".parse().unwrap();
        let v = monomial_json(&mu);
        assert_eq!(v["mu"], json!([3, 2, 2]));
        assert_eq!(v["sVector"], json!([[3, 1], [2, 2]]));
        assert_eq!(genus_label(3), "3/2");
        assert_eq!(genus_label(2), "1");
    }
}
