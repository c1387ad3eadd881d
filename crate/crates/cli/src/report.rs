//! Text and JSON renderings shared by the subcommands.

use std::f64::consts::PI;
use std::fmt::Write as _;

use napier::cone_manifold::Classification;
use napier::linalg::ZERO_TOL;
use napier::orthoscheme::{
    coxeter_check, facet_relations, is_compact, Character, CoxeterDiagram, FacetRelation, COXETER_KMAX,
    COXETER_TOL,
};
use napier::{AngleList, GramMatrix, Result};
use serde_json::{json, Value};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub diagram: Option<CoxeterDiagram>,
}

fn over_pi(x: f64) -> String {
    format!("{:.6} pi", x / PI)
}

fn character_name(c: Character) -> &'static str {
    match c {
        Character::Spacelike => "spacelike",
        Character::Lightlike => "lightlike",
        Character::Timelike => "timelike",
    }
}

fn relation_text(r: FacetRelation) -> String {
    match r {
        FacetRelation::Orthogonal => "orthogonal".into(),
        FacetRelation::Angle { theta } => format!("angle {} (pi/{:.6})", over_pi(theta), PI / theta),
        FacetRelation::Parallel => "parallel".into(),
        FacetRelation::Ultraparallel { distance } => {
            format!("ultraparallel, distance {distance:.12} (cosh {:.12})", distance.cosh())
        }
    }
}

fn relation_json(r: FacetRelation) -> Value {
    match r {
        FacetRelation::Orthogonal => json!({"kind": "orthogonal"}),
        FacetRelation::Angle { theta } => json!({"kind": "angle", "theta": theta}),
        FacetRelation::Parallel => json!({"kind": "parallel"}),
        FacetRelation::Ultraparallel { distance } => json!({"kind": "ultraparallel", "distance": distance}),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Type, characters, facet relations, Coxeter diagram and compactness.
pub fn orthoscheme(angles: &AngleList) -> Result<Report> {
    let rel = facet_relations(angles)?;
    let compact = is_compact(angles);
    let diagram = coxeter_check(&rel, COXETER_TOL, COXETER_KMAX);
    let signature = GramMatrix::new(angles).signature(ZERO_TOL)?;

    let mut t = String::new();
    let _ = writeln!(t, "angles: {angles}");
    let _ = writeln!(t, "dimension: {}", angles.n());
    let _ = writeln!(t, "type: {}", rel.ty.kind);
    let _ = writeln!(t, "signature: {signature}");
    let names: Vec<&str> = rel.ty.characters.iter().map(|&c| character_name(c)).collect();
    let _ = writeln!(t, "characters: {}", names.join(", "));
    let _ = writeln!(t, "adjacent facets:");
    for p in &rel.adjacent {
        let _ = writeln!(t, "  F{} F{}: {}", p.first + 1, p.second + 1, relation_text(p.relation));
    }
    let _ = writeln!(t, "other facet pairs: orthogonal");
    let _ = writeln!(t, "coxeter: {}", yes(diagram.is_some()));
    let _ = write!(t, "compact: {}", yes(compact.compact));
    match compact.witness {
        Some((first, last)) => {
            let _ = writeln!(t, " (angles {}..{} sum to pi)", first + 1, last + 1);
        }
        None => t.push('\n'),
    }

    let relations: Vec<Value> = rel
        .adjacent
        .iter()
        .map(|p| {
            let mut v = relation_json(p.relation);
            v["facets"] = json!([p.first + 1, p.second + 1]);
            v["ratio"] = json!(p.ratio);
            v
        })
        .collect();
    let diagram_json = diagram.as_ref().map(|d| {
        json!({
            "shape": d.shape,
            "nodes": d.nodes.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "edges": d.edges.iter().map(|(i, j, l)| json!({"facets": [i + 1, j + 1], "label": l})).collect::<Vec<_>>(),
        })
    });
    let json = json!({
        "angles": angles,
        "n": angles.n(),
        "type": rel.ty.kind,
        "signature": signature,
        "characters": rel.ty.characters,
        "relations": relations,
        "coxeter": diagram.is_some(),
        "diagram": diagram_json,
        "compact": compact.compact,
        "witness_noncompact": compact.witness.map(|(a, b)| [a + 1, b + 1]),
    });
    Ok(Report { text: t, json, diagram })
}

pub fn classification_text(c: &Classification) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "angles: {}", c.angles);
    let _ = writeln!(t, "dimension: {}", c.angles.n());
    let _ = writeln!(t, "verdict: {}", c.verdict);
    let _ = write!(t, "compact: {}", yes(c.compact));
    match &c.witness_noncompact {
        Some(w) => {
            let ix: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(t, " (angles {} sum to pi)", ix.join(", "));
        }
        None => t.push('\n'),
    }
    let _ = writeln!(t, "double cover components: {}", c.double_cover.components);
    let distinct = c.distinct_strata();
    if distinct.is_empty() {
        let _ = writeln!(t, "singular strata: none");
    } else {
        let _ = writeln!(t, "singular strata:");
        for (s, count) in distinct {
            let vals: Vec<String> = s.angles.iter().map(|a| a.to_string()).collect();
            let k = s.matched_k.map_or("-".to_string(), |k| format!("2 pi / {k}"));
            let _ = writeln!(t, "  ({}) x{count}: theta = {}, {k}", vals.join(", "), over_pi(s.theta));
        }
    }
    let _ = writeln!(t, "ideal triples: {}", c.ideal_triples.len());
    t
}
