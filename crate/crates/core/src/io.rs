//! JSON forms of bodies and verdicts. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lifting::Verdict;
use crate::polytope::SimplicialPolytope;
use crate::scalar::{format_rat, format_rat_vec, parse_rat};
use crate::{IntMat, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub incidence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyJson {
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
}

impl BodyJson {
    pub fn from_polytope(p: &SimplicialPolytope) -> Self {
        BodyJson {
            n: p.dim(),
            vertices: p.vertices().iter().map(|v| format_rat_vec(v)).collect(),
            facets: Some(p.facets().iter().map(|f| FacetJson { incidence: f.incidence.clone() }).collect()),
        }
    }

    pub fn to_polytope(&self) -> Result<SimplicialPolytope> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rat(s)).collect::<Result<RatVec>>())
            .collect::<Result<Vec<_>>>()?;
        if vertices.iter().any(|v| v.len() != self.n) {
            return Err(Error::DimensionMismatch(format!("every vertex must have {} coordinates", self.n)));
        }
        match &self.facets {
            Some(f) => SimplicialPolytope::from_data(vertices, f.iter().map(|x| x.incidence.clone()).collect()),
            None if vertices.len() == self.n + 1 => SimplicialPolytope::simplex_from_vertices(vertices),
            None => Err(Error::Parse("facets are required unless the body has n + 1 vertices".into())),
        }
    }
}

pub fn parse_body(text: &str) -> Result<SimplicialPolytope> {
    let body: BodyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    body.to_polytope()
}

pub fn body_to_json(p: &SimplicialPolytope) -> Value {
    serde_json::to_value(BodyJson::from_polytope(p)).expect("plain data")
}

pub fn rat_json(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn int_matrix_json(m: &IntMat) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| json!(x.to_string().parse::<i64>().unwrap_or(0))).collect()))
            .collect(),
    )
}

/// `{"torus_volume", "unique_lifting", "per_facet"}` plus `"witnesses"` when present.
pub fn verdict_json(v: &Verdict) -> Value {
    let mut out = json!({
        "torus_volume": rat_json(&v.torus_volume),
        "unique_lifting": v.unique_lifting,
        "per_facet": v.per_facet_volumes.iter().map(rat_json).collect::<Vec<_>>(),
    });
    if let Some(w) = &v.witnesses {
        out["witnesses"] = Value::Array(w.iter().map(|x| rat_vec_json(x)).collect());
    }
    out
}

/// `{"error": {"code", "message"}}`.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}
