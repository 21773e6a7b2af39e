use serde_json::{json, Value};
use unilift::classify::{
    one_point_per_facet, theorem2_verdict, theorem3_verdict, Prediction, TwoPartition, UnimodEquiv,
};
use unilift::generators::{delta_family, search_simplices, standard_simplex, type3_cylinder_cone};
use unilift::io::{body_to_json, int_matrix_json, parse_body, rat_json, rat_vec_json, verdict_json};
use unilift::lifting::{
    affine_volume_function_with, build_region, classify_body, torus_cover_oracle, torus_volume_exact_with,
    BodyClass, TermOrder,
};
use unilift::scalar::{parse_rat, parse_rat_vec};
use unilift::{Error, IntVec, Result};

use crate::{Criterion, Family};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn int_vec_json(v: &IntVec) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn points_json(pts: &[IntVec]) -> Value {
    Value::Array(pts.iter().map(int_vec_json).collect())
}

fn class_name(c: BodyClass) -> &'static str {
    match c {
        BodyClass::UniqueForAllF => "UNIQUE_FOR_ALL_F",
        BodyClass::MultipleForAllF => "MULTIPLE_FOR_ALL_F",
    }
}

fn prediction_name(p: Prediction) -> &'static str {
    match p {
        Prediction::Unique => "UNIQUE",
        Prediction::Multiple => "MULTIPLE",
    }
}

fn parse_f(f: &str, n: usize) -> Result<Vec<unilift::Rat>> {
    let f = parse_rat_vec(f)?;
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!("f has {} coordinates, the body lives in R^{n}", f.len())));
    }
    Ok(f)
}

pub fn analyze(body: &str, f: &str, witness: bool) -> Result<String> {
    let p = parse_body(body)?;
    let f = parse_f(f, p.dim())?;
    let report = p.maximality_report()?;
    let region = build_region(&p, &f)?;
    let verdict = torus_volume_exact_with(&region, TermOrder::Lex, witness)?;
    let mut out = verdict_json(&verdict);
    out["n"] = json!(p.dim());
    out["f"] = rat_vec_json(&f);
    out["is_boundary_f"] = json!(region.is_boundary_f);
    out["maximality"] = json!({
        "lattice_free": report.lattice_free,
        "maximal": report.maximal,
        "interior_witness": report.interior_witness.as_ref().map(int_vec_json),
        "per_facet": report.per_facet.iter().map(|fp| json!({
            "all_points": points_json(&fp.all_points),
            "relative_interior_points": points_json(&fp.relative_interior_points),
        })).collect::<Vec<_>>(),
    });
    Ok(pretty(&out))
}

pub fn sweep(body: &str, probes: usize, seed: u64) -> Result<String> {
    let p = parse_body(body)?;
    let fit = affine_volume_function_with(&p, probes, seed)?;
    let dichotomy = classify_body(&p)?;
    let out = json!({
        "coefficients": rat_vec_json(&fit.coefficients),
        "constant": rat_json(&fit.constant),
        "vertex_volumes": fit.vertex_volumes.iter().map(rat_json).collect::<Vec<_>>(),
        "probes": fit.probes.iter().map(|pr| json!({
            "point": rat_vec_json(&pr.point),
            "exact": rat_json(&pr.exact),
            "predicted": rat_json(&pr.predicted),
            "residual": rat_json(&(&pr.exact - &pr.predicted)),
        })).collect::<Vec<_>>(),
        "verified": fit.verified,
        "dichotomy": class_name(dichotomy),
    });
    Ok(pretty(&out))
}

pub fn render(body: &str, f: &str) -> Result<String> {
    let p = parse_body(body)?;
    if p.dim() != 2 {
        return Err(Error::DimensionUnsupported { expected: 2, got: p.dim() });
    }
    let f = parse_f(f, 2)?;
    let region = build_region(&p, &f)?;
    crate::svg::render(&p, &region)
}

pub fn oracle(body: &str, f: &str, grid: u32) -> Result<String> {
    let p = parse_body(body)?;
    let f = parse_f(f, p.dim())?;
    let rep = torus_cover_oracle(&build_region(&p, &f)?, grid)?;
    let out = json!({
        "grid": rep.grid,
        "covered": rep.covered,
        "total": rep.total,
        "covered_fraction": rat_json(&rep.covered_fraction),
        "uncovered_samples": rep.uncovered_samples.iter().map(|x| rat_vec_json(x)).collect::<Vec<_>>(),
    });
    Ok(pretty(&out))
}

pub struct GenerateParams {
    pub n: Option<usize>,
    pub m: Option<String>,
    pub delta: Option<String>,
    pub q: Option<i64>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("missing --{flag}"))
}

pub fn generate(family: Family, params: &GenerateParams, triangle: Option<&str>) -> Result<String> {
    let body = match family {
        Family::Standard => {
            let n = params.n.ok_or_else(|| missing("n"))?;
            let m = match &params.m {
                Some(m) => parse_rat(m)?.to_integer().try_into().map_err(|_| Error::CoordinateOverflow)?,
                None => n as i64,
            };
            standard_simplex(n, m)?
        }
        Family::Delta => {
            let n = params.n.ok_or_else(|| missing("n"))?;
            let delta = parse_rat_vec(params.delta.as_deref().ok_or_else(|| missing("delta"))?)?;
            delta_family(n, &delta)?
        }
        Family::Type3Cone => {
            let t = parse_body(triangle.ok_or_else(|| missing("in"))?)?;
            let m = parse_rat(params.m.as_deref().ok_or_else(|| missing("m"))?)?;
            type3_cylinder_cone(&t, &m)?
        }
        Family::Search => {
            let q = params.q.ok_or_else(|| missing("q"))?;
            let (lo, hi) = (params.lo.ok_or_else(|| missing("lo"))?, params.hi.ok_or_else(|| missing("hi"))?);
            let hits = search_simplices(q, lo, hi)?;
            let out = json!({
                "hits": hits.iter().map(|h| json!({
                    "body": body_to_json(&h.simplex),
                    "tag": format!("{:?}", h.tag),
                    "side_counts": h.side_counts,
                    "integral_vertices": h.integral_vertices,
                    "boundary_points": h.boundary_points,
                })).collect::<Vec<_>>(),
            });
            return Ok(pretty(&out));
        }
    };
    Ok(pretty(&body_to_json(&body)))
}

fn witness_json(w: &Option<UnimodEquiv>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "u": int_matrix_json(&w.u),
            "b": int_vec_json(&w.b),
            "permutation": w.permutation,
        }),
    }
}

fn partition_json(p: &TwoPartition) -> Value {
    json!({ "c": int_vec_json(&p.c), "d": p.d.to_string(), "facet_on_h1": p.facet_on_h1 })
}

pub fn classify(body: &str, criterion: Criterion) -> Result<String> {
    let p = parse_body(body)?;
    let use_one_point = match criterion {
        Criterion::OnePoint => true,
        Criterion::TwoPartition => false,
        Criterion::Auto => one_point_per_facet(&p)?,
    };
    let out = if use_one_point {
        let v = theorem2_verdict(&p)?;
        json!({
            "criterion": "one-point-per-facet",
            "predicted": prediction_name(v.predicted),
            "witness": witness_json(&v.witness),
            "volume_class": class_name(v.volume_class),
            "cross_check": v.cross_check,
        })
    } else {
        let v = theorem3_verdict(&p)?;
        json!({
            "criterion": "two-partition",
            "partition": partition_json(&v.partition),
            "slice": body_to_json(&v.slice.simplex),
            "predicted": prediction_name(v.predicted),
            "witness": witness_json(&v.witness),
            "volume_class": class_name(v.volume_class),
            "cross_check": v.cross_check,
        })
    };
    Ok(pretty(&out))
}
