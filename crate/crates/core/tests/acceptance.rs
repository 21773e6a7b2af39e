//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 2 and 5 name inputs that cannot satisfy them (see the detail
//! lines); they are run exactly as stated and reported as FAIL. Every other
//! criterion must pass.

mod common;

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unilift::classify::{one_point_per_facet, symmetric_body_check, theorem3_verdict, Prediction};
use unilift::generators::{delta_family, search_simplices, standard_simplex, TriangleType};
use unilift::lifting::{
    affine_volume_function_with, build_region, torus_cover_oracle, torus_volume, volume_at, UniqueLifting,
};
use unilift::polytope::{int_point, Gauge};
use unilift::scalar::{int_rat, rat};
use unilift::{Rat, RatVec, SimplicialPolytope, TermOrder};

use common::{corpus, probes};

const EXPECTED_FAIL: [usize; 2] = [2, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in [2usize, 3] {
        let p = standard_simplex(n, n as i64).unwrap();
        for f in probes(&p, 5, 11) {
            let v = volume_at(&p, &f).unwrap();
            if !v.is_one() {
                bad.push(format!("n={n} f={f:?} vol={v}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 10.0, format!("{} bad probes, {secs:.2}s {bad:?}", bad.len()))
}

fn only_if_holds(hits: &[unilift::generators::SearchHit]) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut count = 0;
    for h in hits.iter().filter(|h| h.tag == TriangleType::Type3) {
        count += 1;
        for f in probes(&h.simplex, 3, 5) {
            let v = volume_at(&h.simplex, &f).unwrap();
            if v >= Rat::one() {
                bad.push(format!("{:?} at {f:?}: {v}", h.simplex.vertices()));
            }
        }
    }
    (count, bad)
}

fn criterion_2() -> Outcome {
    let (found_q2, bad_q2) = only_if_holds(&search_simplices(2, -2, 3).unwrap());
    let (found_q3, bad_q3) = only_if_holds(&search_simplices(3, -1, 2).unwrap());
    outcome(
        found_q2 >= 1 && bad_q2.is_empty() && bad_q3.is_empty(),
        format!(
            "q=2 box [-2,3]^2: {found_q2} qualifying triangles (none exist); \
             q=3 box [-1,2]^2: {found_q3} triangles, {} violations",
            bad_q3.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for b in corpus() {
        let fit = affine_volume_function_with(&b.body, 10, 3).unwrap();
        if !fit.verified || fit.probes.len() < b.body.vertices().len() + 10 {
            bad.push(b.name);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 60.0, format!("{} bodies, failing {bad:?}, {secs:.2}s", corpus().len()))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for b in corpus() {
        let verdicts: Vec<bool> =
            probes(&b.body, 6, 17).iter().map(|f| volume_at(&b.body, f).unwrap().is_one()).collect();
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            bad.push(b.name);
        }
    }
    outcome(bad.is_empty(), format!("non-constant on {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    match delta_family(2, &[rat(1, 2), rat(1, 2), Rat::zero()]) {
        Ok(p) => {
            let ok = delta_unique(&p);
            pass &= ok;
            parts.push(format!("delta (1/2,1/2,0): {}", if ok { "UNIQUE" } else { "wrong verdict" }));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("delta (1/2,1/2,0): {}", e.code()));
        }
    }
    let alt = common::delta_body();
    parts.push(format!("delta (1/2,1/2,1): {}", if delta_unique(&alt) { "UNIQUE, slice 2-simplex" } else { "wrong" }));
    let v = theorem3_verdict(&common::cone()).unwrap();
    let cone_ok = v.predicted == Prediction::Multiple && v.cross_check;
    pass &= cone_ok;
    parts.push(format!("cone: {:?} cross_check={}", v.predicted, v.cross_check));
    outcome(pass, parts.join("; "))
}

fn delta_unique(p: &SimplicialPolytope) -> bool {
    let v = theorem3_verdict(p).unwrap();
    let mut slice: Vec<RatVec> = v.slice.simplex.vertices().to_vec();
    slice.sort();
    let mut target = vec![int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[0, 2])];
    target.sort();
    v.predicted == Prediction::Unique && v.cross_check && slice == target
}

fn criterion_6() -> Outcome {
    let t = common::type3_triangle();
    let cone = common::cone();
    let mut bad = Vec::new();
    for (i, tv) in t.vertices().iter().enumerate() {
        let v3 = volume_at(&cone, &cone.vertices()[i + 1]).unwrap();
        let v2 = volume_at(&t, tv).unwrap();
        if v3 != v2 {
            bad.push(format!("vertex {i}: {v3} vs {v2}"));
        }
    }
    outcome(bad.is_empty(), format!("3 base vertices, mismatches {bad:?}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut worst = Rat::zero();
    let mut bad = Vec::new();
    let tol = rat(8, 64);
    for b in corpus() {
        for f in probes(&b.body, 2, 23) {
            let region = build_region(&b.body, &f).unwrap();
            let exact = torus_volume(&region, TermOrder::Lex).unwrap();
            let grid = torus_cover_oracle(&region, 64).unwrap().covered_fraction;
            let gap = (&grid - &exact).abs();
            if gap > tol || (exact.is_one() && !grid.is_one()) {
                bad.push(format!("{} f={f:?}: exact {exact}, grid {grid}", b.name));
            }
            if gap > worst {
                worst = gap;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 120.0, format!("max gap {worst}, {secs:.2}s {bad:?}"))
}

fn criterion_8() -> Outcome {
    let mut checked = Vec::new();
    let mut bad = Vec::new();
    for b in corpus() {
        if !b.body.is_simplex() || !one_point_per_facet(&b.body).unwrap() {
            continue;
        }
        checked.push(b.name);
        let n = b.body.dim() as u32;
        for base in 0..b.body.vertices().len() {
            let r = symmetric_body_check(&b.body, base).unwrap();
            let exact = r.vol_s == int_rat(2i64.pow(n)) * &r.vol_r0;
            if !(exact && r.relation_holds && r.lattice_free_interior && r.minkowski_bound) {
                bad.push(format!("{} base {base}", b.name));
            }
        }
    }
    outcome(!checked.is_empty() && bad.is_empty(), format!("checked {checked:?}, failing {bad:?}"))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for b in corpus() {
        for f in probes(&b.body, 3, 29) {
            let region = build_region(&b.body, &f).unwrap();
            let lex = torus_volume(&region, TermOrder::Lex).unwrap();
            let rev = torus_volume(&region, TermOrder::RevLex).unwrap();
            if lex != rev {
                bad.push(format!("{} f={f:?}: {lex} vs {rev}", b.name));
            }
        }
    }
    outcome(bad.is_empty(), format!("differences {bad:?}"))
}

fn random_rat_vec(rng: &mut ChaCha8Rng, n: usize) -> RatVec {
    (0..n).map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    for b in corpus() {
        let p = &b.body;
        let n = p.dim();
        let f = p.vertex_centroid();
        let g = Gauge::new(p, &f).unwrap();
        for v in p.vertices() {
            let r: RatVec = v.iter().zip(&f).map(|(a, b)| a - b).collect();
            if !g.eval(&r).is_one() {
                failures.push(format!("{}: psi != 1 at vertex", b.name));
            }
        }
        for _ in 0..500 {
            let a = random_rat_vec(&mut rng, n);
            let c = random_rat_vec(&mut rng, n);
            let sum: RatVec = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            if g.eval(&sum) > g.eval(&a) + g.eval(&c) {
                failures.push(format!("{}: subadditivity", b.name));
            }
            let t = rat(rng.gen_range(0..=20), rng.gen_range(1..=7));
            let scaled: RatVec = a.iter().map(|x| x * &t).collect();
            if g.eval(&scaled) != &t * g.eval(&a) {
                failures.push(format!("{}: homogeneity", b.name));
            }
        }
    }
    let p = standard_simplex(2, 2).unwrap();
    let lift = UniqueLifting::new(&p, &[rat(2, 3), rat(1, 2)]).unwrap();
    for _ in 0..100 {
        let r = random_rat_vec(&mut rng, 2);
        let w: RatVec = (0..2).map(|_| int_rat(rng.gen_range(-3..=3))).collect();
        let rw: RatVec = r.iter().zip(&w).map(|(a, b)| a + b).collect();
        let (a, c) = (lift.value(&r).unwrap(), lift.value(&rw).unwrap());
        if a != c || a.is_negative() || a > lift.gauge(&r) {
            failures.push(format!("periodicity at {r:?} + {w:?}"));
        }
    }
    failures.dedup();
    outcome(failures.is_empty(), format!("failures {failures:?}"))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        let o = run();
        println!("criterion {id}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !EXPECTED_FAIL.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
