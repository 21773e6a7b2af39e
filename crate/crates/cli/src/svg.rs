//! Planar pictures of `R(f)`: shaded parallelograms for full boxes, segments
//! for flat ones, the body outline, lattice points and `f`.

use std::fmt::Write;

use num_traits::Zero;
use unilift::lifting::LiftingRegion;
use unilift::polytope::SimplicialPolytope;
use unilift::scalar::{big_rat, to_f64};
use unilift::{Rat, RatVec, Result};

const SCALE: f64 = 80.0;
const MARGIN: f64 = 0.75;

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn map(&self, p: &[Rat]) -> (f64, f64) {
        ((to_f64(&p[0]) - self.min_x) * SCALE, (self.max_y - to_f64(&p[1])) * SCALE)
    }

    fn pair(&self, p: &[Rat]) -> String {
        let (x, y) = self.map(p);
        format!("{x:.3},{y:.3}")
    }
}

fn polygon(frame: &Frame, pts: &[RatVec]) -> String {
    pts.iter().map(|p| frame.pair(p)).collect::<Vec<_>>().join(" ")
}

pub fn render(p: &SimplicialPolytope, region: &LiftingRegion) -> Result<String> {
    let bbox = p.bounding_box()?;
    let (lo_x, hi_x) = (bbox.lo[0] as f64 - MARGIN, bbox.hi[0] as f64 + MARGIN);
    let (lo_y, hi_y) = (bbox.lo[1] as f64 - MARGIN, bbox.hi[1] as f64 + MARGIN);
    let frame = Frame { min_x: lo_x, max_y: hi_y };
    let (width, height) = ((hi_x - lo_x) * SCALE, (hi_y - lo_y) * SCALE);
    let f = &region.f;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    for fr in &region.regions {
        if fr.is_degenerate() {
            // f sits on this facet: each piece is the segment from f to y.
            for b in &fr.boxes {
                let y: RatVec = b.point.iter().map(big_rat).collect();
                let _ = writeln!(
                    s,
                    r##"<polyline class="region-flat" data-facet="{}" points="{}" stroke="#3b6ea5" stroke-width="2" fill="none"/>"##,
                    fr.facet,
                    polygon(&frame, &[f.clone(), y])
                );
            }
            continue;
        }
        for b in &fr.boxes {
            let (l0, l1) = (&b.lambda[0], &b.lambda[1]);
            let z = Rat::zero();
            let corners = [
                fr.point_at(f, &[z.clone(), z.clone()]),
                fr.point_at(f, &[l0.clone(), z.clone()]),
                fr.point_at(f, &[l0.clone(), l1.clone()]),
                fr.point_at(f, &[z.clone(), l1.clone()]),
            ];
            if b.is_full() {
                let _ = writeln!(
                    s,
                    r##"<polygon class="region" data-facet="{}" points="{}" fill="#9ec5e8" fill-opacity="0.6" stroke="#3b6ea5" stroke-width="1"/>"##,
                    fr.facet,
                    polygon(&frame, &corners)
                );
            } else {
                let _ = writeln!(
                    s,
                    r##"<polyline class="region-flat" data-facet="{}" points="{}" stroke="#3b6ea5" stroke-width="2" fill="none"/>"##,
                    fr.facet,
                    polygon(&frame, &[corners[0].clone(), corners[2].clone()])
                );
            }
        }
    }

    let _ = writeln!(
        s,
        r##"<polygon class="body" points="{}" fill="none" stroke="#222222" stroke-width="3"/>"##,
        polygon(&frame, &convex_ring(p))
    );

    for x in bbox.lo[0]..=bbox.hi[0] {
        for y in bbox.lo[1]..=bbox.hi[1] {
            let pt = [Rat::from_integer(x.into()), Rat::from_integer(y.into())];
            let (cx, cy) = frame.map(&pt);
            let _ = writeln!(s, r##"<circle class="lattice" cx="{cx:.3}" cy="{cy:.3}" r="3" fill="#444444"/>"##);
        }
    }

    let (fx, fy) = frame.map(f);
    let _ = writeln!(s, r##"<circle class="f" cx="{fx:.3}" cy="{fy:.3}" r="5" fill="#d62728"/>"##);
    s.push_str("</svg>\n");
    Ok(s)
}

/// Vertices of a planar polygon in cyclic order, walking facet to facet.
fn convex_ring(p: &SimplicialPolytope) -> Vec<RatVec> {
    let facets: Vec<&Vec<usize>> = p.facets().iter().map(|f| &f.incidence).collect();
    let mut order = vec![facets[0][0], facets[0][1]];
    let mut used = vec![false; facets.len()];
    used[0] = true;
    while order.len() < p.vertices().len() {
        let last = *order.last().unwrap();
        let Some(k) = (0..facets.len()).find(|&k| !used[k] && facets[k].contains(&last)) else { break };
        used[k] = true;
        let next = if facets[k][0] == last { facets[k][1] } else { facets[k][0] };
        order.push(next);
    }
    order.into_iter().map(|i| p.vertices()[i].clone()).collect()
}
