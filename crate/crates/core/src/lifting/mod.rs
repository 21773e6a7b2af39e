//! Lifting regions, their volume on the torus, and the unique-lifting decision.

mod analysis;
mod oracle;
mod region;
mod volume;

pub use analysis::{
    affine_volume_function, affine_volume_function_with, classify_body, lift_value, sample_interior_points,
    volume_at, AffineVolume, BodyClass, Probe, UniqueLifting,
};
pub use oracle::{
    grid_point, is_torus_covered, torus_cover_oracle, torus_cover_oracle_reference, uncovered_witness, OracleReport,
};
pub use region::{barycentric_on_facet, build_region, FacetRegion, LiftingRegion, MuBox};
pub use volume::{
    difference_measure, facet_torus_volume, overlap_translations, per_facet_volumes, torus_volume, AlignedBox,
    TermOrder, Translation,
};

use num_traits::One;

use crate::error::Result;
use crate::{Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub torus_volume: Rat,
    pub unique_lifting: bool,
    pub per_facet_volumes: Vec<Rat>,
    pub witnesses: Option<Vec<RatVec>>,
}

/// Exact torus volume with the lexicographic order, plus a certified uncovered
/// point when the volume is below one.
pub fn torus_volume_exact(region: &LiftingRegion) -> Result<Verdict> {
    torus_volume_exact_with(region, TermOrder::Lex, true)
}

pub fn torus_volume_exact_with(region: &LiftingRegion, order: TermOrder, find_witness: bool) -> Result<Verdict> {
    let per_facet_volumes = per_facet_volumes(region, order)?;
    let torus_volume: Rat = per_facet_volumes.iter().sum();
    let unique_lifting = torus_volume.is_one();
    let witnesses = if !unique_lifting && find_witness {
        uncovered_witness(region)?.map(|w| vec![w])
    } else {
        None
    };
    Ok(Verdict { torus_volume, unique_lifting, per_facet_volumes, witnesses })
}

/// `x in R(f)`.
pub fn membership(region: &LiftingRegion, x: &[Rat]) -> bool {
    region.contains(x)
}
