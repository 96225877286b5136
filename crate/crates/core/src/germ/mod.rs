//! Corank-1 homogeneous map germs, their double-point rays and the image
//! of the double-point set.

mod model;
mod rays;

pub use model::{parse_germ, MapGerm, SOURCE_VARS};
pub use rays::{
    double_point_system, double_rays, image_arc, restrict, slope_pairs, DoublePointSystem, Ray, RaySystem, SlopePair,
    SYSTEM_VARS,
};

use crate::contact::CurveGerm;
use crate::error::Result;

/// One branch per pairing class, labelled by the two contributing rays.
pub fn image_double_curve(f: &MapGerm) -> Result<CurveGerm> {
    let rs = double_rays(f)?;
    Ok(image_double_curve_of(f, &rs))
}

pub fn image_double_curve_of(f: &MapGerm, rs: &RaySystem) -> CurveGerm {
    let branches = rs
        .classes()
        .into_iter()
        .map(|(a, b)| {
            let arc = image_arc(f, &rs.rays[a]);
            arc.with_label(format!("{} ~ {}", rs.rays[a].short_label(), rs.rays[b].short_label()))
        })
        .collect();
    CurveGerm::new(branches)
}
