//! Floating-point cross-checks of the exact pipeline: contact orders and
//! sector exponents from log-log fits, normal-embedding estimates on
//! meshes, link tracing and the radial extension of link maps.

mod arcs;
mod link;
mod mesh;
mod radial;
pub mod svg;
mod verify;

pub use arcs::{
    direction_arc, estimate_contact, estimate_sector_exponent, point_at_radius, radius_grid, ContactEstimate,
    SampledArc, SectorEstimate, COINCIDENCE, DEFAULT_RADII, RESIDUAL_LIMIT,
};
pub use link::{trace_link, LinkPolyline};
pub use mesh::{lne_estimate, shortest_paths, LneEstimate, TriMesh, LNE_FLAG_THRESHOLD};
pub use radial::{lipschitz_estimate, radial_extension, LinkCorrespondence, LipschitzReport, BOUND_SLACK};
pub use verify::{verify_germ, CheckKind, CheckRow, VerifyReport};
