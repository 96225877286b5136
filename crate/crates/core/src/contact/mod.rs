//! Contact orders of arcs and the outer classification of curve germs by
//! their contact matrices.

mod arc;
mod matrix;
mod order;

pub use arc::{CurveGerm, PuiseuxArc};
pub use matrix::{contact_matrix, curves_outer_equivalent, matrices_equivalent, ContactMatrix};
pub use order::{contact_order, contact_order_radius, contact_order_with_depth, default_depth, Contact};
