//! Exact inner bi-Lipschitz classification of corank-1 homogeneous surface
//! germs `(x, p(x,y), q(x,y))`, with a floating-point oracle that
//! cross-checks every exact quantity.

pub mod classifier;
pub mod complex;
pub mod contact;
pub mod error;
pub mod germ;
pub mod kernel;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Certificate, Distinction, Verdict};
