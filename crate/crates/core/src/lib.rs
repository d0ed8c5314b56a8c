//! Exact computation of Jacobian syzygies, freeness, singularity invariants,
//! Hodge spectra and Alexander polynomials of reduced plane curves, with
//! closed-form oracles for three families of curves built from conic pencils.

pub mod algebra;
pub mod derham;
pub mod error;
pub mod exactla;
pub mod families;
pub mod invariants;
pub mod report;
pub mod syzygy;
pub mod topology;

pub use error::{Error, Result};
