//! Numerical estimation of projective hulls in complex projective space.
//!
//! The toolkit samples a compact set, bounds its best-constant function by a
//! Chebyshev-type polynomial solver, evaluates Siciak–Zaharyuta extremal
//! functions on affine charts, and constructs/verifies the analytic-disc
//! certificates (Poletsky sequences, bounded lifts, disc-functional
//! minimizers, Blaschke pole cancellation) that characterize hull membership.

pub mod cpoly;
pub mod discs;
pub mod error;
pub mod fixtures;
pub mod hullengine;
pub mod io;
pub mod projgeom;
pub mod polyspace;

pub(crate) mod lawson;

pub use error::{HullError, Result};
