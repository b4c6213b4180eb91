//! Exact computations with monomial ideals in `K[x, y]` and in numerical
//! semigroup rings: staircase arithmetic, Hilbert–Samuel data, depth probes
//! for the associated graded ring and fiber cone, and a Monte-Carlo test of
//! reduction number at most one.

pub mod depth;
pub mod error;
pub mod hilbert;
pub mod reduction;
pub mod semigroup;
pub mod staircase;

pub use error::{DepthError, HilbertError, ReductionError, SemigroupError, StaircaseError};
pub use staircase::{CommonFactor, LexSpec, Monomial, MonomialIdeal2, PowerTable};
