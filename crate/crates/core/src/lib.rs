//! Computations with 1- and 2-variable weighted shifts: moments, joint
//! hyponormality (Six-point Test), subnormality certificates and
//! obstructions (Berger measures, backward extensions, moment-matrix
//! positivity), and parameterized constructors for four families of
//! 2-variable shifts with prescribed hyponormality/subnormality behavior.
//!
//! Weights are stored **squared** throughout: every test used here
//! (commutativity, the Six-point Test, moment-matrix determinants) is
//! polynomial in the squared weights once commutativity holds, which keeps
//! the whole pipeline inside exact rational arithmetic whenever the input
//! data is rational. Unsquared weights appear only in display output.

pub mod error;
pub mod families;
pub mod measures;
pub mod poly;
pub mod psd;
pub mod registry;
pub mod report;
pub mod scalar;
pub mod shifts1d;
pub mod shifts2d;

pub use error::{Result, ShiftError};
pub use scalar::{numeric, Scalar};
