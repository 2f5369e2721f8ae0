//! Core algorithms for a coupling-constant resonance laboratory.
//!
//! The crate evaluates Herglotz (Nevanlinna) boundary data for a catalog of
//! spectral models, locates resonance points of the associated coupling
//! families, and verifies the identities tying those points to scattering
//! phases: the Breit-Wigner derivative law, phase sum rules over coupling
//! intervals, and the split of the spectral shift function into absolutely
//! continuous and singular parts.

pub mod corpus;
pub mod finite_rank;
pub mod herglotz;
pub mod numerics;
pub mod rank_one;

pub use finite_rank::{FiniteRankError, ResonanceSet, SsfDecomposition};
pub use herglotz::{HerglotzError, MatrixHerglotzModel, ScalarHerglotzModel};
pub use numerics::NumericsError;
pub use rank_one::{PhaseTrace, RankOneError, ResonancePoint};
