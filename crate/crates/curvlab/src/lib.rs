//! Conjugation curvature on Cayley balls of finitely generated groups.
//!
//! The library enumerates Cayley-graph balls of groups with a solvable word
//! problem (free groups, free abelian groups, `Z * Z^2`, discrete Heisenberg),
//! builds exhaustive word-metric tables, and computes exact-rational
//! conjugation curvatures, Gromov products, four-point hyperbolicity defects,
//! and per-sphere density censuses over those tables.
//!
//! The typical flow is: pick a [`GroupOracle`], build a [`GeneratingSet`]
//! (presets for the standard examples live in [`group::Preset`]), enumerate a
//! ball with [`cayley::build_word_metric`], then query the curvature and
//! hyperbolicity modules against the resulting [`WordMetricTable`].

pub mod cayley;
pub mod curvature;
pub mod density;
pub mod error;
pub mod group;
pub mod hyperbolicity;
pub mod report;

pub use cayley::{build_word_metric, BuildOptions, LengthDelta, WordMetricTable};
pub use error::{Error, Result};
pub use group::{GeneratingSet, GroupElement, GroupOracle, Letter, Preset};

/// Exact rational scalar used for every curvature and fraction in the crate.
///
/// Numerators and denominators stay well inside `i64` at the ball sizes the
/// builder accepts: sums of word lengths are bounded by `|S_k| * (R + 2k)`.
pub type Rational = num_rational::Rational64;
