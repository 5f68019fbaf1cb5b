//! Group elements as canonical normal forms, plus oracles for the supported
//! group families and validated symmetric generating sets.
//!
//! Normal-form conventions, fixed once per family:
//! - free groups: freely reduced letter sequence;
//! - Z^d: exponent vector in symbol order;
//! - Z * Z^2: alternating maximal syllables, abelian syllables a-first;
//! - Heisenberg: a^p b^q c^r with c = a b a^-1 b^-1 central.

mod abelian;
mod free;
mod genset;
mod heisenberg;
mod letters;
mod oracle;
mod zxz2;

pub use genset::{make_generating_set, GeneratingSet, Preset};
pub use letters::{parse_word, GroupElement, Letter};
pub use oracle::{parse_group_spec, GroupKind, GroupOracle};
