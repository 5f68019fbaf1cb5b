//! Exhaustive breadth-first enumeration of Cayley balls: word-length tables,
//! sphere indexes, distance queries, and length-change classification.

mod build;
mod io;

pub use build::{build_word_metric, BuildOptions};
pub use io::{load_table, save_table};

use hashbrown::hash_table::HashTable;
use rustc_hash::FxBuildHasher;
use std::hash::BuildHasher;

use crate::error::{Error, Result};
use crate::group::{GeneratingSet, GroupElement, GroupOracle};

/// Sign of the length change under one-generator multiplication. The triangle
/// inequality pins it to exactly these three values since every generator has
/// word length 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthDelta {
    Shorter,
    Same,
    Longer,
}

impl LengthDelta {
    pub fn value(self) -> i8 {
        match self {
            LengthDelta::Shorter => -1,
            LengthDelta::Same => 0,
            LengthDelta::Longer => 1,
        }
    }
}

pub(crate) fn hash_bytes(hasher: &FxBuildHasher, bytes: &[u8]) -> u64 {
    hasher.hash_one(bytes)
}

/// Exhaustive word-length table for the ball of a fixed radius.
///
/// Elements are interned once in an append-only byte arena; `order` lists the
/// element ids in canonical order (word length first, then lexicographic
/// normal form), which is the serialization and iteration order everywhere.
/// A completed table is immutable and safe for concurrent reads.
pub struct WordMetricTable {
    oracle: GroupOracle,
    gens: GeneratingSet,
    radius: u32,
    pub(crate) bytes: Vec<u8>,
    pub(crate) ends: Vec<u32>,
    pub(crate) level_starts: Vec<u32>,
    pub(crate) order: Vec<u32>,
    pub(crate) index: HashTable<u32>,
    pub(crate) hasher: FxBuildHasher,
    fast: bool,
}

impl WordMetricTable {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        oracle: GroupOracle,
        gens: GeneratingSet,
        radius: u32,
        bytes: Vec<u8>,
        ends: Vec<u32>,
        level_starts: Vec<u32>,
        order: Vec<u32>,
        index: HashTable<u32>,
        hasher: FxBuildHasher,
    ) -> Self {
        let fast = oracle.has_std_fast_length() && gens.is_std(&oracle);
        WordMetricTable {
            oracle,
            gens,
            radius,
            bytes,
            ends,
            level_starts,
            order,
            index,
            hasher,
            fast,
        }
    }

    pub fn oracle(&self) -> &GroupOracle {
        &self.oracle
    }

    pub fn gens(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Whether closed-form lengths extend this table past its radius.
    pub fn has_fast_length(&self) -> bool {
        self.fast
    }

    pub fn element_count(&self) -> u64 {
        self.ends.len() as u64
    }

    pub(crate) fn elem_bytes(&self, id: u32) -> &[u8] {
        let start = if id == 0 {
            0
        } else {
            self.ends[id as usize - 1] as usize
        };
        &self.bytes[start..self.ends[id as usize] as usize]
    }

    /// Materializes the element with the given id.
    pub fn element(&self, id: u32) -> GroupElement {
        GroupElement::from_normalized(self.elem_bytes(id).to_vec())
    }

    pub(crate) fn lookup_bytes(&self, probe: &[u8]) -> Option<u32> {
        let h = hash_bytes(&self.hasher, probe);
        self.index
            .find(h, |&id| self.elem_bytes(id) == probe)
            .copied()
    }

    /// Word length of the interned element `id`.
    pub fn id_length(&self, id: u32) -> u32 {
        debug_assert!((id as usize) < self.ends.len());
        // level_starts has radius + 2 entries; partition over at most R + 1 levels
        (self.level_starts.partition_point(|&s| s <= id) - 1) as u32
    }

    pub fn sphere_size(&self, n: u32) -> u64 {
        assert!(n <= self.radius, "sphere {n} beyond radius {}", self.radius);
        (self.level_starts[n as usize + 1] - self.level_starts[n as usize]) as u64
    }

    pub fn ball_size(&self, n: u32) -> u64 {
        assert!(n <= self.radius, "ball {n} beyond radius {}", self.radius);
        self.level_starts[n as usize + 1] as u64
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        (0..=self.radius).map(|n| self.sphere_size(n)).collect()
    }

    /// Ids of the sphere of radius `n`, in canonical order.
    pub fn sphere_ids(&self, n: u32) -> &[u32] {
        assert!(n <= self.radius, "sphere {n} beyond radius {}", self.radius);
        let lo = self.level_starts[n as usize] as usize;
        let hi = self.level_starts[n as usize + 1] as usize;
        &self.order[lo..hi]
    }

    /// All ids of the ball of radius `n`, in canonical order.
    pub fn ball_ids(&self, n: u32) -> &[u32] {
        assert!(n <= self.radius, "ball {n} beyond radius {}", self.radius);
        &self.order[..self.level_starts[n as usize + 1] as usize]
    }

    fn out_of_radius(&self, bytes: &[u8], needed: Option<u32>) -> Error {
        let element = if bytes.is_empty() {
            "1".to_string()
        } else {
            String::from_utf8_lossy(bytes).into_owned()
        };
        Error::OutOfRadius {
            element,
            radius: self.radius,
            needed,
        }
    }

    /// Length of an element: table lookup first, closed form beyond the
    /// radius when the generating set is the standard one.
    pub(crate) fn length_of_bytes(&self, bytes: &[u8]) -> Result<u64> {
        if let Some(id) = self.lookup_bytes(bytes) {
            return Ok(self.id_length(id) as u64);
        }
        if self.fast {
            return Ok(bytes.len() as u64);
        }
        Err(self.out_of_radius(bytes, None))
    }

    /// Word length |g|_S. Errors with `OutOfRadius` when g lies outside the
    /// enumerated ball and no closed-form length applies; it never guesses.
    pub fn word_length(&self, g: &GroupElement) -> Result<u64> {
        self.length_of_bytes(g.as_bytes())
    }

    /// Left-invariant word metric d(g, h) = |h^-1 g|.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> Result<u64> {
        let mut buf = Vec::with_capacity(g.letter_len() + h.letter_len());
        self.oracle.mul_into(
            &mut buf,
            &self.oracle.invert_bytes(h.as_bytes()),
            g.as_bytes(),
        );
        self.length_of_bytes(&buf)
    }

    /// Length of `other`, which is known to sit at distance at most 1 from an
    /// element of length `base_len`. A lookup miss on a full table pins the
    /// answer to `base_len + 1` when `base_len` is the table radius.
    fn adjacent_length(&self, base_len: u64, other: &[u8]) -> Result<u64> {
        match self.length_of_bytes(other) {
            Ok(l) => Ok(l),
            Err(_) if base_len == self.radius as u64 => Ok(base_len + 1),
            Err(e) => Err(e),
        }
    }

    fn delta_from(&self, base_len: u64, other_len: u64) -> LengthDelta {
        match other_len as i64 - base_len as i64 {
            -1 => LengthDelta::Shorter,
            0 => LengthDelta::Same,
            1 => LengthDelta::Longer,
            d => unreachable!("length delta {d} violates the triangle inequality"),
        }
    }

    fn generator_index(&self, s: &GroupElement) -> Result<usize> {
        self.gens
            .position(s)
            .ok_or_else(|| Error::NotAGenerator(s.to_string()))
    }

    /// Sign of |sg| - |g| for a generator s.
    pub fn classify_left_mult(&self, s: &GroupElement, g: &GroupElement) -> Result<LengthDelta> {
        self.generator_index(s)?;
        let n = self.word_length(g)?;
        let mut buf = Vec::with_capacity(s.letter_len() + g.letter_len());
        self.oracle.mul_into(&mut buf, s.as_bytes(), g.as_bytes());
        Ok(self.delta_from(n, self.adjacent_length(n, &buf)?))
    }

    /// Sign of |gs| - |g| for a generator s.
    pub fn classify_right_mult(&self, g: &GroupElement, s: &GroupElement) -> Result<LengthDelta> {
        self.generator_index(s)?;
        let n = self.word_length(g)?;
        let mut buf = Vec::with_capacity(s.letter_len() + g.letter_len());
        self.oracle.mul_into(&mut buf, g.as_bytes(), s.as_bytes());
        Ok(self.delta_from(n, self.adjacent_length(n, &buf)?))
    }

    /// Member indices i such that member i can start a geodesic spelling of g,
    /// i.e. i indexes s^-1 for some s with |sg| = |g| - 1. Sorted by index.
    pub(crate) fn start_letter_indices(&self, g_bytes: &[u8]) -> Result<Vec<usize>> {
        if g_bytes.is_empty() {
            return Err(Error::IdentityElement);
        }
        let n = self.length_of_bytes(g_bytes)?;
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for i in 0..self.gens.len() {
            self.oracle
                .mul_into(&mut buf, self.gens.member(i).as_bytes(), g_bytes);
            if self.adjacent_length(n, &buf)? == n - 1 {
                out.push(self.gens.inverse_of(i));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Mirror of `start_letter_indices` for last letters: i indexes s^-1 for
    /// some s with |gs| = |g| - 1.
    pub(crate) fn end_letter_indices(&self, g_bytes: &[u8]) -> Result<Vec<usize>> {
        if g_bytes.is_empty() {
            return Err(Error::IdentityElement);
        }
        let n = self.length_of_bytes(g_bytes)?;
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for i in 0..self.gens.len() {
            self.oracle
                .mul_into(&mut buf, g_bytes, self.gens.member(i).as_bytes());
            if self.adjacent_length(n, &buf)? == n - 1 {
                out.push(self.gens.inverse_of(i));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Possible first letters of geodesic spellings of g: the set
    /// {s^-1 : |sg| = |g| - 1}, returned in member order.
    pub fn start_letters(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        Ok(self
            .start_letter_indices(g.as_bytes())?
            .into_iter()
            .map(|i| self.gens.member(i).clone())
            .collect())
    }

    /// Possible last letters of geodesic spellings of g.
    pub fn end_letters(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        Ok(self
            .end_letter_indices(g.as_bytes())?
            .into_iter()
            .map(|i| self.gens.member(i).clone())
            .collect())
    }

    /// Canonical text serialization of the whole table (the save format).
    pub fn canonical_serialization(&self) -> Vec<u8> {
        io::serialize_to_vec(self)
    }
}
