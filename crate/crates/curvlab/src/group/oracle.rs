//! Pluggable group oracles: canonical forms, products and inverses for the
//! supported group families.

use std::fmt;

use crate::error::{Error, Result};

use super::letters::{GroupElement, Letter};
use super::{abelian, free, heisenberg, zxz2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Free group of the given rank, letters a, b, c, ...
    Free(u32),
    /// Free abelian group Z^d, letters a, b, c, ...
    Abelian(u32),
    /// Z * Z^2 = <t, a, b | ab = ba>.
    ZxZ2,
    /// Discrete Heisenberg group, letters a, b and the central c = [a, b].
    Heisenberg,
}

/// A group with a solved word problem, fixed once per computation.
///
/// Oracles are pure and stateless after construction; all methods take
/// `&self` and the type is `Send + Sync`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOracle {
    kind: GroupKind,
    spec: String,
}

/// Parses a group-spec DSL string: "free:R", "abelian:D", "zxz2", "heisenberg".
pub fn parse_group_spec(spec: &str) -> Result<GroupOracle> {
    let trimmed = spec.trim();
    let kind = if let Some(rank) = trimmed.strip_prefix("free:") {
        match rank.parse::<u32>() {
            Ok(r) if (1..=26).contains(&r) => GroupKind::Free(r),
            _ => return Err(Error::UnknownSpec(spec.to_string())),
        }
    } else if let Some(rank) = trimmed.strip_prefix("abelian:") {
        match rank.parse::<u32>() {
            Ok(d) if (1..=26).contains(&d) => GroupKind::Abelian(d),
            _ => return Err(Error::UnknownSpec(spec.to_string())),
        }
    } else {
        match trimmed {
            "zxz2" => GroupKind::ZxZ2,
            "heisenberg" => GroupKind::Heisenberg,
            _ => return Err(Error::UnknownSpec(spec.to_string())),
        }
    };
    Ok(GroupOracle {
        kind,
        spec: trimmed.to_string(),
    })
}

impl GroupOracle {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// The group-spec DSL string this oracle was parsed from ("free:2", ...).
    pub fn spec_str(&self) -> &str {
        &self.spec
    }

    /// Lowercase base symbols of the group presentation.
    pub fn alphabet(&self) -> Vec<u8> {
        match self.kind {
            GroupKind::Free(r) | GroupKind::Abelian(r) => (0..r).map(|i| b'a' + i as u8).collect(),
            GroupKind::ZxZ2 => vec![b'a', b'b', b't'],
            GroupKind::Heisenberg => vec![b'a', b'b', b'c'],
        }
    }

    pub fn contains_symbol(&self, symbol: u8) -> bool {
        match self.kind {
            GroupKind::Free(r) | GroupKind::Abelian(r) => (b'a'..b'a' + r as u8).contains(&symbol),
            GroupKind::ZxZ2 => matches!(symbol, b'a' | b'b' | b't'),
            GroupKind::Heisenberg => matches!(symbol, b'a' | b'b' | b'c'),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity()
    }

    /// Canonical normal form of a product of base letters.
    pub fn normalize(&self, word: &[Letter]) -> Result<GroupElement> {
        for &l in word {
            if !self.contains_symbol(l.symbol()) {
                return Err(Error::UnknownLetter {
                    letter: l.as_byte() as char,
                    alphabet: self.alphabet().iter().map(|&b| b as char).collect(),
                });
            }
        }
        let bytes: Vec<u8> = word.iter().map(|l| l.as_byte()).collect();
        let mut out = Vec::with_capacity(bytes.len());
        self.mul_into(&mut out, &[], &bytes);
        Ok(GroupElement::from_normalized(out))
    }

    /// Parses a word in the lowercase/uppercase convention and normalizes it.
    pub fn normalize_str(&self, text: &str) -> Result<GroupElement> {
        let word = super::letters::parse_word(text)?;
        self.normalize(&word)
    }

    /// Canonical form of g * h.
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(g.letter_len() + h.letter_len());
        self.mul_into(&mut out, g.as_bytes(), h.as_bytes());
        GroupElement::from_normalized(out)
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        GroupElement::from_normalized(self.invert_bytes(g.as_bytes()))
    }

    /// Writes the normal form of a * b into `out` (cleared first). Both
    /// inputs must already be normal forms of this oracle.
    pub(crate) fn mul_into(&self, out: &mut Vec<u8>, a: &[u8], b: &[u8]) {
        out.clear();
        match self.kind {
            GroupKind::Free(_) => {
                out.extend_from_slice(a);
                free::append_reduced(out, b);
            }
            GroupKind::Abelian(r) => abelian::mul_into(r as usize, out, a, b),
            GroupKind::ZxZ2 => zxz2::mul_into(out, a, b),
            GroupKind::Heisenberg => heisenberg::mul_into(out, a, b),
        }
    }

    pub(crate) fn invert_bytes(&self, bytes: &[u8]) -> Vec<u8> {
        match self.kind {
            GroupKind::Free(_) => free::invert(bytes),
            GroupKind::Abelian(r) => abelian::invert(r as usize, bytes),
            GroupKind::ZxZ2 => zxz2::invert(bytes),
            GroupKind::Heisenberg => heisenberg::invert(bytes),
        }
    }

    /// Closed-form word length with respect to the standard letter generators,
    /// where one exists. For free groups this is the reduced letter count, for
    /// Z^d the L1 norm, and for Z * Z^2 the total syllable letter count; all
    /// three coincide with the normal-form letter count. Heisenberg has no
    /// closed form here.
    pub fn fast_length(&self, g: &GroupElement) -> Option<u64> {
        match self.kind {
            GroupKind::Free(_) | GroupKind::Abelian(_) | GroupKind::ZxZ2 => {
                Some(g.letter_len() as u64)
            }
            GroupKind::Heisenberg => None,
        }
    }

    pub fn has_std_fast_length(&self) -> bool {
        !matches!(self.kind, GroupKind::Heisenberg)
    }

    /// The standard symmetric letter generating set, as words.
    pub fn std_generator_words(&self) -> Vec<String> {
        let letters: Vec<u8> = match self.kind {
            GroupKind::Free(r) | GroupKind::Abelian(r) => (0..r).map(|i| b'a' + i as u8).collect(),
            GroupKind::ZxZ2 => vec![b'a', b'b', b't'],
            GroupKind::Heisenberg => vec![b'a', b'b'],
        };
        let mut words = Vec::with_capacity(letters.len() * 2);
        for l in letters {
            words.push((l as char).to_string());
            words.push((l.to_ascii_uppercase() as char).to_string());
        }
        words
    }
}

impl fmt::Display for GroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}
