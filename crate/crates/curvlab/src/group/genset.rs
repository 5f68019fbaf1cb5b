//! Symmetric finite generating sets given as words over the base alphabet.

use crate::error::{Error, Result};

use super::letters::{parse_word, GroupElement};
use super::oracle::{parse_group_spec, GroupOracle};

/// A validated symmetric generating set: no identity, closed under inversion,
/// members pairwise distinct as normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    members: Vec<GroupElement>,
    inverse_pairing: Vec<usize>,
    label: String,
    partition_tags: Option<Vec<u8>>,
}

/// Builds and validates a generating set from words in the
/// lowercase/uppercase convention, preserving the given member order.
pub fn make_generating_set(
    oracle: &GroupOracle,
    words: &[&str],
    label: &str,
) -> Result<GeneratingSet> {
    let mut members = Vec::with_capacity(words.len());
    for word in words {
        let letters = parse_word(word)?;
        let elem = oracle.normalize(&letters)?;
        if elem.is_identity() {
            return Err(Error::ContainsIdentity {
                word: (*word).to_string(),
            });
        }
        if members.contains(&elem) {
            return Err(Error::DuplicateMember {
                member: elem.to_string(),
            });
        }
        members.push(elem);
    }
    if members.is_empty() {
        return Err(Error::InvalidGeneratingSet("no members".to_string()));
    }
    let mut inverse_pairing = Vec::with_capacity(members.len());
    for member in &members {
        let inv = oracle.invert(member);
        match members.iter().position(|m| *m == inv) {
            Some(idx) => inverse_pairing.push(idx),
            None => {
                return Err(Error::NotSymmetric {
                    member: member.to_string(),
                })
            }
        }
    }
    Ok(GeneratingSet {
        members,
        inverse_pairing,
        label: label.to_string(),
        partition_tags: None,
    })
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn member(&self, idx: usize) -> &GroupElement {
        &self.members[idx]
    }

    /// Index of the inverse of member `idx`; an involution.
    pub fn inverse_of(&self, idx: usize) -> usize {
        self.inverse_pairing[idx]
    }

    pub fn position(&self, elem: &GroupElement) -> Option<usize> {
        self.members.iter().position(|m| m == elem)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Optional per-member tag (used for the S_gamma^1 / S_gamma^2 split).
    pub fn partition_tag(&self, idx: usize) -> Option<u8> {
        self.partition_tags.as_ref().map(|t| t[idx])
    }

    pub fn set_partition_tags(&mut self, tags: Vec<u8>) {
        assert_eq!(tags.len(), self.members.len());
        self.partition_tags = Some(tags);
    }

    /// Member normal forms as words, in member order.
    pub fn member_words(&self) -> Vec<String> {
        self.members.iter().map(|m| m.to_string()).collect()
    }

    /// True when the members are exactly the oracle's standard letter
    /// generators (in any order); enables closed-form length fast paths.
    pub fn is_std(&self, oracle: &GroupOracle) -> bool {
        let std_words = oracle.std_generator_words();
        if std_words.len() != self.members.len() {
            return false;
        }
        std_words
            .iter()
            .all(|w| self.members.iter().any(|m| m.to_string() == *w))
    }
}

/// The named generating sets used throughout: the standard letters plus the
/// three free-group examples and the Z * Z^2 set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// {a, a^-1, b, b^-1} on free:2.
    SAlpha,
    /// S_alpha plus {aba, (aba)^-1} on free:2.
    SBeta,
    /// S_alpha plus {ababa, (ababa)^-1} on free:2.
    SGamma,
    /// {a, a^-1, b, b^-1, t, t^-1} on zxz2.
    SNeg,
    /// Standard letter generators of whichever oracle is chosen.
    Std,
}

impl Preset {
    pub fn parse(name: &str) -> Option<Preset> {
        match name {
            "salpha" => Some(Preset::SAlpha),
            "sbeta" => Some(Preset::SBeta),
            "sgamma" => Some(Preset::SGamma),
            "sneg" => Some(Preset::SNeg),
            "std" => Some(Preset::Std),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::SAlpha => "salpha",
            Preset::SBeta => "sbeta",
            Preset::SGamma => "sgamma",
            Preset::SNeg => "sneg",
            Preset::Std => "std",
        }
    }

    /// The group this preset is defined on, or `None` for `Std` (which takes
    /// whatever oracle the caller supplies).
    pub fn group_spec(&self) -> Option<&'static str> {
        match self {
            Preset::SAlpha | Preset::SBeta | Preset::SGamma => Some("free:2"),
            Preset::SNeg => Some("zxz2"),
            Preset::Std => None,
        }
    }

    pub fn generator_words(&self, oracle: &GroupOracle) -> Vec<String> {
        let own = |words: &[&str]| words.iter().map(|w| (*w).to_string()).collect();
        match self {
            Preset::SAlpha => own(&["a", "A", "b", "B"]),
            Preset::SBeta => own(&["a", "A", "b", "B", "aba", "ABA"]),
            Preset::SGamma => own(&["a", "A", "b", "B", "ababa", "ABABA"]),
            Preset::SNeg => own(&["a", "A", "b", "B", "t", "T"]),
            Preset::Std => oracle.std_generator_words(),
        }
    }

    /// Builds the oracle (unless `Std`, which uses the given one) and the
    /// validated generating set, with partition tags attached for S_gamma.
    pub fn instantiate(&self, oracle: &GroupOracle) -> Result<GeneratingSet> {
        if let Some(spec) = self.group_spec() {
            if oracle.spec_str() != spec {
                return Err(Error::InvalidArgument(format!(
                    "preset {} is defined on {spec}, not {}",
                    self.name(),
                    oracle.spec_str()
                )));
            }
        }
        let words = self.generator_words(oracle);
        let word_refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let mut gens = make_generating_set(oracle, &word_refs, self.name())?;
        if *self == Preset::SGamma {
            // S_gamma^1 = {a, b^-1, w}, S_gamma^2 = {a^-1, b, w^-1},
            // in member order a, A, b, B, w, W.
            gens.set_partition_tags(vec![1, 2, 2, 1, 1, 2]);
        }
        Ok(gens)
    }

    /// Convenience: oracle plus generating set for presets that pin a group.
    pub fn oracle_and_gens(&self) -> Result<(GroupOracle, GeneratingSet)> {
        let spec = self.group_spec().ok_or_else(|| {
            Error::InvalidArgument("preset std needs an explicit group".to_string())
        })?;
        let oracle = parse_group_spec(spec)?;
        let gens = self.instantiate(&oracle)?;
        Ok((oracle, gens))
    }
}
