//! Base letters and canonical group elements.
//!
//! Textual convention everywhere: a lowercase ASCII letter is a positive base
//! letter, the corresponding uppercase letter is its inverse ("A" = a^-1).
//! The empty normal form is the identity and prints as "1".

use std::fmt;

use crate::error::{Error, Result};

/// One base letter with its inverse flag, packed as the ASCII byte it prints as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn from_ascii(byte: u8) -> Option<Letter> {
        byte.is_ascii_alphabetic().then_some(Letter(byte))
    }

    pub fn new(symbol: u8, inverse: bool) -> Letter {
        debug_assert!(symbol.is_ascii_lowercase());
        Letter(if inverse {
            symbol.to_ascii_uppercase()
        } else {
            symbol
        })
    }

    /// Lowercase symbol this letter is a power of.
    pub fn symbol(self) -> u8 {
        self.0.to_ascii_lowercase()
    }

    pub fn is_inverse(self) -> bool {
        self.0.is_ascii_uppercase()
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        if self.is_inverse() {
            Letter(self.0.to_ascii_lowercase())
        } else {
            Letter(self.0.to_ascii_uppercase())
        }
    }

    pub fn as_byte(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as char)
    }
}

/// Two letters that cancel: x followed by x^-1.
pub(crate) fn cancels(a: u8, b: u8) -> bool {
    a ^ b == 0x20 // same letter, opposite case
}

/// Parses a word in the lowercase/uppercase convention. "1" denotes the
/// identity (empty word). No separators are allowed inside a word.
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(Vec::new());
    }
    trimmed
        .bytes()
        .map(|b| {
            Letter::from_ascii(b).ok_or(Error::UnknownLetter {
                letter: b as char,
                alphabet: "a-z/A-Z".to_string(),
            })
        })
        .collect()
}

/// A group element held as its canonical normal form.
///
/// Two elements of the same group are equal iff their byte strings are equal.
/// `Ord` is plain lexicographic byte order; the canonical table order
/// (word-metric length first) is imposed by the table, not by this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    nf: Box<[u8]>,
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        GroupElement { nf: Box::new([]) }
    }

    /// Wraps bytes that are already a canonical normal form.
    pub(crate) fn from_normalized(bytes: Vec<u8>) -> GroupElement {
        GroupElement {
            nf: bytes.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.nf
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.nf.iter().map(|&b| Letter(b))
    }

    /// Number of base letters in the normal form (not the word-metric length).
    pub fn letter_len(&self) -> usize {
        self.nf.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nf.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(std::str::from_utf8(&self.nf).expect("normal forms are ASCII"))
        }
    }
}
