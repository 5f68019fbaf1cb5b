//! Free group F_r: normal form = freely reduced letter string.

use super::letters::cancels;

/// Appends `rhs` (already reduced) to the reduced word in `buf`, cancelling
/// inverse pairs at the seam. The result is the reduced form of the product.
pub(crate) fn append_reduced(buf: &mut Vec<u8>, rhs: &[u8]) {
    for &b in rhs {
        match buf.last() {
            Some(&top) if cancels(top, b) => {
                buf.pop();
            }
            _ => buf.push(b),
        }
    }
}

pub(crate) fn invert(bytes: &[u8]) -> Vec<u8> {
    bytes.iter().rev().map(|&b| b ^ 0x20).collect()
}
