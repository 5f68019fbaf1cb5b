//! Discrete Heisenberg group H(Z): normal form a^p b^q c^r with the central
//! commutator c = a b a^-1 b^-1, so that b a = a b c^-1.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct Triple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl Triple {
    pub(crate) fn mul(self, rhs: Triple) -> Triple {
        // Derived from the upper-triangular matrix representation:
        // a^p b^q c^r <-> [[1, p, pq + r], [0, 1, q], [0, 0, 1]].
        Triple {
            p: self.p + rhs.p,
            q: self.q + rhs.q,
            r: self.r + rhs.r - rhs.p * self.q,
        }
    }

    pub(crate) fn inv(self) -> Triple {
        Triple {
            p: -self.p,
            q: -self.q,
            r: -self.r - self.p * self.q,
        }
    }
}

pub(crate) fn letter_triple(byte: u8) -> Triple {
    let sign = if byte.is_ascii_uppercase() { -1 } else { 1 };
    match byte.to_ascii_lowercase() {
        b'a' => Triple {
            p: sign,
            q: 0,
            r: 0,
        },
        b'b' => Triple {
            p: 0,
            q: sign,
            r: 0,
        },
        b'c' => Triple {
            p: 0,
            q: 0,
            r: sign,
        },
        other => unreachable!("letter {} outside heisenberg alphabet", other as char),
    }
}

pub(crate) fn parse(bytes: &[u8]) -> Triple {
    bytes
        .iter()
        .fold(Triple::default(), |acc, &b| acc.mul(letter_triple(b)))
}

pub(crate) fn emit(t: Triple, out: &mut Vec<u8>) {
    for (exp, lower, upper) in [(t.p, b'a', b'A'), (t.q, b'b', b'B'), (t.r, b'c', b'C')] {
        let byte = if exp < 0 { upper } else { lower };
        for _ in 0..exp.unsigned_abs() {
            out.push(byte);
        }
    }
}

pub(crate) fn mul_into(out: &mut Vec<u8>, a: &[u8], b: &[u8]) {
    emit(parse(a).mul(parse(b)), out);
}

pub(crate) fn invert(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bytes.len());
    emit(parse(bytes).inv(), &mut out);
    out
}
