//! Z * Z^2 = <t, a, b | ab = ba>: normal form = alternating maximal syllables
//! t^k / a^p b^q with no empty syllables, abelian syllables a-exponent first.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Syllable {
    T(i64),
    Ab(i64, i64),
}

impl Syllable {
    fn is_empty(self) -> bool {
        match self {
            Syllable::T(k) => k == 0,
            Syllable::Ab(p, q) => p == 0 && q == 0,
        }
    }
}

/// Pushes a syllable, merging with the top when types match and collapsing
/// syllables that cancel to empty (which makes the two exposed neighbours
/// adjacent and of equal type, so the merge recurses through the stack).
pub(crate) fn push_syllable(stack: &mut Vec<Syllable>, syl: Syllable) {
    if syl.is_empty() {
        return;
    }
    match (stack.last().copied(), syl) {
        (Some(Syllable::T(k1)), Syllable::T(k2)) => {
            stack.pop();
            if k1 + k2 == 0 {
                if let Some(prev) = stack.pop() {
                    push_syllable(stack, prev);
                }
            } else {
                stack.push(Syllable::T(k1 + k2));
            }
        }
        (Some(Syllable::Ab(p1, q1)), Syllable::Ab(p2, q2)) => {
            stack.pop();
            if p1 + p2 == 0 && q1 + q2 == 0 {
                if let Some(prev) = stack.pop() {
                    push_syllable(stack, prev);
                }
            } else {
                stack.push(Syllable::Ab(p1 + p2, q1 + q2));
            }
        }
        _ => stack.push(syl),
    }
}

pub(crate) fn push_letter(stack: &mut Vec<Syllable>, byte: u8) {
    let syl = match byte {
        b't' => Syllable::T(1),
        b'T' => Syllable::T(-1),
        b'a' => Syllable::Ab(1, 0),
        b'A' => Syllable::Ab(-1, 0),
        b'b' => Syllable::Ab(0, 1),
        b'B' => Syllable::Ab(0, -1),
        other => unreachable!("letter {} outside zxz2 alphabet", other as char),
    };
    push_syllable(stack, syl);
}

pub(crate) fn emit(stack: &[Syllable], out: &mut Vec<u8>) {
    for &syl in stack {
        match syl {
            Syllable::T(k) => {
                let byte = if k < 0 { b'T' } else { b't' };
                for _ in 0..k.unsigned_abs() {
                    out.push(byte);
                }
            }
            Syllable::Ab(p, q) => {
                let pb = if p < 0 { b'A' } else { b'a' };
                for _ in 0..p.unsigned_abs() {
                    out.push(pb);
                }
                let qb = if q < 0 { b'B' } else { b'b' };
                for _ in 0..q.unsigned_abs() {
                    out.push(qb);
                }
            }
        }
    }
}

pub(crate) fn mul_into(out: &mut Vec<u8>, a: &[u8], b: &[u8]) {
    let mut stack = Vec::new();
    for &byte in a.iter().chain(b) {
        push_letter(&mut stack, byte);
    }
    emit(&stack, out);
}

pub(crate) fn invert(bytes: &[u8]) -> Vec<u8> {
    let mut stack = Vec::new();
    for &byte in bytes.iter().rev() {
        push_letter(&mut stack, byte ^ 0x20);
    }
    let mut out = Vec::with_capacity(bytes.len());
    emit(&stack, &mut out);
    out
}
