//! Free abelian group Z^d: normal form = exponent vector in symbol order,
//! written as sign-uniform letter runs ("aaB" = a^2 b^-1).

pub(crate) fn accumulate(exps: &mut [i64], bytes: &[u8]) {
    for &b in bytes {
        let idx = (b.to_ascii_lowercase() - b'a') as usize;
        exps[idx] += if b.is_ascii_uppercase() { -1 } else { 1 };
    }
}

pub(crate) fn emit(exps: &[i64], out: &mut Vec<u8>) {
    for (idx, &e) in exps.iter().enumerate() {
        let sym = b'a' + idx as u8;
        let byte = if e < 0 { sym.to_ascii_uppercase() } else { sym };
        for _ in 0..e.unsigned_abs() {
            out.push(byte);
        }
    }
}

pub(crate) fn mul_into(rank: usize, out: &mut Vec<u8>, a: &[u8], b: &[u8]) {
    let mut exps = [0i64; 26];
    accumulate(&mut exps[..rank], a);
    accumulate(&mut exps[..rank], b);
    emit(&exps[..rank], out);
}

pub(crate) fn invert(rank: usize, bytes: &[u8]) -> Vec<u8> {
    let mut exps = [0i64; 26];
    accumulate(&mut exps[..rank], bytes);
    for e in &mut exps[..rank] {
        *e = -*e;
    }
    let mut out = Vec::with_capacity(bytes.len());
    emit(&exps[..rank], &mut out);
    out
}
