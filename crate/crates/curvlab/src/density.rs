//! Membership predicates for the P_n / Q_n / R_n sphere subsets and
//! per-sphere / per-ball density reports for curvature signs.
//!
//! The sets are the free-group ones: P_n bounds geodesics by a^{+-1} at both
//! ends, Q_n brackets a P-core by (aba)^{+-1} blocks (a zero-curvature
//! sufficient condition), and R_n brackets a P-core by a^{+-1} (a
//! negative-curvature sufficient condition).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cayley::WordMetricTable;
use crate::curvature::kappa_k_of_id;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::Rational;

/// The bracket elements used by the membership predicates.
struct Brackets {
    a: Vec<u8>,
    a_inv: Vec<u8>,
    aba: Vec<u8>,
    aba_inv: Vec<u8>,
    /// Member indices of a and a^-1, when they are generators.
    a_members: Vec<usize>,
}

impl Brackets {
    fn new(table: &WordMetricTable) -> Result<Brackets> {
        let oracle = table.oracle();
        let a = oracle.normalize_str("a")?;
        let a_inv = oracle.invert(&a);
        let aba = oracle.normalize_str("aba")?;
        let aba_inv = oracle.invert(&aba);
        let mut a_members = Vec::new();
        if let Some(i) = table.gens().position(&a) {
            a_members.push(i);
        }
        if let Some(i) = table.gens().position(&a_inv) {
            a_members.push(i);
        }
        Ok(Brackets {
            a: a.as_bytes().to_vec(),
            a_inv: a_inv.as_bytes().to_vec(),
            aba: aba.as_bytes().to_vec(),
            aba_inv: aba_inv.as_bytes().to_vec(),
            a_members,
        })
    }
}

/// True iff the element has word length exactly `m`. A lookup miss on a table
/// that covers radius >= m is a definite "no" rather than an error.
fn has_length(table: &WordMetricTable, bytes: &[u8], m: u64) -> Result<bool> {
    if let Some(id) = table.lookup_bytes(bytes) {
        return Ok(table.id_length(id) as u64 == m);
    }
    if table.has_fast_length() {
        return Ok(bytes.len() as u64 == m);
    }
    if m <= table.radius() as u64 {
        return Ok(false);
    }
    Err(Error::OutOfRadius {
        element: String::from_utf8_lossy(bytes).into_owned(),
        radius: table.radius(),
        needed: Some(m as u32),
    })
}

/// P-membership needs one geodesic spelling carrying a^{+-1} at BOTH ends.
/// Checking start and end letter sets independently over-counts: for S_gamma
/// the element (ababa b a)^-1 = ABABABA has length 3 with exactly the
/// spellings A.B.w^-1 and w^-1.B.A, so both letter sets meet {a, a^-1} while
/// no single spelling does. Instead: pick the first letter f from {a, a^-1}
/// among the start letters, then ask whether the remainder f^-1 g can END
/// with a^{+-1}; prefixing f to such a spelling realizes both ends at once.
fn p_membership_bytes(table: &WordMetricTable, brackets: &Brackets, g: &[u8]) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::IdentityElement);
    }
    let n = table.length_of_bytes(g)?;
    let oracle = table.oracle();
    match n {
        1 => Ok(g == brackets.a.as_slice() || g == brackets.a_inv.as_slice()),
        2 => {
            // Enumerate the length-2 spellings with both letters in {a, a^-1}:
            // only a.a and a^-1.a^-1 are non-trivial.
            let mut buf = Vec::new();
            oracle.mul_into(&mut buf, &brackets.a, &brackets.a);
            if buf == g {
                return Ok(true);
            }
            oracle.mul_into(&mut buf, &brackets.a_inv, &brackets.a_inv);
            Ok(buf == g)
        }
        _ => {
            let starts = table.start_letter_indices(g)?;
            let mut rem = Vec::new();
            for f in starts.iter().filter(|i| brackets.a_members.contains(i)) {
                let f_inv = table.gens().member(table.gens().inverse_of(*f));
                oracle.mul_into(&mut rem, f_inv.as_bytes(), g);
                let ends = table.end_letter_indices(&rem)?;
                if ends.iter().any(|i| brackets.a_members.contains(i)) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Shared shape of Q and R: strip a bracket word (in either orientation) off
/// both ends, require the core to drop the length by exactly `drop`, and test
/// the core for P-membership.
fn strip_membership_bytes(
    table: &WordMetricTable,
    brackets: &Brackets,
    g: &[u8],
    bracket: &[u8],
    bracket_inv: &[u8],
    drop: u64,
) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::IdentityElement);
    }
    let n = table.length_of_bytes(g)?;
    if n < drop + 1 {
        return Ok(false);
    }
    let oracle = table.oracle();
    let mut tmp = Vec::new();
    let mut h = Vec::new();
    for u_inv in [bracket_inv, bracket] {
        for v_inv in [bracket_inv, bracket] {
            oracle.mul_into(&mut tmp, u_inv, g);
            oracle.mul_into(&mut h, &tmp, v_inv);
            if has_length(table, &h, n - drop)? && p_membership_bytes(table, brackets, &h)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// True iff g lies in P_|g|: some geodesic spelling of g starts and ends with
/// a or a^-1. For |g| >= 3 this is decided by the independent start/end
/// letter sets; for |g| in {1, 2} the spellings are enumerated directly.
pub fn p_membership(table: &WordMetricTable, g: &GroupElement) -> Result<bool> {
    let brackets = Brackets::new(table)?;
    p_membership_bytes(table, &brackets, g.as_bytes())
}

/// True iff g lies in Q_|g|: g = u h v as a geodesic spelling with u, v in
/// {aba, (aba)^-1} blocks and h in P_{|g|-6}, decided by the length equation
/// |u^-1 g v^-1| = |g| - 6 plus the P-membership of the core.
pub fn q_membership(table: &WordMetricTable, g: &GroupElement) -> Result<bool> {
    let brackets = Brackets::new(table)?;
    strip_membership_bytes(
        table,
        &brackets,
        g.as_bytes(),
        &brackets.aba,
        &brackets.aba_inv,
        6,
    )
}

/// True iff g lies in R_|g|: g = g1 h g2 as a geodesic spelling with g1, g2
/// in {a, a^-1} and h in P_{|g|-2}.
pub fn r_membership(table: &WordMetricTable, g: &GroupElement) -> Result<bool> {
    let brackets = Brackets::new(table)?;
    strip_membership_bytes(
        table,
        &brackets,
        g.as_bytes(),
        &brackets.a,
        &brackets.a_inv,
        2,
    )
}

/// Per-sphere census row: the set sizes and the curvature sign counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityRow {
    pub n: u32,
    pub sphere_size: u64,
    pub p_count: u64,
    pub q_count: u64,
    pub r_count: u64,
    pub negative: u64,
    pub zero: u64,
    pub positive: u64,
}

/// Cumulative (per-ball) counts through radius n. The identity is part of
/// |B_n| but carries no curvature sign and belongs to no set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallRow {
    pub n: u32,
    pub ball_size: u64,
    pub p_count: u64,
    pub q_count: u64,
    pub r_count: u64,
    pub negative: u64,
    pub zero: u64,
    pub positive: u64,
}

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub k: u32,
    pub max_n: u32,
    pub per_sphere: Vec<DensityRow>,
    pub cumulative: Vec<BallRow>,
}

impl DensityReport {
    pub fn sphere_row(&self, n: u32) -> &DensityRow {
        &self.per_sphere[n as usize]
    }
}

/// Builds the full density report for spheres 0..=max_n: per-sphere
/// P/Q/R counts, kappa_k sign counts, and per-ball cumulative rows.
pub fn density_report(table: &WordMetricTable, max_n: u32, k: u32) -> Result<DensityReport> {
    if max_n > table.radius() {
        return Err(Error::OutOfRadius {
            element: format!("sphere S_{max_n}"),
            radius: table.radius(),
            needed: Some(max_n),
        });
    }
    if !table.has_fast_length() && max_n + 2 * k > table.radius() {
        return Err(Error::OutOfRadius {
            element: format!("kappa_{k} on S_{max_n}"),
            radius: table.radius(),
            needed: Some(max_n + 2 * k),
        });
    }
    let brackets = Brackets::new(table)?;

    // P-membership flags by element id, filled sphere by sphere so that the
    // Q/R core checks (which look 6 and 2 levels down) are cheap bit reads.
    let mut p_flags = vec![false; table.ball_size(max_n) as usize];
    let mut per_sphere = Vec::with_capacity(max_n as usize + 1);
    per_sphere.push(DensityRow {
        n: 0,
        sphere_size: 1,
        p_count: 0,
        q_count: 0,
        r_count: 0,
        negative: 0,
        zero: 0,
        positive: 0,
    });

    for n in 1..=max_n {
        let ids = table.sphere_ids(n);

        struct ElemFacts {
            id: u32,
            p: bool,
            q: bool,
            r: bool,
            sign: i8,
        }
        let eval = |&id: &u32| -> Result<ElemFacts> {
            let g = table.elem_bytes(id);
            let p = p_membership_bytes(table, &brackets, g)?;
            let core = |u_inv: &[u8], v_inv: &[u8], drop: u64| -> Result<bool> {
                let mut tmp = Vec::new();
                let mut h = Vec::new();
                table.oracle().mul_into(&mut tmp, u_inv, g);
                table.oracle().mul_into(&mut h, &tmp, v_inv);
                match table.lookup_bytes(&h) {
                    Some(hid) => {
                        Ok(table.id_length(hid) as u64 == n as u64 - drop && p_flags[hid as usize])
                    }
                    None => Ok(false),
                }
            };
            let q = if n >= 7 {
                core(&brackets.aba_inv, &brackets.aba_inv, 6)?
                    || core(&brackets.aba_inv, &brackets.aba, 6)?
                    || core(&brackets.aba, &brackets.aba_inv, 6)?
                    || core(&brackets.aba, &brackets.aba, 6)?
            } else {
                false
            };
            let r = if n >= 5 {
                core(&brackets.a_inv, &brackets.a_inv, 2)?
                    || core(&brackets.a_inv, &brackets.a, 2)?
                    || core(&brackets.a, &brackets.a_inv, 2)?
                    || core(&brackets.a, &brackets.a, 2)?
            } else {
                false
            };
            let kappa = kappa_k_of_id(table, k, id)?;
            let sign = match kappa.cmp(&Rational::from_integer(0)) {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            };
            Ok(ElemFacts { id, p, q, r, sign })
        };

        #[cfg(feature = "parallel")]
        let facts: Result<Vec<ElemFacts>> = ids.par_iter().map(eval).collect();
        #[cfg(not(feature = "parallel"))]
        let facts: Result<Vec<ElemFacts>> = ids.iter().map(eval).collect();

        let mut row = DensityRow {
            n,
            sphere_size: ids.len() as u64,
            p_count: 0,
            q_count: 0,
            r_count: 0,
            negative: 0,
            zero: 0,
            positive: 0,
        };
        for f in facts? {
            if f.p {
                row.p_count += 1;
                p_flags[f.id as usize] = true;
            }
            row.q_count += u64::from(f.q);
            row.r_count += u64::from(f.r);
            match f.sign {
                -1 => row.negative += 1,
                0 => row.zero += 1,
                _ => row.positive += 1,
            }
        }
        per_sphere.push(row);
    }

    let mut cumulative = Vec::with_capacity(per_sphere.len());
    let mut acc = BallRow {
        n: 0,
        ball_size: 0,
        p_count: 0,
        q_count: 0,
        r_count: 0,
        negative: 0,
        zero: 0,
        positive: 0,
    };
    for row in &per_sphere {
        acc.n = row.n;
        acc.ball_size += row.sphere_size;
        acc.p_count += row.p_count;
        acc.q_count += row.q_count;
        acc.r_count += row.r_count;
        acc.negative += row.negative;
        acc.zero += row.zero;
        acc.positive += row.positive;
        cumulative.push(acc);
    }

    Ok(DensityReport {
        k,
        max_n,
        per_sphere,
        cumulative,
    })
}

/// Minimum of a list of positive fractions, which Lemma-style mediant
/// arithmetic guarantees to bound the combined fraction from below:
/// min(a_i / b_i) <= (sum a_i) / (sum b_i).
pub fn mediant_lower_bound(pairs: &[(i64, i64)]) -> Result<Rational> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut min: Option<Rational> = None;
    let (mut num_sum, mut den_sum) = (0i64, 0i64);
    for &(a, b) in pairs {
        if a <= 0 || b <= 0 {
            return Err(Error::NonPositiveEntry(a, b));
        }
        num_sum += a;
        den_sum += b;
        let r = Rational::new(a, b);
        min = Some(min.map_or(r, |m| m.min(r)));
    }
    let min = min.expect("non-empty");
    let mediant = Rational::new(num_sum, den_sum);
    assert!(
        min <= mediant,
        "mediant inequality cannot fail on positive entries"
    );
    Ok(min)
}
