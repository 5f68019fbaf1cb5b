//! Gromov products, empirical four-point delta estimation over ball
//! quadruples, and the mean-Gromov-product / sign-scan diagnostics.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cayley::WordMetricTable;
use crate::curvature::kappa_k_of_id;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupKind};
use crate::Rational;

/// Default cap on quadruple evaluations for exhaustive mode.
pub const DEFAULT_QUAD_BUDGET: u64 = 100_000_000;

/// Cap on stored non-negative witnesses in a sign scan.
const SCAN_WITNESS_CAP: usize = 10_000;

/// A half-integer, stored doubled. Gromov products of integer distances are
/// half-integers >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInteger {
    pub doubled: i64,
}

impl HalfInteger {
    pub fn to_rational(self) -> Rational {
        Rational::new(self.doubled, 2)
    }
}

impl std::fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// (p, q)_r = (d(p,r) + d(r,q) - d(p,q)) / 2.
pub fn gromov_product(
    table: &WordMetricTable,
    p: &GroupElement,
    q: &GroupElement,
    r: &GroupElement,
) -> Result<HalfInteger> {
    let dpr = table.distance(p, r)? as i64;
    let drq = table.distance(r, q)? as i64;
    let dpq = table.distance(p, q)? as i64;
    let doubled = dpr + drq - dpq;
    debug_assert!(doubled >= 0, "triangle inequality violated");
    Ok(HalfInteger { doubled })
}

/// How the quadruple space was explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Empirical four-point hyperbolicity defect over a ball.
///
/// Exhaustive mode is exact for the ball and a true lower bound for the
/// group's delta; sampled mode explores a subset and can only undershoot.
#[derive(Debug, Clone)]
pub struct DeltaEstimate {
    pub delta: HalfInteger,
    pub radius: u32,
    pub mode: DeltaMode,
    pub witness: [GroupElement; 4],
    pub evaluated: u64,
}

/// Doubled Gromov product from a distance matrix.
#[inline]
fn gp2(dist: &[u32], m: usize, x: usize, y: usize, w: usize) -> i64 {
    dist[x * m + w] as i64 + dist[w * m + y] as i64 - dist[x * m + y] as i64
}

/// Doubled defect of one quadruple: min((x,z)_w, (y,z)_w) - (x,y)_w.
#[inline]
fn defect2(dist: &[u32], m: usize, x: usize, y: usize, z: usize, w: usize) -> i64 {
    gp2(dist, m, x, z, w).min(gp2(dist, m, y, z, w)) - gp2(dist, m, x, y, w)
}

/// Pairwise distance matrix of the ball B_n, indexed in canonical order.
fn ball_distance_matrix(table: &WordMetricTable, n: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    if !table.has_fast_length() && 2 * n > table.radius() {
        return Err(Error::OutOfRadius {
            element: format!("pairwise distances on B_{n}"),
            radius: table.radius(),
            needed: Some(2 * n),
        });
    }
    let ids: Vec<u32> = table.ball_ids(n).to_vec();
    let m = ids.len();
    if m > 16_384 {
        return Err(Error::BudgetExceeded {
            reached: n,
            requested: n,
            detail: format!("|B_{n}| = {m} needs a {m}x{m} distance matrix; use a smaller ball"),
        });
    }
    let oracle = table.oracle();
    let mut dist = vec![0u32; m * m];
    let mut buf = Vec::new();
    for (j, &yid) in ids.iter().enumerate() {
        let y_inv = oracle.invert_bytes(table.elem_bytes(yid));
        for (i, &xid) in ids.iter().enumerate() {
            oracle.mul_into(&mut buf, &y_inv, table.elem_bytes(xid));
            dist[i * m + j] = table.length_of_bytes(&buf)? as u32;
        }
    }
    Ok((dist, ids))
}

/// Best (max defect, lexicographically smallest witness) of two candidates.
fn better(a: Option<(i64, [u32; 4])>, b: Option<(i64, [u32; 4])>) -> Option<(i64, [u32; 4])> {
    match (a, b) {
        (Some((da, wa)), Some((db, wb))) => {
            if da > db || (da == db && wa <= wb) {
                Some((da, wa))
            } else {
                Some((db, wb))
            }
        }
        (x, None) => x,
        (None, y) => y,
    }
}

fn scan_quadruple_range(
    dist: &[u32],
    m: usize,
    range: std::ops::Range<u64>,
) -> Option<(i64, [u32; 4])> {
    let mut best: Option<(i64, [u32; 4])> = None;
    let m64 = m as u64;
    for flat in range {
        let w = (flat % m64) as usize;
        let rest = flat / m64;
        let z = (rest % m64) as usize;
        let rest = rest / m64;
        let y = (rest % m64) as usize;
        let x = (rest / m64) as usize;
        let d = defect2(dist, m, x, y, z, w);
        let cand = Some((d, [x as u32, y as u32, z as u32, w as u32]));
        best = better(best, cand);
    }
    best
}

/// Maximum four-point defect over quadruples of B_n. Exhaustive mode requires
/// |B_n|^4 within [`DEFAULT_QUAD_BUDGET`]; ties on the defect are broken by
/// the canonically smallest quadruple, so the result is deterministic for
/// every worker count.
pub fn four_point_delta(table: &WordMetricTable, n: u32, mode: DeltaMode) -> Result<DeltaEstimate> {
    let (dist, ids) = ball_distance_matrix(table, n)?;
    let m = ids.len();

    let (best, evaluated) = match mode {
        DeltaMode::Exhaustive => {
            let total = (m as u64).pow(4);
            if total > DEFAULT_QUAD_BUDGET {
                return Err(Error::BudgetExceeded {
                    reached: n,
                    requested: n,
                    detail: format!(
                        "|B_{n}|^4 = {total} quadruples exceeds the exhaustive budget \
                         {DEFAULT_QUAD_BUDGET}; use sampled mode"
                    ),
                });
            }
            #[cfg(feature = "parallel")]
            let best = {
                const CHUNK: u64 = 1 << 16;
                let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
                chunks
                    .par_iter()
                    .map(|&c| {
                        scan_quadruple_range(&dist, m, c * CHUNK..((c + 1) * CHUNK).min(total))
                    })
                    .reduce(|| None, better)
            };
            #[cfg(not(feature = "parallel"))]
            let best = scan_quadruple_range(&dist, m, 0..total);
            (best, total)
        }
        DeltaMode::Sampled { samples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let tuples: Vec<[u32; 4]> = (0..samples)
                .map(|_| {
                    [
                        rng.random_range(0..m as u32),
                        rng.random_range(0..m as u32),
                        rng.random_range(0..m as u32),
                        rng.random_range(0..m as u32),
                    ]
                })
                .collect();
            let eval = |t: &[u32; 4]| {
                Some((
                    defect2(
                        &dist,
                        m,
                        t[0] as usize,
                        t[1] as usize,
                        t[2] as usize,
                        t[3] as usize,
                    ),
                    *t,
                ))
            };
            #[cfg(feature = "parallel")]
            let best = tuples.par_iter().map(eval).reduce(|| None, better);
            #[cfg(not(feature = "parallel"))]
            let best = tuples.iter().map(eval).fold(None, better);
            (best, samples)
        }
    };

    // A ball always contains the identity, so at least the all-identity
    // quadruple (defect 0) exists in exhaustive mode; sampling zero tuples
    // yields delta 0 with the identity witness.
    let (defect, widx) = best.unwrap_or((0, [0, 0, 0, 0]));
    let witness = [
        table.element(ids[widx[0] as usize]),
        table.element(ids[widx[1] as usize]),
        table.element(ids[widx[2] as usize]),
        table.element(ids[widx[3] as usize]),
    ];
    Ok(DeltaEstimate {
        delta: HalfInteger {
            doubled: defect.max(0),
        },
        radius: n,
        mode,
        witness,
        evaluated,
    })
}

/// Re-evaluates the defect of a witness quadruple directly from distances.
pub fn witness_defect(table: &WordMetricTable, witness: &[GroupElement; 4]) -> Result<HalfInteger> {
    let [x, y, z, w] = witness;
    let xz = gromov_product(table, x, z, w)?.doubled;
    let yz = gromov_product(table, y, z, w)?.doubled;
    let xy = gromov_product(table, x, y, w)?.doubled;
    Ok(HalfInteger {
        doubled: (xz.min(yz) - xy).max(0),
    })
}

/// (1/|S_k|) * sum over s in S_k of (g, s)_1, exactly.
pub fn mean_gromov_product(table: &WordMetricTable, g: &GroupElement, k: u32) -> Result<Rational> {
    if k < 1 || k > table.radius() {
        return Err(Error::InvalidArgument(format!(
            "sphere radius k = {k} not in [1, {}]",
            table.radius()
        )));
    }
    let g_len = table.word_length(g)? as i64;
    let oracle = table.oracle();
    let g_inv = oracle.invert_bytes(g.as_bytes());
    let sphere = table.sphere_ids(k);
    let mut sum_doubled = 0i64;
    let mut buf = Vec::new();
    for &sid in sphere {
        // (g, s)_1 doubled = |g| + |s| - d(g, s), and d(g, s) = |g^-1 s|.
        oracle.mul_into(&mut buf, &g_inv, table.elem_bytes(sid));
        let d = table.length_of_bytes(&buf)? as i64;
        sum_doubled += g_len + k as i64 - d;
    }
    Ok(Rational::new(sum_doubled, 2 * sphere.len() as i64))
}

/// Result of a kappa_k sign scan over a length band.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub k: u32,
    /// Band (lo, hi]: lengths strictly above lo, up to and including hi.
    pub band_lo: u32,
    pub band_hi: u32,
    pub scanned: u64,
    pub negative: u64,
    pub zero: u64,
    pub positive: u64,
    /// Non-negative witnesses in canonical order, capped.
    pub witnesses: Vec<(GroupElement, Rational)>,
    pub truncated: bool,
}

/// kappa_k over all reduced words of a given length of a standard free-group
/// table, streamed without a table. Only valid with the fast length path.
fn scan_free_sphere_direct(
    table: &WordMetricTable,
    k: u32,
    length: u32,
    report: &mut ScanReport,
) -> Result<()> {
    let rank = match table.oracle().kind() {
        GroupKind::Free(r) => r,
        _ => unreachable!("direct enumeration is free-group only"),
    };
    // Letters in byte order so words stream in canonical (lex) order.
    let mut letters: Vec<u8> = (0..rank)
        .flat_map(|i| [b'a' + i as u8, b'A' + i as u8])
        .collect();
    letters.sort_unstable();

    let sphere: Vec<Vec<u8>> = table
        .sphere_ids(k)
        .iter()
        .map(|&sid| table.elem_bytes(sid).to_vec())
        .collect();
    let sphere_inv: Vec<Vec<u8>> = sphere
        .iter()
        .map(|s| table.oracle().invert_bytes(s))
        .collect();

    // Iterative DFS over reduced words of the target length, in lex order.
    let mut word: Vec<u8> = Vec::with_capacity(length as usize);
    let mut choice: Vec<usize> = vec![0; length as usize + 1];
    let mut batch: Vec<Vec<u8>> = Vec::new();
    const BATCH: usize = 1 << 14;

    let flush = |batch: &mut Vec<Vec<u8>>, report: &mut ScanReport| {
        let eval = |g: &Vec<u8>| -> (Rational, Option<Vec<u8>>) {
            let mut tmp = Vec::new();
            let mut buf = Vec::new();
            let mut sum = 0u64;
            for (s, s_inv) in sphere.iter().zip(&sphere_inv) {
                table.oracle().mul_into(&mut tmp, s_inv, g);
                table.oracle().mul_into(&mut buf, &tmp, s);
                sum += buf.len() as u64; // reduced length, fast path
            }
            let n = Rational::from_integer(g.len() as i64);
            let comparison = Rational::new(sum as i64, sphere.len() as i64);
            let kappa = (n - comparison) / n;
            let witness = (kappa >= Rational::from_integer(0)).then(|| g.clone());
            (kappa, witness)
        };
        #[cfg(feature = "parallel")]
        let results: Vec<(Rational, Option<Vec<u8>>)> = batch.par_iter().map(eval).collect();
        #[cfg(not(feature = "parallel"))]
        let results: Vec<(Rational, Option<Vec<u8>>)> = batch.iter().map(eval).collect();
        for (kappa, witness) in results {
            report.scanned += 1;
            match kappa.cmp(&Rational::from_integer(0)) {
                std::cmp::Ordering::Less => report.negative += 1,
                std::cmp::Ordering::Equal => report.zero += 1,
                std::cmp::Ordering::Greater => report.positive += 1,
            }
            if let Some(w) = witness {
                if report.witnesses.len() < SCAN_WITNESS_CAP {
                    report
                        .witnesses
                        .push((GroupElement::from_normalized(w), kappa));
                } else {
                    report.truncated = true;
                }
            }
        }
        batch.clear();
    };

    loop {
        if word.len() == length as usize {
            batch.push(word.clone());
            if batch.len() >= BATCH {
                flush(&mut batch, report);
            }
            // Backtrack.
            word.pop();
        }
        let depth = word.len();
        let mut advanced = false;
        while choice[depth] < letters.len() {
            let cand = letters[choice[depth]];
            choice[depth] += 1;
            let reduces = word.last().is_some_and(|&t| t ^ 0x20 == cand);
            if !reduces {
                word.push(cand);
                choice[depth + 1] = 0;
                advanced = true;
                break;
            }
        }
        if !advanced {
            if depth == 0 {
                break;
            }
            word.pop();
        }
    }
    flush(&mut batch, report);
    Ok(())
}

/// Records the sign of kappa_k for every element with |g| in the band
/// (band_lo, band_hi], returning counts and the non-negative witnesses.
/// The lower band edge must sit at or above 4k, the exclusion ball
/// outside which the scan is meaningful.
pub fn kappa_k_sign_scan(
    table: &WordMetricTable,
    k: u32,
    band_lo: u32,
    band_hi: u32,
) -> Result<ScanReport> {
    if k < 1 || k > table.radius() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} not in [1, {}]",
            table.radius()
        )));
    }
    if band_lo < 4 * k {
        return Err(Error::InvalidArgument(format!(
            "band must start at or above 4k = {} (got {band_lo})",
            4 * k
        )));
    }
    if band_hi <= band_lo {
        return Err(Error::InvalidArgument(format!(
            "empty band ({band_lo}, {band_hi}]"
        )));
    }
    let beyond_table =
        band_hi > table.radius() || (!table.has_fast_length() && band_hi + 2 * k > table.radius());
    let free_std = table.has_fast_length() && matches!(table.oracle().kind(), GroupKind::Free(_));
    if beyond_table && !free_std {
        return Err(Error::OutOfRadius {
            element: format!("band ({band_lo}, {band_hi}] at k = {k}"),
            radius: table.radius(),
            needed: Some(band_hi + 2 * k),
        });
    }

    let mut report = ScanReport {
        k,
        band_lo,
        band_hi,
        scanned: 0,
        negative: 0,
        zero: 0,
        positive: 0,
        witnesses: Vec::new(),
        truncated: false,
    };

    for n in band_lo + 1..=band_hi {
        if n <= table.radius() && !beyond_table {
            let ids = table.sphere_ids(n);
            let eval = |&id: &u32| kappa_k_of_id(table, k, id).map(|kp| (id, kp));
            #[cfg(feature = "parallel")]
            let results: Result<Vec<(u32, Rational)>> = ids.par_iter().map(eval).collect();
            #[cfg(not(feature = "parallel"))]
            let results: Result<Vec<(u32, Rational)>> = ids.iter().map(eval).collect();
            for (id, kappa) in results? {
                report.scanned += 1;
                match kappa.cmp(&Rational::from_integer(0)) {
                    std::cmp::Ordering::Less => report.negative += 1,
                    std::cmp::Ordering::Equal => report.zero += 1,
                    std::cmp::Ordering::Greater => report.positive += 1,
                }
                if kappa >= Rational::from_integer(0) {
                    if report.witnesses.len() < SCAN_WITNESS_CAP {
                        report.witnesses.push((table.element(id), kappa));
                    } else {
                        report.truncated = true;
                    }
                }
            }
        } else {
            scan_free_sphere_direct(table, k, n, &mut report)?;
        }
    }
    Ok(report)
}
