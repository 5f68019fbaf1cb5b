//! Exact-rational conjugation curvature: GenCon, the k-spherical comparison
//! distance, kappa_k, and per-sphere curvature censuses.
//!
//! Everything here is integer and rational arithmetic over table lookups; no
//! floating point is involved anywhere.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cayley::WordMetricTable;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::Rational;

/// One curvature evaluation: the element, its length, the comparison radius,
/// the comparison distance S_k(g, 1) (GenCon at k = 1), and kappa_k.
#[derive(Debug, Clone)]
pub struct CurvatureRecord {
    pub element: GroupElement,
    pub length: u64,
    pub k: u32,
    pub comparison: Rational,
    pub kappa: Rational,
}

fn widen_out_of_radius(err: Error, needed: u64) -> Error {
    match err {
        Error::OutOfRadius {
            element, radius, ..
        } => Error::OutOfRadius {
            element,
            radius,
            needed: Some(needed as u32),
        },
        other => other,
    }
}

/// Sum of |s^-1 u s| over the given sphere elements.
fn conjugate_length_sum(
    table: &WordMetricTable,
    u_bytes: &[u8],
    sphere: &[u32],
    needed_radius: u64,
) -> Result<u64> {
    let oracle = table.oracle();
    let fold = |ids: &[u32]| -> Result<u64> {
        let mut sum = 0u64;
        let mut tmp = Vec::new();
        let mut buf = Vec::new();
        for &sid in ids {
            let s = table.elem_bytes(sid);
            let s_inv = oracle.invert_bytes(s);
            oracle.mul_into(&mut tmp, &s_inv, u_bytes);
            oracle.mul_into(&mut buf, &tmp, s);
            sum += table
                .length_of_bytes(&buf)
                .map_err(|e| widen_out_of_radius(e, needed_radius))?;
        }
        Ok(sum)
    };

    #[cfg(feature = "parallel")]
    if sphere.len() >= 4096 {
        return sphere
            .par_chunks(1024)
            .map(fold)
            .try_reduce(|| 0, |a, b| Ok(a + b));
    }
    fold(sphere)
}

/// GenCon(g): the average of |s^-1 g s| over the generating set.
pub fn gen_con(table: &WordMetricTable, g: &GroupElement) -> Result<Rational> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    let n = table.word_length(g)?;
    let needed = n + 2;
    let oracle = table.oracle();
    let mut sum = 0u64;
    let mut tmp = Vec::new();
    let mut buf = Vec::new();
    for i in 0..table.gens().len() {
        let s = table.gens().member(i).as_bytes();
        let s_inv = table.gens().member(table.gens().inverse_of(i)).as_bytes();
        oracle.mul_into(&mut tmp, s_inv, g.as_bytes());
        oracle.mul_into(&mut buf, &tmp, s);
        sum += table
            .length_of_bytes(&buf)
            .map_err(|e| widen_out_of_radius(e, needed))?;
    }
    Ok(Rational::new(sum as i64, table.gens().len() as i64))
}

/// kappa(g) = (|g| - GenCon(g)) / |g|, the 1-spherical conjugation curvature.
pub fn kappa(table: &WordMetricTable, g: &GroupElement) -> Result<Rational> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    let n = table.word_length(g)? as i64;
    let gencon = gen_con(table, g)?;
    Ok((Rational::from_integer(n) - gencon) / Rational::from_integer(n))
}

/// S_k(g, h): the average of d(gs, hs) over the sphere of radius k, computed
/// as the average conjugate length of u = h^-1 g.
pub fn comparison_distance_k(
    table: &WordMetricTable,
    k: u32,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "comparison radius k must be >= 1".into(),
        ));
    }
    if k > table.radius() {
        return Err(Error::OutOfRadius {
            element: format!("sphere S_{k}"),
            radius: table.radius(),
            needed: Some(k),
        });
    }
    let oracle = table.oracle();
    let mut u = Vec::new();
    oracle.mul_into(&mut u, &oracle.invert_bytes(h.as_bytes()), g.as_bytes());
    let u_len = table.length_of_bytes(&u)?;
    let sphere = table.sphere_ids(k);
    let needed = u_len + 2 * k as u64;
    let sum = conjugate_length_sum(table, &u, sphere, needed)?;
    Ok(Rational::new(sum as i64, sphere.len() as i64))
}

/// kappa_k(g) = (|g| - S_k(g, 1)) / |g|; coincides with [`kappa`] at k = 1.
pub fn kappa_k(table: &WordMetricTable, k: u32, g: &GroupElement) -> Result<Rational> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    let n = table.word_length(g)? as i64;
    let comparison = comparison_distance_k(table, k, g, &GroupElement::identity())?;
    Ok((Rational::from_integer(n) - comparison) / Rational::from_integer(n))
}

/// Full record for one element, as printed by the CLI.
pub fn kappa_k_record(
    table: &WordMetricTable,
    k: u32,
    g: &GroupElement,
) -> Result<CurvatureRecord> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    let n = table.word_length(g)? as i64;
    let comparison = comparison_distance_k(table, k, g, &GroupElement::identity())?;
    let kappa = (Rational::from_integer(n) - comparison) / Rational::from_integer(n);
    Ok(CurvatureRecord {
        element: g.clone(),
        length: n as u64,
        k,
        comparison,
        kappa,
    })
}

/// Sign counts and extremes of kappa_k over one sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub k: u32,
    pub sphere_size: u64,
    pub negative: u64,
    pub zero: u64,
    pub positive: u64,
    pub min_kappa: Rational,
    pub max_kappa: Rational,
}

pub(crate) struct SignTally {
    pub negative: u64,
    pub zero: u64,
    pub positive: u64,
    pub min: Option<Rational>,
    pub max: Option<Rational>,
}

impl SignTally {
    pub(crate) fn new() -> SignTally {
        SignTally {
            negative: 0,
            zero: 0,
            positive: 0,
            min: None,
            max: None,
        }
    }

    pub(crate) fn add(&mut self, kappa: Rational) {
        match kappa.cmp(&Rational::from_integer(0)) {
            std::cmp::Ordering::Less => self.negative += 1,
            std::cmp::Ordering::Equal => self.zero += 1,
            std::cmp::Ordering::Greater => self.positive += 1,
        }
        self.min = Some(self.min.map_or(kappa, |m| m.min(kappa)));
        self.max = Some(self.max.map_or(kappa, |m| m.max(kappa)));
    }

    #[cfg(feature = "parallel")]
    pub(crate) fn merge(mut self, other: SignTally) -> SignTally {
        self.negative += other.negative;
        self.zero += other.zero;
        self.positive += other.positive;
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.max = match (self.max, other.max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// kappa_k of the element interned as `id`, via table lengths only.
pub(crate) fn kappa_k_of_id(table: &WordMetricTable, k: u32, id: u32) -> Result<Rational> {
    let n = table.id_length(id) as i64;
    debug_assert!(n >= 1);
    let u = table.elem_bytes(id);
    let sphere = table.sphere_ids(k);
    let needed = n as u64 + 2 * k as u64;
    let oracle = table.oracle();
    let mut sum = 0u64;
    let mut tmp = Vec::new();
    let mut buf = Vec::new();
    for &sid in sphere {
        let s = table.elem_bytes(sid);
        let s_inv = oracle.invert_bytes(s);
        oracle.mul_into(&mut tmp, &s_inv, u);
        oracle.mul_into(&mut buf, &tmp, s);
        sum += table
            .length_of_bytes(&buf)
            .map_err(|e| widen_out_of_radius(e, needed))?;
    }
    let comparison = Rational::new(sum as i64, sphere.len() as i64);
    Ok((Rational::from_integer(n) - comparison) / Rational::from_integer(n))
}

fn census_tally(table: &WordMetricTable, n: u32, k: u32) -> Result<SignTally> {
    let ids = table.sphere_ids(n);
    let fold = |ids: &[u32]| -> Result<SignTally> {
        let mut tally = SignTally::new();
        for &id in ids {
            tally.add(kappa_k_of_id(table, k, id)?);
        }
        Ok(tally)
    };

    #[cfg(feature = "parallel")]
    if ids.len() >= 2048 {
        return ids
            .par_chunks(512)
            .map(fold)
            .try_reduce(SignTally::new, |a, b| Ok(a.merge(b)));
    }
    fold(ids)
}

/// Counts of negative, zero, and positive kappa_k over the sphere S_n, with
/// the exact extremes. Aggregation is order-independent, so the parallel and
/// sequential paths agree exactly.
pub fn curvature_census(table: &WordMetricTable, n: u32, k: u32) -> Result<CensusReport> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "census sphere n must be >= 1 (the identity carries no curvature)".into(),
        ));
    }
    if n > table.radius() {
        return Err(Error::OutOfRadius {
            element: format!("sphere S_{n}"),
            radius: table.radius(),
            needed: Some(n),
        });
    }
    let tally = census_tally(table, n, k)?;
    Ok(CensusReport {
        n,
        k,
        sphere_size: table.sphere_size(n),
        negative: tally.negative,
        zero: tally.zero,
        positive: tally.positive,
        min_kappa: tally.min.expect("spheres of infinite groups are non-empty"),
        max_kappa: tally.max.expect("spheres of infinite groups are non-empty"),
    })
}

/// Per-element records for the sphere S_n in canonical order, for report
/// emission. Prefer [`curvature_census`] when only the counts are needed.
pub fn census_records(table: &WordMetricTable, n: u32, k: u32) -> Result<Vec<CurvatureRecord>> {
    if n < 1 || n > table.radius() {
        return Err(Error::InvalidArgument(format!(
            "sphere {n} not in [1, {}]",
            table.radius()
        )));
    }
    let ids = table.sphere_ids(n);
    let build = |&id: &u32| -> Result<CurvatureRecord> {
        let kappa = kappa_k_of_id(table, k, id)?;
        let length = table.id_length(id) as i64;
        let comparison =
            (Rational::from_integer(length) - kappa * Rational::from_integer(length)).reduced();
        Ok(CurvatureRecord {
            element: table.element(id),
            length: length as u64,
            k,
            comparison,
            kappa,
        })
    };
    #[cfg(feature = "parallel")]
    {
        ids.par_iter().map(build).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ids.iter().map(build).collect()
    }
}
