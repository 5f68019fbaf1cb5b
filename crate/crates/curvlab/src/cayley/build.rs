//! Layer-by-layer ball enumeration with deterministic output.
//!
//! Each level is expanded in fixed-size parent batches. Candidates from a
//! batch are sorted and deduplicated by normal form before insertion, and at
//! the end of a level the whole level is sorted into canonical order, so the
//! resulting table content is identical for every batch split and worker
//! count.

use hashbrown::hash_table::HashTable;
use rustc_hash::FxBuildHasher;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GeneratingSet, GroupOracle};

use super::{hash_bytes, WordMetricTable};

const PARENT_BATCH: usize = 1 << 16;

/// Knobs for table construction.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Abort (with the partial radius reached) before the estimated footprint
    /// of the next level would cross this. Defaults to 8 GiB.
    pub memory_budget: u64,
    /// Worker threads: 0 uses the default rayon pool, 1 forces the sequential
    /// path, anything else runs a dedicated pool of that size. Without the
    /// `parallel` feature every value runs sequentially. The produced table
    /// is byte-identical either way.
    pub threads: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            memory_budget: 8 << 30,
            threads: 0,
        }
    }
}

/// Flat store of variable-length candidate byte strings.
#[derive(Default)]
struct CandBuf {
    bytes: Vec<u8>,
    ends: Vec<u32>,
}

impl CandBuf {
    fn push(&mut self, slice: &[u8]) {
        self.bytes.extend_from_slice(slice);
        self.ends.push(self.bytes.len() as u32);
    }

    fn len(&self) -> usize {
        self.ends.len()
    }

    fn get(&self, i: usize) -> &[u8] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] as usize };
        &self.bytes[start..self.ends[i] as usize]
    }

    fn clear(&mut self) {
        self.bytes.clear();
        self.ends.clear();
    }

    #[cfg(feature = "parallel")]
    fn absorb(&mut self, other: &CandBuf) {
        let base = self.bytes.len() as u32;
        self.bytes.extend_from_slice(&other.bytes);
        self.ends.extend(other.ends.iter().map(|&e| e + base));
    }
}

struct BuildState {
    bytes: Vec<u8>,
    ends: Vec<u32>,
    level_starts: Vec<u32>,
    order: Vec<u32>,
    index: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl BuildState {
    fn elem(&self, id: u32) -> &[u8] {
        let start = if id == 0 {
            0
        } else {
            self.ends[id as usize - 1] as usize
        };
        &self.bytes[start..self.ends[id as usize] as usize]
    }

    fn contains(&self, probe: &[u8]) -> bool {
        let h = hash_bytes(&self.hasher, probe);
        self.index
            .find(h, |&id| {
                let start = if id == 0 {
                    0
                } else {
                    self.ends[id as usize - 1] as usize
                };
                &self.bytes[start..self.ends[id as usize] as usize] == probe
            })
            .is_some()
    }

    fn insert_new(&mut self, slice: &[u8]) {
        let id = self.ends.len() as u32;
        self.bytes.extend_from_slice(slice);
        self.ends.push(self.bytes.len() as u32);
        let h = hash_bytes(&self.hasher, slice);
        let (bytes, ends) = (&self.bytes, &self.ends);
        self.index.insert_unique(h, id, |&other| {
            let start = if other == 0 {
                0
            } else {
                ends[other as usize - 1] as usize
            };
            hash_bytes(&self.hasher, &bytes[start..ends[other as usize] as usize])
        });
    }

    fn footprint(&self) -> u64 {
        // arena + ends + order + index slots (5 bytes per entry at 7/8 load)
        self.bytes.len() as u64 + 8 * self.ends.len() as u64 + 6 * self.ends.len() as u64
    }
}

fn expand_batch_seq(
    state: &BuildState,
    oracle: &GroupOracle,
    gen_bytes: &[Vec<u8>],
    parents: std::ops::Range<u32>,
    out: &mut CandBuf,
) {
    let mut buf = Vec::new();
    for id in parents {
        let g = state.elem(id);
        for s in gen_bytes {
            oracle.mul_into(&mut buf, g, s);
            if !state.contains(&buf) {
                out.push(&buf);
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn expand_batch_par(
    state: &BuildState,
    oracle: &GroupOracle,
    gen_bytes: &[Vec<u8>],
    parents: std::ops::Range<u32>,
    out: &mut CandBuf,
) {
    const CHUNK: usize = 1024;
    let ids: Vec<u32> = parents.collect();
    let parts: Vec<CandBuf> = ids
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut local = CandBuf::default();
            let mut buf = Vec::new();
            for &id in chunk {
                let g = state.elem(id);
                for s in gen_bytes {
                    oracle.mul_into(&mut buf, g, s);
                    if !state.contains(&buf) {
                        local.push(&buf);
                    }
                }
            }
            local
        })
        .collect();
    for part in &parts {
        out.absorb(part);
    }
}

/// Sorted indices of `cands` by candidate bytes.
fn sorted_candidate_indices(cands: &CandBuf, parallel: bool) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..cands.len() as u32).collect();
    if parallel {
        #[cfg(feature = "parallel")]
        {
            idx.par_sort_unstable_by(|&a, &b| cands.get(a as usize).cmp(cands.get(b as usize)));
            return idx;
        }
    }
    idx.sort_unstable_by(|&a, &b| cands.get(a as usize).cmp(cands.get(b as usize)));
    idx
}

fn validate_gens(oracle: &GroupOracle, gens: &GeneratingSet) -> Result<()> {
    for member in gens.members() {
        let renorm = oracle
            .normalize_str(&member.to_string())
            .map_err(|e| Error::InvalidGeneratingSet(e.to_string()))?;
        if renorm != *member {
            return Err(Error::InvalidGeneratingSet(format!(
                "member '{member}' is not a normal form of group {}",
                oracle.spec_str()
            )));
        }
    }
    Ok(())
}

fn run_build(
    oracle: &GroupOracle,
    gens: &GeneratingSet,
    radius: u32,
    opts: &BuildOptions,
    parallel: bool,
) -> Result<WordMetricTable> {
    let mut state = BuildState {
        bytes: Vec::new(),
        ends: Vec::new(),
        level_starts: vec![0],
        order: Vec::new(),
        index: HashTable::new(),
        hasher: FxBuildHasher,
    };
    state.insert_new(b"");
    state.level_starts.push(1);
    state.order.push(0);

    let gen_bytes: Vec<Vec<u8>> = gens
        .members()
        .iter()
        .map(|m| m.as_bytes().to_vec())
        .collect();

    let mut cands = CandBuf::default();
    for n in 1..=radius {
        let level_lo = state.level_starts[n as usize - 1];
        let level_hi = state.level_starts[n as usize];

        // Project the next level from current growth before expanding it.
        let prev_count = (level_hi - level_lo) as u64;
        let grown = prev_count.saturating_mul(gens.len() as u64);
        let avg_bytes = if state.ends.is_empty() {
            8
        } else {
            (state.bytes.len() as u64 / state.ends.len() as u64).max(1) + 4
        };
        let projected = state.footprint() + grown.saturating_mul(avg_bytes + 14);
        if projected > opts.memory_budget || state.bytes.len() as u64 > u32::MAX as u64 / 2 {
            return Err(Error::BudgetExceeded {
                reached: n - 1,
                requested: radius,
                detail: format!(
                    "projected footprint {projected} bytes exceeds budget {}",
                    opts.memory_budget
                ),
            });
        }

        let mut batch_lo = level_lo;
        while batch_lo < level_hi {
            let batch_hi = level_hi.min(batch_lo + PARENT_BATCH as u32);
            cands.clear();
            if parallel {
                #[cfg(feature = "parallel")]
                expand_batch_par(&state, oracle, &gen_bytes, batch_lo..batch_hi, &mut cands);
                #[cfg(not(feature = "parallel"))]
                expand_batch_seq(&state, oracle, &gen_bytes, batch_lo..batch_hi, &mut cands);
            } else {
                expand_batch_seq(&state, oracle, &gen_bytes, batch_lo..batch_hi, &mut cands);
            }
            let idx = sorted_candidate_indices(&cands, parallel);
            let mut prev: Option<&[u8]> = None;
            for &i in &idx {
                let cand = cands.get(i as usize);
                if prev == Some(cand) {
                    continue;
                }
                // Re-check: an earlier batch of this level may have added it.
                if !state.contains(cand) {
                    state.insert_new(cand);
                }
                prev = Some(cand);
            }
            batch_lo = batch_hi;
        }

        let total = state.ends.len() as u32;
        state.level_starts.push(total);

        let mut level_ids: Vec<u32> = (level_hi..total).collect();
        if parallel {
            #[cfg(feature = "parallel")]
            level_ids.par_sort_unstable_by(|&a, &b| state.elem(a).cmp(state.elem(b)));
            #[cfg(not(feature = "parallel"))]
            level_ids.sort_unstable_by(|&a, &b| state.elem(a).cmp(state.elem(b)));
        } else {
            level_ids.sort_unstable_by(|&a, &b| state.elem(a).cmp(state.elem(b)));
        }
        state.order.extend_from_slice(&level_ids);
    }

    Ok(WordMetricTable::assemble(
        oracle.clone(),
        gens.clone(),
        radius,
        state.bytes,
        state.ends,
        state.level_starts,
        state.order,
        state.index,
        state.hasher,
    ))
}

/// Builds the word-metric table for the ball of the given radius by BFS from
/// the identity. Deterministic: the table's canonical serialization does not
/// depend on the worker count.
pub fn build_word_metric(
    oracle: &GroupOracle,
    gens: &GeneratingSet,
    radius: u32,
    opts: &BuildOptions,
) -> Result<WordMetricTable> {
    validate_gens(oracle, gens)?;

    #[cfg(feature = "parallel")]
    {
        match opts.threads {
            1 => run_build(oracle, gens, radius, opts, false),
            0 => run_build(oracle, gens, radius, opts, true),
            t => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
                pool.install(|| run_build(oracle, gens, radius, opts, true))
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_build(oracle, gens, radius, opts, false)
    }
}
