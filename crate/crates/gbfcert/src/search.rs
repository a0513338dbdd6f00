//! Exhaustive and randomized searches for bent functions at tiny types.
//!
//! Candidates are value tables enumerated in lexicographic order (the
//! table entry at domain index 0 varies slowest), generated in place by
//! an odometer increment so nothing is re-materialized per candidate.
//! Each candidate is verified exactly with early exit on the first
//! failing lambda. The index range splits into contiguous shards whose
//! concatenated results equal the unsharded run exactly, so parallel
//! execution cannot change the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gbf::{self, GbfFunction, GbfType};

/// Default cap on exhaustive candidate counts.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Default cap on the number of witnesses materialized in a result.
pub const DEFAULT_WITNESS_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("exhaustive search needs {required} candidates, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("shard count must be at least 1")]
    ZeroShards,
    #[error("operation applies to the other search mode")]
    ModeMismatch,
}

/// Search strategy: full lexicographic scan or seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { sample_count: u64, seed: u64 },
}

/// A complete, reproducible description of one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub gbf_type: GbfType,
    pub mode: SearchMode,
    /// Fix f(0) = 0, shrinking the space by a factor of the modulus.
    pub normalize: bool,
    pub budget: u64,
    pub witness_cap: usize,
}

impl SearchSpec {
    pub fn exhaustive(gbf_type: GbfType) -> Self {
        SearchSpec {
            gbf_type,
            mode: SearchMode::Exhaustive,
            normalize: false,
            budget: DEFAULT_BUDGET,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }

    pub fn random(gbf_type: GbfType, sample_count: u64, seed: u64) -> Self {
        SearchSpec {
            gbf_type,
            mode: SearchMode::Random { sample_count, seed },
            normalize: false,
            budget: DEFAULT_BUDGET,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }

    /// Number of free table slots (the entry at 0 is pinned when
    /// normalizing).
    fn free_slots(&self) -> u64 {
        let d = self.gbf_type.domain_size();
        if self.normalize {
            d - 1
        } else {
            d
        }
    }

    /// Exact candidate count modulus^free, saturating at u128::MAX.
    pub fn candidate_count(&self) -> u128 {
        let m = self.gbf_type.modulus() as u128;
        let mut count: u128 = 1;
        for _ in 0..self.free_slots() {
            count = match count.checked_mul(m) {
                Some(next) => next,
                None => return u128::MAX,
            };
        }
        count
    }

    fn budgeted_count(&self) -> Result<u64, SearchError> {
        let required = self.candidate_count();
        if required > self.budget as u128 {
            Err(SearchError::BudgetExceeded {
                required,
                budget: self.budget,
            })
        } else {
            Ok(required as u64)
        }
    }
}

/// Search outcome. `witness_count` is exact for completed exhaustive
/// runs; `witnesses` holds at most `witness_cap` tables in scan order,
/// each re-verified exactly before emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub witnesses: Vec<GbfFunction>,
    pub witness_count: u64,
    pub candidates: u64,
    pub exhausted: bool,
}

/// Write the value table for a candidate index into `values`.
/// Lexicographic convention: the first free slot is the most significant
/// digit, so ascending indices enumerate tables in lexicographic order.
fn table_for_index(spec: &SearchSpec, mut index: u64, values: &mut [u64]) {
    let m = spec.gbf_type.modulus();
    let offset = if spec.normalize { 1 } else { 0 };
    if spec.normalize {
        values[0] = 0;
    }
    let free = spec.free_slots() as usize;
    for j in (0..free).rev() {
        values[offset + j] = index % m;
        index /= m;
    }
}

/// Odometer step to the lexicographic successor table.
fn advance_table(spec: &SearchSpec, values: &mut [u64]) {
    let m = spec.gbf_type.modulus();
    let offset = if spec.normalize { 1 } else { 0 };
    let free = spec.free_slots() as usize;
    for j in (0..free).rev() {
        let slot = &mut values[offset + j];
        *slot += 1;
        if *slot < m {
            return;
        }
        *slot = 0;
    }
}

/// Scan one contiguous index range [start, end).
fn enumerate_range(spec: &SearchSpec, start: u64, end: u64) -> SearchResult {
    let ty = spec.gbf_type;
    let mut values = vec![0u64; ty.domain_size() as usize];
    table_for_index(spec, start, &mut values);
    let mut witnesses = Vec::new();
    let mut witness_count = 0u64;
    for index in start..end {
        if gbf::is_bent_table(&ty, &values) {
            witness_count += 1;
            if witnesses.len() < spec.witness_cap {
                let f = GbfFunction::new(ty, values.clone()).expect("odometer stays in range");
                assert!(gbf::is_gbf(&f), "witness failed re-verification");
                witnesses.push(f);
            }
        }
        if index + 1 < end {
            advance_table(spec, &mut values);
        }
    }
    SearchResult {
        spec: *spec,
        witnesses,
        witness_count,
        candidates: end - start,
        exhausted: true,
    }
}

/// Exhaustive scan of the whole candidate space in lexicographic order.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let count = spec.budgeted_count()?;
    Ok(enumerate_range(spec, 0, count))
}

/// Split the candidate index range into `shards` contiguous near-equal
/// pieces (sizes differ by at most one, larger shards first).
pub fn partition_workload(
    spec: &SearchSpec,
    shards: u64,
) -> Result<Vec<std::ops::Range<u64>>, SearchError> {
    if shards == 0 {
        return Err(SearchError::ZeroShards);
    }
    if spec.mode != SearchMode::Exhaustive {
        return Err(SearchError::ModeMismatch);
    }
    let count = spec.budgeted_count()?;
    let base = count / shards;
    let extra = count % shards;
    let mut ranges = Vec::with_capacity(shards as usize);
    let mut start = 0;
    for s in 0..shards {
        let len = base + u64::from(s < extra);
        ranges.push(start..start + len);
        start += len;
    }
    Ok(ranges)
}

/// Exhaustive scan split into shards executed in parallel and merged in
/// shard order; the result equals the unsharded scan exactly.
pub fn enumerate_sharded(spec: &SearchSpec, shards: u64) -> Result<SearchResult, SearchError> {
    let ranges = partition_workload(spec, shards)?;
    let partials: Vec<SearchResult> = ranges
        .into_par_iter()
        .map(|range| enumerate_range(spec, range.start, range.end))
        .collect();
    let mut merged = SearchResult {
        spec: *spec,
        witnesses: Vec::new(),
        witness_count: 0,
        candidates: 0,
        exhausted: true,
    };
    for part in partials {
        merged.witness_count += part.witness_count;
        merged.candidates += part.candidates;
        for w in part.witnesses {
            if merged.witnesses.len() < spec.witness_cap {
                merged.witnesses.push(w);
            }
        }
    }
    Ok(merged)
}

/// Seeded random sampling with the same exact verification. The same
/// seed always reproduces the same result.
pub fn random_search(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let SearchMode::Random { sample_count, seed } = spec.mode else {
        return Err(SearchError::ModeMismatch);
    };
    let ty = spec.gbf_type;
    let m = ty.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0u64; ty.domain_size() as usize];
    let offset = if spec.normalize { 1 } else { 0 };
    let mut witnesses = Vec::new();
    let mut witness_count = 0u64;
    for _ in 0..sample_count {
        for slot in values.iter_mut().skip(offset) {
            *slot = rng.random_range(0..m);
        }
        if spec.normalize {
            values[0] = 0;
        }
        if gbf::is_bent_table(&ty, &values) {
            witness_count += 1;
            if witnesses.len() < spec.witness_cap {
                let f = GbfFunction::new(ty, values.clone()).expect("sampled in range");
                assert!(gbf::is_gbf(&f), "witness failed re-verification");
                witnesses.push(f);
            }
        }
    }
    Ok(SearchResult {
        spec: *spec,
        witnesses,
        witness_count,
        candidates: sample_count,
        exhausted: false,
    })
}
