//! Brute-force oracle for permutation-invariant parking assortments.
//!
//! A preference vector is invariant for `y` when every rearrangement of its
//! entries parks. Everything here is computed by running the parking
//! experiment; the only shortcuts are the search-space prunings selected by
//! [`SearchStrategy::Pruned`], which discard candidates that provably cannot be
//! invariant.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset;
use crate::parking::{LengthVector, Parker, PreferenceVector};

/// Default cap on simulated parking experiments per enumeration call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStrategy {
    /// Nondecreasing candidates with entries in `1 + S(y)` and the prefix-sum caps.
    #[default]
    Pruned,
    /// Every nondecreasing vector in `[m]^n`, and a raw `[m]` scan for `W(y)`.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub strategy: SearchStrategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            strategy: SearchStrategy::Pruned,
        }
    }
}

impl SearchOptions {
    pub fn exhaustive(budget: u64) -> Self {
        Self {
            budget,
            strategy: SearchStrategy::Exhaustive,
        }
    }
}

/// Invariance tester bound to one length vector, reusing its street buffer.
pub(crate) struct InvarianceTester<'a> {
    parker: Parker<'a>,
    pub(crate) experiments: u64,
}

impl<'a> InvarianceTester<'a> {
    pub(crate) fn new(lengths: &'a [u32]) -> Self {
        Self {
            parker: Parker::from_slice(lengths),
            experiments: 0,
        }
    }

    /// First rearrangement of `prefs` that fails to park, if any.
    ///
    /// The sorted arrangement goes first since a non-assortment fails there;
    /// the rest are walked largest-first, where large entries lead.
    pub(crate) fn failing_permutation(&mut self, prefs: &[u32]) -> Option<Vec<u32>> {
        let mut sorted = prefs.to_vec();
        sorted.sort_unstable();
        self.experiments += 1;
        if !self.parker.parks(&sorted) {
            return Some(sorted);
        }
        let parker = &mut self.parker;
        let experiments = &mut self.experiments;
        multiset::find_permutation_descending(&sorted, |p| {
            *experiments += 1;
            parker.parks(p)
        })
    }

    pub(crate) fn is_invariant(&mut self, prefs: &[u32]) -> bool {
        self.failing_permutation(prefs).is_none()
    }
}

/// True iff every distinct rearrangement of `x` is a parking assortment for `y`.
pub fn is_invariant(y: &LengthVector, x: &PreferenceVector) -> bool {
    InvarianceTester::new(y.as_slice()).is_invariant(x.as_slice())
}

/// A rearrangement of `x` that does not park, witnessing non-invariance.
pub fn failing_permutation(y: &LengthVector, x: &PreferenceVector) -> Option<Vec<u32>> {
    InvarianceTester::new(y.as_slice()).failing_permutation(x.as_slice())
}

/// Number of entries different from 1.
pub fn degree(x: &PreferenceVector) -> usize {
    x.as_slice().iter().filter(|&&v| v != 1).count()
}

/// Removes one maximal entry (the first among ties).
pub fn remove_max(x: &PreferenceVector) -> Result<PreferenceVector> {
    let v = x.as_slice();
    if v.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: v.len(),
        });
    }
    let max = *v.iter().max().expect("nonempty");
    let k = v.iter().position(|&e| e == max).expect("max is present");
    let mut out = v.to_vec();
    out.remove(k);
    Ok(PreferenceVector::from_raw(out))
}

/// `S(y)`: sums of sub-multisets of `(y_2, ..., y_n)`, including 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryCombinationSet {
    pub sums: Vec<u32>,
}

impl BinaryCombinationSet {
    pub fn contains(&self, s: u32) -> bool {
        self.sums.binary_search(&s).is_ok()
    }

    /// `1 + S(y)`, the candidate entries of invariant assortments.
    pub fn shifted(&self) -> Vec<u32> {
        self.sums.iter().map(|s| s + 1).collect()
    }
}

pub fn binary_combination_set(y: &LengthVector) -> BinaryCombinationSet {
    let tail = &y.as_slice()[1..];
    let total: u32 = tail.iter().sum();
    let mut reachable = vec![false; total as usize + 1];
    reachable[0] = true;
    let mut high = 0usize;
    for &l in tail {
        let l = l as usize;
        for s in (0..=high).rev() {
            if reachable[s] {
                reachable[s + l] = true;
            }
        }
        high += l;
    }
    let sums = reachable
        .iter()
        .enumerate()
        .filter_map(|(s, &r)| r.then_some(s as u32))
        .collect();
    BinaryCombinationSet { sums }
}

/// Where to look for members of `W(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WScan {
    /// Only `1 + S(y)`.
    BinarySums,
    /// Every spot in `[1, m]`.
    Raw,
}

/// `W(y) = { w : (1^{n-1}, w) is invariant }`, ascending.
pub fn invariant_solution_set(y: &LengthVector) -> Vec<u32> {
    invariant_solution_set_with(y, WScan::BinarySums)
}

pub fn invariant_solution_set_with(y: &LengthVector, scan: WScan) -> Vec<u32> {
    let candidates: Vec<u32> = match scan {
        WScan::BinarySums => binary_combination_set(y).shifted(),
        WScan::Raw => (1..=y.m()).collect(),
    };
    let n = y.n();
    let mut tester = InvarianceTester::new(y.as_slice());
    let mut prefs = vec![1u32; n];
    candidates
        .into_iter()
        .filter(|&w| {
            prefs[n - 1] = w;
            tester.is_invariant(&prefs)
        })
        .collect()
}

/// Entries allowed at each position of a nondecreasing candidate.
struct CandidateSpace {
    entries: Vec<u32>,
    /// `1 + y_1 + ... + y_{i-1}` for position `i`, or `m` when uncapped.
    caps: Vec<u32>,
}

impl CandidateSpace {
    fn new(y: &LengthVector, strategy: SearchStrategy) -> Self {
        let n = y.n();
        match strategy {
            SearchStrategy::Pruned => {
                let mut caps = Vec::with_capacity(n);
                let mut cap = 1u32;
                for &l in y.as_slice() {
                    caps.push(cap);
                    cap += l;
                }
                Self {
                    entries: binary_combination_set(y).shifted(),
                    caps,
                }
            }
            SearchStrategy::Exhaustive => Self {
                entries: (1..=y.m()).collect(),
                caps: vec![y.m(); n],
            },
        }
    }

    /// Number of candidates, saturating at `u64::MAX`.
    fn count(&self) -> u64 {
        // ways[j]: sequences so far ending in entries[j].
        let mut ways: Vec<u64> = self
            .entries
            .iter()
            .map(|&e| u64::from(e <= self.caps[0]))
            .collect();
        for &cap in &self.caps[1..] {
            let mut acc = 0u64;
            for (j, &e) in self.entries.iter().enumerate() {
                acc = acc.saturating_add(ways[j]);
                ways[j] = if e <= cap { acc } else { 0 };
            }
        }
        ways.iter().fold(0u64, |a, &w| a.saturating_add(w))
    }

    fn generate(&self) -> Vec<Vec<u32>> {
        fn rec(space: &CandidateSpace, from: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            let pos = acc.len();
            if pos == space.caps.len() {
                out.push(acc.clone());
                return;
            }
            for (j, &e) in space.entries.iter().enumerate().skip(from) {
                if e > space.caps[pos] {
                    break;
                }
                acc.push(e);
                rec(space, j, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, &mut Vec::with_capacity(self.caps.len()), &mut out);
        out
    }
}

/// `PA^{inv,up}_n(y)` in lexicographic order, with default options.
pub fn enumerate_invariant_nd(y: &LengthVector) -> Result<Vec<PreferenceVector>> {
    enumerate_invariant_nd_with(y, &SearchOptions::default())
}

pub fn enumerate_invariant_nd_with(
    y: &LengthVector,
    opts: &SearchOptions,
) -> Result<Vec<PreferenceVector>> {
    let space = CandidateSpace::new(y, opts.strategy);
    let candidates = space.count();
    if candidates > opts.budget {
        return Err(Error::BudgetExceeded {
            needed: candidates,
            budget: opts.budget,
        });
    }
    let candidates = space.generate();
    let spent = AtomicU64::new(0);
    let lengths = y.as_slice();
    let verdicts = candidates
        .par_iter()
        .map_init(
            || InvarianceTester::new(lengths),
            |tester, cand| {
                let before = tester.experiments;
                let ok = tester.is_invariant(cand);
                let total = spent.fetch_add(tester.experiments - before, Ordering::Relaxed)
                    + (tester.experiments - before);
                if total > opts.budget {
                    Err(Error::BudgetExceeded {
                        needed: total,
                        budget: opts.budget,
                    })
                } else {
                    Ok(ok)
                }
            },
        )
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(c, ok)| ok.then(|| PreferenceVector::from_raw(c)))
        .collect())
}

/// `|PA^inv_n(y)|`: each nondecreasing invariant counted with all its rearrangements.
pub fn enumerate_invariant_full_count(y: &LengthVector) -> Result<BigUint> {
    enumerate_invariant_full_count_with(y, &SearchOptions::default())
}

pub fn enumerate_invariant_full_count_with(
    y: &LengthVector,
    opts: &SearchOptions,
) -> Result<BigUint> {
    Ok(full_count_of(&enumerate_invariant_nd_with(y, opts)?))
}

pub(crate) fn full_count_of(nd: &[PreferenceVector]) -> BigUint {
    nd.iter()
        .map(|x| multiset::permutation_count(x.as_slice()))
        .fold(BigUint::zero(), |a, b| a + b)
}

/// `chi(y)`: the largest degree among invariant assortments.
pub fn characteristic(y: &LengthVector) -> Result<usize> {
    characteristic_with(y, &SearchOptions::default())
}

pub fn characteristic_with(y: &LengthVector, opts: &SearchOptions) -> Result<usize> {
    Ok(enumerate_invariant_nd_with(y, opts)?
        .iter()
        .map(degree)
        .max()
        .unwrap_or(0))
}

/// Everything the oracle knows about one length vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    pub y: LengthVector,
    pub nd_invariants: Vec<PreferenceVector>,
    pub characteristic: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub wset: Vec<u32>,
}

impl InvariantProfile {
    pub fn compute(y: &LengthVector, opts: &SearchOptions) -> Result<Self> {
        let nd_invariants = enumerate_invariant_nd_with(y, opts)?;
        let mut degree_histogram = BTreeMap::new();
        for x in &nd_invariants {
            *degree_histogram.entry(degree(x)).or_insert(0) += 1;
        }
        let characteristic = degree_histogram.keys().next_back().copied().unwrap_or(0);
        let scan = match opts.strategy {
            SearchStrategy::Pruned => WScan::BinarySums,
            SearchStrategy::Exhaustive => WScan::Raw,
        };
        Ok(Self {
            y: y.clone(),
            characteristic,
            degree_histogram,
            wset: invariant_solution_set_with(y, scan),
            nd_invariants,
        })
    }

    pub fn full_count(&self) -> BigUint {
        full_count_of(&self.nd_invariants)
    }

    pub fn nd_count(&self) -> usize {
        self.nd_invariants.len()
    }

    pub fn contains_nd(&self, x: &[u32]) -> bool {
        self.nd_invariants
            .binary_search_by(|p| p.as_slice().cmp(x))
            .is_ok()
    }
}
