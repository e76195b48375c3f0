//! The parking experiment for cars of arbitrary lengths.
//!
//! A street has `m` spots numbered `1..=m`, where `m` is the total length of
//! all cars. Cars arrive in order; car `i` drives to its preferred spot `x_i`
//! and takes the first block of `y_i` contiguous free spots starting at or
//! after `x_i`. Cars never move backwards, and a block must end at or before
//! spot `m`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Upper bound on the street length accepted by [`LengthVector::new`].
///
/// Occupancy is a dense array of spots, so this caps memory per simulation.
pub const MAX_TOTAL_SPOTS: u64 = 1 << 20;

/// Car lengths `y_1..y_n`, each at least one spot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LengthVector(Vec<u32>);

impl LengthVector {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidLengths("at least one car is required".into()));
        }
        if let Some(pos) = lengths.iter().position(|&l| l == 0) {
            return Err(Error::InvalidLengths(format!(
                "car {} has length 0; lengths must be positive",
                pos + 1
            )));
        }
        let total: u64 = lengths.iter().map(|&l| u64::from(l)).sum();
        if total > MAX_TOTAL_SPOTS {
            return Err(Error::InvalidLengths(format!(
                "total length {total} exceeds the supported maximum {MAX_TOTAL_SPOTS}"
            )));
        }
        Ok(Self(lengths))
    }

    /// Number of cars.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Number of spots on the street, the sum of all lengths.
    pub fn m(&self) -> u32 {
        // Bounded by MAX_TOTAL_SPOTS at construction.
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Sum of the first `k` lengths.
    pub fn prefix_sum(&self, k: usize) -> u32 {
        self.0[..k].iter().sum()
    }

    /// The first `k` cars, `y|_k`. Requires `1 <= k <= n`.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n() {
            return Err(Error::InvalidArgument(format!(
                "prefix length {k} outside 1..={}",
                self.n()
            )));
        }
        Ok(Self(self.0[..k].to_vec()))
    }

    /// `(y, extra)`: the vector with one more car appended.
    pub fn extended(&self, extra: u32) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(extra);
        Self::new(v)
    }

    /// All entries equal.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// `y_j > y_{j+1} + ... + y_n` for every `j < n`.
    pub fn is_superdecreasing(&self) -> bool {
        let n = self.0.len();
        let mut tail: u64 = 0;
        for (j, &l) in self.0.iter().enumerate().rev() {
            if j + 1 < n && u64::from(l) <= tail {
                return false;
            }
            tail += u64::from(l);
        }
        true
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

/// Preferred spots `x_1..x_n`, validated against a length vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PreferenceVector(Vec<u32>);

impl PreferenceVector {
    /// Checks that there is one preference per car and that each lies in `[1, m]`.
    pub fn new(context: &LengthVector, prefs: Vec<u32>) -> Result<Self> {
        if prefs.len() != context.n() {
            return Err(Error::InvalidPreferences(format!(
                "expected {} preferences, got {}",
                context.n(),
                prefs.len()
            )));
        }
        let m = context.m();
        if let Some(pos) = prefs.iter().position(|&p| p == 0 || p > m) {
            return Err(Error::InvalidPreferences(format!(
                "car {} prefers spot {}, outside [1, {m}]",
                pos + 1,
                prefs[pos]
            )));
        }
        Ok(Self(prefs))
    }

    /// Builds a vector whose entries are known to be valid for the caller's context.
    pub(crate) fn from_raw(prefs: Vec<u32>) -> Self {
        Self(prefs)
    }

    /// The all-ones vector `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_nondecreasing(&self) -> bool {
        is_nondecreasing(&self.0)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

pub(crate) fn is_nondecreasing(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

/// Which spots of the street are taken. Spot `s` lives at index `s - 1`.
#[derive(Debug, Clone)]
pub struct Occupancy {
    taken: Vec<bool>,
    occupied: usize,
}

impl Occupancy {
    pub fn new(m: u32) -> Self {
        Self {
            taken: vec![false; m as usize],
            occupied: 0,
        }
    }

    pub fn spots(&self) -> usize {
        self.taken.len()
    }

    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn is_taken(&self, spot: u32) -> bool {
        self.taken[spot as usize - 1]
    }

    pub fn clear(&mut self) {
        self.taken.fill(false);
        self.occupied = 0;
    }

    /// Smallest `s >= from` with `[s, s + len - 1]` free and inside the street.
    pub fn first_fit(&self, from: u32, len: u32) -> Option<u32> {
        let len = len as usize;
        let mut run = 0usize;
        for idx in (from as usize).saturating_sub(1)..self.taken.len() {
            if self.taken[idx] {
                run = 0;
            } else {
                run += 1;
                if run == len {
                    return Some((idx + 2 - len) as u32);
                }
            }
        }
        None
    }

    /// Marks `[start, start + len - 1]` as taken. The block must be free.
    pub fn occupy(&mut self, start: u32, len: u32) {
        let lo = start as usize - 1;
        for slot in &mut self.taken[lo..lo + len as usize] {
            debug_assert!(!*slot, "spot already occupied");
            *slot = true;
        }
        self.occupied += len as usize;
    }
}

/// Result of running the parking experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ParkingOutcome {
    /// Car `i` occupies `[starts[i], starts[i] + y_i - 1]`.
    Parked { assignment: Vec<u32> },
    /// 1-based index of the first car that found no room.
    Failed { failed_car: usize },
}

impl ParkingOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ParkingOutcome::Parked { .. })
    }

    pub fn assignment(&self) -> Option<&[u32]> {
        match self {
            ParkingOutcome::Parked { assignment } => Some(assignment),
            ParkingOutcome::Failed { .. } => None,
        }
    }
}

/// Reusable simulator for one length vector. Hot loops call [`Parker::parks`]
/// many times without reallocating the street.
#[derive(Debug, Clone)]
pub struct Parker<'a> {
    lengths: &'a [u32],
    street: Occupancy,
}

impl<'a> Parker<'a> {
    pub fn new(y: &'a LengthVector) -> Self {
        Self::from_slice(y.as_slice())
    }

    pub(crate) fn from_slice(lengths: &'a [u32]) -> Self {
        let m = lengths.iter().sum();
        Self {
            lengths,
            street: Occupancy::new(m),
        }
    }

    /// Runs the experiment; on success `starts` holds each car's first spot.
    /// On failure returns the 0-based index of the stuck car.
    pub(crate) fn run(
        &mut self,
        prefs: &[u32],
        mut starts: Option<&mut Vec<u32>>,
    ) -> std::result::Result<(), usize> {
        assert_eq!(
            prefs.len(),
            self.lengths.len(),
            "preference vector does not match the number of cars"
        );
        self.street.clear();
        if let Some(s) = starts.as_deref_mut() {
            s.clear();
        }
        for (car, (&pref, &len)) in prefs.iter().zip(self.lengths).enumerate() {
            match self.street.first_fit(pref, len) {
                Some(start) => {
                    self.street.occupy(start, len);
                    if let Some(s) = starts.as_deref_mut() {
                        s.push(start);
                    }
                }
                None => return Err(car),
            }
        }
        Ok(())
    }

    /// True iff every car parks under `prefs`.
    pub fn parks(&mut self, prefs: &[u32]) -> bool {
        self.run(prefs, None).is_ok()
    }

    pub fn outcome(&mut self, prefs: &[u32]) -> ParkingOutcome {
        let mut starts = Vec::with_capacity(prefs.len());
        match self.run(prefs, Some(&mut starts)) {
            Ok(()) => ParkingOutcome::Parked { assignment: starts },
            Err(car) => ParkingOutcome::Failed {
                failed_car: car + 1,
            },
        }
    }
}

/// Simulates the cars in order and reports where each one parked.
pub fn park(y: &LengthVector, x: &PreferenceVector) -> ParkingOutcome {
    Parker::new(y).outcome(x.as_slice())
}

pub fn is_parking_assortment(y: &LengthVector, x: &PreferenceVector) -> bool {
    Parker::new(y).parks(x.as_slice())
}

/// Membership test for nondecreasing preferences without simulating:
/// `x_i <= 1 + y_1 + ... + y_{i-1}` for every `i`.
pub fn nondecreasing_pa_check(y: &LengthVector, x: &PreferenceVector) -> Result<bool> {
    if !x.is_nondecreasing() {
        return Err(Error::NotNondecreasing);
    }
    Ok(nondecreasing_caps_hold(y.as_slice(), x.as_slice()))
}

pub(crate) fn nondecreasing_caps_hold(lengths: &[u32], prefs: &[u32]) -> bool {
    let mut cap = 1u32;
    for (&p, &l) in prefs.iter().zip(lengths) {
        if p > cap {
            return false;
        }
        cap += l;
    }
    true
}

/// The nondecreasing rearrangement `(x_(1), ..., x_(n))`.
pub fn sort_prefs(x: &PreferenceVector) -> PreferenceVector {
    let mut v = x.0.clone();
    v.sort_unstable();
    PreferenceVector(v)
}
