//! Closed-form descriptions and counts for the families whose invariant
//! assortments are known explicitly: almost-constant vectors `(b, a^{n-1})`,
//! superdecreasing vectors, and the u-parking-function counts behind them.
//!
//! Nothing in here simulates parking; the oracle in [`crate::invariance`] is
//! the reference these fast paths are tested against.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariance::{self, SearchOptions};
use crate::parking::{LengthVector, PreferenceVector};
use crate::serde_big;

/// Which characterization applies to an almost-constant vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `a | b`.
    Divides,
    /// `b > (n - 1) a` and `a` does not divide `b`.
    Large,
    /// `a` does not divide `b` and `b < (n - 1) a`.
    Irregular,
}

/// A length vector of the form `(b, a^{n-1})` with `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AlmostConstantClass {
    pub a: u32,
    pub b: u32,
    pub n: usize,
    pub regime: Regime,
}

impl AlmostConstantClass {
    /// Classifies `(b, a^{n-1})`, preferring `Divides` over `Large`.
    pub fn new(a: u32, b: u32, n: usize) -> Result<Self> {
        if a == 0 || b == 0 || n < 2 {
            return Err(Error::InvalidArgument(format!(
                "almost-constant class needs a, b >= 1 and n >= 2 (got a={a}, b={b}, n={n})"
            )));
        }
        let regime = if b.is_multiple_of(a) {
            Regime::Divides
        } else if u64::from(b) > (n as u64 - 1) * u64::from(a) {
            Regime::Large
        } else {
            Regime::Irregular
        };
        Ok(Self { a, b, n, regime })
    }

    /// `floor(b / a)`.
    pub fn quotient(&self) -> u32 {
        self.b / self.a
    }

    pub fn length_vector(&self) -> LengthVector {
        let mut v = vec![self.a; self.n];
        v[0] = self.b;
        LengthVector::new(v).expect("class parameters are positive")
    }

    /// Largest allowed multiplier `k` for the `i`-th order statistic (1-based),
    /// where entries take the form `1 + (k - 1) a`.
    fn order_stat_cap(&self, i: usize) -> usize {
        match self.regime {
            Regime::Divides | Regime::Large => i,
            Regime::Irregular => i.min(self.quotient() as usize + 1),
        }
    }

    /// The bound vector `u` whose u-parking functions are in bijection with
    /// the invariant assortments: `(1, 2, ..., q, (q+1)^{n-q})` with
    /// `q = floor(b/a)` in the irregular regime and `(1, 2, ..., n)` otherwise.
    pub fn u_vector(&self) -> UParkingVector {
        let u = (1..=self.n)
            .map(|i| self.order_stat_cap(i) as u32)
            .collect();
        UParkingVector::new(u).expect("caps are positive and nondecreasing")
    }
}

pub fn classify(y: &LengthVector) -> Option<AlmostConstantClass> {
    let v = y.as_slice();
    if v.len() < 2 || !v[1..].windows(2).all(|w| w[0] == w[1]) {
        return None;
    }
    AlmostConstantClass::new(v[1], v[0], v.len()).ok()
}

/// Nondecreasing invariant assortments read off the order-statistic
/// conditions, in lexicographic order.
pub fn generate_invariant_nd_closed(cls: &AlmostConstantClass) -> Vec<PreferenceVector> {
    fn rec(
        cls: &AlmostConstantClass,
        min_k: usize,
        acc: &mut Vec<u32>,
        out: &mut Vec<PreferenceVector>,
    ) {
        let i = acc.len() + 1;
        if i > cls.n {
            out.push(PreferenceVector::from_raw(acc.clone()));
            return;
        }
        for k in min_k..=cls.order_stat_cap(i) {
            acc.push(1 + (k as u32 - 1) * cls.a);
            rec(cls, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(cls, 1, &mut Vec::with_capacity(cls.n), &mut out);
    out
}

/// `chi(y) = n - 1` holds exactly when `y_1 >= y_2 = y_3 = ... = y_n`.
pub fn is_max_characteristic(y: &LengthVector) -> Result<bool> {
    let v = y.as_slice();
    if v.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: v.len(),
        });
    }
    Ok(v[0] >= v[1] && v[1..].windows(2).all(|w| w[0] == w[1]))
}

/// `|PA^inv_n(y)|` for `y = (b, a^{n-1})`.
///
/// In the irregular regime this is the u-parking-function count
/// `sum_{j=0}^{n-q-1} (-1)^j C(n,j) (n-q-j)^j (n-j+1)^{n-j-1}`, `q = floor(b/a)`.
pub fn count_invariant_full(cls: &AlmostConstantClass) -> BigUint {
    let n = cls.n as u64;
    match cls.regime {
        Regime::Divides | Regime::Large => pow(n + 1, n - 1),
        Regime::Irregular => {
            let q = u64::from(cls.quotient());
            let mut total = BigInt::zero();
            for j in 0..=(n - q - 1) {
                let term = BigInt::from(binomial(n, j))
                    * BigInt::from(pow(n - q - j, j))
                    * BigInt::from(pow(n - j + 1, n - j - 1));
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total.to_biguint().expect("u-parking count is nonnegative")
        }
    }
}

/// `|PA^{inv,up}_n(y)|` for `y = (b, a^{n-1})`: the Catalan number in the
/// regular regimes, the Catalan-triangle entry `f(n, floor(b/a))` otherwise.
pub fn count_invariant_nd(cls: &AlmostConstantClass) -> BigUint {
    match cls.regime {
        Regime::Divides | Regime::Large => catalan(cls.n as u64),
        Regime::Irregular => catalan_triangle(cls.n as u64, u64::from(cls.quotient()))
            .expect("quotient is below n in the irregular regime"),
    }
}

/// Number of u-parking functions of length `n` for the `u` whose successive
/// differences are `(a, b^{n-k-1}, c, 0^{k-1})`.
pub fn pitman_stanley_count(n: usize, a: u64, b: u64, c: u64, k: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::MalformedShape(format!("need n >= 2, got {n}")));
    }
    if k == 0 || k >= n {
        return Err(Error::MalformedShape(format!(
            "need 1 <= k <= n-1 = {}, got {k}",
            n - 1
        )));
    }
    if a == 0 {
        return Err(Error::MalformedShape(
            "first difference a must be >= 1".into(),
        ));
    }
    let (nn, kk) = (n as u64, k as u64);
    let (a_i, b_i, c_i) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let mut sum = BigInt::zero();
    for j in 0..=kk {
        let base1 = &c_i - BigInt::from(kk + 1 - j) * &b_i;
        let base2 = &a_i + BigInt::from(nn - j) * &b_i;
        let term = BigInt::from(binomial(nn, j))
            * num_traits::pow(base1, j as usize)
            * num_traits::pow(base2, (nn - j - 1) as usize);
        sum += term;
    }
    let total = a_i * sum;
    if total.is_negative() {
        return Err(Error::OracleDisagreement(format!(
            "negative u-parking count {total} for shape n={n} a={a} b={b} c={c} k={k}"
        )));
    }
    Ok(total.to_biguint().expect("checked nonnegative"))
}

/// Catalan's triangle `f(n, k) = (n-k+1)/(n+1) C(n+k, k)` for `0 <= k <= n`.
pub fn catalan_triangle(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "catalan triangle needs k <= n (got n={n}, k={k})"
        )));
    }
    let numerator = BigUint::from(n - k + 1) * binomial(n + k, k);
    let (q, r) = numerator.div_rem(&BigUint::from(n + 1));
    assert!(
        r.is_zero(),
        "catalan triangle entry f({n},{k}) is not integral"
    );
    Ok(q)
}

/// The `n`-th Catalan number.
pub fn catalan(n: u64) -> BigUint {
    let (q, r) = binomial(2 * n, n).div_rem(&BigUint::from(n + 1));
    assert!(r.is_zero());
    q
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    binomial_big(&BigUint::from(n), k)
}

/// `C(n, k)` for a big `n` and small `k`.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(n - k + i, i) after this step, always integral.
        acc = acc * (n - BigUint::from(k - i)) / BigUint::from(i);
    }
    acc
}

fn pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// A nondecreasing bound vector `u` together with its successive differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UParkingVector {
    pub u: Vec<u32>,
    pub delta: Vec<u32>,
}

impl UParkingVector {
    pub fn new(u: Vec<u32>) -> Result<Self> {
        if u.is_empty() || u[0] == 0 {
            return Err(Error::InvalidArgument(
                "u must be nonempty with positive entries".into(),
            ));
        }
        if !u.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidArgument("u must be nondecreasing".into()));
        }
        let mut delta = Vec::with_capacity(u.len());
        delta.push(u[0]);
        delta.extend(u.windows(2).map(|w| w[1] - w[0]));
        Ok(Self { u, delta })
    }

    pub fn from_delta(delta: &[u32]) -> Result<Self> {
        let u = delta
            .iter()
            .scan(0u32, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect();
        Self::new(u)
    }

    /// Whether `x` (any order) satisfies `x_(i) <= u_i` for all `i`.
    pub fn admits(&self, x: &[u32]) -> bool {
        if x.len() != self.u.len() {
            return false;
        }
        let mut sorted = x.to_vec();
        sorted.sort_unstable();
        sorted
            .iter()
            .zip(&self.u)
            .all(|(&p, &cap)| p >= 1 && p <= cap)
    }
}

/// Scales an invariant assortment down to a u-parking function:
/// `x_i -> 1 + (x_i - 1) / a`.
pub fn to_u_parking(cls: &AlmostConstantClass, x: &PreferenceVector) -> Result<PreferenceVector> {
    let a = cls.a;
    let mapped = x
        .as_slice()
        .iter()
        .map(|&v| {
            if (v - 1) % a != 0 {
                Err(Error::NonIntegral {
                    value: v,
                    modulus: a,
                })
            } else {
                Ok(1 + (v - 1) / a)
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(PreferenceVector::from_raw(mapped))
}

/// Inverse of [`to_u_parking`]: `p_i -> 1 + (p_i - 1) a`.
pub fn from_u_parking(cls: &AlmostConstantClass, p: &PreferenceVector) -> Result<PreferenceVector> {
    let mapped = p
        .as_slice()
        .iter()
        .map(|&v| {
            if v == 0 {
                return Err(Error::InvalidPreferences(
                    "u-parking entries start at 1".into(),
                ));
            }
            (v - 1)
                .checked_mul(cls.a)
                .and_then(|s| s.checked_add(1))
                .ok_or_else(|| Error::InvalidPreferences(format!("entry {v} overflows")))
        })
        .collect::<Result<Vec<u32>>>()?;
    PreferenceVector::new(&cls.length_vector(), mapped)
}

/// `(|PA^inv|, |PA^{inv,up}|) = (2^{n-1} n - n + 1, 2^{n-1})` for superdecreasing `y`.
pub fn superdecreasing_counts(y: &LengthVector) -> Result<(BigUint, BigUint)> {
    if !y.is_superdecreasing() {
        return Err(Error::NotSuperdecreasing);
    }
    let n = y.n() as u64;
    let half = pow(2, n - 1);
    let full = &half * BigUint::from(n) + BigUint::one() - BigUint::from(n);
    Ok((full, half))
}

/// `C(2^{n-1} + n - 2, n - 1)`, an upper bound on `|PA^{inv,up}_n(y)|` for any `y`.
pub fn max_nd_invariant_bound(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let n = n as u64;
    let top = pow(2, n - 1) + BigUint::from(n) - BigUint::from(2u32);
    Ok(binomial_big(&top, n - 1))
}

/// Where a closed-form count came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountProvenance {
    SingleCar,
    AlmostConstantDivides,
    AlmostConstantLarge,
    AlmostConstantIrregular,
    Superdecreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCount {
    #[serde(serialize_with = "serde_big::serialize")]
    pub full: BigUint,
    #[serde(serialize_with = "serde_big::serialize")]
    pub nd: BigUint,
    pub provenance: CountProvenance,
}

/// Oracle counts next to the closed form, when one applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(serialize_with = "serde_big::serialize")]
    pub full: BigUint,
    #[serde(serialize_with = "serde_big::serialize")]
    pub nd: BigUint,
    pub closed_form: Option<ClosedFormCount>,
    pub agree: Option<bool>,
}

/// Closed-form counts for `y`, if it belongs to a characterized family.
pub fn closed_form_counts(y: &LengthVector) -> Option<ClosedFormCount> {
    if y.n() == 1 {
        return Some(ClosedFormCount {
            full: BigUint::one(),
            nd: BigUint::one(),
            provenance: CountProvenance::SingleCar,
        });
    }
    if let Some(cls) = classify(y) {
        let provenance = match cls.regime {
            Regime::Divides => CountProvenance::AlmostConstantDivides,
            Regime::Large => CountProvenance::AlmostConstantLarge,
            Regime::Irregular => CountProvenance::AlmostConstantIrregular,
        };
        return Some(ClosedFormCount {
            full: count_invariant_full(&cls),
            nd: count_invariant_nd(&cls),
            provenance,
        });
    }
    superdecreasing_counts(y)
        .ok()
        .map(|(full, nd)| ClosedFormCount {
            full,
            nd,
            provenance: CountProvenance::Superdecreasing,
        })
}

pub fn count_report(y: &LengthVector, opts: &SearchOptions) -> Result<CountReport> {
    let nd_list = invariance::enumerate_invariant_nd_with(y, opts)?;
    let full = invariance::full_count_of(&nd_list);
    let nd = BigUint::from(nd_list.len());
    let closed_form = closed_form_counts(y);
    let agree = closed_form
        .as_ref()
        .map(|cf| cf.full == full && cf.nd == nd);
    Ok(CountReport {
        full,
        nd,
        closed_form,
        agree,
    })
}
