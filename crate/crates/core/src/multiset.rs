//! Distinct permutations of a multiset, in lexicographic order.

use num_bigint::BigUint;
use num_traits::One;

/// Rearranges `v` into the next lexicographically greater permutation.
/// Returns false (leaving `v` sorted ascending) when `v` was the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Rearranges `v` into the next lexicographically smaller permutation.
/// Returns false (leaving `v` sorted descending) when `v` was the first one.
pub fn prev_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `visit` on each distinct permutation of `items`, largest
/// lexicographic order first, until `visit` returns false.
///
/// Returns the permutation that stopped the walk, if any.
pub fn find_permutation_descending<T, F>(items: &[T], mut visit: F) -> Option<Vec<T>>
where
    T: Ord + Clone,
    F: FnMut(&[T]) -> bool,
{
    let mut buf = items.to_vec();
    buf.sort_unstable_by(|a, b| b.cmp(a));
    loop {
        if !visit(&buf) {
            return Some(buf);
        }
        if !prev_permutation(&mut buf) {
            return None;
        }
    }
}

/// All distinct permutations in ascending lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut buf = items.to_vec();
    buf.sort_unstable();
    let mut out = vec![buf.clone()];
    while next_permutation(&mut buf) {
        out.push(buf.clone());
    }
    out
}

/// Number of distinct permutations: `n! / prod(multiplicity!)`.
pub fn permutation_count<T: Ord + Clone>(items: &[T]) -> BigUint {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut count = BigUint::one();
    let mut run = 0u32;
    for (i, item) in sorted.iter().enumerate() {
        if i > 0 && sorted[i - 1] == *item {
            run += 1;
        } else {
            run = 1;
        }
        // Multiply by (i+1)/run incrementally; each prefix quotient is a multinomial.
        count *= (i + 1) as u32;
        count /= run;
    }
    count
}
