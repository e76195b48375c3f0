//! Slow reference implementations used as test oracles. Deliberately share no
//! code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Parks cars one at a time by scanning every start position.
pub fn naive_parks(lengths: &[u32], prefs: &[u32]) -> bool {
    let m: u32 = lengths.iter().sum();
    let mut taken = vec![false; m as usize + 1];
    for (&len, &pref) in lengths.iter().zip(prefs) {
        let spot = (pref..=m + 1 - len)
            .find(|&s| s + len - 1 <= m && (s..s + len).all(|p| !taken[p as usize]));
        match spot {
            Some(s) => (s..s + len).for_each(|p| taken[p as usize] = true),
            None => return false,
        }
    }
    true
}

/// Every ordering of `items` by index, duplicates included.
pub fn orderings(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

pub fn naive_invariant(lengths: &[u32], prefs: &[u32]) -> bool {
    orderings(prefs).iter().all(|p| naive_parks(lengths, p))
}

pub fn all_tuples(max: u32, n: usize) -> Vec<Vec<u32>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (1..=max).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect()
    })
}

pub fn nondecreasing(max: u32, n: usize) -> Vec<Vec<u32>> {
    all_tuples(max, n)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// Nondecreasing invariant assortments by exhaustive search over `[m]^n`.
pub fn naive_invariant_nd(lengths: &[u32]) -> Vec<Vec<u32>> {
    let m: u32 = lengths.iter().sum();
    nondecreasing(m, lengths.len())
        .into_iter()
        .filter(|x| naive_invariant(lengths, x))
        .collect()
}

/// Total invariant assortments: every distinct rearrangement of each
/// nondecreasing one.
pub fn naive_invariant_full(lengths: &[u32]) -> usize {
    naive_invariant_nd(lengths)
        .iter()
        .map(|x| orderings(x).into_iter().collect::<BTreeSet<_>>().len())
        .sum()
}

pub fn naive_wset(lengths: &[u32]) -> Vec<u32> {
    let n = lengths.len();
    let m: u32 = lengths.iter().sum();
    (1..=m)
        .filter(|&w| {
            let mut x = vec![1; n];
            x[n - 1] = w;
            naive_invariant(lengths, &x)
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

pub fn catalan(n: u64) -> u128 {
    binomial(2 * n, n) / u128::from(n + 1)
}

/// Number of `x` in `[u_n]^n` with `x_(i) <= u_i`, by dynamic programming over
/// values: after deciding how many cars prefer each value `<= v`, at least `i`
/// cars must prefer a value `<= u_i`.
pub fn u_parking_count(u: &[u32]) -> u128 {
    let n = u.len();
    let top = *u.last().unwrap();
    // ways[c] = ordered assignments of c labelled cars to values seen so far.
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for v in 1..=top {
        let mut next = vec![0u128; n + 1];
        for (placed, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for extra in 0..=n - placed {
                next[placed + extra] += w * binomial((n - placed) as u64, extra as u64);
            }
        }
        let needed = u.iter().filter(|&&cap| cap <= v).count();
        for (placed, w) in next.iter_mut().enumerate() {
            if placed < needed {
                *w = 0;
            }
        }
        ways = next;
    }
    ways[n]
}

/// Same count by listing every tuple; only for tiny inputs.
pub fn u_parking_count_brute(u: &[u32]) -> u128 {
    let top = *u.last().unwrap();
    all_tuples(top, u.len())
        .into_iter()
        .filter(|x| {
            let mut s = x.clone();
            s.sort_unstable();
            s.iter().zip(u).all(|(a, b)| a <= b)
        })
        .count() as u128
}
