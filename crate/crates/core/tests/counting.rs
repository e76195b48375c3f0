mod common;

use common::*;
use num_bigint::BigUint;
use parkassort::closed_forms::{self, AlmostConstantClass, Regime, UParkingVector};
use parkassort::invariance;
use parkassort::parking::LengthVector;

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

/// `u` with successive differences `(a, b^{n-k-1}, c, 0^{k-1})`.
fn shape_u(n: usize, a: u32, b: u32, c: u32, k: usize) -> Vec<u32> {
    let mut delta = vec![a];
    delta.extend(std::iter::repeat_n(b, n - k - 1));
    delta.push(c);
    delta.extend(std::iter::repeat_n(0, k - 1));
    UParkingVector::from_delta(&delta).unwrap().u
}

#[test]
fn u_parking_dp_matches_listing() {
    for n in 1..=4usize {
        for u in nondecreasing(5, n) {
            assert_eq!(u_parking_count(&u), u_parking_count_brute(&u), "u = {u:?}");
        }
    }
}

#[test]
fn pitman_stanley_matches_direct_count() {
    for n in 2..=5usize {
        for k in 1..n {
            for a in 1..=6u32 {
                for b in 0..=6u32 {
                    for c in 0..=6u32 {
                        let u = shape_u(n, a, b, c, k);
                        let want = u_parking_count(&u);
                        let got = closed_forms::pitman_stanley_count(
                            n,
                            u64::from(a),
                            u64::from(b),
                            u64::from(c),
                            k,
                        )
                        .unwrap();
                        assert_eq!(got, big(want), "n={n} k={k} a={a} b={b} c={c}");
                    }
                }
            }
        }
    }
}

#[test]
fn pitman_stanley_rejects_bad_shapes() {
    assert!(closed_forms::pitman_stanley_count(1, 1, 1, 1, 1).is_err());
    assert!(closed_forms::pitman_stanley_count(4, 1, 1, 1, 0).is_err());
    assert!(closed_forms::pitman_stanley_count(4, 1, 1, 1, 4).is_err());
    assert!(closed_forms::pitman_stanley_count(4, 0, 1, 1, 2).is_err());
}

#[test]
fn catalan_triangle_recursion() {
    let f = |n: u64, k: u64| closed_forms::catalan_triangle(n, k).unwrap();
    for n in 0..=20u64 {
        assert_eq!(f(n, 0), big(1));
    }
    for n in 1..=20u64 {
        assert_eq!(f(n, 1), big(u128::from(n)));
        if n < 20 {
            assert_eq!(f(n + 1, n + 1), f(n + 1, n));
        }
        for k in 2..=n {
            if n < 20 {
                assert_eq!(f(n + 1, k), f(n + 1, k - 1) + f(n, k), "n={n} k={k}");
            }
        }
    }
    for n in 0..=20u64 {
        assert_eq!(f(n, n), closed_forms::catalan(n));
        assert_eq!(closed_forms::catalan(n), big(catalan(n)));
    }
}

#[test]
fn catalan_triangle_counts_capped_nondecreasing_parking_functions() {
    for n in 1..=6usize {
        for k in 0..=n {
            let u: Vec<u32> = (1..=n).map(|i| i.min(k + 1) as u32).collect();
            let direct = nondecreasing(u[n - 1], n)
                .into_iter()
                .filter(|x| x.iter().zip(&u).all(|(a, b)| a <= b))
                .count();
            assert_eq!(
                closed_forms::catalan_triangle(n as u64, k as u64).unwrap(),
                big(direct as u128),
                "n={n} k={k}"
            );
        }
    }
}

/// Inclusion–exclusion count for the irregular regime, written out
/// independently with signed 128-bit arithmetic.
fn irregular_full(n: i128, q: i128) -> i128 {
    (0..=n - q - 1)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(n as u64, j as u64) as i128
                * (n - q - j).pow(j as u32)
                * (n - j + 1).pow((n - j - 1) as u32)
        })
        .sum()
}

#[test]
fn irregular_counts_match_oracle_and_direct_formula() {
    for (a, b, n) in [
        (2u32, 3u32, 3usize),
        (2, 3, 4),
        (2, 5, 4),
        (2, 5, 5),
        (3, 4, 4),
        (3, 7, 4),
    ] {
        let cls = AlmostConstantClass::new(a, b, n).unwrap();
        assert_eq!(cls.regime, Regime::Irregular);
        let q = i128::from(cls.quotient());
        let y = cls.length_vector();
        let full = invariance::enumerate_invariant_full_count(&y).unwrap();
        assert_eq!(full, big(naive_invariant_full(y.as_slice()) as u128));
        assert_eq!(full, closed_forms::count_invariant_full(&cls));
        assert_eq!(full, big(irregular_full(n as i128, q) as u128));
        assert_eq!(
            full,
            big(u_parking_count(&cls.u_vector().u)),
            "bijection with u-parking functions"
        );
    }
}

#[test]
fn u_parking_round_trip() {
    let y = LengthVector::new(vec![3, 2, 2, 2]).unwrap();
    let cls = closed_forms::classify(&y).unwrap();
    let u = cls.u_vector();
    assert_eq!(u.u, vec![1, 2, 2, 2]);
    let invariants = invariance::enumerate_invariant_nd(&y).unwrap();
    let images: Vec<Vec<u32>> = invariants
        .iter()
        .map(|x| {
            let p = closed_forms::to_u_parking(&cls, x).unwrap();
            assert!(u.admits(p.as_slice()));
            assert_eq!(&closed_forms::from_u_parking(&cls, &p).unwrap(), x);
            p.as_slice().to_vec()
        })
        .collect();
    let want: Vec<Vec<u32>> = nondecreasing(2, 4)
        .into_iter()
        .filter(|p| u.admits(p))
        .collect();
    assert_eq!(images, want);
}

#[test]
fn superdecreasing_counts_match_oracle() {
    for y in [
        vec![8u32, 4, 2, 1],
        vec![2, 1],
        vec![5],
        vec![9, 4, 2, 1],
        vec![12, 5, 3, 1],
    ] {
        let y = LengthVector::new(y).unwrap();
        let (full, nd) = closed_forms::superdecreasing_counts(&y).unwrap();
        assert_eq!(
            full,
            invariance::enumerate_invariant_full_count(&y).unwrap()
        );
        assert_eq!(
            nd,
            BigUint::from(invariance::enumerate_invariant_nd(&y).unwrap().len())
        );
    }
    let y = LengthVector::new(vec![7, 5, 3, 1]).unwrap();
    assert!(closed_forms::superdecreasing_counts(&y).is_err());
}

#[test]
fn nd_bound_values() {
    for (n, expect) in [(1usize, 1u128), (2, 2), (3, 10), (4, 120), (5, 3876)] {
        let direct = binomial((1u64 << (n - 1)) + n as u64 - 2, n as u64 - 1);
        assert_eq!(direct, expect);
        assert_eq!(
            closed_forms::max_nd_invariant_bound(n).unwrap(),
            big(expect)
        );
    }
    assert!(closed_forms::max_nd_invariant_bound(0).is_err());
}
