//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{binomial, catalan, nondecreasing, u_parking_count};
use num_bigint::BigUint;
use parkassort::closed_forms::{self, AlmostConstantClass, Regime, UParkingVector};
use parkassort::invariance::{self, InvariantProfile, SearchOptions};
use parkassort::parking::{self, LengthVector, PreferenceVector};
use parkassort::theorems::{self, CheckOptions, TheoremId};

const LIMIT_EXAMPLES: Duration = Duration::from_secs(1);
const LIMIT_CONSTANT: Duration = Duration::from_secs(60);
const LIMIT_IRREGULAR: Duration = Duration::from_secs(120);
const LIMIT_SUPERDECREASING: Duration = Duration::from_secs(10);
const LIMIT_SWEEP: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lv(v: &[u32]) -> LengthVector {
    LengthVector::new(v.to_vec()).expect("valid lengths")
}

fn raw(xs: &[PreferenceVector]) -> Vec<Vec<u32>> {
    xs.iter().map(|x| x.as_slice().to_vec()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn worked_examples() -> Outcome {
    let started = Instant::now();
    let y = lv(&[3, 4, 2]);
    let x = PreferenceVector::new(&y, vec![5, 1, 6]).map_err(|e| e.to_string())?;
    let got = parking::park(&y, &x);
    ensure(got.assignment() == Some(&[5, 1, 8][..]), || {
        format!("park gave {got:?}")
    })?;
    let nd = invariance::enumerate_invariant_nd(&lv(&[7, 4, 6])).map_err(|e| e.to_string())?;
    ensure(raw(&nd) == vec![vec![1, 1, 1], vec![1, 1, 5]], || {
        format!("enumeration gave {:?}", raw(&nd))
    })?;
    let took = within(LIMIT_EXAMPLES, started)?;
    Ok(format!(
        "starts (5,1,8); invariants {{(1,1,1),(1,1,5)}} in {took:?}"
    ))
}

fn constant_family() -> Outcome {
    let started = Instant::now();
    let mut checked = 0;
    for a in 1..=3u32 {
        for n in 2..=5usize {
            let y = lv(&vec![a; n]);
            let nd = invariance::enumerate_invariant_nd(&y).map_err(|e| e.to_string())?;
            let full = invariance::enumerate_invariant_full_count(&y).map_err(|e| e.to_string())?;
            let want_full = BigUint::from(n as u64 + 1).pow(n as u32 - 1);
            let want_nd = catalan(n as u64);
            ensure(full == want_full, || {
                format!("y={:?}: full {full} != {want_full}", y.as_slice())
            })?;
            ensure(nd.len() as u128 == want_nd, || {
                format!("y={:?}: nd {} != {want_nd}", y.as_slice(), nd.len())
            })?;
            checked += 1;
        }
    }
    let took = within(LIMIT_CONSTANT, started)?;
    Ok(format!(
        "{checked} constant vectors match (n+1)^(n-1) and Catalan in {took:?}"
    ))
}

fn regular_almost_constant() -> Outcome {
    let opts = SearchOptions::default();
    let (mut checked, mut skipped) = (0, 0);
    for a in 1..=3u32 {
        for b in 1..=7u32 {
            for n in 2..=5usize {
                let cls = AlmostConstantClass::new(a, b, n).map_err(|e| e.to_string())?;
                if cls.regime == Regime::Irregular {
                    continue;
                }
                let y = cls.length_vector();
                let oracle = match invariance::enumerate_invariant_nd_with(&y, &opts) {
                    Ok(v) => raw(&v),
                    Err(parkassort::Error::BudgetExceeded { .. }) => {
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e.to_string()),
                };
                let closed = raw(&closed_forms::generate_invariant_nd_closed(&cls));
                let constant = raw(&invariance::enumerate_invariant_nd(&lv(&vec![a; n]))
                    .map_err(|e| e.to_string())?);
                ensure(oracle == closed, || {
                    format!("y={:?}: oracle != generator", y.as_slice())
                })?;
                ensure(oracle == constant, || {
                    format!("y={:?}: differs from constant family", y.as_slice())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} vectors agree with generator and constant family ({skipped} over budget)"
    ))
}

fn irregular_counts() -> Outcome {
    let started = Instant::now();
    let mut lines = Vec::new();
    for (n, q) in [(3usize, 1u32), (4, 1), (4, 2), (5, 2)] {
        let (a, b) = (2u32, 2 * q + 1);
        let cls = AlmostConstantClass::new(a, b, n).map_err(|e| e.to_string())?;
        ensure(
            cls.regime == Regime::Irregular && cls.quotient() == q,
            || format!("({b},{a}^{}) not irregular with quotient {q}", n - 1),
        )?;
        let y = cls.length_vector();
        let full = invariance::enumerate_invariant_full_count(&y).map_err(|e| e.to_string())?;
        let nd = invariance::enumerate_invariant_nd(&y)
            .map_err(|e| e.to_string())?
            .len();
        let nn = n as i128;
        let qq = i128::from(q);
        let formula: i128 = (0..=nn - qq - 1)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * binomial(n as u64, j as u64) as i128
                    * (nn - qq - j).pow(j as u32)
                    * (nn - j + 1).pow((nn - j - 1) as u32)
            })
            .sum();
        let simple = match q {
            1 => 2i128.pow(n as u32) - 1,
            _ => 3i128.pow(n as u32) - 2i128.pow(n as u32) - nn,
        };
        let triangle = (nn - qq + 1) as u128 * binomial(n as u64 + u64::from(q), u64::from(q))
            / (n as u128 + 1);
        ensure(full == BigUint::from(formula as u128), || {
            format!("n={n} q={q}: oracle {full} != sum {formula}")
        })?;
        ensure(formula == simple, || {
            format!("n={n} q={q}: sum {formula} != {simple}")
        })?;
        ensure(full == closed_forms::count_invariant_full(&cls), || {
            format!("n={n} q={q}: library formula differs")
        })?;
        ensure(nd as u128 == triangle, || {
            format!("n={n} q={q}: nd {nd} != {triangle}")
        })?;
        ensure(
            BigUint::from(nd) == closed_forms::count_invariant_nd(&cls),
            || format!("n={n} q={q}: library nd formula differs"),
        )?;
        lines.push(format!("(n={n},q={q}) full={full} nd={nd}"));
    }
    let took = within(LIMIT_IRREGULAR, started)?;
    Ok(format!("{} in {took:?}", lines.join(", ")))
}

fn superdecreasing() -> Outcome {
    let started = Instant::now();
    let y = lv(&[8, 4, 2, 1]);
    let profile =
        InvariantProfile::compute(&y, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(profile.wset.len() == 8, || {
        format!("|W| = {}", profile.wset.len())
    })?;
    ensure(profile.full_count() == BigUint::from(29u32), || {
        format!("full = {}", profile.full_count())
    })?;
    ensure(profile.nd_count() == 8, || {
        format!("nd = {}", profile.nd_count())
    })?;
    ensure(profile.characteristic == 1, || {
        format!("chi = {}", profile.characteristic)
    })?;
    let took = within(LIMIT_SUPERDECREASING, started)?;
    Ok(format!("|W|=8, full=29, nd=8, chi=1 in {took:?}"))
}

fn published_wset() -> Outcome {
    let y = lv(&[7, 5, 3, 1]);
    let w = invariance::invariant_solution_set(&y);
    ensure(w == vec![1, 2, 4, 5, 6, 7, 9], || format!("W = {w:?}"))?;
    let report = theorems::check(TheoremId::ENeccEquality, &y, &CheckOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("checker verdict {:?}", report.verdict)
    })?;
    let gap = report.converse_gap.ok_or("no converse gap reported")?;
    ensure(gap.replay() == Some(true), || {
        "gap witness does not replay".into()
    })?;
    Ok(format!(
        "W={w:?} (7 < 8); checker passes; converse gap at x={:?}",
        gap.x.unwrap_or_default()
    ))
}

fn theorem_sweep() -> Outcome {
    let started = Instant::now();
    let opts = CheckOptions {
        extension_max: 3,
        ..CheckOptions::default()
    };
    let reports = theorems::sweep_all(4, 3, &opts).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(r.passed(), || {
            format!("{} failed: {:?}", r.theorem, r.witness)
        })?;
        ensure(r.inputs_tested == 120, || {
            format!("{} tested {} vectors", r.theorem, r.inputs_tested)
        })?;
    }
    let took = within(LIMIT_SWEEP, started)?;
    let vacuous: Vec<_> = reports
        .iter()
        .filter(|r| r.antecedent_hits == 0)
        .map(|r| r.theorem.as_str())
        .collect();
    Ok(format!(
        "{} statements x 120 vectors, zero counterexamples in {took:?}; vacuous: {vacuous:?}",
        reports.len()
    ))
}

fn pitman_stanley() -> Outcome {
    let mut shapes = 0;
    for n in 2..=5usize {
        for k in 1..n {
            for a in 1..=6u32 {
                for b in 0..=6u32 {
                    for c in 0..=6u32 {
                        let mut delta = vec![a];
                        delta.extend(std::iter::repeat_n(b, n - k - 1));
                        delta.push(c);
                        delta.extend(std::iter::repeat_n(0, k - 1));
                        let u = UParkingVector::from_delta(&delta)
                            .map_err(|e| e.to_string())?
                            .u;
                        let got =
                            closed_forms::pitman_stanley_count(n, a.into(), b.into(), c.into(), k)
                                .map_err(|e| e.to_string())?;
                        let want = u_parking_count(&u);
                        ensure(got == BigUint::from(want), || {
                            format!("n={n} k={k} a={a} b={b} c={c}: {got} != {want}")
                        })?;
                        shapes += 1;
                    }
                }
            }
        }
    }
    let f = |n: u64, k: u64| closed_forms::catalan_triangle(n, k).map_err(|e| e.to_string());
    for n in 1..20u64 {
        ensure(f(n + 1, n + 1)? == f(n + 1, n)?, || {
            format!("diagonal fails at n={n}")
        })?;
        for k in 2..=n {
            ensure(f(n + 1, k)? == f(n + 1, k - 1)? + f(n, k)?, || {
                format!("recursion fails at ({n},{k})")
            })?;
        }
    }
    let capped = (1..=6usize).all(|n| {
        (0..=n).all(|k| {
            let u: Vec<u32> = (1..=n).map(|i| i.min(k + 1) as u32).collect();
            let direct = nondecreasing(u[n - 1], n)
                .iter()
                .filter(|x| x.iter().zip(&u).all(|(p, cap)| p <= cap))
                .count();
            f(n as u64, k as u64).ok() == Some(BigUint::from(direct))
        })
    });
    ensure(capped, || "triangle differs from direct count".into())?;
    Ok(format!(
        "{shapes} shapes match; triangle recursion holds for n <= 20"
    ))
}

fn converse_counterexample() -> Outcome {
    let (y, x) =
        theorems::converse_counterexample_minimal_invariance().map_err(|e| e.to_string())?;
    ensure(common::naive_invariant(y.as_slice(), x.as_slice()), || {
        "independent oracle disagrees".into()
    })?;
    Ok(format!(
        "{:?} invariant for {:?}",
        x.as_slice(),
        y.as_slice()
    ))
}

fn bound_suite() -> Outcome {
    let vectors = theorems::sweep_vectors(4, 3);
    for y in &vectors {
        let p = InvariantProfile::compute(y, &SearchOptions::exhaustive(u64::MAX))
            .map_err(|e| e.to_string())?;
        let n = y.n();
        let bound = closed_forms::max_nd_invariant_bound(n).map_err(|e| e.to_string())?;
        ensure(BigUint::from(p.nd_count()) <= bound, || {
            format!("y={:?}: {} > {bound}", y.as_slice(), p.nd_count())
        })?;
        let chi = p.characteristic;
        for x in &p.nd_invariants {
            let x = x.as_slice();
            let inside = x[..n - chi].iter().all(|&v| v == 1)
                && x[n - chi..].iter().all(|v| p.wset.binary_search(v).is_ok());
            ensure(inside, || {
                format!("y={:?}: {x:?} outside the product set", y.as_slice())
            })?;
        }
    }
    Ok(format!(
        "{} vectors within the size bound and product set",
        vectors.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked examples", worked_examples),
        ("constant-family counts", constant_family),
        ("almost-constant regular regimes", regular_almost_constant),
        ("irregular counts", irregular_counts),
        ("superdecreasing family", superdecreasing),
        ("published W(y) value", published_wset),
        ("theorem sweep", theorem_sweep),
        ("Pitman-Stanley and Catalan triangle", pitman_stanley),
        (
            "minimal-invariance converse counterexample",
            converse_counterexample,
        ),
        ("bound suite", bound_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
