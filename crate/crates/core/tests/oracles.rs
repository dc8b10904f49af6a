use num_bigint::BigInt;
use proptest::prelude::*;
use quadwalk::closedforms::{diagonal_count, diagonal_total, kreweras_full_count, square_count, square_total};
use quadwalk::enumerator::{count_walks, stream_aggregate, Aggregate};
use quadwalk::stepsets::{model_spec, Model, StepSet};
use quadwalk::verify::{verify_model, VerifyReport};

const SMALL_STEPS: [(i32, i32); 8] = [(0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1)];

/// Walks of length `n` staying in the quadrant, by brute-force recursion.
fn brute(steps: &[(i32, i32)], (i, j): (i32, i32), n: usize, end: (i32, i32)) -> u64 {
    if i < 0 || j < 0 {
        return 0;
    }
    if n == 0 {
        return u64::from((i, j) == end);
    }
    steps.iter().map(|&(a, b)| brute(steps, (i + a, j + b), n - 1, end)).sum()
}

fn step_subset() -> impl Strategy<Value = Vec<(i32, i32)>> {
    (1u8..=255).prop_map(|mask| (0..8).filter(|k| mask & (1 << k) != 0).map(|k| SMALL_STEPS[k]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn table_matches_brute_force(steps in step_subset(), start in (0i32..3, 0i32..3), end in (0i32..4, 0i32..4), n in 0usize..7) {
        let table = count_walks(&StepSet::new(steps.clone()).unwrap(), start, n).unwrap();
        prop_assert_eq!(table.count(n, end.0, end.1), BigInt::from(brute(&steps, start, n, end)));
    }

    #[test]
    fn streamed_totals_match_table(steps in step_subset(), n in 0usize..12) {
        let set = StepSet::new(steps).unwrap();
        let table = count_walks(&set, (0, 0), n).unwrap();
        for kind in [Aggregate::Free, Aggregate::XAxis, Aggregate::Origin] {
            prop_assert_eq!(stream_aggregate(&set, (0, 0), n, kind).unwrap(), table.aggregate(kind).unwrap());
        }
    }

    #[test]
    fn endpoint_formulas_sum_to_totals(n in 0i64..40) {
        let sum = |f: fn(i64, i64, i64) -> BigInt| -> BigInt {
            (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).map(|(i, j)| f(i, j, n)).sum()
        };
        prop_assert_eq!(sum(square_count), square_total(n));
        prop_assert_eq!(sum(diagonal_count), diagonal_total(n));
    }

    #[test]
    fn kreweras_counts_are_symmetric(p in 0i64..8, q in 0i64..8, extra in 0i64..6) {
        let r = p.max(q) + extra;
        let (a, b) = kreweras_full_count(p, q, r).unwrap();
        let (c, _) = kreweras_full_count(q, p, r).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, c);
    }
}

#[test]
fn small_kreweras_values() {
    let spec = model_spec(Model::Kreweras);
    let origin = count_walks(&spec.steps, spec.start, 12).unwrap().aggregate(Aggregate::Origin).unwrap();
    let expect = [1, 0, 0, 2, 0, 0, 16, 0, 0, 192, 0, 0, 2816];
    assert_eq!(origin, expect.map(BigInt::from).to_vec());
}

#[test]
fn reports_round_trip_through_json() {
    for model in Model::ALL {
        let report = verify_model(model, 10).unwrap();
        assert!(report.passed, "{model}");
        let text = serde_json::to_string(&report).unwrap();
        let back: VerifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
