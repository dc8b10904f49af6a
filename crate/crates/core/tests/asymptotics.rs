use num_bigint::BigInt;
use num_traits::Zero;
use quadwalk::asymptotics::{compare_to_paper, fit, Outcome, Real};
use quadwalk::enumerator::Aggregate;
use quadwalk::numerics::{rat, rat_to_f64, BigRat};
use quadwalk::stepsets::Model;

/// `floor(2^256 mu^n n^alpha)` for `n >= 1`.
fn synthetic(mu: i64, alpha: &BigRat, max_n: usize) -> Vec<BigInt> {
    let scale = Real::from_int(&(BigInt::from(1) << 256u32));
    let mut out = vec![BigInt::zero()];
    let mut power = BigInt::from(1);
    for n in 1..=max_n {
        power *= mu;
        let p = Real::from_i64(n as i64).pow_rat(alpha).unwrap();
        out.push(&power * (&p * &scale).floor());
    }
    out
}

#[test]
fn synthetic_sequences_are_recovered() {
    for mu in [2, 3, 4] {
        for alpha in [rat(-3, 1), rat(-2, 1), rat(-1, 1), rat(-3, 4)] {
            let f = fit(&synthetic(mu, &alpha, 2000), true).unwrap();
            let a = rat_to_f64(&alpha);
            assert!((f.mu.to_f64() / mu as f64 - 1.0).abs() < 0.01, "mu {mu} alpha {alpha}: {}", f.mu);
            assert!((f.alpha.to_f64() - a).abs() < 0.1, "mu {mu} alpha {alpha}: {}", f.alpha);
        }
    }
}

#[test]
fn catalog_rows_at_length_2000() {
    for model in [Model::Square, Model::Diagonal, Model::Kreweras] {
        for kind in [Aggregate::Free, Aggregate::XAxis] {
            let c = compare_to_paper(model, kind, 2000).unwrap();
            assert!(c.within(0.01, 0.15), "{model:?} {kind:?}: {:?}", c.outcome);
            match &c.outcome {
                Outcome::Fitted { improving, windows, .. } => {
                    assert!(*improving, "{model:?} {kind:?}: {windows:?}")
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}

#[test]
fn knight_rows() {
    let free = compare_to_paper(Model::Knight, Aggregate::Free, 200).unwrap();
    assert!(free.within(0.02, f64::INFINITY), "{:?}", free.outcome);
    for i in 0..=22 {
        for j in 0..=22 - i {
            let c = compare_to_paper(Model::Knight, Aggregate::Endpoint(i, j), 24).unwrap();
            assert!(c.within(0.0, 0.0), "({i},{j})");
        }
    }
}
