//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//! Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use quadwalk::asymptotics::{compare_to_paper, Outcome};
use quadwalk::closedforms::{
    diagonal_count, diagonal_total, kreweras_axis_count, kreweras_axis_count_by_length, kreweras_full_count,
    kreweras_parameter, quadratic_equation_residual, solve_kreweras, square_count, square_kernel_expansions,
    square_shuffle_total, square_total,
};
use quadwalk::enumerator::{count_walks, Aggregate, WalkTable};
use quadwalk::kernel::{
    r_series, symmetric_root_suite, verify_functional_equation, verify_kernel_identities, y_root_vanishing,
    IdentityCheck, Kernel,
};
use quadwalk::numerics::int;
use quadwalk::series::{TSeries, Vars};
use quadwalk::stepsets::{model_spec, Model, Sections};

type Verdict = Result<String, String>;

fn table(model: Model, n: usize) -> WalkTable {
    let spec = model_spec(model);
    count_walks(&spec.steps, spec.start, n).expect("catalog model enumerates")
}

fn first_mismatches(bad: &[String]) -> String {
    format!("{} mismatches, first: {}", bad.len(), bad.iter().take(3).cloned().collect::<Vec<_>>().join("; "))
}

fn exact(bad: Vec<String>, ok: String) -> Verdict {
    if bad.is_empty() {
        Ok(ok)
    } else {
        Err(first_mismatches(&bad))
    }
}

fn zero_through(name: &str, residual: &TSeries, order: i32) -> Result<(), String> {
    if !residual.is_zero() {
        return Err(format!("{name}: residual nonzero at t^{}", residual.valuation()));
    }
    if residual.order() < order {
        return Err(format!("{name}: residual known only through t^{}", residual.order()));
    }
    Ok(())
}

fn criterion_1() -> Verdict {
    let t = table(Model::Kreweras, 27);
    let mut bad = Vec::new();
    let mut pairs = 0;
    for i in 0..=13i64 {
        for n in 0..=((27 - 2 * i) / 3) {
            pairs += 1;
            let (f, dp) = (kreweras_axis_count(i, n), t.count((3 * n + 2 * i) as usize, i as i32, 0));
            if f != dp {
                bad.push(format!("(i,n) = ({i},{n}): {f} vs {dp}"));
            }
        }
    }
    exact(bad, format!("{pairs} pairs (i,n) with 3n+2i <= 27"))
}

fn lattice(model: Model, formula: fn(i64, i64, i64) -> BigInt, bad: &mut Vec<String>) {
    let t = table(model, 20);
    for n in 0..=20usize {
        for i in 0..=n as i32 + 1 {
            for j in 0..=n as i32 + 1 {
                let (dp, f) = (t.count(n, i, j), formula(i.into(), j.into(), n as i64));
                if dp != f {
                    bad.push(format!("{model} ({i},{j}) at n = {n}: {dp} vs {f}"));
                }
            }
        }
    }
}

fn criterion_2() -> Verdict {
    let mut bad = Vec::new();
    lattice(Model::Square, square_count, &mut bad);
    lattice(Model::Diagonal, diagonal_count, &mut bad);
    for (model, formula) in [(Model::Square, square_total as fn(i64) -> BigInt), (Model::Diagonal, diagonal_total)] {
        let free = table(model, 30).aggregate(Aggregate::Free).unwrap();
        for (n, a) in free.iter().enumerate() {
            if formula(n as i64) != *a {
                bad.push(format!("{model} total at n = {n}: {a}"));
            }
        }
    }
    exact(bad, "all endpoints for n <= 20, totals for n <= 30".into())
}

fn criterion_3() -> Verdict {
    let bad = (0..=30).filter(|&n| square_shuffle_total(n) != square_total(n)).map(|n| format!("N = {n}")).collect();
    exact(bad, "N = 0..=30".into())
}

fn criterion_4() -> Verdict {
    let x = kreweras_parameter(50).map_err(|e| e.to_string())?;
    let t = TSeries::t(Vars::X, 51);
    let rhs = &t * &(&TSeries::one(Vars::X, 50).scale(&int(2)) + &x.pow(3).map_err(|e| e.to_string())?);
    zero_through("X - t(2 + X^3)", &(&x - &rhs), 50)?;

    let dp = Sections::of(&table(Model::Kreweras, 24).series());
    let sol = solve_kreweras(24).map_err(|e| e.to_string())?;
    zero_through("Q(0,0)", &(&sol.q00 - &dp.q00), 24)?;

    let mut bad = Vec::new();
    for i in 0..=12i32 {
        for m in 0..=24 - 2 * i {
            if m % 3 != 0 {
                continue;
            }
            let len = m + 2 * i;
            let dp_c = dp.qx0.coeff(len, (i, 0)).unwrap();
            let series_c = sol.qx0.coeff(len, (i, 0)).unwrap();
            let f = kreweras_axis_count_by_length(i.into(), len.into());
            if dp_c != series_c || *dp_c.numer() != f || !dp_c.is_integer() {
                bad.push(format!("[x^{i} t^{len}]: dp {dp_c}, series {series_c}, formula {f}"));
            }
        }
    }
    exact(bad, "X through t^50, Q(0,0) through t^24, [x^i]Q(x,0) for 3n+2i <= 24".into())
}

fn criterion_5() -> Verdict {
    let dp = Sections::of(&table(Model::Kreweras, 20).series());
    zero_through("quadratic equation", &quadratic_equation_residual(&dp.qx0, &dp.q00), 20)?;
    Ok("zero through t^20".into())
}

fn criterion_6() -> Verdict {
    for model in Model::ALL {
        let residual = verify_functional_equation(&model_spec(model), &table(model, 20));
        zero_through(model.name(), &residual, 20)?;
    }
    Ok("square, diagonal, kreweras, knight zero through t^20".into())
}

fn check<'a>(checks: &'a [IdentityCheck], name: &str) -> Result<&'a IdentityCheck, String> {
    let c = checks.iter().find(|c| c.name == name).ok_or_else(|| format!("{name} missing"))?;
    if !c.passed {
        return Err(format!("{name} failed: {}", c.note.clone().unwrap_or_default()));
    }
    Ok(c)
}

fn at_least(c: &IdentityCheck, order: i32) -> Result<i32, String> {
    match c.order {
        Some(n) if n >= order => Ok(n),
        other => Err(format!("{} checked only to {other:?}", c.name)),
    }
}

fn criterion_7() -> Verdict {
    let n = 16;
    let kre = verify_kernel_identities(&model_spec(Model::Kreweras), &table(Model::Kreweras, n))
        .map_err(|e| e.to_string())?;
    let sq = verify_kernel_identities(&model_spec(Model::Square), &table(Model::Square, n)).map_err(|e| e.to_string())?;
    let kre_root = at_least(check(&kre, "kernel_root_y0")?, 14)?;
    let sq_root = at_least(check(&sq, "kernel_root_y0")?, 14)?;
    let mirror = at_least(check(&sq, "mirror_difference")?, 14)?;
    let product = check(&kre, "product_identity")?;
    let positive = check(&kre, "product_positive_part")?;
    let (Some(p), Some(q)) = (product.order, positive.order) else {
        return Err("product identity had nothing checkable".into());
    };
    Ok(format!(
        "root identity through t^{kre_root} (kreweras), t^{sq_root} (square); mirror difference t^{mirror}; \
         product t^{p}, positive part t^{q}"
    ))
}

fn criterion_8() -> Verdict {
    let kernel = Kernel::new(&model_spec(Model::Kreweras).steps);
    let checks = symmetric_root_suite(&kernel, 20, 4, 5, 12, 2024).map_err(|e| e.to_string())?;
    let bad: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {c:?}", c.poly)).collect();
    if checks.len() != 20 {
        return Err(format!("{} polynomials checked", checks.len()));
    }
    exact(bad, "20 polynomials, degree <= 4, coefficients in [-5,5], through t^12".into())
}

fn criterion_9() -> Verdict {
    let t = table(Model::Kreweras, 15);
    let mut bad = Vec::new();
    let mut triples = 0;
    for m in 0..=15i64 {
        for p in 0..=m {
            for q in 0..=m - p {
                let r = m - p - q;
                if r < p || r < q {
                    continue;
                }
                triples += 1;
                let (a, b) = kreweras_full_count(p, q, r).map_err(|e| e.to_string())?;
                let dp = t.count(m as usize, (r - p) as i32, (r - q) as i32);
                if a != b || a != dp {
                    bad.push(format!("(p,q,r) = ({p},{q},{r}): {a}, {b} vs {dp}"));
                }
            }
        }
    }
    exact(bad, format!("{triples} triples with p+q+r <= 15"))
}

fn criterion_10() -> Verdict {
    let (y0_sum, r_sum) = square_kernel_expansions(16);
    let y0 = y_root_vanishing(&Kernel::new(&model_spec(Model::Square).steps), 16).map_err(|e| e.to_string())?;
    zero_through("Y0", &(&y0_sum - &y0), 16)?;
    let r = r_series(&table(Model::Square, 16)).truncate(16);
    zero_through("R(x)", &(&r_sum - &r), 16)?;
    Ok("Y0 and R(x) through t^16".into())
}

fn criterion_11() -> Verdict {
    let mut lines = Vec::new();
    for model in [Model::Square, Model::Diagonal, Model::Kreweras] {
        for kind in [Aggregate::Free, Aggregate::XAxis] {
            let c = compare_to_paper(model, kind, 2000).map_err(|e| e.to_string())?;
            let Outcome::Fitted { fit, mu_rel_error, alpha_error, .. } = &c.outcome else {
                return Err(format!("{model} {kind}: no fit"));
            };
            let msg = format!("{model} {kind}: mu {:.6} alpha {:.4}", fit.mu, fit.alpha);
            if !c.within(0.01, 0.15) {
                return Err(format!("{msg} (errors {mu_rel_error:.6}, {alpha_error:.6})"));
            }
            lines.push(msg);
        }
    }
    let knight = compare_to_paper(Model::Knight, Aggregate::Free, 200).map_err(|e| e.to_string())?;
    let Outcome::Fitted { fit, .. } = &knight.outcome else {
        return Err("knight free: no fit".into());
    };
    if !knight.within(0.02, f64::INFINITY) {
        return Err(format!("knight free mu {:.6}", fit.mu));
    }
    lines.push(format!("knight free: mu {:.6}", fit.mu));

    // Each step changes i - j by 3 and i + j by 1, so (i,j) is reached from
    // (1,1) only when i = j mod 3, and then only at length i + j - 2.
    let t = table(Model::Knight, 22);
    let mut bad = Vec::new();
    let (mut reachable, mut unreachable) = (0, 0);
    for s in 0..=22i32 {
        for i in 0..=s {
            let j = s - i;
            let nonzero: Vec<usize> = (0..=22).filter(|&n| !t.count(n, i, j).is_zero()).collect();
            let expected: Vec<usize> =
                if s >= 2 && (i - j).rem_euclid(3) == 0 { vec![(s - 2) as usize] } else { vec![] };
            if expected.is_empty() {
                unreachable += 1;
            } else {
                reachable += 1;
            }
            if nonzero != expected {
                bad.push(format!("({i},{j}) nonzero at {nonzero:?}"));
            }
        }
    }
    lines.push(format!(
        "knight endpoints i+j <= 22: {reachable} with one nonzero term at n = i+j-2, {unreachable} never reached"
    ));
    exact(bad, lines.join("; "))
}

fn criterion_12() -> Verdict {
    let mut bad = Vec::new();
    for (model, expected) in [(Model::Square, true), (Model::Diagonal, true), (Model::Kreweras, false), (Model::Knight, false)]
    {
        let got = model_spec(model).steps.analyze().holonomy_sufficient;
        if got != expected {
            bad.push(format!("{model}: {got}"));
        }
    }
    exact(bad, "true for square and diagonal, false for kreweras and knight".into())
}

struct Criterion {
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { title: "Kreweras axis counts", limit: secs(10), run: criterion_1 },
        Criterion { title: "square and diagonal counts and totals", limit: secs(10), run: criterion_2 },
        Criterion { title: "shuffle total reduction", limit: None, run: criterion_3 },
        Criterion { title: "Kreweras parameter solution", limit: None, run: criterion_4 },
        Criterion { title: "quadratic equation residual", limit: None, run: criterion_5 },
        Criterion { title: "functional equation residuals", limit: None, run: criterion_6 },
        Criterion { title: "kernel identities", limit: None, run: criterion_7 },
        Criterion { title: "symmetric functions of the roots", limit: None, run: criterion_8 },
        Criterion { title: "Kreweras double sums", limit: secs(30), run: criterion_9 },
        Criterion { title: "square kernel expansions", limit: None, run: criterion_10 },
        Criterion { title: "growth estimates", limit: None, run: criterion_11 },
        Criterion { title: "holonomy criterion", limit: None, run: criterion_12 },
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut result = (c.run)();
        let elapsed = t0.elapsed();
        if let (Ok(_), Some(limit)) = (&result, c.limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:.0?}"));
            }
        }
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += result.is_err() as usize;
        println!("{status} criterion {:>2}: {} [{elapsed:.2?}] {detail}", k + 1, c.title);
    }
    let total = started.elapsed();
    println!("{} of {} criteria passed in {total:.2?}", criteria.len() - failed, criteria.len());
    if failed == 0 && total < Duration::from_secs(180) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
