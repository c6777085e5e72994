//! Randomized self-checks of the structural identities, run by `verify-all`.
//!
//! Each check draws `trials` random instances from its own seeded stream and
//! stops at the first failing instance, which is reported as a counterexample.

use centro_core::cauchy::{cauchy_check_jc, cauchy_is_centro, cauchy_is_skew, materialize, palindromize, CauchySpec};
use centro_core::eigen::{closed_form_dim2, reflect_pair, solve_eigen, SolverOptions};
use centro_core::inverse::{diagonal_left_inverse, diagonal_right_inverse, recover_order2_left_inverse, verify_inverse, Recovery, RecoveryOptions};
use centro_core::product::{product_parity, shao_product};
use centro_core::structure::{
    check_commutation, check_structure, check_via_j, decompose, hadamard_parity, random_structured_with,
    verify_poly_reflection, verify_row_sum_symmetry, Kind, Parity,
};
use centro_core::tensor::hadamard;
use centro_core::{DenseTensor, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::to_value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    /// Corrupts the decomposition check so the harness can be seen to fail.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Instances examined, including the failing one.
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Trial = fn(&mut ChaCha8Rng, &SuiteOptions) -> Result<(), Value>;

const CHECKS: [(&str, Trial); 10] = [
    ("structure-characterizations-agree", structure_routes),
    ("product-parity", product),
    ("hadamard-parity", hadamard_rule),
    ("decomposition", decomposition),
    ("row-sum-symmetry", row_sums),
    ("polynomial-reflection", poly_reflection),
    ("cauchy-structure-equivalences", cauchy),
    ("inverse-round-trips", inverses),
    ("closed-form-eigenpairs", closed_forms),
    ("eigenpair-reflection", eigen_reflection),
];

/// Runs every check. With `trials == 0` the report has no checks.
pub fn verify_all(opts: &SuiteOptions) -> Report {
    let checks: Vec<CheckResult> = if opts.trials == 0 {
        Vec::new()
    } else {
        CHECKS
            .iter()
            .enumerate()
            .map(|(i, &(name, trial))| run_check(name, trial, i as u64, opts))
            .collect()
    };
    Report {
        seed: opts.seed,
        trials: opts.trials,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn run_check(name: &'static str, trial: Trial, stream: u64, opts: &SuiteOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(stream);
    for t in 0..opts.trials {
        if let Err(counterexample) = trial(&mut rng, opts) {
            return CheckResult {
                name,
                passed: false,
                trials: t + 1,
                counterexample: Some(counterexample),
            };
        }
    }
    CheckResult {
        name,
        passed: true,
        trials: opts.trials,
        counterexample: None,
    }
}

fn parity(rng: &mut ChaCha8Rng) -> Parity {
    if rng.random_bool(0.5) {
        Parity::Centro
    } else {
        Parity::Skew
    }
}

fn kind(rng: &mut ChaCha8Rng) -> Kind {
    [Kind::Centro, Kind::Skew, Kind::General][rng.random_range(0..3)]
}

fn tensor(rng: &mut ChaCha8Rng, orders: std::ops::RangeInclusive<usize>, dims: std::ops::RangeInclusive<usize>, kind: Kind) -> DenseTensor {
    let (m, n) = (rng.random_range(orders), rng.random_range(dims));
    random_structured_with(rng, m, n, kind).expect("small shapes are valid")
}

fn failure(detail: impl Into<String>, data: Value) -> Value {
    json!({ "detail": detail.into(), "data": data })
}

fn core_failure(e: centro_core::Error, data: Value) -> Value {
    failure(e.to_string(), data)
}

fn structure_routes(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let k = kind(rng);
    let a = tensor(rng, 2..=4, 2..=5, k);
    let direct = check_structure(&a, 1e-12);
    let via_j = check_via_j(&a, 1e-12).map_err(|e| core_failure(e, to_value(&a)))?;
    let commute = check_commutation(&a, 1e-12).map_err(|e| core_failure(e, to_value(&a)))?;
    if direct.verdict != via_j.verdict || direct.verdict != commute.verdict {
        return Err(failure(
            "structure verdicts disagree",
            json!({ "tensor": to_value(&a), "direct": to_value(&direct), "via_j": to_value(&via_j), "commutation": to_value(&commute) }),
        ));
    }
    Ok(())
}

fn product(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let (pa, pb) = (parity(rng), parity(rng));
    let (m, k, n) = (rng.random_range(2..=3), rng.random_range(1..=3), rng.random_range(2..=3));
    let a = random_structured_with(rng, m, n, pa.into()).expect("valid shape");
    let b = random_structured_with(rng, k, n, pb.into()).expect("valid shape");
    let c = shao_product(&a, &b).map_err(|e| core_failure(e, json!({ "left": to_value(&a), "right": to_value(&b) })))?;
    let expected = product_parity(pa, pb, a.order());
    let report = check_structure(&c, 1e-10);
    if !report.verdict.satisfies(expected) {
        return Err(failure(
            format!("product of {pa:?} and {pb:?} is not {expected:?}"),
            json!({ "left": to_value(&a), "right": to_value(&b), "report": to_value(&report) }),
        ));
    }
    Ok(())
}

fn hadamard_rule(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let (pa, pb) = (parity(rng), parity(rng));
    let (m, n) = (rng.random_range(1..=4), rng.random_range(2..=5));
    let a = random_structured_with(rng, m, n, pa.into()).expect("valid shape");
    let b = random_structured_with(rng, m, n, pb.into()).expect("valid shape");
    let c = hadamard(&a, &b).expect("same shape");
    let expected = hadamard_parity(pa, pb);
    let report = check_structure(&c, 1e-12);
    if !report.verdict.satisfies(expected) {
        return Err(failure(
            format!("Hadamard product of {pa:?} and {pb:?} is not {expected:?}"),
            json!({ "left": to_value(&a), "right": to_value(&b), "report": to_value(&report) }),
        ));
    }
    Ok(())
}

fn decomposition(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<(), Value> {
    let k = kind(rng);
    let a = tensor(rng, 1..=4, 2..=5, k);
    let d = decompose(&a);
    let rebuilt = if opts.inject_fault {
        d.centro.sub(&d.skew).expect("same shape")
    } else {
        d.reconstruct()
    };
    let error = rebuilt.max_abs_diff(&a).expect("same shape").0;
    let centro = check_structure(&d.centro, 1e-13);
    let skew = check_structure(&d.skew, 1e-13);
    let bound = 1e-14 * a.scale();
    if error > bound || !centro.verdict.is_centro() || !skew.verdict.is_skew() {
        return Err(failure(
            format!("decomposition fails: reconstruction error {error:e} (bound {bound:e})"),
            json!({ "tensor": to_value(&a), "centro_report": to_value(&centro), "skew_report": to_value(&skew) }),
        ));
    }
    Ok(())
}

fn row_sums(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let p = parity(rng);
    let a = tensor(rng, 1..=4, 2..=6, p.into());
    let check = verify_row_sum_symmetry(&a, p, 1e-12);
    if !check.holds {
        return Err(failure(
            format!("row sums of a {p:?} tensor are not mirrored at row {:?}", check.witness),
            json!({ "tensor": to_value(&a), "row_sums": to_value(&check.row_sums) }),
        ));
    }
    Ok(())
}

fn poly_reflection(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let p = parity(rng);
    let a = tensor(rng, 1..=4, 2..=5, p.into());
    let seed = rng.random();
    match verify_poly_reflection(&a, 5, seed, 1e-10) {
        Ok(true) => Ok(()),
        Ok(false) => Err(failure(
            format!("f(Jx) differs from {}f(x)", if p == Parity::Centro { "" } else { "-" }),
            json!({ "tensor": to_value(&a), "vector_seed": seed }),
        )),
        Err(e) => Err(core_failure(e, to_value(&a))),
    }
}

fn cauchy(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let (m, n) = (rng.random_range(1..=4), rng.random_range(2..=5));
    let base: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..=3.0)).collect();
    let c = if rng.random_bool(0.5) { palindromize(&base) } else { base };
    let spec = CauchySpec::new(m, Vector::new(c).expect("finite")).expect("valid shape");
    let t = materialize(&spec).map_err(|e| core_failure(e, to_value(&spec)))?;
    let vector = cauchy_is_centro(&spec, 1e-10);
    let report = check_structure(&t, 1e-10);
    let jc = cauchy_check_jc(&spec, 1e-10).map_err(|e| core_failure(e, to_value(&spec)))?;
    let skew_ok = if n % 2 == 1 {
        !cauchy_is_skew(&spec, 1e-10) && !report.verdict.is_skew()
    } else {
        cauchy_is_skew(&spec, 1e-10) == report.verdict.is_skew()
    };
    if vector != report.verdict.is_centro() || vector != jc || !skew_ok {
        return Err(failure(
            "Cauchy structure tests disagree",
            json!({ "spec": to_value(&spec), "vector_centro": vector, "jc": jc, "report": to_value(&report) }),
        ));
    }
    Ok(())
}

fn inverses(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let (m, k, n) = (rng.random_range(2..=4), rng.random_range(2..=3), rng.random_range(2..=4));
    let half: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..=4.0)).collect();
    let a = DenseTensor::diagonal(m, &palindromize(&half)).expect("valid shape");
    for result in [diagonal_left_inverse(&a, k), diagonal_right_inverse(&a, k)] {
        let r = result.map_err(|e| core_failure(e, to_value(&a)))?;
        if r.residual > 1e-13 || !r.centro_verdict {
            return Err(failure("diagonal inverse does not round-trip", json!({ "tensor": to_value(&a), "result": to_value(&r) })));
        }
    }
    // A = M I has left inverse M^{-1}, which must be centrosymmetric.
    let planted = random_structured_with(rng, 2, n, Kind::Centro).expect("valid shape");
    let a = shao_product(&planted, &DenseTensor::identity(m, n).expect("valid shape")).expect("small product");
    match recover_order2_left_inverse(&a, &RecoveryOptions::default()) {
        Ok(Recovery::Found(r)) => {
            let residual = verify_inverse(&r.inverse, &a).map_err(|e| core_failure(e, to_value(&a)))?;
            let back = verify_inverse(&r.inverse, &planted).map_err(|e| core_failure(e, to_value(&a)))?;
            if !r.centro_verdict || residual > 1e-10 * a.scale() || back > 1e-8 {
                return Err(failure("recovered inverse is wrong", json!({ "tensor": to_value(&a), "result": to_value(&r) })));
            }
            Ok(())
        }
        // A badly conditioned draw; nothing to check.
        Ok(Recovery::NoInverse { .. }) => Ok(()),
        Err(e) => Err(core_failure(e, to_value(&a))),
    }
}

fn closed_forms(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let a = tensor(rng, 2..=5, 2..=2, Kind::Centro);
    let pairs = closed_form_dim2(&a).map_err(|e| core_failure(e, to_value(&a)))?;
    if pairs.iter().any(|p| p.residual > 1e-12 * a.scale()) {
        return Err(failure("closed-form eigenpair residual too large", json!({ "tensor": to_value(&a), "pairs": to_value(&pairs) })));
    }
    Ok(())
}

fn eigen_reflection(rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<(), Value> {
    let p = parity(rng);
    let a = tensor(rng, 2..=3, 2..=3, p.into());
    let opts = SolverOptions {
        starts: 10,
        seed: rng.random(),
        ..SolverOptions::default()
    };
    let set = solve_eigen(&a, &opts).map_err(|e| core_failure(e, to_value(&a)))?;
    for pair in set.pairs.iter().filter(|q| p == Parity::Centro || q.lambda.abs() > 1e-8) {
        reflect_pair(&a, pair, opts.tol).map_err(|e| core_failure(e, json!({ "tensor": to_value(&a), "pair": to_value(pair) })))?;
    }
    Ok(())
}
