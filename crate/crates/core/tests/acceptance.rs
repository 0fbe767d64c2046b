//! Acceptance criteria, one line per criterion. Every comparison is exact;
//! the only tolerances are the wall-clock budgets of criteria 1 and 2.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use dualbent::constructions::Family;
use dualbent::pds::{
    check_prediction, gaussian_period, gaussian_period_semiprimitive, gaussian_period_semiprimitive_with,
    params_coset_union, predictions, preimage_sizes, semiprimitive_check, PdsError,
};
use dualbent::spectral::{dual_bent_certificate, theorem5_check, walsh_full, walsh_naive, Theorem5Report};
use dualbent::{FieldDesc, FieldElem, Limits, PAryFunction, Space};

const FORMULA_BUDGET: Duration = Duration::from_secs(1);
const DESK_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn run(index: u32, name: &str, body: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (status, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {index} [{name}]: {status} ({detail}; {:.2}s)", elapsed.as_secs_f64());
    result.is_ok()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[allow(clippy::type_complexity)]
const QUADRUPLES: [((u32, u32, u32, u64, u64, u32, i8), [&str; 4]); 8] = [
    ((5, 2, 16, 12, 1, 0, -1), ["152587890625", "73242375000", "35156421875", "35156437500"]),
    ((5, 2, 16, 12, 1, 1, -1), ["152587890625", "79345515624", "41259578123", "41259562500"]),
    ((7, 2, 8, 16, 1, 0, 1), ["5764801", "1881600", "614705", "613872"]),
    ((7, 2, 8, 16, 1, 1, 1), ["5764801", "2001600", "695455", "694722"]),
    ((5, 2, 16, 8, 1, 0, -1), ["152587890625", "48828250000", "15624984375", "15625125000"]),
    ((5, 2, 16, 8, 2, 0, -1), ["152587890625", "97656500000", "62500359375", "62500250000"]),
    ((3, 4, 16, 16, 1, 0, 1), ["43046721", "8501760", "1682289", "1678320"]),
    ((3, 4, 16, 16, 2, 1, 1), ["43046721", "17541440", "7148815", "7147602"]),
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for ((p, s, n, h, m1, m0, eps), expected) in QUADRUPLES {
        let got = params_coset_union(n, s, p, h, m1, m0, eps).map_err(|e| e.to_string())?;
        let got = [got.v, got.k, got.lambda, got.mu].map(|x| x.to_string());
        ensure(got == expected, || format!("p={p} s={s} n={n} h={h} m1={m1} m0={m0}: got {got:?}, expected {expected:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < FORMULA_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} quadruples exact", QUADRUPLES.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    let instances = common::ternary_desk();
    let (mut confirmed, mut sets, mut skipped) = (0usize, 0usize, Vec::new());
    let mut per_family: HashMap<Family, usize> = HashMap::new();
    let mut failures = Vec::new();
    for inst in &instances {
        let cert = dual_bent_certificate(&inst.f, &inst.fstar, &limits).map_err(|e| format!("{}: {e}", inst.label))?;
        let preds = match predictions(&inst.f, &cert) {
            Ok(p) => p,
            Err(PdsError::HypothesisViolation(why)) => {
                skipped.push(format!("{} ({why})", inst.label));
                continue;
            }
            Err(e) => return Err(format!("{}: {e}", inst.label)),
        };
        let mut cache: HashMap<BTreeSet<FieldElem>, _> = HashMap::new();
        for pred in &preds {
            if !cache.contains_key(&pred.values) {
                let outcome = check_prediction(&inst.f, pred, &limits).map_err(|e| format!("{}: {e}", inst.label))?;
                cache.insert(pred.values.clone(), outcome);
                sets += 1;
            }
            let outcome = &cache[&pred.values];
            if outcome.confirmed(&pred.params) {
                confirmed += 1;
                *per_family.entry(inst.family).or_default() += 1;
            } else {
                failures.push(format!("{} {:?} {}: predicted {:?}, got {:?}", inst.label, pred.theorem, pred.description, pred.params.as_tuple(), outcome));
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} failed, first: {}", failures.len(), failures[0]))?;
    let missing: Vec<Family> = Family::ALL.into_iter().filter(|f| !per_family.contains_key(f)).collect();
    ensure(missing.is_empty(), || format!("no confirmed prediction for {missing:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < DESK_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{confirmed} predictions over {sets} distinct sets confirmed by both verifiers on {} instances; {} instances outside the hypotheses",
        instances.len() - skipped.len(),
        skipped.len()
    ))
}

fn criterion_3() -> Outcome {
    let limits = Limits::default();
    let mut instances = common::ternary_desk();
    for p in [5, 7] {
        instances.extend(common::prime_codomain(p));
    }
    for inst in &instances {
        let cert = dual_bent_certificate(&inst.f, &inst.fstar, &limits).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure(cert.sigma == inst.sigma_claim, || format!("{}: sigma differs", inst.label))?;
        ensure(cert.epsilons == inst.epsilon_claim, || {
            format!("{}: signs {:?}, claimed {:?}", inst.label, cert.epsilons, inst.epsilon_claim)
        })?;
    }
    let families = common::families_covered(&instances);
    ensure(instances.len() >= 10 && families.len() == Family::ALL.len(), || {
        format!("{} instances over {:?}", instances.len(), families)
    })?;
    Ok(format!("{} instances across all {} families", instances.len(), families.len()))
}

fn parseval_holds(f: &PAryFunction, limits: &Limits) -> Result<(), String> {
    let w = walsh_full(f, limits).map_err(|e| e.to_string())?;
    let expected = BigInt::from(f.p()).pow(2 * f.domain().dim());
    ensure(w.parseval_sum() == Some(expected), || "Parseval sum differs from p^{2n}".into())
}

fn random_spaces() -> impl Strategy<Value = Space> {
    prop_oneof![
        (1u32..=6).prop_map(|n| Space::pure(3, n).unwrap()),
        (1u32..=4).prop_map(|n| Space::pure(5, n).unwrap()),
        (1u32..=3).prop_map(|n| Space::pure(7, n).unwrap()),
        (1u32..=3, 1u32..=3).prop_map(|(a, b)| {
            Space::new(vec![FieldDesc::new(3, a).unwrap(), FieldDesc::new(3, b).unwrap()]).unwrap()
        }),
        Just(Space::new(vec![FieldDesc::new(5, 2).unwrap(), FieldDesc::prime(5).unwrap()]).unwrap()),
    ]
}

fn random_function() -> impl Strategy<Value = PAryFunction> {
    random_spaces().prop_flat_map(|space| {
        let (p, len) = (space.p(), space.order() as usize);
        proptest::collection::vec(0..p, len).prop_map(move |table| PAryFunction::new(space.clone(), table).unwrap())
    })
}

fn criterion_4() -> Outcome {
    let limits = Limits::default();
    let mut runner = TestRunner::new(Config { cases: 48, failure_persistence: None, ..Config::default() });
    runner
        .run(&random_function(), |f| {
            let fast = walsh_full(&f, &limits).unwrap();
            let naive = walsh_naive(&f, &limits).unwrap();
            prop_assert_eq!(fast.values().collect::<Vec<_>>(), naive.values().collect::<Vec<_>>());
            prop_assert!(parseval_holds(&f, &limits).is_ok());
            Ok(())
        })
        .map_err(|e| format!("random functions: {e}"))?;

    let mut instances = common::ternary_desk();
    for p in [5, 7] {
        instances.extend(common::prime_codomain(p));
    }
    let (mut spectra, mut tablewise, mut bent) = (0usize, 0usize, 0usize);
    for inst in &instances {
        for c in inst.f.codomain().nonzero_elements() {
            let f = inst.f.component(c).map_err(|e| e.to_string())?;
            parseval_holds(&f, &limits).map_err(|e| format!("{} c={c}: {e}", inst.label))?;
            spectra += 1;
            if f.domain().order() <= 729 {
                let fast = walsh_full(&f, &limits).unwrap();
                let naive = walsh_naive(&f, &limits).unwrap();
                ensure(fast.values().eq(naive.values()), || format!("{} c={c}: fast and naive differ", inst.label))?;
                tablewise += 1;
            }
        }
        // W_{cf}(a) = phi_c(W_f(c^{-1} a)) for the first component.
        let f = inst.f.component(FieldElem::ONE).unwrap();
        let p = f.p();
        let space = f.domain().clone();
        let w = walsh_full(&f, &limits).unwrap();
        for c in 1..p {
            let wc = walsh_full(&f.scale(c), &limits).unwrap();
            let c_inv = (1..p).find(|d| d * c % p == 1).unwrap();
            for a in space.points() {
                let rhs = w.value(space.scalar_mul(c_inv, a)).automorphism(c).unwrap();
                ensure(wc.value(a) == rhs, || format!("{} c={c} a={}: automorphism identity fails", inst.label, a.0))?;
            }
        }
        bent += 1;
    }
    ensure(bent >= 5, || format!("only {bent} bent instances"))?;
    Ok(format!(
        "48 random functions plus {spectra} component spectra satisfy Parseval; {tablewise} fast/naive tables equal; automorphism identity on {bent} bent functions"
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0usize;
    let mut triples = Vec::new();
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79] {
        for s in 1u32.. {
            let q = (p as u64).pow(s);
            if q > 81 {
                break;
            }
            for t in 2..q {
                if (q - 1) % t != 0 || !semiprimitive_check(p, s, t).ok {
                    continue;
                }
                triples.push((p, s, t));
                let k = FieldDesc::new(p, s).unwrap();
                let w = k.primitive_element();
                let other = (2..q - 1)
                    .find(|&e| num_integer::gcd(e, q - 1) == 1)
                    .map(|e| k.pow(w, e))
                    .unwrap_or(w);
                for a in k.nonzero_elements() {
                    let direct = gaussian_period(p, s, t, a).map_err(|e| e.to_string())?;
                    let closed = gaussian_period_semiprimitive(p, s, t, a).map_err(|e| e.to_string())?;
                    let closed_other = gaussian_period_semiprimitive_with(p, s, t, a, other).map_err(|e| e.to_string())?;
                    ensure(direct == closed && closed == closed_other, || {
                        format!("p={p} s={s} t={t} a={a}: direct {direct}, closed {closed}, other {closed_other}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    ensure(!triples.is_empty(), || "no semiprimitive triples".into())?;
    Ok(format!("{} semiprimitive triples, {checked} values, two primitive elements each", triples.len()))
}

fn criterion_6() -> Outcome {
    let limits = Limits::default();
    let (mut confirmed, mut not_applicable) = (0usize, 0usize);
    for p in [3u32, 5, 7] {
        let mut confirmed_here = 0;
        for inst in common::prime_codomain(p) {
            ensure(inst.f.domain().order() <= 2401, || format!("{} is too large", inst.label))?;
            let f = inst.f.component(FieldElem::ONE).unwrap();
            match theorem5_check(&f, &limits).map_err(|e| format!("{}: {e}", inst.label))? {
                Theorem5Report::Confirmed { .. } => confirmed_here += 1,
                Theorem5Report::NotApplicable { .. } => not_applicable += 1,
                report @ Theorem5Report::Counterexample { .. } => {
                    return Err(format!("{}: {report:?}", inst.label));
                }
            }
        }
        ensure(confirmed_here > 0, || format!("nothing confirmed at p={p}"))?;
        confirmed += confirmed_here;
    }
    Ok(format!("{confirmed} functions confirmed, {not_applicable} not weakly regular dual-bent, no counterexample"))
}

fn criterion_7() -> Outcome {
    let limits = Limits::default();
    let mut instances = common::ternary_desk();
    for p in [5, 7] {
        instances.extend(common::prime_codomain(p));
    }
    let (mut checked, mut negative, mut skipped) = (0usize, 0usize, 0usize);
    for inst in &instances {
        let cert = dual_bent_certificate(&inst.f, &inst.fstar, &limits).map_err(|e| format!("{}: {e}", inst.label))?;
        match preimage_sizes(&inst.f, &cert) {
            Ok(_) => {
                checked += 1;
                if cert.constant_epsilon() == Some(-1) {
                    negative += 1;
                }
            }
            Err(PdsError::HypothesisViolation(_)) => skipped += 1,
            Err(e) => return Err(format!("{}: {e}", inst.label)),
        }
    }
    ensure(negative > 0, || "no instance with sign -1".into())?;
    Ok(format!("{checked} instances match direct counts ({negative} with sign -1); {skipped} outside the hypotheses"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("closed-form parameter quadruples", criterion_1),
        ("desk-scale PDS verification", criterion_2),
        ("dual-bent certificates", criterion_3),
        ("spectral invariants", criterion_4),
        ("Gaussian periods", criterion_5),
        ("l-form converse", criterion_6),
        ("preimage sizes", criterion_7),
    ];
    let mut all = true;
    for (i, (name, body)) in criteria.into_iter().enumerate() {
        all &= run(i as u32 + 1, name, body);
    }
    if !all {
        std::process::exit(1);
    }
}
