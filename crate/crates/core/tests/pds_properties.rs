mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use dualbent::pds::{
    char_sums_preimage_all, params_coset_union, params_subset, preimage, verify_pds_bruteforce, verify_pds_characters,
    PdsError, PdsParams,
};
use dualbent::{FieldElem, Limits};

/// Parameters of G \ ({0} u D) for a PDS D in G.
fn complement(d: &PdsParams) -> PdsParams {
    let v = &d.v;
    PdsParams {
        v: v.clone(),
        k: v - 1 - &d.k,
        lambda: v - 2 - &d.k * 2 + &d.mu,
        mu: v - &d.k * 2 + &d.lambda,
    }
}

#[test]
fn character_sum_formula_is_exhaustively_exact() {
    let limits = Limits::default();
    let mut instances = common::ternary_desk();
    instances.extend(common::prime_codomain(5));
    instances.extend(common::prime_codomain(7));
    let mut checked = 0;
    for inst in instances.iter().filter(|i| i.f.domain().order() <= 729) {
        for i in inst.f.codomain().elements() {
            let sums = char_sums_preimage_all(&inst.f, i, &limits).unwrap();
            let size = inst.f.table().iter().filter(|&&v| v == i.0).count();
            assert_eq!(sums[0].as_integer(), Some(&BigInt::from(size)), "{}", inst.label);
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn every_subset_of_gf3_gives_a_pds_for_identity_sigma() {
    let limits = Limits::default();
    for inst in common::ternary_desk().iter().filter(|i| i.f.codomain().order() == 3 && i.f.domain().dim() % 2 == 0) {
        if !inst.sigma_claim.iter().all(|(c, d)| c == d) || inst.epsilon_claim.values().any(|e| e.is_none()) {
            continue;
        }
        let eps = inst.epsilon_claim[&FieldElem(1)].unwrap();
        if inst.epsilon_claim.values().any(|e| *e != Some(eps)) {
            continue;
        }
        for mask in 0u32..8 {
            let values: BTreeSet<FieldElem> = (0..3).filter(|i| mask >> i & 1 == 1).map(FieldElem).collect();
            let d = preimage(&inst.f, &values, true).unwrap();
            let n = inst.f.domain().dim();
            let predicted = params_subset(n, 1, 3, values.len() as u64, values.contains(&FieldElem::ZERO), eps).unwrap();
            let found = verify_pds_bruteforce(inst.f.domain(), &d, &limits).unwrap();
            assert_eq!(found, predicted, "{} A={values:?}", inst.label);
            assert!(verify_pds_characters(inst.f.domain(), &d, &predicted, &limits).unwrap());
        }
    }
}

#[test]
fn perturbed_parameters_are_rejected() {
    let limits = Limits::default();
    let inst = &common::ternary_desk()[1];
    let d = preimage(&inst.f, &BTreeSet::from([FieldElem(1)]), true).unwrap();
    let found = verify_pds_bruteforce(inst.f.domain(), &d, &limits).unwrap();
    for (dl, dm) in [(1, 1), (2, 0), (0, 2)] {
        let wrong = PdsParams { lambda: &found.lambda + dl, mu: &found.mu + dm, ..found.clone() };
        match verify_pds_characters(inst.f.domain(), &d, &wrong, &limits) {
            Ok(ok) => assert!(!ok),
            Err(PdsError::NonSquareDelta(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

proptest! {
    #[test]
    fn subset_formulas_respect_complements(
        (p, s) in prop_oneof![Just((3u32, 1u32)), Just((3, 2)), Just((5, 1)), Just((7, 1)), Just((5, 2))],
        half in 1u32..=4,
        size_frac in 0.0f64..=1.0,
        contains_zero in any::<bool>(),
        positive in any::<bool>(),
    ) {
        let n = 2 * (half + s);
        let q = (p as u64).pow(s);
        let eps = if positive { 1 } else { -1 };
        let size = ((q as f64) * size_frac).round() as u64;
        prop_assume!(size >= u64::from(contains_zero) && size - u64::from(contains_zero) < q);
        let d = params_subset(n, s, p, size, contains_zero, eps).unwrap();
        let rest = params_subset(n, s, p, q - size, !contains_zero, eps).unwrap();
        if !d.is_degenerate() && !rest.is_degenerate() {
            prop_assert_eq!(complement(&d), rest);
        }
    }

    #[test]
    fn unions_agree_with_subsets(
        (p, s) in prop_oneof![Just((3u32, 2u32)), Just((5, 2)), Just((7, 1)), Just((3, 4))],
        half in 1u32..=3,
        divisor_pick in 0usize..8,
        m1_frac in 0.0f64..=1.0,
        m0 in 0u32..=1,
        positive in any::<bool>(),
    ) {
        let n = 2 * (half + s);
        let q = (p as u64).pow(s);
        let divisors: Vec<u64> = (1..q).filter(|d| (q - 1) % d == 0).collect();
        let h = divisors[divisor_pick % divisors.len()];
        let cosets = (q - 1) / h;
        let m1 = ((cosets as f64) * m1_frac).round() as u64;
        let eps = if positive { 1 } else { -1 };
        let union = params_coset_union(n, s, p, h, m1, m0, eps).unwrap();
        let subset = params_subset(n, s, p, m1 * h + u64::from(m0), m0 == 1, eps).unwrap();
        prop_assert_eq!(union, subset);
    }
}
