mod common;

use anomaly_scheme::capacity::{
    capacity_by_additive_recurrence, capacity_by_multiplicative_recurrence, capacity_closed_form,
    feasibility_oracle, CapacityQuery, Feasibility,
};
use anomaly_scheme::codebook::{
    admissible_pairs, build_codebook, enumerate_vectors, AlphabetSize, StateVector,
};
use anomaly_scheme::engine::{decode, simulate, verify_exhaustive, Hypothesis};
use anomaly_scheme::plan::{
    codebook_from_plan, deserialize_plan, plan_from_codebook, serialize_plan,
};
use anomaly_scheme::Error;
use proptest::prelude::*;

fn alphabet(s: u32) -> AlphabetSize {
    AlphabetSize::new(s).unwrap()
}

/// Pool size computed by brute force: count non-constant vectors, then halve
/// (each survives together with its distinct inverse).
fn brute_force_pairs(s: AlphabetSize, k: usize) -> usize {
    let all = enumerate_vectors(s, k).unwrap();
    let nonconstant = all
        .iter()
        .filter(|v| v.entries().iter().any(|&e| e != v.entries()[0]))
        .count();
    nonconstant / 2
}

#[test]
fn admissible_pairs_match_enumeration() {
    for s in [3, 5, 7] {
        for k in 1..=4 {
            let s = alphabet(s);
            let pairs = admissible_pairs(s, k).unwrap();
            assert_eq!(pairs.len(), brute_force_pairs(s, k), "s={s} k={k}");
            let q = CapacityQuery::new(s, k).unwrap();
            assert_eq!(pairs.len() as u64, capacity_closed_form(&q).unwrap());
            assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn recurrences_match_closed_form() {
    for s in [3, 5] {
        for k in 1..=8 {
            let q = CapacityQuery::new(alphabet(s), k).unwrap();
            let closed = capacity_closed_form(&q).unwrap();
            assert_eq!(capacity_by_additive_recurrence(&q).unwrap(), closed);
            assert_eq!(capacity_by_multiplicative_recurrence(&q).unwrap(), closed);
        }
    }
}

#[test]
fn oracle_agrees_with_builder() {
    let three = AlphabetSize::THREE;
    for k in [2, 3] {
        let cap = (3usize.pow(k as u32) - 3) / 2;
        for n in 1..=cap + 1 {
            for balanced in [false, true] {
                let oracle = feasibility_oracle(three, k, n, balanced).unwrap();
                let built = build_codebook(n, k, three, balanced);
                match (&oracle, &built) {
                    (Feasibility::Feasible(witness), Ok(cb)) => {
                        assert!(witness.validate().is_valid());
                        assert!(cb.validate().is_valid());
                        assert_eq!(witness.elements(), n);
                    }
                    (Feasibility::Infeasible, Err(Error::PlanInfeasible { .. }))
                    | (Feasibility::Infeasible, Err(Error::CapacityExceeded { .. })) => {}
                    _ => panic!(
                        "k={k} n={n} balanced={balanced}: oracle {oracle:?}, builder {built:?}"
                    ),
                }
            }
        }
    }
}

#[test]
fn full_capacity_balanced_plans_verify() {
    for k in 2..=5 {
        let n = (3usize.pow(k as u32) - 3) / 2;
        let cb = build_codebook(n, k, AlphabetSize::THREE, true).unwrap();
        assert!(cb.validate().is_valid());
        let plan = plan_from_codebook(&cb);
        for a in plan.analyses() {
            assert_eq!(a.left().unwrap().len(), a.right().unwrap().len());
        }
        let report = verify_exhaustive(&plan);
        assert_eq!(report.hypotheses, 2 * n + 1);
        assert!(report.passed(), "k={k}: {report}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_negation_invariant(entries in proptest::collection::vec(-3i32..=3, 1..6)) {
        let v = StateVector::new(entries);
        prop_assume!(!v.is_zero());
        let c = v.canonical_representative().unwrap();
        prop_assert_eq!(c.canonical_representative().unwrap(), c.clone());
        prop_assert_eq!(v.invert().canonical_representative().unwrap(), c);
        prop_assert_eq!(v.invert().invert(), v);
    }

    #[test]
    fn builder_output_is_valid_and_deterministic(
        (k, n) in (2usize..=4).prop_flat_map(|k| (Just(k), 1..=(3usize.pow(k as u32) - 3) / 2)),
        balanced in any::<bool>(),
    ) {
        match build_codebook(n, k, AlphabetSize::THREE, balanced) {
            Ok(cb) => {
                prop_assert!(cb.validate().is_valid(), "{}", cb.validate());
                prop_assert_eq!(cb.elements(), n);
                prop_assert_eq!(build_codebook(n, k, AlphabetSize::THREE, balanced).unwrap(), cb);
            }
            Err(Error::PlanInfeasible { .. }) => prop_assert!(balanced),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn plan_and_codebook_are_inverse(cb in common::valid_three_state_codebook(4)) {
        let plan = plan_from_codebook(&cb);
        prop_assert_eq!(codebook_from_plan(&plan).unwrap(), cb);
    }

    #[test]
    fn serialization_is_canonical(cb in common::valid_codebook(4), title in proptest::option::of("[ -~]{0,20}")) {
        let plan = plan_from_codebook(&cb).with_title(title);
        let bytes = serialize_plan(&plan);
        let back = deserialize_plan(&bytes).unwrap();
        prop_assert_eq!(serialize_plan(&back), bytes);
        prop_assert_eq!(back, plan);
    }

    #[test]
    fn decode_inverts_simulate(cb in common::valid_codebook(4)) {
        let plan = plan_from_codebook(&cb);
        for h in Hypothesis::all(cb.elements()) {
            let outcome = simulate(&plan, &h).unwrap();
            prop_assert_eq!(decode(&plan, &outcome).unwrap(), h);
        }
    }
}

#[test]
fn types_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<anomaly_scheme::Codebook>();
    assert_send_sync::<anomaly_scheme::WeighingPlan>();
    assert_send_sync::<anomaly_scheme::VerificationReport>();
    assert_send_sync::<anomaly_scheme::CapacityReport>();
    assert_send_sync::<anomaly_scheme::Error>();
}
