//! Acceptance criteria. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use anomaly_scheme::capacity::{
    capacity_by_additive_recurrence, capacity_by_multiplicative_recurrence, capacity_closed_form,
    capacity_step_additive, capacity_step_multiplicative, feasibility_oracle, CapacityQuery,
    Feasibility,
};
use anomaly_scheme::codebook::{admissible_pairs, build_codebook, AlphabetSize, StateVector};
use anomaly_scheme::engine::{
    decode, simulate, verify_exhaustive, Hypothesis, Polarity, SyndromeTable,
};
use anomaly_scheme::plan::{
    codebook_from_plan, deserialize_plan, paper_plan_12, plan_from_codebook, serialize_plan,
};
use anomaly_scheme::Error;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "{what} took {elapsed:?}, limit {limit:?}");
    Ok(())
}

fn three() -> AlphabetSize {
    AlphabetSize::THREE
}

fn five() -> AlphabetSize {
    AlphabetSize::new(5).unwrap()
}

fn capacity_values() -> Check {
    let start = Instant::now();
    let mut got = Vec::new();
    for k in 1..=5 {
        got.push(capacity_closed_form(&CapacityQuery::three_state(k).unwrap()).unwrap());
    }
    within(start, Duration::from_millis(1), "closed-form capacities")?;
    ensure!(got == [0, 3, 12, 39, 120], "capacities {got:?}");
    Ok(())
}

fn recurrence_consistency() -> Check {
    let mut additive = 0u64;
    let mut multiplicative = 0u64;
    for k in 1..=10usize {
        let q = CapacityQuery::three_state(k).unwrap();
        let closed = capacity_closed_form(&q).unwrap();
        ensure!(
            additive == closed,
            "k={k}: additive {additive} vs closed {closed}"
        );
        ensure!(
            multiplicative == closed,
            "k={k}: multiplicative {multiplicative} vs closed {closed}"
        );
        ensure!(
            capacity_by_additive_recurrence(&q).unwrap() == closed,
            "k={k}"
        );
        ensure!(
            capacity_by_multiplicative_recurrence(&q).unwrap() == closed,
            "k={k}"
        );
        additive = capacity_step_additive(three(), k, additive).unwrap();
        multiplicative = capacity_step_multiplicative(three(), multiplicative).unwrap();
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    for s in [three(), five()] {
        for k in 1..=4 {
            let counted = admissible_pairs(s, k).unwrap().len() as u64;
            let closed = capacity_closed_form(&CapacityQuery::new(s, k).unwrap()).unwrap();
            ensure!(
                counted == closed,
                "s={s} k={k}: enumerated {counted}, closed {closed}"
            );
        }
    }
    within(start, Duration::from_secs(1), "admissible-pair enumeration")
}

fn golden_twelve_coin_plan() -> Check {
    let start = Instant::now();
    let plan = paper_plan_12();
    let report = plan.codebook().validate();
    ensure!(report.is_valid(), "validation: {report}");
    for a in plan.analyses() {
        let (l, r) = (a.left().unwrap().len(), a.right().unwrap().len());
        ensure!(
            (l, r) == (4, 4),
            "analysis {} has {l} left / {r} right",
            a.index()
        );
    }
    let v = verify_exhaustive(&plan);
    within(start, Duration::from_millis(10), "golden plan checks")?;
    ensure!(
        v.hypotheses == 25 && v.failures.is_empty(),
        "verification: {v}"
    );
    Ok(())
}

fn spot_syndromes() -> Check {
    let plan = paper_plan_12();
    let heavy9 = simulate(&plan, &Hypothesis::anomaly(9, Polarity::Positive)).unwrap();
    ensure!(
        heavy9.entries() == [-1, -1, 1],
        "coin 9 heavy gave {heavy9}"
    );
    let heavy12 = simulate(&plan, &Hypothesis::anomaly(12, Polarity::Positive)).unwrap();
    ensure!(
        heavy12.entries() == [-1, 1, 1],
        "coin 12 heavy gave {heavy12}"
    );
    let verdict = decode(&plan, &StateVector::new(vec![0, 0, 1])).unwrap();
    ensure!(
        verdict == Hypothesis::anomaly(1, Polarity::Negative),
        "(0,0,1) decoded to {verdict:?}"
    );
    Ok(())
}

fn generated_plans() -> Check {
    let cb = build_codebook(12, 3, three(), true).map_err(|e| e.to_string())?;
    let v = verify_exhaustive(&plan_from_codebook(&cb));
    ensure!(v.hypotheses == 25 && v.passed(), "n=12: {v}");

    let start = Instant::now();
    let cb = build_codebook(120, 5, three(), true).map_err(|e| e.to_string())?;
    let v = verify_exhaustive(&plan_from_codebook(&cb));
    within(start, Duration::from_secs(5), "n=120 k=5 build + verify")?;
    ensure!(v.hypotheses == 241 && v.passed(), "n=120: {v}");
    ensure!(
        cb.validate().is_valid(),
        "n=120 codebook: {}",
        cb.validate()
    );
    Ok(())
}

fn infeasibility() -> Check {
    let over = build_codebook(13, 3, three(), false);
    ensure!(
        matches!(over, Err(Error::CapacityExceeded { .. })),
        "n=13 gave {over:?}"
    );
    let over_balanced = build_codebook(13, 3, three(), true);
    ensure!(
        matches!(over_balanced, Err(Error::CapacityExceeded { .. })),
        "n=13 balanced gave {over_balanced:?}"
    );
    let pair = build_codebook(2, 3, three(), true);
    ensure!(
        matches!(pair, Err(Error::PlanInfeasible { .. })),
        "n=2 balanced gave {pair:?}"
    );
    for balanced in [false, true] {
        let o = feasibility_oracle(three(), 3, 13, balanced).unwrap();
        ensure!(
            o == Feasibility::Infeasible,
            "oracle n=13 balanced={balanced}: {o:?}"
        );
    }
    let o = feasibility_oracle(three(), 3, 2, true).unwrap();
    ensure!(o == Feasibility::Infeasible, "oracle n=2 balanced: {o:?}");
    Ok(())
}

fn generalized_system() -> Check {
    for balanced in [false, true] {
        let cb = build_codebook(10, 2, five(), balanced).map_err(|e| e.to_string())?;
        let v = verify_exhaustive(&plan_from_codebook(&cb));
        ensure!(
            v.hypotheses == 21 && v.passed(),
            "s=5 balanced={balanced}: {v}"
        );
    }
    let counted = admissible_pairs(five(), 2).unwrap().len();
    let closed = capacity_closed_form(&CapacityQuery::new(five(), 2).unwrap()).unwrap();
    ensure!(
        counted == 10 && closed == 10,
        "enumerated {counted}, closed {closed}"
    );
    Ok(())
}

fn round_trip_laws() -> Check {
    let cases = 1000;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });

    runner
        .run(&common::valid_three_state_codebook(4), |cb| {
            let plan = plan_from_codebook(&cb);
            if codebook_from_plan(&plan).unwrap() != cb {
                return Err(TestCaseError::fail("plan -> codebook differs"));
            }
            Ok(())
        })
        .map_err(|e| format!("plan/codebook inversion: {e}"))?;

    runner
        .run(&common::valid_codebook(4), |cb| {
            let plan = plan_from_codebook(&cb).with_title(Some(format!("n={}", cb.elements())));
            let bytes = serialize_plan(&plan);
            let back = deserialize_plan(&bytes).map_err(|e| TestCaseError::fail(e.to_string()))?;
            if back != plan || serialize_plan(&back) != bytes {
                return Err(TestCaseError::fail("serialization round trip differs"));
            }
            Ok(())
        })
        .map_err(|e| format!("serialize/deserialize: {e}"))?;

    runner
        .run(&common::valid_codebook(4), |cb| {
            let plan = plan_from_codebook(&cb);
            let table = SyndromeTable::new(&plan);
            for h in Hypothesis::all(cb.elements()) {
                let outcome =
                    simulate(&plan, &h).map_err(|e| TestCaseError::fail(e.to_string()))?;
                if table.decode(&outcome) != Ok(h) {
                    return Err(TestCaseError::fail(format!("{h:?} -> {outcome}")));
                }
            }
            Ok(())
        })
        .map_err(|e| format!("decode after simulate: {e}"))?;
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        (
            "1 capacity values 0,3,12,39,120 for k=1..5 (<1 ms)",
            capacity_values,
        ),
        (
            "2 both recurrences reproduce the closed form for k<=10",
            recurrence_consistency,
        ),
        (
            "3 admissible-pair count equals closed form, s in {3,5}, k<=4 (<1 s)",
            oracle_equivalence,
        ),
        (
            "4 golden 12-coin plan: valid, 4/4 pans, 25 hypotheses 0 failures (<10 ms)",
            golden_twelve_coin_plan,
        ),
        (
            "5 spot syndromes: 9 heavy, 12 heavy, (0,0,1) -> 1 lighter",
            spot_syndromes,
        ),
        (
            "6 generated plans n=12 k=3 and n=120 k=5 verify (<5 s)",
            generated_plans,
        ),
        (
            "7 CapacityExceeded / PlanInfeasible, oracle agrees",
            infeasibility,
        ),
        (
            "8 five-state n=10 k=2 verifies, capacity 10 by enumeration",
            generalized_system,
        ),
        (
            "9 round-trip laws over 1000 generated cases each",
            round_trip_laws,
        ),
    ];

    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("[PASS] AC{name}"),
            Err(why) => {
                println!("[FAIL] AC{name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
