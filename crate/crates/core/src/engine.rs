//! Running a plan against a single-anomaly hypothesis and decoding the result.
//!
//! Outcome convention for the balance scale: `-1` means the left pan went
//! down, `0` balance, `+1` the right pan went down. A heavy element therefore
//! reproduces its own code and a light one the inverted code.

use std::collections::HashMap;
use std::fmt;

use crate::codebook::{AlphabetSize, StateVector};
use crate::error::{Error, Result};
use crate::plan::WeighingPlan;

/// The recorded instrument states of one run, one per analysis.
pub type Outcome = StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Heavier, or shifted up.
    Positive,
    /// Lighter, or shifted down.
    Negative,
}

impl Polarity {
    pub fn sign(self) -> i32 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }

    /// "heavier"/"lighter" on a balance scale, "positive"/"negative" otherwise.
    pub fn describe(self, states: AlphabetSize) -> &'static str {
        match (states == AlphabetSize::THREE, self) {
            (true, Polarity::Positive) => "heavier",
            (true, Polarity::Negative) => "lighter",
            (false, Polarity::Positive) => "positive",
            (false, Polarity::Negative) => "negative",
        }
    }
}

/// Either every element is genuine, or exactly one element (1-based) is off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    NoAnomaly,
    Anomaly { element: usize, polarity: Polarity },
}

/// What a decoder concludes; the same shape as the hypothesis it recovers.
pub type Verdict = Hypothesis;

impl Hypothesis {
    pub fn anomaly(element: usize, polarity: Polarity) -> Self {
        Hypothesis::Anomaly { element, polarity }
    }

    /// All `2n + 1` hypotheses: no anomaly, then each element heavier and lighter.
    pub fn all(elements: usize) -> impl Iterator<Item = Hypothesis> {
        std::iter::once(Hypothesis::NoAnomaly).chain((1..=elements).flat_map(|e| {
            [Polarity::Positive, Polarity::Negative]
                .into_iter()
                .map(move |p| Hypothesis::anomaly(e, p))
        }))
    }

    /// One-line human-readable verdict.
    pub fn describe(&self, states: AlphabetSize) -> String {
        match self {
            Hypothesis::NoAnomaly => "No anomaly detected".to_string(),
            Hypothesis::Anomaly { element, polarity } => {
                format!(
                    "Element {element} is ANOMALOUS: {}",
                    polarity.describe(states)
                )
            }
        }
    }
}

/// Integer weights for the physical balance model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleModel {
    genuine_weight: u64,
    delta: u64,
}

impl Default for ScaleModel {
    fn default() -> Self {
        ScaleModel {
            genuine_weight: 100,
            delta: 1,
        }
    }
}

impl ScaleModel {
    pub fn new(genuine_weight: u64, delta: u64) -> Result<Self> {
        if delta == 0 || genuine_weight <= delta {
            return Err(Error::InvalidParameter(format!(
                "scale model needs 1 <= delta < genuine weight, got delta {delta}, weight {genuine_weight}"
            )));
        }
        Ok(ScaleModel {
            genuine_weight,
            delta,
        })
    }

    fn weight_of(&self, label: usize, h: &Hypothesis) -> u64 {
        match *h {
            Hypothesis::Anomaly { element, polarity } if element == label => match polarity {
                Polarity::Positive => self.genuine_weight + self.delta,
                Polarity::Negative => self.genuine_weight - self.delta,
            },
            _ => self.genuine_weight,
        }
    }

    /// Weighs each analysis' pans and reports which side went down.
    pub fn weigh(&self, plan: &WeighingPlan, h: &Hypothesis) -> Outcome {
        let states = plan
            .analyses()
            .iter()
            .map(|a| {
                let pan = |value| -> u64 {
                    a.group(value)
                        .map(|g| g.iter().map(|&e| self.weight_of(e, h)).sum())
                        .unwrap_or(0)
                };
                let (left, right) = (pan(-1), pan(1));
                match left.cmp(&right) {
                    std::cmp::Ordering::Greater => -1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Less => 1,
                }
            })
            .collect();
        StateVector::new(states)
    }
}

fn check_hypothesis(plan: &WeighingPlan, h: &Hypothesis) -> Result<()> {
    if let Hypothesis::Anomaly { element, .. } = *h {
        if element == 0 || element > plan.elements() {
            return Err(Error::InvalidHypothesis {
                element,
                elements: plan.elements(),
            });
        }
    }
    Ok(())
}

/// `polarity × code(element)`, or all zeros when nothing is anomalous.
pub fn simulate_algebraic(plan: &WeighingPlan, h: &Hypothesis) -> Result<Outcome> {
    check_hypothesis(plan, h)?;
    let k = plan.codebook().analyses();
    Ok(match *h {
        Hypothesis::NoAnomaly => StateVector::zeros(k),
        Hypothesis::Anomaly { element, polarity } => plan
            .code(element)
            .expect("checked above")
            .scaled(polarity.sign()),
    })
}

/// True when every analysis puts the same number of elements on each pan,
/// which is what makes a physical weighing comparable with the algebraic model.
pub fn pans_equal(plan: &WeighingPlan) -> bool {
    plan.states() == AlphabetSize::THREE
        && plan
            .analyses()
            .iter()
            .all(|a| a.left().map_or(0, |g| g.len()) == a.right().map_or(0, |g| g.len()))
}

pub fn simulate(plan: &WeighingPlan, h: &Hypothesis) -> Result<Outcome> {
    simulate_with(plan, h, &ScaleModel::default())
}

/// Simulates with an explicit scale model. On three-state plans whose pans
/// hold equal counts, the outcome is computed twice (pan weights, and
/// polarity × code) and the two must agree.
pub fn simulate_with(plan: &WeighingPlan, h: &Hypothesis, scale: &ScaleModel) -> Result<Outcome> {
    let outcome = simulate_algebraic(plan, h)?;
    if pans_equal(plan) {
        let weighed = scale.weigh(plan, h);
        if let Some(j) = (0..outcome.len()).find(|&j| weighed.entries()[j] != outcome.entries()[j])
        {
            return Err(Error::RouteDisagreement {
                analysis: j + 1,
                scale: weighed.entries()[j],
                algebraic: outcome.entries()[j],
            });
        }
    }
    Ok(outcome)
}

/// Lookup from every code and inverted code to the hypotheses that produce it.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    states: AlphabetSize,
    analyses: usize,
    entries: HashMap<StateVector, Vec<Verdict>>,
}

impl SyndromeTable {
    pub fn new(plan: &WeighingPlan) -> Self {
        let mut entries: HashMap<StateVector, Vec<Verdict>> = HashMap::new();
        for (i, code) in plan.codebook().codes().iter().enumerate() {
            for polarity in [Polarity::Positive, Polarity::Negative] {
                entries
                    .entry(code.scaled(polarity.sign()))
                    .or_default()
                    .push(Hypothesis::anomaly(i + 1, polarity));
            }
        }
        SyndromeTable {
            states: plan.states(),
            analyses: plan.codebook().analyses(),
            entries,
        }
    }

    pub fn decode(&self, outcome: &Outcome) -> Result<Verdict> {
        if outcome.len() != self.analyses {
            return Err(Error::InvalidParameter(format!(
                "outcome has {} states, plan has {} analyses",
                outcome.len(),
                self.analyses
            )));
        }
        if !outcome.fits(self.states) {
            return Err(Error::InvalidParameter(format!(
                "outcome {outcome} has values outside the {}-state alphabet",
                self.states
            )));
        }
        if outcome.is_zero() {
            return Ok(Hypothesis::NoAnomaly);
        }
        match self.entries.get(outcome).map(Vec::as_slice) {
            Some([only]) => Ok(*only),
            Some(many) => Err(Error::AmbiguousOutcome {
                outcome: outcome.entries().to_vec(),
                candidates: many.len(),
            }),
            None => Err(Error::InconsistentOutcome(outcome.entries().to_vec())),
        }
    }
}

/// Matches an outcome against every code and inverted code.
pub fn decode(plan: &WeighingPlan, outcome: &Outcome) -> Result<Verdict> {
    SyndromeTable::new(plan).decode(outcome)
}

/// A hypothesis the plan fails to recover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub hypothesis: Hypothesis,
    /// `None` when the simulation itself failed.
    pub outcome: Option<Outcome>,
    pub decoded: Result<Verdict>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.hypothesis)?;
        if let Some(o) = &self.outcome {
            write!(f, " -> outcome {o}")?;
        }
        match &self.decoded {
            Ok(v) => write!(f, " -> decoded {v:?}"),
            Err(e) => write!(f, " -> {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub hypotheses: usize,
    /// Ordered as [`Hypothesis::all`]: no anomaly, then by element and polarity.
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} hypotheses, {} failures",
            self.hypotheses,
            self.failures.len()
        )
    }
}

/// Simulates and decodes every one of the `2n + 1` hypotheses.
pub fn verify_exhaustive(plan: &WeighingPlan) -> VerificationReport {
    let table = SyndromeTable::new(plan);
    let scale = ScaleModel::default();
    let mut hypotheses = 0;
    let mut failures = Vec::new();
    for h in Hypothesis::all(plan.elements()) {
        hypotheses += 1;
        let failure = match simulate_with(plan, &h, &scale) {
            Err(e) => Some(Failure {
                hypothesis: h,
                outcome: None,
                decoded: Err(e),
            }),
            Ok(outcome) => {
                let decoded = table.decode(&outcome);
                (decoded != Ok(h)).then_some(Failure {
                    hypothesis: h,
                    outcome: Some(outcome),
                    decoded,
                })
            }
        };
        failures.extend(failure);
    }
    VerificationReport {
        hypotheses,
        failures,
    }
}
