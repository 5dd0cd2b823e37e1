//! Non-adaptive identification of a single anomalous element.
//!
//! `n` elements are all identical except possibly one, which deviates in an
//! unknown direction. An instrument applied to groups of elements reports
//! one of `s` symmetric states (for a two-pan balance, `s = 3`: left down,
//! balanced, right down). A plan fixes all `k` analyses in advance; the
//! recorded outcomes then name the anomalous element and its direction, or
//! confirm there is none.
//!
//! - [`codebook`] enumerates state vectors and builds valid, optionally
//!   balanced code assignments.
//! - [`capacity`] computes how many elements `k` analyses can handle, three
//!   independent ways, plus an exhaustive feasibility oracle.
//! - [`plan`] turns codebooks into placement instructions, renders and
//!   persists them, and ships the classic 12-coin plan.
//! - [`engine`] simulates runs, decodes outcomes and verifies plans against
//!   every hypothesis.
//! - [`cli`] is the command-line front end.
//!
//! ```
//! use anomaly_scheme::engine::{decode, Hypothesis, Polarity};
//! use anomaly_scheme::codebook::StateVector;
//! use anomaly_scheme::plan::paper_plan_12;
//!
//! let plan = paper_plan_12();
//! let verdict = decode(&plan, &StateVector::new(vec![-1, -1, 1])).unwrap();
//! assert_eq!(verdict, Hypothesis::anomaly(9, Polarity::Positive));
//! ```

pub mod capacity;
pub mod cli;
pub mod codebook;
pub mod engine;
pub mod error;
pub mod plan;

pub use capacity::{CapacityQuery, CapacityReport, Feasibility};
pub use codebook::{AlphabetSize, Codebook, StateVector, ValidationReport, Violation};
pub use engine::{Hypothesis, Outcome, Polarity, ScaleModel, Verdict, VerificationReport};
pub use error::{Error, Result};
pub use plan::{Analysis, WeighingPlan};
