//! Executable plans: which elements go where in each analysis.
//!
//! Analysis `j` places element `e` under value `code(e)[j]`. For the balance
//! scale, `-1` is the left pan, `+1` the right pan and `0` means the element
//! sits out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Deserialize;

use crate::codebook::{AlphabetSize, Codebook, StateVector};
use crate::error::{Error, Result};

/// Tag identifying version 1 of the plan file format.
pub const PLAN_FORMAT_TAG: &str = "anomaly-plan/1";

/// One analysis: the set of element labels placed under each nonzero value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Analysis {
    index: usize,
    groups: BTreeMap<i32, BTreeSet<usize>>,
}

impl Analysis {
    /// An analysis with every nonzero value's group empty.
    pub fn empty(index: usize, states: AlphabetSize) -> Self {
        Analysis {
            index,
            groups: states
                .nonzero_values()
                .map(|v| (v, BTreeSet::new()))
                .collect(),
        }
    }

    /// An analysis from explicit groups. Values missing from `groups` get
    /// empty groups; the groups are checked later, when a plan is assembled.
    pub fn from_groups(
        index: usize,
        states: AlphabetSize,
        groups: impl IntoIterator<Item = (i32, Vec<usize>)>,
    ) -> Self {
        let mut a = Analysis::empty(index, states);
        for (value, labels) in groups {
            a.groups.entry(value).or_default().extend(labels);
        }
        a
    }

    /// Balance-scale convenience: `left` gets value −1, `right` gets +1.
    pub fn pans(index: usize, left: &[usize], right: &[usize]) -> Self {
        Analysis::from_groups(
            index,
            AlphabetSize::THREE,
            [(-1, left.to_vec()), (1, right.to_vec())],
        )
    }

    /// 1-based analysis number.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn groups(&self) -> &BTreeMap<i32, BTreeSet<usize>> {
        &self.groups
    }

    pub fn group(&self, value: i32) -> Option<&BTreeSet<usize>> {
        self.groups.get(&value)
    }

    pub fn left(&self) -> Option<&BTreeSet<usize>> {
        self.group(-1)
    }

    pub fn right(&self) -> Option<&BTreeSet<usize>> {
        self.group(1)
    }
}

/// A codebook together with its per-analysis placement instructions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeighingPlan {
    codebook: Codebook,
    analyses: Vec<Analysis>,
    title: Option<String>,
}

impl WeighingPlan {
    /// Assembles a plan from explicit analyses (the form of a placement
    /// table), deriving each element's code. Elements absent from an
    /// analysis get entry 0 there.
    pub fn from_analyses(
        states: AlphabetSize,
        elements: usize,
        analyses: Vec<Analysis>,
        title: Option<String>,
    ) -> Result<Self> {
        let codebook = codebook_from_analyses(states, elements, &analyses)?;
        Ok(plan_from_codebook(&codebook).with_title(title))
    }

    pub fn with_title(mut self, title: Option<String>) -> Self {
        self.title = title;
        self
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn analyses(&self) -> &[Analysis] {
        &self.analyses
    }

    pub fn title(&self) -> Option<&str> {
        self.title.as_deref()
    }

    pub fn states(&self) -> AlphabetSize {
        self.codebook.states()
    }

    pub fn elements(&self) -> usize {
        self.codebook.elements()
    }

    pub fn code(&self, label: usize) -> Option<&StateVector> {
        self.codebook.code(label)
    }
}

pub fn plan_from_codebook(cb: &Codebook) -> WeighingPlan {
    let states = cb.states();
    let mut analyses: Vec<Analysis> = (1..=cb.analyses())
        .map(|j| Analysis::empty(j, states))
        .collect();
    for (i, code) in cb.codes().iter().enumerate() {
        for (analysis, &value) in analyses.iter_mut().zip(code.entries()) {
            if value != 0 {
                analysis
                    .groups
                    .get_mut(&value)
                    .expect("alphabet checked by Codebook::new")
                    .insert(i + 1);
            }
        }
    }
    WeighingPlan {
        codebook: cb.clone(),
        analyses,
        title: None,
    }
}

/// Recovers the codebook from a plan's analyses.
pub fn codebook_from_plan(p: &WeighingPlan) -> Result<Codebook> {
    codebook_from_analyses(p.states(), p.elements(), &p.analyses)
}

fn codebook_from_analyses(
    states: AlphabetSize,
    elements: usize,
    analyses: &[Analysis],
) -> Result<Codebook> {
    let k = analyses.len();
    let mut codes = vec![vec![0i32; k]; elements];
    for (j, analysis) in analyses.iter().enumerate() {
        if analysis.index != j + 1 {
            return Err(Error::InvalidParameter(format!(
                "analysis at position {} is numbered {}",
                j + 1,
                analysis.index
            )));
        }
        for (&value, labels) in &analysis.groups {
            if value == 0 || !states.contains(value) {
                return Err(Error::InvalidParameter(format!(
                    "analysis {} uses value {value}, not a nonzero {states}-state value",
                    analysis.index
                )));
            }
            for &label in labels {
                if label == 0 || label > elements {
                    return Err(Error::InvalidParameter(format!(
                        "analysis {} names element {label}, outside 1..={elements}",
                        analysis.index
                    )));
                }
                let slot = &mut codes[label - 1][j];
                if *slot != 0 {
                    return Err(Error::ConflictingAssignment {
                        analysis: analysis.index,
                        element: label,
                        first: *slot,
                        second: value,
                    });
                }
                *slot = value;
            }
        }
    }
    Codebook::new(
        states,
        k,
        codes.into_iter().map(StateVector::new).collect(),
        false,
    )
}

/// Codes of the twelve coins in the reference three-weighing solution.
const TWELVE_COIN_CODES: [[i32; 3]; 12] = [
    [0, 0, -1],
    [0, -1, 0],
    [0, -1, -1],
    [0, -1, 1],
    [1, 0, 0],
    [1, 0, 1],
    [1, 0, -1],
    [1, 1, 0],
    [-1, -1, 1],
    [-1, 1, 0],
    [-1, 1, -1],
    [-1, 1, 1],
];

/// The classic 12-coin, 3-weighing plan.
///
/// ```text
/// Analysis 1: LEFT 9 10 11 12 | RIGHT 5 6 7 8
/// Analysis 2: LEFT 2 3 4 9    | RIGHT 8 10 11 12
/// Analysis 3: LEFT 1 3 7 11   | RIGHT 4 6 9 12
/// ```
pub fn paper_plan_12() -> WeighingPlan {
    let codes = TWELVE_COIN_CODES
        .iter()
        .map(|c| StateVector::new(c.to_vec()))
        .collect();
    let cb =
        Codebook::new(AlphabetSize::THREE, 3, codes, true).expect("static table is well formed");
    plan_from_codebook(&cb).with_title(Some("12-coin problem".into()))
}

fn signed(value: i32) -> String {
    if value > 0 {
        format!("+{value}")
    } else {
        value.to_string()
    }
}

/// Renders one analysis as a single line.
pub fn render_analysis(states: AlphabetSize, analysis: &Analysis) -> String {
    let mut line = format!("Analysis {}:", analysis.index);
    for (n, (&value, labels)) in analysis.groups.iter().enumerate() {
        if n > 0 {
            line.push_str(" |");
        }
        let header = if states == AlphabetSize::THREE {
            if value < 0 {
                "LEFT".to_string()
            } else {
                "RIGHT".to_string()
            }
        } else {
            signed(value)
        };
        write!(line, " {header}").unwrap();
        for label in labels {
            write!(line, " {label}").unwrap();
        }
    }
    line
}

/// One line per analysis, value groups ascending, labels ascending.
pub fn render_plan(p: &WeighingPlan) -> String {
    let mut out = String::new();
    for analysis in &p.analyses {
        out.push_str(&render_analysis(p.states(), analysis));
        out.push('\n');
    }
    out
}

/// Canonical UTF-8 plan file: fixed key order, one code row per line.
pub fn serialize_plan(p: &WeighingPlan) -> Vec<u8> {
    let cb = &p.codebook;
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"format\": \"{PLAN_FORMAT_TAG}\",").unwrap();
    writeln!(out, "  \"states\": {},", cb.states()).unwrap();
    writeln!(out, "  \"analyses\": {},", cb.analyses()).unwrap();
    writeln!(out, "  \"elements\": {},", cb.elements()).unwrap();
    if cb.codes().is_empty() {
        out.push_str("  \"codes\": []");
    } else {
        out.push_str("  \"codes\": [\n");
        for (i, code) in cb.codes().iter().enumerate() {
            let row: Vec<String> = code.entries().iter().map(i32::to_string).collect();
            write!(out, "    [{}]", row.join(", ")).unwrap();
            out.push_str(if i + 1 < cb.elements() { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
    }
    if let Some(title) = &p.title {
        let quoted = serde_json::to_string(title).expect("strings always serialize");
        write!(out, ",\n  \"title\": {quoted}").unwrap();
    }
    out.push_str("\n}\n");
    out.into_bytes()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    format: String,
    states: u32,
    analyses: usize,
    elements: usize,
    codes: Vec<Vec<i32>>,
    #[serde(default)]
    title: Option<String>,
}

/// Parses a plan file and checks every codebook invariant.
pub fn deserialize_plan(bytes: &[u8]) -> Result<WeighingPlan> {
    let plan = deserialize_plan_unchecked(bytes)?;
    let report = plan.codebook().validate();
    if !report.is_valid() {
        return Err(Error::Invariant(report.to_string()));
    }
    Ok(plan)
}

/// Parses a plan file, checking its shape and alphabet but not the codebook
/// invariants. Used to load plans that are about to be verified.
pub fn deserialize_plan_unchecked(bytes: &[u8]) -> Result<WeighingPlan> {
    let file: PlanFile = serde_json::from_slice(bytes).map_err(|e| Error::Format(e.to_string()))?;
    if file.format != PLAN_FORMAT_TAG {
        return Err(Error::Format(format!(
            "expected format \"{PLAN_FORMAT_TAG}\", found \"{}\"",
            file.format
        )));
    }
    if file.codes.len() != file.elements {
        return Err(Error::Format(format!(
            "\"elements\" is {} but {} codes are listed",
            file.elements,
            file.codes.len()
        )));
    }
    let states = AlphabetSize::new(file.states).map_err(|e| Error::Invariant(e.to_string()))?;
    let codes = file.codes.into_iter().map(StateVector::new).collect();
    let cb = Codebook::new(states, file.analyses, codes, false)
        .map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(plan_from_codebook(&cb).with_title(file.title))
}
