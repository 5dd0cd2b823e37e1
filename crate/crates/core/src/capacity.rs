//! Maximum number of elements `n_k` that `k` analyses can resolve.
//!
//! With `s` outcome states there are `s^k` vectors. Removing the `s`
//! constant ones and keeping one vector from each antipodal pair leaves
//! `n_k = (s^k - s) / 2` usable codes. For the balance scale (`s = 3`) this
//! gives 0, 3, 12, 39, 120 for `k = 1..=5`, and two recurrences hold:
//!
//! ```text
//! n_{k+1} = 3^k + n_k
//! n_{k+1} = 3 (n_k + 1)
//! ```
//!
//! Both generalize to any odd `s` as `n_{k+1} = n_k + s^k (s-1)/2` and
//! `n_{k+1} = s (n_k + (s-1)/2)`. All arithmetic is checked `u64`.

use std::collections::HashMap;

use crate::codebook::{self, AlphabetSize, Codebook, StateVector};
use crate::error::{Error, Result};

/// `s^k` ceiling for running the admissible-pair enumeration in a cross-check.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// `s^k` ceiling accepted by [`feasibility_oracle`].
pub const ORACLE_SCALE_BOUND: u64 = 243;

/// Ceiling on distinct search states the oracle will hold at once.
const ORACLE_STATE_BUDGET: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityQuery {
    pub states: AlphabetSize,
    pub analyses: usize,
}

impl CapacityQuery {
    pub fn new(states: AlphabetSize, analyses: usize) -> Result<Self> {
        if analyses == 0 {
            return Err(Error::InvalidParameter(
                "analysis count must be a positive integer".into(),
            ));
        }
        Ok(CapacityQuery { states, analyses })
    }

    pub fn three_state(analyses: usize) -> Result<Self> {
        Self::new(AlphabetSize::THREE, analyses)
    }
}

fn checked_power(s: AlphabetSize, k: usize) -> Result<u64> {
    let exp = u32::try_from(k).map_err(|_| Error::Overflow("s^k"))?;
    u64::from(s.get())
        .checked_pow(exp)
        .ok_or(Error::Overflow("s^k"))
}

/// `n_k = (s^k - s) / 2`.
pub fn capacity_closed_form(q: &CapacityQuery) -> Result<u64> {
    let power = checked_power(q.states, q.analyses)?;
    Ok((power - u64::from(q.states.get())) / 2)
}

/// `n_{k+1} = n_k + s^k (s-1)/2`; for `s = 3`, `n_{k+1} = 3^k + n_k`.
pub fn capacity_step_additive(s: AlphabetSize, k: usize, n_k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "analysis count must be a positive integer".into(),
        ));
    }
    let half = u64::from(s.max_magnitude() as u32);
    checked_power(s, k)?
        .checked_mul(half)
        .and_then(|step| step.checked_add(n_k))
        .ok_or(Error::Overflow("additive recurrence"))
}

/// `n_{k+1} = s (n_k + (s-1)/2)`; for `s = 3`, `n_{k+1} = 3 (n_k + 1)`.
pub fn capacity_step_multiplicative(s: AlphabetSize, n_k: u64) -> Result<u64> {
    let half = u64::from(s.max_magnitude() as u32);
    n_k.checked_add(half)
        .and_then(|m| m.checked_mul(u64::from(s.get())))
        .ok_or(Error::Overflow("multiplicative recurrence"))
}

/// Iterates the additive recurrence from `n_1 = 0` up to `q.analyses`.
pub fn capacity_by_additive_recurrence(q: &CapacityQuery) -> Result<u64> {
    (1..q.analyses).try_fold(0u64, |n, k| capacity_step_additive(q.states, k, n))
}

/// Iterates the multiplicative recurrence from `n_1 = 0` up to `q.analyses`.
pub fn capacity_by_multiplicative_recurrence(q: &CapacityQuery) -> Result<u64> {
    (1..q.analyses).try_fold(0u64, |n, _| capacity_step_multiplicative(q.states, n))
}

/// `n_k` computed four ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityReport {
    pub query: CapacityQuery,
    pub closed_form: u64,
    pub recurrence_additive: u64,
    pub recurrence_multiplicative: u64,
    /// Admissible-pair count, `None` when `s^k` exceeded the enumeration bound.
    pub enumerated: Option<u64>,
}

impl CapacityReport {
    /// True iff every computed value agrees.
    pub fn consistent(&self) -> bool {
        self.closed_form == self.recurrence_additive
            && self.closed_form == self.recurrence_multiplicative
            && self.enumerated.is_none_or(|e| e == self.closed_form)
    }
}

pub fn capacity_cross_check(q: &CapacityQuery) -> Result<CapacityReport> {
    capacity_cross_check_bounded(q, DEFAULT_ENUMERATION_BOUND)
}

/// Like [`capacity_cross_check`], enumerating only when `s^k <= enumeration_bound`.
pub fn capacity_cross_check_bounded(
    q: &CapacityQuery,
    enumeration_bound: u64,
) -> Result<CapacityReport> {
    let enumerated = match checked_power(q.states, q.analyses) {
        Ok(p) if p <= enumeration_bound => {
            Some(codebook::admissible_pairs(q.states, q.analyses)?.len() as u64)
        }
        _ => None,
    };
    Ok(CapacityReport {
        query: *q,
        closed_form: capacity_closed_form(q)?,
        recurrence_additive: capacity_by_additive_recurrence(q)?,
        recurrence_multiplicative: capacity_by_multiplicative_recurrence(q)?,
        enumerated,
    })
}

/// Result of the exhaustive feasibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Codebook),
    /// Every subset and sign assignment was ruled out.
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides by exhaustive search whether `n` elements fit in `k` analyses,
/// returning a witness codebook when they do.
///
/// Works from its own pool: all non-constant vectors, one per antipodal
/// pair, represented by the lexicographically smaller member. Without
/// balancing any `n` distinct pairs work, so the answer is a count. With
/// balancing, a forward sweep tracks every reachable (chosen count, row
/// sums) state across include-as-is, include-inverted and exclude choices;
/// the instance is feasible iff `(n, 0)` is reachable at the end.
pub fn feasibility_oracle(
    s: AlphabetSize,
    k: usize,
    n: usize,
    balanced: bool,
) -> Result<Feasibility> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "element count must be at least 1".into(),
        ));
    }
    let power = checked_power(s, CapacityQuery::new(s, k)?.analyses)?;
    if power > ORACLE_SCALE_BOUND {
        return Err(Error::ScaleGuard(format!(
            "{s}^{k} = {power} exceeds {ORACLE_SCALE_BOUND}"
        )));
    }

    let pool: Vec<StateVector> = codebook::enumerate_vectors(s, k)?
        .into_iter()
        .filter(|v| !v.entries().windows(2).all(|w| w[0] == w[1]))
        .filter(|v| *v < v.invert())
        .collect();

    if n > pool.len() {
        return Ok(Feasibility::Infeasible);
    }
    if !balanced {
        let codes = pool.into_iter().take(n).collect();
        return Ok(Feasibility::Feasible(Codebook::new(s, k, codes, false)?));
    }

    match sweep(&pool, k, n)? {
        Some(codes) => Ok(Feasibility::Feasible(Codebook::new(s, k, codes, true)?)),
        None => Ok(Feasibility::Infeasible),
    }
}

type SweepState = (usize, Vec<i32>);

fn sweep(pool: &[StateVector], k: usize, n: usize) -> Result<Option<Vec<StateVector>>> {
    // remaining_abs[i][j]: sum over pool[i..] of |entry j|
    let mut remaining_abs = vec![vec![0i32; k]; pool.len() + 1];
    for i in (0..pool.len()).rev() {
        let (head, tail) = remaining_abs.split_at_mut(i + 1);
        for ((acc, &next), &e) in head[i].iter_mut().zip(&tail[0]).zip(pool[i].entries()) {
            *acc = next + e.abs();
        }
    }

    // layers[i] maps each state reached after deciding pool[..i] to
    // (index of predecessor state in layers[i-1], choice in {-1, 0, 1}).
    let mut layers: Vec<Vec<(SweepState, usize, i32)>> = vec![vec![((0, vec![0; k]), 0, 0)]];
    for (i, v) in pool.iter().enumerate() {
        let left = pool.len() - i - 1;
        let mut next: Vec<(SweepState, usize, i32)> = Vec::new();
        let mut index: HashMap<SweepState, usize> = HashMap::new();
        for (from, ((count, sums), _, _)) in layers[i].iter().enumerate() {
            for choice in [0, 1, -1] {
                let count = count + usize::from(choice != 0);
                if count > n || count + left < n {
                    continue;
                }
                let sums: Vec<i32> = sums
                    .iter()
                    .zip(v.entries())
                    .map(|(s, e)| s + choice * e)
                    .collect();
                if sums
                    .iter()
                    .zip(&remaining_abs[i + 1])
                    .any(|(s, r)| s.abs() > *r)
                {
                    continue;
                }
                let state = (count, sums);
                if !index.contains_key(&state) {
                    index.insert(state.clone(), next.len());
                    next.push((state, from, choice));
                }
            }
        }
        if next.len() > ORACLE_STATE_BUDGET {
            return Err(Error::ScaleGuard(format!(
                "more than {ORACLE_STATE_BUDGET} reachable states"
            )));
        }
        layers.push(next);
    }

    let last = layers.last().expect("at least one layer");
    let Some(mut at) = last
        .iter()
        .position(|((count, sums), _, _)| *count == n && sums.iter().all(|&s| s == 0))
    else {
        return Ok(None);
    };

    let mut codes = Vec::with_capacity(n);
    for i in (0..pool.len()).rev() {
        let (_, from, choice) = &layers[i + 1][at];
        if *choice != 0 {
            codes.push(pool[i].scaled(*choice));
        }
        at = *from;
    }
    codes.reverse();
    Ok(Some(codes))
}
