//! State vectors over a symmetric alphabet and codebooks built from them.
//!
//! An analysis has `s` possible outcomes, encoded as the integers
//! `-(s-1)/2 ..= (s-1)/2`. A [`StateVector`] holds one value per analysis.
//! Each element of the system under test gets one vector as its code; a
//! single anomalous element of positive polarity reproduces its code as the
//! outcome of the whole run, one of negative polarity reproduces the
//! inverted code. A [`Codebook`] is valid when no outcome is ambiguous: codes
//! are pairwise distinct, no code is the inverse of another, and no code is
//! constant (a constant code cannot be told apart from a clean run or from
//! its own inverse on a symmetric instrument).

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::capacity;
use crate::error::{Error, Result};

/// Number of outcome states per analysis. Always odd and at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphabetSize(u32);

impl AlphabetSize {
    /// The three-state alphabet of a two-pan balance.
    pub const THREE: AlphabetSize = AlphabetSize(3);

    pub fn new(s: u32) -> Result<Self> {
        if s < 3 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be at least 3, got {s}"
            )));
        }
        if s.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be odd so that 0 is its own inverse, got {s}"
            )));
        }
        if s > i32::MAX as u32 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {s} is too large"
            )));
        }
        Ok(AlphabetSize(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest magnitude in the alphabet, `(s-1)/2`.
    pub fn max_magnitude(self) -> i32 {
        ((self.0 - 1) / 2) as i32
    }

    pub fn contains(self, value: i32) -> bool {
        value.unsigned_abs() <= self.max_magnitude() as u32
    }

    /// Alphabet values in ascending order.
    pub fn values(self) -> impl Iterator<Item = i32> + Clone {
        let m = self.max_magnitude();
        -m..=m
    }

    /// Nonzero alphabet values in ascending order.
    pub fn nonzero_values(self) -> impl Iterator<Item = i32> + Clone {
        self.values().filter(|&v| v != 0)
    }
}

impl fmt::Display for AlphabetSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One value per analysis: an element's code, or the outcome of a full run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector(Vec<i32>);

impl StateVector {
    pub fn new(entries: Vec<i32>) -> Self {
        StateVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        StateVector(vec![0; len])
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.0
    }

    /// Elementwise negation.
    pub fn invert(&self) -> StateVector {
        StateVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True iff all entries are equal.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The member of `{v, -v}` whose first nonzero entry is positive.
    pub fn canonical_representative(&self) -> Result<StateVector> {
        match self.0.iter().find(|&&e| e != 0) {
            None => Err(Error::ZeroVector),
            Some(&first) if first > 0 => Ok(self.clone()),
            Some(_) => Ok(self.invert()),
        }
    }

    /// Multiplies every entry by `sign`.
    pub fn scaled(&self, sign: i32) -> StateVector {
        StateVector(self.0.iter().map(|e| e * sign).collect())
    }

    pub(crate) fn fits(&self, states: AlphabetSize) -> bool {
        self.0.iter().all(|&e| states.contains(e))
    }
}

impl From<Vec<i32>> for StateVector {
    fn from(entries: Vec<i32>) -> Self {
        StateVector(entries)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

pub fn invert(v: &StateVector) -> StateVector {
    v.invert()
}

pub fn is_constant(v: &StateVector) -> bool {
    v.is_constant()
}

pub fn canonical_representative(v: &StateVector) -> Result<StateVector> {
    v.canonical_representative()
}

fn check_analyses(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "analysis count must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Lexicographic iterator over every vector of length `k`.
#[derive(Debug, Clone)]
pub struct VectorIter {
    current: Option<Vec<i32>>,
    max: i32,
}

impl Iterator for VectorIter {
    type Item = StateVector;

    fn next(&mut self) -> Option<StateVector> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        // odometer step from the last position
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos] < self.max {
                cur[pos] += 1;
                break;
            }
            cur[pos] = -self.max;
        }
        Some(StateVector(out))
    }
}

/// Lazily enumerates all `s^k` vectors in lexicographic order.
pub fn vectors(s: AlphabetSize, k: usize) -> Result<VectorIter> {
    check_analyses(k)?;
    let max = s.max_magnitude();
    Ok(VectorIter {
        current: Some(vec![-max; k]),
        max,
    })
}

/// All `s^k` vectors, lexicographic with the alphabet ordered ascending.
pub fn enumerate_vectors(s: AlphabetSize, k: usize) -> Result<Vec<StateVector>> {
    Ok(vectors(s, k)?.collect())
}

fn admissible_iter(s: AlphabetSize, k: usize) -> Result<impl Iterator<Item = StateVector>> {
    // A vector is its own canonical form iff its first nonzero entry is positive.
    Ok(vectors(s, k)?.filter(|v| {
        !v.is_constant()
            && v.entries()
                .iter()
                .find(|&&e| e != 0)
                .is_some_and(|&e| e > 0)
    }))
}

/// Canonical representatives of all non-constant antipodal pairs, in lexicographic order.
///
/// The length is `(s^k - s) / 2`, the capacity for `k` analyses.
pub fn admissible_pairs(s: AlphabetSize, k: usize) -> Result<Vec<StateVector>> {
    Ok(admissible_iter(s, k)?.collect())
}

/// A code assignment: element label `i` (1-based) owns `codes[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codebook {
    states: AlphabetSize,
    analyses: usize,
    codes: Vec<StateVector>,
    balanced: bool,
}

impl Codebook {
    /// Builds a codebook after checking its shape: `k >= 1`, every code has
    /// length `k`, and every entry lies in the alphabet.
    ///
    /// `balanced` requests the zero-row-sum constraint. The flag is also set
    /// when the codes satisfy it anyway, so for a valid codebook it always
    /// equals [`Codebook::rows_balanced`]. The semantic invariants are
    /// checked by [`validate_codebook`], not here.
    pub fn new(
        states: AlphabetSize,
        analyses: usize,
        codes: Vec<StateVector>,
        balanced: bool,
    ) -> Result<Self> {
        check_analyses(analyses)?;
        for (i, code) in codes.iter().enumerate() {
            if code.len() != analyses {
                return Err(Error::InvalidParameter(format!(
                    "code of element {} has length {}, expected {analyses}",
                    i + 1,
                    code.len()
                )));
            }
            if !code.fits(states) {
                return Err(Error::InvalidParameter(format!(
                    "code of element {} = {code} has entries outside the {states}-state alphabet",
                    i + 1
                )));
            }
        }
        let mut cb = Codebook {
            states,
            analyses,
            codes,
            balanced,
        };
        cb.balanced |= cb.rows_balanced();
        Ok(cb)
    }

    pub fn states(&self) -> AlphabetSize {
        self.states
    }

    pub fn analyses(&self) -> usize {
        self.analyses
    }

    /// Number of elements `n`.
    pub fn elements(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[StateVector] {
        &self.codes
    }

    /// Code of the element with the given 1-based label.
    pub fn code(&self, label: usize) -> Option<&StateVector> {
        label.checked_sub(1).and_then(|i| self.codes.get(i))
    }

    pub fn balanced(&self) -> bool {
        self.balanced
    }

    /// Sum of entry `j` over all codes, for every analysis `j`.
    pub fn row_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.analyses];
        for code in &self.codes {
            for (s, &e) in sums.iter_mut().zip(code.entries()) {
                *s += i64::from(e);
            }
        }
        sums
    }

    pub fn rows_balanced(&self) -> bool {
        self.row_sums().iter().all(|&s| s == 0)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_codebook(self)
    }
}

/// One violated codebook invariant. Element labels and analysis indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Duplicate {
        first: usize,
        second: usize,
    },
    AntipodalClash {
        first: usize,
        second: usize,
    },
    ConstantVector {
        element: usize,
    },
    RowImbalance {
        analysis: usize,
        sum: i64,
        positive: usize,
        negative: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate { first, second } => {
                write!(f, "duplicate code: elements {first} and {second}")
            }
            Violation::AntipodalClash { first, second } => {
                write!(f, "antipodal clash: elements {first} and {second} are inverses")
            }
            Violation::ConstantVector { element } => {
                write!(f, "constant vector: element {element}")
            }
            Violation::RowImbalance {
                analysis,
                sum,
                positive,
                negative,
            } => write!(
                f,
                "row imbalance: analysis {analysis} sums to {sum} ({positive} positive, {negative} negative entries)"
            ),
        }
    }
}

/// Every violated invariant of a codebook; empty iff the codebook is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            v.fmt(f)?;
        }
        Ok(())
    }
}

/// Lists duplicates, antipodal clashes, constant codes and (when the
/// codebook is flagged balanced) unbalanced analyses.
pub fn validate_codebook(cb: &Codebook) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen: HashMap<&StateVector, usize> = HashMap::new();

    for (i, code) in cb.codes.iter().enumerate() {
        let label = i + 1;
        if code.is_constant() {
            violations.push(Violation::ConstantVector { element: label });
        }
        if let Some(&first) = seen.get(code) {
            violations.push(Violation::Duplicate {
                first,
                second: label,
            });
            continue;
        }
        if !code.is_zero() {
            if let Some(&first) = seen.get(&code.invert()) {
                violations.push(Violation::AntipodalClash {
                    first,
                    second: label,
                });
            }
        }
        seen.insert(code, label);
    }

    if cb.balanced {
        for (j, sum) in cb.row_sums().into_iter().enumerate() {
            if sum != 0 {
                let column = cb.codes.iter().map(|c| c.entries()[j]);
                let positive = column.clone().filter(|&e| e > 0).count();
                let negative = column.filter(|&e| e < 0).count();
                violations.push(Violation::RowImbalance {
                    analysis: j + 1,
                    sum,
                    positive,
                    negative,
                });
            }
        }
    }

    ValidationReport { violations }
}

/// Builds a codebook for `n` elements, `k` analyses and alphabet `s`.
///
/// Without balancing, the first `n` admissible pairs are used as they are.
/// With balancing, a deterministic backtracking search picks `n` admissible
/// pairs and a sign for each so that every analysis sums to zero.
pub fn build_codebook(n: usize, k: usize, s: AlphabetSize, balanced: bool) -> Result<Codebook> {
    check_analyses(k)?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "element count must be at least 1".into(),
        ));
    }
    let capacity = capacity::capacity_closed_form(&capacity::CapacityQuery::new(s, k)?)?;
    if n as u64 > capacity {
        return Err(Error::CapacityExceeded {
            requested: n,
            capacity,
            analyses: k,
            states: s.get(),
        });
    }

    if !balanced {
        let codes = admissible_iter(s, k)?.take(n).collect();
        return Codebook::new(s, k, codes, false);
    }

    let mut pool = admissible_pairs(s, k)?;
    // heaviest vectors first; the light ones at the end act as fine adjustments
    pool.sort_by_key(|v| std::cmp::Reverse(v.entries().iter().map(|e| e.abs()).sum::<i32>()));
    match BalancedSearch::new(&pool, k, n, s.max_magnitude()).run() {
        Some(mut codes) => {
            codes.sort_by(|a, b| {
                let key = |v: &StateVector| v.canonical_representative().expect("nonzero");
                key(a).cmp(&key(b))
            });
            Codebook::new(s, k, codes, true)
        }
        None => Err(Error::PlanInfeasible {
            elements: n,
            analyses: k,
            states: s.get(),
        }),
    }
}

/// Depth-first search over the pool in order. At item `i` the branches are
/// include as is, include inverted, and exclude (only while enough items
/// remain), tried in order of the squared norm of the resulting partial
/// sums. A branch is cut when some partial row sum exceeds what the
/// remaining picks could still contribute, or, when every remaining item
/// must be taken, when that row's parity cannot reach zero. Failed states
/// are memoized.
struct BalancedSearch<'a> {
    pool: &'a [StateVector],
    analyses: usize,
    need: usize,
    max_magnitude: i64,
    // suffix_abs[i][j] = sum over pool[i..] of |entry j|
    suffix_abs: Vec<Vec<i64>>,
    sums: Vec<i64>,
    chosen: Vec<(usize, i32)>,
    failed: HashSet<(usize, usize, Vec<i64>)>,
    // pool items are canonical, so this maps a canonical vector to its slot
    position: HashMap<&'a StateVector, usize>,
    parity: Option<ParityTable>,
}

impl<'a> BalancedSearch<'a> {
    fn new(pool: &'a [StateVector], analyses: usize, need: usize, max_magnitude: i32) -> Self {
        let mut suffix_abs = vec![vec![0i64; analyses]; pool.len() + 1];
        for i in (0..pool.len()).rev() {
            let (head, tail) = suffix_abs.split_at_mut(i + 1);
            for ((acc, &next), &e) in head[i].iter_mut().zip(&tail[0]).zip(pool[i].entries()) {
                *acc = next + i64::from(e.unsigned_abs());
            }
        }
        BalancedSearch {
            pool,
            analyses,
            need,
            max_magnitude: i64::from(max_magnitude),
            suffix_abs,
            sums: vec![0; analyses],
            chosen: Vec::with_capacity(need),
            failed: HashSet::new(),
            position: pool.iter().enumerate().map(|(i, v)| (v, i)).collect(),
            parity: ParityTable::new(pool, analyses, need),
        }
    }

    fn run(mut self) -> Option<Vec<StateVector>> {
        if !self.descend(0) {
            return None;
        }
        Some(
            self.chosen
                .iter()
                .map(|&(i, sign)| self.pool[i].scaled(sign))
                .collect(),
        )
    }

    fn viable(&self, i: usize, remaining: usize) -> bool {
        let must_take_all = remaining == self.pool.len() - i;
        let per_pick = remaining as i64 * self.max_magnitude;
        self.sums
            .iter()
            .zip(&self.suffix_abs[i])
            .all(|(&sum, &reach)| {
                sum.abs() <= reach.min(per_pick) && (!must_take_all || (sum + reach) % 2 == 0)
            })
            && self
                .parity
                .as_ref()
                .is_none_or(|t| t.reachable(i, remaining, parity_mask(&self.sums)))
    }

    fn apply(&mut self, i: usize, sign: i32) {
        for (s, &e) in self.sums.iter_mut().zip(self.pool[i].entries()) {
            *s += i64::from(sign * e);
        }
    }

    fn norm_after(&self, i: usize, sign: i32) -> i64 {
        self.sums
            .iter()
            .zip(self.pool[i].entries())
            .map(|(&s, &e)| {
                let t = s + i64::from(sign * e);
                t * t
            })
            .sum()
    }

    /// With one pick left, the only candidate is `-sums` itself.
    fn close_with_one(&mut self, i: usize) -> bool {
        let target: Vec<i32> = self.sums.iter().map(|&s| -s as i32).collect();
        let target = StateVector::new(target);
        let Ok(canonical) = target.canonical_representative() else {
            return false;
        };
        match self.position.get(&canonical) {
            Some(&at) if at >= i => {
                let sign = if canonical == target { 1 } else { -1 };
                self.apply(at, sign);
                self.chosen.push((at, sign));
                true
            }
            _ => false,
        }
    }

    fn descend(&mut self, i: usize) -> bool {
        let remaining = self.need - self.chosen.len();
        if remaining == 0 {
            return self.sums.iter().all(|&s| s == 0);
        }
        if self.pool.len() - i < remaining || !self.viable(i, remaining) {
            return false;
        }
        if remaining == 1 {
            return self.close_with_one(i);
        }
        let key = (i, remaining, self.sums.clone());
        if self.failed.contains(&key) {
            return false;
        }

        // 0 = exclude
        let (better, worse) = if self.norm_after(i, -1) < self.norm_after(i, 1) {
            (-1, 1)
        } else {
            (1, -1)
        };
        let branches = if self.pool.len() - i > remaining {
            vec![better, 0, worse]
        } else {
            vec![better, worse]
        };
        for sign in branches {
            if sign == 0 {
                if self.descend(i + 1) {
                    return true;
                }
                continue;
            }
            self.apply(i, sign);
            self.chosen.push((i, sign));
            if self.descend(i + 1) {
                return true;
            }
            self.chosen.pop();
            self.apply(i, -sign);
        }

        debug_assert_eq!(self.sums.len(), self.analyses);
        self.failed.insert(key);
        false
    }
}

fn parity_mask<T: Copy + Into<i64>>(values: &[T]) -> usize {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.into() % 2 != 0)
        .fold(0, |mask, (j, _)| mask | 1 << j)
}

/// Row-sum parities are independent of signs (`e` and `-e` agree mod 2), so
/// they depend only on which items are chosen. `reachable(i, r, p)` tells
/// whether some `r` items of `pool[i..]` have row parities XOR-ing to `p`.
struct ParityTable {
    need: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ParityTable {
    const MAX_WORDS: usize = 1 << 22;

    fn new(pool: &[StateVector], analyses: usize, need: usize) -> Option<Self> {
        if analyses >= usize::BITS as usize - 1 {
            return None;
        }
        let masks = 1usize << analyses;
        let words = masks.div_ceil(64);
        let total = (pool.len() + 1).checked_mul(need + 1)?.checked_mul(words)?;
        if total > Self::MAX_WORDS {
            return None;
        }
        let mut t = ParityTable {
            need,
            words,
            bits: vec![0; total],
        };
        t.set(pool.len(), 0, 0);
        for i in (0..pool.len()).rev() {
            let item = parity_mask(pool[i].entries());
            for r in 0..=need {
                for p in 0..masks {
                    let skip = t.get(i + 1, r, p);
                    let take = r > 0 && t.get(i + 1, r - 1, p ^ item);
                    if skip || take {
                        t.set(i, r, p);
                    }
                }
            }
        }
        Some(t)
    }

    fn offset(&self, i: usize, r: usize) -> usize {
        (i * (self.need + 1) + r) * self.words
    }

    fn get(&self, i: usize, r: usize, p: usize) -> bool {
        self.bits[self.offset(i, r) + p / 64] >> (p % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, r: usize, p: usize) {
        let at = self.offset(i, r) + p / 64;
        self.bits[at] |= 1 << (p % 64);
    }

    fn reachable(&self, i: usize, r: usize, p: usize) -> bool {
        self.get(i, r, p)
    }
}
