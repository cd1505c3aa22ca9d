//! Alternating sign trapezoids: validation, enumeration, counting and the
//! maps to centred Catalan sets and Motzkin paths.
//!
//! Row `i` (1 = bottom) of an `(n,l)`-trapezoid covers the column labels
//! `-i+1,…,l+i-1`. Read from the top, every column's partial sum stays in
//! `{0,1}`; enumeration and counting work with the set of columns whose
//! partial sum is currently 1, stored as a bitmask.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::{LimitError, Limits};
use crate::paths::{CentredCatalanSet, MotzkinPath, PathError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrapezoidError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("row {row} does not sum to 1")]
    RowSum { row: usize },
    #[error("nonzero entries of row {row} do not alternate")]
    RowAlternation { row: usize },
    #[error("nonzero entries of column {label} do not alternate")]
    ColumnAlternation { label: i64 },
    #[error("central column {label} does not sum to 0")]
    CentralColumnSum { label: i64 },
    #[error("first nonzero entry from the top of column {label} is negative")]
    TopSign { label: i64 },
    #[error("cannot parse trapezoid: {0}")]
    Parse(String),
    #[error("catalan set does not factor after {n1} rows")]
    NotFactorable { n1: usize },
    #[error("upper part has base {found}, expected {expected}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("base {0} is too small; need at least 2")]
    BaseTooSmall(usize),
    #[error("set of size {size} needs {} rows, trapezoid has {rows}", size - 1)]
    SizeMismatch { size: usize, rows: usize },
    #[error("column sums do not give a centred Catalan set: {0}")]
    NotCatalan(PathError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

/// An `(n,l)`-AS-trapezoid; `rows[0]` is the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ASTrapezoid {
    l: usize,
    rows: Vec<Vec<i8>>,
}

impl ASTrapezoid {
    /// Validates every defining condition, reporting the first violation.
    pub fn new(l: usize, rows: Vec<Vec<i8>>) -> Result<Self, TrapezoidError> {
        let a = ASTrapezoid { l, rows };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), TrapezoidError> {
        let (n, l) = (self.n(), self.l);
        if n == 0 {
            return Err(TrapezoidError::Shape("no rows".into()));
        }
        if l == 0 {
            return Err(TrapezoidError::Shape("base parameter must be positive".into()));
        }
        for (k, row) in self.rows.iter().enumerate() {
            let i = k + 1;
            if row.len() != l + 2 * i - 1 {
                return Err(TrapezoidError::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    l + 2 * i - 1
                )));
            }
            if row.iter().any(|x| !(-1..=1).contains(x)) {
                return Err(TrapezoidError::Shape(format!("row {i} has an entry outside {{-1,0,1}}")));
            }
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.iter().map(|&x| x as i64).sum::<i64>() != 1 {
                return Err(TrapezoidError::RowSum { row: k + 1 });
            }
            if !alternates(row.iter().copied()) {
                return Err(TrapezoidError::RowAlternation { row: k + 1 });
            }
        }
        for label in self.labels() {
            let col = self.column_top_down(label);
            if !alternates(col.iter().copied()) {
                return Err(TrapezoidError::ColumnAlternation { label });
            }
            if col.iter().find(|&&x| x != 0) == Some(&-1) {
                return Err(TrapezoidError::TopSign { label });
            }
        }
        for label in 1..l as i64 {
            if self.column_sum(label) != 0 {
                return Err(TrapezoidError::CentralColumnSum { label });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Rows bottom first.
    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// All column labels `-n+1,…,l+n-1`.
    pub fn labels(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.n() as i64;
        -n + 1..=self.l as i64 + n - 1
    }

    /// Entry in row `i` (1 = bottom) and column `label`; 0 outside the row.
    pub fn entry(&self, i: usize, label: i64) -> i8 {
        let offset = label + i as i64 - 1;
        match self.rows.get(i.wrapping_sub(1)) {
            Some(row) if offset >= 0 && (offset as usize) < row.len() => row[offset as usize],
            _ => 0,
        }
    }

    /// Entries of a column from the top row down.
    pub fn column_top_down(&self, label: i64) -> Vec<i8> {
        (1..=self.n()).rev().map(|i| self.entry(i, label)).collect()
    }

    pub fn column_sum(&self, label: i64) -> i64 {
        (1..=self.n()).map(|i| self.entry(i, label) as i64).sum()
    }

    pub fn ones_in_row(&self, i: usize) -> usize {
        self.rows[i - 1].iter().filter(|&&x| x == 1).count()
    }

    /// `S(A)`: positive-sum columns, nonpositive labels shifted by -1,
    /// positive ones by `-(l-1)`, together with 0.
    pub fn catalan_set(&self) -> Result<CentredCatalanSet, TrapezoidError> {
        let l = self.l as i64;
        let elements = self
            .labels()
            .filter(|&c| self.column_sum(c) > 0)
            .map(|c| if c <= 0 { c - 1 } else { c - (l - 1) })
            .chain(std::iter::once(0))
            .collect();
        CentredCatalanSet::from_unsorted(elements).map_err(TrapezoidError::NotCatalan)
    }

    pub fn motzkin_path(&self) -> Result<MotzkinPath, TrapezoidError> {
        Ok(self.catalan_set()?.motzkin_path())
    }

    /// Splits into the bottom `n1` rows and the rest, which becomes an
    /// `(n-n1, l+2n1)`-trapezoid.
    pub fn split(&self, n1: usize) -> Result<(ASTrapezoid, ASTrapezoid), TrapezoidError> {
        let s = self.catalan_set()?;
        if s.split_at(n1).is_none() {
            return Err(TrapezoidError::NotFactorable { n1 });
        }
        let bottom = ASTrapezoid::new(self.l, self.rows[..n1].to_vec())?;
        let top = ASTrapezoid::new(self.l + 2 * n1, self.rows[n1..].to_vec())?;
        Ok((bottom, top))
    }

    /// Places `top` centred above `self`.
    pub fn join(&self, top: &ASTrapezoid) -> Result<ASTrapezoid, TrapezoidError> {
        let expected = self.l + 2 * self.n();
        if top.l != expected {
            return Err(TrapezoidError::BaseMismatch { expected, found: top.l });
        }
        let mut rows = self.rows.clone();
        rows.extend(top.rows.iter().cloned());
        ASTrapezoid::new(self.l, rows)
    }

    fn from_masks(n: usize, l: usize, moves: &[Move]) -> ASTrapezoid {
        // `moves[0]` is the top row.
        let rows = (1..=n)
            .map(|i| {
                let mv = &moves[n - i];
                let lo = n - i;
                (lo..lo + l + 2 * i - 1)
                    .map(|c| {
                        if mv.plus >> c & 1 == 1 {
                            1
                        } else if mv.minus >> c & 1 == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        ASTrapezoid { l, rows }
    }
}

fn alternates(seq: impl Iterator<Item = i8>) -> bool {
    let mut last = 0;
    for x in seq.filter(|&x| x != 0) {
        if x == last {
            return false;
        }
        last = x;
    }
    true
}

impl fmt::Display for ASTrapezoid {
    /// One row per line, bottom row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ASTrapezoid {
    type Err = TrapezoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .lines()
            .filter(|line| !line.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|t| t.parse::<i8>().map_err(|_| TrapezoidError::Parse(format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let first = rows.first().ok_or_else(|| TrapezoidError::Parse("no rows".into()))?;
        if first.len() < 2 {
            return Err(TrapezoidError::Parse("bottom row needs at least two entries".into()));
        }
        ASTrapezoid::new(first.len() - 1, rows)
    }
}

/// One row, as the columns receiving +1 and -1, and the resulting state.
#[derive(Clone, Copy, Debug)]
struct Move {
    plus: u128,
    minus: u128,
    next: u128,
}

/// All rows over global columns `lo..=hi` compatible with state `p`:
/// +1 only where the partial sum is 0, -1 only where it is 1, alternating,
/// starting and ending with +1.
fn row_moves(p: u128, lo: usize, hi: usize, max_ones: usize, out: &mut Vec<Move>) {
    #[allow(clippy::too_many_arguments)]
    fn rec(p: u128, c: usize, hi: usize, want_plus: bool, ones: usize, max_ones: usize, plus: u128, minus: u128, out: &mut Vec<Move>) {
        for d in c..=hi {
            let bit = 1u128 << d;
            let set = p & bit != 0;
            if want_plus && !set {
                if ones + 1 > max_ones {
                    return;
                }
                let plus2 = plus | bit;
                out.push(Move { plus: plus2, minus, next: (p | plus2) & !minus });
                if d + 2 <= hi {
                    rec(p, d + 1, hi, false, ones + 1, max_ones, plus2, minus, out);
                }
            } else if !want_plus && set && d < hi {
                rec(p, d + 1, hi, true, ones, max_ones, plus, minus | bit, out);
            }
        }
    }
    rec(p, lo, hi, true, 0, max_ones, 0, 0, out);
}

/// Column layout of an `(n,l)` trapezoid: global index = label + n - 1.
#[derive(Clone, Copy, Debug)]
struct Layout {
    n: usize,
    l: usize,
}

impl Layout {
    fn col(&self, label: i64) -> usize {
        (label + self.n as i64 - 1) as usize
    }

    fn label(&self, col: usize) -> i64 {
        col as i64 - self.n as i64 + 1
    }

    /// Global column range of row `i`.
    fn range(&self, i: usize) -> (usize, usize) {
        (self.n - i, self.n + self.l + i - 2)
    }

    /// Columns present in row `i+1` but not in row `i`.
    fn exits(&self, i: usize) -> u128 {
        (1u128 << self.col(-(i as i64))) | (1u128 << self.col((self.l + i) as i64))
    }

    fn central(&self) -> u128 {
        (1..self.l as i64).fold(0, |m, c| m | 1u128 << self.col(c))
    }

    /// `C(S)`: the columns that must end with sum 1.
    fn target(&self, s: &CentredCatalanSet) -> u128 {
        let l = self.l as i64;
        s.elements()
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| if x < 0 { x + 1 } else { x + l - 1 })
            .fold(0, |m, c| m | 1u128 << self.col(c))
    }

    fn set_of_mask(&self, mask: u128) -> Result<CentredCatalanSet, TrapezoidError> {
        let l = self.l as i64;
        let elements = (0..self.l + 2 * self.n - 1)
            .filter(|&c| mask >> c & 1 == 1)
            .map(|c| self.label(c))
            .map(|c| if c <= 0 { c - 1 } else { c - (l - 1) })
            .chain(std::iter::once(0))
            .collect();
        CentredCatalanSet::from_unsorted(elements).map_err(TrapezoidError::NotCatalan)
    }
}

/// Restriction to trapezoids with a prescribed catalan set.
#[derive(Clone, Debug)]
struct Target {
    mask: u128,
    /// Upper bound on the number of 1's per row, indexed by row.
    max_ones: Vec<usize>,
}

impl Target {
    fn new(layout: &Layout, s: &CentredCatalanSet) -> Self {
        let heights = s.motzkin_path().heights();
        let max_ones = heights.iter().map(|&h| 1 + h as usize).collect();
        Target { mask: layout.target(s), max_ones }
    }
}

fn check_set_rows(s: &CentredCatalanSet) -> Result<usize, TrapezoidError> {
    if s.size() < 2 {
        return Err(TrapezoidError::SizeMismatch { size: s.size(), rows: 0 });
    }
    Ok(s.size() - 1)
}

struct Frame {
    moves: Vec<Move>,
    next: usize,
}

/// Streaming top-down enumeration of trapezoids.
pub struct TrapezoidIter {
    layout: Layout,
    target: Option<Target>,
    stack: Vec<Frame>,
    chosen: Vec<Move>,
}

impl TrapezoidIter {
    fn new(layout: Layout, target: Option<Target>) -> Self {
        let mut it = TrapezoidIter { layout, target, stack: Vec::new(), chosen: Vec::new() };
        let moves = it.moves_for_row(layout.n, 0);
        it.stack.push(Frame { moves, next: 0 });
        it
    }

    fn moves_for_row(&self, i: usize, p: u128) -> Vec<Move> {
        let (lo, hi) = self.layout.range(i);
        let max_ones = self.target.as_ref().map_or(usize::MAX, |t| t.max_ones[i]);
        let mut out = Vec::new();
        row_moves(p, lo, hi, max_ones, &mut out);
        out
    }

    fn bottom_ok(&self, p: u128) -> bool {
        if p & self.layout.central() != 0 {
            return false;
        }
        match &self.target {
            Some(t) => {
                let (lo, hi) = self.layout.range(1);
                let span = ((1u128 << (hi + 1)) - 1) & !((1u128 << lo) - 1);
                p & span == t.mask & span
            }
            None => true,
        }
    }
}

impl Iterator for TrapezoidIter {
    type Item = ASTrapezoid;

    fn next(&mut self) -> Option<ASTrapezoid> {
        loop {
            let depth = self.stack.len();
            let frame = self.stack.last_mut()?;
            if frame.next == frame.moves.len() {
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            let mv = frame.moves[frame.next];
            frame.next += 1;
            let row = self.layout.n + 1 - depth;
            if row == 1 {
                if self.bottom_ok(mv.next) {
                    let mut moves = self.chosen.clone();
                    moves.push(mv);
                    return Some(ASTrapezoid::from_masks(self.layout.n, self.layout.l, &moves));
                }
                continue;
            }
            let exits = self.layout.exits(row - 1);
            if let Some(t) = &self.target {
                if mv.next & exits != t.mask & exits {
                    continue;
                }
            }
            let moves = self.moves_for_row(row - 1, mv.next);
            self.chosen.push(mv);
            self.stack.push(Frame { moves, next: 0 });
        }
    }
}

/// Every `(n,l)`-trapezoid, each exactly once.
pub fn enumerate_trapezoids(n: usize, l: usize, limits: &Limits) -> Result<TrapezoidIter, TrapezoidError> {
    check_params(n, l, limits)?;
    Ok(TrapezoidIter::new(Layout { n, l }, None))
}

/// Every trapezoid with catalan set `s`, pruned by the per-row bound on 1's.
pub fn enumerate_for_set(s: &CentredCatalanSet, l: usize, limits: &Limits) -> Result<TrapezoidIter, TrapezoidError> {
    let n = check_set_rows(s)?;
    check_params(n, l, limits)?;
    let layout = Layout { n, l };
    let target = Target::new(&layout, s);
    Ok(TrapezoidIter::new(layout, Some(target)))
}

fn check_params(n: usize, l: usize, limits: &Limits) -> Result<(), TrapezoidError> {
    if n == 0 || l == 0 {
        return Err(TrapezoidError::Shape(format!("need n >= 1 and l >= 1, got n={n}, l={l}")));
    }
    limits.check_trapezoid(n, l)?;
    Ok(())
}

/// Layered count over column states. States keep the exited columns unless
/// a target lets them be checked and dropped.
fn count_states(layout: Layout, target: Option<&Target>) -> HashMap<u128, u128> {
    let mut states: HashMap<u128, u128> = HashMap::from([(0, 1)]);
    let mut buf = Vec::new();
    for i in (1..=layout.n).rev() {
        if i < layout.n {
            let exits = layout.exits(i);
            if let Some(t) = target {
                states = states
                    .into_iter()
                    .filter(|(p, _)| p & exits == t.mask & exits)
                    .fold(HashMap::new(), |mut acc, (p, c)| {
                        add_count(&mut acc, p & !exits, c);
                        acc
                    });
            }
        }
        let (lo, hi) = layout.range(i);
        let max_ones = target.map_or(usize::MAX, |t| t.max_ones[i]);
        let mut next: HashMap<u128, u128> = HashMap::with_capacity(states.len());
        for (&p, &c) in &states {
            buf.clear();
            row_moves(p, lo, hi, max_ones, &mut buf);
            for mv in &buf {
                add_count(&mut next, mv.next, c);
            }
        }
        states = next;
    }
    let central = layout.central();
    states.retain(|p, _| p & central == 0);
    if let Some(t) = target {
        let (lo, hi) = layout.range(1);
        let span = ((1u128 << (hi + 1)) - 1) & !((1u128 << lo) - 1);
        states.retain(|p, _| p & span == t.mask & span);
    }
    states
}

fn add_count(map: &mut HashMap<u128, u128>, key: u128, c: u128) {
    let e = map.entry(key).or_insert(0);
    *e = e.checked_add(c).expect("trapezoid count overflows u128");
}

/// Total number of `(n,l)`-trapezoids.
pub fn count_trapezoids(n: usize, l: usize, limits: &Limits) -> Result<u128, TrapezoidError> {
    check_params(n, l, limits)?;
    let states = count_states(Layout { n, l }, None);
    Ok(states.values().fold(0u128, |a, &c| a.checked_add(c).expect("trapezoid count overflows u128")))
}

/// `w_l(S)` at an integer `l` by counting.
pub fn count_for_set(s: &CentredCatalanSet, l: usize, limits: &Limits) -> Result<u128, TrapezoidError> {
    let n = check_set_rows(s)?;
    check_params(n, l, limits)?;
    let layout = Layout { n, l };
    let target = Target::new(&layout, s);
    Ok(count_states(layout, Some(&target)).values().sum())
}

/// How to refine counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Refinement {
    Catalan,
    Motzkin,
}

impl FromStr for Refinement {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "catalan" => Ok(Refinement::Catalan),
            "motzkin" => Ok(Refinement::Motzkin),
            _ => Err(format!("unknown refinement `{s}`")),
        }
    }
}

/// Histogram of trapezoid counts keyed by catalan set or Motzkin path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCount<K: Ord> {
    pub n: usize,
    pub l: usize,
    pub counts: BTreeMap<K, u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub n: usize,
    pub l: usize,
    pub key: String,
    pub count: u128,
}

impl<K: Ord + fmt::Display> RefinedCount<K> {
    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &K) -> u128 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn records(&self) -> Vec<CountRecord> {
        self.counts
            .iter()
            .map(|(k, &count)| CountRecord { n: self.n, l: self.l, key: k.to_string(), count })
            .collect()
    }
}

/// Counts of `(n,l)`-trapezoids for every catalan set of size `n+1`.
pub fn refine_by_set(n: usize, l: usize, limits: &Limits) -> Result<RefinedCount<CentredCatalanSet>, TrapezoidError> {
    check_params(n, l, limits)?;
    let layout = Layout { n, l };
    let mut counts = BTreeMap::new();
    for (p, c) in count_states(layout, None) {
        *counts.entry(layout.set_of_mask(p)?).or_insert(0u128) += c;
    }
    Ok(RefinedCount { n, l, counts })
}

pub fn refine_by_motzkin(n: usize, l: usize, limits: &Limits) -> Result<RefinedCount<MotzkinPath>, TrapezoidError> {
    let by_set = refine_by_set(n, l, limits)?;
    let mut counts = BTreeMap::new();
    for (s, c) in by_set.counts {
        *counts.entry(s.motzkin_path()).or_insert(0u128) += c;
    }
    Ok(RefinedCount { n, l, counts })
}

/// The greedy trapezoid with the maximal number of 1's in every row: fill
/// every allowed position bottom-up and separate them by -1's.
pub fn max_ones_witness(s: &CentredCatalanSet, l: usize) -> Result<ASTrapezoid, TrapezoidError> {
    if l < 2 {
        return Err(TrapezoidError::BaseTooSmall(l));
    }
    let n = check_set_rows(s)?;
    let layout = Layout { n, l };
    let target = layout.target(s);
    let width = l + 2 * n - 1;
    // Last nonzero entry placed in each column, or 0.
    let mut below = vec![0i8; width];
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let (lo, hi) = layout.range(i);
        let allowed: Vec<usize> = (lo..=hi)
            .filter(|&c| below[c] == -1 || (below[c] == 0 && target >> c & 1 == 1))
            .collect();
        let mut row = vec![0i8; hi - lo + 1];
        for w in allowed.windows(2) {
            let between = w[0] + 1..w[1];
            let pick = between
                .clone()
                .find(|&c| below[c] == 1)
                .or_else(|| between.clone().find(|&c| below[c] == 0 && target >> c & 1 == 0))
                .ok_or_else(|| TrapezoidError::Shape(format!("adjacent allowed positions in row {i}")))?;
            row[pick - lo] = -1;
        }
        for &c in &allowed {
            row[c - lo] = 1;
        }
        for (k, &x) in row.iter().enumerate() {
            if x != 0 {
                below[lo + k] = x;
            }
        }
        rows.push(row);
    }
    ASTrapezoid::new(l, rows)
}
