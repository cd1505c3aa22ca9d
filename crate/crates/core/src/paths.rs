//! Centred Catalan sets, Dyck paths and Motzkin paths.
//!
//! Sets are encoded as `{-3,-1,0,1,3,4}` and Motzkin paths as strings over
//! `U`, `F`, `D`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::{LimitError, Limits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("set must be non-empty")]
    Empty,
    #[error("elements must be strictly increasing")]
    NotSorted,
    #[error("0 is missing")]
    MissingZero,
    #[error("element {value} outside {{-{bound},...,{bound}}}")]
    OutOfRange { value: i64, bound: i64 },
    #[error("only {count} elements in {{-{i},...,{i}}}, need {}", i + 1)]
    Density { i: i64, count: usize },
    #[error("path dips below the axis after step {position}")]
    BelowAxis { position: usize },
    #[error("path ends at height {height}")]
    NonzeroEnd { height: i64 },
    #[error("invalid step {0}")]
    InvalidStep(i64),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// An `n`-subset of `{-n+1,…,n-1}` containing 0 with
/// `|S ∩ {-i,…,i}| ≥ i+1` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CentredCatalanSet {
    elements: Vec<i64>,
}

impl CentredCatalanSet {
    /// Validates a strictly increasing element list.
    pub fn new(elements: Vec<i64>) -> Result<Self, PathError> {
        if elements.is_empty() {
            return Err(PathError::Empty);
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PathError::NotSorted);
        }
        let n = elements.len() as i64;
        if let Some(&value) = elements.iter().find(|x| x.abs() > n - 1) {
            return Err(PathError::OutOfRange { value, bound: n - 1 });
        }
        if elements.binary_search(&0).is_err() {
            return Err(PathError::MissingZero);
        }
        for i in 0..n {
            let count = elements.iter().filter(|x| x.abs() <= i).count();
            if (count as i64) < i + 1 {
                return Err(PathError::Density { i, count });
            }
        }
        Ok(CentredCatalanSet { elements })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut elements: Vec<i64>) -> Result<Self, PathError> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    /// `{0}`, the identity for concatenation.
    pub fn unit() -> Self {
        CentredCatalanSet { elements: vec![0] }
    }

    /// `{-i,…,i}`.
    pub fn symmetric(i: i64) -> Self {
        CentredCatalanSet { elements: (-i..=i).collect() }
    }

    /// `{0,1,…,m-1}`.
    pub fn staircase(m: usize) -> Self {
        assert!(m >= 1);
        CentredCatalanSet { elements: (0..m as i64).collect() }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Negative elements `s_1 < … < s_u'`, ascending.
    pub fn negatives(&self) -> &[i64] {
        let z = self.zero_index();
        &self.elements[..z]
    }

    /// Positive elements, ascending.
    pub fn positives(&self) -> &[i64] {
        let z = self.zero_index();
        &self.elements[z + 1..]
    }

    fn zero_index(&self) -> usize {
        self.elements.binary_search(&0).expect("0 is always present")
    }

    /// Reads `0,-1,1,-2,2,…,n` and steps NE exactly on members.
    pub fn dyck_path(&self) -> DyckPath {
        let n = self.size() as i64;
        let mut steps = Vec::with_capacity(2 * n as usize);
        steps.push(DyckStep::from_member(self.contains(0)));
        for i in 1..n {
            steps.push(DyckStep::from_member(self.contains(-i)));
            steps.push(DyckStep::from_member(self.contains(i)));
        }
        steps.push(DyckStep::SE);
        DyckPath { steps }
    }

    /// `m_i = |{-i,i} ∩ S| - 1` for `i = 1,…,n-1`.
    pub fn motzkin_path(&self) -> MotzkinPath {
        let n = self.size() as i64;
        let steps = (1..n)
            .map(|i| self.contains(-i) as i8 + self.contains(i) as i8 - 1)
            .collect();
        MotzkinPath { steps }
    }

    /// `S1 ∘ S2 = S1 ∪ 𝔰_{|S1|-1}(S2)` where `𝔰_m` moves positive elements
    /// up by `m` and negative ones down by `m`.
    pub fn concat(&self, other: &Self) -> Self {
        let m = self.size() as i64 - 1;
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().filter(|&&x| x != 0).map(|&x| x + m * x.signum()));
        elements.sort_unstable();
        CentredCatalanSet { elements }
    }

    pub fn is_irreducible(&self) -> bool {
        self.motzkin_path().is_irreducible()
    }

    /// Splits at the first interior return of the Motzkin path to height 0.
    /// `n1` is the length of the first path; `None` if no return there.
    pub fn split_at(&self, n1: usize) -> Option<(Self, Self)> {
        let heights = self.motzkin_path().heights();
        if n1 == 0 || n1 >= heights.len() - 1 || heights[n1] != 0 {
            return None;
        }
        let k = n1 as i64;
        let first = self.elements.iter().copied().filter(|x| x.abs() <= k).collect();
        let mut second: Vec<i64> = std::iter::once(0)
            .chain(self.elements.iter().filter(|x| x.abs() > k).map(|&x| x - k * x.signum()))
            .collect();
        second.sort_unstable();
        Some((CentredCatalanSet { elements: first }, CentredCatalanSet { elements: second }))
    }

    /// Unique factorization into irreducible sets; `{0}` has no factors.
    pub fn irreducible_factors(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        loop {
            let heights = rest.motzkin_path().heights();
            match (1..heights.len().saturating_sub(1)).find(|&i| heights[i] == 0) {
                Some(i) => {
                    let (a, b) = rest.split_at(i).expect("height returns to zero");
                    out.push(a);
                    rest = b;
                }
                None => {
                    if rest.size() > 1 {
                        out.push(rest);
                    }
                    return out;
                }
            }
        }
    }
}

impl fmt::Display for CentredCatalanSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for CentredCatalanSet {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(PathError::Empty);
        }
        let elements = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| PathError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(elements)
    }
}

impl TryFrom<String> for CentredCatalanSet {
    type Error = PathError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CentredCatalanSet> for String {
    fn from(s: CentredCatalanSet) -> String {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DyckStep {
    NE,
    SE,
}

impl DyckStep {
    fn from_member(member: bool) -> Self {
        if member {
            DyckStep::NE
        } else {
            DyckStep::SE
        }
    }

    pub fn delta(self) -> i64 {
        match self {
            DyckStep::NE => 1,
            DyckStep::SE => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<DyckStep>,
}

impl DyckPath {
    pub fn new(steps: Vec<DyckStep>) -> Result<Self, PathError> {
        check_heights(steps.iter().map(|s| s.delta()))?;
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[DyckStep] {
        &self.steps
    }

    /// Averages steps `2i` and `2i+1` (1-based) into a Motzkin step.
    pub fn motzkin_average(&self) -> MotzkinPath {
        let n = self.steps.len() / 2;
        let steps = (1..n)
            .map(|i| ((self.steps[2 * i - 1].delta() + self.steps[2 * i].delta()) / 2) as i8)
            .collect();
        MotzkinPath { steps }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

fn check_heights(deltas: impl Iterator<Item = i64>) -> Result<(), PathError> {
    let mut h = 0;
    for (position, d) in deltas.enumerate() {
        h += d;
        if h < 0 {
            return Err(PathError::BelowAxis { position: position + 1 });
        }
    }
    if h != 0 {
        return Err(PathError::NonzeroEnd { height: h });
    }
    Ok(())
}

/// Steps in `{+1, 0, -1}` with nonnegative prefix sums and total 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MotzkinPath {
    steps: Vec<i8>,
}

impl MotzkinPath {
    pub fn new(steps: Vec<i8>) -> Result<Self, PathError> {
        if let Some(&bad) = steps.iter().find(|s| !(-1..=1).contains(*s)) {
            return Err(PathError::InvalidStep(bad as i64));
        }
        check_heights(steps.iter().map(|&s| s as i64))?;
        Ok(MotzkinPath { steps })
    }

    pub fn empty() -> Self {
        MotzkinPath { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `h_0 = 0, h_1, …, h_n`.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64];
        for &s in &self.steps {
            h.push(h[h.len() - 1] + s as i64);
        }
        h
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        MotzkinPath { steps }
    }

    /// Nonempty and touching the axis only at its endpoints.
    pub fn is_irreducible(&self) -> bool {
        let h = self.heights();
        !self.is_empty() && h[1..h.len() - 1].iter().all(|&x| x != 0)
    }

    pub fn irreducible_factors(&self) -> Vec<Self> {
        let h = self.heights();
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &hi) in h.iter().enumerate().skip(1) {
            if hi == 0 {
                out.push(MotzkinPath { steps: self.steps[start..i].to_vec() });
                start = i;
            }
        }
        out
    }

    /// Area between the path and the axis, `Σ (h_{i-1} + h_i) / 2`.
    pub fn area(&self) -> u64 {
        let h = self.heights();
        let twice: i64 = h.windows(2).map(|w| w[0] + w[1]).sum();
        assert!(twice % 2 == 0, "non-integral area for {self}");
        (twice / 2) as u64
    }

    /// All sets mapping to this path: flat steps pick `-i` or `i`.
    pub fn preimage(&self) -> Vec<CentredCatalanSet> {
        let mut out = vec![vec![0i64]];
        for (k, &s) in self.steps.iter().enumerate() {
            let i = k as i64 + 1;
            match s {
                1 => out.iter_mut().for_each(|e| e.extend([-i, i])),
                -1 => {}
                _ => {
                    let mut twin = out.clone();
                    out.iter_mut().for_each(|e| e.push(-i));
                    twin.iter_mut().for_each(|e| e.push(i));
                    out.extend(twin);
                }
            }
        }
        let mut sets: Vec<_> = out
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                CentredCatalanSet { elements: e }
            })
            .collect();
        sets.sort();
        sets
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            f.write_str(match s {
                1 => "U",
                0 => "F",
                _ => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(1),
                'F' | 'f' => Ok(0),
                'D' | 'd' => Ok(-1),
                _ => Err(PathError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        Self::new(steps)
    }
}

impl TryFrom<String> for MotzkinPath {
    type Error = PathError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<MotzkinPath> for String {
    fn from(m: MotzkinPath) -> String {
        m.to_string()
    }
}

/// All centred Catalan sets of size `n`, in lexicographic order.
pub fn enumerate_sets(n: usize, limits: &Limits) -> Result<Vec<CentredCatalanSet>, LimitError> {
    limits.check_set_size(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut sets: Vec<_> = enumerate_motzkin(n - 1, &Limits::unbounded())?
        .iter()
        .flat_map(|m| m.preimage())
        .collect();
    sets.sort();
    Ok(sets)
}

pub fn enumerate_irreducible_sets(n: usize, limits: &Limits) -> Result<Vec<CentredCatalanSet>, LimitError> {
    Ok(enumerate_sets(n, limits)?.into_iter().filter(|s| s.is_irreducible()).collect())
}

/// All Motzkin paths of length `n`, in the order `D < F < U`.
pub fn enumerate_motzkin(n: usize, limits: &Limits) -> Result<Vec<MotzkinPath>, LimitError> {
    limits.check_path_length(n)?;
    fn rec(n: usize, h: i64, cur: &mut Vec<i8>, out: &mut Vec<MotzkinPath>) {
        let left = (n - cur.len()) as i64;
        if left == 0 {
            if h == 0 {
                out.push(MotzkinPath { steps: cur.clone() });
            }
            return;
        }
        for s in [-1i8, 0, 1] {
            let h2 = h + s as i64;
            // Must still be able to get back down in the remaining steps.
            if h2 >= 0 && h2 < left {
                cur.push(s);
                rec(n, h2, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

pub fn enumerate_irreducible_motzkin(n: usize, limits: &Limits) -> Result<Vec<MotzkinPath>, LimitError> {
    Ok(enumerate_motzkin(n, limits)?.into_iter().filter(|m| m.is_irreducible()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> CentredCatalanSet {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(set("{-3,-1,0,1,3,4}").size(), 6);
        assert_eq!(set("{0}").size(), 1);
        assert!(matches!("{-2,0,2}".parse::<CentredCatalanSet>(), Err(PathError::Density { i: 1, count: 1 })));
        assert!(matches!("{0,2}".parse::<CentredCatalanSet>(), Err(PathError::OutOfRange { .. })));
        assert!(matches!("{-1,1}".parse::<CentredCatalanSet>(), Err(PathError::MissingZero)));
        assert!(matches!(CentredCatalanSet::new(vec![1, 0]), Err(PathError::NotSorted)));
        assert!(matches!("{-1,1,2}".parse::<CentredCatalanSet>(), Err(PathError::MissingZero)));
    }

    #[test]
    fn dyck_reading() {
        use DyckStep::*;
        assert_eq!(
            set("{-3,-1,0,1,3,4}").dyck_path().steps(),
            &[NE, NE, NE, SE, SE, NE, NE, SE, NE, SE, SE, SE]
        );
        assert_eq!(set("{0}").dyck_path().steps(), &[NE, SE]);
        assert_eq!(set("{-1,0,1}").dyck_path().steps(), &[NE, NE, NE, SE, SE, SE]);
    }

    #[test]
    fn motzkin_of_sets() {
        assert_eq!(set("{-3,-1,0,1,3,4}").motzkin_path().steps(), &[1, -1, 1, 0, -1]);
        assert!(set("{0}").motzkin_path().is_empty());
        assert_eq!(set("{-2,-1,0,1,2}").motzkin_path().to_string(), "UUDD");
    }

    #[test]
    fn concatenation() {
        assert_eq!(set("{-1,0,1}").concat(&set("{-1,0,1,2}")), set("{-3,-1,0,1,3,4}"));
        let s = set("{-2,-1,0,1,3}");
        assert_eq!(CentredCatalanSet::unit().concat(&s), s);
        assert_eq!(s.concat(&CentredCatalanSet::unit()), s);
        assert_eq!(set("{0,1}").concat(&set("{0,1}")), set("{0,1,2}"));
    }

    #[test]
    fn factorization() {
        assert_eq!(set("{-3,-1,0,1,3,4}").irreducible_factors(), vec![set("{-1,0,1}"), set("{-1,0,1,2}")]);
        assert_eq!(set("{-1,0,1}").irreducible_factors(), vec![set("{-1,0,1}")]);
        assert_eq!(set("{0,1,2}").irreducible_factors(), vec![set("{0,1}"), set("{0,1}")]);
        assert!(set("{0}").irreducible_factors().is_empty());
        assert_eq!(set("{-3,-1,0,1,3,4}").split_at(1), None);
    }

    #[test]
    fn areas() {
        let m = |s: &str| s.parse::<MotzkinPath>().unwrap();
        assert_eq!(m("UD").area(), 1);
        assert_eq!(m("").area(), 0);
        assert_eq!(m("UUDD").area(), 4);
        assert_eq!(m("UFD").area(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let lim = Limits::unbounded();
        assert_eq!(enumerate_sets(3, &lim).unwrap().len(), 5);
        assert_eq!(enumerate_motzkin(0, &lim).unwrap().len(), 1);
        assert_eq!(enumerate_motzkin(4, &lim).unwrap().len(), 9);
        let ms: Vec<String> = enumerate_motzkin(3, &lim).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(ms, ["FFF", "FUD", "UDF", "UFD"]);
        assert!(enumerate_sets(9, &Limits::default()).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("UX".parse::<MotzkinPath>().is_err());
        assert!(matches!("DU".parse::<MotzkinPath>(), Err(PathError::BelowAxis { position: 1 })));
        assert!(matches!("U".parse::<MotzkinPath>(), Err(PathError::NonzeroEnd { height: 1 })));
        assert!("{}".parse::<CentredCatalanSet>().is_err());
        assert!("{0,a}".parse::<CentredCatalanSet>().is_err());
    }
}
