//! Sweeps over root windows, divisibility predicates and ending patterns.
//!
//! Reports never abort on a counterexample; they record it.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, rat};
use crate::algebra::{pochhammer, Rational, UniPoly};
use crate::paths::{enumerate_irreducible_motzkin, enumerate_irreducible_sets, enumerate_motzkin, enumerate_sets};
use crate::paths::{CentredCatalanSet, MotzkinPath};
use crate::weights::{WeightError, WeightStore};

#[derive(Debug, thiserror::Error)]
pub enum ConjectureError {
    #[error("{0} does not end with a down step")]
    NoFinalDown(MotzkinPath),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Limit(#[from] crate::limits::LimitError),
}

/// Smallest path length for which the path root window is claimed.
pub const PATH_WINDOW_FROM: usize = 8;
/// Smallest set size for which the set root window is claimed.
pub const SET_WINDOW_FROM: usize = 11;

pub const ROOT_REPORT_HEADER: &str = "Root windows are claimed only for paths of length at least 8 and sets of size \
at least 11. Below those sizes this report is informational and no violation is flagged.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Set,
    Motzkin,
}

/// `-(n²-5n+7)/(n-3)` for a set of size `n > 3`.
pub fn exceptional_root(n: usize) -> Option<Rational> {
    let n = n as i64;
    (n > 3).then(|| Rational::new((-(n * n - 5 * n + 7)).into(), (n - 3).into()))
}

/// The two sets of size `n` expected to have the exceptional root.
pub fn exceptional_sets(n: usize) -> Vec<CentredCatalanSet> {
    if n < 4 {
        return Vec::new();
    }
    let n = n as i64;
    let a: Vec<i64> = std::iter::once(-n + 2).chain(-1..=n - 3).collect();
    let b: Vec<i64> = (-n + 3..=1).chain(std::iter::once(n - 2)).collect();
    [a, b].into_iter().filter_map(|e| CentredCatalanSet::from_unsorted(e).ok()).collect()
}

/// Integer part of a window: `{-1,…,-bound}`.
fn window_bound(kind: Kind, n: usize) -> i64 {
    match kind {
        Kind::Motzkin => 2 * n as i64 - 2,
        Kind::Set => 2 * n as i64 - 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub kind: Kind,
    pub key: String,
    /// Path length or set size.
    pub n: usize,
    /// Rational roots with multiplicity, descending.
    pub roots: Vec<String>,
    pub in_window: bool,
    /// Whether the window is claimed at this `n`.
    pub claimed: bool,
    /// Sets only: the exceptional root is a root.
    pub has_exceptional: Option<bool>,
    /// Sets only: the set is one of the two named ones.
    pub is_exceptional_set: Option<bool>,
    /// Sets only: containment flags `{-i..i} ⊆ S` against divisibility.
    pub divisibility: Vec<DivisibilityFlag>,
    pub counterexample: bool,
}

fn root_report(kind: Kind, key: String, n: usize, w: &UniPoly, set: Option<&CentredCatalanSet>) -> RootReport {
    let roots = w.rational_roots().unwrap_or_default();
    let bound = window_bound(kind, n);
    let exc = if kind == Kind::Set { exceptional_root(n) } else { None };
    let in_window = roots.iter().all(|r| {
        (r.is_integer() && *r <= rat(-1) && *r >= rat(-bound)) || exc.as_ref() == Some(r)
    });
    let has_exc = set.map(|_| exc.as_ref().is_some_and(|e| roots.contains(e)));
    let is_exc_set = set.map(|s| exceptional_sets(n).contains(s));
    let claimed = match kind {
        Kind::Motzkin => n >= PATH_WINDOW_FROM,
        Kind::Set => n >= SET_WINDOW_FROM,
    };
    let divisibility = set.map(|s| divisibility_flags(s, w)).unwrap_or_default();
    let counterexample = claimed && (!in_window || has_exc != is_exc_set);
    RootReport {
        kind,
        key,
        n,
        roots: roots.iter().map(format_rational).collect(),
        in_window,
        claimed,
        has_exceptional: has_exc,
        is_exceptional_set: is_exc_set,
        divisibility,
        counterexample,
    }
}

/// Window members attained by some root at one `(kind, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSummary {
    pub kind: Kind,
    pub n: usize,
    pub window: Vec<String>,
    pub attained: Vec<String>,
    pub claimed: bool,
}

impl WindowSummary {
    pub fn all_attained(&self) -> bool {
        self.window.len() == self.attained.len()
    }
}

fn summarize(kind: Kind, n: usize, reports: &[RootReport]) -> WindowSummary {
    let mut window: Vec<Rational> = (1..=window_bound(kind, n)).map(|k| rat(-k)).collect();
    if kind == Kind::Set {
        window.extend(exceptional_root(n));
    }
    let seen: BTreeSet<&str> = reports.iter().flat_map(|r| r.roots.iter().map(String::as_str)).collect();
    let window: Vec<String> = window.iter().map(format_rational).collect();
    let attained = window.iter().filter(|w| seen.contains(w.as_str())).cloned().collect();
    let claimed = match kind {
        Kind::Motzkin => n >= PATH_WINDOW_FROM,
        Kind::Set => n >= SET_WINDOW_FROM,
    };
    WindowSummary { kind, n, window, attained, claimed }
}

/// Root reports for all irreducible paths of length `≤ max_size - 1` and
/// irreducible sets of size `≤ max_size`, ordered by kind, `n`, key.
pub fn scan_root_windows(store: &WeightStore, max_size: usize) -> Result<(Vec<RootReport>, Vec<WindowSummary>), ConjectureError> {
    let mut reports = Vec::new();
    let mut summaries = Vec::new();
    for size in 2..=max_size {
        let sets = enumerate_irreducible_sets(size, store.limits())?;
        store.precompute(&sets)?;
        let batch: Vec<RootReport> = sets
            .par_iter()
            .map(|s| Ok(root_report(Kind::Set, s.to_string(), size, &store.set_weight(s)?, Some(s))))
            .collect::<Result<_, WeightError>>()?;
        summaries.push(summarize(Kind::Set, size, &batch));
        reports.extend(batch);
    }
    for len in 1..max_size {
        let paths = enumerate_irreducible_motzkin(len, store.limits())?;
        let batch: Vec<RootReport> = paths
            .par_iter()
            .map(|m| Ok(root_report(Kind::Motzkin, m.to_string(), len, &store.motzkin_weight(m)?, None)))
            .collect::<Result<_, WeightError>>()?;
        summaries.push(summarize(Kind::Motzkin, len, &batch));
        reports.extend(batch);
    }
    Ok((reports, summaries))
}

/// `∏_{k=0}^{⌊(i-1)/2⌋} (l+1+3k)_{i-2k}`.
pub fn conjectured_divisor(i: usize) -> UniPoly {
    let i = i as i64;
    (0..=(i - 1).div_euclid(2))
        .map(|k| pochhammer(&UniPoly::linear(rat(1), rat(1 + 3 * k)), i - 2 * k))
        .fold(UniPoly::one(), |a, b| a * b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityFlag {
    pub i: usize,
    pub contains: bool,
    pub divides: bool,
}

impl DivisibilityFlag {
    pub fn consistent(&self) -> bool {
        self.contains == self.divides
    }
}

/// Flags for `i = 1..=|S|-1`; larger `i` can neither be contained nor divide.
pub fn divisibility_flags(s: &CentredCatalanSet, w: &UniPoly) -> Vec<DivisibilityFlag> {
    (1..s.size())
        .map(|i| DivisibilityFlag {
            i,
            contains: (-(i as i64)..=i as i64).all(|x| s.contains(x)),
            divides: w.is_divisible_by(&conjectured_divisor(i)),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub set: String,
    pub weight: String,
    pub flags: Vec<DivisibilityFlag>,
    /// Some flag with `i ≤ 2` is inconsistent.
    pub proved_part_fails: bool,
    pub counterexample: bool,
}

/// Divisibility flags for every set of size `2..=max_size`.
pub fn scan_divisibility(store: &WeightStore, max_size: usize) -> Result<Vec<DivisibilityReport>, ConjectureError> {
    let mut out = Vec::new();
    for size in 2..=max_size {
        let sets = enumerate_sets(size, store.limits())?;
        store.precompute(&sets)?;
        let batch: Vec<DivisibilityReport> = sets
            .par_iter()
            .map(|s| {
                let w = store.set_weight(s)?;
                let flags = divisibility_flags(s, &w);
                Ok(DivisibilityReport {
                    set: s.to_string(),
                    weight: w.factored(),
                    proved_part_fails: flags.iter().any(|f| f.i <= 2 && !f.consistent()),
                    counterexample: flags.iter().any(|f| !f.consistent()),
                    flags,
                })
            })
            .collect::<Result<_, WeightError>>()?;
        out.extend(batch);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatStepReport {
    pub path: String,
    pub extended: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `M'` is `M` with a flat step inserted before its final down step.
pub fn insert_flat_before_last(m: &MotzkinPath) -> Result<MotzkinPath, ConjectureError> {
    let steps = m.steps();
    if steps.last() != Some(&-1) {
        return Err(ConjectureError::NoFinalDown(m.clone()));
    }
    let mut s = steps.to_vec();
    s.insert(s.len() - 1, 0);
    Ok(MotzkinPath::new(s).expect("inserting a flat step keeps the path valid"))
}

/// `w_l(M') = (l+2n)·w_l(M)` for `M` of length `n`.
pub fn check_flatstep_identity(store: &WeightStore, m: &MotzkinPath) -> Result<FlatStepReport, ConjectureError> {
    let ext = insert_flat_before_last(m)?;
    let lhs = store.motzkin_weight(&ext)?;
    let rhs = UniPoly::linear(rat(1), rat(2 * m.len() as i64)) * store.motzkin_weight(m)?;
    Ok(FlatStepReport {
        path: m.to_string(),
        extended: ext.to_string(),
        holds: lhs == rhs,
        lhs: lhs.factored(),
        rhs: rhs.factored(),
    })
}

/// Every path of length `1..=max_length` ending in a down step.
pub fn scan_flatstep(store: &WeightStore, max_length: usize) -> Result<Vec<FlatStepReport>, ConjectureError> {
    let mut out = Vec::new();
    for len in 1..=max_length {
        for m in enumerate_motzkin(len, store.limits())? {
            if m.steps().last() == Some(&-1) {
                out.push(check_flatstep_identity(store, &m)?);
            }
        }
    }
    Ok(out)
}

/// A final segment together with the divisor it predicts, `∏ (l+2n+c)^e`
/// where `n` is the length before the segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ending {
    pub steps: Vec<i8>,
    pub factors: Vec<(i64, u32)>,
}

impl Ending {
    /// First step up and total displacement `-1`.
    pub fn in_family(&self) -> bool {
        self.steps.first() == Some(&1) && self.steps.iter().map(|&e| e as i64).sum::<i64>() == -1
    }

    pub fn divisor(&self, n: usize) -> UniPoly {
        self.factors
            .iter()
            .map(|&(c, e)| UniPoly::linear(rat(1), rat(2 * n as i64 + c)).pow(e))
            .fold(UniPoly::one(), |a, b| a * b)
    }

    pub fn label(&self) -> String {
        self.steps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn matches(&self, m: &MotzkinPath) -> bool {
        m.len() > self.steps.len() && m.steps().ends_with(&self.steps)
    }
}

/// The twelve endings and their divisors.
pub fn endings() -> Vec<Ending> {
    let e = |steps: &[i8], factors: &[(i64, u32)]| Ending { steps: steps.to_vec(), factors: factors.to_vec() };
    vec![
        e(&[1, 0, -1, -1], &[(5, 1)]),
        e(&[1, 0, 0, -1, -1], &[(7, 1)]),
        e(&[1, 1, -1, -1, -1], &[(2, 1), (7, 1), (8, 1)]),
        e(&[1, 1, -1, 0, -1, -1], &[(2, 1), (7, 1)]),
        e(&[1, 1, -1, 0, 0, -1, -1], &[(2, 1)]),
        e(&[1, 1, -1, 0, 0, 0, -1, -1], &[(2, 1)]),
        e(&[1, 0, 1, -1, -1, -1], &[(8, 1)]),
        e(&[1, 1, 0, -1, -1, -1], &[(2, 1), (8, 2)]),
        e(&[1, 1, 0, -1, 0, -1, -1], &[(2, 1)]),
        e(&[1, 1, 0, -1, 0, 0, -1, -1], &[(2, 1)]),
        e(&[1, 1, 0, -1, 0, 0, 0, -1, -1], &[(2, 1)]),
        e(&[1, 1, 0, 0, -1, -1, -1], &[(2, 1), (10, 1)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndingReport {
    pub ending: String,
    pub path: String,
    pub n: usize,
    pub divisor: String,
    pub divides: bool,
    pub in_family: bool,
}

/// Tests every ending against every path of length `≤ max_length` that
/// ends with it. Out-of-family endings are listed but not tested.
pub fn scan_endings(store: &WeightStore, max_length: usize, endings: &[Ending]) -> Result<Vec<EndingReport>, ConjectureError> {
    let mut out = Vec::new();
    for len in 2..=max_length {
        let paths = enumerate_motzkin(len, store.limits())?;
        for e in endings {
            for m in paths.iter().filter(|m| e.matches(m)) {
                let n = m.len() - e.steps.len();
                let d = e.divisor(n);
                let divides = e.in_family() && store.motzkin_weight(m)?.is_divisible_by(&d);
                out.push(EndingReport {
                    ending: e.label(),
                    path: m.to_string(),
                    n,
                    divisor: d.factored(),
                    divides,
                    in_family: e.in_family(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::weights::Method;

    fn store() -> WeightStore {
        WeightStore::new(Method::Operator, Limits::default())
    }

    #[test]
    fn exceptional_data() {
        assert_eq!(exceptional_root(5), Some(Rational::new((-7).into(), 2.into())));
        let sets: Vec<String> = exceptional_sets(5).iter().map(|s| s.to_string()).collect();
        assert_eq!(sets, ["{-3,-1,0,1,2}", "{-2,-1,0,1,3}"]);
    }

    #[test]
    fn divisors() {
        assert_eq!(conjectured_divisor(1), UniPoly::from_ints(&[1, 1]));
        assert_eq!(conjectured_divisor(2), UniPoly::from_ints(&[2, 3, 1]));
        // (l+1)(l+2)(l+3)(l+4)
        assert_eq!(conjectured_divisor(3).degree(), Some(4));
    }

    #[test]
    fn flat_step_examples() {
        let st = store();
        let r = check_flatstep_identity(&st, &"UD".parse().unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, "(l+1)(l+4)");
        let r = check_flatstep_identity(&st, &"UFD".parse().unwrap()).unwrap();
        assert_eq!(r.lhs, "(l+1)(l+4)(l+6)");
        assert!(check_flatstep_identity(&st, &"F".parse().unwrap()).is_err());
    }

    #[test]
    fn small_scans() {
        let st = store();
        assert!(scan_divisibility(&st, 5).unwrap().iter().all(|r| !r.counterexample));
        let reports = scan_endings(&st, 5, &endings()).unwrap();
        assert!(reports.iter().any(|r| r.path == "UUFDD" && r.divisor == "(l+7)"));
        assert!(reports.iter().all(|r| r.divides));
        let (roots, summaries) = scan_root_windows(&st, 5).unwrap();
        let r = roots.iter().find(|r| r.key == "{-3,-1,0,1,2}").unwrap();
        assert_eq!(r.roots, ["-1", "-7/2", "-6"]);
        assert_eq!(r.has_exceptional, Some(true));
        assert!(summaries.iter().all(|s| !s.claimed));
    }
}
