//! Weight polynomials `w_l(S)` and `w_l(M)`.

mod equivalence;
mod interpolation;
mod operator;
mod tree;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{factorial, format_rational, rat};
use crate::algebra::{AlgebraError, Rational, UniPoly};
use crate::limits::{LimitError, Limits};
use crate::paths::{CentredCatalanSet, MotzkinPath};
use crate::tableaux::shapes_of_set;
use crate::trapezoid::TrapezoidError;

pub use equivalence::{equivalence_classes, ClassSummary};
pub use interpolation::{assemble, interpolated_irreducible, interpolated_weight, FIRST_SAMPLE, SURPLUS};
pub use operator::{difference_exponents, m_n, operator_weight, operator_weight_expanded, scaled_vandermonde, symbolic_k};
pub use tree::{
    count_st_trees, enumerate_st_trees, for_each_st_tree, st_params_of, trapezoid_of_tree, tree_of_trapezoid, STTree,
    StParams,
};

#[derive(Debug, thiserror::Error)]
pub enum WeightError {
    #[error("{0} is reducible; factor it first")]
    Reducible(CentredCatalanSet),
    #[error("{0} has fewer than three elements")]
    TooSmall(CentredCatalanSet),
    #[error("invalid tree data: {0}")]
    Params(String),
    #[error("counts for {set} are not a polynomial of degree {degree} (check failed at l = {l})")]
    DegreeMismatch { set: CentredCatalanSet, degree: usize, l: i64 },
    #[error("methods disagree on {set}: interpolation gives {interpolation}, operator formula gives {operator}")]
    Disagreement { set: CentredCatalanSet, interpolation: String, operator: String },
    #[error(transparent)]
    Trapezoid(#[from] TrapezoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Interpolation,
    Operator,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Interpolation => "interpolation",
            Method::Operator => "operator",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interpolation" | "interp" => Ok(Method::Interpolation),
            "operator" | "op" => Ok(Method::Operator),
            "both" => Ok(Method::Both),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

/// Weight of a single irreducible set by the chosen method.
pub fn irreducible_weight(s: &CentredCatalanSet, method: Method, limits: &Limits) -> Result<UniPoly, WeightError> {
    limits.check_set_size(s.size())?;
    match method {
        Method::Interpolation => interpolated_irreducible(s, limits),
        Method::Operator => operator_weight(s),
        Method::Both => {
            let a = interpolated_irreducible(s, limits)?;
            let b = operator_weight(s)?;
            if a != b {
                return Err(WeightError::Disagreement {
                    set: s.clone(),
                    interpolation: a.factored(),
                    operator: b.factored(),
                });
            }
            Ok(a)
        }
    }
}

/// Weights memoised per irreducible factor.
pub struct WeightStore {
    method: Method,
    limits: Limits,
    memo: Mutex<HashMap<CentredCatalanSet, UniPoly>>,
}

impl WeightStore {
    pub fn new(method: Method, limits: Limits) -> Self {
        WeightStore { method, limits, memo: Mutex::new(HashMap::new()) }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Seeds the memo, e.g. from a persistent cache.
    pub fn insert(&self, s: CentredCatalanSet, w: UniPoly) {
        self.memo.lock().expect("weight memo poisoned").insert(s, w);
    }

    /// Memoised irreducible weights, sorted by set.
    pub fn entries(&self) -> Vec<(CentredCatalanSet, UniPoly)> {
        let mut v: Vec<_> = self.memo.lock().expect("weight memo poisoned").iter().map(|(s, w)| (s.clone(), w.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn cached(&self, s: &CentredCatalanSet) -> Option<UniPoly> {
        self.memo.lock().expect("weight memo poisoned").get(s).cloned()
    }

    fn factor_weight(&self, f: &CentredCatalanSet) -> Result<UniPoly, WeightError> {
        if let Some(w) = self.cached(f) {
            return Ok(w);
        }
        let w = irreducible_weight(f, self.method, &self.limits)?;
        self.insert(f.clone(), w.clone());
        Ok(w)
    }

    pub fn set_weight(&self, s: &CentredCatalanSet) -> Result<UniPoly, WeightError> {
        self.limits.check_set_size(s.size())?;
        let factors = s
            .irreducible_factors()
            .into_iter()
            .map(|f| self.factor_weight(&f).map(|w| (f, w)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(assemble(&factors))
    }

    pub fn motzkin_weight(&self, m: &MotzkinPath) -> Result<UniPoly, WeightError> {
        self.limits.check_path_length(m.len())?;
        let parts: Vec<UniPoly> = m.preimage().par_iter().map(|s| self.set_weight(s)).collect::<Result<_, _>>()?;
        Ok(parts.into_iter().fold(UniPoly::zero(), |a, b| a + b))
    }

    /// Computes the irreducible factors of many sets in parallel.
    pub fn precompute(&self, sets: &[CentredCatalanSet]) -> Result<(), WeightError> {
        let mut factors: Vec<CentredCatalanSet> = sets.iter().flat_map(|s| s.irreducible_factors()).collect();
        factors.sort();
        factors.dedup();
        factors.retain(|f| self.cached(f).is_none());
        factors.par_iter().try_for_each(|f| self.factor_weight(f).map(|_| ()))
    }

    pub fn record_for_set(&self, s: &CentredCatalanSet) -> Result<WeightRecord, WeightError> {
        Ok(WeightRecord::for_set(s, &self.set_weight(s)?, self.method))
    }

    pub fn record_for_motzkin(&self, m: &MotzkinPath) -> Result<WeightRecord, WeightError> {
        Ok(WeightRecord::for_motzkin(m, &self.motzkin_weight(m)?, self.method))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Set,
    Motzkin,
}

/// A computed weight with its derived data, all exact and serialised as
/// strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub kind: Subject,
    /// `{-1,0,1}` or `UFD`.
    pub key: String,
    /// Coefficients from the constant term, `n/d` comma separated.
    pub coefficients: String,
    pub factored: String,
    pub degree: Option<usize>,
    pub leading: String,
    pub roots: Vec<String>,
    /// Skew shape of a set; absent for paths.
    pub shape: Option<String>,
    /// `f^{λ/μ}`, summed over the preimage for a path.
    pub f: String,
    /// Method that produced the polynomial.
    pub provenance: Method,
}

impl WeightRecord {
    pub fn for_set(s: &CentredCatalanSet, w: &UniPoly, method: Method) -> Self {
        let shape = shapes_of_set(s);
        Self::build(Subject::Set, s.to_string(), w, Some(shape.to_string()), shape.syt_count(), method)
    }

    pub fn for_motzkin(m: &MotzkinPath, w: &UniPoly, method: Method) -> Self {
        let f: BigUint = m.preimage().iter().map(|s| shapes_of_set(s).syt_count()).sum();
        Self::build(Subject::Motzkin, m.to_string(), w, None, f, method)
    }

    fn build(kind: Subject, key: String, w: &UniPoly, shape: Option<String>, f: BigUint, method: Method) -> Self {
        let roots = w.rational_roots().unwrap_or_default().iter().map(format_rational).collect();
        WeightRecord {
            kind,
            key,
            coefficients: w.to_coeff_string(),
            factored: w.factored(),
            degree: w.degree(),
            leading: format_rational(&w.leading()),
            roots,
            shape,
            f: f.to_string(),
            provenance: method,
        }
    }

    pub fn polynomial(&self) -> Result<UniPoly, AlgebraError> {
        self.coefficients.parse()
    }

    pub fn set(&self) -> Option<CentredCatalanSet> {
        (self.kind == Subject::Set).then(|| self.key.parse().ok()).flatten()
    }

    pub fn motzkin(&self) -> Option<MotzkinPath> {
        (self.kind == Subject::Motzkin).then(|| self.key.parse().ok()).flatten()
    }
}

/// `(degree, leading coefficient)` predicted by the skew shape: `|λ/μ|`
/// and `f^{λ/μ}/|λ/μ|!`.
pub fn predicted_degree_and_leading(s: &CentredCatalanSet) -> (usize, Rational) {
    let shape = shapes_of_set(s);
    let d = shape.size();
    let f = Rational::from_integer(shape.syt_count().into());
    (d, f / Rational::from_integer(factorial(d as u64)))
}

/// `Z_m = {0,1,…,m-1}`: `m-1` flat steps.
fn zeros(m: usize) -> CentredCatalanSet {
    CentredCatalanSet::staircase(m)
}

/// Result of comparing `w_2(Z_m∘S1∘Z_m∘S2)` with
/// `w_{2m}(S1)·w_{2(|S1|+2m-2)}(S2)` as polynomials in `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseCheck {
    pub counted: UniPoly,
    pub predicted: UniPoly,
    pub expected_leading: Rational,
}

impl StaircaseCheck {
    pub fn holds(&self) -> bool {
        self.counted == self.predicted && self.predicted.leading() == self.expected_leading
    }
}

/// Counts `w_2` of the staircase construction for `m = 1, 2, …` and
/// interpolates in `m`.
pub fn staircase_check(s1: &CentredCatalanSet, s2: &CentredCatalanSet, store: &WeightStore) -> Result<StaircaseCheck, WeightError> {
    let w1 = store.set_weight(s1)?;
    let w2 = store.set_weight(s2)?;
    let m = UniPoly::var();
    let two = rat(2);
    let predicted = w1.compose(&m.scale(&two)) * w2.compose(&(m.scale(&rat(4)) + UniPoly::constant(rat(2 * s1.size() as i64 - 4))));
    let d = predicted.degree().unwrap_or(0);
    let counting = Limits::unbounded();
    let mut points = Vec::new();
    for mm in 1..=d + 2 {
        let z = zeros(mm);
        let big = z.concat(s1).concat(&z).concat(s2);
        let c = crate::trapezoid::count_for_set(&big, 2, &counting)?;
        points.push((mm as i64, Rational::from_integer(c.into())));
    }
    let counted = crate::algebra::interpolate(&points)?;
    let (d1, l1) = predicted_degree_and_leading(s1);
    let (d2, l2) = predicted_degree_and_leading(s2);
    let expected_leading = rat(2).pow(d1 as i32) * l1 * rat(4).pow(d2 as i32) * l2;
    Ok(StaircaseCheck { counted, predicted, expected_leading })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> CentredCatalanSet {
        s.parse().unwrap()
    }

    #[test]
    fn store_agrees_with_direct_computation() {
        let store = WeightStore::new(Method::Both, Limits::default());
        let s = set("{-3,-1,0,1,3}");
        assert_eq!(store.set_weight(&s).unwrap(), UniPoly::from_ints(&[5, 6, 1]));
        let m: MotzkinPath = "UD".parse().unwrap();
        assert_eq!(store.motzkin_weight(&m).unwrap(), UniPoly::from_ints(&[1, 1]));
        let f: MotzkinPath = "F".parse().unwrap();
        assert_eq!(store.motzkin_weight(&f).unwrap(), UniPoly::constant(rat(2)));
    }

    #[test]
    fn record_round_trip() {
        let store = WeightStore::new(Method::Operator, Limits::default());
        let r = store.record_for_set(&set("{-1,0,1}")).unwrap();
        assert_eq!(r.factored, "(l+1)");
        assert_eq!(r.roots, vec!["-1"]);
        let json = serde_json::to_string(&r).unwrap();
        let back: WeightRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.polynomial().unwrap(), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn staircase_construction() {
        let store = WeightStore::new(Method::Operator, Limits::default());
        let a = set("{-1,0,1}");
        assert!(staircase_check(&a, &a, &store).unwrap().holds());
    }
}
