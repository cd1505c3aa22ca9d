//! Partitions, skew shapes `λ(S)/μ(S)` and standard tableaux counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::det::det_exact;
use crate::algebra::rational::{factorial, Rational};
use crate::paths::CentredCatalanSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauxError {
    #[error("parts must be weakly decreasing")]
    NotDecreasing,
    #[error("inner shape {inner} is not contained in {outer}")]
    NotContained { outer: Partition, inner: Partition },
    #[error("cannot parse partition `{0}`")]
    Parse(String),
    #[error("part {0} exceeds {MAX_PARSED_PART}")]
    PartTooLarge(usize),
}

/// Largest part accepted when parsing; conjugation allocates one part per
/// unit of the largest part.
pub const MAX_PARSED_PART: usize = 1 << 16;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates order; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, TableauxError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauxError::NotDecreasing);
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Conjugate by counting column heights.
    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = TableauxError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = TableauxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| TableauxError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| TableauxError::Parse(s.to_string())))
            .collect::<Result<Vec<usize>, _>>()?;
        if let Some(&big) = parts.iter().find(|&&p| p > MAX_PARSED_PART) {
            return Err(TableauxError::PartTooLarge(big));
        }
        Partition::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, TableauxError> {
        if !outer.contains(&inner) {
            return Err(TableauxError::NotContained { outer, inner });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Row intervals `[μ_r, λ_r)`.
    pub fn rows(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len()).map(|r| (self.inner.part(r), self.outer.part(r))).collect()
    }

    /// The smallest pair of partitions with the same cells up to translation.
    pub fn normalized(&self) -> SkewShape {
        from_row_intervals(&self.rows()).expect("rows of a skew shape form a skew shape")
    }

    /// `f^{λ/μ}` by counting chains of partitions from `μ` to `λ`.
    pub fn syt_count(&self) -> BigUint {
        fn rec(cur: &mut Vec<usize>, outer: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
            if cur.as_slice() == outer {
                return BigUint::one();
            }
            if let Some(v) = memo.get(cur.as_slice()) {
                return v.clone();
            }
            let mut total = BigUint::zero();
            for r in 0..cur.len() {
                let addable = cur[r] < outer[r] && (r == 0 || cur[r - 1] > cur[r]);
                if addable {
                    cur[r] += 1;
                    total += rec(cur, outer, memo);
                    cur[r] -= 1;
                }
            }
            memo.insert(cur.clone(), total.clone());
            total
        }
        let outer = self.outer.parts().to_vec();
        let mut cur: Vec<usize> = (0..outer.len()).map(|r| self.inner.part(r)).collect();
        rec(&mut cur, &outer, &mut HashMap::new())
    }

    /// `f^{λ/μ} = |λ/μ|! · det(1/(λ_i - μ_j - i + j)!)`, with `1/k! = 0` for `k < 0`.
    pub fn syt_count_aitken(&self) -> BigUint {
        let m = self.outer.len();
        if m == 0 {
            return BigUint::one();
        }
        let matrix: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let k = self.outer.part(i) as i64 - self.inner.part(j) as i64 - i as i64 + j as i64;
                        if k < 0 {
                            Rational::zero()
                        } else {
                            Rational::new(BigInt::one(), factorial(k as u64))
                        }
                    })
                    .collect()
            })
            .collect();
        let d = det_exact(&matrix).expect("square matrix") * Rational::from_integer(factorial(self.size() as u64));
        assert!(d.is_integer(), "non-integral tableaux count");
        d.numer().to_biguint().expect("nonnegative tableaux count")
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

/// Skew shape from row intervals `[a_r, b_r)`, top row first, translated
/// so that the occupied rows and columns start at 0. `None` if the cells
/// are not a skew diagram.
pub fn from_row_intervals(rows: &[(usize, usize)]) -> Option<SkewShape> {
    let occupied: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].0 < rows[r].1).collect();
    let (Some(&first), Some(&last)) = (occupied.first(), occupied.last()) else {
        return Some(SkewShape { outer: Partition::empty(), inner: Partition::empty() });
    };
    let left = occupied.iter().map(|&r| rows[r].0).min()?;
    let rows: Vec<(usize, usize)> = rows[first..=last]
        .iter()
        .map(|&(a, b)| if a < b { (a - left, b - left) } else { (usize::MAX, 0) })
        .collect();
    let h = rows.len();
    let mut outer = vec![0usize; h];
    for r in (0..h).rev() {
        outer[r] = rows[r].1.max(if r + 1 < h { outer[r + 1] } else { 0 });
    }
    let inner: Vec<usize> = (0..h)
        .map(|r| if rows[r].0 == usize::MAX { outer[r] } else { rows[r].0 })
        .collect();
    for r in 0..h {
        if rows[r].0 != usize::MAX && rows[r].1 != outer[r] {
            return None;
        }
    }
    let outer = Partition::new(outer).ok()?;
    let inner = Partition::new(inner).ok()?;
    SkewShape::new(outer, inner).ok()
}

/// `λ(S) = (i - s_i)_{positive i}'` and `μ(S) = (-s_i - (u - i + 1))_{i ≤ u}`,
/// with `S = {s_1 < … < s_u < 0 < s_{u+1} < … < s_n}`.
pub fn shapes_of_set(s: &CentredCatalanSet) -> SkewShape {
    let neg = s.negatives();
    let pos = s.positives();
    let u = neg.len() as i64;
    let nu: Vec<usize> = pos
        .iter()
        .enumerate()
        .map(|(j, &x)| (u + 1 + j as i64 - x) as usize)
        .collect();
    let outer = Partition::new(nu).expect("parts decrease").conjugate();
    let inner: Vec<usize> = neg
        .iter()
        .enumerate()
        .map(|(j, &x)| (-x - (u - j as i64)) as usize)
        .collect();
    let inner = Partition::new(inner).expect("parts decrease");
    SkewShape::new(outer, inner).expect("inner shape is contained")
}

/// The region between a lower path (east exactly at `i ∈ S`) and an upper
/// path (north exactly at `-i ∈ S`), both started at the origin.
pub fn shapes_from_lattice_paths(s: &CentredCatalanSet) -> SkewShape {
    let n = (s.size() - 1) as i64;
    // x-coordinate of each path's north step from height y to y+1.
    let boundary = |north: &dyn Fn(i64) -> bool| {
        let mut x = 0usize;
        let mut xs = Vec::new();
        for i in 1..=n {
            if north(i) {
                xs.push(x);
            } else {
                x += 1;
            }
        }
        xs
    };
    let lower = boundary(&|i| !s.contains(i));
    let upper = boundary(&|i| s.contains(-i));
    debug_assert_eq!(lower.len(), upper.len());
    let rows: Vec<(usize, usize)> = (0..lower.len()).rev().map(|y| (upper[y], lower[y])).collect();
    from_row_intervals(&rows).expect("paths bound a skew diagram")
}

/// Shape of `S1 ∘ S2` from the shapes of the factors: the rows of the
/// second, padded to its number of negative elements and moved right by
/// the number of positive elements of the first, above the rows of the
/// first.
pub fn concat_shape(s1: &CentredCatalanSet, s2: &CentredCatalanSet) -> SkewShape {
    let (a, b) = (shapes_of_set(s1), shapes_of_set(s2));
    let shift = s1.positives().len();
    let u2 = s2.negatives().len();
    let stack = |p1: &Partition, p2: &Partition| {
        let mut parts: Vec<usize> = (0..u2).map(|i| p2.part(i) + shift).collect();
        parts.extend((0..s1.negatives().len()).map(|i| p1.part(i)));
        Partition::new(parts).expect("stacked parts decrease")
    };
    SkewShape::new(stack(&a.outer, &b.outer), stack(&a.inner, &b.inner)).expect("stacked shapes nest")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcatCheck {
    pub shape_matches: bool,
    pub size_adds: bool,
    /// `f(S1∘S2) = C(N1+N2, N1)·f(S1)·f(S2)`: the two factor shapes share
    /// no row or column, so tableaux of the union interleave their entries.
    pub count_interleaves: bool,
    /// `f(S1∘S2) = f(S1)·f(S2)`; holds only when a factor shape is empty.
    pub count_multiplies: bool,
}

impl ConcatCheck {
    pub fn holds(&self) -> bool {
        self.shape_matches && self.size_adds && self.count_interleaves
    }
}

pub fn check_concat_relation(s1: &CentredCatalanSet, s2: &CentredCatalanSet) -> ConcatCheck {
    let whole = shapes_of_set(&s1.concat(s2));
    let (a, b) = (shapes_of_set(s1), shapes_of_set(s2));
    let (fa, fb, fw) = (a.syt_count(), b.syt_count(), whole.syt_count());
    let interleavings = binomial(a.size() + b.size(), a.size());
    ConcatCheck {
        shape_matches: whole == concat_shape(s1, s2),
        size_adds: whole.size() == a.size() + b.size(),
        count_interleaves: fw == &fa * &fb * interleavings,
        count_multiplies: fw == fa * fb,
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> CentredCatalanSet {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn shapes() {
        let sh = shapes_of_set(&set("{-2,-1,0,1,2}"));
        assert_eq!((sh.outer.clone(), sh.inner.clone()), (p("[2,2]"), p("[]")));
        assert_eq!(shapes_of_set(&set("{0,1,2,3}")).size(), 0);
        let sh = shapes_of_set(&set("{-3,-1,0,1,2}"));
        assert_eq!(sh.to_string(), "[2,2]/[1]");
        assert_eq!(shapes_from_lattice_paths(&set("{-3,-1,0,1,2}")), sh);
    }

    #[test]
    fn tableaux_counts() {
        let sq = SkewShape::new(p("[2,2]"), p("[]")).unwrap();
        assert_eq!(sq.syt_count(), BigUint::from(2u8));
        let sk = SkewShape::new(p("[2,2]"), p("[1]")).unwrap();
        assert_eq!(sk.syt_count(), BigUint::from(2u8));
        assert_eq!(sk.syt_count_aitken(), BigUint::from(2u8));
        let empty = SkewShape::new(p("[]"), p("[]")).unwrap();
        assert_eq!(empty.syt_count(), BigUint::one());
        assert_eq!(empty.syt_count_aitken(), BigUint::one());
        // Hook lengths of (3,2,1): 6!/(5·3·3·1·1·1) = 16
        let stair = SkewShape::new(p("[3,2,1]"), p("[]")).unwrap();
        assert_eq!(stair.syt_count(), BigUint::from(16u8));
        assert_eq!(stair.syt_count_aitken(), BigUint::from(16u8));
    }

    #[test]
    fn conjugation_and_parsing() {
        assert_eq!(p("[3,1]").conjugate(), p("[2,1,1]"));
        assert_eq!(p("[2,0]"), p("[2]"));
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!("[5177777775]".parse::<Partition>(), Err(TableauxError::PartTooLarge(5177777775)));
        assert!(SkewShape::new(p("[1]"), p("[2]")).is_err());
    }

    #[test]
    fn concatenation_of_shapes() {
        let s1 = set("{-4,-2,-1,0,1,3,4}");
        let s2 = set("{-3,-1,0,1,2}");
        assert!(check_concat_relation(&s1, &s2).holds());
        assert!(check_concat_relation(&s1, &CentredCatalanSet::unit()).holds());
        let one = set("{-1,0,1}");
        let c = check_concat_relation(&one, &one);
        assert!(c.holds());
        // Two separated cells: 2 tableaux, but each factor has only 1.
        assert!(!c.count_multiplies);
        assert_eq!(shapes_of_set(&one.concat(&one)).syt_count(), BigUint::from(2u8));
        assert_eq!(concat_shape(&set("{-1,0,1}"), &set("{-1,0,1}")).to_string(), "[2,1]/[1]");
    }
}
