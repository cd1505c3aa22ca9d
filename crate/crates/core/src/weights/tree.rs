//! `(s,t)`-trees and their bijection with trapezoids of a fixed catalan set.
//!
//! Positions are `(r, j)` with `r = 1` the bottom row and `1 ≤ j ≤ n-r+1`;
//! `(r, j)` sits between `(r-1, j)` and `(r-1, j+1)`. The `i`-th north-east
//! diagonal is `{(r, i)}` and the `i`-th south-east diagonal is
//! `{(r, i-r+1)}`.

use std::fmt;

use crate::paths::CentredCatalanSet;
use crate::trapezoid::ASTrapezoid;

use super::WeightError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Deleted,
    Fixed(i64),
    Free,
}

/// Deletion counts `s` (north-east, diagonals `1..=u`), `t` (south-east,
/// diagonals `v..=n`) and bottom entries `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StParams {
    s: Vec<i64>,
    t: Vec<i64>,
    k: Vec<i64>,
    kinds: Vec<Vec<Kind>>,
    /// Positions excused from being less than their right neighbour.
    ne_bottom: Vec<Vec<bool>>,
    /// Positions excused from being greater than their left neighbour.
    se_bottom: Vec<Vec<bool>>,
}

impl StParams {
    pub fn new(s: Vec<i64>, t: Vec<i64>, k: Vec<i64>) -> Result<Self, WeightError> {
        let n = k.len();
        let bad = |m: &str| Err(WeightError::Params(m.to_string()));
        if n == 0 {
            return bad("no bottom entries");
        }
        if s.len() + t.len() > n {
            return bad("too many deleted diagonals");
        }
        if s.iter().any(|&x| x < 0) || s.windows(2).any(|w| w[0] < w[1]) {
            return bad("s must be weakly decreasing and nonnegative");
        }
        if t.iter().any(|&x| x < 0) || t.windows(2).any(|w| w[0] > w[1]) {
            return bad("t must be weakly increasing and nonnegative");
        }
        if k.windows(2).any(|w| w[0] >= w[1]) {
            return bad("k must be strictly increasing");
        }
        let u = s.len();
        let v = n - t.len() + 1;
        let mut kinds: Vec<Vec<Kind>> = (1..=n).map(|r| vec![Kind::Free; n - r + 1]).collect();
        let mut ne_bottom: Vec<Vec<bool>> = kinds.iter().map(|row| vec![false; row.len()]).collect();
        let mut se_bottom = ne_bottom.clone();
        for j in u + 1..v {
            kinds[0][j - 1] = Kind::Fixed(k[j - 1]);
        }
        for i in 1..=u {
            let d = s[i - 1] as usize;
            if d + i > n {
                return bad("deletions exceed a north-east diagonal");
            }
            for r in 1..=d {
                kinds[r - 1][i - 1] = Kind::Deleted;
            }
            set_fixed(&mut kinds, d + 1, i, k[i - 1])?;
            ne_bottom[d][i - 1] = true;
        }
        for i in v..=n {
            let d = t[i - v] as usize;
            if d + 1 > i {
                return bad("deletions exceed a south-east diagonal");
            }
            for r in 1..=d {
                kinds[r - 1][i - r] = Kind::Deleted;
            }
            set_fixed(&mut kinds, d + 1, i - d, k[i - 1])?;
            se_bottom[d][i - d - 1] = true;
        }
        Ok(StParams { s, t, k, kinds, ne_bottom, se_bottom })
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    pub fn t(&self) -> &[i64] {
        &self.t
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    fn kind(&self, r: usize, j: usize) -> Kind {
        self.kinds[r - 1][j - 1]
    }

    /// Number of positions that take a free value.
    pub fn free_positions(&self) -> usize {
        self.kinds.iter().flatten().filter(|&&k| k == Kind::Free).count()
    }

    /// Whether `(r, j)` must be strictly greater than `(r, j-1)`.
    fn strict_with_left(&self, r: usize, j: usize) -> bool {
        !self.ne_bottom[r - 1][j - 2] && !self.se_bottom[r - 1][j - 1]
    }

    /// Value of a deleted position in the full array: the bottom entry of
    /// its diagonal.
    fn deleted_value(&self, r: usize, j: usize) -> i64 {
        let u = self.s.len();
        if j <= u && (r as i64) <= self.s[j - 1] {
            return self.k[j - 1];
        }
        let i = j + r - 1;
        self.k[i - 1]
    }
}

fn set_fixed(kinds: &mut [Vec<Kind>], r: usize, j: usize, value: i64) -> Result<(), WeightError> {
    match kinds[r - 1][j - 1] {
        Kind::Fixed(v) if v != value => Err(WeightError::Params(format!("conflicting bottom entries at ({r},{j})"))),
        Kind::Deleted => Err(WeightError::Params(format!("bottom entry at deleted position ({r},{j})"))),
        _ => {
            kinds[r - 1][j - 1] = Kind::Fixed(value);
            Ok(())
        }
    }
}

/// Tree parameters of an irreducible set of size at least 3, at integer `l`.
pub fn st_params_of(s: &CentredCatalanSet, l: i64) -> Result<StParams, WeightError> {
    if s.size() < 3 {
        return Err(WeightError::TooSmall(s.clone()));
    }
    if !s.is_irreducible() {
        return Err(WeightError::Reducible(s.clone()));
    }
    let neg = s.negatives();
    let pos = s.positives();
    let sv = neg[..neg.len() - 1].iter().map(|&x| -x - 1).collect();
    let tv = pos[1..].iter().map(|&x| x - 1).collect();
    let k = neg.iter().map(|&x| x + 1).chain(pos.iter().map(|&x| l + x - 1)).collect();
    StParams::new(sv, tv, k)
}

/// A tree; `rows[r-1][j-1]` is `None` at deleted positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct STTree {
    rows: Vec<Vec<Option<i64>>>,
}

impl STTree {
    /// Checks deletions, fixed entries and the monotonicity conditions.
    pub fn new(params: &StParams, rows: Vec<Vec<Option<i64>>>) -> Result<Self, WeightError> {
        let n = params.n();
        let bad = |m: String| Err(WeightError::Params(m));
        if rows.len() != n || (1..=n).any(|r| rows[r - 1].len() != n - r + 1) {
            return bad("tree has the wrong shape".into());
        }
        for r in 1..=n {
            for j in 1..=n - r + 1 {
                let x = rows[r - 1][j - 1];
                match (params.kind(r, j), x) {
                    (Kind::Deleted, None) => continue,
                    (Kind::Deleted, Some(_)) => return bad(format!("({r},{j}) should be deleted")),
                    (_, None) => return bad(format!("({r},{j}) is missing")),
                    (Kind::Fixed(v), Some(x)) if v != x => return bad(format!("({r},{j}) should be {v}")),
                    _ => {}
                }
                let x = x.expect("present");
                if !fits(params, &rows, r, j, x) {
                    return bad(format!("({r},{j}) = {x} breaks monotonicity"));
                }
            }
        }
        Ok(STTree { rows })
    }

    pub fn rows(&self) -> &[Vec<Option<i64>>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// All present entries, row by row from the bottom.
    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().flatten().filter_map(|x| *x)
    }

    /// Rows with deleted positions restored.
    pub fn full_rows(&self, params: &StParams) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(r0, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j0, x)| x.unwrap_or_else(|| params.deleted_value(r0 + 1, j0 + 1)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for STTree {
    /// Top row first; deleted positions shown as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.map_or(".".into(), |v| v.to_string())).collect();
            write!(f, "{}{}", " ".repeat(self.rows.len() - row.len()), cells.join(" "))?;
        }
        Ok(())
    }
}

/// Local conditions between `(r, j)` and its already placed neighbours.
fn fits(params: &StParams, rows: &[Vec<Option<i64>>], r: usize, j: usize, x: i64) -> bool {
    if r > 1 {
        if let Some(below_left) = rows[r - 2][j - 1] {
            if x < below_left {
                return false;
            }
        }
        if let Some(below_right) = rows[r - 2][j] {
            if x > below_right {
                return false;
            }
        }
    }
    if j > 1 {
        if let Some(left) = rows[r - 1][j - 2] {
            if params.strict_with_left(r, j) && x <= left {
                return false;
            }
        }
    }
    true
}

/// Calls `visit` on every tree, filling rows bottom-up, left to right.
pub fn for_each_st_tree(params: &StParams, mut visit: impl FnMut(&STTree)) {
    let n = params.n();
    let mut rows: Vec<Vec<Option<i64>>> = (1..=n).map(|r| vec![None; n - r + 1]).collect();
    let positions: Vec<(usize, usize)> = (1..=n).flat_map(|r| (1..=n - r + 1).map(move |j| (r, j))).collect();

    fn rec(params: &StParams, rows: &mut Vec<Vec<Option<i64>>>, positions: &[(usize, usize)], idx: usize, visit: &mut dyn FnMut(&STTree)) {
        let Some(&(r, j)) = positions.get(idx) else {
            visit(&STTree { rows: rows.clone() });
            return;
        };
        match params.kind(r, j) {
            Kind::Deleted => {
                rows[r - 1][j - 1] = None;
                rec(params, rows, positions, idx + 1, visit);
            }
            Kind::Fixed(v) => {
                if fits(params, rows, r, j, v) {
                    rows[r - 1][j - 1] = Some(v);
                    rec(params, rows, positions, idx + 1, visit);
                    rows[r - 1][j - 1] = None;
                }
            }
            Kind::Free => {
                // Free positions above row 1 always have both lower neighbours.
                let (Some(lo), Some(hi)) = (rows[r - 2][j - 1], rows[r - 2][j]) else {
                    return;
                };
                let lo = match rows[r - 1].get(j.wrapping_sub(2)).copied().flatten() {
                    Some(left) if j > 1 && params.strict_with_left(r, j) => lo.max(left + 1),
                    _ => lo,
                };
                for x in lo..=hi {
                    rows[r - 1][j - 1] = Some(x);
                    rec(params, rows, positions, idx + 1, visit);
                }
                rows[r - 1][j - 1] = None;
            }
        }
    }
    rec(params, &mut rows, &positions, 0, &mut visit);
}

pub fn enumerate_st_trees(params: &StParams) -> Vec<STTree> {
    let mut out = Vec::new();
    for_each_st_tree(params, |t| out.push(t.clone()));
    out
}

pub fn count_st_trees(params: &StParams) -> u128 {
    let mut count = 0u128;
    for_each_st_tree(params, |_| count += 1);
    count
}

/// Row `r` lists the labels whose partial column sum over rows `≥ r` is 1.
pub fn tree_of_trapezoid(a: &ASTrapezoid) -> Result<STTree, WeightError> {
    let s = a.catalan_set()?;
    let params = st_params_of(&s, a.l() as i64)?;
    let n = a.n();
    let mut rows = Vec::with_capacity(n);
    for r in 1..=n {
        let labels: Vec<i64> = a
            .labels()
            .filter(|&c| (r..=n).map(|i| a.entry(i, c) as i64).sum::<i64>() == 1)
            .collect();
        if labels.len() != n - r + 1 {
            return Err(WeightError::Params(format!("row {r} of the tree has {} entries", labels.len())));
        }
        let row = labels
            .into_iter()
            .enumerate()
            .map(|(j0, x)| match params.kind(r, j0 + 1) {
                Kind::Deleted => {
                    debug_assert_eq!(x, params.deleted_value(r, j0 + 1));
                    None
                }
                _ => Some(x),
            })
            .collect();
        rows.push(row);
    }
    STTree::new(&params, rows)
}

/// Inverse of [`tree_of_trapezoid`]: row `r` of the trapezoid is the
/// indicator of tree row `r` minus that of tree row `r+1`.
pub fn trapezoid_of_tree(tree: &STTree, params: &StParams, l: usize) -> Result<ASTrapezoid, WeightError> {
    let full = tree.full_rows(params);
    let n = full.len();
    let member = |r: usize, c: i64| r <= n && full[r - 1].contains(&c);
    let (lo_all, hi_all) = (-(n as i64) + 1, (l + n) as i64 - 1);
    let mut rows = Vec::with_capacity(n);
    for r in 1..=n {
        let (lo, hi) = (-(r as i64) + 1, (l + r) as i64 - 1);
        for c in full[r - 1].iter().chain(full.get(r).into_iter().flatten()) {
            if *c < lo_all || *c > hi_all {
                return Err(WeightError::Params(format!("label {c} outside the trapezoid")));
            }
        }
        for c in (lo_all..lo).chain(hi + 1..=hi_all) {
            if member(r, c) != member(r + 1, c) {
                return Err(WeightError::Params(format!("row {r} would need an entry in column {c}")));
            }
        }
        rows.push((lo..=hi).map(|c| member(r, c) as i8 - member(r + 1, c) as i8).collect());
    }
    Ok(ASTrapezoid::new(l, rows)?)
}
