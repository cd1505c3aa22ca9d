//! Equivalence classes of trees: two trees are equivalent when they agree on
//! every entry outside `1..l-1` and their interior entries are in the same
//! relative order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use crate::paths::CentredCatalanSet;
use crate::tableaux::shapes_of_set;

use super::tree::{for_each_st_tree, st_params_of};
use super::WeightError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Cell {
    Boundary(i64),
    Rank(usize),
}

/// Class sizes grouped by the number of free columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummary {
    pub set: CentredCatalanSet,
    pub l: usize,
    /// free columns ↦ (number of classes, sizes of those classes).
    pub by_free: BTreeMap<usize, (u128, Vec<u128>)>,
    pub trees: u128,
}

impl ClassSummary {
    /// Every class with `f` free columns has `C(l-1, f)` members.
    pub fn sizes_are_binomial(&self) -> bool {
        self.by_free
            .iter()
            .all(|(&f, (_, sizes))| sizes.iter().all(|&sz| BigUint::from(sz) == binomial(self.l.saturating_sub(1), f)))
    }

    /// `Σ_f classes(f)·C(l-1, f)` equals the number of trees.
    pub fn sum_matches(&self) -> bool {
        let total: BigUint = self
            .by_free
            .iter()
            .map(|(&f, (c, _))| BigUint::from(*c) * binomial(self.l.saturating_sub(1), f))
            .sum();
        total == BigUint::from(self.trees)
    }

    pub fn classes_with(&self, free: usize) -> u128 {
        self.by_free.get(&free).map_or(0, |x| x.0)
    }

    /// When `l` exceeds `|λ/μ|`, the classes using `|λ/μ|` free columns
    /// are counted by the standard Young tableaux of the shape.
    pub fn top_classes_match_tableaux(&self) -> Option<bool> {
        let shape = shapes_of_set(&self.set);
        if self.l <= shape.size() {
            return None;
        }
        Some(BigUint::from(self.classes_with(shape.size())) == shape.syt_count())
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    let mut r = BigUint::from(1u8);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// Partitions all trees of an irreducible set at `l` into classes.
pub fn equivalence_classes(s: &CentredCatalanSet, l: usize) -> Result<ClassSummary, WeightError> {
    let params = st_params_of(s, l as i64)?;
    let li = l as i64;
    let mut classes: HashMap<Vec<Cell>, u128> = HashMap::new();
    let mut trees = 0u128;
    for_each_st_tree(&params, |tree| {
        trees += 1;
        let mut interior: Vec<i64> = tree.entries().filter(|&x| 0 < x && x < li).collect();
        interior.sort_unstable();
        interior.dedup();
        let key = tree
            .entries()
            .map(|x| match interior.binary_search(&x) {
                Ok(r) => Cell::Rank(r),
                Err(_) => Cell::Boundary(x),
            })
            .collect();
        *classes.entry(key).or_default() += 1;
    });
    let mut by_free: BTreeMap<usize, (u128, Vec<u128>)> = BTreeMap::new();
    for (key, size) in classes {
        let free = key.iter().filter_map(|c| if let Cell::Rank(r) = c { Some(r + 1) } else { None }).max().unwrap_or(0);
        let e = by_free.entry(free).or_default();
        e.0 += 1;
        e.1.push(size);
    }
    for (_, sizes) in by_free.values_mut() {
        sizes.sort_unstable();
    }
    Ok(ClassSummary { set: s.clone(), l, by_free, trees })
}
