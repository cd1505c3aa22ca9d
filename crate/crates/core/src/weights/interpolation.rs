//! Weights from exact counts: interpolate each irreducible factor, then
//! assemble with `w_l(S1∘S2) = w_l(S1)·w_{l+2|S1|-2}(S2)`.

use rayon::prelude::*;

use crate::algebra::rational::rat;
use crate::algebra::{interpolate, Rational, UniPoly};
use crate::limits::Limits;
use crate::paths::CentredCatalanSet;
use crate::trapezoid::count_for_set;

use super::WeightError;

/// First sample point.
pub const FIRST_SAMPLE: usize = 2;

/// Number of extra samples beyond the `d+1` needed.
pub const SURPLUS: usize = 1;

/// Weight of an irreducible set from `d+1+SURPLUS` exact counts at
/// `l = 2, 3, …`, where `d` is the area of its Motzkin path.
pub fn interpolated_irreducible(s: &CentredCatalanSet, limits: &Limits) -> Result<UniPoly, WeightError> {
    if !s.is_irreducible() {
        return Err(WeightError::Reducible(s.clone()));
    }
    let d = s.motzkin_path().area() as usize;
    let ls: Vec<usize> = (FIRST_SAMPLE..FIRST_SAMPLE + d + 1 + SURPLUS).collect();
    let counts: Vec<(i64, Rational)> = ls
        .par_iter()
        .map(|&l| count_for_set(s, l, limits).map(|c| (l as i64, Rational::from_integer(c.into()))))
        .collect::<Result<_, _>>()?;
    let (fit, check) = counts.split_at(d + 1);
    let p = interpolate(fit)?;
    for (l, c) in check {
        if &p.eval_int(*l) != c {
            return Err(WeightError::DegreeMismatch { set: s.clone(), degree: d, l: *l });
        }
    }
    if p.degree() != Some(d) {
        return Err(WeightError::DegreeMismatch { set: s.clone(), degree: d, l: ls[0] as i64 });
    }
    Ok(p)
}

/// Multiplies factor weights, shifting `l` by twice the rows below each
/// factor.
pub fn assemble(factors: &[(CentredCatalanSet, UniPoly)]) -> UniPoly {
    let mut out = UniPoly::one();
    let mut rows = 0i64;
    for (f, w) in factors {
        out = out * w.shift(&rat(2 * rows));
        rows += f.size() as i64 - 1;
    }
    out
}

/// Weight of any set by interpolation of its irreducible factors.
pub fn interpolated_weight(s: &CentredCatalanSet, limits: &Limits) -> Result<UniPoly, WeightError> {
    let factors = s
        .irreducible_factors()
        .into_iter()
        .map(|f| interpolated_irreducible(&f, limits).map(|w| (f, w)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(&factors))
}
