//! Closed forms and identities: the constant-term expression for `w_l(S)`,
//! the product formula for the total count and two determinants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{binomial, factorial, frac, rat, to_integer};
use crate::algebra::{det_exact, pochhammer, AlgebraError, Eisenstein, MultiLaurent, Rational, UniPoly};
use crate::limits::{LimitError, Limits};
use crate::paths::{enumerate_sets, CentredCatalanSet};
use crate::trapezoid::{count_for_set, count_trapezoids, enumerate_trapezoids, TrapezoidError};
use crate::weights::{WeightError, WeightStore};

#[derive(Debug, thiserror::Error)]
pub enum IdentityError {
    #[error("l must be at least 1, got {0}")]
    BadL(i64),
    #[error("{what} is not an integer: {value}")]
    NotInteger { what: &'static str, value: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Trapezoid(#[from] TrapezoidError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

/// `∏_{i<j} (x_j - x_i)(1 + x_i + x_i x_j)` in `n` variables.
fn pair_product(n: usize) -> MultiLaurent<BigInt> {
    let mut p = MultiLaurent::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let xi = MultiLaurent::var(n, i);
            let xj = MultiLaurent::var(n, j);
            let diff = xj.sub(&xi);
            let other = MultiLaurent::one(n).add(&xi).add(&xi.mul(&xj));
            p = p.mul(&diff.mul(&other));
        }
    }
    p
}

/// Exponent of `x_i` in the monomial prefactor, negated: the integrand is
/// `x^{-target} (1+x_{u+1})^l ⋯ (1+x_n)^l · pair_product`.
fn ct_targets(s: &CentredCatalanSet, l: i64) -> Vec<i64> {
    let n = s.size() as i64 - 1;
    let u = s.negatives().len();
    s.negatives()
        .iter()
        .chain(s.positives().iter())
        .enumerate()
        .map(|(i, &si)| if i < u { n + si } else { n + si - 2 + l })
        .collect()
}

/// The full Laurent integrand, expanded.
pub fn constant_term_integrand(s: &CentredCatalanSet, l: i64) -> Result<MultiLaurent<BigInt>, IdentityError> {
    if l < 1 {
        return Err(IdentityError::BadL(l));
    }
    let n = s.size() - 1;
    let u = s.negatives().len();
    let mut p = pair_product(n);
    for i in u..n {
        let one_plus = MultiLaurent::one(n).add(&MultiLaurent::var(n, i));
        p = p.mul(&one_plus.pow(l as u32));
    }
    let shift: Vec<i32> = ct_targets(s, l).iter().map(|&t| -(t as i32)).collect();
    Ok(p.mul(&MultiLaurent::monomial(shift, BigInt::one())))
}

/// Constant term of the integrand. Each term `c·x^e` of the pair product
/// contributes `c·∏_{i>u} C(l, target_i - e_i)` when `e_i = target_i` for
/// all `i ≤ u`.
pub fn constant_term_weight(s: &CentredCatalanSet, l: i64, limits: &Limits) -> Result<BigInt, IdentityError> {
    if l < 1 {
        return Err(IdentityError::BadL(l));
    }
    limits.check_set_size(s.size())?;
    let u = s.negatives().len();
    let targets = ct_targets(s, l);
    let mut total = BigInt::zero();
    'terms: for (e, c) in pair_product(s.size() - 1).terms() {
        let mut term = c.clone();
        for (i, (&ei, &ti)) in e.iter().zip(&targets).enumerate() {
            if i < u {
                if ei as i64 != ti {
                    continue 'terms;
                }
            } else {
                term *= binomial(l, ti - ei as i64);
                if term.is_zero() {
                    continue 'terms;
                }
            }
        }
        total += term;
    }
    Ok(total)
}

/// Total number of `(n,l)`-trapezoids as a polynomial in `l`.
pub fn product_formula(n: usize) -> UniPoly {
    let n = n as i64;
    let h = |a: i64| a.div_euclid(2);
    let mut c = rat(2).pow((h(n + 1) * h(n + 2) - h(n)) as i32);
    for i in 1..=h(n + 1) {
        c *= Rational::new(factorial((i - 1) as u64), factorial((n - i) as u64));
    }
    let half = UniPoly::linear(frac(1, 2), rat(0));
    let at = |off: Rational| &half + &UniPoly::constant(off);
    let mut p = UniPoly::constant(c);
    let mut i = 0;
    while h(n - 4 * i) > 0 || h(n - 4 * i - 1) > 0 {
        let a = at(rat(3 * i + 2));
        p = p * pochhammer(&a, h(n - 4 * i - 1)) * pochhammer(&a, h(n - 4 * i - 2));
        p = p * pochhammer(&at(rat(2 * h(n) - i) + frac(1, 2)), h(n - 4 * i));
        p = p * pochhammer(&at(rat(2 * h(n - 1) - i) + frac(3, 2)), h(n - 4 * i - 3));
        i += 1;
    }
    p
}

/// [`product_formula`] at an integer `l`; integrality is checked.
pub fn product_value(n: usize, l: i64) -> Result<BigInt, IdentityError> {
    let v = product_formula(n).eval_int(l);
    to_integer(&v).ok_or_else(|| IdentityError::NotInteger { what: "product formula", value: v.to_string() })
}

/// `det_{0≤i,j<n} (C(l+i+j, j) + δ_ij)`.
pub fn det_andrews(n: usize, l: i64) -> Result<BigInt, IdentityError> {
    let m: Vec<Vec<BigInt>> = (0..n as i64)
        .map(|i| (0..n as i64).map(|j| binomial(l + i + j, j) + BigInt::from((i == j) as u8)).collect())
        .collect();
    Ok(det_exact(&m)?)
}

/// `det_{0≤i,j<n} (C(l+i+j, j)·(1-(-ω)^{j+k-i})/(1+ω))` over `ℤ[ω]`, `i`
/// indexing rows. `1/(1+ω) = -ω`.
pub fn det_asm_variant(n: usize, l: i64, k: i64) -> Result<Eisenstein, IdentityError> {
    let inv = -Eisenstein::omega();
    let m: Vec<Vec<Eisenstein>> = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| {
                    let factor = Eisenstein::one() - Eisenstein::neg_omega_pow(j + k - i);
                    Eisenstein::from_int(binomial(l + i + j, j)) * factor * inv.clone()
                })
                .collect()
        })
        .collect();
    Ok(det_exact(&m)?)
}

/// `(-ω)^{-n}·det_asm_variant(n, l, 3)` as an integer.
pub fn det_asm_normalized(n: usize, l: i64) -> Result<BigInt, IdentityError> {
    let d = det_asm_variant(n, l, 3)? * Eisenstein::neg_omega_pow(-(n as i64));
    d.to_integer().ok_or_else(|| IdentityError::NotInteger { what: "normalised determinant", value: d.to_string() })
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

impl IdentityReport {
    pub fn new(identity: &str, parameters: &[(&str, String)], lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        IdentityReport {
            identity: identity.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            equal: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Constant term against the weight polynomial for every irreducible set of
/// size `2..=max_size` and `l ∈ 1..=max_l`.
pub fn verify_constant_term(store: &WeightStore, max_size: usize, max_l: i64) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for size in 2..=max_size {
        for s in enumerate_sets(size, store.limits())? {
            if !s.is_irreducible() {
                continue;
            }
            let w = store.set_weight(&s)?;
            for l in 1..=max_l {
                let ct = constant_term_weight(&s, l, store.limits())?;
                let params = [("set", s.to_string()), ("l", l.to_string())];
                out.push(IdentityReport::new("constant-term", &params, ct, w.eval_int(l)));
            }
        }
    }
    Ok(out)
}

/// `Σ_S w_l(S)` against the product formula, as polynomials.
pub fn verify_product_polynomial(store: &WeightStore, max_n: usize) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let sets = enumerate_sets(n + 1, store.limits())?;
        store.precompute(&sets)?;
        let mut sum = UniPoly::zero();
        for s in &sets {
            sum = sum + store.set_weight(s)?;
        }
        out.push(IdentityReport::new("product", &[("n", n.to_string())], sum.factored(), product_formula(n).factored()));
    }
    Ok(out)
}

pub fn verify_det_andrews(max_n: usize, max_l: i64) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for l in 0..=max_l {
            let params = [("n", n.to_string()), ("l", l.to_string())];
            out.push(IdentityReport::new("det-andrews", &params, det_andrews(n, l)?, product_value(n, l)?));
        }
    }
    Ok(out)
}

/// Normalised `k = 3` determinant against the product formula, and the
/// `k = 1, l = 0` determinant against the given reference values.
pub fn verify_det_asm(max_n: usize, max_l: i64, asm_numbers: &[BigInt]) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for l in 0..=max_l {
            let params = [("n", n.to_string()), ("l", l.to_string()), ("k", "3".into())];
            out.push(IdentityReport::new("det-asm", &params, det_asm_normalized(n, l)?, product_value(n, l)?));
        }
    }
    for (n, want) in (1..).zip(asm_numbers) {
        let params = [("n", n.to_string()), ("l", "0".into()), ("k", "1".into())];
        out.push(IdentityReport::new("det-asm", &params, det_asm_variant(n, 0, 1)?, Eisenstein::from_int(want.clone())));
    }
    Ok(out)
}

/// Number of alternating sign matrices of order `n`,
/// `∏_{j=0}^{n-1} (3j+1)!/(n+j)!`.
pub fn asm_number(n: u64) -> BigInt {
    let mut r = Rational::one();
    for j in 0..n {
        r *= Rational::new(factorial(3 * j + 1), factorial(n + j));
    }
    r.to_integer()
}

/// Product formula against exhaustive counts, `n ≤ max_n`, `l ≤ max_l`.
pub fn verify_product_counts(max_n: usize, max_l: i64, limits: &Limits) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for l in 1..=max_l {
            let params = [("n", n.to_string()), ("l", l.to_string())];
            out.push(IdentityReport::new("product-count", &params, count_trapezoids(n, l as usize, limits)?, product_value(n, l)?));
        }
    }
    Ok(out)
}

/// Splitting every trapezoid with `n ≤ max_n` rows at every admissible
/// row and joining the parts gives it back, with the parts indexed by the
/// split of its set.
pub fn verify_splitting(max_n: usize, max_l: usize, limits: &Limits) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for l in 1..=max_l {
            let (mut trips, mut good) = (0u64, 0u64);
            for a in enumerate_trapezoids(n, l, limits)? {
                let s = a.catalan_set()?;
                for n1 in 1..n {
                    let Some((s1, s2)) = s.split_at(n1) else { continue };
                    trips += 1;
                    let (bottom, top) = a.split(n1)?;
                    if bottom.catalan_set()? == s1 && top.catalan_set()? == s2 && bottom.join(&top)? == a {
                        good += 1;
                    }
                }
            }
            let params = [("n", n.to_string()), ("l", l.to_string())];
            out.push(IdentityReport::new("splitting", &params, good, trips));
        }
    }
    Ok(out)
}

/// `w_l(S1∘S2) = w_l(S1)·w_{l+2|S1|-2}(S2)` on exhaustive counts, for all
/// nontrivial pairs with `|S1∘S2| ≤ max_size`.
pub fn verify_multiplicativity(max_size: usize, max_l: usize, limits: &Limits) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut sets = Vec::new();
    for size in 2..max_size {
        sets.extend(enumerate_sets(size, limits)?);
    }
    let mut out = Vec::new();
    for s1 in &sets {
        for s2 in sets.iter().filter(|s2| s1.size() + s2.size() - 1 <= max_size) {
            let c = s1.concat(s2);
            let shift = 2 * s1.size() - 2;
            for l in 1..=max_l {
                let lhs = count_for_set(&c, l, limits)?;
                let rhs = count_for_set(s1, l, limits)? * count_for_set(s2, l + shift, limits)?;
                let params = [("s1", s1.to_string()), ("s2", s2.to_string()), ("l", l.to_string())];
                out.push(IdentityReport::new("multiplicativity", &params, lhs, rhs));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Method;

    fn set(s: &str) -> CentredCatalanSet {
        s.parse().unwrap()
    }

    #[test]
    fn small_constant_terms() {
        let lim = Limits::default();
        for l in 1..=5 {
            assert_eq!(constant_term_weight(&set("{0,1}"), l, &lim).unwrap(), BigInt::one());
            assert_eq!(constant_term_weight(&set("{-1,0}"), l, &lim).unwrap(), BigInt::one());
            assert_eq!(constant_term_weight(&set("{-1,0,1}"), l, &lim).unwrap(), BigInt::from(l + 1));
        }
    }

    #[test]
    fn expanded_integrand_matches_extraction() {
        let lim = Limits::default();
        for s in ["{-1,0,1}", "{-2,-1,0,1}", "{-1,0,1,3}", "{-2,-1,0,1,2}"] {
            for l in 1..=3 {
                let full = constant_term_integrand(&set(s), l).unwrap().constant_term();
                assert_eq!(full, constant_term_weight(&set(s), l, &lim).unwrap(), "{s} l={l}");
            }
        }
    }

    #[test]
    fn product_formula_small() {
        assert_eq!(product_formula(1), UniPoly::constant(rat(2)));
        assert_eq!(product_formula(2), UniPoly::from_ints(&[5, 1]));
        assert_eq!(product_value(4, 2).unwrap(), BigInt::from(429));
    }

    #[test]
    fn structural_reports() {
        let lim = Limits::default();
        assert_eq!((1..=5).map(asm_number).collect::<Vec<_>>(), [1, 2, 7, 42, 429].map(BigInt::from));
        assert!(verify_splitting(3, 2, &lim).unwrap().iter().all(|r| r.equal));
        assert!(verify_multiplicativity(4, 2, &lim).unwrap().iter().all(|r| r.equal));
        assert!(verify_product_counts(3, 3, &lim).unwrap().iter().all(|r| r.equal));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_andrews(1, 2).unwrap(), BigInt::from(2));
        assert_eq!(det_andrews(2, 2).unwrap(), BigInt::from(7));
        assert_eq!(det_andrews(4, 2).unwrap(), BigInt::from(429));
        assert_eq!(det_asm_variant(1, 0, 1).unwrap(), Eisenstein::one());
        assert_eq!(det_asm_variant(3, 0, 1).unwrap(), Eisenstein::from_int(7));
        assert_eq!(det_asm_normalized(2, 2).unwrap(), BigInt::from(7));
    }

    #[test]
    fn reports() {
        let store = WeightStore::new(Method::Operator, Limits::default());
        let bad: Vec<_> = verify_constant_term(&store, 4, 3).unwrap().into_iter().filter(|r| !r.equal).collect();
        assert!(bad.is_empty(), "{bad:?}");
        let bad: Vec<_> = verify_product_polynomial(&store, 3).unwrap().into_iter().filter(|r| !r.equal).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
