//! The operator formula for the weight of an irreducible set.
//!
//! With `E_p` the unit shift in `x_p`, the operator `Id + Δ̄_pΔ̄_q + Δ̄_q`
//! equals `1 - E_p + E_pE_q`, and the difference powers are
//! `(-Δ̄_i)^a = (1 - E_i)^a` and `Δ_i^b = (1 - E_i^{-1})^b`. The whole
//! expression is therefore a finite sum `Σ_γ d_γ V(k + γ)` of shifted
//! scaled Vandermonde products `V(x) = ∏_{p<q} (x_q - x_p)/(q - p)`, and
//! that sum is what [`operator_weight`] evaluates. [`m_n`] and
//! [`operator_weight_expanded`] build the multivariate polynomial first;
//! they are slower and serve as a cross-check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{binomial, rat};
use crate::algebra::{MultiLaurent, Rational, UniPoly};
use crate::paths::CentredCatalanSet;

use super::WeightError;

/// Linear combination of shift monomials `E^γ`.
type ShiftOp = HashMap<Vec<i32>, BigInt>;

fn op_mul(a: &ShiftOp, b: &ShiftOp) -> ShiftOp {
    let mut out: ShiftOp = HashMap::with_capacity(a.len() * b.len().min(8));
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn unit(n: usize) -> ShiftOp {
    HashMap::from([(vec![0; n], BigInt::one())])
}

/// `∏_{p<q} (1 - E_p + E_pE_q)`.
fn m_n_operator(n: usize) -> ShiftOp {
    let mut acc = unit(n);
    for p in 0..n {
        for q in p + 1..n {
            let mut f = unit(n);
            let mut ep = vec![0; n];
            ep[p] = 1;
            f.insert(ep.clone(), BigInt::from(-1));
            ep[q] = 1;
            f.insert(ep, BigInt::one());
            acc = op_mul(&acc, &f);
        }
    }
    acc
}

/// `(1 - E_i^{dir})^a` with `dir = ±1`.
fn difference_power(n: usize, i: usize, dir: i32, a: u32) -> ShiftOp {
    (0..=a)
        .map(|j| {
            let mut e = vec![0; n];
            e[i] = dir * j as i32;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (e, binomial(a as i64, j as i64) * sign)
        })
        .collect()
}

/// Difference exponents: `(-Δ̄_i)^{-s_i-1}` on the negatives and
/// `Δ_i^{s_i-1}` on the positives. The entries for `s_i = ±1` are zero.
pub fn difference_exponents(s: &CentredCatalanSet) -> Vec<(i32, u32)> {
    s.negatives()
        .iter()
        .map(|&x| (1, (-x - 1) as u32))
        .chain(s.positives().iter().map(|&x| (-1, (x - 1) as u32)))
        .collect()
}

/// Bottom entries as affine polynomials in `l`: negatives `s_i + 1`,
/// positives `l + s_i - 1`.
pub fn symbolic_k(s: &CentredCatalanSet) -> Vec<(i64, i64)> {
    s.negatives()
        .iter()
        .map(|&x| (0, x + 1))
        .chain(s.positives().iter().map(|&x| (1, x - 1)))
        .collect()
}

fn check_irreducible(s: &CentredCatalanSet) -> Result<(), WeightError> {
    if s.size() < 2 || !s.is_irreducible() {
        return Err(WeightError::Reducible(s.clone()));
    }
    Ok(())
}

fn full_operator(s: &CentredCatalanSet) -> ShiftOp {
    let n = s.size() - 1;
    let mut op = m_n_operator(n);
    for (i, (dir, a)) in difference_exponents(s).into_iter().enumerate() {
        if a > 0 {
            op = op_mul(&op, &difference_power(n, i, dir, a));
        }
    }
    op
}

/// `∏_{d=1}^{n-1} d^{n-d}`, the denominator of `V`.
fn vandermonde_denominator(n: usize) -> BigInt {
    let mut d = BigInt::one();
    for p in 0..n {
        for q in p + 1..n {
            d *= (q - p) as u64;
        }
    }
    d
}

/// Weight of an irreducible set, exact in `l`.
pub fn operator_weight(s: &CentredCatalanSet) -> Result<UniPoly, WeightError> {
    check_irreducible(s)?;
    let n = s.size() - 1;
    let k = symbolic_k(s);
    let op = full_operator(s);
    // Pairs mixing a negative and a positive index contribute `l + e`; the
    // rest are constants. Group by the multiset of those `e`.
    let mut grouped: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for (gamma, d) in &op {
        let mut constant = d.clone();
        let mut shifts = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let e = k[q].1 + gamma[q] as i64 - k[p].1 - gamma[p] as i64;
                if k[q].0 == k[p].0 {
                    constant *= e;
                } else {
                    shifts.push(e);
                }
            }
            if constant.is_zero() {
                break;
            }
        }
        if constant.is_zero() {
            continue;
        }
        shifts.sort_unstable();
        *grouped.entry(shifts).or_default() += constant;
    }
    let mut keys: Vec<_> = grouped.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    keys.sort();
    let mut out = UniPoly::zero();
    for (shifts, c) in keys {
        let roots: Vec<Rational> = shifts.iter().map(|&e| rat(-e)).collect();
        out = out + UniPoly::from_roots(Rational::from_integer(c), &roots);
    }
    Ok(out.scale(&Rational::new(BigInt::one(), vandermonde_denominator(n))))
}

/// `∏_{p<q} (x_q - x_p)/(q - p)`.
pub fn scaled_vandermonde(n: usize) -> MultiLaurent<Rational> {
    let mut v = MultiLaurent::one(n);
    for p in 0..n {
        for q in p + 1..n {
            let f: MultiLaurent<Rational> = MultiLaurent::var(n, q).sub(&MultiLaurent::var(n, p));
            v = v.mul(&f);
        }
    }
    v.scale(&Rational::new(BigInt::one(), vandermonde_denominator(n)))
}

/// `M_n` as an explicit polynomial in `x_1,…,x_n`.
pub fn m_n(n: usize) -> MultiLaurent<Rational> {
    let mut cur = scaled_vandermonde(n);
    for p in 0..n {
        for q in p + 1..n {
            let ep = cur.shift(p, 1).expect("polynomial");
            let epq = ep.shift(q, 1).expect("polynomial");
            cur = cur.sub(&ep).add(&epq);
        }
    }
    cur
}

/// Same value as [`operator_weight`], computed by differencing the expanded
/// `M_n` and substituting `x = k`.
pub fn operator_weight_expanded(s: &CentredCatalanSet) -> Result<UniPoly, WeightError> {
    check_irreducible(s)?;
    let n = s.size() - 1;
    let mut p = m_n(n);
    for (i, (dir, a)) in difference_exponents(s).into_iter().enumerate() {
        for _ in 0..a {
            p = if dir == 1 {
                p.forward_diff(i)?.scale(&rat(-1))
            } else {
                p.backward_diff(i)?
            };
        }
    }
    let values: Vec<UniPoly> = symbolic_k(s).into_iter().map(|(a, b)| UniPoly::linear(rat(a), rat(b))).collect();
    Ok(p.substitute(&values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> CentredCatalanSet {
        s.parse().unwrap()
    }

    #[test]
    fn m_2_is_x2_minus_x1_plus_1() {
        let m = m_n(2);
        assert_eq!(m.len(), 3);
        assert_eq!(m.coefficient(&[0, 1]), rat(1));
        assert_eq!(m.coefficient(&[1, 0]), rat(-1));
        assert_eq!(m.coefficient(&[0, 0]), rat(1));
    }

    #[test]
    fn small_weights() {
        assert_eq!(operator_weight(&set("{-1,0,1}")).unwrap(), UniPoly::from_ints(&[1, 1]));
        assert_eq!(operator_weight(&set("{0,1}")).unwrap(), UniPoly::one());
        assert_eq!(operator_weight(&set("{-1,0}")).unwrap(), UniPoly::one());
        assert!(operator_weight(&set("{0,1,2}")).is_err());
    }

    #[test]
    fn both_routes_agree() {
        for s in ["{-1,0,1}", "{-2,-1,0,1}", "{-1,0,1,2}", "{-2,-1,0,1,2}", "{-3,-1,0,1,2}", "{-2,-1,0,1,3}"] {
            let s = set(s);
            assert_eq!(operator_weight(&s).unwrap(), operator_weight_expanded(&s).unwrap(), "{s}");
        }
    }
}
