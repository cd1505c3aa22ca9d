//! Sparse multivariate Laurent polynomials with exact coefficients.
//!
//! Exponent vectors may be negative. The same type doubles as an ordinary
//! multivariate polynomial for the finite-difference operators, which are
//! only defined when every exponent is nonnegative.

use std::collections::HashMap;
use std::fmt;
use std::ops::{AddAssign, Neg};

use num_bigint::BigInt;
use num_traits::{Num, Zero};

use super::rational::{binomial, Rational};
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Coefficient rings usable in [`MultiLaurent`].
pub trait Coefficient:
    Clone + PartialEq + Num + Neg<Output = Self> + From<BigInt> + for<'a> AddAssign<&'a Self>
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + Num + Neg<Output = T> + From<BigInt> + for<'a> AddAssign<&'a T>
{
}

pub type Exponents = Vec<i32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiLaurent<C = Rational> {
    nvars: usize,
    terms: HashMap<Exponents, C>,
}

impl<C: Coefficient> MultiLaurent<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurent { nvars, terms: HashMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(exps: Exponents, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(exps, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by exponent vector, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(Exponents, C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, exps: Exponents, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn coefficient(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut acc: HashMap<Exponents, C> = HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&e) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiLaurent { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Coefficient of `x_var^exp`, as a Laurent polynomial in which `x_var`
    /// no longer occurs.
    pub fn coefficient_of(&self, var: usize, exp: i32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == exp {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Constant term, eliminating the variables one at a time in ascending
    /// index order.
    pub fn constant_term(&self) -> C {
        let mut cur = self.clone();
        for v in 0..self.nvars {
            cur = cur.coefficient_of(v, 0);
        }
        cur.coefficient(&vec![0; self.nvars])
    }

    fn ensure_polynomial(&self) -> Result<(), AlgebraError> {
        if self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(AlgebraError::NotPolynomial);
        }
        Ok(())
    }

    /// `f(x + c·e_var)`, valid only for polynomials.
    pub fn shift(&self, var: usize, by: i64) -> Result<Self, AlgebraError> {
        self.ensure_polynomial()?;
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let d = e[var];
            // (x + by)^d = Σ binom(d, j) by^(d−j) x^j
            for j in 0..=d {
                let k = binomial(d as i64, j as i64) * BigInt::from(by).pow((d - j) as u32);
                if k.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[var] = j;
                out.add_term(e2, c.clone() * C::from(k));
            }
        }
        Ok(out)
    }

    /// Forward difference `f(x + e_var) − f(x)`.
    pub fn forward_diff(&self, var: usize) -> Result<Self, AlgebraError> {
        Ok(self.shift(var, 1)?.sub(self))
    }

    /// Backward difference `f(x) − f(x − e_var)`.
    pub fn backward_diff(&self, var: usize) -> Result<Self, AlgebraError> {
        Ok(self.sub(&self.shift(var, -1)?))
    }

    /// Substitutes `x_i ↦ values[i]` where each value is a polynomial in `l`.
    pub fn substitute(&self, values: &[UniPoly]) -> Result<UniPoly, AlgebraError>
    where
        C: IntoRational,
    {
        self.ensure_polynomial()?;
        assert_eq!(values.len(), self.nvars);
        let mut powers: Vec<Vec<UniPoly>> = values.iter().map(|v| vec![UniPoly::one(), v.clone()]).collect();
        let mut out = UniPoly::zero();
        for (e, c) in self.sorted_terms() {
            let mut term = UniPoly::constant(c.into_rational());
            for (i, &d) in e.iter().enumerate() {
                let d = d as usize;
                while powers[i].len() <= d {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                term = term * &powers[i][d];
            }
            out = out + term;
        }
        Ok(out)
    }
}

/// Conversion used when a polynomial is collapsed to ℚ[l].
pub trait IntoRational {
    fn into_rational(self) -> Rational;
}

impl IntoRational for Rational {
    fn into_rational(self) -> Rational {
        self
    }
}

impl IntoRational for BigInt {
    fn into_rational(self) -> Rational {
        Rational::from_integer(self)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for MultiLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, d)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    type P = MultiLaurent<BigInt>;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn constant_term_of_antisymmetric_binomial() {
        // x − 1/x
        let p = P::var(1, 0).sub(&P::var_pow(1, 0, -1));
        assert_eq!(p.constant_term(), int(0));
        // (x + 1/x)^2 = x^2 + 2 + x^-2
        let q = P::var(1, 0).add(&P::var_pow(1, 0, -1)).pow(2);
        assert_eq!(q.constant_term(), int(2));
    }

    #[test]
    fn extraction_drops_the_variable() {
        let p = P::monomial(vec![2, -1], int(3)).add(&P::monomial(vec![2, 4], int(5)));
        let c = p.coefficient_of(0, 2);
        assert_eq!(c.coefficient(&[0, -1]), int(3));
        assert_eq!(c.coefficient(&[0, 4]), int(5));
        assert!(p.coefficient_of(0, 1).is_empty());
    }

    #[test]
    fn differences_of_a_quadratic() {
        // f = x^2 y
        let f: MultiLaurent<Rational> = MultiLaurent::monomial(vec![2, 1], rat(1));
        let df = f.forward_diff(0).unwrap();
        // (2x + 1) y
        assert_eq!(df.coefficient(&[1, 1]), rat(2));
        assert_eq!(df.coefficient(&[0, 1]), rat(1));
        let bf = f.backward_diff(0).unwrap();
        // (2x − 1) y
        assert_eq!(bf.coefficient(&[0, 1]), rat(-1));
        let laurent: MultiLaurent<Rational> = MultiLaurent::var_pow(2, 0, -1);
        assert!(laurent.forward_diff(0).is_err());
    }

    #[test]
    fn substitution_into_l() {
        // x1 * x2 at (0 → 2, 1 → l) = 2l
        let f: MultiLaurent<Rational> = MultiLaurent::monomial(vec![1, 1], rat(1));
        let vals = [UniPoly::constant(rat(2)), UniPoly::var()];
        assert_eq!(f.substitute(&vals).unwrap(), UniPoly::from_ints(&[0, 2]));
    }
}
