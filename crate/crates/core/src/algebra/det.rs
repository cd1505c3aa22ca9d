//! Exact determinants by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::eisenstein::Eisenstein;
use super::rational::Rational;
use super::AlgebraError;

/// A commutative ring with exact division where the quotient exists.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl ExactRing for Eisenstein {
    fn zero() -> Self {
        Eisenstein::zero()
    }
    fn one() -> Self {
        Eisenstein::one()
    }
    fn is_zero(&self) -> bool {
        Eisenstein::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Eisenstein::exact_div(self, rhs)
    }
}

/// Determinant of a square matrix given as rows.
pub fn det_exact<T: ExactRing>(matrix: &[Vec<T>]) -> Result<T, AlgebraError> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::NonSquare);
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev).ok_or(AlgebraError::InexactDivision)?;
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Leibniz expansion; independent of the elimination path.
    fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
        fn rec(m: &[Vec<BigInt>], row: usize, used: &mut Vec<bool>, sign: i64) -> BigInt {
            if row == m.len() {
                return BigInt::from(sign);
            }
            let mut acc = BigInt::from(0);
            for c in 0..m.len() {
                if used[c] {
                    continue;
                }
                let inversions = used[c + 1..].iter().filter(|&&u| u).count();
                let s = if inversions % 2 == 0 { sign } else { -sign };
                used[c] = true;
                acc += &m[row][c] * rec(m, row + 1, used, s);
                used[c] = false;
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.len()], 1)
    }

    #[test]
    fn identity_and_small_cases() {
        assert_eq!(det_exact(&ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(det_exact(&ints(&[&[2, 3], &[1, 5]])).unwrap(), BigInt::from(7));
        assert_eq!(det_exact(&ints(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det_exact(&ints(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::from(0));
        assert!(matches!(det_exact(&ints(&[&[1, 2]])), Err(AlgebraError::NonSquare)));
    }

    #[test]
    fn agrees_with_leibniz() {
        let m = ints(&[&[0, 2, -1, 3], &[4, 0, 1, 1], &[2, -3, 0, 5], &[1, 1, 1, 0]]);
        assert_eq!(det_exact(&m).unwrap(), leibniz(&m));
    }

    #[test]
    fn eisenstein_diagonal() {
        let w = Eisenstein::omega();
        let m = vec![vec![w.clone(), Eisenstein::zero()], vec![Eisenstein::zero(), w]];
        assert_eq!(det_exact(&m).unwrap(), Eisenstein::new(-1, -1));
    }
}
