//! Eisenstein integers `a + bω` with `ω² = −1 − ω`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eisenstein {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Eisenstein { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Complex conjugate; `ω̄ = ω² = −1 − ω`.
    pub fn conj(&self) -> Self {
        Eisenstein { a: &self.a - &self.b, b: -&self.b }
    }

    /// `N(a + bω) = a² − ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `(−ω)^m` for any integer `m`; `−ω` has order 6.
    pub fn neg_omega_pow(m: i64) -> Self {
        (-Self::omega()).pow(m.rem_euclid(6) as u32)
    }

    /// Exact quotient, if `rhs` divides `self` in ℤ[ω].
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let num = self.clone() * rhs.conj();
        let n = rhs.norm();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(Eisenstein { a: qa, b: qb })
    }

    /// The rational integer this represents, if `b = 0`.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Eisenstein { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Eisenstein { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = &self.b * &rhs.b;
        Eisenstein {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - bd,
        }
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => f.write_str("ω"),
            (true, false) => write!(f, "{}ω", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                let mag = self.b.abs();
                if mag.is_one() {
                    write!(f, "{}{}ω", self.a, sign)
                } else {
                    write!(f, "{}{}{}ω", self.a, sign, mag)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_of_unity() {
        let w = Eisenstein::omega();
        let w2 = w.clone() * w.clone();
        assert_eq!(w2, Eisenstein::new(-1, -1));
        assert!((Eisenstein::one() + w.clone() + w2.clone()).is_zero());
        assert_eq!(w2 * w, Eisenstein::one());
        assert_eq!(Eisenstein::neg_omega_pow(3), Eisenstein::from_int(-1));
        assert_eq!(Eisenstein::neg_omega_pow(-1), Eisenstein::neg_omega_pow(5));
    }

    #[test]
    fn one_plus_omega_is_a_unit() {
        let u = Eisenstein::one() + Eisenstein::omega();
        let inv = Eisenstein::one().exact_div(&u).unwrap();
        assert_eq!(inv, -Eisenstein::omega());
        assert_eq!(Eisenstein::from_int(1).exact_div(&Eisenstein::from_int(2)), None);
    }
}
