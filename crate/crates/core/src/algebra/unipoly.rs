//! Dense univariate polynomials over the rationals, in the variable `l`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, divisors, format_rational, parse_rational, rat, Rational};
use super::AlgebraError;

/// Coefficients in ascending degree; never carries a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `l`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a·l + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `lead · ∏ (l − r)`.
    pub fn from_roots(lead: Rational, roots: &[Rational]) -> Self {
        roots.iter().fold(Self::constant(lead), |acc, r| {
            acc * Self::linear(Rational::one(), -r.clone())
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self)
    }

    /// `self(inner(l))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * inner + Self::constant(c.clone()))
    }

    /// `self(l + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose(&Self::linear(Rational::one(), c.clone()))
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact divisibility in ℚ[l].
    pub fn is_divisible_by(&self, divisor: &UniPoly) -> bool {
        match self.div_rem(divisor) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Integer content-free form with positive leading coefficient, and the
    /// rational factor `c` with `self = c · primitive`.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// All rational roots with multiplicity, in descending order.
    pub fn rational_roots(&self) -> Result<Vec<Rational>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let (_, prim) = self.primitive_part();
        let mut work = UniPoly::from_coeffs(prim.iter().cloned().map(Rational::from_integer).collect());
        let mut roots = Vec::new();
        while work.degree().unwrap_or(0) > 0 && work.coeff(0).is_zero() {
            roots.push(Rational::zero());
            work = UniPoly::from_coeffs(work.coeffs[1..].to_vec());
        }
        if work.degree().unwrap_or(0) > 0 {
            let (_, ints) = work.primitive_part();
            let a0 = ints[0].clone();
            let an = ints.last().unwrap().clone();
            let small = BigInt::from(TRIAL_DIVISION_BOUND);
            let candidates = if a0.abs() <= small && an.abs() <= small {
                let mut candidates = Vec::new();
                for p in divisors(&a0) {
                    for q in divisors(&an) {
                        let c = Rational::new(p.clone(), q.clone());
                        candidates.push(c.clone());
                        candidates.push(-c);
                    }
                }
                candidates
            } else {
                isolated_rational_roots(&work)?
            };
            let mut candidates = candidates;
            candidates.sort();
            candidates.dedup();
            for c in candidates.into_iter().rev() {
                loop {
                    if work.degree().unwrap_or(0) == 0 || !work.eval(&c).is_zero() {
                        break;
                    }
                    let (q, r) = work.div_rem(&UniPoly::linear(Rational::one(), -c.clone()))?;
                    debug_assert!(r.is_zero());
                    work = q;
                    roots.push(c.clone());
                }
            }
        }
        roots.sort_by(|a, b| b.cmp(a));
        Ok(roots)
    }

    /// Human-readable factorization over ℚ into linear factors times a
    /// primitive cofactor, e.g. `(1/6)(l+1)(l+6)(2l+7)`.
    pub fn factored(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let roots = self.rational_roots().expect("nonzero");
        let mut linear: Vec<(BigInt, BigInt)> = roots
            .iter()
            .map(|r| (r.denom().clone(), -r.numer().clone()))
            .collect();
        let product = linear.iter().fold(UniPoly::one(), |acc, (a, b)| {
            acc * UniPoly::linear(Rational::from_integer(a.clone()), Rational::from_integer(b.clone()))
        });
        let (cofactor, rem) = self.div_rem(&product).expect("nonzero product");
        debug_assert!(rem.is_zero());
        let (content, prim) = cofactor.primitive_part();

        // monic factors first, then the rest; each group by increasing constant
        linear.sort_by(|x, y| (!x.0.is_one(), &x.0, &x.1).cmp(&(!y.0.is_one(), &y.0, &y.1)));
        let mut factors = String::new();
        let mut i = 0;
        while i < linear.len() {
            let mut j = i;
            while j < linear.len() && linear[j] == linear[i] {
                j += 1;
            }
            let (a, b) = &linear[i];
            let body = int_poly_string(&[b.clone(), a.clone()]);
            if b.is_zero() && a.is_one() {
                factors.push('l');
            } else {
                factors.push_str(&format!("({body})"));
            }
            if j - i > 1 {
                factors.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        if prim.len() > 1 {
            factors.push_str(&format!("({})", int_poly_string(&prim)));
        }
        if factors.is_empty() {
            return format_rational(&content);
        }
        let prefix = if content.is_one() {
            String::new()
        } else if content == -Rational::one() {
            "-".to_string()
        } else if content.is_integer() {
            content.numer().to_string()
        } else {
            format!("({})", format_rational(&content))
        };
        prefix + &factors
    }

    /// Serialized form: ascending coefficients `a0/b0,a1/b1,...`.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0/1".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Pochhammer symbol `(x)_m = x(x+1)…(x+m−1)`; the empty product for `m ≤ 0`.
pub fn pochhammer(x: &UniPoly, m: i64) -> UniPoly {
    (0..m.max(0)).fold(UniPoly::one(), |acc, j| acc * (x + &UniPoly::constant(rat(j))))
}

/// Exact Newton interpolation through `(x, y)` samples with distinct `x`.
pub fn interpolate(points: &[(i64, Rational)]) -> Result<UniPoly, AlgebraError> {
    if points.is_empty() {
        return Err(AlgebraError::Interpolation("no sample points".into()));
    }
    let mut xs: Vec<i64> = points.iter().map(|p| p.0).collect();
    xs.sort_unstable();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(AlgebraError::Interpolation("duplicate abscissae".into()));
    }
    let xs: Vec<i64> = points.iter().map(|p| p.0).collect();
    let mut table: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    let n = points.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = rat(xs[i] - xs[i - level]);
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
    }
    let mut result = UniPoly::constant(table[n - 1].clone());
    for i in (0..n - 1).rev() {
        result = result * UniPoly::linear(Rational::one(), rat(-xs[i])) + UniPoly::constant(table[i].clone());
    }
    Ok(result)
}

/// Descending-degree rendering of an integer polynomial in `l`, given
/// ascending coefficients.
fn int_poly_string(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => out.push('l'),
            _ => out.push_str(&format!("l^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({})", format_rational(&mag))?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("l")?,
                _ => write!(f, "l^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty coefficient list".into()));
        }
        let coeffs = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

/// Above this, candidate roots come from real root isolation instead of
/// trial division of the end coefficients.
const TRIAL_DIVISION_BOUND: i64 = 10_000_000_000;

fn derivative(p: &UniPoly) -> UniPoly {
    UniPoly::from_coeffs(p.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
}

fn monic(p: UniPoly) -> UniPoly {
    let lead = p.leading();
    p.scale(&(Rational::one() / lead))
}

fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, AlgebraError> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(monic(a))
}

fn sign_changes(chain: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = chain.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_chain(p: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let mut chain = vec![p.clone(), derivative(p)];
    while !chain[chain.len() - 1].is_zero() {
        let (_, r) = chain[chain.len() - 2].div_rem(&chain[chain.len() - 1])?;
        chain.push(-r);
    }
    chain.pop();
    Ok(chain)
}

/// The rational of least denominator in `[a, b]`.
fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    if !a.is_positive() {
        return Rational::zero();
    }
    let n = a.ceil();
    if &n <= b {
        return n;
    }
    let k = a.floor();
    k.clone() + Rational::one() / simplest_between(&(Rational::one() / (b - &k)), &(Rational::one() / (a - &k)))
}

/// Distinct rational roots of `p`, found without factoring its coefficients:
/// real roots of the squarefree part are bisected with a Sturm chain until
/// each interval is too narrow to hold two rationals whose denominators
/// divide the leading coefficient, and the simplest rational in it is tested.
fn isolated_rational_roots(p: &UniPoly) -> Result<Vec<Rational>, AlgebraError> {
    let mut s = monic(p.div_rem(&gcd(p, &derivative(p))?)?.0);
    let mut found = Vec::new();
    'restart: while s.degree().unwrap_or(0) > 0 {
        let (_, ints) = s.primitive_part();
        let lead = Rational::from_integer(ints.last().unwrap().clone());
        let eps = Rational::one() / (rat(2) * &lead * &lead);
        let bound = rat(2) + s.coeffs.iter().map(|c| c.abs()).fold(Rational::zero(), |m, c| if c > m { c } else { m });
        let chain = sturm_chain(&s)?;
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
            if count == 0 {
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            let candidate = if s.eval(&mid).is_zero() {
                Some(mid.clone())
            } else if count == 1 && &hi - &lo < eps {
                Some(simplest_between(&lo, &hi)).filter(|c| s.eval(c).is_zero())
            } else {
                None
            };
            if let Some(c) = candidate {
                s = s.div_rem(&UniPoly::linear(Rational::one(), -c.clone()))?.0;
                found.push(c);
                continue 'restart;
            }
            if count > 1 || &hi - &lo >= eps {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
        break;
    }
    Ok(found)
}

/// Largest exponent accepted by [`parse_factored`].
pub const MAX_PARSED_EXPONENT: u32 = 256;

/// Parses the output of [`UniPoly::factored`] (and hand-written forms in the
/// same notation such as `(1/12)(l+1)(l^3+23l^2+168l+360)`).
pub fn parse_factored(s: &str) -> Result<UniPoly, AlgebraError> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut p = FactoredParser { chars: &chars, pos: 0 };
    let mut acc = UniPoly::one();
    if p.peek() == Some('-') {
        p.pos += 1;
        acc = -acc;
    }
    if p.peek().is_some_and(|c| c.is_ascii_digit()) {
        let numer = p.integer()?;
        let denom = if p.peek() == Some('/') {
            p.pos += 1;
            p.integer()?
        } else {
            BigInt::one()
        };
        if denom.is_zero() {
            return Err(AlgebraError::Parse("zero denominator".into()));
        }
        acc = acc.scale(&Rational::new(numer, denom));
    } else if p.peek() == Some('(') && !p.group_mentions_l() {
        p.pos += 1;
        let start = p.pos;
        while p.peek().is_some_and(|c| c != ')') {
            p.pos += 1;
        }
        let text: String = chars[start..p.pos].iter().collect();
        p.expect(')')?;
        acc = acc.scale(&parse_rational(&text)?);
    }
    while let Some(c) = p.peek() {
        let factor = match c {
            'l' => {
                p.pos += 1;
                UniPoly::var()
            }
            '(' => {
                p.pos += 1;
                let f = p.sum()?;
                p.expect(')')?;
                f
            }
            _ => return Err(AlgebraError::Parse(format!("unexpected {c:?} at {}", p.pos))),
        };
        let e = p.exponent()?;
        acc = acc * factor.pow(e);
    }
    Ok(acc)
}

struct FactoredParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl FactoredParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), AlgebraError> {
        if self.peek() != Some(c) {
            return Err(AlgebraError::Parse(format!("expected {c:?} at {}", self.pos)));
        }
        self.pos += 1;
        Ok(())
    }

    fn group_mentions_l(&self) -> bool {
        self.chars[self.pos..].iter().take_while(|&&c| c != ')').any(|&c| c == 'l')
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| AlgebraError::Parse(format!("expected an integer at {start}")))
    }

    fn exponent(&mut self) -> Result<u32, AlgebraError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let e = self.integer()?;
        u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_PARSED_EXPONENT)
            .ok_or_else(|| AlgebraError::Parse(format!("exponent {e} too large")))
    }

    /// `term (± term)*` with `term = [int] [l[^int]]`.
    fn sum(&mut self) -> Result<UniPoly, AlgebraError> {
        let mut acc = UniPoly::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') if !first => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let has_digits = self.peek().is_some_and(|c| c.is_ascii_digit());
            let c = if has_digits { self.integer()? } else { BigInt::one() };
            let term = if self.peek() == Some('l') {
                self.pos += 1;
                let e = self.exponent()?;
                UniPoly::var().pow(e)
            } else if has_digits {
                UniPoly::one()
            } else {
                return Err(AlgebraError::Parse(format!("empty term at {}", self.pos)));
            };
            let term = term.scale(&Rational::from_integer(c));
            acc = if neg { acc - term } else { acc + term };
        }
        Ok(acc)
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for UniPoly {
    fn product<I: Iterator<Item = UniPoly>>(iter: I) -> Self {
        iter.fold(UniPoly::one(), |a, b| a * b)
    }
}

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> Self {
        iter.fold(UniPoly::zero(), |a, b| a + b)
    }
}
