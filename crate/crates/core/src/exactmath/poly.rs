use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::{ExactInt, ExactRat};

/// Dense univariate polynomial over Z; `coeffs[i]` multiplies `t^i`.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<ExactInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: ExactInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &ExactInt) -> ExactInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_rat(&self, t: &ExactRat) -> ExactRat {
        let mut acc = ExactRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + ExactRat::from_integer(c.clone());
        }
        acc
    }

    /// Value at `t` modulo `p`, with `t` already reduced.
    pub fn eval_mod(&self, t: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let cm = c.mod_floor(&pb);
            let cm = u64::try_from(&cm).expect("reduced mod u64") as u128;
            acc = (acc * t as u128 + cm) % p as u128;
        }
        acc as u64
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| u64::try_from(&c.mod_floor(&pb)).expect("reduced mod u64"))
            .collect()
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> ExactInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.leading().is_some_and(|l| l.is_negative()) {
            -g
        } else {
            g
        };
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &ExactInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self += k * other`, in place.
    pub fn add_scaled(&mut self, k: &ExactInt, other: &IntPoly) {
        if k.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += k * b;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = IntPoly::new(trimmed);
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "t")?,
                1 => write!(f, "{a}*t")?,
                _ if a.is_one() => write!(f, "t^{i}")?,
                _ => write!(f, "{a}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        Self::from_i64s(&[1])
    }
}

impl FromPrimitive for IntPoly {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::constant(BigInt::from(n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::constant(BigInt::from(n)))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out.add_scaled(&BigInt::one(), rhs);
        out
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out.add_scaled(&-BigInt::one(), rhs);
        out
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Sparse bivariate integer polynomial, `(i, j) -> c` meaning `c X^i Y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), ExactInt>,
}

impl BiPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: ExactInt) {
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExactInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &ExactInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// `P(x, Y)` as a univariate polynomial in `Y` (coefficients in Z for integer x).
    pub fn specialize_x(&self, x: &ExactInt) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.degree_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[j as usize] += c * num_traits::pow(x.clone(), i as usize);
        }
        IntPoly::new(coeffs)
    }

    /// Exact value at a rational point; denominators are cleared before summing.
    pub fn eval(&self, x: &ExactRat, y: &ExactRat) -> ExactRat {
        let dx = self.degree_x() as usize;
        let dy = self.degree_y() as usize;
        let xp = homogeneous_powers(x.numer(), x.denom(), dx);
        let yp = homogeneous_powers(y.numer(), y.denom(), dy);
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * &xp[i as usize] * &yp[j as usize];
        }
        let den = num_traits::pow(x.denom().clone(), dx) * num_traits::pow(y.denom().clone(), dy);
        ExactRat::new(acc, den)
    }
}

/// `[a^i * b^(d-i) for i in 0..=d]`.
pub(crate) fn homogeneous_powers(a: &ExactInt, b: &ExactInt, d: usize) -> Vec<ExactInt> {
    let mut apow = Vec::with_capacity(d + 1);
    let mut bpow = Vec::with_capacity(d + 1);
    apow.push(BigInt::one());
    bpow.push(BigInt::one());
    for k in 1..=d {
        apow.push(&apow[k - 1] * a);
        bpow.push(&bpow[k - 1] * b);
    }
    (0..=d).map(|i| &apow[i] * &bpow[d - i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_of};

    #[test]
    fn arithmetic_and_eval() {
        let f = IntPoly::from_i64s(&[-1, 0, 1]); // t^2 - 1
        let g = IntPoly::from_i64s(&[1, 1]); // t + 1
        assert_eq!(&f - &(&g * &IntPoly::from_i64s(&[-1, 1])), IntPoly::zero());
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(8));
        assert_eq!(f.eval_mod(4, 5), 0);
        assert_eq!(g.pow(3), IntPoly::from_i64s(&[1, 3, 3, 1]));
        assert_eq!(f.derivative(), IntPoly::from_i64s(&[0, 2]));
        assert_eq!(IntPoly::from_i64s(&[0, 0, 0]).degree(), None);
        assert_eq!(
            format!("{}", IntPoly::from_i64s(&[3, -1, 0, 2])),
            "2*t^3 - t + 3"
        );
    }

    #[test]
    fn primitive_part_normalizes_sign() {
        let f = IntPoly::from_i64s(&[6, -4, -2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), IntPoly::from_i64s(&[-3, 2, 1]));
    }

    #[test]
    fn bipoly_eval() {
        let mut p = BiPoly::new();
        p.add_term(2, 0, BigInt::from(1)); // x^2
        p.add_term(0, 1, BigInt::from(-3)); // -3y
        p.add_term(1, 1, BigInt::from(2)); // 2xy
        assert_eq!(
            p.eval(&rat_of(1, 2), &rat(3)),
            rat_of(1, 4) - rat(9) + rat(3)
        );
        assert_eq!(
            p.specialize_x(&BigInt::from(2)),
            IntPoly::from_i64s(&[4, 1])
        );
        assert_eq!(p.transpose().coeff(1, 2), BigInt::zero());
        assert_eq!(p.transpose().coeff(0, 2), BigInt::from(1));
    }
}
