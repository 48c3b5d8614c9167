use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{factorize, is_probable_prime};
use super::{ExactInt, ExactRat, MathError};

pub fn int(n: i64) -> ExactInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> ExactRat {
    ExactRat::from_integer(BigInt::from(n))
}

pub fn rat_of(num: i64, den: i64) -> ExactRat {
    ExactRat::new(BigInt::from(num), BigInt::from(den))
}

/// A positive integer that has passed a primality test.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(ExactInt);

impl Prime {
    pub fn new(p: ExactInt) -> Result<Self, MathError> {
        if p > BigInt::one() && is_probable_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(MathError::NotPrime(p))
        }
    }

    pub fn small(p: u64) -> Result<Self, MathError> {
        Self::new(BigInt::from(p))
    }

    pub fn value(&self) -> &ExactInt {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `v_p(n)` for a nonzero integer; `None` for zero. `p` must be prime (unchecked).
pub fn val_int(n: &ExactInt, p: &ExactInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)` for a rational; `None` encodes +infinity (x = 0). `p` unchecked.
pub fn val_rat(x: &ExactRat, p: &ExactInt) -> Option<i64> {
    let num = val_int(x.numer(), p)?;
    let den = val_int(x.denom(), p).unwrap_or(0);
    Some(num as i64 - den as i64)
}

/// Checked p-adic valuation. `Ok(None)` means +infinity.
pub fn valuation(x: &ExactRat, p: &ExactInt) -> Result<Option<i64>, MathError> {
    let p = Prime::new(p.clone())?;
    Ok(val_rat(x, p.value()))
}

/// The squarefree integer `d` with `n = d * s^2`.
pub fn squarefree_part_int(n: &ExactInt) -> Result<ExactInt, MathError> {
    if n.is_zero() {
        return Err(MathError::Zero);
    }
    let fac = factorize(n)?;
    let mut d = BigInt::from(fac.sign());
    for (p, e) in fac.factors() {
        if e % 2 == 1 {
            d *= p;
        }
    }
    for r in fac.residue() {
        if !is_square(r) {
            return Err(MathError::UnfactoredResidue(r.clone()));
        }
    }
    Ok(d)
}

/// The squarefree integer `d` with `x = d * (rational)^2`.
pub fn squarefree_part(x: &ExactRat) -> Result<ExactInt, MathError> {
    // a/b = a*b / b^2
    squarefree_part_int(&(x.numer() * x.denom()))
}

fn is_square(n: &ExactInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &(&r * &r) == n
    }
}

/// Discriminant of the monic cubic `x^3 + p x^2 + q x + r`.
pub fn cubic_disc(p: &ExactRat, q: &ExactRat, r: &ExactRat) -> ExactRat {
    let k = |n: i64| rat(n);
    k(18) * p * q * r - k(4) * p * p * p * r + p * p * q * q - k(4) * q * q * q - k(27) * r * r
}

/// The rational `y` with `y^n = x`, if one exists (for even `n` the positive one).
pub fn exact_nth_root(x: &ExactRat, n: u32) -> Option<ExactRat> {
    assert!(n >= 1);
    if x.is_zero() {
        return Some(ExactRat::zero());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |m: &ExactInt| -> Option<ExactInt> {
        let a = m.abs();
        let r = a.nth_root(n);
        if num_traits::pow(r.clone(), n as usize) == a {
            Some(if m.sign() == Sign::Minus { -r } else { r })
        } else {
            None
        }
    };
    Some(ExactRat::new(root(x.numer())?, root(x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(12), &int(2)).unwrap(), Some(2));
        assert_eq!(valuation(&rat(1), &int(5)).unwrap(), Some(0));
        assert_eq!(valuation(&rat_of(2048, 3), &int(3)).unwrap(), Some(-1));
        assert_eq!(valuation(&rat(0), &int(7)).unwrap(), None);
        assert!(matches!(
            valuation(&rat(12), &int(4)),
            Err(MathError::NotPrime(_))
        ));
        assert!(matches!(
            valuation(&rat(12), &int(1)),
            Err(MathError::NotPrime(_))
        ));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&rat(1)).unwrap(), int(1));
        assert_eq!(squarefree_part(&rat(-1728)).unwrap(), int(-3));
        assert_eq!(squarefree_part(&rat(-7077888)).unwrap(), int(-3));
        assert_eq!(squarefree_part(&rat_of(-27, 8)).unwrap(), int(-6));
        assert_eq!(squarefree_part(&rat(0)), Err(MathError::Zero));
    }

    #[test]
    fn cubic_discriminants() {
        assert_eq!(cubic_disc(&rat(0), &rat(0), &rat(0)), rat(0));
        assert_eq!(cubic_disc(&rat(1), &rat(3), &rat(3)), rat(-192));
        assert_eq!(cubic_disc(&rat(144), &rat(5184), &rat(0)), rat(0));
        // 1536^2 * (64^2 - 4*1536)
        assert_eq!(
            cubic_disc(&rat(64), &rat(1536), &rat(0)),
            rat(1536 * 1536 * (64 * 64 - 4 * 1536))
        );
    }

    #[test]
    fn nth_roots() {
        assert_eq!(exact_nth_root(&rat_of(16, 81), 4), Some(rat_of(2, 3)));
        assert_eq!(exact_nth_root(&rat(-8), 3), Some(rat(-2)));
        assert_eq!(exact_nth_root(&rat(-4), 2), None);
        assert_eq!(exact_nth_root(&rat(12), 2), None);
    }
}
