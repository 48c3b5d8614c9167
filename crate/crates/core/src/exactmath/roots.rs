use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;

use super::factor::is_probable_prime;
use super::{poly_roots_mod_p, ExactInt, ExactRat, IntPoly, MathError};

/// Number of sieve primes whose residue sets every candidate must hit.
pub const SIEVE_PRIME_COUNT: usize = 3;

/// The largest primes below 2^31, in decreasing order.
static SIEVE_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let mut out = Vec::new();
    let mut n = (1u64 << 31) - 1;
    while out.len() < 12 {
        if is_probable_prime(&BigInt::from(n)) {
            out.push(n);
        }
        n -= 2;
    }
    out
});

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSearch {
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub roots: Vec<ExactInt>,
    pub window: u64,
    /// True when the window covers the Cauchy root bound, i.e. no integer
    /// root can exist outside it.
    pub exhaustive: bool,
}

/// Every integer root `t0` of `f` with `|t0| <= window`.
///
/// Residue sets modulo several primes near 2^31 are intersected, and each
/// surviving candidate is confirmed by exact evaluation.
pub fn integer_root_search(f: &IntPoly, window: u64) -> Result<RootSearch, MathError> {
    if f.is_zero() {
        return Err(MathError::ZeroPolynomial);
    }
    if window == 0 {
        return Err(MathError::Invalid(
            "root-search window must be at least 1".into(),
        ));
    }
    let exhaustive = cauchy_bound(f) <= ExactRat::from_integer(BigInt::from(window));
    if f.degree() == Some(0) {
        return Ok(RootSearch {
            roots: Vec::new(),
            window,
            exhaustive: true,
        });
    }

    let mut sieves: Vec<(u64, Vec<u64>)> = Vec::new();
    for &p in SIEVE_PRIMES.iter() {
        match poly_roots_mod_p(f, p) {
            Ok(r) => sieves.push((p, r)),
            Err(MathError::VanishesModP(_)) => continue,
            Err(e) => return Err(e),
        }
        if sieves.len() == SIEVE_PRIME_COUNT {
            break;
        }
    }
    if sieves.len() < SIEVE_PRIME_COUNT {
        return Err(MathError::Invalid(
            "polynomial vanishes modulo too many sieve primes".into(),
        ));
    }

    let w = window as i128;
    let (p1, r1) = &sieves[0];
    let p1 = *p1 as i128;
    let mut roots = Vec::new();
    for &r in r1 {
        // smallest t >= -w with t = r mod p1
        let r = r as i128;
        let mut t = r - ((r + w) / p1) * p1;
        while t <= w {
            let hits = sieves[1..].iter().all(|(p, rs)| {
                let m = t.rem_euclid(*p as i128) as u64;
                rs.binary_search(&m).is_ok()
            });
            if hits && f.eval(&BigInt::from(t)).is_zero() {
                roots.push(BigInt::from(t));
            }
            t += p1;
        }
    }
    roots.sort();
    Ok(RootSearch {
        roots,
        window,
        exhaustive,
    })
}

/// `1 + max |a_i / a_n|`: every complex root has absolute value below this.
fn cauchy_bound(f: &IntPoly) -> ExactRat {
    let lead = f.leading().expect("nonzero").abs();
    let n = f.coeffs().len() - 1;
    let m = f.coeffs()[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    ExactRat::from_integer(BigInt::from(1)) + ExactRat::new(m, lead)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(r: i64) -> IntPoly {
        IntPoly::from_i64s(&[-r, 1])
    }

    #[test]
    fn finds_roots_and_skips_non_integer_ones() {
        // (t - 1)(t - 9)(81 t - 25)(t^2 + 7)
        let f = &(&lin(1) * &lin(9))
            * &(&IntPoly::from_i64s(&[-25, 81]) * &IntPoly::from_i64s(&[7, 0, 1]));
        let s = integer_root_search(&f, 100).unwrap();
        assert_eq!(s.roots, vec![BigInt::from(1), BigInt::from(9)]);
    }

    #[test]
    fn trivial_cases() {
        let c = IntPoly::from_i64s(&[5]);
        assert!(integer_root_search(&c, 10).unwrap().roots.is_empty());
        let f = IntPoly::from_i64s(&[1, 0, 1]);
        let s = integer_root_search(&f, 1000).unwrap();
        assert!(s.roots.is_empty());
        assert!(s.exhaustive);
        assert_eq!(
            integer_root_search(&IntPoly::zero(), 10),
            Err(MathError::ZeroPolynomial)
        );
    }

    #[test]
    fn window_edges_and_outside() {
        let f = &(&lin(-1000) * &lin(1000)) * &lin(1001);
        let s = integer_root_search(&f, 1000).unwrap();
        assert_eq!(s.roots, vec![BigInt::from(-1000), BigInt::from(1000)]);
        assert!(!s.exhaustive);
    }

    #[test]
    fn huge_coefficients() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let f = &(&lin(-7) * &lin(0)) * &IntPoly::new(vec![big.clone(), BigInt::from(3), big]);
        let s = integer_root_search(&f, 1_000_000).unwrap();
        assert_eq!(s.roots, vec![BigInt::from(-7), BigInt::from(0)]);
    }
}
