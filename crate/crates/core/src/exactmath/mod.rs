//! Exact integer, rational and polynomial arithmetic.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; everything
//! number-theoretic on top of them (valuations, squarefree parts,
//! factorization, polynomial root search) lives here.

mod arith;
mod factor;
mod modp;
mod poly;
mod roots;

pub use arith::{
    cubic_disc, exact_nth_root, int, rat, rat_of, squarefree_part, squarefree_part_int, val_int,
    val_rat, valuation, Prime,
};
pub use factor::{factorize, factorize_with, is_probable_prime, FactorBudget, Factorization};
pub use modp::{poly_roots_mod_p, ModP};
pub use poly::{BiPoly, IntPoly};
pub use roots::{integer_root_search, RootSearch, SIEVE_PRIME_COUNT};

use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInt = num_bigint::BigInt;
/// Rational number, always in lowest terms with positive denominator.
pub type ExactRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("{0} is not prime")]
    NotPrime(ExactInt),
    #[error("operation undefined at zero")]
    Zero,
    #[error("polynomial vanishes identically modulo {0}")]
    VanishesModP(u64),
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("factorization incomplete, unfactored cofactor {0}")]
    UnfactoredResidue(ExactInt),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
