use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::{ExactInt, MathError};

const TRIAL_BOUND: u64 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| {
    let n = TRIAL_BOUND as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(80_000);
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
});

/// Limits on how hard `factorize_with` tries before giving up on a cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division by every prime up to this bound (capped at 10^6).
    pub trial_bound: u64,
    /// Total Pollard-Brent iterations spread over all composite cofactors.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: TRIAL_BOUND,
            rho_iterations: 4_000_000,
        }
    }
}

/// `sign * prod(p^e) * prod(residue) = n`. Residues are composites that the
/// budget did not split; they are never reported as primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(ExactInt, u32)>,
    residue: Vec<ExactInt>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> impl Iterator<Item = (&ExactInt, u32)> {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    pub fn primes(&self) -> Vec<ExactInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn residue(&self) -> &[ExactInt] {
        &self.residue
    }

    pub fn is_complete(&self) -> bool {
        self.residue.is_empty()
    }

    pub fn reconstruct(&self) -> ExactInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        for r in &self.residue {
            n *= r;
        }
        n
    }
}

pub fn factorize(n: &ExactInt) -> Result<Factorization, MathError> {
    factorize_with(n, FactorBudget::default())
}

pub fn factorize_with(n: &ExactInt, budget: FactorBudget) -> Result<Factorization, MathError> {
    if n.is_zero() {
        return Err(MathError::Zero);
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();

    let bound = budget.trial_bound.min(TRIAL_BOUND);
    for (idx, &p) in SMALL_PRIMES.iter().enumerate() {
        if p as u64 > bound || m.is_one() {
            break;
        }
        let pp = BigUint::from(p);
        if &pp * &pp > m {
            break;
        }
        if idx % 1024 == 1023 && is_probable_prime_u(&m) {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            found.insert(pp, e);
        }
    }

    let mut residue = Vec::new();
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    let mut iterations_left = budget.rho_iterations;
    while let Some(c) = stack.pop() {
        if is_probable_prime_u(&c) {
            *found.entry(c).or_insert(0) += 1;
            continue;
        }
        let s = c.sqrt();
        if &s * &s == c {
            stack.push(s.clone());
            stack.push(s);
            continue;
        }
        match pollard_brent(&c, &mut iterations_left) {
            Some(d) => {
                let other = &c / &d;
                stack.push(d);
                stack.push(other);
            }
            None => residue.push(c),
        }
    }

    residue.sort();
    Ok(Factorization {
        sign,
        factors: found
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect(),
        residue: residue.into_iter().map(BigInt::from).collect(),
    })
}

/// Miller-Rabin. Deterministic below 3.3e24, probabilistic (fixed bases) above.
pub fn is_probable_prime(n: &ExactInt) -> bool {
    n.sign() == Sign::Plus && is_probable_prime_u(n.magnitude())
}

const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn is_probable_prime_u(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in &MR_BASES {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
        return miller_rabin_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'base: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

fn miller_rabin_u64(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Brent's cycle detection and batched gcds.
fn pollard_brent(n: &BigUint, iterations_left: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    for c in 1u32.. {
        if *iterations_left == 0 {
            return None;
        }
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += steps;
                *iterations_left = iterations_left.saturating_sub(steps);
                if *iterations_left == 0 && g == one {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // batch overshot: redo one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
