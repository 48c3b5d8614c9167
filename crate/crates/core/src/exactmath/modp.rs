use num_bigint::BigInt;

use super::factor::is_probable_prime;
use super::{IntPoly, MathError};

/// Arithmetic in Z/pZ for a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Result<Self, MathError> {
        if p >= 1 << 63 || !is_probable_prime(&BigInt::from(p)) {
            return Err(MathError::NotPrime(BigInt::from(p)));
        }
        Ok(ModP { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn monic(&self, f: &mut [u64]) {
        if let Some(&lead) = f.last() {
            let li = self.inv(lead);
            for c in f.iter_mut() {
                *c = self.mul(*c, li);
            }
        }
    }

    /// Remainder of `a` by the monic polynomial `m`.
    fn rem(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        Self::trim(&mut r);
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[shift + i] = self.sub(r[shift + i], self.mul(lead, c));
                }
            }
            r.pop();
            Self::trim(&mut r);
        }
        r
    }

    fn div_exact(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        // m monic
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - dm];
        for k in (0..q.len()).rev() {
            let lead = r[k + dm];
            q[k] = lead;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[k + i] = self.sub(r[k + i], self.mul(lead, c));
                }
            }
        }
        q
    }

    fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let v = acc[i + j] + x as u128 * y as u128;
                acc[i + j] = if v >= p * p { v % p } else { v };
            }
        }
        let prod: Vec<u64> = acc.into_iter().map(|v| (v % p) as u64).collect();
        self.rem(&prod, m)
    }

    fn powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut result = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(&result, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mulmod(&b, &b, m);
            }
        }
        result
    }

    /// Monic gcd.
    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            self.monic(&mut y);
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&mut x);
        x
    }

    /// Roots of a monic squarefree product of distinct linear factors.
    fn split_linear(&self, d: &[u64], out: &mut Vec<u64>) {
        match d.len() {
            0 | 1 => {}
            2 => out.push(self.sub(0, d[0])),
            _ => {
                let half = (self.p - 1) / 2;
                for a in 1..self.p {
                    let mut s = self.powmod(&[a, 1], half, d);
                    if s.is_empty() {
                        s.push(0);
                    }
                    s[0] = self.sub(s[0], 1);
                    let e = self.gcd(d, &s);
                    if e.len() > 1 && e.len() < d.len() {
                        let other = self.div_exact(d, &e);
                        self.split_linear(&e, out);
                        self.split_linear(&other, out);
                        return;
                    }
                }
                unreachable!("no splitting shift found modulo {}", self.p);
            }
        }
    }
}

/// All residues `r` in `[0, p)` with `f(r) = 0 mod p`, sorted.
pub fn poly_roots_mod_p(f: &IntPoly, p: u64) -> Result<Vec<u64>, MathError> {
    let fp = ModP::new(p)?;
    let mut g = f.reduce_mod(p);
    ModP::trim(&mut g);
    if g.is_empty() {
        return Err(MathError::VanishesModP(p));
    }
    if g.len() == 1 {
        return Ok(Vec::new());
    }
    if p <= 1024 {
        return Ok((0..p).filter(|&r| f.eval_mod(r, p) == 0).collect());
    }
    fp.monic(&mut g);
    let mut roots = Vec::new();
    if g[0] == 0 {
        roots.push(0);
        while g[0] == 0 {
            g.remove(0);
        }
    }
    if g.len() > 1 {
        let mut h = fp.powmod(&[0, 1], p, &g);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = fp.sub(h[1], 1);
        let d = fp.gcd(&g, &h);
        fp.split_linear(&d, &mut roots);
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(
            poly_roots_mod_p(&IntPoly::from_i64s(&[-1, 0, 1]), 5).unwrap(),
            vec![1, 4]
        );
        assert_eq!(
            poly_roots_mod_p(&IntPoly::from_i64s(&[0, 1]), 7).unwrap(),
            vec![0]
        );
        assert_eq!(
            poly_roots_mod_p(&IntPoly::from_i64s(&[5, 10]), 5),
            Err(MathError::VanishesModP(5))
        );
        assert!(matches!(
            poly_roots_mod_p(&IntPoly::from_i64s(&[1, 1]), 9),
            Err(MathError::NotPrime(_))
        ));
    }

    #[test]
    fn large_prime_matches_brute_force_on_constructed_roots() {
        let p = 2147483647u64;
        // (t - 3)(t + 5)^2 (t - 1000000) (t^2 + 1)
        let lin = |r: i64| IntPoly::from_i64s(&[-r, 1]);
        let f = &(&(&lin(3) * &lin(-5)) * &(&lin(-5) * &lin(1_000_000)))
            * &IntPoly::from_i64s(&[1, 0, 1]);
        let roots = poly_roots_mod_p(&f, p).unwrap();
        for &r in &roots {
            assert_eq!(f.eval_mod(r, p), 0);
        }
        assert!(roots.contains(&3));
        assert!(roots.contains(&(p - 5)));
        assert!(roots.contains(&1_000_000));
        // p = 2^31 - 1 is 3 mod 4, so t^2 + 1 contributes nothing
        assert_eq!(roots.len(), 3);
    }
}
