//! Local reduction data via Tate's algorithm.
//!
//! The algorithm runs on an integral model and performs its own local
//! minimalization. Conductor exponents come from the type at `p >= 5`
//! (tame: 0, 1 or 2) and from Ogg's formula `f = v(disc) - m + 1` at 2 and 3,
//! so Ogg's relation is an independent consistency check away from 2 and 3.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curves::{weierstrass_invariants, CurveError, WeierstrassCurve};
use crate::exactmath::{factorize, val_int, val_rat, ExactInt, MathError, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("unknown Kodaira symbol `{0}`")]
    BadKodaira(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    /// `I_n`, n >= 1
    I(u32),
    II,
    III,
    IV,
    I0Star,
    /// `I_n^*`, n >= 1
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Number of irreducible components of the special fibre.
    pub fn components(&self) -> u32 {
        match *self {
            KodairaType::I0 => 1,
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::I0Star => 5,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::I(_))
    }

    /// II, II*, IV, IV*: the types whose component group or monodromy has
    /// order divisible by 3 at potentially good primes.
    pub fn is_ii_or_iv_family(&self) -> bool {
        matches!(
            self,
            KodairaType::II | KodairaType::IIStar | KodairaType::IV | KodairaType::IVStar
        )
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = LocalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LocalError::BadKodaira(s.to_string());
        Ok(match s {
            "I0" => KodairaType::I0,
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "I0*" => KodairaType::I0Star,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                if star {
                    KodairaType::IStar(n)
                } else {
                    KodairaType::I(n)
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(&self) -> bool {
        matches!(
            self,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative
        )
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Good => "good",
            ReductionKind::SplitMultiplicative => "split-multiplicative",
            ReductionKind::NonsplitMultiplicative => "nonsplit-multiplicative",
            ReductionKind::Additive => "additive",
        })
    }
}

/// Reduction data of a curve at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalData {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub p: ExactInt,
    pub kodaira: KodairaType,
    /// Conductor exponent.
    pub f: u32,
    /// Number of irreducible components of the special fibre.
    pub m: u32,
    pub tamagawa: u32,
    pub kind: ReductionKind,
    /// Valuation of the minimal discriminant.
    pub vdisc: u32,
    pub pot_mult: bool,
}

impl LocalData {
    /// `label p kodaira f c`, the fixture line format.
    pub fn fixture_line(&self, label: &str) -> String {
        format!(
            "{label} {} {} {} {}",
            self.p, self.kodaira, self.f, self.tamagawa
        )
    }

    pub fn satisfies_ogg(&self) -> bool {
        self.vdisc + 1 == self.f + self.m
    }
}

/// Integral model mutated in place by Tate's algorithm.
struct IntModel {
    a: [ExactInt; 5],
}

impl IntModel {
    fn invariants(&self) -> [ExactInt; 7] {
        let [a1, a2, a3, a4, a6] = &self.a;
        weierstrass_invariants(a1, a2, a3, a4, a6)
    }

    /// `x = x' + r`, `y = y' + s x' + t`.
    fn rst(&mut self, r: &ExactInt, s: &ExactInt, t: &ExactInt) {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        self.a = [n1, n2, n3, n4, n6];
    }

    /// Divides `a_i` by `p^i`.
    fn scale_down(&mut self, p: &ExactInt) {
        for (i, k) in [1usize, 2, 3, 4, 6].iter().enumerate() {
            let pk = num_traits::pow(p.clone(), *k);
            self.a[i] = exact_div(&self.a[i], &pk);
        }
    }
}

/// Arithmetic modulo the prime being processed.
struct Residue<'a> {
    p: &'a ExactInt,
}

impl Residue<'_> {
    fn red(&self, x: &ExactInt) -> ExactInt {
        x.mod_floor(self.p)
    }

    fn divides(&self, x: &ExactInt) -> bool {
        x.is_multiple_of(self.p)
    }

    fn inv(&self, x: &ExactInt) -> ExactInt {
        let e = self.red(x).extended_gcd(self.p);
        debug_assert!(e.gcd.is_one());
        self.red(&e.x)
    }

    fn is_two(&self) -> bool {
        *self.p == BigInt::from(2)
    }

    fn is_three(&self) -> bool {
        *self.p == BigInt::from(3)
    }

    fn val(&self, x: &ExactInt) -> u64 {
        val_int(x, self.p).unwrap_or(u64::MAX)
    }

    /// Whether `a T^2 + b T + c` has a root modulo p.
    fn quadroots(&self, a: &ExactInt, b: &ExactInt, c: &ExactInt) -> bool {
        let (a, b, c) = (self.red(a), self.red(b), self.red(c));
        if self.is_two() {
            return c.is_zero() || (&a + &b + &c).is_even();
        }
        if a.is_zero() {
            return !b.is_zero() || c.is_zero();
        }
        let d = self.red(&(&b * &b - 4 * &a * &c));
        self.is_square(&d)
    }

    fn is_square(&self, d: &ExactInt) -> bool {
        if d.is_zero() || self.is_two() {
            return true;
        }
        let e = (self.p - 1u32) / 2u32;
        d.modpow(&e, self.p).is_one()
    }

    /// Number of distinct roots of `T^3 + b T^2 + c T + d` modulo p.
    fn cubic_roots(&self, b: &ExactInt, c: &ExactInt, d: &ExactInt) -> u32 {
        let (b, c, d) = (self.red(b), self.red(c), self.red(d));
        if self.p.bits() <= 16 {
            let p = u64::try_from(self.p).expect("small");
            return (0..p)
                .filter(|&x| {
                    let x = BigInt::from(x);
                    self.divides(&(&x * &x * &x + &b * &x * &x + &c * &x + &d))
                })
                .count() as u32;
        }
        // Residues of degree <= 2 modulo the monic cubic.
        let mulmod = |u: &[ExactInt; 3], v: &[ExactInt; 3]| -> [ExactInt; 3] {
            let mut w = vec![BigInt::zero(); 5];
            for i in 0..3 {
                for j in 0..3 {
                    w[i + j] += &u[i] * &v[j];
                }
            }
            for k in (3..5).rev() {
                let lead = std::mem::take(&mut w[k]);
                w[k - 1] -= &lead * &b;
                w[k - 2] -= &lead * &c;
                w[k - 3] -= &lead * &d;
            }
            [self.red(&w[0]), self.red(&w[1]), self.red(&w[2])]
        };
        let mut result = [BigInt::one(), BigInt::zero(), BigInt::zero()];
        let mut base = [BigInt::zero(), BigInt::one(), BigInt::zero()];
        let mut e = self.p.clone();
        while !e.is_zero() {
            if e.is_odd() {
                result = mulmod(&result, &base);
            }
            e >>= 1;
            if !e.is_zero() {
                base = mulmod(&base, &base);
            }
        }
        // gcd(f, x^p - x) has degree 3 iff x^p = x; otherwise read the count
        // off the remainder's gcd degree.
        let g = [
            result[0].clone(),
            self.red(&(&result[1] - 1)),
            result[2].clone(),
        ];
        let f = vec![d, c, b, BigInt::one()];
        self.poly_gcd_degree(f, g.to_vec())
    }

    fn poly_gcd_degree(&self, a: Vec<ExactInt>, b: Vec<ExactInt>) -> u32 {
        let trim = |mut v: Vec<ExactInt>| {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        };
        let mut x = trim(a);
        let mut y = trim(b);
        while !y.is_empty() {
            let li = self.inv(y.last().unwrap());
            while x.len() >= y.len() {
                let k = x.len() - y.len();
                let coef = self.red(&(x.last().unwrap() * &li));
                for (i, yc) in y.iter().enumerate() {
                    x[k + i] = self.red(&(&x[k + i] - &coef * yc));
                }
                x = trim(x);
                if x.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut x, &mut y);
        }
        x.len().saturating_sub(1) as u32
    }
}

struct TateOutcome {
    kodaira: KodairaType,
    tamagawa: u32,
    kind: ReductionKind,
    vdisc: u32,
}

fn exact_div(a: &ExactInt, b: &ExactInt) -> ExactInt {
    debug_assert!(a.is_multiple_of(b), "{a} not divisible by {b}");
    a / b
}

fn run_tate(mut model: IntModel, p: &ExactInt) -> TateOutcome {
    let res = Residue { p };
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p2 * &p2;
    let half = if res.is_two() {
        BigInt::zero()
    } else {
        res.inv(&BigInt::from(2))
    };
    let additive = |kodaira, tamagawa, n: u64| TateOutcome {
        kodaira,
        tamagawa,
        kind: ReductionKind::Additive,
        vdisc: n as u32,
    };

    loop {
        let [b2, b4, b6, _b8, c4, c6, disc] = model.invariants();
        let n = res.val(&disc);
        if n == 0 {
            return TateOutcome {
                kodaira: KodairaType::I0,
                tamagawa: 1,
                kind: ReductionKind::Good,
                vdisc: 0,
            };
        }

        // Move the singular point of the reduction to (0, 0).
        let [a1, a2, a3, a4, a6] = &model.a;
        let (r, t) = if res.is_two() {
            if res.divides(&b2) {
                let r = res.red(a4);
                let t = res.red(&(&r * (1 + a2 + a4) + a6));
                (r, t)
            } else {
                let r = res.red(a3);
                let t = res.red(&(&r + a4));
                (r, t)
            }
        } else if res.is_three() {
            let r = if res.divides(&b2) {
                res.red(&-&b6)
            } else {
                res.red(&-(&b2 * &b4))
            };
            let t = res.red(&(a1 * &r + a3));
            (r, t)
        } else {
            let r = if res.divides(&c4) {
                res.red(&(-res.inv(&BigInt::from(12)) * &b2))
            } else {
                res.red(&(-res.inv(&(12 * &c4)) * (&c6 + &b2 * &c4)))
            };
            let t = res.red(&(-&half * (a1 * &r + a3)));
            (r, t)
        };
        model.rst(&r, &BigInt::zero(), &t);

        if !res.divides(&c4) {
            let [a1, a2, ..] = &model.a;
            let split = res.quadroots(&BigInt::one(), a1, &-a2);
            let tamagawa = if split {
                n as u32
            } else if n.is_multiple_of(2) {
                2
            } else {
                1
            };
            return TateOutcome {
                kodaira: KodairaType::I(n as u32),
                tamagawa,
                kind: if split {
                    ReductionKind::SplitMultiplicative
                } else {
                    ReductionKind::NonsplitMultiplicative
                },
                vdisc: n as u32,
            };
        }

        let [_, _, b6, b8, ..] = model.invariants();
        let [_, _, a3, _, a6] = &model.a;
        if res.val(a6) < 2 {
            return additive(KodairaType::II, 1, n);
        }
        if res.val(&b8) < 3 {
            return additive(KodairaType::III, 2, n);
        }
        if res.val(&b6) < 3 {
            let c = if res.quadroots(&BigInt::one(), &exact_div(a3, p), &-exact_div(a6, &p2)) {
                3
            } else {
                1
            };
            return additive(KodairaType::IV, c, n);
        }

        // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
        let [a1, a2, a3, _, a6] = &model.a;
        let (s, t) = if res.is_two() {
            (res.red(a2), 2 * res.red(&exact_div(a6, &BigInt::from(4))))
        } else {
            (-a1 * &half, -a3 * &half)
        };
        model.rst(&BigInt::zero(), &s, &t);

        // Roots of T^3 + b T^2 + c T + d modulo p.
        let [_, a2, _, a4, a6] = &model.a;
        let b = res.red(&exact_div(a2, p));
        let c = res.red(&exact_div(a4, &p2));
        let d = res.red(&exact_div(a6, &p3));
        let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d
            + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;

        if !res.divides(&w) {
            let tamagawa = 1 + res.cubic_roots(&b, &c, &d);
            return additive(KodairaType::I0Star, tamagawa, n);
        }

        if !res.divides(&x) {
            // Double root: move it to T = 0, then peel off the I_m^* chain.
            let r = if res.is_two() {
                c.clone()
            } else if res.is_three() {
                &b * &c
            } else {
                (&b * &c - 9 * &d) * res.inv(&(2 * &x))
            };
            let r = p * res.red(&r);
            model.rst(&r, &BigInt::zero(), &BigInt::zero());

            let mut ix = 3u32;
            let mut iy = 3u32;
            let mut mx = p2.clone();
            let mut my = p2.clone();
            let tamagawa;
            loop {
                let [_, a2, a3, _, a6] = &model.a;
                let xa3 = exact_div(a3, &my);
                let xa6 = exact_div(a6, &(&mx * &my));
                if !res.divides(&(&xa3 * &xa3 + 4 * &xa6)) {
                    tamagawa = if res.quadroots(&BigInt::one(), &xa3, &-&xa6) {
                        4
                    } else {
                        2
                    };
                    break;
                }
                let _ = a2;
                let t = if res.is_two() {
                    &my * res.red(&xa6)
                } else {
                    &my * res.red(&(-&xa3 * &half))
                };
                model.rst(&BigInt::zero(), &BigInt::zero(), &t);
                my *= p;
                iy += 1;

                let [_, a2, _, a4, a6] = &model.a;
                let xa2 = exact_div(a2, p);
                let xa4 = exact_div(a4, &(p * &mx));
                let xa6 = exact_div(a6, &(&mx * &my));
                if !res.divides(&(&xa4 * &xa4 - 4 * &xa2 * &xa6)) {
                    tamagawa = if res.quadroots(&xa2, &xa4, &xa6) {
                        4
                    } else {
                        2
                    };
                    break;
                }
                let r = if res.is_two() {
                    &mx * res.red(&(&xa6 * &xa2))
                } else {
                    &mx * res.red(&(-&xa4 * res.inv(&(2 * &xa2))))
                };
                model.rst(&r, &BigInt::zero(), &BigInt::zero());
                mx *= p;
                ix += 1;
            }
            return additive(KodairaType::IStar(ix + iy - 5), tamagawa, n);
        }

        // Triple root: move it to T = 0.
        let rp = if res.is_three() {
            -&d
        } else {
            -&b * res.inv(&BigInt::from(3))
        };
        let r = p * res.red(&rp);
        model.rst(&r, &BigInt::zero(), &BigInt::zero());
        let [_, _, a3, _, a6] = &model.a;
        let x3 = exact_div(a3, &p2);
        let x6 = exact_div(a6, &p4);
        if !res.divides(&(&x3 * &x3 + 4 * &x6)) {
            let c = if res.quadroots(&BigInt::one(), &x3, &-&x6) {
                3
            } else {
                1
            };
            return additive(KodairaType::IVStar, c, n);
        }
        let t = if res.is_two() { x6 } else { &x3 * &half };
        let t = -&p2 * res.red(&t);
        model.rst(&BigInt::zero(), &BigInt::zero(), &t);
        let [_, _, _, a4, a6] = &model.a;
        if res.val(a4) < 4 {
            return additive(KodairaType::IIIStar, 2, n);
        }
        if res.val(a6) < 6 {
            return additive(KodairaType::IIStar, 1, n);
        }
        // Not minimal at p.
        model.scale_down(p);
    }
}

fn conductor_exponent(p: &ExactInt, kodaira: KodairaType, kind: ReductionKind, vdisc: u32) -> u32 {
    if *p >= BigInt::from(5) {
        match kind {
            ReductionKind::Good => 0,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative => 1,
            ReductionKind::Additive => 2,
        }
    } else {
        vdisc + 1 - kodaira.components()
    }
}

/// Tate's algorithm for `E` at `p`.
pub fn tate_algorithm(e: &WeierstrassCurve, p: &Prime) -> Result<LocalData, LocalError> {
    let inv = e.invariants();
    let j = inv.j.ok_or(CurveError::Singular)?;
    let (integral, _) = e.integral_model();
    let model = IntModel {
        a: integral.int_coeffs(),
    };
    Ok(local_data_from(model, p.value(), &j))
}

fn local_data_from(model: IntModel, p: &ExactInt, j: &crate::ExactRat) -> LocalData {
    let out = run_tate(model, p);
    let m = out.kodaira.components();
    let f = conductor_exponent(p, out.kodaira, out.kind, out.vdisc);
    LocalData {
        p: p.clone(),
        kodaira: out.kodaira,
        f,
        m,
        tamagawa: out.tamagawa,
        kind: out.kind,
        vdisc: out.vdisc,
        pot_mult: val_rat(j, p).is_some_and(|v| v < 0),
    }
}

pub fn reduction_kind(e: &WeierstrassCurve, p: &Prime) -> Result<ReductionKind, LocalError> {
    Ok(tate_algorithm(e, p)?.kind)
}

/// `v_p(j) < 0`.
pub fn potentially_multiplicative(e: &WeierstrassCurve, p: &Prime) -> Result<bool, LocalError> {
    let j = e.j_invariant().ok_or(CurveError::Singular)?;
    Ok(val_rat(&j, p.value()).is_some_and(|v| v < 0))
}

/// Reduction data at every bad prime of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalReduction {
    pub minimal: WeierstrassCurve,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub minimal_disc: ExactInt,
    /// Sorted bad primes found; complete only if `unfactored` is empty.
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub bad_primes: Vec<ExactInt>,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub unfactored: Vec<ExactInt>,
    pub local: Vec<LocalData>,
}

impl GlobalReduction {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// `prod p^f_p`, or `None` if part of the discriminant is unfactored.
    pub fn conductor(&self) -> Option<ExactInt> {
        self.is_complete().then(|| {
            self.local.iter().fold(BigInt::one(), |acc, ld| {
                acc * num_traits::pow(ld.p.clone(), ld.f as usize)
            })
        })
    }

    pub fn at(&self, p: &ExactInt) -> Option<&LocalData> {
        self.local.iter().find(|ld| &ld.p == p)
    }

    /// Bad primes with `v_p(j) < 0`.
    pub fn pot_mult_primes(&self) -> Vec<ExactInt> {
        self.local
            .iter()
            .filter(|ld| ld.pot_mult)
            .map(|ld| ld.p.clone())
            .collect()
    }
}

/// Minimal model, bad primes and local data at each of them.
pub fn global_reduction(e: &WeierstrassCurve) -> Result<GlobalReduction, LocalError> {
    let j = e.j_invariant().ok_or(CurveError::Singular)?;
    // Fall back to an integral model if the minimal-model search could not
    // factor what it needed; Tate's algorithm minimalizes locally anyway.
    let model = match e.minimal_model() {
        Ok((m, _)) => m,
        Err(CurveError::Math(MathError::UnfactoredResidue(_))) => e.integral_model().0,
        Err(err) => return Err(err.into()),
    };
    let disc = model.discriminant().to_integer();
    let fac = factorize(&disc)?;
    let mut local = Vec::new();
    for p in fac.primes() {
        let ld = local_data_from(
            IntModel {
                a: model.int_coeffs(),
            },
            &p,
            &j,
        );
        if ld.kind != ReductionKind::Good {
            local.push(ld);
        }
    }
    let minimal_disc = if model.is_integral() && fac.is_complete() {
        local.iter().fold(disc.signum(), |acc, ld| {
            acc * num_traits::pow(ld.p.clone(), ld.vdisc as usize)
        })
    } else {
        disc.clone()
    };
    Ok(GlobalReduction {
        minimal: model,
        minimal_disc,
        bad_primes: local.iter().map(|ld| ld.p.clone()).collect(),
        unfactored: fac.residue().to_vec(),
        local,
    })
}

/// Result of `bad_primes`: flagged partial when a cofactor stayed unfactored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPrimes {
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub primes: Vec<ExactInt>,
    pub partial: bool,
}

pub fn bad_primes(e: &WeierstrassCurve) -> Result<BadPrimes, LocalError> {
    let g = global_reduction(e)?;
    Ok(BadPrimes {
        partial: !g.is_complete(),
        primes: g.bad_primes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conductor {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub value: ExactInt,
    /// False if the value only covers the primes that could be found.
    pub complete: bool,
}

pub fn conductor(e: &WeierstrassCurve) -> Result<Conductor, LocalError> {
    let g = global_reduction(e)?;
    let value = g.local.iter().fold(BigInt::one(), |acc, ld| {
        acc * num_traits::pow(ld.p.clone(), ld.f as usize)
    });
    Ok(Conductor {
        value: value.abs(),
        complete: g.is_complete(),
    })
}
