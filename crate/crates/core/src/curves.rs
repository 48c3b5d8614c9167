//! Weierstrass models over Q: invariants, changes of coordinates, global
//! minimal models, isomorphism testing and quadratic twists.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactmath::{exact_nth_root, factorize, rat, val_int, ExactInt, ExactRat, MathError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve is singular (discriminant 0)")]
    Singular,
    #[error("model map scale u must be nonzero")]
    ZeroScale,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("cannot parse curve: {0}")]
    Parse(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`. Singular models are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a1: ExactRat,
    pub a2: ExactRat,
    pub a3: ExactRat,
    pub a4: ExactRat,
    pub a6: ExactRat,
}

/// Standard invariants of a Weierstrass model. `j` is `None` when `disc = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub b2: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub b4: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub b6: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub b8: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub c4: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub c6: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub disc: ExactRat,
    #[serde(serialize_with = "crate::serde_util::opt_rat")]
    pub j: Option<ExactRat>,
}

/// `[b2, b4, b6, b8, c4, c6, disc]` over any commutative ring, so the same
/// formulas serve rational models and models with polynomial coefficients.
pub(crate) fn weierstrass_invariants<T>(a1: &T, a2: &T, a3: &T, a4: &T, a6: &T) -> [T; 7]
where
    T: FromPrimitive,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let k = |n: i64| T::from_i64(n).expect("small constant");
    let b2 = &(a1 * a1) + &(&k(4) * a2);
    let b4 = &(&k(2) * a4) + &(a1 * a3);
    let b6 = &(a3 * a3) + &(&k(4) * a6);
    // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    let b8 = {
        let t1 = &(a1 * a1) * a6;
        let t2 = &(&k(4) * a2) * a6;
        let t3 = &(a1 * a3) * a4;
        let t4 = &(a2 * a3) * a3;
        let t5 = a4 * a4;
        &(&(&(&t1 + &t2) - &t3) + &t4) - &t5
    };
    let b22 = &b2 * &b2;
    let c4 = &b22 - &(&k(24) * &b4);
    let c6 = &(&(&k(36) * &b2) * &b4) - &(&(&b22 * &b2) + &(&k(216) * &b6));
    // disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    let disc = {
        let t1 = &b22 * &b8;
        let t2 = &k(8) * &(&(&b4 * &b4) * &b4);
        let t3 = &k(27) * &(&b6 * &b6);
        let t4 = &k(9) * &(&(&b2 * &b4) * &b6);
        &t4 - &(&(&t1 + &t2) + &t3)
    };
    [b2, b4, b6, b8, c4, c6, disc]
}

impl WeierstrassCurve {
    pub fn new(a1: ExactRat, a2: ExactRat, a3: ExactRat, a4: ExactRat, a6: ExactRat) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        Self::new(rat(a[0]), rat(a[1]), rat(a[2]), rat(a[3]), rat(a[4]))
    }

    pub fn from_big(a: [ExactInt; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(ExactRat::from_integer);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn coeffs(&self) -> [&ExactRat; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn invariants(&self) -> CurveInvariants {
        let [b2, b4, b6, b8, c4, c6, disc] =
            weierstrass_invariants(&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let j = (!disc.is_zero()).then(|| &c4 * &c4 * &c4 / &disc);
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    pub fn discriminant(&self) -> ExactRat {
        self.invariants().disc
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn j_invariant(&self) -> Option<ExactRat> {
        self.invariants().j
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|a| a.is_integer())
    }

    /// Integer coefficients; panics unless `is_integral`.
    pub(crate) fn int_coeffs(&self) -> [ExactInt; 5] {
        assert!(self.is_integral(), "model is not integral");
        self.coeffs().map(|a| a.to_integer())
    }

    pub fn transform(&self, m: &ModelMap) -> WeierstrassCurve {
        let ModelMap { u, r, s, t } = m;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = rat(2);
        let three = rat(3);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let n1 = a1 + &two * s;
        let n2 = a2 - s * a1 + &three * r - s * s;
        let n3 = a3 + r * a1 + &two * t;
        let n4 = a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        WeierstrassCurve::new(n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6)
    }

    /// Some integral model, reached by scaling with the lcm of the denominators.
    pub fn integral_model(&self) -> (WeierstrassCurve, ModelMap) {
        let d = self
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let m = ModelMap::scaling(ExactRat::new(BigInt::one(), d));
        (self.transform(&m), m)
    }

    /// A global minimal model (Laska-Kraus-Connell reduction) and the map
    /// from `self` to it. The result is in reduced form: `a1, a3` in `{0, 1}`
    /// and `a2` in `{-1, 0, 1}`.
    pub fn minimal_model(&self) -> Result<(WeierstrassCurve, ModelMap), CurveError> {
        let (integral, _) = self.integral_model();
        let inv = integral.invariants();
        if inv.disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let c4 = inv.c4.to_integer();
        let c6 = inv.c6.to_integer();
        let disc = inv.disc.to_integer();

        let g = if c4.is_zero() {
            c6.clone()
        } else if c6.is_zero() {
            c4.clone()
        } else {
            c4.gcd(&c6)
        };
        let fac = factorize(&g.gcd(&disc))?;
        if let Some(r) = fac.residue().first() {
            return Err(MathError::UnfactoredResidue(r.clone()).into());
        }
        let mut u = BigInt::one();
        for (p, _) in fac.factors() {
            let v4 = val_int(&c4, p).unwrap_or(u64::MAX) / 4;
            let v6 = val_int(&c6, p).unwrap_or(u64::MAX) / 6;
            let vd = val_int(&disc, p).expect("disc nonzero") / 12;
            let mut d = v4.min(v6).min(vd);
            while d > 0 && !kraus_condition(&c4, &c6, p, d) {
                d -= 1;
            }
            u *= num_traits::pow(p.clone(), d as usize);
        }
        let u4 = num_traits::pow(u.clone(), 4);
        let c4m = &c4 / &u4;
        let c6m = &c6 / (&u4 * &u * &u);
        let min = from_c4c6(&c4m, &c6m)
            .expect("Kraus conditions guarantee an integral model with these invariants");
        let map = self
            .is_isomorphic(&min)?
            .expect("minimal model has the same c4, c6 up to u");
        Ok((min, map))
    }

    /// The quadratic twist by `d`, as `y^2 = x^3 + d b2/4 x^2 + d^2 b4/2 x + d^3 b6/4`.
    pub fn quadratic_twist(&self, d: &ExactInt) -> Result<WeierstrassCurve, CurveError> {
        if d.is_zero() {
            return Err(CurveError::ZeroTwist);
        }
        let inv = self.invariants();
        if inv.disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let d = ExactRat::from_integer(d.clone());
        Ok(WeierstrassCurve::new(
            ExactRat::zero(),
            &d * &inv.b2 / rat(4),
            ExactRat::zero(),
            &d * &d * &inv.b4 / rat(2),
            &d * &d * &d * &inv.b6 / rat(4),
        ))
    }

    /// A map `m` with `self.transform(m) == other`, if the curves are
    /// isomorphic over Q.
    pub fn is_isomorphic(&self, other: &WeierstrassCurve) -> Result<Option<ModelMap>, CurveError> {
        let i1 = self.invariants();
        let i2 = other.invariants();
        if i1.disc.is_zero() || i2.disc.is_zero() {
            return Err(CurveError::Singular);
        }
        if i1.c4.is_zero() != i2.c4.is_zero() || i1.c6.is_zero() != i2.c6.is_zero() {
            return Ok(None);
        }
        // c4(other) = c4(self) / u^4, c6(other) = c6(self) / u^6
        let u = if i1.c4.is_zero() {
            exact_nth_root(&(&i1.c6 / &i2.c6), 6)
        } else if i1.c6.is_zero() {
            exact_nth_root(&(&i1.c4 / &i2.c4), 4)
        } else {
            let u2 = (&i1.c6 / &i2.c6) / (&i1.c4 / &i2.c4);
            exact_nth_root(&u2, 2).filter(|u| {
                let u4 = u * u * u * u;
                u4 == &i1.c4 / &i2.c4 && &u4 * u * u == &i1.c6 / &i2.c6
            })
        };
        let Some(u) = u else {
            return Ok(None);
        };
        for u in [u.clone(), -u] {
            let s = (&u * &other.a1 - &self.a1) / rat(2);
            let r = (&u * &u * &other.a2 - &self.a2 + &s * &self.a1 + &s * &s) / rat(3);
            let t = (&u * &u * &u * &other.a3 - &self.a3 - &r * &self.a1) / rat(2);
            let m = ModelMap::new(u, r, s, t)?;
            if &self.transform(&m) == other {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// Kraus's conditions for `(c4 / p^(4d), c6 / p^(6d))` to come from an
/// integral model; only `p = 2, 3` impose anything beyond integrality.
fn kraus_condition(c4: &ExactInt, c6: &ExactInt, p: &ExactInt, d: u64) -> bool {
    let c4d = c4 / num_traits::pow(p.clone(), 4 * d as usize);
    let c6d = c6 / num_traits::pow(p.clone(), 6 * d as usize);
    if p == &BigInt::from(3) {
        val_int(&c6d, p) != Some(2)
    } else if p == &BigInt::from(2) {
        let m4 = c6d.mod_floor(&BigInt::from(4));
        let m32 = c6d.mod_floor(&BigInt::from(32));
        m4 == BigInt::from(3)
            || (val_int(&c4d, p).is_none_or(|v| v >= 4)
                && (m32.is_zero() || m32 == BigInt::from(8)))
    } else {
        true
    }
}

/// Connell's reduced model with prescribed integral `c4, c6`, if integral.
fn from_c4c6(c4: &ExactInt, c6: &ExactInt) -> Option<WeierstrassCurve> {
    let big = |n: i64| BigInt::from(n);
    let mut b2 = (-c6).mod_floor(&big(12));
    if b2 > big(6) {
        b2 -= big(12);
    }
    let b4n = &b2 * &b2 - c4;
    if !b4n.is_multiple_of(&big(24)) {
        return None;
    }
    let b4 = b4n / big(24);
    let b6n = -(&b2 * &b2 * &b2) + big(36) * &b2 * &b4 - c6;
    if !b6n.is_multiple_of(&big(216)) {
        return None;
    }
    let b6 = b6n / big(216);
    let a1 = b2.mod_floor(&big(2));
    let a3 = b6.mod_floor(&big(2));
    let a2 = (&b2 - &a1) / big(4);
    let a4 = (&b4 - &a1 * &a3) / big(2);
    let a6 = (&b6 - &a3) / big(4);
    let e = WeierstrassCurve::from_big([a1, a2, a3, a4, a6]);
    let inv = e.invariants();
    (inv.c4 == ExactRat::from_integer(c4.clone()) && inv.c6 == ExactRat::from_integer(c6.clone()))
        .then_some(e)
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl FromStr for WeierstrassCurve {
    type Err = CurveError;

    /// Accepts `[a1,a2,a3,a4,a6]` or five whitespace/comma separated rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        if parts.len() != 5 {
            return Err(CurveError::Parse(format!(
                "expected 5 coefficients, found {}",
                parts.len()
            )));
        }
        let mut a = Vec::with_capacity(5);
        for p in parts {
            a.push(parse_rat(p).ok_or_else(|| CurveError::Parse(format!("bad rational `{p}`")))?);
        }
        let [a1, a2, a3, a4, a6]: [ExactRat; 5] = a.try_into().expect("five");
        Ok(WeierstrassCurve::new(a1, a2, a3, a4, a6))
    }
}

pub(crate) fn parse_rat(s: &str) -> Option<ExactRat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| ExactRat::new(n, d))
        }
        None => s.parse().ok().map(ExactRat::from_integer),
    }
}

impl Serialize for WeierstrassCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(5))?;
        for a in self.coeffs() {
            seq.serialize_element(&a.to_string())?;
        }
        seq.end()
    }
}

/// The coordinate change `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelMap {
    #[serde(serialize_with = "crate::serde_util::rat")]
    u: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    r: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    s: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    t: ExactRat,
}

impl ModelMap {
    pub fn new(u: ExactRat, r: ExactRat, s: ExactRat, t: ExactRat) -> Result<Self, CurveError> {
        if u.is_zero() {
            return Err(CurveError::ZeroScale);
        }
        Ok(ModelMap { u, r, s, t })
    }

    pub fn identity() -> Self {
        Self::scaling(ExactRat::one())
    }

    /// `(u, 0, 0, 0)`: divides `a_i` by `u^i`.
    pub fn scaling(u: ExactRat) -> Self {
        assert!(!u.is_zero());
        ModelMap {
            u,
            r: ExactRat::zero(),
            s: ExactRat::zero(),
            t: ExactRat::zero(),
        }
    }

    pub fn u(&self) -> &ExactRat {
        &self.u
    }
    pub fn r(&self) -> &ExactRat {
        &self.r
    }
    pub fn s(&self) -> &ExactRat {
        &self.s
    }
    pub fn t(&self) -> &ExactRat {
        &self.t
    }

    /// The map applying `self` first, then `next`.
    pub fn then(&self, next: &ModelMap) -> ModelMap {
        let u2 = &self.u * &self.u;
        ModelMap {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.s * &next.r + &u2 * &self.u * &next.t,
        }
    }

    pub fn inverse(&self) -> ModelMap {
        let ui = self.u.recip();
        let ui2 = &ui * &ui;
        ModelMap {
            r: -&self.r * &ui2,
            s: -&self.s * &ui,
            t: (&self.r * &self.s - &self.t) * &ui2 * &ui,
            u: ui,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    pub fn u_is_unit(&self) -> bool {
        self.u.abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat_of};

    fn e11() -> WeierstrassCurve {
        WeierstrassCurve::from_ints([0, 1, 0, 3, 3])
    }

    #[test]
    fn invariants_of_e11() {
        let inv = e11().invariants();
        assert_eq!(inv.disc, rat(-3072));
        assert_eq!(inv.c4, rat(-128));
        assert_eq!(inv.j, Some(rat_of(2048, 3)));
        let z = WeierstrassCurve::from_ints([0; 5]).invariants();
        assert!(z.disc.is_zero());
        assert_eq!(z.j, None);
    }

    #[test]
    fn singular_family_member() {
        // E_{12,0}
        let e = WeierstrassCurve::from_ints([0, 144, 0, 5184, 0]);
        assert!(e.is_singular());
        assert_eq!(e.minimal_model(), Err(CurveError::Singular));
    }

    #[test]
    fn rescaling_e8() {
        // E_{8,t} with u = 4 gives a2 = 4, a4 = 6, a6 = 192 t
        for t in [-3i64, 0, 1, 5] {
            let e = WeierstrassCurve::from_ints([0, 64, 0, 1536, 3 * 262144 * t]);
            let m = ModelMap::scaling(rat(4));
            assert_eq!(
                e.transform(&m),
                WeierstrassCurve::from_ints([0, 4, 0, 6, 192 * t])
            );
        }
    }

    #[test]
    fn identity_and_round_trip() {
        let e = WeierstrassCurve::from_ints([1, -1, 1, -10, -20]);
        assert_eq!(e.transform(&ModelMap::identity()), e);
        let m = ModelMap::new(rat_of(2, 3), rat(5), rat_of(-1, 2), rat(7)).unwrap();
        assert_eq!(e.transform(&m).transform(&m.inverse()), e);
        assert!(m.then(&m.inverse()).is_identity());
        assert_eq!(
            ModelMap::new(rat(0), rat(1), rat(0), rat(0)),
            Err(CurveError::ZeroScale)
        );
    }

    #[test]
    fn minimal_model_examples() {
        let (min, map) = e11().minimal_model().unwrap();
        assert_eq!(min.discriminant(), rat(-3072));
        assert!(map.u_is_unit());

        let scaled = e11().transform(&ModelMap::scaling(rat_of(1, 2)));
        assert_eq!(scaled.discriminant(), rat(-3072) * rat(4096));
        let (min2, map2) = scaled.minimal_model().unwrap();
        assert_eq!(min2.discriminant(), rat(-3072));
        assert_eq!(scaled.transform(&map2), min2);

        // rational input
        let rational =
            e11().transform(&ModelMap::new(rat(3), rat_of(1, 3), rat(2), rat_of(-5, 7)).unwrap());
        assert!(!rational.is_integral());
        let (min3, _) = rational.minimal_model().unwrap();
        assert_eq!(min3.discriminant(), rat(-3072));
    }

    #[test]
    fn twists() {
        let e = e11();
        let t1 = e.quadratic_twist(&int(1)).unwrap();
        assert_eq!(t1.discriminant(), e.discriminant());
        assert!(e.is_isomorphic(&t1).unwrap().is_some());
        let tm1 = e.quadratic_twist(&int(-1)).unwrap();
        assert_eq!(tm1.j_invariant(), Some(rat_of(2048, 3)));
        let t5 = e.quadratic_twist(&int(5)).unwrap();
        assert_eq!(t5.j_invariant(), e.j_invariant());
        assert_eq!(e.is_isomorphic(&t5).unwrap(), None);
        assert_eq!(e.quadratic_twist(&int(0)), Err(CurveError::ZeroTwist));
    }

    #[test]
    fn isomorphism_special_j() {
        // j = 1728 and j = 0
        for e in [
            WeierstrassCurve::from_ints([0, 0, 0, -2, 0]),
            WeierstrassCurve::from_ints([0, 0, 1, 0, -7]),
        ] {
            let m = ModelMap::new(rat_of(1, 5), rat(2), rat(3), rat(-4)).unwrap();
            let f = e.transform(&m);
            let found = e.is_isomorphic(&f).unwrap().unwrap();
            assert_eq!(e.transform(&found), f);
            let tw = e.quadratic_twist(&int(-3)).unwrap();
            assert_eq!(e.is_isomorphic(&tw).unwrap(), None);
        }
    }

    #[test]
    fn parse_and_display() {
        let e: WeierstrassCurve = "[0,1,0,3,3]".parse().unwrap();
        assert_eq!(e, e11());
        let r: WeierstrassCurve = "0 1/2 0 -3/4 5".parse().unwrap();
        assert_eq!(r.a2, rat_of(1, 2));
        assert_eq!(r.to_string(), "[0,1/2,0,-3/4,5]");
        assert!("[0,1,0,3]".parse::<WeierstrassCurve>().is_err());
        assert!("[0,1,0,3,x]".parse::<WeierstrassCurve>().is_err());
        assert!("[0,1,0,3,1/0]".parse::<WeierstrassCurve>().is_err());
    }
}
