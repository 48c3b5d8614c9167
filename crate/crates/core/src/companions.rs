//! Companionship and non-isogeny certificates for a curve and its Hessian.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{CurveError, WeierstrassCurve};
use crate::exactmath::{exact_nth_root, int, squarefree_part, ExactInt, ExactRat, Prime};
use crate::hessian::{family_e, family_h, hessian_curve, HessianError};
use crate::localred::{global_reduction, GlobalReduction, KodairaType, LocalError};
use crate::modpoly::{eval_modpoly, ModPolyError, ModPolyStore, EVEN_ISOGENY_LEVELS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompanionError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    ModPoly(#[from] ModPolyError),
    #[error("q = {0} is not a listed family value; use the search mode for other q")]
    NotInTable1(ExactInt),
    #[error("{0}")]
    Input(String),
}

/// Results the Hessian relation is taken to discharge: the Galois-module
/// isomorphism on 3-torsion and its compatibility with canonical subgroups.
pub const RELIES_ON: [&str; 2] = [
    "hessian-3-torsion-isomorphism",
    "hessian-canonical-subgroup-compatibility",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompanionVerdict {
    CompanionsCertified,
    NotCertified,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KodairaRecord {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub p: ExactInt,
    pub kodaira_e: KodairaType,
    pub kodaira_h: KodairaType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionReport {
    pub verdict: CompanionVerdict,
    pub hessian_identity: bool,
    pub pot_mult_at_3: bool,
    pub bad_primes_equal: bool,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub bad_primes_e: Vec<ExactInt>,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub bad_primes_h: Vec<ExactInt>,
    pub pot_mult_primes_equal: bool,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub pot_mult_primes_e: Vec<ExactInt>,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub pot_mult_primes_h: Vec<ExactInt>,
    pub kodaira_ok: bool,
    /// Types at bad primes where either curve is potentially good.
    pub kodaira: Vec<KodairaRecord>,
    /// Some discriminant could not be fully factored.
    pub partial: bool,
    #[serde(serialize_with = "crate::serde_util::opt_int")]
    pub conductor_e: Option<ExactInt>,
    #[serde(serialize_with = "crate::serde_util::opt_int")]
    pub conductor_h: Option<ExactInt>,
    pub relies_on: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CompanionReport {
    fn degenerate(note: String) -> Self {
        CompanionReport {
            verdict: CompanionVerdict::Degenerate,
            hessian_identity: false,
            pot_mult_at_3: false,
            bad_primes_equal: false,
            bad_primes_e: Vec::new(),
            bad_primes_h: Vec::new(),
            pot_mult_primes_equal: false,
            pot_mult_primes_e: Vec::new(),
            pot_mult_primes_h: Vec::new(),
            kodaira_ok: false,
            kodaira: Vec::new(),
            partial: false,
            conductor_e: None,
            conductor_h: None,
            relies_on: RELIES_ON.to_vec(),
            note: Some(note),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == CompanionVerdict::CompanionsCertified
    }

    /// Names of the failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        if self.verdict == CompanionVerdict::Degenerate {
            return vec!["degenerate"];
        }
        let mut out = Vec::new();
        for (ok, name) in [
            (self.hessian_identity, "hessian_identity"),
            (self.pot_mult_at_3, "pot_mult_at_3"),
            (self.bad_primes_equal, "bad_primes_equal"),
            (self.pot_mult_primes_equal, "pot_mult_primes_equal"),
            (self.kodaira_ok, "kodaira_ok"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        if self.partial {
            out.push("partial");
        }
        out
    }
}

fn forbidden(k: KodairaType) -> bool {
    k.is_ii_or_iv_family()
}

/// Sufficient conditions for `E` and `H` to be 3-Selmer companions over
/// every number field, with `H` expected to be the Hessian of `E`.
pub fn companion_conditions(
    e: &WeierstrassCurve,
    h: &WeierstrassCurve,
) -> Result<CompanionReport, CompanionError> {
    if e.is_singular() || h.is_singular() {
        return Ok(CompanionReport::degenerate("singular curve".into()));
    }
    let hessian_identity = match hessian_curve(e) {
        Ok(hess) => hess.is_isomorphic(h)?.is_some(),
        Err(HessianError::DegenerateHessian) => {
            return Ok(CompanionReport::degenerate("j(E) = 0".into()))
        }
        Err(HessianError::Curve(err)) => return Err(err.into()),
        Err(HessianError::NoFlexAtInfinity) => false,
    };
    let ge = global_reduction(e)?;
    let gh = global_reduction(h)?;
    Ok(assemble(hessian_identity, &ge, &gh))
}

fn assemble(hessian_identity: bool, ge: &GlobalReduction, gh: &GlobalReduction) -> CompanionReport {
    let three = int(3);
    let pot_mult_at_3 = ge.at(&three).is_some_and(|ld| ld.pot_mult);
    let pm_e = ge.pot_mult_primes();
    let pm_h = gh.pot_mult_primes();

    let union: BTreeSet<&ExactInt> = ge.bad_primes.iter().chain(&gh.bad_primes).collect();
    let mut kodaira = Vec::new();
    for p in union {
        let le = ge.at(p);
        let lh = gh.at(p);
        let pot_good = !le.is_some_and(|l| l.pot_mult) || !lh.is_some_and(|l| l.pot_mult);
        if pot_good {
            kodaira.push(KodairaRecord {
                p: p.clone(),
                kodaira_e: le.map_or(KodairaType::I0, |l| l.kodaira),
                kodaira_h: lh.map_or(KodairaType::I0, |l| l.kodaira),
            });
        }
    }
    let kodaira_ok = kodaira
        .iter()
        .all(|r| !forbidden(r.kodaira_e) && !forbidden(r.kodaira_h));
    let partial = !ge.is_complete() || !gh.is_complete();
    let bad_primes_equal = ge.bad_primes == gh.bad_primes;
    let pot_mult_primes_equal = pm_e == pm_h;
    let all = hessian_identity
        && pot_mult_at_3
        && bad_primes_equal
        && pot_mult_primes_equal
        && kodaira_ok;
    CompanionReport {
        verdict: if all && !partial {
            CompanionVerdict::CompanionsCertified
        } else {
            CompanionVerdict::NotCertified
        },
        hessian_identity,
        pot_mult_at_3,
        bad_primes_equal,
        bad_primes_e: ge.bad_primes.clone(),
        bad_primes_h: gh.bad_primes.clone(),
        pot_mult_primes_equal,
        pot_mult_primes_e: pm_e,
        pot_mult_primes_h: pm_h,
        kodaira_ok,
        kodaira,
        partial,
        conductor_e: ge.conductor(),
        conductor_h: gh.conductor(),
        relies_on: RELIES_ON.to_vec(),
        note: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsogenyVerdict {
    NotIsogenousCertified,
    IsogenousWitness,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelValue {
    pub level: u32,
    pub vanishes: bool,
    /// Decimal digits in the numerator of `Φ_N(j_E, j_H)`.
    pub value_digits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsogenyReport {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub j_e: ExactRat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub j_h: ExactRat,
    /// Both j-invariants non-integral, so neither curve has potential CM.
    pub cm_excluded: bool,
    /// `Δ_H / Δ_E` is not a rational square, ruling out odd-degree isogenies.
    pub odd_excluded: bool,
    #[serde(serialize_with = "crate::serde_util::opt_int")]
    pub disc_ratio_squarefree_part: Option<ExactInt>,
    pub even_levels: Vec<LevelValue>,
    pub verdict: IsogenyVerdict,
    pub witness_level: Option<u32>,
}

impl IsogenyReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == IsogenyVerdict::NotIsogenousCertified
    }
}

/// Non-isogeny certificate: CM guard, odd-degree exclusion through the
/// discriminant ratio, and the even levels allowed for rational cyclic
/// isogenies tested with `Φ_N`.
pub fn non_isogeny_check(
    e: &WeierstrassCurve,
    h: &WeierstrassCurve,
    store: &ModPolyStore,
) -> Result<IsogenyReport, CompanionError> {
    store.require(&EVEN_ISOGENY_LEVELS)?;
    let je = e.j_invariant().ok_or(CurveError::Singular)?;
    let jh = h.j_invariant().ok_or(CurveError::Singular)?;
    let cm_excluded = !je.is_integer() && !jh.is_integer();
    let ratio = h.discriminant() / e.discriminant();
    let odd_excluded = exact_nth_root(&ratio, 2).is_none();
    let disc_ratio_squarefree_part = squarefree_part(&ratio).ok();

    let even_levels: Vec<LevelValue> = EVEN_ISOGENY_LEVELS
        .par_iter()
        .map(|&n| {
            let phi = store.get(n).expect("required above");
            let v = eval_modpoly(phi, &je, &jh);
            LevelValue {
                level: n,
                vanishes: v.is_zero(),
                value_digits: if v.is_zero() {
                    1
                } else {
                    v.numer().abs().to_string().len()
                },
            }
        })
        .collect();
    let witness_level = even_levels.iter().find(|l| l.vanishes).map(|l| l.level);
    let verdict = if witness_level.is_some() {
        IsogenyVerdict::IsogenousWitness
    } else if cm_excluded && odd_excluded {
        IsogenyVerdict::NotIsogenousCertified
    } else {
        IsogenyVerdict::Inconclusive
    };
    Ok(IsogenyReport {
        j_e: je,
        j_h: jh,
        cm_excluded,
        odd_excluded,
        disc_ratio_squarefree_part,
        even_levels,
        verdict,
        witness_level,
    })
}

/// Congruence condition on `t` attached to a listed value of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TClass {
    pub residue: u32,
    pub modulus: u32,
}

impl TClass {
    pub fn contains(&self, t: &ExactInt) -> bool {
        use num_integer::Integer;
        t.mod_floor(&BigInt::from(self.modulus)) == BigInt::from(self.residue)
    }
}

/// Listed `q -> t` class, or `None` if `q` is not listed.
pub fn table1_class(q: &ExactInt) -> Option<TClass> {
    let q: i64 = q.try_into().ok()?;
    match q {
        -15 | 1 | 5 | 13 | 17 | 21 => Some(TClass {
            residue: 1,
            modulus: 8,
        }),
        3 | 7 | 11 => Some(TClass {
            residue: 3,
            modulus: 4,
        }),
        8 | 10 | 12 => Some(TClass {
            residue: 0,
            modulus: 1,
        }),
        _ => None,
    }
}

/// `(q, t)` with a rational cyclic isogeny between the two family members.
pub const EXCEPTIONAL_PAIRS: [(i64, i64); 5] = [(1, 1), (1, 9), (3, -1), (3, 0), (8, 0)];

pub fn is_exceptional(q: &ExactInt, t: &ExactInt) -> bool {
    EXCEPTIONAL_PAIRS
        .iter()
        .any(|&(a, b)| *q == int(a) && *t == int(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Record {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub q: ExactInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub t: ExactInt,
    pub singular: bool,
    /// Listed among the isogenous exceptional pairs.
    pub exceptional: bool,
    pub companion: CompanionReport,
    pub isogeny: Option<IsogenyReport>,
}

impl Table1Record {
    /// Certified companions, and non-isogenous when the isogeny check ran.
    pub fn fully_certified(&self) -> bool {
        self.companion.is_certified() && self.isogeny.as_ref().is_none_or(|i| i.is_certified())
    }
}

/// One record per `t` in `[t_min, t_max]` in the listed class of `q`.
pub fn verify_table1(
    q: &ExactInt,
    t_min: i64,
    t_max: i64,
    store: Option<&ModPolyStore>,
) -> Result<Vec<Table1Record>, CompanionError> {
    let class = table1_class(q).ok_or_else(|| CompanionError::NotInTable1(q.clone()))?;
    let ts: Vec<ExactInt> = (t_min..=t_max)
        .map(int)
        .filter(|t| class.contains(t))
        .collect();
    ts.par_iter().map(|t| verify_pair(q, t, store)).collect()
}

/// Companion and isogeny reports for `(E_{q,t}, H_{q,t})`.
pub fn verify_pair(
    q: &ExactInt,
    t: &ExactInt,
    store: Option<&ModPolyStore>,
) -> Result<Table1Record, CompanionError> {
    let e = family_e(q, t);
    let h = family_h(q, t);
    let singular = e.is_singular() || h.is_singular();
    let companion = companion_conditions(&e, &h)?;
    let isogeny = match store {
        Some(s) if !singular => Some(non_isogeny_check(&e, &h, s)?),
        _ => None,
    };
    Ok(Table1Record {
        q: q.clone(),
        t: t.clone(),
        singular,
        exceptional: is_exceptional(q, t),
        companion,
        isogeny,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub modulus: u32,
    pub samples_per_class: usize,
    pub max_abs_t: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            modulus: 8,
            samples_per_class: 25,
            max_abs_t: 200,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FailureCounts {
    pub degenerate: usize,
    pub hessian_identity: usize,
    pub pot_mult_at_3: usize,
    pub bad_primes_equal: usize,
    pub pot_mult_primes_equal: usize,
    pub kodaira_ok: usize,
    pub partial: usize,
}

impl FailureCounts {
    fn record(&mut self, r: &CompanionReport) {
        for f in r.failures() {
            match f {
                "degenerate" => self.degenerate += 1,
                "hessian_identity" => self.hessian_identity += 1,
                "pot_mult_at_3" => self.pot_mult_at_3 += 1,
                "bad_primes_equal" => self.bad_primes_equal += 1,
                "pot_mult_primes_equal" => self.pot_mult_primes_equal += 1,
                "kodaira_ok" => self.kodaira_ok += 1,
                _ => self.partial += 1,
            }
        }
    }
}

/// Sampled evidence for one `(q, t mod M)` class. Heuristic only: passing
/// samples do not prove the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub q: ExactInt,
    pub residue: u32,
    pub modulus: u32,
    pub samples: usize,
    pub passed: usize,
    pub all_pass: bool,
    pub failures: FailureCounts,
}

/// Up to `n` values `t ≡ r (mod m)` with `|t| <= bound`, by increasing `|t|`
/// (non-negative first on ties).
pub fn class_samples(r: u32, m: u32, n: usize, bound: u64) -> Vec<ExactInt> {
    let mut out = Vec::new();
    let bound = bound as i64;
    let (r, m) = (r as i64, m as i64);
    for a in 0..=bound {
        for t in if a == 0 { vec![0] } else { vec![a, -a] } {
            if t.rem_euclid(m) == r {
                out.push(int(t));
                if out.len() == n {
                    return out;
                }
            }
        }
    }
    out
}

/// Runs the companion checklist on sampled `t` in every class mod `M`, for
/// every `q` in `q_min..=q_max`.
pub fn search_q(
    q_min: i64,
    q_max: i64,
    config: SearchConfig,
) -> Result<Vec<SearchRow>, CompanionError> {
    if config.modulus == 0 {
        return Err(CompanionError::Input("modulus must be at least 1".into()));
    }
    let jobs: Vec<(i64, u32)> = (q_min..=q_max)
        .flat_map(|q| (0..config.modulus).map(move |r| (q, r)))
        .collect();
    jobs.par_iter()
        .map(|&(q, r)| {
            let q = int(q);
            let ts = class_samples(
                r,
                config.modulus,
                config.samples_per_class,
                config.max_abs_t,
            );
            let mut failures = FailureCounts::default();
            let mut passed = 0;
            for t in &ts {
                let rep = companion_conditions(&family_e(&q, t), &family_h(&q, t))?;
                if rep.is_certified() {
                    passed += 1;
                } else {
                    failures.record(&rep);
                }
            }
            Ok(SearchRow {
                q,
                residue: r,
                modulus: config.modulus,
                samples: ts.len(),
                passed,
                all_pass: !ts.is_empty() && passed == ts.len(),
                failures,
            })
        })
        .collect()
}

/// Whether `E_{q,t}` has potentially multiplicative reduction at 3.
pub fn family_pot_mult_at_3(q: &ExactInt, t: &ExactInt) -> Result<bool, CompanionError> {
    let e = family_e(q, t);
    Ok(crate::localred::potentially_multiplicative(
        &e,
        &Prime::small(3).expect("prime"),
    )?)
}
