//! Classical modular polynomials and the isogeny scan along the families.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::curves::weierstrass_invariants;
use crate::exactmath::{integer_root_search, BiPoly, ExactInt, ExactRat, IntPoly, MathError};

/// Even levels among the possible degrees of rational cyclic isogenies.
pub const EVEN_ISOGENY_LEVELS: [u32; 9] = [2, 4, 6, 8, 10, 12, 14, 16, 18];

/// Default half-width of the integer root search.
pub const DEFAULT_WINDOW: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModPolyError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("missing modular polynomial data for levels {0:?}")]
    MissingLevels(Vec<u32>),
    #[error("checksum mismatch for level {level}: expected {expected}, found {actual}")]
    Checksum {
        level: u32,
        expected: String,
        actual: String,
    },
    #[error("q = {0}: every member of the family is singular")]
    DegenerateFamily(ExactInt),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// `N * prod_{p | N} (1 + 1/p)`.
pub fn psi(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out = out / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out = out / m * (m + 1);
    }
    out
}

/// `Φ_N(X, Y)`, symmetric, monic of degree `ψ(N)` in each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPolynomial {
    level: u32,
    /// Every term, both halves of each symmetric pair.
    poly: BiPoly,
}

impl ModularPolynomial {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> u32 {
        psi(self.level)
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExactInt {
        self.poly.coeff(i, j)
    }

    pub fn as_bipoly(&self) -> &BiPoly {
        &self.poly
    }

    /// Number of stored terms with `i >= j`.
    pub fn stored_terms(&self) -> usize {
        self.poly.terms().filter(|(i, j, _)| i >= j).count()
    }
}

fn parse_line(line: &str) -> Option<(u32, u32, ExactInt)> {
    let rest = line.trim().strip_prefix('[')?;
    let (idx, coeff) = rest.split_once(']')?;
    let (i, j) = idx.split_once(',')?;
    Some((
        i.trim().parse().ok()?,
        j.trim().parse().ok()?,
        coeff.trim().parse().ok()?,
    ))
}

/// Reads `[i,j] c` lines and completes by symmetry.
pub fn load_modpoly<R: Read>(level: u32, source: R) -> Result<ModularPolynomial, ModPolyError> {
    if level == 0 {
        return Err(ModPolyError::Parse {
            line: 0,
            msg: "level must be positive".into(),
        });
    }
    let d = psi(level);
    let mut seen: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut poly = BiPoly::new();
    let mut last_line = 0;
    for (k, line) in BufReader::new(source).lines().enumerate() {
        let lineno = k + 1;
        last_line = lineno;
        let line = line.map_err(|e| ModPolyError::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let (i, j, c) = parse_line(&line).ok_or_else(|| ModPolyError::Parse {
            line: lineno,
            msg: format!("expected `[i,j] c`, got `{}`", line.trim()),
        })?;
        let key = (i.max(j), i.min(j));
        if let Some(prev) = seen.insert(key, lineno) {
            return Err(ModPolyError::Parse {
                line: lineno,
                msg: format!("term [{},{}] already given on line {prev}", key.0, key.1),
            });
        }
        if key.0 > d {
            return Err(ModPolyError::Parse {
                line: lineno,
                msg: format!("degree {} exceeds psi({level}) = {d}", key.0),
            });
        }
        poly.add_term(key.0, key.1, c.clone());
        if key.0 != key.1 {
            poly.add_term(key.1, key.0, c);
        }
    }
    if poly.degree_x() != d || !poly.coeff(d, 0).is_one() {
        return Err(ModPolyError::Parse {
            line: last_line,
            msg: format!("expected leading term [{d},0] 1 for level {level}"),
        });
    }
    Ok(ModularPolynomial { level, poly })
}

/// `Φ_N(j1, j2)`, exact.
pub fn eval_modpoly(phi: &ModularPolynomial, j1: &ExactRat, j2: &ExactRat) -> ExactRat {
    phi.poly.eval(j1, j2)
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Levels loaded from a data directory whose `manifest.txt` lists
/// `N filename sha256` per line.
#[derive(Debug, Clone, Default)]
pub struct ModPolyStore {
    dir: PathBuf,
    polys: BTreeMap<u32, Arc<ModularPolynomial>>,
}

impl ModPolyStore {
    /// Loads and checksums the requested levels.
    pub fn open(dir: impl AsRef<Path>, levels: &[u32]) -> Result<Self, ModPolyError> {
        let dir = dir.as_ref().to_path_buf();
        let manifest_path = dir.join("manifest.txt");
        let manifest = fs::read_to_string(&manifest_path)
            .map_err(|e| ModPolyError::Manifest(format!("{}: {e}", manifest_path.display())))?;
        let mut entries: BTreeMap<u32, (String, String)> = BTreeMap::new();
        for (k, line) in manifest.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [n, file, sum] = parts[..] else {
                return Err(ModPolyError::Manifest(format!("line {}: `{line}`", k + 1)));
            };
            let n: u32 = n
                .parse()
                .map_err(|_| ModPolyError::Manifest(format!("line {}: bad level", k + 1)))?;
            entries.insert(n, (file.to_string(), sum.to_lowercase()));
        }

        let missing: Vec<u32> = levels
            .iter()
            .copied()
            .filter(|n| {
                entries
                    .get(n)
                    .is_none_or(|(file, _)| !dir.join(file).is_file())
            })
            .collect();
        if !missing.is_empty() {
            return Err(ModPolyError::MissingLevels(missing));
        }

        let loaded: Result<Vec<_>, ModPolyError> = levels
            .par_iter()
            .map(|&n| {
                let (file, expected) = &entries[&n];
                let bytes = fs::read(dir.join(file))
                    .map_err(|e| ModPolyError::Io(format!("{file}: {e}")))?;
                let actual = sha256_hex(&bytes);
                if &actual != expected {
                    return Err(ModPolyError::Checksum {
                        level: n,
                        expected: expected.clone(),
                        actual,
                    });
                }
                Ok((n, Arc::new(load_modpoly(n, bytes.as_slice())?)))
            })
            .collect();
        Ok(ModPolyStore {
            dir,
            polys: loaded?.into_iter().collect(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, level: u32) -> Option<&Arc<ModularPolynomial>> {
        self.polys.get(&level)
    }

    pub fn levels(&self) -> Vec<u32> {
        self.polys.keys().copied().collect()
    }

    pub fn polys(&self) -> impl Iterator<Item = &Arc<ModularPolynomial>> {
        self.polys.values()
    }

    /// Errors with the absent levels unless all of `levels` are loaded.
    pub fn require(&self, levels: &[u32]) -> Result<(), ModPolyError> {
        let missing: Vec<u32> = levels
            .iter()
            .copied()
            .filter(|n| !self.polys.contains_key(n))
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(ModPolyError::MissingLevels(missing))
        }
    }
}

/// `j(E_{q,t})` and `j(H_{q,t})` as numerator/denominator pairs in `t`,
/// each pair divided by its common integer content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyJ {
    pub num_e: IntPoly,
    pub den_e: IntPoly,
    pub num_h: IntPoly,
    pub den_h: IntPoly,
}

impl FamilyJ {
    pub fn new(q: &ExactInt) -> Result<Self, ModPolyError> {
        let t = IntPoly::var();
        let c = |n: ExactInt| IntPoly::constant(n);
        let q2 = q * q;
        let q3 = &q2 * q;
        let e = [
            IntPoly::zero(),
            c(q2.clone()),
            IntPoly::zero(),
            c(3 * &q3),
            t.scale(&(3 * &q3 * &q3)),
        ];
        let q9 = q - 9;
        let h = [
            IntPoly::zero(),
            &c(q * (27 - 2 * q)) - &t.scale(&(81 * &q2)),
            IntPoly::zero(),
            c(q * &q9 * &q9 * &q9),
            IntPoly::zero(),
        ];
        let (num_e, den_e) = j_pair(&e).ok_or_else(|| ModPolyError::DegenerateFamily(q.clone()))?;
        let (num_h, den_h) = j_pair(&h).ok_or_else(|| ModPolyError::DegenerateFamily(q.clone()))?;
        Ok(FamilyJ {
            num_e,
            den_e,
            num_h,
            den_h,
        })
    }

    /// `den_e * den_h`; its roots are the singular members.
    pub fn singular_locus(&self) -> IntPoly {
        &self.den_e * &self.den_h
    }
}

fn j_pair(a: &[IntPoly; 5]) -> Option<(IntPoly, IntPoly)> {
    let [_, _, _, _, c4, _, disc] = weierstrass_invariants(&a[0], &a[1], &a[2], &a[3], &a[4]);
    if disc.is_zero() {
        return None;
    }
    let num = c4.pow(3);
    let g = num.content().gcd(&disc.content());
    let g = if g.is_zero() { BigInt::one() } else { g };
    let div = |p: &IntPoly| IntPoly::new(p.coeffs().iter().map(|x| x / &g).collect());
    Some((div(&num), div(&disc)))
}

/// `[a^i b^(d-i) for i in 0..=d]` over `Z[t]`.
fn poly_homogeneous_powers(a: &IntPoly, b: &IntPoly, d: usize) -> Vec<IntPoly> {
    let mut apow = vec![IntPoly::one()];
    let mut bpow = vec![IntPoly::one()];
    for k in 1..=d {
        apow.push(&apow[k - 1] * a);
        bpow.push(&bpow[k - 1] * b);
    }
    (0..=d).map(|i| &apow[i] * &bpow[d - i]).collect()
}

/// Numerator of `Φ_N(j(E_{q,t}), j(H_{q,t}))` in `Z[t]`: content removed,
/// positive leading coefficient.
pub fn family_isogeny_poly(phi: &ModularPolynomial, q: &ExactInt) -> Result<IntPoly, ModPolyError> {
    let fj = FamilyJ::new(q)?;
    Ok(isogeny_poly_from(phi, &fj))
}

fn isogeny_poly_from(phi: &ModularPolynomial, fj: &FamilyJ) -> IntPoly {
    let d = phi.degree() as usize;
    let ep = poly_homogeneous_powers(&fj.num_e, &fj.den_e, d);
    let hp = poly_homogeneous_powers(&fj.num_h, &fj.den_h, d);
    let mut rows: BTreeMap<u32, IntPoly> = BTreeMap::new();
    for (i, j, c) in phi.poly.terms() {
        rows.entry(i)
            .or_insert_with(IntPoly::zero)
            .add_scaled(c, &hp[j as usize]);
    }
    let mut acc = IntPoly::zero();
    for (i, row) in rows {
        acc = &acc + &(&ep[i as usize] * &row);
    }
    let mut out = acc.primitive_part();
    if out.leading().is_some_and(|c| c.is_negative()) {
        out = -out;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelScan {
    pub level: u32,
    pub degree: usize,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub roots: Vec<ExactInt>,
    /// True when the window covers every possible integer root.
    pub exhaustive: bool,
}

/// Integer `t` in the window where `Φ_N(j_E, j_H)` vanishes, per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalScan {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub q: ExactInt,
    pub window: u64,
    pub levels: Vec<LevelScan>,
    /// Integer `t` in the window where one of the two curves is singular.
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub singular_t: Vec<ExactInt>,
}

impl ExceptionalScan {
    /// `(N, t)` pairs, sorted by `t` then `N`.
    pub fn hits(&self) -> Vec<(u32, ExactInt)> {
        let mut out: Vec<(u32, ExactInt)> = self
            .levels
            .iter()
            .flat_map(|l| l.roots.iter().map(move |t| (l.level, t.clone())))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }

    /// Distinct exceptional `t`, sorted.
    pub fn exceptional_t(&self) -> Vec<ExactInt> {
        let mut ts: Vec<ExactInt> = self.hits().into_iter().map(|(_, t)| t).collect();
        ts.dedup();
        ts
    }

    pub fn caveat(&self) -> String {
        format!(
            "roots are complete only for |t| <= {}{}",
            self.window,
            if self.levels.iter().all(|l| l.exhaustive) {
                " (the window exceeds the root bound, so the list is complete)"
            } else {
                ""
            }
        )
    }
}

/// All `(N, t0)` with `|t0| <= window` where the isogeny numerator vanishes
/// at a nonsingular member; singular `t0` are listed separately.
pub fn find_exceptional_t(
    q: &ExactInt,
    levels: &[Arc<ModularPolynomial>],
    window: u64,
) -> Result<ExceptionalScan, ModPolyError> {
    let fj = FamilyJ::new(q)?;
    let singular = integer_root_search(&fj.singular_locus(), window)?;
    let scans: Result<Vec<LevelScan>, ModPolyError> = levels
        .par_iter()
        .map(|phi| {
            let f = isogeny_poly_from(phi, &fj);
            let found = integer_root_search(&f, window)?;
            Ok(LevelScan {
                level: phi.level(),
                degree: f.degree().unwrap_or(0),
                roots: found
                    .roots
                    .into_iter()
                    .filter(|t| !singular.roots.contains(t))
                    .collect(),
                exhaustive: found.exhaustive,
            })
        })
        .collect();
    let mut levels = scans?;
    levels.sort_by_key(|l| l.level);
    Ok(ExceptionalScan {
        q: q.clone(),
        window,
        levels,
        singular_t: singular.roots,
    })
}
