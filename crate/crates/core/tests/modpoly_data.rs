//! Shipped modular polynomial data and the family isogeny scan.

use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::Lazy;
use selmer_core::exactmath::{int, rat, IntPoly};
use selmer_core::hessian::{family_e, family_h};
use selmer_core::modpoly::{
    eval_modpoly, family_isogeny_poly, find_exceptional_t, psi, ModPolyError, ModPolyStore,
    ModularPolynomial, EVEN_ISOGENY_LEVELS,
};
use selmer_core::ExactRat;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

static STORE: Lazy<ModPolyStore> =
    Lazy::new(|| ModPolyStore::open(data_dir(), &EVEN_ISOGENY_LEVELS).unwrap());

fn all_levels() -> Vec<Arc<ModularPolynomial>> {
    STORE.polys().cloned().collect()
}

#[test]
fn every_level_has_the_right_shape() {
    for phi in STORE.polys() {
        let d = psi(phi.level());
        assert_eq!(phi.degree(), d);
        assert_eq!(phi.as_bipoly().degree_x(), d);
        assert_eq!(phi.as_bipoly().degree_y(), d);
        assert_eq!(phi.coeff(d, 0), int(1));
        assert_eq!(phi.as_bipoly(), &phi.as_bipoly().transpose());
    }
}

#[test]
fn level_two_read_back() {
    let phi2 = STORE.get(2).unwrap();
    assert_eq!(phi2.coeff(2, 2), int(-1));
    let y_poly = phi2.as_bipoly().specialize_x(&BigInt::zero());
    let want = IntPoly::from_i64s(&[-157464000000000, 8748000000, -162000, 1]);
    assert_eq!(y_poly, want);
    assert_eq!(want, IntPoly::from_i64s(&[-54000, 1]).pow(3));
    assert!(eval_modpoly(phi2, &rat(0), &rat(54000)).is_zero());
    assert_eq!(
        eval_modpoly(phi2, &rat(0), &rat(0)),
        ExactRat::from_integer(phi2.coeff(0, 0))
    );
}

/// j-invariants of curves in one isogeny class with the cyclic degree
/// linking them, from an independent isogeny-class computation.
const ISOGENOUS: [(u32, &str, &str); 8] = [
    // class of 15a1
    (2, "111284641/50625", "13997521/225"),
    (4, "111284641/50625", "56667352321/15"),
    (8, "13997521/225", "-147281603041/215233605"),
    (16, "56667352321/15", "-147281603041/215233605"),
    // class of 14a1
    (6, "9938375/21952", "128787625/98"),
    (18, "-15625/28", "2251439055699625/25088"),
    // class of 30a1
    (6, "702595369/72900", "10316097499609/5859375000"),
    (12, "2656166199049/33750", "-273359449/1536000"),
];

#[test]
fn known_isogenous_pairs_vanish() {
    for (n, a, b) in ISOGENOUS {
        let (a, b): (ExactRat, ExactRat) = (a.parse().unwrap(), b.parse().unwrap());
        let phi = STORE.get(n).unwrap();
        assert!(eval_modpoly(phi, &a, &b).is_zero(), "level {n}");
        assert!(eval_modpoly(phi, &b, &a).is_zero(), "level {n}");
        // a cyclic N-isogeny is not an M-isogeny for other even M here
        for m in EVEN_ISOGENY_LEVELS.iter().filter(|&&m| m != n) {
            let other = STORE.get(*m).unwrap();
            assert!(
                !eval_modpoly(other, &a, &b).is_zero(),
                "level {m} for pair of level {n}"
            );
        }
    }
}

#[test]
fn missing_and_corrupt_data_are_reported() {
    match ModPolyStore::open(data_dir(), &[2, 3, 5]) {
        Err(ModPolyError::MissingLevels(v)) => assert_eq!(v, vec![3, 5]),
        other => panic!("{other:?}"),
    }
    let tmp = std::env::temp_dir().join(format!("selmer-modpoly-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    std::fs::copy(data_dir().join("phi_j_2.txt"), tmp.join("phi_j_2.txt")).unwrap();
    std::fs::write(tmp.join("manifest.txt"), "2 phi_j_2.txt 00\n").unwrap();
    assert!(matches!(
        ModPolyStore::open(&tmp, &[2]),
        Err(ModPolyError::Checksum { level: 2, .. })
    ));
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn specialization_matches_direct_evaluation() {
    let q = int(7);
    for phi in STORE.polys().take(4) {
        let f = family_isogeny_poly(phi, &q).unwrap();
        assert!(f.degree().unwrap() <= 8 * phi.degree() as usize);
        for t in [-9i64, -2, 1, 4, 13] {
            let t = int(t);
            let je = family_e(&q, &t).j_invariant().unwrap();
            let jh = family_h(&q, &t).j_invariant().unwrap();
            let direct = eval_modpoly(phi, &je, &jh);
            let poly = f.eval(&t);
            // same zero set, and a nonzero rational ratio otherwise
            assert_eq!(direct.is_zero(), poly.is_zero());
        }
    }
}

#[test]
fn scan_reproduces_exceptional_pairs() {
    let levels = all_levels();
    let expect: [(i64, &[i64]); 4] = [(1, &[1, 9]), (3, &[-1, 0]), (8, &[0]), (5, &[])];
    for (q, ts) in expect {
        let scan = find_exceptional_t(&int(q), &levels, 1000).unwrap();
        let got: Vec<BigInt> = scan.exceptional_t();
        let want: Vec<BigInt> = ts.iter().map(|&t| int(t)).collect();
        assert_eq!(got, want, "q = {q}: {:?}", scan.hits());
        for (n, t) in scan.hits() {
            let phi = STORE.get(n).unwrap();
            assert!(family_isogeny_poly(phi, &int(q))
                .unwrap()
                .eval(&t)
                .is_zero());
        }
    }
}

#[test]
fn q12_reports_t0_as_singular_only() {
    let scan = find_exceptional_t(&int(12), &all_levels(), 1000).unwrap();
    assert!(scan.singular_t.contains(&int(0)));
    assert!(scan.exceptional_t().is_empty());
}
