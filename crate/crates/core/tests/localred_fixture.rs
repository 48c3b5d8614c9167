//! Tate's algorithm against independently computed local data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use selmer_core::localred::{global_reduction, tate_algorithm};
use selmer_core::{Prime, WeierstrassCurve};

fn curves() -> Vec<(String, WeierstrassCurve)> {
    include_str!("fixtures/curves.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (label, coeffs) = l.split_once(' ').unwrap();
            (label.to_string(), coeffs.parse().unwrap())
        })
        .collect()
}

/// label -> sorted lines `p kodaira f c`
fn expected() -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for l in include_str!("fixtures/localdata.txt").lines() {
        if let Some((label, rest)) = l.split_once(' ') {
            out.entry(label.to_string())
                .or_default()
                .push(rest.to_string());
        }
    }
    out
}

#[test]
fn local_data_matches_fixture() {
    let want = expected();
    let mut mismatches = Vec::new();
    for (label, e) in curves() {
        let g = global_reduction(&e).unwrap();
        assert!(g.is_complete(), "{label}");
        let got: Vec<String> = g
            .local
            .iter()
            .map(|ld| format!("{} {} {} {}", ld.p, ld.kodaira, ld.f, ld.tamagawa))
            .collect();
        let exp = want.get(&label).cloned().unwrap_or_default();
        if got != exp {
            mismatches.push(format!("{label}: got {got:?}, want {exp:?}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn ogg_holds_at_every_fixture_prime() {
    for (label, e) in curves() {
        for ld in global_reduction(&e).unwrap().local {
            assert!(ld.satisfies_ogg(), "{label} at {}: {ld:?}", ld.p);
        }
    }
}

#[test]
fn cremona_conductors_match_labels() {
    for (label, e) in curves() {
        let digits: String = label.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            continue;
        }
        let n = selmer_core::localred::conductor(&e).unwrap();
        assert!(n.complete);
        assert_eq!(n.value, digits.parse::<BigInt>().unwrap(), "{label}");
    }
}

#[test]
fn local_data_does_not_depend_on_the_model() {
    let u = selmer_core::exactmath::rat_of(1, 6);
    for (label, e) in curves().into_iter().take(12) {
        let scaled = e.transform(&selmer_core::ModelMap::scaling(u.clone()));
        for p in [2u64, 3, 5, 7, 11] {
            let p = Prime::small(p).unwrap();
            assert_eq!(
                tate_algorithm(&e, &p).unwrap(),
                tate_algorithm(&scaled, &p).unwrap(),
                "{label}"
            );
        }
    }
}
