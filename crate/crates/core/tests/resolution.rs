//! The constructed complexes: exactness checks, serialization, multipliers,
//! Plücker coordinates and the exchange duality.

use std::collections::BTreeSet;

use schubres::diagram::{diagram_from_format, Format};
use schubres::error::Error;
use schubres::linkage::koszul_complex;
use schubres::poly::MultiPoly;
use schubres::resolution::{
    be_multipliers, build_resolution, check_complex, exchange_dual, plucker_coordinates,
    ComplexJson, GradedComplex,
};
use schubres::weyl::{enumerate_double_cosets, WeylWord};

fn fmt(r: [usize; 4]) -> Format {
    Format::from_ranks(r).unwrap()
}

const D5_SIGMA2: &str = "z1 u y1 x1 u z1 y2 y1 u x1";

#[test]
fn every_e6_representative_resolves() {
    let f = fmt([1, 5, 6, 2]);
    let reps = enumerate_double_cosets(&diagram_from_format(f), 40).unwrap();
    assert_eq!(reps.len(), 6);
    for s in reps {
        let c = build_resolution(f, &s).unwrap();
        assert_eq!(c.ring.nvars(), s.letters().len());
        let r = check_complex(&c, 17);
        assert!(r.passed(), "{s}: {r:?}");
    }
}

#[test]
fn corrupted_complex_is_rejected() {
    let mut c = build_resolution(fmt([1, 5, 5, 1]), &D5_SIGMA2.parse().unwrap()).unwrap();
    let bumped = c.d[1].get(0, 0) + &MultiPoly::var(0);
    c.d[1].set(0, 0, bumped);
    let r = check_complex(&c, 1);
    assert!(!r.d1d2_zero);
    assert!(!r.passed());
}

#[test]
fn checks_are_deterministic_per_seed() {
    let c = build_resolution(fmt([1, 5, 6, 2]), &"z1 u x1".parse().unwrap()).unwrap();
    assert_eq!(check_complex(&c, 5), check_complex(&c, 5));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let c = build_resolution(fmt([1, 5, 5, 1]), &D5_SIGMA2.parse().unwrap()).unwrap();
    let s = serde_json::to_string_pretty(&c.to_json()).unwrap();
    let j: ComplexJson = serde_json::from_str(&s).unwrap();
    let back = GradedComplex::from_json(&j).unwrap();
    assert_eq!(back, c);
    assert_eq!(serde_json::to_string_pretty(&back.to_json()).unwrap(), s);
}

#[test]
fn invalid_inputs() {
    assert!(matches!(
        build_resolution(fmt([1, 5, 6, 2]), &"x1".parse().unwrap()),
        Err(Error::NotMinimalCoset(_))
    ));
    // T_{2,4,4} is affine
    assert!(matches!(
        build_resolution(fmt([1, 6, 8, 3]), &WeylWord::identity()),
        Err(Error::NotFiniteType)
    ));
}

#[test]
fn koszul_multipliers() {
    let k = koszul_complex();
    let be = be_multipliers(&k).unwrap();
    assert!(be.nullities.iter().all(|&n| n == 0));
    assert!(be.a1.is_constant() && !be.a1.is_zero());
    // a3 is the column of variables up to sign
    for (j, p) in &be.a3 {
        assert!(
            p.unit_ratio(&MultiPoly::var(2 - j[0])).is_some(),
            "{j:?}: {p}"
        );
    }
}

#[test]
fn pfaffian_multipliers() {
    let c = build_resolution(fmt([1, 5, 5, 1]), &D5_SIGMA2.parse().unwrap()).unwrap();
    let be = be_multipliers(&c).unwrap();
    assert!(be.nullities.iter().all(|&n| n == 0));
    assert!(be.a1.is_constant() && !be.a1.is_zero());
    assert_eq!(be.a3.len(), 5);
    assert_eq!(be.a2.len(), 5);
}

#[test]
fn plucker_coordinates_are_the_generators() {
    // for r1 = 1 the maximal minors of d1 are its entries
    for (r, s) in [
        ([1, 5, 5, 1], D5_SIGMA2),
        ([1, 5, 6, 2], "z1 u y1 x1 u z1 y2 y1 u x1"),
        ([1, 4, 4, 1], "z1 u x1"),
    ] {
        let f = fmt(r);
        let sigma: WeylWord = s.parse().unwrap();
        let c = build_resolution(f, &sigma).unwrap();
        let ps: Vec<MultiPoly> = plucker_coordinates(f, &sigma)
            .unwrap()
            .into_iter()
            .map(|p| p.value)
            .filter(|p| !p.is_zero())
            .collect();
        let d1: Vec<&MultiPoly> = c.d1().row(0).iter().filter(|p| !p.is_zero()).collect();
        assert_eq!(ps.len(), d1.len());
        let hit: BTreeSet<usize> = d1
            .iter()
            .map(|e| {
                ps.iter()
                    .position(|p| e.unit_ratio(p).is_some())
                    .expect("entry not a Plücker coordinate")
            })
            .collect();
        assert_eq!(hit.len(), ps.len());
    }
}

#[test]
fn exchange_duality() {
    for (r, s) in [
        ([1, 5, 5, 1], D5_SIGMA2),
        ([1, 5, 6, 2], "z1 u x1"),
        ([2, 5, 4, 1], "z1 u y1 x1 u x2 x1"),
    ] {
        let rep = exchange_dual(fmt(r), &s.parse().unwrap()).unwrap();
        assert!(rep.grading_matches && rep.ranks_reversed, "{r:?} {s}");
        assert!(check_complex(&rep.complex, 3).passed());
    }
}
