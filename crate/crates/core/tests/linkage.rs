//! Structure maps and linkage.

use proptest::prelude::*;
use schubres::diagram::Format;
use schubres::error::Error;
use schubres::linkage::{koszul_complex, link, link_format, rank_invariants, structure_maps};
use schubres::poly::MultiPoly;
use schubres::resolution::{build_resolution, check_complex};
use schubres::weyl::WeylWord;

fn fmt(r: [usize; 4]) -> Format {
    Format::from_ranks(r).unwrap()
}

proptest! {
    #[test]
    fn link_format_is_an_involution(f1 in 3usize..200, f2 in 0usize..200, f3 in 0usize..200) {
        let f = [1, f1, f2, f3];
        let g = link_format(f).unwrap();
        prop_assert_eq!(g[1] + g[3], f1 + f3);
        prop_assert_eq!(link_format(g).unwrap(), f);
    }
}

#[test]
fn koszul_multiplication_is_exterior() {
    let k = koszul_complex();
    let m = structure_maps(&k).unwrap();
    assert_eq!(m.nullity, 0);
    // ∧²F1 → F2 is a signed identity on the basis e_a ∧ e_b
    for (col, _) in m.pairs.iter().enumerate() {
        let c = m.w31.column(col);
        let nz: Vec<&MultiPoly> = c.iter().filter(|p| !p.is_zero()).collect();
        assert_eq!(nz.len(), 1);
        assert!(nz[0].is_constant());
    }
}

#[test]
fn koszul_double_link_restores_format() {
    let k = koszul_complex();
    let once = link(&k, [0, 1, 2], 1).unwrap();
    assert_eq!(once.complex.ranks, [1, 4, 3, 0]);
    // link back by the Koszul part of d'1
    let twice = link(&once.complex, [1, 2, 3], 1).unwrap();
    assert_eq!(twice.complex.ranks, [1, 3, 3, 1]);
    assert!(check_complex(&twice.complex, 1).passed());
}

#[test]
fn links_of_codimension_three_complexes() {
    for (r, s) in [
        ([1, 5, 5, 1], "z1 u y1 x1 u z1 y2 y1 u x1"),
        ([1, 5, 6, 2], "z1 z2 u z1 y1 u x1"),
        ([1, 5, 6, 2], "z1 u y1 x1 u z1 y2 y1 u x1"),
    ] {
        let c = build_resolution(fmt(r), &s.parse().unwrap()).unwrap();
        let nonzero: Vec<usize> = (0..c.ranks[1])
            .filter(|&a| !c.d1().get(0, a).is_zero())
            .collect();
        let cols = [nonzero[0], nonzero[1], nonzero[2]];
        let l = link(&c, cols, 4).unwrap_or_else(|e| panic!("{r:?} {s}: {e}"));
        assert_eq!(l.complex.ranks, link_format(c.ranks).unwrap());
        let rep = check_complex(&l.complex, 4);
        assert!(rep.passed(), "{r:?} {s}: {rep:?}");
    }
}

#[test]
fn zero_entries_are_not_a_regular_sequence() {
    let split = build_resolution(fmt([1, 5, 6, 2]), &WeylWord::identity()).unwrap();
    assert!(matches!(
        link(&split, [0, 1, 2], 0),
        Err(Error::RegularSequenceSuspect(_))
    ));
    let k = koszul_complex();
    assert!(link(&k, [0, 0, 1], 0).is_err());
    assert!(matches!(link_format([1, 2, 2, 1]), Err(Error::Format(_))));
}

#[test]
fn rank_invariants_of_surjective_maps() {
    // Koszul: w31 and w21 have unit entries, so both constant parts are onto F2 and F2^*
    let k = koszul_complex();
    let inv = rank_invariants(&k, &structure_maps(&k).unwrap());
    assert_eq!((inv.rank_w3, inv.rank_w2), (3, 3));
    assert_eq!((inv.type_deficit, inv.deviation_deficit), (-2, -3));
    // split complexes: d3 and d2 are already split
    let split = build_resolution(fmt([1, 4, 4, 1]), &WeylWord::identity()).unwrap();
    let inv = rank_invariants(&split, &structure_maps(&split).unwrap());
    assert_eq!((inv.rank_w3, inv.rank_w2), (4, 4));
}
