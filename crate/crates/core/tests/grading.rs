//! Multigraded Betti tables.

use schubres::diagram::{diagram_from_format, Format, Vertex};
use schubres::grading::{
    betti_multidegrees, betti_tally, coarse_resolution_string, dual_shift, exchange_grading,
    weight_sequences,
};
use schubres::weyl::{enumerate_double_cosets, WeylWord};

fn formats() -> Vec<Format> {
    [
        [1, 4, 4, 1],
        [1, 5, 5, 1],
        [2, 5, 4, 1],
        [1, 4, 5, 2],
        [1, 5, 6, 2],
        [2, 6, 5, 1],
    ]
    .into_iter()
    .map(|r| Format::from_ranks(r).unwrap())
    .collect()
}

#[test]
fn table_ranks_match_format() {
    for f in formats() {
        let d = diagram_from_format(f);
        for s in enumerate_double_cosets(&d, 40).unwrap() {
            let t = betti_multidegrees(f, &s).unwrap();
            assert_eq!(t.ranks(), f.ranks().to_vec(), "{f} {s}");
            assert!(
                t.modules[0].iter().any(|g| g.iter().all(|&c| c == 0)),
                "no F0 generator at the origin: {f} {s}"
            );
        }
    }
}

#[test]
fn exchange_grading_is_an_involution() {
    for f in formats() {
        let d = diagram_from_format(f);
        for s in enumerate_double_cosets(&d, 40).unwrap() {
            let t = betti_multidegrees(f, &s).unwrap();
            let once = exchange_grading(&d, &t, &s).unwrap();
            let twice = exchange_grading(&d, &once, &s.inverse()).unwrap();
            assert_eq!(twice.modules, t.modules, "{f} {s}");
        }
    }
}

#[test]
fn dual_shift_twice_is_identity() {
    let f = Format::from_ranks([1, 5, 6, 2]).unwrap();
    let s: WeylWord = "z1 u y1 x1 u z1 y2 y1 u x1".parse().unwrap();
    let t = betti_multidegrees(f, &s).unwrap();
    let back = dual_shift(&dual_shift(&t));
    assert!(back.same_multisets(&t));
}

#[test]
fn gorenstein_pfaffian_coarse_table() {
    // five quadrics, five linear syzygies, one cubic relation in z1-degree
    let f = Format::from_ranks([1, 5, 5, 1]).unwrap();
    let s: WeylWord = "z1 u y1 x1 u z1 y2 y1 u x1".parse().unwrap();
    let t = betti_multidegrees(f, &s).unwrap();
    assert_eq!(
        coarse_resolution_string(&t, Vertex::z(1)).unwrap(),
        "0 → R(-5) → R^5(-3) → R^5(-2) → R"
    );
    let tally = betti_tally(&t, Vertex::z(1)).unwrap();
    assert!(tally.contains("total:   1   5   5   1"), "{tally}");
}

#[test]
fn split_tables_pair_up() {
    // σ = e: F2 = F3 ⊕ Z and F1 = Z ⊕ F0 as multisets of degrees
    for f in formats() {
        let t = betti_multidegrees(f, &WeylWord::identity()).unwrap();
        let mut z = t.modules[2].clone();
        for g in &t.modules[3] {
            let k = z
                .iter()
                .position(|h| h == g)
                .expect("F3 degree missing from F2");
            z.remove(k);
        }
        let mut f1 = t.modules[1].clone();
        for g in z.iter().chain(&t.modules[0]) {
            let k = f1
                .iter()
                .position(|h| h == g)
                .unwrap_or_else(|| panic!("{f}: {g:?} missing from F1"));
            f1.remove(k);
        }
        assert!(f1.is_empty());
    }
}

#[test]
fn sequences_are_walks_of_simple_reflections() {
    for f in formats() {
        for seq in weight_sequences(f) {
            assert_eq!(seq.entries.len(), seq.letters.len() + 1);
            assert_eq!(seq.entries[0], schubres::weight::Weight::unit(seq.start));
            for (k, &t) in seq.letters.iter().enumerate() {
                // each step subtracts α_t, i.e. the pairing with α_t^∨ was 1
                assert_eq!(seq.entries[k].get(t), 1, "{f} {:?}", seq.name);
                assert_eq!(seq.entries[k + 1].get(t), -1, "{f} {:?}", seq.name);
            }
        }
    }
}
