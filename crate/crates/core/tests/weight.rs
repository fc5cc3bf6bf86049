//! Weight and root lattice invariants.

use proptest::prelude::*;
use schubres::diagram::{Diagram, Vertex};
use schubres::error::Error;
use schubres::weight::{alpha_to_omega, omega_to_alpha, pairing, reflect, RootVector, Weight};

fn diagrams() -> Vec<Diagram> {
    vec![
        Diagram::new(2, 2, 2),
        Diagram::new(2, 3, 2),
        Diagram::new(2, 3, 3),
        Diagram::new(3, 3, 2),
    ]
}

fn weight_in(d: &Diagram) -> impl Strategy<Value = Weight> {
    let d = d.clone();
    prop::collection::vec(-4i64..=4, d.rank()).prop_map(move |c| Weight::from_dense(&d, &c))
}

fn case() -> impl Strategy<Value = (Diagram, Weight, Weight, usize)> {
    (0..diagrams().len()).prop_flat_map(|k| {
        let d = diagrams()[k].clone();
        let n = d.rank();
        (Just(d.clone()), weight_in(&d), weight_in(&d), 0..n)
    })
}

proptest! {
    #[test]
    fn reflections_are_involutions((d, w, _, k) in case()) {
        let v = d.vertices()[k];
        prop_assert_eq!(reflect(&d, &reflect(&d, &w, v), v), w);
    }

    #[test]
    fn reflections_preserve_the_form((d, a, b, k) in case()) {
        let v = d.vertices()[k];
        let before = pairing(&d, &a, &b).unwrap();
        let after = pairing(&d, &reflect(&d, &a, v), &reflect(&d, &b, v)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn root_lattice_round_trip((d, _, _, _) in case(), coeffs in prop::collection::vec(-3i64..=3, 6)) {
        let beta = RootVector::from_dense(&d, &coeffs[..d.rank()]);
        let w = alpha_to_omega(&d, &beta);
        prop_assert_eq!(omega_to_alpha(&d, &w).unwrap(), beta);
    }
}

#[test]
fn fundamental_weight_outside_root_lattice() {
    // D5 has fundamental group of order 4; the spinor weight is not a root
    let d5 = Diagram::new(2, 3, 2);
    assert!(matches!(
        omega_to_alpha(&d5, &Weight::unit(Vertex::x(1))),
        Err(Error::NotInRootLattice(_))
    ));
    // the affine E7 diagram has a singular Cartan matrix
    let aff = Diagram::new(2, 4, 4);
    assert!(matches!(
        omega_to_alpha(&aff, &Weight::unit(Vertex::x(1))),
        Err(Error::AffineType)
    ));
}

#[test]
fn simple_root_pairing_is_cartan_entry() {
    let d = Diagram::new(2, 3, 3);
    for &a in d.vertices() {
        for &b in d.vertices() {
            let wa = alpha_to_omega(&d, &RootVector::unit(a));
            let wb = alpha_to_omega(&d, &RootVector::unit(b));
            let p = pairing(&d, &wa, &wb).unwrap();
            assert_eq!(
                p,
                num_rational::BigRational::from_integer(d.cartan_entry(a, b).unwrap().into())
            );
        }
    }
}
