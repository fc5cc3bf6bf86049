//! Polynomial arithmetic, determinants, pfaffians and graded solving.

use num_rational::BigRational;
use proptest::prelude::*;
use schubres::poly::{
    determinant_bareiss, determinant_expansion, graded_solve_full, minors, pfaffian,
    submaximal_pfaffians, Monomial, MultiPoly, PolyMatrix, PolyMatrixJson, PolyRing, Variable,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..=4), 0..4).prop_map(
        |terms| {
            let mut p = MultiPoly::zero();
            for (e, c) in terms {
                p.add_term(Monomial::from_exponents(&e), q(c));
            }
            p
        },
    )
}

fn square(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(3), n * n).prop_map(move |es| {
        PolyMatrix::from_rows(es.chunks(n).map(<[MultiPoly]>::to_vec).collect())
    })
}

fn skew(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(3), n * (n - 1) / 2).prop_map(move |es| {
        let mut m = PolyMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, es[k].clone());
                m.set(j, i, -&es[k]);
                k += 1;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3), b in poly(3), pt in prop::collection::vec(-5i64..=5, 3)) {
        let pt: Vec<BigRational> = pt.into_iter().map(q).collect();
        prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
    }

    #[test]
    fn exact_division(a in poly(3), b in poly(3)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn bareiss_agrees_with_expansion(m in square(4)) {
        prop_assert_eq!(determinant_bareiss(&m), determinant_expansion(&m));
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
    }

    #[test]
    fn pfaffian_squares_to_determinant(m in skew(4)) {
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant());
    }

    #[test]
    fn json_round_trip(m in square(3)) {
        let ring = PolyRing::new(vec!["t".into()], (0..3).map(|k| Variable { name: format!("v{k}"), degree: vec![-1] }).collect());
        let j: PolyMatrixJson = serde_json::from_str(&serde_json::to_string(&m.to_json(&ring)).unwrap()).unwrap();
        prop_assert_eq!(PolyMatrix::from_json(&j).unwrap(), m);
    }
}

#[test]
fn six_by_six_pfaffian_squares_to_determinant() {
    // generic 6×6 skew matrix in 15 variables
    let mut m = PolyMatrix::zeros(6, 6);
    let mut k = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            m.set(i, j, MultiPoly::var(k));
            m.set(j, i, -&MultiPoly::var(k));
            k += 1;
        }
    }
    let pf = pfaffian(&m).unwrap();
    assert_eq!(pf.num_terms(), 15);
    assert_eq!(&pf * &pf, determinant_bareiss(&m));
}

#[test]
fn block_determinant_and_minors() {
    let x = MultiPoly::var(0);
    let y = MultiPoly::var(1);
    let a = PolyMatrix::from_rows(vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]]);
    let z = MultiPoly::zero;
    let block = PolyMatrix::from_rows(vec![
        vec![x.clone(), y.clone(), z()],
        vec![y.clone(), x.clone(), z()],
        vec![z(), z(), y.clone()],
    ]);
    assert_eq!(block.determinant(), &a.determinant() * &y);
    let ms = minors(&block, 2);
    assert_eq!(ms.len(), 9);
    assert!(ms
        .iter()
        .any(|(r, c, p)| r == &vec![0, 1] && c == &vec![0, 1] && *p == a.determinant()));
}

#[test]
fn submaximal_pfaffians_of_generic_5x5() {
    let mut m = PolyMatrix::zeros(5, 5);
    let mut k = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            m.set(i, j, MultiPoly::var(k));
            m.set(j, i, -&MultiPoly::var(k));
            k += 1;
        }
    }
    let pfs = submaximal_pfaffians(&m).unwrap();
    assert_eq!(pfs.len(), 5);
    // the pfaffian vector is annihilated by the skew matrix
    for i in 0..5 {
        let mut acc = MultiPoly::zero();
        for (j, p) in pfs.iter().enumerate() {
            acc += &(m.get(i, j) * p);
        }
        assert!(acc.is_zero(), "row {i}");
    }
    assert!(pfaffian(&PolyMatrix::identity(2)).is_err());
}

#[test]
fn graded_solve_recovers_a_preimage() {
    // Z-graded ring in x, y, z of degree -1
    let ring = PolyRing::new(
        vec!["t".into()],
        ["x", "y", "z"]
            .iter()
            .map(|n| Variable {
                name: n.to_string(),
                degree: vec![-1],
            })
            .collect(),
    );
    let (x, y, z) = (MultiPoly::var(0), MultiPoly::var(1), MultiPoly::var(2));
    let a = PolyMatrix::from_rows(vec![vec![x.clone(), y.clone(), z.clone()]])
        .with_degrees(vec![vec![0]], vec![vec![-1]; 3]);
    let b = vec![&(&x * &x) + &(&y * &z)];
    let (sol, nullity) = graded_solve_full(&ring, &a, &b).unwrap();
    let mut acc = MultiPoly::zero();
    for (j, s) in sol.iter().enumerate() {
        acc += &(a.get(0, j) * s);
    }
    assert_eq!(acc, b[0]);
    // degree 1 syzygies of (x, y, z): the three Koszul relations
    assert_eq!(nullity, 3);
    // a constant is not in the ideal
    assert!(graded_solve_full(&ring, &a, &[MultiPoly::one()]).is_err());
}

#[test]
fn monomial_basis_needs_a_pointed_cone() {
    let ring = PolyRing::new(
        vec!["a".into()],
        vec![
            Variable {
                name: "p".into(),
                degree: vec![1],
            },
            Variable {
                name: "n".into(),
                degree: vec![-1],
            },
        ],
    );
    assert!(ring.monomials_of_degree(&[0]).is_err());
}
