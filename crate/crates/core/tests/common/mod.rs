//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use schubres::diagram::{Diagram, Vertex};
use schubres::poly::MultiPoly;
use schubres::weight::RootVector;

/// Positive roots of a simply laced finite-type diagram: nonnegative
/// integer vectors of norm 2 under the Cartan form, found in a box.
pub fn oracle_roots(d: &Diagram) -> Vec<Vec<i64>> {
    let a = d.cartan_matrix();
    let mut out = Vec::new();
    let mut v = vec![0i64; d.rank()];
    fn rec(k: usize, v: &mut Vec<i64>, a: &[Vec<i64>], out: &mut Vec<Vec<i64>>) {
        if k == v.len() {
            if v.iter().any(|&c| c > 0) {
                let norm: i64 = (0..v.len())
                    .map(|i| (0..v.len()).map(|j| v[i] * a[i][j] * v[j]).sum::<i64>())
                    .sum();
                if norm == 2 {
                    out.push(v.clone());
                }
            }
            return;
        }
        for c in 0..=6 {
            v[k] = c;
            rec(k + 1, v, a, out);
        }
        v[k] = 0;
    }
    rec(0, &mut v, a, &mut out);
    out
}

/// Weyl dimension formula over the oracle roots (ω-coordinates).
pub fn oracle_dim(d: &Diagram, lam: &[i64]) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for b in oracle_roots(d) {
        num *= b.iter().zip(lam).map(|(c, l)| c * (l + 1)).sum::<i64>() as u128;
        den *= b.iter().sum::<i64>() as u128;
    }
    assert_eq!(num % den, 0);
    num / den
}

/// Dominant weights across A2, A3, D4, D5, E6 (ω-coordinates).
pub fn weight_corpus() -> Vec<(Diagram, Vec<i64>)> {
    let a2 = Diagram::new(1, 2, 1);
    let a3 = Diagram::new(2, 2, 1);
    let d4 = Diagram::new(2, 2, 2);
    let d5 = Diagram::new(2, 3, 2);
    let e6 = Diagram::new(2, 3, 3);
    vec![
        (a2.clone(), vec![1, 0]),
        (a2.clone(), vec![1, 1]),
        (a2, vec![2, 0]),
        (a3.clone(), vec![0, 1, 0]),
        (a3, vec![1, 0, 1]),
        (d4.clone(), vec![1, 0, 0, 0]),
        (d4.clone(), vec![0, 1, 0, 0]),
        (d4, vec![1, 0, 1, 0]),
        (d5.clone(), vec![1, 0, 0, 0, 0]),
        (d5.clone(), vec![0, 0, 0, 1, 0]),
        (d5, vec![0, 0, 0, 0, 1]),
        (e6.clone(), vec![0, 0, 0, 1, 0, 0]),
        (e6, vec![1, 0, 0, 0, 0, 0]),
    ]
}

/// A3 as permutations of four letters, `x1, u, y1 ↦ (12), (23), (34)`.
pub fn a3_perm(word: &[Vertex]) -> [usize; 4] {
    let mut p = [0, 1, 2, 3];
    for v in word {
        let k = match v.to_string().as_str() {
            "x1" => 0,
            "u" => 1,
            "y1" => 2,
            other => panic!("not an A3 letter: {other}"),
        };
        p.swap(k, k + 1);
    }
    p
}

/// Bruhat order by the subword property on a fixed reduced word of `w`.
pub fn subword_leq(u: &[Vertex], w: &[Vertex]) -> bool {
    let target = a3_perm(u);
    (0u32..1 << w.len()).any(|mask| {
        let sub: Vec<Vertex> = (0..w.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| w[k])
            .collect();
        a3_perm(&sub) == target
    })
}

/// D5 = T(2,3,2) in the ε-realization: `y2, y1, u, x1, z1` are
/// `ε1-ε2, ε2-ε3, ε3-ε4, ε4-ε5, ε4+ε5`.
pub fn d5_epsilon(beta: &RootVector) -> [i64; 5] {
    let simple = |v: Vertex| -> [i64; 5] {
        match v.to_string().as_str() {
            "y2" => [1, -1, 0, 0, 0],
            "y1" => [0, 1, -1, 0, 0],
            "u" => [0, 0, 1, -1, 0],
            "x1" => [0, 0, 0, 1, -1],
            "z1" => [0, 0, 0, 1, 1],
            other => panic!("not a D5 vertex: {other}"),
        }
    };
    let mut e = [0; 5];
    for (v, c) in beta.iter() {
        for (a, b) in e.iter_mut().zip(simple(v)) {
            *a += c * b;
        }
    }
    e
}

/// Pfaffian of the 4×4 principal skew submatrix on `idx`.
pub fn pf4(m: &[Vec<MultiPoly>], idx: [usize; 4]) -> MultiPoly {
    let [i, j, k, l] = idx;
    let a = &m[i][j] * &m[k][l];
    let b = &m[i][k] * &m[j][l];
    let c = &m[i][l] * &m[j][k];
    &(&a - &b) + &c
}
