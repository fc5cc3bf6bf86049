//! First-order structure maps and linkage by a regular sequence of three
//! entries of `d1`.
//!
//! For `f0 = 1`, `w31(e_a ∧ e_b)` lifts `d1[a] e_b - d1[b] e_a` through `d2`
//! and `w21(e_a ⊗ f)` lifts `d1[a] f - w31(e_a ∧ d2 f)` through `d3`. These
//! give the comparison map from the Koszul complex on the chosen entries,
//! and the linked complex is the dual of its mapping cone with the split
//! part cancelled.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Format;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{graded_solve_full, MultiPoly, PolyMatrix, PolyRing, Variable};
use crate::resolution::{random_point, GradedComplex};

/// `w31` has one column per pair `a < b` of `F1` basis vectors (in
/// lexicographic order); `w21` one column per `(a, j)`, index `a·f2 + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureMaps {
    pub w31: PolyMatrix,
    pub w21: PolyMatrix,
    pub pairs: Vec<(usize, usize)>,
    /// Sum of the nullities of all solves; zero means the lifts are unique.
    pub nullity: usize,
}

impl StructureMaps {
    fn pair_index(&self, a: usize, b: usize) -> Option<(usize, bool)> {
        let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
        self.pairs
            .iter()
            .position(|&p| p == (lo, hi))
            .map(|k| (k, flip))
    }

    /// `w31(e_a ∧ e_b)` as a column vector in `F2`.
    pub fn w31_on(&self, a: usize, b: usize) -> Vec<MultiPoly> {
        match self.pair_index(a, b) {
            None => vec![MultiPoly::zero(); self.w31.rows],
            Some((k, flip)) => {
                let col = self.w31.column(k);
                if flip {
                    col.iter().map(|p| -p).collect()
                } else {
                    col
                }
            }
        }
    }

    /// `w31(e_a ∧ v)` for `v ∈ F1`.
    pub fn w31_wedge(&self, a: usize, v: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.w31.rows];
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() || a == b {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.w31_on(a, b)) {
                *o += &(&p * vb);
            }
        }
        out
    }

    /// `w21(e_a ⊗ f)` for `f ∈ F2`.
    pub fn w21_on(&self, a: usize, f: &[MultiPoly]) -> Vec<MultiPoly> {
        let f2 = f.len();
        let mut out = vec![MultiPoly::zero(); self.w21.rows];
        for (j, fj) in f.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.w21.column(a * f2 + j)) {
                *o += &(&p * fj);
            }
        }
        out
    }
}

fn mat_vec(m: &PolyMatrix, v: &[MultiPoly]) -> Vec<MultiPoly> {
    (0..m.rows)
        .map(|i| {
            let mut acc = MultiPoly::zero();
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    acc += &(m.get(i, j) * vj);
                }
            }
            acc
        })
        .collect()
}

fn columns_to_matrix(rows: usize, cols: Vec<Vec<MultiPoly>>) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, p) in col.into_iter().enumerate() {
            m.set(i, j, p);
        }
    }
    m
}

fn unit_column(n: usize, i: usize) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(); n];
    v[i] = MultiPoly::one();
    v
}

/// Compute `w31`, `w21` by graded solves and replay the defining equations.
pub fn structure_maps(c: &GradedComplex) -> Result<StructureMaps> {
    let [f0, f1, f2, f3] = c.ranks;
    if f0 != 1 {
        return Err(Error::Format(format!(
            "structure maps need f0 = 1, got {f0}"
        )));
    }
    let (d1, d2, d3) = (c.d1(), c.d2(), c.d3());
    let pairs: Vec<(usize, usize)> = (0..f1).tuple_combinations().collect();
    let w31_cols: Vec<(Vec<MultiPoly>, usize)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut rhs = vec![MultiPoly::zero(); f1];
            rhs[b] = d1.get(0, a).clone();
            rhs[a] = -d1.get(0, b);
            graded_solve_full(&c.ring, d2, &rhs)
        })
        .collect::<Result<_>>()?;
    let mut nullity: usize = w31_cols.iter().map(|x| x.1).sum();
    let w31 = columns_to_matrix(f2, w31_cols.into_iter().map(|x| x.0).collect());
    let mut maps = StructureMaps {
        w31,
        w21: PolyMatrix::zeros(f3, 0),
        pairs,
        nullity: 0,
    };
    let jobs: Vec<(usize, usize)> = (0..f1).cartesian_product(0..f2).collect();
    let w21_cols: Vec<(Vec<MultiPoly>, usize)> = jobs
        .par_iter()
        .map(|&(a, j)| {
            let f = unit_column(f2, j);
            let d2f = d2.column(j);
            let lifted = maps.w31_wedge(a, &d2f);
            let rhs: Vec<MultiPoly> = f
                .iter()
                .zip(&lifted)
                .map(|(x, l)| &(x * d1.get(0, a)) - l)
                .collect();
            graded_solve_full(&c.ring, d3, &rhs)
        })
        .collect::<Result<_>>()?;
    nullity += w21_cols.iter().map(|x| x.1).sum::<usize>();
    maps.w21 = columns_to_matrix(f3, w21_cols.into_iter().map(|x| x.0).collect());
    maps.nullity = nullity;
    replay(c, &maps)?;
    Ok(maps)
}

/// Check both defining equations symbolically.
pub fn replay(c: &GradedComplex, m: &StructureMaps) -> Result<()> {
    let [_, f1, f2, _] = c.ranks;
    let (d1, d2, d3) = (c.d1(), c.d2(), c.d3());
    for &(a, b) in &m.pairs {
        let lhs = mat_vec(d2, &m.w31_on(a, b));
        for (i, p) in lhs.iter().enumerate() {
            let want = if i == b {
                d1.get(0, a).clone()
            } else if i == a {
                -d1.get(0, b)
            } else {
                MultiPoly::zero()
            };
            if *p != want {
                return Err(Error::IdentityFailure(format!("d2·w31(e{a}∧e{b}) row {i}")));
            }
        }
    }
    for a in 0..f1 {
        for j in 0..f2 {
            let lhs = mat_vec(d3, &m.w21_on(a, &unit_column(f2, j)));
            let lifted = m.w31_wedge(a, &d2.column(j));
            for (i, p) in lhs.iter().enumerate() {
                let mut want = -&lifted[i];
                if i == j {
                    want += d1.get(0, a);
                }
                if *p != want {
                    return Err(Error::IdentityFailure(format!("d3·w21(e{a}⊗f{j}) row {i}")));
                }
            }
        }
    }
    Ok(())
}

/// `(1, f1, f2, f3) ↦ (1, f3 + 3, f2, f1 - 3)`.
pub fn link_format(f: [usize; 4]) -> Result<[usize; 4]> {
    let [f0, f1, f2, f3] = f;
    if f0 != 1 || f1 < 3 {
        return Err(Error::Format(format!(
            "cannot link format {f:?}: need f0 = 1 and f1 >= 3"
        )));
    }
    Ok([1, f3 + 3, f2, f1 - 3])
}

/// Evidence that the selected entries form a regular sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularSequenceEvidence {
    pub nonzero: bool,
    pub jacobian_rank: usize,
}

impl RegularSequenceEvidence {
    pub fn plausible(&self) -> bool {
        self.nonzero && self.jacobian_rank == 3
    }
}

pub fn regular_sequence_evidence(
    ring: &PolyRing,
    alphas: &[MultiPoly],
    seed: u64,
) -> RegularSequenceEvidence {
    let nonzero = alphas.iter().all(|a| !a.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pt = random_point(&mut rng, ring.nvars());
    let jac: Vec<Vec<BigRational>> = alphas
        .iter()
        .map(|a| {
            (0..ring.nvars())
                .map(|v| a.derivative(v).evaluate(&pt))
                .collect()
        })
        .collect();
    RegularSequenceEvidence {
        nonzero,
        jacobian_rank: linalg::rank(&jac),
    }
}

#[derive(Clone, Debug)]
pub struct LinkResult {
    pub cols: [usize; 3],
    pub complex: GradedComplex,
    /// Comparison map from the Koszul complex: `ψ1: K → F1`, `ψ2: ∧²K → F2`,
    /// `ψ3: ∧³K → F3`, with `∧²K` ordered `k1∧k2, k1∧k3, k2∧k3`.
    pub psi: [PolyMatrix; 3],
    pub evidence: RegularSequenceEvidence,
    pub maps: StructureMaps,
}

/// The Koszul differentials on `α1, α2, α3`.
fn koszul_maps(alphas: &[MultiPoly]) -> [PolyMatrix; 3] {
    let z = MultiPoly::zero;
    let [x, y, w] = [&alphas[0], &alphas[1], &alphas[2]];
    let d1 = PolyMatrix::from_rows(vec![vec![x.clone(), y.clone(), w.clone()]]);
    let d2 = PolyMatrix::from_rows(vec![
        vec![-y, -w, z()],
        vec![x.clone(), z(), -w],
        vec![z(), x.clone(), y.clone()],
    ]);
    let d3 = PolyMatrix::from_rows(vec![vec![w.clone()], vec![-y], vec![x.clone()]]);
    [d1, d2, d3]
}

/// Koszul complex on three variables of degree `-1` in a single coordinate.
pub fn koszul_complex() -> GradedComplex {
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
    let v: Vec<MultiPoly> = (0..3).map(MultiPoly::var).collect();
    let degrees = vec![
        vec![vec![0]],
        vec![vec![-1]; 3],
        vec![vec![-2]; 3],
        vec![vec![-3]],
    ];
    let mut c = GradedComplex::new(ring, degrees, koszul_maps(&v));
    c.format = Format::from_ranks([1, 3, 3, 1]).ok();
    c
}

fn sub_degrees(kappa: &[i64], d: &[i64]) -> Vec<i64> {
    kappa.iter().zip(d).map(|(a, b)| a - b).collect()
}

/// Link by the entries of `d1` in columns `cols`.
pub fn link(c: &GradedComplex, cols: [usize; 3], seed: u64) -> Result<LinkResult> {
    let [f0, f1, f2, f3] = c.ranks;
    link_format(c.ranks)?;
    if cols.iter().any(|&k| k >= f1) || !cols.iter().all_unique() {
        return Err(Error::Format(format!(
            "bad column selection {cols:?} for f1 = {f1}"
        )));
    }
    debug_assert_eq!(f0, 1);
    let alphas: Vec<MultiPoly> = cols.iter().map(|&k| c.d1().get(0, k).clone()).collect();
    let evidence = regular_sequence_evidence(&c.ring, &alphas, seed);
    if !evidence.plausible() {
        return Err(Error::RegularSequenceSuspect(format!("{evidence:?}")));
    }
    let maps = structure_maps(c)?;

    let mut psi1 = PolyMatrix::zeros(f1, 3);
    for (i, &k) in cols.iter().enumerate() {
        psi1.set(k, i, MultiPoly::one());
    }
    let wedge2 = [(0, 1), (0, 2), (1, 2)];
    let psi2 = columns_to_matrix(
        f2,
        wedge2
            .iter()
            .map(|&(i, j)| maps.w31_on(cols[i], cols[j]))
            .collect(),
    );
    let psi3 = columns_to_matrix(f3, vec![maps.w21_on(cols[0], &psi2.column(2))]);

    let [k1, k2, k3] = koszul_maps(&alphas);
    for (lhs, rhs, what) in [
        (c.d1().mul(&psi1), k1.clone(), "d1ψ1"),
        (c.d2().mul(&psi2), psi1.mul(&k2), "d2ψ2"),
        (c.d3().mul(&psi3), psi2.mul(&k3), "d3ψ3"),
    ] {
        if !lhs.sub(&rhs).is_zero() {
            return Err(Error::IdentityFailure(format!(
                "comparison map: {what} does not commute"
            )));
        }
    }

    // d'1 = [ψ3ᵀ | -∂3ᵀ], d'2 = [d3ᵀ ; ψ2ᵀ], d'3 = d2ᵀ on the complement of K.
    let k3t = k3.transpose().neg();
    let d1n = psi3.transpose().hcat(&k3t);
    let d2n = c.d3().transpose().vcat(&psi2.transpose());
    let rest: Vec<usize> = (0..f1).filter(|k| !cols.contains(k)).collect();
    let all2: Vec<usize> = (0..f2).collect();
    let d3n = c.d2().submatrix(&rest, &all2).transpose();

    let nc = c.ring.coords.len();
    let base = &c.degrees[0][0];
    let rel = |d: &Vec<i64>| sub_degrees(d, base);
    let mut kappa = vec![0; nc];
    for &k in &cols {
        for (a, b) in kappa.iter_mut().zip(rel(&c.degrees[1][k])) {
            *a += b;
        }
    }
    let dual = |d: &Vec<i64>| sub_degrees(&kappa, &rel(d));
    let mut deg1: Vec<Vec<i64>> = c.degrees[3].iter().map(dual).collect();
    for k in [cols[2], cols[1], cols[0]] {
        deg1.push(rel(&c.degrees[1][k]));
    }
    let deg2: Vec<Vec<i64>> = c.degrees[2].iter().map(dual).collect();
    let deg3: Vec<Vec<i64>> = rest.iter().map(|&k| dual(&c.degrees[1][k])).collect();
    let complex = GradedComplex::new(
        c.ring.clone(),
        vec![vec![vec![0; nc]], deg1, deg2, deg3],
        [d1n, d2n, d3n],
    );
    if !complex.d1().mul(complex.d2()).is_zero() || !complex.d2().mul(complex.d3()).is_zero() {
        return Err(Error::IdentityFailure(
            "linked differentials do not compose to zero".into(),
        ));
    }
    Ok(LinkResult {
        cols,
        complex,
        psi: [psi1, psi2, psi3],
        evidence,
        maps,
    })
}

/// `(f3 - rank(w3 ⊗ k), f1 - 3 - rank(w2 ⊗ k))` using only the degree 0 and
/// 1 components: the constant parts of `[d3 | w31]` into `F2` and of
/// `[d2ᵀ | w21]` into `F2^*`. An under-approximation of the full ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankInvariants {
    pub rank_w3: usize,
    pub rank_w2: usize,
    pub type_deficit: i64,
    pub deviation_deficit: i64,
}

pub fn rank_invariants(c: &GradedComplex, maps: &StructureMaps) -> RankInvariants {
    let [_, f1, f2, f3] = c.ranks;
    let zero = vec![BigRational::zero(); c.ring.nvars()];
    let w3 = c.d3().hcat(&maps.w31).evaluate(&zero);
    // w21 regrouped as maps F1 ⊗ F3^* → F2^*: row j, column (a, b).
    let mut w2 = c.d2().transpose();
    if f3 > 0 {
        let mut extra = PolyMatrix::zeros(f2, f1 * f3);
        for a in 0..f1 {
            for j in 0..f2 {
                for b in 0..f3 {
                    extra.set(j, a * f3 + b, maps.w21.get(b, a * f2 + j).clone());
                }
            }
        }
        w2 = w2.hcat(&extra);
    }
    let w2 = w2.evaluate(&zero);
    let rank_w3 = if w3.is_empty() { 0 } else { linalg::rank(&w3) };
    let rank_w2 = if w2.is_empty() { 0 } else { linalg::rank(&w2) };
    RankInvariants {
        rank_w3,
        rank_w2,
        type_deficit: f3 as i64 - rank_w3 as i64,
        deviation_deficit: f1 as i64 - 3 - rank_w2 as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::check_complex;

    #[test]
    fn koszul_self_link() {
        let k = koszul_complex();
        let l = link(&k, [0, 1, 2], 5).unwrap();
        assert_eq!(l.complex.ranks, [1, 4, 3, 0]);
        assert!(l
            .complex
            .d1()
            .row(0)
            .iter()
            .any(|p| p.is_constant() && !p.is_zero()));
        let r = check_complex(&l.complex, 2);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn format_arithmetic() {
        assert_eq!(link_format([1, 6, 7, 2]).unwrap(), [1, 5, 7, 3]);
        assert_eq!(link_format([1, 3, 3, 1]).unwrap(), [1, 4, 3, 0]);
        assert!(link_format([1, 2, 2, 1]).is_err());
    }
}
