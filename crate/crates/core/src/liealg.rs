//! Finite-dimensional irreducible highest-weight modules of the simply laced
//! Lie algebra of a finite-type diagram, with exact Chevalley generators.
//!
//! A module is grown from its highest-weight vector by applying `f_j`. A new
//! vector of weight `μ < λ` is zero in `L(λ)` iff every `e_i` kills it, so
//! dependence among candidates is decided by comparing their images under
//! all `e_i`, computed from `e_i f_j = f_j e_i + δ_ij h_i`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, DiagramType, Vertex};
use crate::error::{Error, Result};
use crate::linalg::{self, q, QMat};
use crate::poly::MultiPoly;
use crate::weight::{RootVector, Weight};
use crate::weyl::WeylWord;

/// Sparse rational matrix stored by columns: `cols[j]` is the image of the
/// `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> SparseMat {
        SparseMat {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> SparseMat {
        SparseMat {
            rows: n,
            cols: (0..n).map(|j| vec![(j, BigRational::one())]).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &QMat) -> SparseMat {
        let rows = m.len();
        let ncols = m.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..rows)
                    .filter(|&i| !m[i][j].is_zero())
                    .map(|i| (i, m[i][j].clone()))
                    .collect()
            })
            .collect();
        SparseMat { rows, cols }
    }

    pub fn to_dense(&self) -> QMat {
        let mut m = linalg::zeros(self.rows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m[*i][j] = c.clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, c) in &self.cols[j] {
                out[*i] += c * vj;
            }
        }
        out
    }

    pub fn apply_poly(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, c) in &self.cols[j] {
                out[*i] += &vj.scalar_mul(c);
            }
        }
        out
    }

    /// `self · o`.
    pub fn mul(&self, o: &SparseMat) -> SparseMat {
        let cols = o
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, c) in col {
                    for (i, a) in &self.cols[*k] {
                        *acc.entry(*i).or_insert_with(BigRational::zero) += a * c;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols,
        }
    }

    pub fn add(&self, o: &SparseMat) -> SparseMat {
        self.combine(o, &BigRational::one())
    }

    pub fn sub(&self, o: &SparseMat) -> SparseMat {
        self.combine(o, &-BigRational::one())
    }

    fn combine(&self, o: &SparseMat, s: &BigRational) -> SparseMat {
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, BigRational> = a.iter().cloned().collect();
                for (i, c) in b {
                    *acc.entry(*i).or_insert_with(BigRational::zero) += c * s;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols,
        }
    }

    pub fn scale(&self, s: &BigRational) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(i, v)| (*i, v * s))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `Σ_k N^k / k!` for nilpotent `N`.
    pub fn exp_nilpotent(&self) -> SparseMat {
        let n = self.rows;
        let mut out = SparseMat::identity(n);
        let mut term = SparseMat::identity(n);
        let mut k = 1i64;
        loop {
            term = self.mul(&term).scale(&BigRational::new(1.into(), k.into()));
            if term.is_zero() {
                return out;
            }
            out = out.add(&term);
            k += 1;
            assert!(k as usize <= n + 1, "exponential of a non-nilpotent matrix");
        }
    }
}

/// Apply `exp(N)` to a vector, `N` nilpotent.
pub fn exp_apply(n: &SparseMat, v: &[BigRational]) -> Vec<BigRational> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut k = 1i64;
    loop {
        let inv = BigRational::new(1.into(), k.into());
        term = n.apply(&term).into_iter().map(|c| c * &inv).collect();
        if term.iter().all(Zero::is_zero) {
            return out;
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    /// Fundamental-weight coordinates, in diagram vertex order.
    pub weight: Vec<i64>,
    /// Simple-root coordinates of `λ - weight`.
    pub depth: Vec<i64>,
    /// `(parent, j)` when this vector was found as `f_j` of `parent`.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub diagram: Diagram,
    pub highest_weight: Weight,
    pub basis: Vec<BasisVector>,
    /// `e[i]`, `f[i]` for the vertex at position `i`.
    pub e: Vec<SparseMat>,
    pub f: Vec<SparseMat>,
}

/// One row of an incremental elimination: a reduced vector and its
/// expression in terms of the selected basis vectors of the weight space.
struct Reduced {
    pivot: usize,
    vec: BTreeMap<usize, BigRational>,
    combo: BTreeMap<usize, BigRational>,
}

fn axpy(acc: &mut BTreeMap<usize, BigRational>, a: &BigRational, x: &BTreeMap<usize, BigRational>) {
    for (k, v) in x {
        let e = acc.entry(*k).or_insert_with(BigRational::zero);
        *e += a * v;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn build_irrep(d: &Diagram, lambda: &Weight) -> Result<Representation> {
    if d.classify() != DiagramType::Finite {
        return Err(Error::NotFiniteType);
    }
    let lam = lambda.to_dense(d);
    if lam.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let n = d.rank();
    let a = d.cartan_matrix();
    let mut basis = vec![BasisVector {
        weight: lam.clone(),
        depth: vec![0; n],
        parent: None,
    }];
    // e_cols[i][b], f_cols[j][b]: images of basis vector b as sparse columns.
    let mut e_cols: Vec<Vec<Vec<(usize, BigRational)>>> = vec![vec![Vec::new()]; n];
    let mut f_cols: Vec<Vec<Vec<(usize, BigRational)>>> = vec![Vec::new(); n];
    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        // candidates f_j b grouped by weight, in discovery order
        #[allow(clippy::type_complexity)]
        let mut groups: Vec<(Vec<i64>, Vec<(usize, usize)>)> = Vec::new();
        let mut group_of: HashMap<Vec<i64>, usize> = HashMap::new();
        for &b in &level {
            for j in 0..n {
                let mut depth = basis[b].depth.clone();
                depth[j] += 1;
                let g = *group_of.entry(depth.clone()).or_insert_with(|| {
                    groups.push((depth, Vec::new()));
                    groups.len() - 1
                });
                groups[g].1.push((b, j));
            }
        }
        for f in f_cols.iter_mut() {
            f.resize(basis.len(), Vec::new());
        }
        let mut next_level = Vec::new();
        let dim = basis.len();
        for (depth, cands) in groups {
            let mut rows: Vec<Reduced> = Vec::new();
            let mut selected: Vec<usize> = Vec::new();
            for (b, j) in cands {
                // e-image of f_j b, keyed by i * dim + index
                let mut img: BTreeMap<usize, BigRational> = BTreeMap::new();
                for i in 0..n {
                    for (c, coef) in &e_cols[i][b] {
                        for (t, fc) in &f_cols[j][*c] {
                            let e = img.entry(i * dim + t).or_insert_with(BigRational::zero);
                            *e += coef * fc;
                        }
                    }
                    if i == j && basis[b].weight[i] != 0 {
                        let e = img.entry(i * dim + b).or_insert_with(BigRational::zero);
                        *e += q(basis[b].weight[i]);
                    }
                }
                img.retain(|_, v| !v.is_zero());
                let mut residual = img.clone();
                let mut combo: BTreeMap<usize, BigRational> = BTreeMap::new();
                for r in &rows {
                    if let Some(c) = residual.get(&r.pivot).cloned() {
                        axpy(&mut residual, &-c.clone(), &r.vec);
                        axpy(&mut combo, &c, &r.combo);
                    }
                }
                if residual.is_empty() {
                    f_cols[j][b] = combo.into_iter().map(|(k, v)| (selected[k], v)).collect();
                    continue;
                }
                let new = basis.len();
                let k = selected.len();
                selected.push(new);
                let mut weight = basis[b].weight.clone();
                for (w, aj) in weight.iter_mut().zip(&a[j]) {
                    *w -= aj;
                }
                basis.push(BasisVector {
                    weight,
                    depth: depth.clone(),
                    parent: Some((b, j)),
                });
                for (i, ei) in e_cols.iter_mut().enumerate() {
                    ei.push(
                        img.range(i * dim..(i + 1) * dim)
                            .map(|(key, v)| (key - i * dim, v.clone()))
                            .collect(),
                    );
                }
                f_cols[j][b] = vec![(new, BigRational::one())];
                next_level.push(new);
                // normalise the residual row and record its expression
                let mut row_combo: BTreeMap<usize, BigRational> = BTreeMap::new();
                row_combo.insert(k, BigRational::one());
                axpy(&mut row_combo, &-BigRational::one(), &combo);
                let (&pivot, pv) = residual.iter().next().expect("nonzero residual");
                let inv = pv.recip();
                for v in residual.values_mut() {
                    *v *= &inv;
                }
                for v in row_combo.values_mut() {
                    *v *= &inv;
                }
                // keep earlier rows reduced against the new pivot
                for r in rows.iter_mut() {
                    if let Some(c) = r.vec.get(&pivot).cloned() {
                        axpy(&mut r.vec, &-c.clone(), &residual);
                        axpy(&mut r.combo, &-c, &row_combo);
                    }
                }
                rows.push(Reduced {
                    pivot,
                    vec: residual,
                    combo: row_combo,
                });
            }
        }
        level = next_level;
    }
    let dim = basis.len();
    for f in f_cols.iter_mut() {
        f.resize(dim, Vec::new());
    }
    let e = e_cols
        .into_iter()
        .map(|cols| SparseMat { rows: dim, cols })
        .collect();
    let f = f_cols
        .into_iter()
        .map(|cols| SparseMat { rows: dim, cols })
        .collect();
    Ok(Representation {
        diagram: d.clone(),
        highest_weight: lambda.clone(),
        basis,
        e,
        f,
    })
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn e(&self, v: Vertex) -> Result<&SparseMat> {
        Ok(&self.e[self.diagram.idx(v)?])
    }

    pub fn f(&self, v: Vertex) -> Result<&SparseMat> {
        Ok(&self.f[self.diagram.idx(v)?])
    }

    pub fn weight_of(&self, b: usize) -> Weight {
        Weight::from_dense(&self.diagram, &self.basis[b].weight)
    }

    /// Diagonal action of `h_i = [e_i, f_i]`.
    pub fn h_diag(&self, i: usize) -> SparseMat {
        let cols = self
            .basis
            .iter()
            .enumerate()
            .map(|(b, v)| {
                if v.weight[i] == 0 {
                    Vec::new()
                } else {
                    vec![(b, q(v.weight[i]))]
                }
            })
            .collect();
        SparseMat {
            rows: self.dim(),
            cols,
        }
    }

    /// Basis vectors of a given weight.
    pub fn weight_space(&self, w: &[i64]) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.basis[b].weight == w)
            .collect()
    }

    /// Failures of `[e_i, f_j] = δ_ij h_i` and of the Serre relations
    /// `(ad e_i)^{1-a_ij} e_j = 0`, `(ad f_i)^{1-a_ij} f_j = 0`.
    pub fn chevalley_failures(&self) -> Vec<String> {
        let n = self.diagram.rank();
        let a = self.diagram.cartan_matrix();
        let mut bad = Vec::new();
        let name = |i: usize| self.diagram.vertices()[i];
        for i in 0..n {
            for j in 0..n {
                let br = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let want = if i == j {
                    self.h_diag(i)
                } else {
                    SparseMat::zero(self.dim(), self.dim())
                };
                if br != want {
                    bad.push(format!("[e_{}, f_{}]", name(i), name(j)));
                }
                if i != j {
                    let k = (1 - a[i][j]) as usize;
                    for (ops, tag) in [(&self.e, "e"), (&self.f, "f")] {
                        let mut x = ops[j].clone();
                        for _ in 0..k {
                            x = ops[i].mul(&x).sub(&x.mul(&ops[i]));
                        }
                        if !x.is_zero() {
                            bad.push(format!("Serre {tag}_{} {tag}_{}", name(i), name(j)));
                        }
                    }
                }
            }
        }
        bad
    }

    /// Apply `ŝ_t = exp(f_t) exp(-e_t) exp(f_t)` or its inverse
    /// `exp(-f_t) exp(e_t) exp(-f_t)`.
    pub fn apply_reflection(&self, t: usize, inverse: bool, v: &[BigRational]) -> Vec<BigRational> {
        let (e, f) = (&self.e[t], &self.f[t]);
        let m1 = BigRational::from_integer((-1).into());
        let (fs, es) = if inverse {
            (f.scale(&m1), e.clone())
        } else {
            (f.clone(), e.scale(&m1))
        };
        let v = exp_apply(&fs, v);
        let v = exp_apply(&es, &v);
        exp_apply(&fs, &v)
    }

    /// Apply the lift of a word, rightmost letter first.
    pub fn apply_word(
        &self,
        w: &WeylWord,
        inverse: bool,
        v: &[BigRational],
    ) -> Result<Vec<BigRational>> {
        let pos: Vec<usize> = w
            .letters()
            .iter()
            .map(|&x| self.diagram.idx(x))
            .collect::<Result<_>>()?;
        let mut v = v.to_vec();
        if inverse {
            for &t in &pos {
                v = self.apply_reflection(t, true, &v);
            }
        } else {
            for &t in pos.iter().rev() {
                v = self.apply_reflection(t, false, &v);
            }
        }
        Ok(v)
    }

    fn unit(&self, b: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[b] = BigRational::one();
        v
    }

    fn matrix_of(&self, op: impl Fn(&[BigRational]) -> Vec<BigRational>) -> SparseMat {
        let cols = (0..self.dim())
            .map(|b| {
                op(&self.unit(b))
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        SparseMat {
            rows: self.dim(),
            cols,
        }
    }
}

pub fn reflection_lift(rep: &Representation, t: Vertex) -> Result<SparseMat> {
    let k = rep.diagram.idx(t)?;
    Ok(rep.matrix_of(|v| rep.apply_reflection(k, false, v)))
}

pub fn reflection_lift_inverse(rep: &Representation, t: Vertex) -> Result<SparseMat> {
    let k = rep.diagram.idx(t)?;
    Ok(rep.matrix_of(|v| rep.apply_reflection(k, true, v)))
}

pub fn word_lift(rep: &Representation, w: &WeylWord) -> Result<SparseMat> {
    let mut m = SparseMat::identity(rep.dim());
    for &t in w.letters() {
        m = m.mul(&reflection_lift(rep, t)?);
    }
    Ok(m)
}

/// `E_β = P e_i P^{-1}` with `P` the lift of `prefix`, a root vector for
/// `β = prefix · α_i`.
pub fn root_operator_from(rep: &Representation, prefix: &WeylWord, i: Vertex) -> Result<SparseMat> {
    let k = rep.diagram.idx(i)?;
    let cols: Vec<Vec<(usize, BigRational)>> = (0..rep.dim())
        .map(|b| -> Result<_> {
            let v = rep.apply_word(prefix, true, &rep.unit(b))?;
            let v = rep.e[k].apply(&v);
            let v = rep.apply_word(prefix, false, &v)?;
            Ok(v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(SparseMat {
        rows: rep.dim(),
        cols,
    })
}

/// A word `w` and simple `α_i` with `β = w α_i`, found by descending in height.
pub fn root_decomposition(d: &Diagram, beta: &RootVector) -> Result<(WeylWord, Vertex)> {
    let mut b = beta.to_dense(d);
    let bad = || Error::NotPositiveRoot(beta.to_string());
    if b.iter().any(|&c| c < 0) || b.iter().all(|&c| c == 0) {
        return Err(bad());
    }
    let a = d.cartan_matrix();
    let mut letters = Vec::new();
    loop {
        let height: i64 = b.iter().sum();
        if height == 1 {
            let i = b.iter().position(|&c| c == 1).expect("height one");
            return Ok((WeylWord::new(letters), d.vertices()[i]));
        }
        let pair = |i: usize| -> i64 { (0..d.rank()).map(|j| a[i][j] * b[j]).sum() };
        let Some(i) = (0..d.rank()).find(|&i| pair(i) > 0) else {
            return Err(bad());
        };
        let p = pair(i);
        b[i] -= p;
        if b.iter().any(|&c| c < 0) {
            return Err(bad());
        }
        letters.push(d.vertices()[i]);
    }
}

/// Root vector `E_β` for a positive root, via [`root_decomposition`].
pub fn root_operator(rep: &Representation, beta: &RootVector) -> Result<SparseMat> {
    let (w, i) = root_decomposition(&rep.diagram, beta)?;
    root_operator_from(rep, &w, i)
}

/// Basis indices grouped by degree in the `t`-grading; the top is degree 0
/// and degree `-k` holds weights `λ - kα_t - ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedComponentMap {
    pub vertex: Vertex,
    pub components: BTreeMap<i64, Vec<usize>>,
}

impl GradedComponentMap {
    pub fn top(&self) -> &[usize] {
        self.components.get(&0).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }
}

pub fn t_grading(rep: &Representation, t: Vertex) -> Result<GradedComponentMap> {
    let k = rep.diagram.idx(t)?;
    let mut components: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (b, v) in rep.basis.iter().enumerate() {
        components.entry(-v.depth[k]).or_default().push(b);
    }
    Ok(GradedComponentMap {
        vertex: t,
        components,
    })
}

/// Positive roots in simple-root coordinates, ordered by height then
/// discovery.
pub fn positive_roots(d: &Diagram) -> Result<Vec<Vec<i64>>> {
    if d.classify() != DiagramType::Finite {
        return Err(Error::NotFiniteType);
    }
    let n = d.rank();
    let a = d.cartan_matrix();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let b = roots[k].clone();
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
            if pair < 0 {
                let mut c = b.clone();
                c[i] -= pair;
                if seen.insert(c.clone()) {
                    roots.push(c);
                }
            }
        }
        k += 1;
    }
    roots.sort_by_key(|r| r.iter().sum::<i64>());
    Ok(roots)
}

/// `dim L(λ) = Π_{β>0} ⟨λ+ρ, β⟩ / ⟨ρ, β⟩`.
pub fn weyl_dimension(d: &Diagram, lambda: &Weight) -> Result<num_bigint::BigInt> {
    let lam = lambda.to_dense(d);
    let mut num = BigRational::one();
    for b in positive_roots(d)? {
        let top: i64 = b.iter().zip(&lam).map(|(c, l)| c * (l + 1)).sum();
        let bot: i64 = b.iter().sum();
        num *= BigRational::new(top.into(), bot.into());
    }
    Ok(num.to_integer())
}

/// `(degree, dim 𝔤_degree)` for the grading by the `α_t`-coefficient.
pub fn graded_dims(d: &Diagram, t: Vertex) -> Result<Vec<(i64, usize)>> {
    let k = d.idx(t)?;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for r in positive_roots(d)? {
        *dims.entry(r[k]).or_default() += 1;
        *dims.entry(-r[k]).or_default() += 1;
    }
    *dims.entry(0).or_default() += d.rank();
    Ok(dims.into_iter().collect())
}

pub fn z1_graded_dims(d: &Diagram) -> Result<Vec<(i64, usize)>> {
    graded_dims(d, Vertex::z(1))
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    diagram: Diagram,
    highest_weight: Weight,
    basis: Vec<BasisVector>,
    e: Vec<Vec<(usize, usize, String)>>,
    f: Vec<Vec<(usize, usize, String)>>,
}

fn triplets(m: &SparseMat) -> Vec<(usize, usize, String)> {
    m.cols
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.to_string())))
        .collect()
}

fn from_triplets(dim: usize, t: &[(usize, usize, String)]) -> Result<SparseMat> {
    let mut m = SparseMat::zero(dim, dim);
    for (i, j, v) in t {
        let v: BigRational = v
            .parse()
            .map_err(|_| Error::Parse(format!("rational `{v}`")))?;
        if *i >= dim || *j >= dim {
            return Err(Error::Parse("matrix index out of range".into()));
        }
        m.cols[*j].push((*i, v));
    }
    Ok(m)
}

impl Representation {
    pub fn to_json(&self) -> Result<String> {
        let j = RepJson {
            diagram: self.diagram.clone(),
            highest_weight: self.highest_weight.clone(),
            basis: self.basis.clone(),
            e: self.e.iter().map(triplets).collect(),
            f: self.f.iter().map(triplets).collect(),
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(s: &str) -> Result<Representation> {
        let j: RepJson = serde_json::from_str(s)?;
        let dim = j.basis.len();
        Ok(Representation {
            diagram: j.diagram,
            highest_weight: j.highest_weight,
            basis: j.basis,
            e: j.e
                .iter()
                .map(|t| from_triplets(dim, t))
                .collect::<Result<_>>()?,
            f: j.f
                .iter()
                .map(|t| from_triplets(dim, t))
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_fundamental() {
        let a1 = Diagram::new(1, 1, 1);
        let rep = build_irrep(&a1, &Weight::unit(Vertex::U)).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(
            rep.f[0].to_dense(),
            vec![vec![q(0), q(0)], vec![q(1), q(0)]]
        );
        let s = reflection_lift(&rep, Vertex::U).unwrap().to_dense();
        assert_eq!(s, vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        let si = reflection_lift_inverse(&rep, Vertex::U).unwrap();
        assert_eq!(
            reflection_lift(&rep, Vertex::U).unwrap().mul(&si),
            SparseMat::identity(2)
        );
    }

    #[test]
    fn small_dimensions() {
        let d4 = Diagram::new(2, 2, 2);
        let rep = build_irrep(&d4, &Weight::unit(Vertex::x(1))).unwrap();
        assert_eq!(rep.dim(), 8);
        assert!(rep.chevalley_failures().is_empty());
        let e6 = Diagram::new(2, 3, 3);
        assert_eq!(
            build_irrep(&e6, &Weight::unit(Vertex::y(2))).unwrap().dim(),
            27
        );
    }

    #[test]
    fn rejects_bad_input() {
        let d4 = Diagram::new(2, 2, 2);
        let w = Weight::from_pairs([(Vertex::U, -1)]);
        assert!(matches!(build_irrep(&d4, &w), Err(Error::NotDominant(_))));
        let aff = Diagram::new(3, 3, 3);
        assert!(matches!(
            build_irrep(&aff, &Weight::unit(Vertex::U)),
            Err(Error::NotFiniteType)
        ));
    }

    #[test]
    fn trivial_rep_grading() {
        let d4 = Diagram::new(2, 2, 2);
        let rep = build_irrep(&d4, &Weight::zero()).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(t_grading(&rep, Vertex::z(1)).unwrap().degrees(), vec![0]);
    }

    #[test]
    fn e6_graded_dims() {
        let e6 = Diagram::new(2, 3, 3);
        let dims: Vec<usize> = z1_graded_dims(&e6)
            .unwrap()
            .into_iter()
            .map(|(_, k)| k)
            .collect();
        assert_eq!(dims, vec![5, 20, 28, 20, 5]);
    }
}
