//! The complex attached to a minimal double coset representative `σ`.
//!
//! Over the coordinate ring of the Schubert cell (one variable per inversion
//! root of `σ`) the element `g = exp(Y)·σ̂` acts on the three extremal
//! modules `L(ω_{x_{r1}})`, `L(ω_{y_end})`, `L(ω_{z_{r3}})`. Each differential
//! is `g` restricted to a top `x1`-graded component and projected onto a
//! top `z1`-graded component, dualised for `d1` and `d3`.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{diagram_from_format, Diagram, DiagramType, Format, Vertex};
use crate::error::{Error, Result};
use crate::grading::{
    betti_multidegrees, dual_shift, exchange_grading, weight_sequences, BettiTable, WeightSequence,
};
use crate::liealg::{build_irrep, root_operator_from, Representation, SparseMat};
use crate::linalg::{self, q, QMat};
use crate::poly::{
    graded_solve_full, minors, MultiPoly, PolyMatrix, PolyMatrixJson, PolyRing, Variable,
};
use crate::weight::{reflect_dense, RootVector};
use crate::weyl::{is_min_double_coset_rep, WeylWord};

/// The tautological element of `𝔫_σ`: one variable per inversion root.
#[derive(Clone, Debug)]
pub struct GenericY {
    /// `β_k = s_{i1}⋯s_{i(k-1)} α_{ik}` in the order of the stored word.
    pub roots: Vec<RootVector>,
    /// The prefix word and simple root defining each `β_k`.
    pub decompositions: Vec<(WeylWord, Vertex)>,
}

impl GenericY {
    pub fn new(d: &Diagram, sigma: &WeylWord) -> Result<GenericY> {
        let roots = sigma.inversion_set(d)?;
        let letters = sigma.letters();
        let decompositions = (0..letters.len())
            .map(|k| (WeylWord::new(letters[..k].to_vec()), letters[k]))
            .collect();
        Ok(GenericY {
            roots,
            decompositions,
        })
    }

    pub fn ring(&self, d: &Diagram) -> PolyRing {
        let vars = self
            .roots
            .iter()
            .enumerate()
            .map(|(k, b)| Variable {
                name: format!("y{}", k + 1),
                degree: (-b).to_dense(d),
            })
            .collect();
        PolyRing::new(d.vertices().iter().map(|v| v.to_string()).collect(), vars)
    }

    /// `E_{β_k}` on `rep`, one matrix per variable.
    pub fn operators(&self, rep: &Representation) -> Result<Vec<SparseMat>> {
        self.decompositions
            .par_iter()
            .map(|(w, i)| root_operator_from(rep, w, *i))
            .collect()
    }
}

/// `Y v = Σ_k y_k E_k v`.
fn apply_y(ops: &[SparseMat], v: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(); v.len()];
    for (k, op) in ops.iter().enumerate() {
        let y = MultiPoly::var(k);
        for (i, p) in op.apply_poly(v).into_iter().enumerate() {
            if !p.is_zero() {
                out[i] += &(&y * &p);
            }
        }
    }
    out
}

/// `exp(±Y) v`; terminates since `Y` is nilpotent.
pub fn exp_y_apply(ops: &[SparseMat], v: &[MultiPoly], negate: bool) -> Vec<MultiPoly> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut k = 1i64;
    loop {
        let mut s = BigRational::new(1.into(), k.into());
        if negate {
            s = -s;
        }
        term = apply_y(ops, &term)
            .iter()
            .map(|p| p.scalar_mul(&s))
            .collect();
        if term.iter().all(MultiPoly::is_zero) {
            return out;
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        k += 1;
    }
}

/// The matrix of `exp(Y)` on a representation.
pub fn exp_on_rep(rep: &Representation, y: &GenericY) -> Result<PolyMatrix> {
    let ops = y.operators(rep)?;
    let n = rep.dim();
    let mut m = PolyMatrix::zeros(n, n);
    for j in 0..n {
        let mut v = vec![MultiPoly::zero(); n];
        v[j] = MultiPoly::one();
        for (i, p) in exp_y_apply(&ops, &v, false).into_iter().enumerate() {
            m.set(i, j, p);
        }
    }
    Ok(m)
}

/// A representation with the operators of `Y` and the action of `g`.
struct Module {
    rep: Representation,
    ops: Vec<SparseMat>,
}

impl Module {
    fn new(d: &Diagram, top: Vertex, y: &GenericY) -> Result<Module> {
        let rep = build_irrep(d, &crate::weight::Weight::unit(top))?;
        let ops = y.operators(&rep)?;
        Ok(Module { rep, ops })
    }

    /// `g v = exp(Y) σ̂ v`.
    fn g(&self, sigma: &WeylWord, v: &[BigRational]) -> Result<Vec<MultiPoly>> {
        let w = self.rep.apply_word(sigma, false, v)?;
        let w: Vec<MultiPoly> = w.into_iter().map(MultiPoly::constant).collect();
        Ok(exp_y_apply(&self.ops, &w, false))
    }

    /// Chain vectors `v_1 = highest`, `v_{k+1} = f_{t_k} v_k` as `(index, scalar)`.
    fn chain(&self, seq: &WeightSequence) -> Result<Vec<(usize, BigRational)>> {
        let mut v = vec![BigRational::zero(); self.rep.dim()];
        v[0] = BigRational::one();
        let mut out = vec![(0, BigRational::one())];
        for &t in &seq.letters {
            v = self.rep.f(t)?.apply(&v);
            let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            if support.len() != 1 {
                return Err(Error::IdentityFailure(format!(
                    "chain vector of {} is not extremal",
                    seq.name
                )));
            }
            out.push((support[0], v[support[0]].clone()));
        }
        Ok(out)
    }

    fn unit(&self, (b, c): &(usize, BigRational)) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.rep.dim()];
        v[*b] = c.clone();
        v
    }

    /// `M[k][i]` = coefficient of target chain vector `k` in `g` of source
    /// chain vector `i`.
    fn block(
        &self,
        sigma: &WeylWord,
        source: &[(usize, BigRational)],
        target: &[(usize, BigRational)],
    ) -> Result<Vec<Vec<MultiPoly>>> {
        let images: Vec<Vec<MultiPoly>> = source
            .par_iter()
            .map(|s| self.g(sigma, &self.unit(s)))
            .collect::<Result<_>>()?;
        Ok(target
            .iter()
            .map(|(b, c)| {
                let inv = c.recip();
                images.iter().map(|img| img[*b].scalar_mul(&inv)).collect()
            })
            .collect())
    }

    fn check_top(&self, t: Vertex, expected: usize) -> Result<()> {
        let k = self.rep.diagram.idx(t)?;
        let n = self.rep.basis.iter().filter(|b| b.depth[k] == 0).count();
        if n != expected {
            return Err(Error::IdentityFailure(format!(
                "top {t}-component of L({}) has dimension {n}, expected {expected}",
                self.rep.highest_weight
            )));
        }
        Ok(())
    }
}

/// A graded length-three complex `F3 → F2 → F1 → F0` over a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedComplex {
    pub ranks: [usize; 4],
    pub ring: PolyRing,
    /// `degrees[i][k]`: multidegree of the `k`-th generator of `F_i`.
    pub degrees: Vec<Vec<Vec<i64>>>,
    /// `d[k-1] = d_k : F_k → F_{k-1}`.
    pub d: [PolyMatrix; 3],
    pub format: Option<Format>,
    pub sigma: Option<WeylWord>,
}

impl GradedComplex {
    /// Assemble, annotating each differential with its generator degrees.
    pub fn new(ring: PolyRing, degrees: Vec<Vec<Vec<i64>>>, d: [PolyMatrix; 3]) -> GradedComplex {
        let ranks = [
            degrees[0].len(),
            degrees[1].len(),
            degrees[2].len(),
            degrees[3].len(),
        ];
        let [d1, d2, d3] = d;
        let d = [
            d1.with_degrees(degrees[0].clone(), degrees[1].clone()),
            d2.with_degrees(degrees[1].clone(), degrees[2].clone()),
            d3.with_degrees(degrees[2].clone(), degrees[3].clone()),
        ];
        GradedComplex {
            ranks,
            ring,
            degrees,
            d,
            format: None,
            sigma: None,
        }
    }

    pub fn d1(&self) -> &PolyMatrix {
        &self.d[0]
    }
    pub fn d2(&self) -> &PolyMatrix {
        &self.d[1]
    }
    pub fn d3(&self) -> &PolyMatrix {
        &self.d[2]
    }

    /// Expected ranks of `d1, d2, d3` for an exact complex with `F_0` on top.
    pub fn expected_ranks(&self) -> [usize; 3] {
        let [_, f1, f2, f3] = self.ranks;
        let r3 = f3;
        let r2 = f2.saturating_sub(r3);
        [f1.saturating_sub(r2), r2, r3]
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            format: self.format,
            sigma: self.sigma.clone(),
            ranks: self.ranks,
            ring: self.ring.clone(),
            degrees: self.degrees.clone(),
            differentials: self.d.iter().map(|m| m.to_json(&self.ring)).collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<GradedComplex> {
        if j.differentials.len() != 3 || j.degrees.len() != 4 {
            return Err(Error::Parse(
                "complex needs 4 modules and 3 differentials".into(),
            ));
        }
        let ms: Vec<PolyMatrix> = j
            .differentials
            .iter()
            .map(PolyMatrix::from_json)
            .collect::<Result<_>>()?;
        let [d1, d2, d3]: [PolyMatrix; 3] = ms.try_into().expect("three matrices");
        for (k, m) in [&d1, &d2, &d3].iter().enumerate() {
            if m.rows != j.degrees[k].len() || m.cols != j.degrees[k + 1].len() {
                return Err(Error::Parse(format!("d{} has the wrong shape", k + 1)));
            }
        }
        let mut c = GradedComplex::new(j.ring.clone(), j.degrees.clone(), [d1, d2, d3]);
        c.format = j.format;
        c.sigma = j.sigma.clone();
        Ok(c)
    }

    pub fn betti_table(&self) -> Option<BettiTable> {
        let coords: Vec<Vertex> = self
            .ring
            .coords
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()
            .ok()?;
        Some(BettiTable {
            coords,
            modules: self.degrees.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<WeylWord>,
    pub ranks: [usize; 4],
    pub ring: PolyRing,
    pub degrees: Vec<Vec<Vec<i64>>>,
    pub differentials: Vec<PolyMatrixJson>,
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn check_input(d: &Diagram, sigma: &WeylWord) -> Result<()> {
    if d.classify() != DiagramType::Finite {
        return Err(Error::NotFiniteType);
    }
    if !sigma.is_reduced(d)? || !is_min_double_coset_rep(d, sigma, Vertex::z(1), Vertex::x(1))? {
        return Err(Error::NotMinimalCoset(sigma.to_string()));
    }
    Ok(())
}

/// The complex of the format and `σ` (stored reduced word is `σ` as given).
pub fn build_resolution(format: Format, sigma: &WeylWord) -> Result<GradedComplex> {
    let d = diagram_from_format(format);
    check_input(&d, sigma)?;
    let [f0, f1, f2, f3] = format.ranks();
    let y = GenericY::new(&d, sigma)?;
    let ring = y.ring(&d);
    let seqs = weight_sequences(format);
    let (q0p, q1p, q2, q1, q2p, q3p) = (&seqs[0], &seqs[1], &seqs[2], &seqs[3], &seqs[4], &seqs[5]);
    let tops = [format.x_end(), format.y_end(), format.z_end()];
    let mods: Vec<Module> = tops
        .par_iter()
        .map(|&t| Module::new(&d, t, &y))
        .collect::<Result<_>>()?;
    let (lx, ly, lz) = (&mods[0], &mods[1], &mods[2]);
    lx.check_top(Vertex::x(1), f0)?;
    lx.check_top(Vertex::z(1), f1)?;
    ly.check_top(Vertex::x(1), f2)?;
    ly.check_top(Vertex::z(1), f1)?;
    lz.check_top(Vertex::x(1), f2)?;
    lz.check_top(Vertex::z(1), f3)?;

    // d1 is dual to F0* → L(ω_x) → F1*.
    let d1s = lx.block(sigma, &lx.chain(q0p)?, &lx.chain(q1p)?)?;
    let mut d1 = PolyMatrix::zeros(f0, f1);
    for a in 0..f0 {
        for j in 0..f1 {
            let v = d1s[f1 - 1 - j][f0 - 1 - a].scalar_mul(&sign(f1 - 1 - j));
            d1.set(a, j, v);
        }
    }
    // d2 is F2 → L(ω_y) → F1.
    let d2s = ly.block(sigma, &ly.chain(q2)?, &ly.chain(q1)?)?;
    let d2 = PolyMatrix::from_rows(d2s);
    // d3 is dual to F2* → L(ω_z) → F3*.
    let d3s = lz.block(sigma, &lz.chain(q2p)?, &lz.chain(q3p)?)?;
    let mut d3 = PolyMatrix::zeros(f2, f3);
    for i in 0..f2 {
        for b in 0..f3 {
            let v = d3s[f3 - 1 - b][f2 - 1 - i].scalar_mul(&sign(f2 - 1 - i));
            d3.set(i, b, v);
        }
    }
    let table = betti_multidegrees(format, sigma)?;
    let mut c = GradedComplex::new(ring, table.modules, [d1, d2, d3]);
    c.format = Some(format);
    c.sigma = Some(sigma.clone());
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub d1d2_zero: bool,
    pub d2d3_zero: bool,
    /// `(differential, row, column)` of entries off their annotated degree.
    pub inhomogeneous: Vec<(usize, usize, usize)>,
    pub expected_ranks: [usize; 3],
    /// Ranks of `d1, d2, d3` at each sampled point.
    pub sampled_ranks: Vec<[usize; 3]>,
    pub ranks_ok: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.d1d2_zero && self.d2d3_zero && self.inhomogeneous.is_empty() && self.ranks_ok
    }
}

/// Random rational point with coordinates in `1..=97`.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| q(rng.gen_range(1..=97))).collect()
}

pub const RANK_POINTS: usize = 5;
pub const RANK_RETRIES: usize = 10;

/// `d1 d2 = 0`, `d2 d3 = 0`, homogeneity, and ranks at seeded random points.
pub fn check_complex(c: &GradedComplex, seed: u64) -> CheckReport {
    let d1d2_zero = c.d1().mul(c.d2()).is_zero();
    let d2d3_zero = c.d2().mul(c.d3()).is_zero();
    let mut inhomogeneous = Vec::new();
    for (k, m) in c.d.iter().enumerate() {
        inhomogeneous.extend(
            m.inhomogeneous_entries(&c.ring)
                .into_iter()
                .map(|(i, j)| (k + 1, i, j)),
        );
    }
    let expected = c.expected_ranks();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = Vec::new();
    let mut ranks_ok = true;
    for _ in 0..RANK_POINTS {
        let mut last = [0; 3];
        let mut ok = false;
        for _ in 0..=RANK_RETRIES {
            let pt = random_point(&mut rng, c.ring.nvars());
            last = [0, 1, 2].map(|k| linalg::rank(&c.d[k].evaluate(&pt)));
            if last == expected {
                ok = true;
                break;
            }
        }
        ranks_ok &= ok;
        sampled.push(last);
    }
    CheckReport {
        d1d2_zero,
        d2d3_zero,
        inhomogeneous,
        expected_ranks: expected,
        sampled_ranks: sampled,
        ranks_ok,
    }
}

/// A Plücker coordinate: a coefficient of `g·v_{ω_{x1}}` at an extremal
/// weight in the top `z1`-component.
#[derive(Clone, Debug, PartialEq)]
pub struct Plucker {
    pub weight: Vec<i64>,
    pub value: MultiPoly,
}

/// Coordinates of `exp(Y)σ̂ v` (`v` highest in `L(ω_{x1})`) on the top
/// `z1`-component; these cut out the Schubert variety `X^w` on the cell.
pub fn plucker_coordinates(format: Format, sigma: &WeylWord) -> Result<Vec<Plucker>> {
    let d = diagram_from_format(format);
    check_input(&d, sigma)?;
    let y = GenericY::new(&d, sigma)?;
    let m = Module::new(&d, Vertex::x(1), &y)?;
    let mut v = vec![BigRational::zero(); m.rep.dim()];
    v[0] = BigRational::one();
    let img = m.g(sigma, &v)?;
    let z = d.idx(Vertex::z(1))?;
    Ok((0..m.rep.dim())
        .filter(|&b| m.rep.basis[b].depth[z] == 0)
        .map(|b| Plucker {
            weight: m.rep.basis[b].weight.clone(),
            value: img[b].clone(),
        })
        .collect())
}

/// One witness identity: `minor = unit · p^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessResult {
    pub weight: Vec<i64>,
    pub exponent: u32,
    /// `minor / p^k`, when that is a nonzero constant.
    pub unit: Option<BigRational>,
    pub minor: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorReport {
    pub d2: Vec<WitnessResult>,
    pub d3: Vec<WitnessResult>,
}

impl MinorReport {
    pub fn passed(&self) -> bool {
        self.d2.iter().chain(&self.d3).all(|w| w.unit.is_some())
    }
}

/// Letters of `ρ` with `ρ ω = μ`, for `μ` in the orbit of a dominant `ω`.
fn descend_to_dominant(d: &Diagram, mu: &[i64]) -> WeylWord {
    let mut w = mu.to_vec();
    let mut letters = Vec::new();
    while let Some(k) = w.iter().position(|&c| c < 0) {
        reflect_dense(d, &mut w, k);
        letters.push(d.vertices()[k]);
    }
    WeylWord::new(letters)
}

/// For every nonzero Plücker coordinate `p` of weight `μ = ρ ω_{x1}`, the
/// `f2 × f2` minor of `g` on the `F2` columns of `L(ω_y)` in rows `ρ(Q2)`
/// should be a unit times `p^{r3+1}`, and the minor of `g` on the `F2^*`
/// columns of `L(ω_z)` in rows `ρ(Q2')` a unit times `p^{r2-1}`.
pub fn verify_minor_identities(format: Format, sigma: &WeylWord) -> Result<MinorReport> {
    let d = diagram_from_format(format);
    check_input(&d, sigma)?;
    let y = GenericY::new(&d, sigma)?;
    let seqs = weight_sequences(format);
    let ly = Module::new(&d, format.y_end(), &y)?;
    let lz = Module::new(&d, format.z_end(), &y)?;
    let g2 = columns(&ly, sigma, &ly.chain(&seqs[2])?)?;
    let g3 = columns(&lz, sigma, &lz.chain(&seqs[4])?)?;
    let mut report = MinorReport {
        d2: Vec::new(),
        d3: Vec::new(),
    };
    for p in plucker_coordinates(format, sigma)? {
        if p.value.is_zero() {
            continue;
        }
        let rho = descend_to_dominant(&d, &p.weight);
        for (module, g, seq, k, out) in [
            (&ly, &g2, &seqs[2], format.r3 as u32 + 1, &mut report.d2),
            (&lz, &g3, &seqs[4], format.r2 as u32 - 1, &mut report.d3),
        ] {
            let mut rows = Vec::new();
            for w in &seq.entries {
                let mut wd = w.to_dense(&d);
                rho.act_dense(&d, &mut wd)?;
                let space = module.rep.weight_space(&wd);
                if space.len() != 1 {
                    return Err(Error::IdentityFailure(format!(
                        "weight {wd:?} is not extremal"
                    )));
                }
                rows.push(space[0]);
            }
            let cols: Vec<usize> = (0..g.cols).collect();
            let minor = g.submatrix(&rows, &cols).determinant();
            let unit = minor.unit_ratio(&p.value.pow(k)).filter(|_| true);
            out.push(WitnessResult {
                weight: p.weight.clone(),
                exponent: k,
                unit,
                minor,
            });
        }
    }
    Ok(report)
}

/// `g` applied to each source chain vector, as columns.
fn columns(m: &Module, sigma: &WeylWord, source: &[(usize, BigRational)]) -> Result<PolyMatrix> {
    let images: Vec<Vec<MultiPoly>> = source
        .par_iter()
        .map(|s| m.g(sigma, &m.unit(s)))
        .collect::<Result<_>>()?;
    let mut out = PolyMatrix::zeros(m.rep.dim(), source.len());
    for (j, img) in images.into_iter().enumerate() {
        for (i, p) in img.into_iter().enumerate() {
            out.set(i, j, p);
        }
    }
    Ok(out)
}

/// Sign of the permutation listing `a` then its complement in `0..n`.
pub fn shuffle_sign(a: &[usize], n: usize) -> BigRational {
    let mut inv = 0;
    for (k, &x) in a.iter().enumerate() {
        inv += x - k;
    }
    let _ = n;
    sign(inv)
}

fn complement(a: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|x| !a.contains(x)).collect()
}

/// Buchsbaum–Eisenbud multipliers. `a3[J]` is the maximal minor of `d3` on
/// rows `J`; `a2[I]` satisfies `minor_{I,J}(d2) = a2[I]·sgn(J)·a3[J^c]`;
/// `a1` satisfies `minor_I(d1) = a1·sgn(I)·a2[I^c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BEMultipliers {
    pub a3: Vec<(Vec<usize>, MultiPoly)>,
    pub a2: Vec<(Vec<usize>, MultiPoly)>,
    pub a1: MultiPoly,
    /// Dimension of the solution space of each solve; all zero means unique.
    pub nullities: Vec<usize>,
}

fn degree_sum(degs: &[Vec<i64>], idx: &[usize], n: usize) -> Vec<i64> {
    let mut s = vec![0; n];
    for &i in idx {
        for (a, b) in s.iter_mut().zip(&degs[i]) {
            *a += b;
        }
    }
    s
}

pub fn be_multipliers(c: &GradedComplex) -> Result<BEMultipliers> {
    let [f0, f1, f2, f3] = c.ranks;
    if f0 != 1 && f0 != c.expected_ranks()[0] {
        return Err(Error::Format("multipliers need rank d1 = f0".into()));
    }
    let [r1, r2, _] = c.expected_ranks();
    if r1 != f0 {
        return Err(Error::Format(format!(
            "multipliers need rank d1 = f0, got {r1} and {f0}"
        )));
    }
    let nc = c.ring.coords.len();
    let all3: Vec<usize> = (0..f3).collect();
    let a3: Vec<(Vec<usize>, MultiPoly)> = (0..f2)
        .combinations(f3)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let m = c.d3().submatrix(&j, &all3).determinant();
            (j, m)
        })
        .collect();
    let a3_of = |j: &[usize]| {
        a3.iter()
            .find(|(k, _)| k == j)
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    };
    let d2m = minors(c.d2(), r2);
    let col_sets: Vec<Vec<usize>> = (0..f2).combinations(r2).collect();
    let total2: Vec<i64> = degree_sum(&c.degrees[2], &(0..f2).collect::<Vec<_>>(), nc);
    let total3: Vec<i64> = degree_sum(&c.degrees[3], &all3, nc);
    // column: a3[J^c]·sgn(J), row degree -Σ_J deg F2, source degree Σ F3 - Σ F2
    let s_deg: Vec<i64> = total3.iter().zip(&total2).map(|(a, b)| a - b).collect();
    let coeffs: Vec<MultiPoly> = col_sets
        .iter()
        .map(|j| a3_of(&complement(j, f2)).scalar_mul(&shuffle_sign(j, f2)))
        .collect();
    let row_degs: Vec<Vec<i64>> = col_sets
        .iter()
        .map(|j| {
            degree_sum(&c.degrees[2], j, nc)
                .iter()
                .map(|x| -x)
                .collect()
        })
        .collect();
    let a_mat = PolyMatrix::from_rows(coeffs.iter().map(|p| vec![p.clone()]).collect())
        .with_degrees(row_degs, vec![s_deg]);
    let row_sets: Vec<Vec<usize>> = (0..f1).combinations(r2).collect();
    let mut a2 = Vec::new();
    let mut nullities = Vec::new();
    for i in &row_sets {
        let b: Vec<MultiPoly> = col_sets
            .iter()
            .map(|j| {
                d2m.iter()
                    .find(|(r, cc, _)| r == i && cc == j)
                    .map(|t| t.2.clone())
                    .unwrap_or_default()
            })
            .collect();
        let (x, free) = graded_solve_full(&c.ring, &a_mat, &b)?;
        nullities.push(free);
        a2.push((i.clone(), x.into_iter().next().expect("one unknown")));
    }
    // a1 from the maximal minors of d1
    let a2_of = |i: &[usize]| {
        a2.iter()
            .find(|(k, _)| k == i)
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    };
    let rows0: Vec<usize> = (0..f0).collect();
    let sets1: Vec<Vec<usize>> = (0..f1).combinations(f0).collect();
    let coeffs1: Vec<MultiPoly> = sets1
        .iter()
        .map(|i| a2_of(&complement(i, f1)).scalar_mul(&shuffle_sign(i, f1)))
        .collect();
    let rhs1: Vec<MultiPoly> = sets1
        .iter()
        .map(|i| c.d1().submatrix(&rows0, i).determinant())
        .collect();
    let total1: Vec<i64> = degree_sum(&c.degrees[1], &(0..f1).collect::<Vec<_>>(), nc);
    let total0: Vec<i64> = degree_sum(&c.degrees[0], &rows0, nc);
    // a2[I^c] has degree Σ F2 - Σ_{I^c} F1 - Σ F3
    let s1: Vec<i64> = (0..nc).map(|k| total2[k] - total1[k] - total3[k]).collect();
    let row1: Vec<Vec<i64>> = sets1
        .iter()
        .map(|i| {
            degree_sum(&c.degrees[1], i, nc)
                .iter()
                .map(|x| -x)
                .collect()
        })
        .collect();
    let a_mat1 = PolyMatrix::from_rows(coeffs1.iter().map(|p| vec![p.clone()]).collect())
        .with_degrees(row1, vec![s1]);
    let rhs1_shift: Vec<MultiPoly> = rhs1;
    let _ = total0;
    let (x1, free1) = graded_solve_full(&c.ring, &a_mat1, &rhs1_shift)?;
    nullities.push(free1);
    Ok(BEMultipliers {
        a3,
        a2,
        a1: x1.into_iter().next().expect("one unknown"),
        nullities,
    })
}

/// Result of building the x/z exchanged complex for `σ^{-1}`.
#[derive(Clone, Debug)]
pub struct ExchangeReport {
    pub complex: GradedComplex,
    /// Its dual, relabelled back, differs from the exchange grading of the
    /// direct table by a constant shift.
    pub grading_matches: bool,
    /// Its ranks are those of the direct complex reversed.
    pub ranks_reversed: bool,
}

/// `σ^{-1}` with `x` and `z` interchanged, a representative for the
/// exchanged format.
pub fn exchanged_sigma(sigma: &WeylWord) -> WeylWord {
    sigma.inverse().relabel(Vertex::exchange_xz)
}

pub fn exchange_dual(format: Format, sigma: &WeylWord) -> Result<ExchangeReport> {
    let d = diagram_from_format(format);
    let direct = betti_multidegrees(format, sigma)?;
    let fx = format.exchanged();
    let sx = exchanged_sigma(sigma);
    let complex = build_resolution(fx, &sx)?;
    let built = complex.betti_table().expect("vertex coordinates");
    let back = dual_shift(&built);
    let back = BettiTable {
        coords: back.coords.iter().map(|v| v.exchange_xz()).collect(),
        modules: back.modules.clone(),
    };
    let order: Vec<Vertex> = d.vertices().to_vec();
    let back = BettiTable {
        coords: order.clone(),
        modules: back.reorder(&order)?,
    };
    let predicted = exchange_grading(&d, &direct, sigma)?;
    let grading_matches = predicted.differs_by_shift(&back).is_some();
    let mut rev = format.ranks();
    rev.reverse();
    Ok(ExchangeReport {
        ranks_reversed: complex.ranks == rev,
        grading_matches,
        complex,
    })
}

/// Evaluate every differential at a point.
pub fn specialize(c: &GradedComplex, point: &[BigRational]) -> [QMat; 3] {
    [0, 1, 2].map(|k| c.d[k].evaluate(point))
}
