//! Sparse multivariate polynomials with rational coefficients over a ring
//! whose variables carry lattice multidegrees, and matrices over it:
//! determinants, pfaffians, homogeneity and degreewise linear solving.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat};

/// Exponents as sorted `(variable, power)` pairs with positive powers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Monomial {
        Monomial(vec![(i as u32, 1)])
    }

    pub fn from_exponents(e: &[u32]) -> Monomial {
        Monomial(
            e.iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| (i as u32, p))
                .collect(),
        )
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        let mut e = vec![0; nvars];
        for &(i, p) in &self.0 {
            e[i as usize] = p;
        }
        e
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, p)| p).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, p) in &self.0 {
            if j < o.0.len() && o.0[j].0 == v {
                match p.cmp(&o.0[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, p - o.0[j].1)),
                }
                j += 1;
            } else if j < o.0.len() && o.0[j].0 < v {
                return None;
            } else {
                out.push((v, p));
            }
        }
        (j == o.0.len()).then_some(Monomial(out))
    }
}

/// Graded lexicographic order with `v0 > v1 > ...`.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total_degree().cmp(&o.total_degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0) {
                if a.0 != b.0 {
                    // the one mentioning the earlier variable is larger
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&o.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> MultiPoly {
        MultiPoly::constant(linalg::q(c))
    }

    pub fn var(i: usize) -> MultiPoly {
        MultiPoly::term(Monomial::var(i), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scalar_mul(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, p) in &m.0 {
                for _ in 0..p {
                    t *= &point[v as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = MultiPoly::term(qm, qc);
            rem -= &(&t * d);
            quot += &t;
        }
        Some(quot)
    }

    /// `Some(c)` if `self = c · other` for a nonzero rational `c`.
    pub fn unit_ratio(&self, other: &MultiPoly) -> Option<BigRational> {
        let (m, c) = other.leading()?;
        let r = self.coefficient(m) / c;
        (!r.is_zero() && *self == other.scalar_mul(&r)).then_some(r)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let Some(&(_, p)) = m.0.iter().find(|(v, _)| *v as usize == var) else {
                continue;
            };
            let rest = m.div(&Monomial::var(var)).expect("variable divides");
            out.add_term(rest, c * BigRational::from_integer(p.into()));
        }
        out
    }

    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = Monomial::one();
            for &(v, p) in &m.0 {
                mm = mm.mul(&Monomial(vec![(f(v as usize) as u32, p)]));
            }
            out.add_term(mm, c.clone());
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for &(v, p) in &m.0 {
                let n = names
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("v{v}"));
                factors.push(if p == 1 { n } else { format!("{n}^{p}") });
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}
impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, o: &MultiPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}
impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}
impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}
impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub degree: Vec<i64>,
}

/// Polynomial ring with one multidegree per variable, in coordinates `coords`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    pub coords: Vec<String>,
    pub vars: Vec<Variable>,
}

impl PolyRing {
    pub fn new(coords: Vec<String>, vars: Vec<Variable>) -> PolyRing {
        PolyRing { coords, vars }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        let mut d = vec![0; self.coords.len()];
        for &(v, p) in &m.0 {
            for (dk, gk) in d.iter_mut().zip(&self.vars[v as usize].degree) {
                *dk += p as i64 * gk;
            }
        }
        d
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn degree_of(&self, p: &MultiPoly) -> Option<Vec<i64>> {
        let mut it = p.terms.keys().map(|m| self.monomial_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, p: &MultiPoly, expected: &[i64]) -> bool {
        p.terms.keys().all(|m| self.monomial_degree(m) == expected)
    }

    pub fn show(&self, p: &MultiPoly) -> String {
        p.fmt_with(&self.names())
    }

    /// All monomials of multidegree `deg`. Needs a linear form that is
    /// strictly negative (or strictly positive) on every variable degree.
    pub fn monomials_of_degree(&self, deg: &[i64]) -> Result<Vec<Monomial>> {
        let h: Vec<i64> = self.vars.iter().map(|v| v.degree.iter().sum()).collect();
        let sign = if h.iter().all(|&x| x < 0) {
            -1
        } else if h.iter().all(|&x| x > 0) {
            1
        } else {
            return Err(Error::InfiniteMonomialBasis);
        };
        let budget = sign * deg.iter().sum::<i64>();
        let mut out = Vec::new();
        if budget < 0 {
            return Ok(out);
        }
        let weights: Vec<i64> = h.iter().map(|x| x * sign).collect();
        let mut exps = vec![0u32; self.nvars()];
        let mut rest = deg.to_vec();
        self.dfs(0, budget, &weights, &mut exps, &mut rest, &mut out);
        out.sort();
        Ok(out)
    }

    fn dfs(
        &self,
        k: usize,
        budget: i64,
        weights: &[i64],
        exps: &mut [u32],
        rest: &mut [i64],
        out: &mut Vec<Monomial>,
    ) {
        if k == self.nvars() {
            if budget == 0 && rest.iter().all(|&r| r == 0) {
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        let deg = &self.vars[k].degree;
        let max = budget / weights[k];
        for e in 0..=max {
            exps[k] = e as u32;
            self.dfs(k + 1, budget - e * weights[k], weights, exps, rest, out);
            for (r, g) in rest.iter_mut().zip(deg) {
                *r -= g;
            }
        }
        for (r, g) in rest.iter_mut().zip(deg) {
            *r += g * (max + 1);
        }
        exps[k] = 0;
    }
}

/// Dense matrix of polynomials with optional generator degrees.
///
/// With annotations, entry `(i, j)` should be homogeneous of degree
/// `col_degrees[j] - row_degrees[i]` (source minus target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<MultiPoly>,
    pub row_degrees: Option<Vec<Vec<i64>>>,
    pub col_degrees: Option<Vec<Vec<i64>>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(); rows * cols],
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn from_rational(m: &QMat) -> PolyMatrix {
        PolyMatrix::from_rows(
            m.iter()
                .map(|r| r.iter().map(|c| MultiPoly::constant(c.clone())).collect())
                .collect(),
        )
    }

    pub fn with_degrees(mut self, rows: Vec<Vec<i64>>, cols: Vec<Vec<i64>>) -> PolyMatrix {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.row_degrees = Some(rows);
        self.col_degrees = Some(cols);
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut MultiPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_constant)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_degrees = self.col_degrees.as_ref().map(|d| neg_all(d));
        t.col_degrees = self.row_degrees.as_ref().map(|d| neg_all(d));
        t
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut m = self.clone();
        m.entries = m.entries.iter().map(|p| -p).collect();
        m
    }

    pub fn scale(&self, c: &BigRational) -> PolyMatrix {
        let mut m = self.clone();
        m.entries = m.entries.iter().map(|p| p.scalar_mul(c)).collect();
        m
    }

    /// Product; entries computed in parallel.
    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let entries: Vec<MultiPoly> = (0..self.rows * o.cols)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / o.cols, idx % o.cols);
                let mut acc = MultiPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect();
        PolyMatrix {
            rows: self.rows,
            cols: o.cols,
            entries,
            row_degrees: self.row_degrees.clone(),
            col_degrees: o.col_degrees.clone(),
        }
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&o.entries) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        self.add(&o.neg())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m.row_degrees = self
            .row_degrees
            .as_ref()
            .map(|d| rows.iter().map(|&i| d[i].clone()).collect());
        m.col_degrees = self
            .col_degrees
            .as_ref()
            .map(|d| cols.iter().map(|&j| d[j].clone()).collect());
        m
    }

    pub fn hcat(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(o.row(i)).cloned().collect())
            .collect();
        let mut m = PolyMatrix::from_rows(rows);
        if self.rows == 0 {
            m.cols = self.cols + o.cols;
        }
        m
    }

    pub fn vcat(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.cols);
        let mut m = self.clone();
        m.rows += o.rows;
        m.entries.extend(o.entries.iter().cloned());
        m.row_degrees = None;
        m.col_degrees = None;
        m
    }

    pub fn evaluate(&self, point: &[BigRational]) -> QMat {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    /// Entries that are not homogeneous of their annotated degree.
    pub fn inhomogeneous_entries(&self, ring: &PolyRing) -> Vec<(usize, usize)> {
        let (Some(rd), Some(cd)) = (&self.row_degrees, &self.col_degrees) else {
            return Vec::new();
        };
        let mut bad = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected: Vec<i64> = cd[j].iter().zip(&rd[i]).map(|(a, b)| a - b).collect();
                if !ring.is_homogeneous(self.get(i, j), &expected) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn determinant(&self) -> MultiPoly {
        determinant(self)
    }

    pub fn to_json(&self, ring: &PolyRing) -> PolyMatrixJson {
        PolyMatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|p| poly_to_json(p, ring.nvars()))
                        .collect()
                })
                .collect(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
        }
    }

    pub fn from_json(j: &PolyMatrixJson) -> Result<PolyMatrix> {
        let rows = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| poly_from_json(p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = PolyMatrix::from_rows(rows);
        m.rows = j.rows;
        m.cols = j.cols;
        if m.entries.len() != j.rows * j.cols {
            return Err(Error::Parse(
                "matrix entry count does not match its shape".into(),
            ));
        }
        m.row_degrees = j.row_degrees.clone();
        m.col_degrees = j.col_degrees.clone();
        Ok(m)
    }
}

fn neg_all(d: &[Vec<i64>]) -> Vec<Vec<i64>> {
    d.iter().map(|v| v.iter().map(|x| -x).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_degrees: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_degrees: Option<Vec<Vec<i64>>>,
}

pub fn poly_to_json(p: &MultiPoly, nvars: usize) -> Vec<TermJson> {
    p.terms
        .iter()
        .rev()
        .map(|(m, c)| TermJson {
            c: c.to_string(),
            e: m.exponents(nvars),
        })
        .collect()
}

pub fn poly_from_json(t: &[TermJson]) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero();
    for term in t {
        let c: BigRational = term
            .c
            .parse()
            .map_err(|_| Error::Parse(format!("coefficient `{}`", term.c)))?;
        p.add_term(Monomial::from_exponents(&term.e), c);
    }
    Ok(p)
}

/// Sizes up to this use subset expansion, larger ones fraction-free elimination.
pub const EXPANSION_LIMIT: usize = 8;

pub fn determinant(m: &PolyMatrix) -> MultiPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    if m.rows <= EXPANSION_LIMIT {
        determinant_expansion(m)
    } else {
        determinant_bareiss(m)
    }
}

/// Laplace expansion along rows, sharing minors of the leading rows.
pub fn determinant_expansion(m: &PolyMatrix) -> MultiPoly {
    let n = m.rows;
    let mut layer: HashMap<u64, MultiPoly> = HashMap::from([(0u64, MultiPoly::one())]);
    for i in 0..n {
        let mut next: HashMap<u64, MultiPoly> = HashMap::new();
        for (&mask, minor) in &layer {
            for j in 0..n {
                if mask >> j & 1 == 1 || m.get(i, j).is_zero() {
                    continue;
                }
                let mut t = minor * m.get(i, j);
                if (mask >> (j + 1)).count_ones() % 2 == 1 {
                    t = -&t;
                }
                *next.entry(mask | 1 << j).or_default() += &t;
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer.remove(&((1u64 << n) - 1)).unwrap_or_else(|| {
        if n == 0 {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        }
    })
}

/// Fraction-free Bareiss elimination with exact polynomial division.
pub fn determinant_bareiss(m: &PolyMatrix) -> MultiPoly {
    let n = m.rows;
    let mut a: Vec<Vec<MultiPoly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = MultiPoly::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).unwrap_or_else(|| {
                    if num.is_zero() {
                        MultiPoly::zero()
                    } else {
                        unreachable!("Bareiss division is exact")
                    }
                });
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return MultiPoly::one();
    }
    if sign {
        -&a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1].clone()
    }
}

pub fn is_skew(m: &PolyMatrix) -> bool {
    m.rows == m.cols
        && (0..m.rows)
            .all(|i| m.get(i, i).is_zero() && (0..i).all(|j| *m.get(i, j) == -m.get(j, i)))
}

/// Pfaffian by first-row expansion with memoised sub-pfaffians.
pub fn pfaffian(m: &PolyMatrix) -> Result<MultiPoly> {
    if !is_skew(m) {
        return Err(Error::NotSkew);
    }
    let n = m.rows;
    if n % 2 == 1 {
        return Ok(MultiPoly::zero());
    }
    let mut memo = HashMap::new();
    Ok(pf_rec(m, (1u64 << n) - 1, &mut memo))
}

fn pf_rec(m: &PolyMatrix, mask: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
    if mask == 0 {
        return MultiPoly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = MultiPoly::zero();
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if !m.get(i, j).is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            let t = m.get(i, j) * &sub;
            if pos % 2 == 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Signed pfaffians `(-1)^i pf(M with row and column i removed)` of an
/// odd-size skew matrix.
pub fn submaximal_pfaffians(m: &PolyMatrix) -> Result<Vec<MultiPoly>> {
    if !is_skew(m) {
        return Err(Error::NotSkew);
    }
    let n = m.rows;
    (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let p = pfaffian(&m.submatrix(&keep, &keep))?;
            Ok(if i % 2 == 0 { p } else { -&p })
        })
        .collect()
}

/// All `k × k` minors with row and column index sets in lexicographic order.
pub fn minors(m: &PolyMatrix, k: usize) -> Vec<(Vec<usize>, Vec<usize>, MultiPoly)> {
    use itertools::Itertools;
    let row_sets: Vec<Vec<usize>> = (0..m.rows).combinations(k).collect();
    let col_sets: Vec<Vec<usize>> = (0..m.cols).combinations(k).collect();
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = row_sets
        .iter()
        .flat_map(|r| col_sets.iter().map(move |c| (r.clone(), c.clone())))
        .collect();
    pairs
        .into_par_iter()
        .map(|(r, c)| {
            let d = determinant(&m.submatrix(&r, &c));
            (r, c, d)
        })
        .collect()
}

fn column_degrees_for_solve(
    ring: &PolyRing,
    a: &PolyMatrix,
) -> (Vec<Vec<i64>>, Vec<Option<Vec<i64>>>) {
    let zero = vec![0; ring.coords.len()];
    match (&a.row_degrees, &a.col_degrees) {
        (Some(r), Some(c)) => (r.clone(), c.iter().cloned().map(Some).collect()),
        _ => {
            let rows = vec![zero; a.rows];
            let cols = (0..a.cols)
                .map(|j| (0..a.rows).find_map(|i| ring.degree_of(a.get(i, j))))
                .collect();
            (rows, cols)
        }
    }
}

/// Solve `a x = b` degree by degree. Unknown `x_j` is sought in degree
/// `D - s_j`, where `s_j` is the source degree of column `j` and `D` the
/// source degree of `b`. Free parameters are set to zero. Returns the
/// solution and the dimension of the solution space.
pub fn graded_solve_full(
    ring: &PolyRing,
    a: &PolyMatrix,
    b: &[MultiPoly],
) -> Result<(Vec<MultiPoly>, usize)> {
    assert_eq!(b.len(), a.rows, "right-hand side has the wrong length");
    let (row_deg, col_deg) = column_degrees_for_solve(ring, a);
    let Some(i0) = b.iter().position(|p| !p.is_zero()) else {
        return Ok((vec![MultiPoly::zero(); a.cols], 0));
    };
    let bdeg = ring.degree_of(&b[i0]).ok_or(Error::NoSolution)?;
    let big_d: Vec<i64> = bdeg.iter().zip(&row_deg[i0]).map(|(x, t)| x + t).collect();
    for (i, p) in b.iter().enumerate() {
        let want: Vec<i64> = big_d.iter().zip(&row_deg[i]).map(|(x, t)| x - t).collect();
        if !ring.is_homogeneous(p, &want) {
            return Err(Error::NoSolution);
        }
    }
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (j, s) in col_deg.iter().enumerate() {
        let Some(s) = s else { continue };
        let want: Vec<i64> = big_d.iter().zip(s).map(|(x, y)| x - y).collect();
        for m in ring.monomials_of_degree(&want)? {
            unknowns.push((j, m));
        }
    }
    let mut eq_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut eqs: Vec<Vec<(usize, BigRational)>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for (u, (j, m)) in unknowns.iter().enumerate() {
        for i in 0..a.rows {
            for (am, ac) in a.get(i, *j).terms() {
                let key = (i, am.mul(m));
                let e = *eq_index.entry(key).or_insert_with(|| {
                    eqs.push(Vec::new());
                    rhs.push(BigRational::zero());
                    eqs.len() - 1
                });
                eqs[e].push((u, ac.clone()));
            }
        }
    }
    for (i, p) in b.iter().enumerate() {
        for (m, c) in p.terms() {
            match eq_index.get(&(i, m.clone())) {
                Some(&e) => rhs[e] = c.clone(),
                None => return Err(Error::NoSolution),
            }
        }
    }
    let mut dense = linalg::zeros(eqs.len(), unknowns.len());
    for (e, row) in eqs.iter().enumerate() {
        for (u, c) in row {
            dense[e][*u] += c;
        }
    }
    let (sol, free) = linalg::solve(&dense, &rhs).ok_or(Error::NoSolution)?;
    let mut x = vec![MultiPoly::zero(); a.cols];
    for ((j, m), c) in unknowns.into_iter().zip(sol) {
        x[j].add_term(m, c);
    }
    for i in 0..a.rows {
        let mut acc = MultiPoly::zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                acc += &(a.get(i, j) * xj);
            }
        }
        if acc != b[i] {
            return Err(Error::IdentityFailure(format!(
                "graded solve row {i} does not replay"
            )));
        }
    }
    Ok((x, free))
}

pub fn graded_solve(ring: &PolyRing, a: &PolyMatrix, b: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    graded_solve_full(ring, a, b).map(|(x, _)| x)
}

/// Column-by-column [`graded_solve`] for a matrix right-hand side.
pub fn graded_solve_matrix(ring: &PolyRing, a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    let cols: Vec<Vec<MultiPoly>> = (0..b.cols)
        .into_par_iter()
        .map(|j| graded_solve(ring, a, &b.column(j)))
        .collect::<Result<_>>()?;
    let mut x = PolyMatrix::zeros(a.cols, b.cols);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, p) in col.into_iter().enumerate() {
            x.set(i, j, p);
        }
    }
    Ok(x)
}

pub fn bigint_q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}
