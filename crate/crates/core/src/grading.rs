//! Weight sequences of the three extremal representations and the
//! multigraded Betti data of the resolution attached to `σ`.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{diagram_from_format, Diagram, Format, Vertex};
use crate::error::{Error, Result};
use crate::weight::{omega_to_alpha_dense, reflect_dense, RootVector, Weight};
use crate::weyl::{is_min_double_coset_rep, WeylWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqName {
    Q0p,
    Q1p,
    Q2,
    Q1,
    Q2p,
    Q3p,
}

impl fmt::Display for SeqName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeqName::Q0p => "Q0'",
            SeqName::Q1p => "Q1'",
            SeqName::Q2 => "Q2",
            SeqName::Q1 => "Q1",
            SeqName::Q2p => "Q2'",
            SeqName::Q3p => "Q3'",
        })
    }
}

/// A start weight followed by its images under successive reflections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub name: SeqName,
    pub start: Vertex,
    /// The reflections applied, in order.
    pub letters: Vec<Vertex>,
    pub entries: Vec<Weight>,
}

fn run(d: &Diagram, name: SeqName, start: Vertex, letters: Vec<Vertex>) -> Result<WeightSequence> {
    let mut w = Weight::unit(start).to_dense(d);
    let mut entries = vec![Weight::from_dense(d, &w)];
    for &v in &letters {
        reflect_dense(d, &mut w, d.idx(v)?);
        entries.push(Weight::from_dense(d, &w));
    }
    Ok(WeightSequence {
        name,
        start,
        letters,
        entries,
    })
}

/// The letter lists of the six sequences, independent of the ambient diagram.
fn sequence_letters(f: Format) -> [(SeqName, Vertex, Vec<Vertex>); 6] {
    let (r1, r2, r3) = (f.r1 as u32, f.r2 as u32, f.r3 as u32);
    let xs_down = |lo: u32| (lo..=r1).rev().map(Vertex::x).collect::<Vec<_>>();
    let zs_down = |lo: u32| (lo..=r3).rev().map(Vertex::z).collect::<Vec<_>>();
    let ys_up: Vec<Vertex> = (1..r2 - 1).map(Vertex::y).collect();
    let mut y_chain: Vec<Vertex> = ys_up.iter().rev().copied().collect();
    y_chain.push(Vertex::U);
    let cat = |parts: &[&[Vertex]]| parts.concat();
    let xs_up: Vec<Vertex> = (1..=r1).map(Vertex::x).collect();
    let zs_up: Vec<Vertex> = (1..=r3).map(Vertex::z).collect();
    [
        (SeqName::Q0p, f.x_end(), xs_down(2)),
        (
            SeqName::Q1p,
            f.x_end(),
            cat(&[&xs_down(1), &[Vertex::U], &ys_up]),
        ),
        (SeqName::Q2, f.y_end(), cat(&[&y_chain, &zs_up])),
        (SeqName::Q1, f.y_end(), cat(&[&y_chain, &xs_up])),
        (
            SeqName::Q2p,
            f.z_end(),
            cat(&[&zs_down(1), &[Vertex::U], &ys_up]),
        ),
        (SeqName::Q3p, f.z_end(), zs_down(2)),
    ]
}

/// `Q0', Q1', Q2, Q1, Q2', Q3'` of lengths `f0, f1, f2, f1, f2, f3`.
pub fn weight_sequences(format: Format) -> Vec<WeightSequence> {
    weight_sequences_in(&diagram_from_format(format), format)
        .expect("format diagram contains its own vertices")
}

/// The same sequences computed inside a (possibly enlarged) diagram `d`.
pub fn weight_sequences_in(d: &Diagram, format: Format) -> Result<Vec<WeightSequence>> {
    sequence_letters(format)
        .into_iter()
        .map(|(n, s, l)| run(d, n, s, l))
        .collect()
}

/// Generator multidegrees of `F_0..F_3` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// Coordinate order of every multidegree.
    pub coords: Vec<Vertex>,
    /// `modules[i][k]` is the multidegree of the `k`-th generator of `F_i`.
    pub modules: Vec<Vec<Vec<i64>>>,
}

impl BettiTable {
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    fn pos(&self, v: Vertex) -> Result<usize> {
        self.coords
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn multidegree(&self, i: usize, k: usize) -> RootVector {
        RootVector::from_pairs(
            self.coords
                .iter()
                .copied()
                .zip(self.modules[i][k].iter().copied()),
        )
    }

    /// Shift every multidegree by `c`.
    pub fn shifted(&self, c: &[i64]) -> BettiTable {
        let modules = self
            .modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|d| d.iter().zip(c).map(|(a, b)| a + b).collect())
                    .collect()
            })
            .collect();
        BettiTable {
            coords: self.coords.clone(),
            modules,
        }
    }

    /// Shift so that the first generator of `F_0` sits in degree 0.
    pub fn normalized(&self) -> BettiTable {
        let c: Vec<i64> = self.modules[0][0].iter().map(|x| -x).collect();
        self.shifted(&c)
    }

    /// Reorder and rename coordinates, e.g. into a Bourbaki numbering.
    pub fn reorder(&self, order: &[Vertex]) -> Result<Vec<Vec<Vec<i64>>>> {
        let idx: Vec<usize> = order.iter().map(|&v| self.pos(v)).collect::<Result<_>>()?;
        Ok(self
            .modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|d| idx.iter().map(|&i| d[i]).collect())
                    .collect()
            })
            .collect())
    }

    /// Same multisets of multidegrees in each homological degree.
    pub fn same_multisets(&self, other: &BettiTable) -> bool {
        if self.coords != other.coords || self.modules.len() != other.modules.len() {
            return false;
        }
        self.modules.iter().zip(&other.modules).all(|(a, b)| {
            let (mut a, mut b) = (a.clone(), b.clone());
            a.sort();
            b.sort();
            a == b
        })
    }

    /// Whether `self - other` is one constant vector on every generator.
    pub fn differs_by_shift(&self, other: &BettiTable) -> Option<Vec<i64>> {
        if self.coords != other.coords
            || self.ranks() != other.ranks()
            || self.modules[0].is_empty()
        {
            return None;
        }
        let c: Vec<i64> = self.modules[0][0]
            .iter()
            .zip(&other.modules[0][0])
            .map(|(a, b)| a - b)
            .collect();
        other.shifted(&c).same_multisets(self).then_some(c)
    }

    pub fn to_json(&self, coarse: Option<Vertex>) -> Result<serde_json::Value> {
        let mut modules = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let mut o = serde_json::json!({ "rank": m.len(), "multidegrees": m });
            if let Some(v) = coarse {
                o["coarse"] = serde_json::json!(coarse_grading(self, v)?[i]);
            }
            modules.push(o);
        }
        Ok(serde_json::json!({ "coords": self.coords, "modules": modules }))
    }
}

/// The grading theorem: with `s = σω_{x_{r1}}`,
/// `F0 = -σ rev(Q0') + s`, `F1 = -rev(Q1') + s`, `F2 = σQ2 - ω_{z1} + s`,
/// `F3 = -rev(Q3') + σω_{x1} - ω_{z1} + s`.
pub fn betti_multidegrees(format: Format, sigma: &WeylWord) -> Result<BettiTable> {
    betti_multidegrees_in(&diagram_from_format(format), format, sigma)
}

/// As [`betti_multidegrees`] inside a diagram containing the format's
/// diagram, e.g. an enlargement of an affine one.
pub fn betti_multidegrees_in(d: &Diagram, format: Format, sigma: &WeylWord) -> Result<BettiTable> {
    if !is_min_double_coset_rep(d, sigma, Vertex::z(1), Vertex::x(1))? {
        return Err(Error::NotMinimalCoset(sigma.to_string()));
    }
    let seqs = weight_sequences_in(d, format)?;
    let dense = |s: &WeightSequence| s.entries.iter().map(|w| w.to_dense(d)).collect::<Vec<_>>();
    let (q0p, q1p, q2, q3p) = (
        dense(&seqs[0]),
        dense(&seqs[1]),
        dense(&seqs[2]),
        dense(&seqs[5]),
    );
    let act = |w: &[i64]| -> Result<Vec<i64>> {
        let mut w = w.to_vec();
        sigma.act_dense(d, &mut w)?;
        Ok(w)
    };
    let unit = |v: Vertex| -> Result<Vec<i64>> { Ok(Weight::unit(v).to_dense(d)) };
    let s = act(&unit(format.x_end())?)?;
    let sx1 = act(&unit(Vertex::x(1))?)?;
    let z1 = unit(Vertex::z(1))?;
    let comb = |terms: &[(&[i64], i64)]| -> Vec<i64> {
        (0..d.rank())
            .map(|k| terms.iter().map(|(v, c)| c * v[k]).sum())
            .collect()
    };
    let mut f0 = Vec::new();
    for q in q0p.iter().rev() {
        f0.push(comb(&[(&act(q)?, -1), (&s, 1)]));
    }
    let f1: Vec<_> = q1p
        .iter()
        .rev()
        .map(|q| comb(&[(q, -1), (&s, 1)]))
        .collect();
    let mut f2 = Vec::new();
    for q in &q2 {
        f2.push(comb(&[(&act(q)?, 1), (&z1, -1), (&s, 1)]));
    }
    let f3: Vec<_> = q3p
        .iter()
        .rev()
        .map(|q| comb(&[(q, -1), (&sx1, 1), (&z1, -1), (&s, 1)]))
        .collect();
    let modules = [f0, f1, f2, f3]
        .iter()
        .map(|m| {
            m.iter()
                .map(|w| omega_to_alpha_dense(d, w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BettiTable {
        coords: d.vertices().to_vec(),
        modules,
    })
}

/// Negated `α_v`-coefficient of every generator.
pub fn coarse_grading(table: &BettiTable, v: Vertex) -> Result<Vec<Vec<i64>>> {
    let k = table.pos(v)?;
    Ok(table
        .modules
        .iter()
        .map(|m| m.iter().map(|d| -d[k]).collect())
        .collect())
}

/// Grading of the x/z exchanged dual complex: apply `σ^{-1}` and negate.
pub fn exchange_grading(d: &Diagram, table: &BettiTable, sigma: &WeylWord) -> Result<BettiTable> {
    let inv = sigma.inverse();
    let pos: Vec<usize> = inv
        .letters()
        .iter()
        .map(|&v| d.idx(v))
        .collect::<Result<_>>()?;
    let tpos: Vec<usize> = d
        .vertices()
        .iter()
        .map(|&v| table.pos(v))
        .collect::<Result<_>>()?;
    let a = d.cartan_matrix();
    let modules = table
        .modules
        .iter()
        .map(|m| {
            m.iter()
                .map(|deg| {
                    let mut beta: Vec<i64> = tpos.iter().map(|&i| deg[i]).collect();
                    for &i in pos.iter().rev() {
                        let pair: i64 = (0..d.rank()).map(|j| a[i][j] * beta[j]).sum();
                        beta[i] -= pair;
                    }
                    let mut out = vec![0; table.coords.len()];
                    for (k, &i) in tpos.iter().enumerate() {
                        out[i] = -beta[k];
                    }
                    out
                })
                .collect()
        })
        .collect();
    Ok(BettiTable {
        coords: table.coords.clone(),
        modules,
    })
}

/// Dual complex `F_i ↦ F_{3-i}^*`, shifted so the new `F_0` starts at 0.
pub fn dual_shift(table: &BettiTable) -> BettiTable {
    let n = table.modules.len();
    let modules = (0..n)
        .map(|i| {
            table.modules[n - 1 - i]
                .iter()
                .map(|d| d.iter().map(|x| -x).collect())
                .collect()
        })
        .collect();
    BettiTable {
        coords: table.coords.clone(),
        modules,
    }
    .normalized()
}

fn summands(degrees: &[i64]) -> String {
    let mut ds = degrees.to_vec();
    ds.sort_unstable();
    let mut parts = Vec::new();
    for (deg, group) in &itertools::Itertools::chunk_by(ds.iter(), |&&x| x) {
        let k = group.count();
        let mut s = String::from("R");
        if k > 1 {
            write!(s, "^{k}").unwrap();
        }
        if deg != 0 {
            write!(s, "({})", -deg).unwrap();
        }
        parts.push(s);
    }
    parts.join("⊕")
}

/// `0 → F3 → F2 → F1 → F0` with coarse twists, e.g. `R(-5)⊕R(-6)`.
pub fn coarse_resolution_string(table: &BettiTable, v: Vertex) -> Result<String> {
    let c = coarse_grading(table, v)?;
    let mut parts = vec!["0".to_string()];
    parts.extend(
        c.iter()
            .rev()
            .filter(|m| !m.is_empty())
            .map(|m| summands(m)),
    );
    Ok(parts.join(" → "))
}

/// Macaulay2-style Betti tally of the coarse grading in vertex `v`.
pub fn betti_tally(table: &BettiTable, v: Vertex) -> Result<String> {
    let c = coarse_grading(table, v)?;
    let rows: Vec<i64> = c
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.iter().map(move |d| d - i as i64))
        .collect();
    let (lo, hi) = match (rows.iter().min(), rows.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Ok(String::new()),
    };
    let width = 4;
    let mut out = String::new();
    write!(out, "{:>6}", "").unwrap();
    for i in 0..c.len() {
        write!(out, "{i:>width$}").unwrap();
    }
    out.push('\n');
    write!(out, "{:>6}", "total:").unwrap();
    for m in &c {
        write!(out, "{:>width$}", m.len()).unwrap();
    }
    out.push('\n');
    for r in lo..=hi {
        write!(out, "{:>6}", format!("{r}:")).unwrap();
        for (i, m) in c.iter().enumerate() {
            let k = m.iter().filter(|&&d| d - i as i64 == r).count();
            let cell = if k == 0 {
                ".".to_string()
            } else {
                k.to_string()
            };
            write!(out, "{cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
