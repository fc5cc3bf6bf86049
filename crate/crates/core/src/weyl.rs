//! Weyl group elements as words in simple reflections.
//!
//! Words compose like functions: the rightmost letter acts first. Two words
//! are the same element iff they move `ρ = Σ ω_t` to the same weight, which
//! is what [`WeylWord::canonical_form`] returns.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{Diagram, Vertex};
use crate::error::{Error, Result};
use crate::weight::{reflect_dense, RootVector, Weight};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord {
    letters: Vec<Vertex>,
}

impl WeylWord {
    pub fn identity() -> WeylWord {
        WeylWord::default()
    }

    pub fn new(letters: Vec<Vertex>) -> WeylWord {
        WeylWord { letters }
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.letters
    }

    pub fn len_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self · other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().map(|&v| f(v)).collect(),
        }
    }

    fn positions(&self, d: &Diagram) -> Result<Vec<usize>> {
        self.letters.iter().map(|&v| d.idx(v)).collect()
    }

    pub(crate) fn act_dense(&self, d: &Diagram, w: &mut [i64]) -> Result<()> {
        for k in self.positions(d)?.into_iter().rev() {
            reflect_dense(d, w, k);
        }
        Ok(())
    }

    /// The action on weights.
    pub fn act(&self, d: &Diagram, lambda: &Weight) -> Result<Weight> {
        let mut w = lambda.to_dense(d);
        self.act_dense(d, &mut w)?;
        Ok(Weight::from_dense(d, &w))
    }

    fn rho_image(&self, d: &Diagram) -> Result<Vec<i64>> {
        let mut w = vec![1; d.rank()];
        self.act_dense(d, &mut w)?;
        Ok(w)
    }

    /// `w · ρ`; equal elements have equal canonical forms.
    pub fn canonical_form(&self, d: &Diagram) -> Result<Weight> {
        Ok(Weight::from_dense(d, &self.rho_image(d)?))
    }

    /// Reduced word obtained by stripping left descents greedily.
    pub fn reduced(&self, d: &Diagram) -> Result<WeylWord> {
        let mut w = self.rho_image(d)?;
        let mut letters = Vec::new();
        while let Some(k) = w.iter().position(|&c| c < 0) {
            reflect_dense(d, &mut w, k);
            letters.push(d.vertices()[k]);
        }
        Ok(WeylWord { letters })
    }

    pub fn length(&self, d: &Diagram) -> Result<usize> {
        Ok(self.reduced(d)?.letters.len())
    }

    pub fn is_reduced(&self, d: &Diagram) -> Result<bool> {
        Ok(self.length(d)? == self.letters.len())
    }

    /// Vertices `i` with `ℓ(s_i w) < ℓ(w)`.
    pub fn left_descents(&self, d: &Diagram) -> Result<Vec<Vertex>> {
        let w = self.rho_image(d)?;
        Ok(d.vertices()
            .iter()
            .zip(&w)
            .filter(|(_, &c)| c < 0)
            .map(|(&v, _)| v)
            .collect())
    }

    /// Vertices `i` with `ℓ(w s_i) < ℓ(w)`.
    pub fn right_descents(&self, d: &Diagram) -> Result<Vec<Vertex>> {
        self.inverse().left_descents(d)
    }

    /// Whether this is a group element equal to `other`.
    pub fn same_element(&self, other: &WeylWord, d: &Diagram) -> Result<bool> {
        Ok(self.rho_image(d)? == other.rho_image(d)?)
    }

    /// Positive roots `β` with `w^{-1}β < 0`, in partial-product order
    /// `β_k = s_{i1}⋯s_{i(k-1)} α_{ik}`.
    pub fn inversion_set(&self, d: &Diagram) -> Result<Vec<RootVector>> {
        if !self.is_reduced(d)? {
            return Err(Error::NotReduced(self.to_string()));
        }
        let pos = self.positions(d)?;
        let a = d.cartan_matrix();
        let mut out = Vec::with_capacity(pos.len());
        for k in 0..pos.len() {
            let mut beta = vec![0i64; d.rank()];
            beta[pos[k]] = 1;
            for &i in pos[..k].iter().rev() {
                let pair: i64 = (0..d.rank()).map(|j| a[i][j] * beta[j]).sum();
                beta[i] -= pair;
            }
            debug_assert!(beta.iter().all(|&c| c >= 0));
            out.push(RootVector::from_dense(d, &beta));
        }
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<WeylWord> {
        s.parse()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, v) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated vertex names; `e` or the empty string is the identity.
impl FromStr for WeylWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<WeylWord> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(WeylWord::identity());
        }
        Ok(WeylWord {
            letters: t
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_>>()?,
        })
    }
}

impl Serialize for WeylWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeylWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<WeylWord, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn canonical_form(d: &Diagram, w: &WeylWord) -> Result<Weight> {
    w.canonical_form(d)
}

pub fn length(d: &Diagram, w: &WeylWord) -> Result<usize> {
    w.length(d)
}

pub fn is_reduced(d: &Diagram, w: &WeylWord) -> Result<bool> {
    w.is_reduced(d)
}

pub fn inversion_set(d: &Diagram, w: &WeylWord) -> Result<Vec<RootVector>> {
    w.inversion_set(d)
}

pub fn inverse(w: &WeylWord) -> WeylWord {
    w.inverse()
}

/// Bruhat order via the lifting property: for a left descent `s` of `w`,
/// `u ≤ w` iff `su ≤ sw` (when `s` is a descent of `u`) or `u ≤ sw`.
pub fn bruhat_leq(d: &Diagram, u: &WeylWord, w: &WeylWord) -> Result<bool> {
    let mut u = u.rho_image(d)?;
    let w = w.reduced(d)?;
    for &s in &w.letters {
        let k = d.idx(s)?;
        if u[k] < 0 {
            reflect_dense(d, &mut u, k);
        }
    }
    Ok(u.iter().all(|&c| c > 0))
}

/// Whether `w` is the shortest element of `W_(left) w W_(right)`, where
/// `W_(t)` is generated by every simple reflection except `s_t`.
pub fn is_min_double_coset_rep(
    d: &Diagram,
    w: &WeylWord,
    left: Vertex,
    right: Vertex,
) -> Result<bool> {
    d.idx(left)?;
    d.idx(right)?;
    let ok_left = w.left_descents(d)?.iter().all(|&v| v == left);
    let ok_right = w.right_descents(d)?.iter().all(|&v| v == right);
    Ok(ok_left && ok_right)
}

/// Shortest representatives of `W_(z1) \ W / W_(x1)` up to length
/// `max_length`, by breadth-first search over the orbit `W·ω_{x1}`.
pub fn enumerate_double_cosets(d: &Diagram, max_length: usize) -> Result<Vec<WeylWord>> {
    let (x1, z1) = (d.idx(Vertex::x(1))?, d.idx(Vertex::z(1))?);
    let mut start = vec![0i64; d.rank()];
    start[x1] = 1;
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut frontier = vec![(start, Vec::<Vertex>::new())];
    let mut out = Vec::new();
    for depth in 0..=max_length {
        let mut next = Vec::new();
        for (mu, word) in &frontier {
            if mu.iter().enumerate().all(|(i, &c)| i == z1 || c >= 0) {
                out.push(WeylWord {
                    letters: word.clone(),
                });
            }
            if depth == max_length {
                continue;
            }
            for (k, &v) in d.vertices().iter().enumerate() {
                if mu[k] > 0 {
                    let mut nu = mu.clone();
                    reflect_dense(d, &mut nu, k);
                    if seen.insert(nu.clone(), ()).is_none() {
                        let mut w = Vec::with_capacity(word.len() + 1);
                        w.push(v);
                        w.extend_from_slice(word);
                        next.push((nu, w));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylWord {
        s.parse().unwrap()
    }

    #[test]
    fn codimension_three_element() {
        let e6 = Diagram::new(2, 3, 3);
        let s = w("z1 u x1");
        assert_eq!(s.length(&e6).unwrap(), 3);
        assert!(is_min_double_coset_rep(&e6, &s, Vertex::z(1), Vertex::x(1)).unwrap());
        let inv = s.inversion_set(&e6).unwrap();
        let z1 = Vertex::z(1);
        assert_eq!(
            inv,
            vec![
                RootVector::unit(z1),
                RootVector::from_pairs([(z1, 1), (Vertex::U, 1)]),
                RootVector::from_pairs([(z1, 1), (Vertex::U, 1), (Vertex::x(1), 1)]),
            ]
        );
        assert!(bruhat_leq(&e6, &w("x1"), &s).unwrap());
        assert!(!bruhat_leq(&e6, &w("y1"), &s).unwrap());
        assert!(bruhat_leq(&e6, &WeylWord::identity(), &s).unwrap());
    }

    #[test]
    fn canonical_forms() {
        let d = Diagram::new(2, 3, 3);
        let rho = Weight::from_dense(&d, &vec![1; d.rank()]);
        assert_eq!(WeylWord::identity().canonical_form(&d).unwrap(), rho);
        assert!(w("u u").same_element(&WeylWord::identity(), &d).unwrap());
        assert_eq!(w("u u").length(&d).unwrap(), 0);
        assert!(w("x1 u x1").same_element(&w("u x1 u"), &d).unwrap());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("z1  u x1").to_string(), "z1 u x1");
        assert_eq!(w("e"), WeylWord::identity());
        assert!("z1 q".parse::<WeylWord>().is_err());
    }

    #[test]
    fn small_enumerations() {
        let e6 = Diagram::new(2, 3, 3);
        let reps = enumerate_double_cosets(&e6, 3).unwrap();
        assert_eq!(reps, vec![WeylWord::identity(), w("z1 u x1")]);
        assert_eq!(
            enumerate_double_cosets(&e6, 0).unwrap(),
            vec![WeylWord::identity()]
        );
        assert_eq!(enumerate_double_cosets(&e6, 40).unwrap().len(), 6);
    }

    #[test]
    fn non_reduced_inversions_fail() {
        let d = Diagram::new(2, 2, 2);
        assert!(matches!(
            w("u u").inversion_set(&d),
            Err(Error::NotReduced(_))
        ));
    }
}
