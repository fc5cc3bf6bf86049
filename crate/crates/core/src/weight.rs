//! Integer vectors in the weight lattice (fundamental-weight coordinates)
//! and the root lattice (simple-root coordinates), with simple reflections
//! and the invariant bilinear form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Vertex};
use crate::error::{Error, Result};

macro_rules! lattice_vector {
    ($name:ident, $basis:literal, $sym:literal) => {
        #[doc = concat!("Finitely supported integer vector in the ", $basis, " basis.")]
        #[derive(
            Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name {
            coeffs: BTreeMap<Vertex, i64>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn unit(v: Vertex) -> Self {
                Self::from_pairs([(v, 1)])
            }

            pub fn from_pairs<I: IntoIterator<Item = (Vertex, i64)>>(pairs: I) -> Self {
                let mut out = Self::zero();
                for (v, c) in pairs {
                    out.add_at(v, c);
                }
                out
            }

            pub fn get(&self, v: Vertex) -> i64 {
                self.coeffs.get(&v).copied().unwrap_or(0)
            }

            pub fn add_at(&mut self, v: Vertex, c: i64) {
                let e = self.coeffs.entry(v).or_insert(0);
                *e += c;
                if *e == 0 {
                    self.coeffs.remove(&v);
                }
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
                self.coeffs.iter().map(|(&v, &c)| (v, c))
            }

            pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
                self.coeffs.keys().copied()
            }

            /// Dense coordinates in the vertex order of `d`.
            /// Panics if the support leaves the diagram.
            pub fn to_dense(&self, d: &Diagram) -> Vec<i64> {
                let mut out = vec![0; d.rank()];
                for (&v, &c) in &self.coeffs {
                    let i = d
                        .index_of(v)
                        .unwrap_or_else(|| panic!("vertex {v} not in diagram {d}"));
                    out[i] = c;
                }
                out
            }

            pub fn from_dense(d: &Diagram, c: &[i64]) -> Self {
                Self::from_pairs(d.vertices().iter().copied().zip(c.iter().copied()))
            }

            /// Rename vertices (e.g. the x/z exchange).
            pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
                Self::from_pairs(self.iter().map(|(v, c)| (f(v), c)))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.coeffs.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (v, c) in self.iter() {
                    let sign = if c < 0 {
                        "-"
                    } else if first {
                        ""
                    } else {
                        "+"
                    };
                    let mag = c.abs();
                    if mag == 1 {
                        write!(f, "{sign}{}{v}", $sym)?;
                    } else {
                        write!(f, "{sign}{mag}{}{v}", $sym)?;
                    }
                    first = false;
                }
                Ok(())
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                let mut out = self.clone();
                out += o;
                out
            }
        }
        impl Add for $name {
            type Output = $name;
            fn add(mut self, o: $name) -> $name {
                self += &o;
                self
            }
        }
        impl AddAssign<&$name> for $name {
            fn add_assign(&mut self, o: &$name) {
                for (v, c) in o.iter() {
                    self.add_at(v, c);
                }
            }
        }
        impl SubAssign<&$name> for $name {
            fn sub_assign(&mut self, o: &$name) {
                for (v, c) in o.iter() {
                    self.add_at(v, -c);
                }
            }
        }
        impl Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                let mut out = self.clone();
                out -= o;
                out
            }
        }
        impl Sub for $name {
            type Output = $name;
            fn sub(mut self, o: $name) -> $name {
                self -= &o;
                self
            }
        }
        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name {
                    coeffs: self.coeffs.iter().map(|(&v, &c)| (v, -c)).collect(),
                }
            }
        }
        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }
        impl Mul<&$name> for i64 {
            type Output = $name;
            fn mul(self, o: &$name) -> $name {
                $name::from_pairs(o.iter().map(|(v, c)| (v, self * c)))
            }
        }
    };
}

lattice_vector!(Weight, "fundamental-weight", "ω");
lattice_vector!(RootVector, "simple-root", "α");

/// `α_i = Σ_j A_ij ω_j`.
pub fn simple_root_in_omega(d: &Diagram, i: Vertex) -> Result<Weight> {
    let k = d.idx(i)?;
    Ok(Weight::from_dense(d, &d.cartan_matrix()[k]))
}

/// `s_i(λ) = λ - ⟨α_i^∨, λ⟩ α_i`.
pub fn reflect(d: &Diagram, lambda: &Weight, i: Vertex) -> Weight {
    let c = lambda.get(i);
    if c == 0 {
        return lambda.clone();
    }
    let k = d
        .index_of(i)
        .unwrap_or_else(|| panic!("vertex {i} not in diagram {d}"));
    let mut out = lambda.clone();
    for (j, &v) in d.vertices().iter().enumerate() {
        out.add_at(v, -c * d.cartan_matrix()[k][j]);
    }
    out
}

/// Dense in-place version of [`reflect`] on vertex position `k`.
pub(crate) fn reflect_dense(d: &Diagram, w: &mut [i64], k: usize) {
    let c = w[k];
    if c != 0 {
        for (wj, a) in w.iter_mut().zip(&d.cartan_matrix()[k]) {
            *wj -= c * a;
        }
    }
}

/// Rational simple-root coordinates `c = A^{-1} w` (A is symmetric).
pub fn omega_to_alpha_rational(d: &Diagram, lambda: &Weight) -> Result<Vec<BigRational>> {
    let w = lambda.to_dense(d);
    let (adj, det) = d.adjugate()?;
    let det = BigInt::from(*det);
    Ok(adj
        .iter()
        .map(|row| {
            let num: i64 = row.iter().zip(&w).map(|(a, b)| a * b).sum();
            BigRational::new(num.into(), det.clone())
        })
        .collect())
}

pub(crate) fn omega_to_alpha_dense(d: &Diagram, w: &[i64]) -> Result<Vec<i64>> {
    let (adj, det) = d.adjugate()?;
    adj.iter()
        .map(|row| {
            let num: i64 = row.iter().zip(w).map(|(a, b)| a * b).sum();
            if num % det != 0 {
                Err(Error::NotInRootLattice(format!("{w:?}")))
            } else {
                Ok(num / det)
            }
        })
        .collect()
}

/// Root-lattice coordinates of `λ`; fails if `λ` is not in the root lattice.
pub fn omega_to_alpha(d: &Diagram, lambda: &Weight) -> Result<RootVector> {
    let c = omega_to_alpha_dense(d, &lambda.to_dense(d)).map_err(|e| match e {
        Error::NotInRootLattice(_) => Error::NotInRootLattice(lambda.to_string()),
        e => e,
    })?;
    Ok(RootVector::from_dense(d, &c))
}

pub fn alpha_to_omega(d: &Diagram, beta: &RootVector) -> Weight {
    let c = beta.to_dense(d);
    let a = d.cartan_matrix();
    let w: Vec<i64> = (0..d.rank())
        .map(|j| (0..d.rank()).map(|i| c[i] * a[i][j]).sum())
        .collect();
    Weight::from_dense(d, &w)
}

/// The invariant form, normalised by `⟨α_i, ω_j⟩ = δ_ij`.
pub fn pairing(d: &Diagram, a: &Weight, b: &Weight) -> Result<BigRational> {
    let c = omega_to_alpha_rational(d, a)?;
    let wb = b.to_dense(d);
    Ok(c.iter()
        .zip(&wb)
        .fold(BigRational::zero(), |acc, (ci, &bi)| {
            acc + ci * BigRational::from_integer(bi.into())
        }))
}

/// Coefficient of `α_t` in `λ`, i.e. `⟨λ, ω_t⟩`. Applied to `ω_r - σ^{-1}ω_r`
/// this reads off the degree shifts used by the grading.
pub fn alpha_coefficient(d: &Diagram, lambda: &Weight, t: Vertex) -> Result<BigRational> {
    pairing(d, lambda, &Weight::unit(t))
}
