//! T-shaped diagrams `T_{p,q,r}`, their vertex labels and Cartan matrices,
//! and the correspondence between a format `(r1, r2, r3)` and its diagram.
//!
//! Vertices are named `x1..`, `u`, `y1..`, `z1..` and every map in the crate
//! is keyed by those names, so enlarging an arm never renumbers anything.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arm {
    X,
    Center,
    Y,
    Z,
}

/// A labelled vertex. The center `u` has index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub arm: Arm,
    pub index: u32,
}

impl Vertex {
    pub const U: Vertex = Vertex {
        arm: Arm::Center,
        index: 0,
    };

    pub fn x(i: u32) -> Vertex {
        assert!(i >= 1);
        Vertex {
            arm: Arm::X,
            index: i,
        }
    }
    pub fn y(i: u32) -> Vertex {
        assert!(i >= 1);
        Vertex {
            arm: Arm::Y,
            index: i,
        }
    }
    pub fn z(i: u32) -> Vertex {
        assert!(i >= 1);
        Vertex {
            arm: Arm::Z,
            index: i,
        }
    }

    /// Swap the x and z arms.
    pub fn exchange_xz(self) -> Vertex {
        match self.arm {
            Arm::X => Vertex {
                arm: Arm::Z,
                index: self.index,
            },
            Arm::Z => Vertex {
                arm: Arm::X,
                index: self.index,
            },
            _ => self,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.arm {
            Arm::Center => write!(f, "u"),
            Arm::X => write!(f, "x{}", self.index),
            Arm::Y => write!(f, "y{}", self.index),
            Arm::Z => write!(f, "z{}", self.index),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Vertex> {
        let s = s.trim();
        if s == "u" {
            return Ok(Vertex::U);
        }
        let bad = || Error::UnknownVertex(s.to_string());
        let mut chars = s.chars();
        let arm = match chars.next() {
            Some('x') => Arm::X,
            Some('y') => Arm::Y,
            Some('z') => Arm::Z,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Vertex { arm, index })
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Vertex, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The triple `(r1, r2, r3)`; the Betti format is `(r1, r1+r2, r2+r3, r3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Format {
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
}

impl Format {
    pub fn new(r1: usize, r2: usize, r3: usize) -> Result<Format> {
        if r1 < 1 || r2 < 2 || r3 < 1 {
            return Err(Error::Format(format!(
                "need r1 >= 1, r2 >= 2, r3 >= 1, got ({r1},{r2},{r3})"
            )));
        }
        Ok(Format { r1, r2, r3 })
    }

    /// From Betti ranks `(f0, f1, f2, f3)`.
    pub fn from_ranks(f: [usize; 4]) -> Result<Format> {
        let [f0, f1, f2, f3] = f;
        if f1 < f0 || f2 < f3 || f1 - f0 != f2 - f3 {
            return Err(Error::Format(format!(
                "({f0},{f1},{f2},{f3}) is not of the form (r1, r1+r2, r2+r3, r3)"
            )));
        }
        Format::new(f0, f1 - f0, f3)
    }

    pub fn ranks(&self) -> [usize; 4] {
        [self.r1, self.r1 + self.r2, self.r2 + self.r3, self.r3]
    }

    /// The format with the roles of `r1` and `r3` swapped.
    pub fn exchanged(&self) -> Format {
        Format {
            r1: self.r3,
            r2: self.r2,
            r3: self.r1,
        }
    }

    /// Last vertex of the y-arm, or `u` when the arm is empty.
    pub fn y_end(&self) -> Vertex {
        if self.r2 > 2 {
            Vertex::y((self.r2 - 2) as u32)
        } else {
            Vertex::U
        }
    }

    pub fn x_end(&self) -> Vertex {
        Vertex::x(self.r1 as u32)
    }

    pub fn z_end(&self) -> Vertex {
        Vertex::z(self.r3 as u32)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.ranks();
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Parses Betti ranks `"1,5,6,2"`.
impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("format `{s}`: {e}")))?;
        let f: [usize; 4] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("format `{s}` needs four ranks")))?;
        Format::from_ranks(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramType {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramType::Finite => "finite",
            DiagramType::Affine => "affine",
            DiagramType::Indefinite => "indefinite",
        })
    }
}

/// `T_{p,q,r}`: arms of `p-1`, `q-1`, `r-1` vertices around `u`.
#[derive(Clone, Debug)]
pub struct Diagram {
    p: usize,
    q: usize,
    r: usize,
    vertices: Vec<Vertex>,
    cartan: Vec<Vec<i64>>,
    /// `(adj(A), det A)`, absent when `A` is singular.
    inverse: Option<(Vec<Vec<i64>>, i64)>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.q, self.r) == (other.p, other.q, other.r)
    }
}
impl Eq for Diagram {}

impl Diagram {
    pub fn new(p: usize, q: usize, r: usize) -> Diagram {
        assert!(
            p >= 1 && q >= 1 && r >= 1,
            "arm parameters must be positive"
        );
        let mut vertices: Vec<Vertex> = (1..p as u32).map(Vertex::x).collect();
        vertices.push(Vertex::U);
        vertices.extend((1..q as u32).map(Vertex::y));
        vertices.extend((1..r as u32).map(Vertex::z));
        let n = vertices.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for j in 0..n {
                if i != j && adjacent(vertices[i], vertices[j]) {
                    cartan[i][j] = -1;
                }
            }
        }
        let inverse = integer_inverse(&cartan);
        Diagram {
            p,
            q,
            r,
            vertices,
            cartan,
            inverse,
        }
    }

    pub fn params(&self) -> (usize, usize, usize) {
        (self.p, self.q, self.r)
    }

    /// Vertices in the fixed order `x1 < x2 < .. < u < y1 < .. < z1 < ..`.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn idx(&self, v: Vertex) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                if adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cartan matrix in vertex order.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_entry(&self, a: Vertex, b: Vertex) -> Result<i64> {
        Ok(self.cartan[self.idx(a)?][self.idx(b)?])
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.inverse.as_ref().map_or(0, |(_, d)| *d)
    }

    /// `(adj(A), det A)` with `A^{-1} = adj / det`.
    pub(crate) fn adjugate(&self) -> Result<&(Vec<Vec<i64>>, i64)> {
        self.inverse.as_ref().ok_or(Error::AffineType)
    }

    pub fn classify(&self) -> DiagramType {
        let (p, q, r) = (self.p as u64, self.q as u64, self.r as u64);
        let lhs = q * r + p * r + p * q;
        match lhs.cmp(&(p * q * r)) {
            Ordering::Greater => DiagramType::Finite,
            Ordering::Equal => DiagramType::Affine,
            Ordering::Less => DiagramType::Indefinite,
        }
    }

    /// Lengthen one arm. `Arm::Center` leaves the diagram unchanged.
    pub fn enlarge(&self, arm: Arm, by: usize) -> Diagram {
        let (mut p, mut q, mut r) = (self.p, self.q, self.r);
        match arm {
            Arm::X => p += by,
            Arm::Y => q += by,
            Arm::Z => r += by,
            Arm::Center => {}
        }
        Diagram::new(p, q, r)
    }

    /// The format whose diagram this is, when the arms are long enough.
    pub fn to_format(&self) -> Option<Format> {
        if self.p < 2 || self.r < 2 {
            return None;
        }
        Format::new(self.p - 1, self.q + 1, self.r - 1).ok()
    }

    /// The same diagram with x and z arms interchanged.
    pub fn exchanged(&self) -> Diagram {
        Diagram::new(self.r, self.q, self.p)
    }

    /// Common name for small finite and affine types, if there is one.
    pub fn type_name(&self) -> String {
        let mut a = [self.p, self.q, self.r];
        a.sort_unstable();
        let n = self.rank();
        let name = match a {
            [1, 1, _] | [1, _, _] => Some(format!("A{n}")),
            [2, 2, _] => Some(format!("D{n}")),
            [2, 3, 3] | [2, 3, 4] | [2, 3, 5] => Some(format!("E{n}")),
            [3, 3, 3] => Some("E6^(1)".into()),
            [2, 4, 4] => Some("E7^(1)".into()),
            [2, 3, 6] => Some("E8^(1)".into()),
            _ => None,
        };
        let t = format!("T_{{{},{},{}}}", self.p, self.q, self.r);
        match name {
            Some(s) => format!("{t} = {s}"),
            None => t,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{},{}}}", self.p, self.q, self.r)
    }
}

/// `T_{r1+1, r2-1, r3+1}`.
pub fn diagram_from_format(format: Format) -> Diagram {
    Diagram::new(format.r1 + 1, format.r2 - 1, format.r3 + 1)
}

fn adjacent(a: Vertex, b: Vertex) -> bool {
    match (a.arm, b.arm) {
        (Arm::Center, Arm::Center) => false,
        (Arm::Center, _) => b.index == 1,
        (_, Arm::Center) => a.index == 1,
        (x, y) if x == y => a.index.abs_diff(b.index) == 1,
        _ => false,
    }
}

/// Integer adjugate and determinant by exact Gauss-Jordan.
fn integer_inverse(a: &[Vec<i64>]) -> Option<(Vec<Vec<i64>>, i64)> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i]
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        let pv = m[c][c].clone();
        det *= &pv;
        for v in m[c].iter_mut() {
            *v /= &pv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..2 * n {
                    let t = &m[c][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
    }
    let d = det.to_integer();
    let adj = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = &m[i][n + j] * &det;
                    debug_assert!(v.is_integer());
                    v.to_integer().to_i64().expect("adjugate entry fits in i64")
                })
                .collect()
        })
        .collect();
    Some((adj, d.to_i64().expect("determinant fits in i64")))
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    p: usize,
    q: usize,
    r: usize,
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            p: self.p,
            q: self.q,
            r: self.r,
            vertices: self.vertices.clone(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Diagram, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        if j.p == 0 || j.q == 0 || j.r == 0 {
            return Err(serde::de::Error::custom("arm parameters must be positive"));
        }
        Ok(Diagram::new(j.p, j.q, j.r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_formats() {
        let e6 = diagram_from_format(Format::from_ranks([1, 5, 6, 2]).unwrap());
        assert_eq!(e6.params(), (2, 3, 3));
        assert_eq!(e6.classify(), DiagramType::Finite);
        assert_eq!(e6.cartan_determinant(), 3);
        let d5 = diagram_from_format("1,5,5,1".parse().unwrap());
        assert_eq!(d5.params(), (2, 3, 2));
        assert_eq!(d5.type_name(), "T_{2,3,2} = D5");
        let e71 = diagram_from_format("1,6,8,3".parse().unwrap());
        assert_eq!(e71.params(), (2, 4, 4));
        assert_eq!(e71.classify(), DiagramType::Affine);
        assert_eq!(e71.cartan_determinant(), 0);
        assert_eq!(e71.enlarge(Arm::X, 1).classify(), DiagramType::Indefinite);
        assert_eq!(Diagram::new(3, 4, 5).classify(), DiagramType::Indefinite);
    }

    #[test]
    fn small_cartan() {
        let a2 = Diagram::new(1, 2, 1);
        assert_eq!(a2.cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        let d4 = Diagram::new(2, 2, 2);
        let u = d4.idx(Vertex::U).unwrap();
        assert_eq!(d4.cartan_matrix()[u], vec![-1, 2, -1, -1]);
    }

    #[test]
    fn vertex_names_round_trip() {
        for s in ["x1", "u", "y12", "z3"] {
            assert_eq!(s.parse::<Vertex>().unwrap().to_string(), s);
        }
        assert!("x0".parse::<Vertex>().is_err());
        assert!("w1".parse::<Vertex>().is_err());
    }

    #[test]
    fn json_shape() {
        let d = Diagram::new(2, 2, 1);
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["vertices"], serde_json::json!(["x1", "u", "y1"]));
        assert_eq!(v["edges"], serde_json::json!([["x1", "u"], ["u", "y1"]]));
        let back: Diagram = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }
}
