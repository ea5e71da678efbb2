//! Combinatorial simple polytopes as vertex–facet incidences.
//!
//! A vertex of a simple `n`-polytope lies on exactly `n` facets, and the set
//! of those facets determines it; for simple polytopes this incidence fixes the
//! whole face lattice. Truncating a vertex or a face (the moment-polytope
//! picture of blowing up a fixed point or an invariant submanifold) is a purely
//! combinatorial rewrite of these sets.
//!
//! Vertices are kept in canonical order (each facet set sorted, the list
//! sorted lexicographically), so vertex indices are stable across JSON
//! round trips.

mod iso;
mod modification;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{pow, Scalar};

pub use iso::comb_iso;
pub use modification::{
    apply_plan, complementary_faces, modification_b, rigidity_demo, verify_complementary_equiv,
    RigidityReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolytopeDocument", into = "PolytopeDocument")]
pub struct SimplePolytope {
    dim: usize,
    facets: usize,
    vertices: Vec<Vec<usize>>,
}

/// `{"dim": n, "facets": m, "vertices": [[facet indices], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub facets: usize,
    pub vertices: Vec<Vec<usize>>,
}

impl From<SimplePolytope> for PolytopeDocument {
    fn from(p: SimplePolytope) -> Self {
        Self {
            dim: p.dim,
            facets: p.facets,
            vertices: p.vertices,
        }
    }
}

impl TryFrom<PolytopeDocument> for SimplePolytope {
    type Error = Error;

    fn try_from(d: PolytopeDocument) -> Result<Self> {
        Self::new(d.dim, d.facets, d.vertices)
    }
}

/// A face, given by the facets whose intersection it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub defining_facets: Vec<usize>,
    /// Indices of the vertices on the face.
    pub vertex_set: Vec<usize>,
}

impl Face {
    pub fn codim(&self) -> usize {
        self.defining_facets.len()
    }
}

impl SimplePolytope {
    /// Validates and canonicalises an incidence description.
    pub fn new(dim: usize, facets: usize, vertices: Vec<Vec<usize>>) -> Result<Self> {
        let p = Self::canonical(dim, facets, vertices);
        p.validate()?;
        Ok(p)
    }

    fn canonical(dim: usize, facets: usize, mut vertices: Vec<Vec<usize>>) -> Self {
        for v in &mut vertices {
            v.sort_unstable();
        }
        vertices.sort_unstable();
        Self {
            dim,
            facets,
            vertices,
        }
    }

    /// Checks simplicity, distinct vertices, that every facet carries a vertex
    /// and that every edge has exactly two endpoints.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPolytope(msg));
        if self.dim == 0 {
            return bad("dimension must be at least 1".into());
        }
        if self.vertices.is_empty() {
            return bad("no vertices".into());
        }
        let mut used = vec![false; self.facets];
        for v in &self.vertices {
            if v.len() != self.dim {
                return bad(format!(
                    "vertex {v:?} lies on {} facets, not {}",
                    v.len(),
                    self.dim
                ));
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("vertex {v:?} repeats a facet"));
            }
            for &f in v {
                if f >= self.facets {
                    return bad(format!("facet index {f} out of range 0..{}", self.facets));
                }
                used[f] = true;
            }
        }
        if self.vertices.windows(2).any(|w| w[0] == w[1]) {
            return bad("duplicate vertex".into());
        }
        if let Some(f) = used.iter().position(|u| !u) {
            return bad(format!("facet {f} contains no vertex"));
        }
        let mut edges: HashMap<Vec<usize>, usize> = HashMap::new();
        for v in &self.vertices {
            for skip in 0..self.dim {
                let mut e = v.clone();
                e.remove(skip);
                *edges.entry(e).or_default() += 1;
            }
        }
        if let Some((e, c)) = edges.iter().find(|(_, &c)| c != 2) {
            return bad(format!("edge {e:?} has {c} endpoints"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Option<&[usize]> {
        self.vertices.get(i).map(Vec::as_slice)
    }

    /// Indices of the vertices on facet `f`, in canonical order.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].binary_search(&f).is_ok())
            .collect()
    }

    /// The face cut out by `defining_facets`; it must be nonempty.
    pub fn face(&self, defining_facets: &[usize]) -> Result<Face> {
        let mut defining = defining_facets.to_vec();
        defining.sort_unstable();
        defining.dedup();
        if defining.len() != defining_facets.len() {
            return Err(Error::InvalidFace(format!(
                "repeated facet in {defining_facets:?}"
            )));
        }
        if let Some(&f) = defining.iter().find(|&&f| f >= self.facets) {
            return Err(Error::InvalidFace(format!("facet {f} out of range")));
        }
        let vertex_set: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| {
                defining
                    .iter()
                    .all(|f| self.vertices[i].binary_search(f).is_ok())
            })
            .collect();
        if vertex_set.is_empty() {
            return Err(Error::InvalidFace(format!(
                "facets {defining:?} have empty intersection"
            )));
        }
        Ok(Face {
            defining_facets: defining,
            vertex_set,
        })
    }

    /// The `n`-simplex: facets `0..=n`, vertex `i` avoids facet `i`.
    pub fn simplex(n: usize) -> Self {
        assert!(n >= 1, "simplex dimension must be at least 1");
        let vertices = (0..=n)
            .map(|skip| (0..=n).filter(|&f| f != skip).collect())
            .collect();
        Self::canonical(n, n + 1, vertices)
    }

    /// Cartesian product; the facets of `other` are shifted past those of `self`.
    pub fn product(&self, other: &Self) -> Self {
        let shift = self.facets;
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut u = v.clone();
                u.extend(w.iter().map(|f| f + shift));
                vertices.push(u);
            }
        }
        Self::canonical(self.dim + other.dim, self.facets + other.facets, vertices)
    }

    /// `Δ^{d_1} × … × Δ^{d_r}`.
    pub fn simplex_product(dims: &[usize]) -> Result<Self> {
        let (first, rest) = dims.split_first().ok_or(Error::Empty("simplex_product"))?;
        if dims.contains(&0) {
            return Err(Error::InvalidPolytope(
                "a point is not a simple polytope of positive dimension".into(),
            ));
        }
        Ok(rest.iter().fold(Self::simplex(*first), |acc, &d| {
            acc.product(&Self::simplex(d))
        }))
    }

    /// Truncates vertex `v`. The new facet gets index `facet_count()`; the
    /// `i`-th new vertex lies on it and on every facet of `v` but the `i`-th.
    pub fn cut_vertex(&self, v: usize) -> Result<Self> {
        let facets = self.vertices.get(v).ok_or_else(|| {
            Error::InvalidFace(format!(
                "vertex {v} out of range 0..{}",
                self.vertices.len()
            ))
        })?;
        self.truncate(facets.clone())
    }

    /// Truncates the face cut out by `defining_facets` (codimension `c ≥ 2`).
    ///
    /// The new facet gets index `facet_count()`. Each vertex `v` of the face is
    /// replaced by `c` vertices: the `j`-th keeps `v`'s facets except the
    /// `j`-th defining one and adds the new facet.
    pub fn cut_face(&self, defining_facets: &[usize]) -> Result<Self> {
        if defining_facets.len() < 2 {
            return Err(Error::InvalidFace(format!(
                "codimension {} < 2; a facet cannot be truncated",
                defining_facets.len()
            )));
        }
        let face = self.face(defining_facets)?;
        self.truncate(face.defining_facets)
    }

    fn truncate(&self, defining: Vec<usize>) -> Result<Self> {
        if defining.len() < 2 {
            return Err(Error::InvalidFace(
                "truncation needs a face of codimension at least 2".into(),
            ));
        }
        let g = self.facets;
        let mut vertices = Vec::with_capacity(self.vertices.len() + defining.len());
        for v in &self.vertices {
            let on_face = defining.iter().all(|f| v.binary_search(f).is_ok());
            if !on_face {
                vertices.push(v.clone());
                continue;
            }
            for d in &defining {
                let mut w: Vec<usize> = v.iter().copied().filter(|f| f != d).collect();
                w.push(g);
                vertices.push(w);
            }
        }
        Ok(Self::canonical(self.dim, self.facets + 1, vertices))
    }

    /// `f_0, …, f_n`: `f_i` counts the `i`-dimensional faces.
    ///
    /// Enumerates facet subsets of every vertex, so the cost grows like
    /// `f_0 · 2^n`.
    pub fn f_vector(&self) -> Vec<u64> {
        let n = self.dim;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for v in &self.vertices {
            for mask in 0u64..(1u64 << n) {
                let subset: Vec<usize> = (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| v[i])
                    .collect();
                seen.insert(subset);
            }
        }
        let mut f = vec![0u64; n + 1];
        for s in &seen {
            f[n - s.len()] += 1;
        }
        f
    }

    /// `h_0, …, h_n` from `Σ h_j t^j = Σ f_i (t-1)^i`.
    pub fn h_vector(&self) -> Vec<i64> {
        h_from_f(&self.f_vector())
    }

    pub fn chi_ab(&self) -> ChiAb {
        ChiAb::from_h_vector(self.h_vector())
    }

    /// JSON text in the canonical document format.
    pub fn to_json(&self) -> String {
        serde_json_like(self)
    }
}

fn h_from_f(f: &[u64]) -> Vec<i64> {
    let n = f.len() - 1;
    (0..=n)
        .map(|j| {
            (j..=n)
                .map(|i| {
                    let c = crate::arith::binomial_in::<i128>(i as u64, j as i64);
                    let s = if (i - j) % 2 == 0 { 1 } else { -1 };
                    s * c * f[i] as i128
                })
                .sum::<i128>() as i64
        })
        .collect()
}

fn serde_json_like(p: &SimplePolytope) -> String {
    let verts: Vec<String> = p
        .vertices
        .iter()
        .map(|v| {
            let inner: Vec<String> = v.iter().map(usize::to_string).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    format!(
        "{{\"dim\":{},\"facets\":{},\"vertices\":[{}]}}",
        p.dim,
        p.facets,
        verts.join(",")
    )
}

/// Two-parameter Todd genus `χ_{a,b} = Σ h_i a^i b^{n-i}` of a toric manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiAb {
    h: Vec<i64>,
}

impl ChiAb {
    pub fn from_h_vector(h: Vec<i64>) -> Self {
        Self { h }
    }

    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }

    /// Coefficient of `a^i b^{n-i}` at index `i`.
    pub fn coefficients(&self) -> &[i64] {
        &self.h
    }

    pub fn eval<T: Scalar>(&self, a: &T, b: &T) -> T {
        let n = self.degree() as u32;
        self.h.iter().enumerate().fold(T::zero(), |acc, (i, &c)| {
            let c = T::from_i64(c).expect("coefficient fits the scalar type");
            acc + c * pow(a, i as u32) * pow(b, n - i as u32)
        })
    }
}

impl fmt::Display for ChiAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut terms = Vec::new();
        for i in (0..=n).rev() {
            let c = self.h[i];
            if c == 0 {
                continue;
            }
            let var = |name: &str, e: usize| match e {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{e}"),
            };
            let mono = format!("{}{}", var("a", i), var("b", n - i));
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}
