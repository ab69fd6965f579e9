//! Vertex-described polytopes, family generators, exact edge and facet
//! computation, and the all-facets stacking operator.

mod edges;
mod families;
mod hull3;
mod stack;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::RVector;

pub use edges::{compute_edges, is_extreme, supporting_facets};
pub use families::{
    cross_polytope, cube3, cyclic, gale_facet_check, gale_facets, hypercube, icosahedron_rational,
    octahedron, simplex, tetrahedron, CyclicSpec, MAX_CUBE_DIM,
};
pub use hull3::{facets_3d, Hull3};
pub use stack::{stack_all_facets, stack_times};

/// Coordinates below this bound take the `i64`/`i128` fast path in sweeps.
const SMALL_COORD_BOUND: i64 = 1 << 50;

/// A convex polytope given by its vertices and 1-skeleton.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolytopeData", into = "PolytopeData")]
pub struct VPolytope {
    name: String,
    dim: usize,
    vertices: Vec<RVector>,
    edges: Vec<(usize, usize)>,
    facets: Option<Vec<Vec<usize>>>,
    adjacency: Vec<Vec<usize>>,
    frame: IntFrame,
}

/// Vertex coordinates with all denominators cleared by one common factor.
/// Sign and order of `u . v` are unchanged, which is all slicing needs.
#[derive(Clone, Debug)]
pub struct IntFrame {
    /// Common denominator: `coords = scale * vertices`.
    pub scale: BigInt,
    pub coords: Vec<Vec<BigInt>>,
    /// Same coordinates when they all fit comfortably in `i64`.
    pub small: Option<Vec<Vec<i64>>>,
}

impl IntFrame {
    fn new(vertices: &[RVector]) -> Self {
        let lcm = vertices.iter().fold(BigInt::from(1), |acc, v| {
            num_integer::Integer::lcm(&acc, &v.denominator_lcm())
        });
        let coords: Vec<Vec<BigInt>> = vertices
            .iter()
            .map(|v| {
                v.coords()
                    .iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect()
            })
            .collect();
        let small = coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_i64().filter(|v| v.abs() < SMALL_COORD_BOUND))
                    .collect::<Option<Vec<i64>>>()
            })
            .collect();
        IntFrame {
            scale: lcm,
            coords,
            small,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeData {
    name: String,
    dim: usize,
    vertices: Vec<RVector>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Vec<usize>>>,
}

impl TryFrom<PolytopeData> for VPolytope {
    type Error = Error;
    fn try_from(d: PolytopeData) -> Result<Self> {
        VPolytope::new(
            d.name,
            d.dim,
            d.vertices,
            d.edges.into_iter().map(|[i, j]| (i, j)).collect(),
            d.facets,
        )
    }
}

impl From<VPolytope> for PolytopeData {
    fn from(p: VPolytope) -> Self {
        PolytopeData {
            name: p.name,
            dim: p.dim,
            vertices: p.vertices,
            edges: p.edges.into_iter().map(|(i, j)| [i, j]).collect(),
            facets: p.facets,
        }
    }
}

impl VPolytope {
    /// Validates and assembles a polytope. Edges are normalized to `i < j`
    /// and sorted; extremality is not checked here (see [`VPolytope::check_extreme`]).
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        vertices: Vec<RVector>,
        edges: Vec<(usize, usize)>,
        facets: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("polytope has no vertices".into()));
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "vertex {v:?} has dimension {}, expected {dim}",
                    v.dim()
                )));
            }
        }
        let distinct: BTreeSet<&RVector> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidInput(
                "vertices are not pairwise distinct".into(),
            ));
        }
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidInput(format!("invalid edge ({i}, {j})")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        if let Some(fs) = &facets {
            for f in fs {
                if f.iter().any(|&i| i >= n) {
                    return Err(Error::InvalidInput(format!("facet {f:?} out of range")));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let frame = IntFrame::new(&vertices);
        Ok(VPolytope {
            name: name.into(),
            dim,
            vertices,
            edges,
            facets,
            adjacency,
            frame,
        })
    }

    /// Builds a polytope from vertices alone; edges come from the exact
    /// edge oracle and, in dimension 3, facets from gift wrapping.
    pub fn from_vertices(name: impl Into<String>, vertices: Vec<RVector>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(RVector::dim)
            .ok_or_else(|| Error::InvalidInput("polytope has no vertices".into()))?;
        if dim == 3 {
            let hull = facets_3d(&vertices)?;
            if hull.vertex_count() != vertices.len() {
                return Err(Error::InvalidInput(
                    "some input point is not a vertex".into(),
                ));
            }
            return VPolytope::new(name, dim, vertices, hull.edges(), Some(hull.facets));
        }
        let edges = compute_edges(&vertices)?;
        VPolytope::new(name, dim, vertices, edges, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn facets(&self) -> Option<&[Vec<usize>]> {
        self.facets.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn frame(&self) -> &IntFrame {
        &self.frame
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Errors unless every vertex is extreme, certified by the LP oracle.
    pub fn check_extreme(&self) -> Result<()> {
        for i in 0..self.vertices.len() {
            if !is_extreme(&self.vertices, i)? {
                return Err(Error::InvalidInput(format!(
                    "vertex {i} {:?} is not extreme",
                    self.vertices[i]
                )));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("polytope serializes");
        hex::encode(Sha256::digest(&json))
    }

    /// Dot products `u . v` for every vertex, in the integer frame.
    pub fn levels(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.frame
            .coords
            .iter()
            .map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub(crate) fn has_small_frame(&self, u: &[BigInt]) -> Option<(&[Vec<i64>], Vec<i64>)> {
        let small = self.frame.small.as_ref()?;
        let u: Option<Vec<i64>> = u
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() < SMALL_COORD_BOUND))
            .collect();
        Some((small, u?))
    }

    /// True if `edges` is the symmetric, irreflexive skeleton of a connected graph.
    pub fn skeleton_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// Sign of a big integer as `-1`, `0`, `1`.
pub(crate) fn big_sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn json_round_trip_and_hash() {
        let q = hypercube(3).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.contains("\"vertices\":[[\"0\",\"0\",\"0\"]"));
        let back: VPolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back.edges(), q.edges());
        assert_eq!(back.content_hash(), q.content_hash());
        assert_ne!(q.content_hash(), hypercube(2).unwrap().content_hash());
    }

    #[test]
    fn rejects_bad_input() {
        let v = vec![RVector::from_ints([0, 0]), RVector::from_ints([0, 0])];
        assert!(VPolytope::new("x", 2, v, vec![], None).is_err());
        let v = vec![RVector::from_ints([0, 0]), RVector::from_ints([1, 0])];
        assert!(VPolytope::new("x", 2, v.clone(), vec![(0, 0)], None).is_err());
        assert!(VPolytope::new("x", 2, v, vec![(0, 2)], None).is_err());
    }

    #[test]
    fn frame_scales_uniformly() {
        let v = vec![
            RVector::new(vec![Rational::new(1, 2).unwrap(), Rational::zero()]),
            RVector::new(vec![Rational::zero(), Rational::new(1, 3).unwrap()]),
            RVector::from_ints([0, 0]),
        ];
        let p = VPolytope::new("tri", 2, v, vec![(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert_eq!(p.frame().coords[0], vec![BigInt::from(3), BigInt::from(0)]);
        assert_eq!(p.frame().coords[1], vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(p.frame().scale, BigInt::from(6));
    }
}
