//! Edge, extremality and facet certificates by exact linear feasibility.

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{integer_row, solve, RVector, Rational, DEFAULT_ROW_CAP};
use crate::parallel::Parallelism;

/// Is there `y` with `eq . y = 0` for every `eq` and `ge . y >= 1` for every `ge`?
fn certify(dim: usize, eqs: &[RVector], ges: &[RVector]) -> Result<bool> {
    let one = Rational::one();
    let zero = Rational::zero();
    let weak: Vec<(Vec<BigInt>, BigInt)> = ges.iter().map(|a| integer_row(a, &one)).collect();
    let eqs: Vec<(Vec<BigInt>, BigInt)> = eqs.iter().map(|a| integer_row(a, &zero)).collect();
    Ok(solve(dim, &weak, &eqs, DEFAULT_ROW_CAP)?.is_some())
}

/// Whether `vertices[i]` is not in the convex hull of the others: some `c`
/// has `c . v_i >= c . v_k + 1` for every `k != i`.
pub fn is_extreme(vertices: &[RVector], i: usize) -> Result<bool> {
    let dim = vertices[i].dim();
    let ges = vertices
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, v)| vertices[i].sub(v))
        .collect::<Result<Vec<_>, _>>()?;
    certify(dim, &[], &ges)
}

fn is_edge(vertices: &[RVector], i: usize, j: usize) -> Result<bool> {
    let dim = vertices[i].dim();
    let eq = vertices[i].sub(&vertices[j])?;
    let ges = vertices
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, v)| vertices[i].sub(v))
        .collect::<Result<Vec<_>, _>>()?;
    certify(dim, &[eq], &ges)
}

/// Exact edge set of `conv(vertices)`: `{i, j}` is an edge iff some linear
/// functional is maximized exactly on `v_i` and `v_j`.
pub fn compute_edges(vertices: &[RVector]) -> Result<Vec<(usize, usize)>> {
    compute_edges_with(vertices, Parallelism::sequential())
}

pub fn compute_edges_with(vertices: &[RVector], par: Parallelism) -> Result<Vec<(usize, usize)>> {
    let extreme = par.map_range(vertices.len(), |i| is_extreme(vertices, i));
    for (i, e) in extreme.into_iter().enumerate() {
        if !e? {
            return Err(Error::InvalidInput(format!(
                "vertex {i} {:?} is not extreme",
                vertices[i]
            )));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..vertices.len()).tuple_combinations().collect();
    let flags = par.map(&pairs, |&(i, j)| is_edge(vertices, i, j));
    let mut edges = Vec::new();
    for (p, f) in pairs.into_iter().zip(flags) {
        if f? {
            edges.push(p);
        }
    }
    Ok(edges)
}

/// All `d`-subsets of vertices that are the full vertex set of a facet:
/// some hyperplane contains exactly them and leaves every other vertex
/// strictly on one side. For simplicial polytopes this is the facet list.
pub fn supporting_facets(vertices: &[RVector]) -> Result<Vec<Vec<usize>>> {
    let Some(d) = vertices.first().map(RVector::dim) else {
        return Ok(Vec::new());
    };
    // unknowns (c, b): c . v_i - b = 0 on S, b - c . v_k >= 1 off S
    let lifted_eq: Vec<RVector> = vertices
        .iter()
        .map(|v| v.extended(-Rational::one()))
        .collect();
    let lifted_ge: Vec<RVector> = vertices
        .iter()
        .map(|v| v.scale(&-Rational::one()).extended(Rational::one()))
        .collect();
    let mut out = Vec::new();
    for s in (0..vertices.len()).combinations(d) {
        let eqs: Vec<RVector> = s.iter().map(|&i| lifted_eq[i].clone()).collect();
        let ges: Vec<RVector> = (0..vertices.len())
            .filter(|k| !s.contains(k))
            .map(|k| lifted_ge[k].clone())
            .collect();
        if certify(d + 1, &eqs, &ges)? {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cross_polytope, hypercube};

    #[test]
    fn cube_edges_are_hamming_pairs() {
        for d in 2..=4 {
            let q = hypercube(d).unwrap();
            let edges = compute_edges(q.vertices()).unwrap();
            let hamming: Vec<(usize, usize)> = (0..1usize << d)
                .tuple_combinations()
                .filter(|(a, b)| (a ^ b).count_ones() == 1)
                .collect();
            assert_eq!(edges, hamming, "d = {d}");
        }
    }

    #[test]
    fn cross_polytope_misses_only_antipodes() {
        let x = cross_polytope(3).unwrap();
        let edges = compute_edges(x.vertices()).unwrap();
        assert_eq!(edges.len(), 12);
        for (i, j) in edges {
            let sum = x.vertices()[i].add(&x.vertices()[j]).unwrap();
            assert!(!sum.is_zero());
        }
    }

    #[test]
    fn interior_point_is_rejected() {
        let mut v = hypercube(2).unwrap().vertices().to_vec();
        v.push(RVector::new(vec![Rational::new(1, 2).unwrap(); 2]));
        assert!(!is_extreme(&v, 4).unwrap());
        assert!(compute_edges(&v).is_err());
    }

    #[test]
    fn square_has_no_triangle_facets() {
        // facets of the square are its 4 sides, each a 2-subset
        let q = hypercube(2).unwrap();
        let f = supporting_facets(q.vertices()).unwrap();
        assert_eq!(f, vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]);
    }
}
