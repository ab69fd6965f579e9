//! Candidate sweep directions.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::Result;
use crate::exact::{
    affine_rank, hyperplane_through, orient_first_positive, primitive_int, RVector,
};
use crate::parallel::Parallelism;
use crate::polytope::VPolytope;

/// Subsets tried by default before [`subset_normal_directions`] truncates.
pub const DEFAULT_SUBSET_BUDGET: usize = 2_000_000;

/// Canonical integer directions: primitive, first nonzero entry positive,
/// sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectionSet {
    pub directions: Vec<Vec<BigInt>>,
    /// Set when the generator stopped early at its budget.
    pub truncated: bool,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

pub(crate) fn canonical(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = primitive_int(v);
    orient_first_positive(&mut v);
    v
}

fn coordinate_directions(d: usize) -> impl Iterator<Item = Vec<BigInt>> {
    (0..d).map(move |i| (0..d).map(|j| BigInt::from((i == j) as i32)).collect())
}

/// Normal of the hyperplane spanned by a facet's vertices.
fn facet_normal(p: &VPolytope, facet: &[usize]) -> Option<Vec<BigInt>> {
    let d = p.dim();
    let mut chosen: Vec<RVector> = Vec::with_capacity(d);
    for &i in facet {
        let v = &p.vertices()[i];
        chosen.push(v.clone());
        if affine_rank(&chosen).ok()? + 1 < chosen.len() {
            chosen.pop();
        }
        if chosen.len() == d {
            break;
        }
    }
    let h = hyperplane_through(&chosen, d).ok()?;
    Some(canonical(h.normal().cleared()))
}

/// Normals of the stored facets (empty when the polytope carries none).
pub fn facet_normal_directions(p: &VPolytope) -> DirectionSet {
    let mut set = BTreeSet::new();
    for f in p.facets().unwrap_or_default() {
        set.extend(facet_normal(p, f));
    }
    DirectionSet {
        directions: set.into_iter().collect(),
        truncated: false,
    }
}

/// Normals of all hyperplanes through `d` affinely independent vertices,
/// plus facet normals and the coordinate axes.
///
/// At most `budget` subsets are examined; beyond that the set is marked
/// truncated.
pub fn subset_normal_directions(
    p: &VPolytope,
    budget: usize,
    par: Parallelism,
) -> Result<DirectionSet> {
    let d = p.dim();
    let n = p.num_vertices();
    let subsets: Vec<Vec<usize>> = (0..n)
        .combinations(d)
        .take(budget.saturating_add(1))
        .collect();
    let truncated = subsets.len() > budget;
    let subsets = &subsets[..subsets.len().min(budget)];
    let normals = par.map(subsets, |s| {
        let pts: Vec<RVector> = s.iter().map(|&i| p.vertices()[i].clone()).collect();
        // dependent subsets span no hyperplane
        hyperplane_through(&pts, d)
            .ok()
            .map(|h| canonical(h.normal().cleared()))
    });
    let mut set: BTreeSet<Vec<BigInt>> = normals.into_iter().flatten().collect();
    set.extend(facet_normal_directions(p).directions);
    set.extend(coordinate_directions(d));
    Ok(DirectionSet {
        directions: set.into_iter().collect(),
        truncated,
    })
}

/// Integer vectors `1 <= u_1 <= … <= u_d <= bound` with gcd 1.
pub fn positive_grid_directions(d: usize, bound: usize) -> Vec<Vec<usize>> {
    (1..=bound)
        .flat_map(|top| grid_with_top(d, top))
        .sorted()
        .collect()
}

/// Monotone gcd-1 vectors whose last entry is exactly `top`: the directions
/// added when the grid bound grows from `top - 1` to `top`.
pub(crate) fn grid_with_top(d: usize, top: usize) -> Vec<Vec<usize>> {
    if d == 0 || top == 0 {
        return Vec::new();
    }
    (1..=top)
        .combinations_with_replacement(d - 1)
        .filter(|head| head.iter().fold(top, |g, &x| g.gcd(&x)) == 1)
        .map(|mut head| {
            head.push(top);
            head
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube3, cyclic, hypercube, tetrahedron, CyclicSpec};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn grid_examples() {
        assert_eq!(positive_grid_directions(2, 2), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(
            positive_grid_directions(3, 2),
            vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2]]
        );
        assert_eq!(positive_grid_directions(1, 5), vec![vec![1]]);
    }

    /// Brute force over the full box, reduced to sorted gcd-1 representatives.
    #[test]
    fn grid_matches_box_enumeration() {
        for (d, b) in [(2, 6), (3, 5), (4, 4), (5, 3)] {
            let mut want = BTreeSet::new();
            for v in (0..d).map(|_| 1..=b).multi_cartesian_product() {
                let g = v.iter().fold(0usize, |g, &x| g.gcd(&x));
                if g == 1 {
                    let mut s = v.clone();
                    s.sort_unstable();
                    want.insert(s);
                }
            }
            let got: BTreeSet<_> = positive_grid_directions(d, b).into_iter().collect();
            assert_eq!(got, want, "d={d} b={b}");
        }
    }

    #[test]
    fn square_subset_normals() {
        let q2 = hypercube(2).unwrap();
        let s = subset_normal_directions(&q2, DEFAULT_SUBSET_BUDGET, Parallelism::sequential())
            .unwrap();
        for u in [[1, 0], [0, 1], [1, 1], [1, -1]] {
            assert!(s.directions.contains(&ints(&u)), "{u:?}");
        }
        assert_eq!(s.len(), 4);
        assert!(!s.truncated);
    }

    #[test]
    fn tetrahedron_subset_normals() {
        // every 3-subset of the tetrahedron is a facet: 4 facet normals plus 3 axes
        let t = tetrahedron().unwrap();
        let s =
            subset_normal_directions(&t, DEFAULT_SUBSET_BUDGET, Parallelism::sequential()).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(facet_normal_directions(&t).len(), 4);
    }

    #[test]
    fn cube_subset_normals() {
        let c = cube3().unwrap();
        let s =
            subset_normal_directions(&c, DEFAULT_SUBSET_BUDGET, Parallelism::available()).unwrap();
        assert!(s.directions.contains(&ints(&[1, 1, 1])));
        assert!(s.directions.contains(&ints(&[1, 1, 0])));
        assert!(s.directions.contains(&ints(&[1, -1, 1])));
        let seq =
            subset_normal_directions(&c, DEFAULT_SUBSET_BUDGET, Parallelism::sequential()).unwrap();
        assert_eq!(s, seq);
        for u in &s.directions {
            assert_eq!(canonical(u.clone()), *u);
        }
    }

    #[test]
    fn budget_truncates() {
        let p = cyclic(&CyclicSpec::new(3, 8).unwrap()).unwrap();
        let s = subset_normal_directions(&p, 10, Parallelism::sequential()).unwrap();
        assert!(s.truncated);
        let full = subset_normal_directions(&p, 56, Parallelism::sequential()).unwrap();
        assert!(!full.truncated);
    }
}
