//! The all-facets stacking operator for 3-polytopes.

use std::collections::BTreeSet;

use super::{facets_3d, Hull3, VPolytope};
use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};

/// Deepest dyadic step tried when placing an apex.
const MAX_EPS_EXPONENT: u32 = 40;
/// How many times all apexes are pulled in by half if the stacked
/// combinatorics come out wrong.
const MAX_SHRINK_ROUNDS: u32 = 20;

fn centroid(points: &[&RVector]) -> RVector {
    let dim = points[0].dim();
    let mut sum = RVector::zeros(dim);
    for p in points {
        sum = sum.add(p).expect("same dimension");
    }
    sum.scale(&Rational::new(1, points.len() as i64).expect("nonempty"))
}

/// Centroid of facet `f` and the largest `eps = 2^-k` for which
/// `centroid + eps * normal` is beyond `f` and beneath every other facet.
fn place_apex(p: &VPolytope, hull: &Hull3, f: usize) -> Result<(RVector, Rational)> {
    let pts: Vec<&RVector> = hull.facets[f].iter().map(|&i| &p.vertices()[i]).collect();
    let c = centroid(&pts);
    let normal = &hull.planes[f].0;
    let half = Rational::new(1, 2).expect("nonzero");
    let mut eps = Rational::one();
    for _ in 0..=MAX_EPS_EXPONENT {
        let apex = c.add(&normal.scale(&eps))?;
        let ok = hull.planes.iter().enumerate().all(|(g, (n, off))| {
            let s = (&n.dot(&apex).expect("dim 3") - off).signum();
            if g == f {
                s > 0
            } else {
                s < 0
            }
        });
        if ok {
            return Ok((c, eps));
        }
        eps = &eps * &half;
    }
    Err(Error::Geometry(format!(
        "no apex beyond facet {:?} within 2^-{MAX_EPS_EXPONENT}",
        hull.facets[f]
    )))
}

/// `σ(P)`: a pyramid erected beyond every facet of a 3-polytope.
///
/// Apex `a_F = centroid(F) + ε_F · n_F` with `n_F` the primitive outward
/// normal. The result is rebuilt by gift wrapping and checked to have the
/// stacked combinatorics (every old facet gone, `|F|` triangles per apex);
/// if not, all `ε_F` are halved and placement retried.
pub fn stack_all_facets(p: &VPolytope) -> Result<VPolytope> {
    if p.dim() != 3 {
        return Err(Error::InvalidInput(
            "stacking is implemented for dimension 3 only".into(),
        ));
    }
    let hull = facets_3d(p.vertices())?;
    if hull.vertex_count() != p.num_vertices() {
        return Err(Error::InvalidInput("input has non-extreme vertices".into()));
    }
    let placed = (0..hull.facets.len())
        .map(|f| place_apex(p, &hull, f))
        .collect::<Result<Vec<_>>>()?;

    let half = Rational::new(1, 2).expect("nonzero");
    let mut shrink = Rational::one();
    for _ in 0..MAX_SHRINK_ROUNDS {
        let mut vertices = p.vertices().to_vec();
        for (f, (c, eps)) in placed.iter().enumerate() {
            vertices.push(c.add(&hull.planes[f].0.scale(&(eps * &shrink)))?);
        }
        // a failed hull means some old vertex got swallowed; shrink and retry
        let Ok(stacked) = facets_3d(&vertices) else {
            shrink = &shrink * &half;
            continue;
        };
        if is_stacked(p.num_vertices(), &hull, &stacked) {
            let edges = stacked.edges();
            return VPolytope::new(
                format!("stacked({})", p.name()),
                3,
                vertices,
                edges,
                Some(stacked.facets),
            );
        }
        shrink = &shrink * &half;
    }
    Err(Error::Geometry(format!(
        "stacking {} did not produce the expected combinatorics",
        p.name()
    )))
}

fn is_stacked(n_old: usize, old: &Hull3, new: &Hull3) -> bool {
    let expected: usize = old.facets.iter().map(Vec::len).sum();
    if new.facets.len() != expected || new.vertex_count() != n_old + old.facets.len() {
        return false;
    }
    let new_sets: BTreeSet<BTreeSet<usize>> = new
        .facets
        .iter()
        .map(|f| f.iter().copied().collect())
        .collect();
    for (k, f) in old.facets.iter().enumerate() {
        let apex = n_old + k;
        let face: BTreeSet<usize> = f.iter().copied().collect();
        if new_sets.contains(&face) {
            return false;
        }
        // each side triangle of the pyramid over f must be a facet
        for i in 0..f.len() {
            let tri: BTreeSet<usize> = [f[i], f[(i + 1) % f.len()], apex].into_iter().collect();
            if !new_sets.contains(&tri) {
                return false;
            }
        }
    }
    true
}

/// Applies [`stack_all_facets`] `k` times.
pub fn stack_times(p: &VPolytope, k: usize) -> Result<VPolytope> {
    let mut q = p.clone();
    for _ in 0..k {
        q = stack_all_facets(&q)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{compute_edges, cube3, icosahedron_rational, octahedron, tetrahedron};

    fn counts(p: &VPolytope) -> (usize, usize, usize) {
        (p.num_vertices(), p.edges().len(), p.facets().unwrap().len())
    }

    #[test]
    fn stacked_tetrahedron() {
        let s = stack_all_facets(&tetrahedron().unwrap()).unwrap();
        assert_eq!(counts(&s), (8, 18, 12));
        // apex degree equals the facet size
        for a in 4..8 {
            assert_eq!(s.neighbors(a).len(), 3);
        }
        assert_eq!(compute_edges(s.vertices()).unwrap(), s.edges());
    }

    #[test]
    fn stacked_cube_and_octahedron() {
        let c = stack_all_facets(&cube3().unwrap()).unwrap();
        assert_eq!(counts(&c), (14, 36, 24));
        let o = stack_all_facets(&octahedron().unwrap()).unwrap();
        assert_eq!(counts(&o), (14, 36, 24));
    }

    #[test]
    fn stacked_icosahedron() {
        let s = stack_all_facets(&icosahedron_rational().unwrap()).unwrap();
        assert_eq!(s.num_vertices(), 32);
        assert_eq!(s.facets().unwrap().len(), 60);
    }

    #[test]
    fn double_stack_of_tetrahedron() {
        let s = stack_times(&tetrahedron().unwrap(), 2).unwrap();
        assert_eq!(s.num_vertices(), 20);
        assert_eq!(s.facets().unwrap().len(), 36);
    }

    #[test]
    fn rejects_other_dimensions() {
        assert!(stack_all_facets(&crate::polytope::hypercube(4).unwrap()).is_err());
    }
}
