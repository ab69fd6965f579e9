//! Exact 3-dimensional convex hull by gift wrapping.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::big_sign;
use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};

type P3 = [BigInt; 3];

fn sub(a: &P3, b: &P3) -> P3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross(a: &P3, b: &P3) -> P3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &P3, b: &P3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero(a: &P3) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Facets of a 3-polytope.
#[derive(Clone, Debug)]
pub struct Hull3 {
    /// Vertex indices of each facet, counterclockwise seen from outside.
    pub facets: Vec<Vec<usize>>,
    /// Outward facet planes `normal . x = offset`, normals primitive integer.
    pub planes: Vec<(RVector, Rational)>,
}

impl Hull3 {
    /// Number of input points that are vertices of some facet.
    pub fn vertex_count(&self) -> usize {
        self.facets.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Undirected edges `(i, j)`, `i < j`, read off consecutive facet vertices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }
}

struct Wrapper {
    pts: Vec<P3>,
}

impl Wrapper {
    fn orient(&self, a: usize, b: usize, c: usize, q: usize) -> i32 {
        let n = cross(
            &sub(&self.pts[b], &self.pts[a]),
            &sub(&self.pts[c], &self.pts[a]),
        );
        big_sign(&dot(&n, &sub(&self.pts[q], &self.pts[a])))
    }

    fn initial_facet(&self) -> Result<(usize, usize, usize)> {
        let n = self.pts.len();
        let p0 = (0..n)
            .min_by(|&i, &j| self.pts[i].cmp(&self.pts[j]))
            .expect("nonempty");
        for j in 0..n {
            for k in j + 1..n {
                if j == p0 || k == p0 {
                    continue;
                }
                let normal = cross(
                    &sub(&self.pts[j], &self.pts[p0]),
                    &sub(&self.pts[k], &self.pts[p0]),
                );
                if is_zero(&normal) {
                    continue;
                }
                let (mut pos, mut neg) = (false, false);
                for q in 0..n {
                    match self.orient(p0, j, k, q) {
                        1 => pos = true,
                        -1 => neg = true,
                        _ => {}
                    }
                    if pos && neg {
                        break;
                    }
                }
                match (pos, neg) {
                    (false, false) => {
                        return Err(Error::InvalidInput("points are coplanar".into()));
                    }
                    (true, false) => return Ok((p0, k, j)),
                    (false, true) => return Ok((p0, j, k)),
                    _ => {}
                }
            }
        }
        Err(Error::InvalidInput("points do not span 3-space".into()))
    }

    /// All points on the plane of `(a, b, c)`, counterclockwise around its
    /// normal, starting from `a`. Fails if some point on it is not a vertex
    /// of the face polygon.
    fn face(&self, a: usize, b: usize, c: usize) -> Result<(Vec<usize>, P3)> {
        let normal = cross(
            &sub(&self.pts[b], &self.pts[a]),
            &sub(&self.pts[c], &self.pts[a]),
        );
        let mut on: Vec<usize> = (0..self.pts.len())
            .filter(|&q| q != a && self.orient(a, b, c, q) == 0)
            .collect();
        let s = &self.pts[a];
        on.sort_by(|&p, &q| {
            let turn = dot(
                &normal,
                &cross(&sub(&self.pts[p], s), &sub(&self.pts[q], s)),
            );
            match big_sign(&turn) {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            }
        });
        let mut cycle = vec![a];
        cycle.extend(on);
        let m = cycle.len();
        for k in 0..m {
            let (x, y, z) = (cycle[k], cycle[(k + 1) % m], cycle[(k + 2) % m]);
            let turn = dot(
                &normal,
                &cross(
                    &sub(&self.pts[y], &self.pts[x]),
                    &sub(&self.pts[z], &self.pts[y]),
                ),
            );
            if !turn.is_positive() {
                return Err(Error::InvalidInput(format!(
                    "point {y} lies on a face but is not a vertex"
                )));
            }
        }
        Ok((cycle, normal))
    }

    /// The facet on the other side of the directed edge `a -> b`, given as a
    /// third point `c` with `(b, a, c)` spanning it outward.
    fn wrap(&self, a: usize, b: usize, facet_plane: (usize, usize, usize)) -> usize {
        let (fa, fb, fc) = facet_plane;
        let mut c = (0..self.pts.len())
            .find(|&q| self.orient(fa, fb, fc, q) != 0)
            .expect("polytope is full dimensional");
        for q in 0..self.pts.len() {
            if self.orient(b, a, c, q) > 0 {
                c = q;
            }
        }
        c
    }
}

#[derive(Default)]
struct Builder {
    facets: Vec<(Vec<usize>, P3)>,
    by_set: BTreeMap<Vec<usize>, usize>,
    owner: HashMap<(usize, usize), usize>,
    queue: VecDeque<usize>,
}

impl Builder {
    fn add(&mut self, cycle: Vec<usize>, normal: P3) -> Result<()> {
        let mut key = cycle.clone();
        key.sort_unstable();
        if self.by_set.contains_key(&key) {
            return Ok(());
        }
        let id = self.facets.len();
        for k in 0..cycle.len() {
            let e = (cycle[k], cycle[(k + 1) % cycle.len()]);
            if self.owner.insert(e, id).is_some() {
                return Err(Error::Geometry(format!(
                    "directed edge {e:?} in two facets"
                )));
            }
        }
        self.by_set.insert(key, id);
        self.facets.push((cycle, normal));
        self.queue.push_back(id);
        Ok(())
    }
}

/// Facets of `conv(points)` for points in `R^3`, by exact gift wrapping.
/// Checks Euler's formula on the result.
pub fn facets_3d(points: &[RVector]) -> Result<Hull3> {
    if points.len() < 4 {
        return Err(Error::InvalidInput(
            "need at least 4 points in dimension 3".into(),
        ));
    }
    if points.iter().any(|p| p.dim() != 3) {
        return Err(Error::InvalidInput(
            "facets_3d needs points in dimension 3".into(),
        ));
    }
    let lcm = points.iter().fold(BigInt::from(1), |acc, v| {
        num_integer::Integer::lcm(&acc, &v.denominator_lcm())
    });
    let pts: Vec<P3> = points
        .iter()
        .map(|v| {
            let c: Vec<BigInt> = v
                .coords()
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            [c[0].clone(), c[1].clone(), c[2].clone()]
        })
        .collect();
    let w = Wrapper { pts };

    let (a, b, c) = w.initial_facet()?;
    let mut builder = Builder::default();
    let (cycle, normal) = w.face(a, b, c)?;
    builder.add(cycle, normal)?;
    while let Some(id) = builder.queue.pop_front() {
        let cycle = builder.facets[id].0.clone();
        let plane = (cycle[0], cycle[1], cycle[2]);
        for k in 0..cycle.len() {
            let (x, y) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            if builder.owner.contains_key(&(y, x)) {
                continue;
            }
            let z = w.wrap(x, y, plane);
            // the neighbor runs y -> x; start its cycle at y
            let (next, normal) = w.face(y, x, z)?;
            builder.add(next, normal)?;
        }
    }
    let facets = builder.facets;

    let hull_facets: Vec<Vec<usize>> = facets.iter().map(|(f, _)| f.clone()).collect();
    let planes = facets
        .iter()
        .map(|(f, normal)| {
            let g = normal
                .iter()
                .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
            let prim: Vec<BigInt> = normal.iter().map(|x| x / &g).collect();
            let p = [prim[0].clone(), prim[1].clone(), prim[2].clone()];
            let offset = Rational::new(dot(&p, &w.pts[f[0]]), lcm.clone()).expect("lcm > 0");
            (RVector::from_ints(prim), offset)
        })
        .collect();
    let hull = Hull3 {
        facets: hull_facets,
        planes,
    };
    let (v, e, f) = (
        hull.vertex_count() as i64,
        hull.edges().len() as i64,
        hull.facets.len() as i64,
    );
    if v - e + f != 2 {
        return Err(Error::Geometry(format!(
            "Euler check failed: V={v} E={e} F={f}"
        )));
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{compute_edges, hypercube, octahedron};

    #[test]
    fn tetrahedron_and_cube() {
        let t = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]].map(RVector::from_ints);
        let h = facets_3d(&t).unwrap();
        assert_eq!(h.facets.len(), 4);
        assert!(h.facets.iter().all(|f| f.len() == 3));

        let q = hypercube(3).unwrap();
        let h = facets_3d(q.vertices()).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.len() == 4));
        assert_eq!(h.edges(), q.edges());
    }

    #[test]
    fn planes_are_outward_and_supporting() {
        let o = octahedron().unwrap();
        let h = facets_3d(o.vertices()).unwrap();
        for ((f, (n, off)), _) in h.facets.iter().zip(&h.planes).zip(0..) {
            for (i, v) in o.vertices().iter().enumerate() {
                let s = (&n.dot(v).unwrap() - off).signum();
                if f.contains(&i) {
                    assert_eq!(s, 0);
                } else {
                    assert_eq!(s, -1);
                }
            }
        }
    }

    #[test]
    fn facet_orientation_is_counterclockwise_from_outside() {
        let q = hypercube(3).unwrap();
        let h = facets_3d(q.vertices()).unwrap();
        for (f, (n, _)) in h.facets.iter().zip(&h.planes) {
            let v = |i: usize| q.vertices()[f[i]].clone();
            let e1 = v(1).sub(&v(0)).unwrap();
            let e2 = v(2).sub(&v(1)).unwrap();
            let c = RVector::new(vec![
                &(&e1[1] * &e2[2]) - &(&e1[2] * &e2[1]),
                &(&e1[2] * &e2[0]) - &(&e1[0] * &e2[2]),
                &(&e1[0] * &e2[1]) - &(&e1[1] * &e2[0]),
            ]);
            assert!(c.dot(n).unwrap().signum() > 0);
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let flat = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]].map(RVector::from_ints);
        assert!(facets_3d(&flat).is_err());
        let mut with_face_point = hypercube(3).unwrap().vertices().to_vec();
        with_face_point.push(RVector::new(vec![
            Rational::new(1, 2).unwrap(),
            Rational::new(1, 2).unwrap(),
            Rational::zero(),
        ]));
        assert!(facets_3d(&with_face_point).is_err());
    }

    #[test]
    fn interior_points_are_skipped() {
        let mut pts = hypercube(3).unwrap().vertices().to_vec();
        pts.push(RVector::new(vec![Rational::new(1, 2).unwrap(); 3]));
        let h = facets_3d(&pts).unwrap();
        assert_eq!(h.vertex_count(), 8);
    }

    #[test]
    fn hull_edges_agree_with_lp_edges() {
        let pts = [
            [3, 0, 0],
            [0, 2, 1],
            [-1, -1, 4],
            [1, 1, -3],
            [-2, 3, -1],
            [0, -3, 0],
        ]
        .map(RVector::from_ints);
        let h = facets_3d(&pts).unwrap();
        assert_eq!(h.edges(), compute_edges(&pts).unwrap());
    }
}
