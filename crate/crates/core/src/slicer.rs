//! Vertex classification against hyperplanes, slice vertex counts, direction
//! sweeps, and the vertex-avoiding nudge.
//!
//! All comparisons run in the polytope's integer frame: with `S` the common
//! denominator of the vertices and `u` cleared to integers, `S * (u . v)` is
//! an integer, computed in `i128` when coordinates are small.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Hyperplane, RVector, Rational};
use crate::polytope::VPolytope;

/// Vertices below, on and above a hyperplane, plus the edges it crosses in
/// their relative interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePartition {
    pub below: Vec<usize>,
    pub on: Vec<usize>,
    pub above: Vec<usize>,
    pub crossed: Vec<(usize, usize)>,
}

impl SlicePartition {
    /// Whether the hyperplane meets the polytope.
    pub fn meets(&self) -> bool {
        !self.on.is_empty() || (!self.below.is_empty() && !self.above.is_empty())
    }

    /// Number of slice vertices: vertices on `H` plus crossed edges.
    pub fn cv(&self) -> usize {
        self.on.len() + self.crossed.len()
    }
}

/// `u . v` for every vertex, scaled into the integer frame.
#[derive(Clone, Debug)]
pub(crate) enum Projection {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Projection {
    pub(crate) fn new(p: &VPolytope, u: &[BigInt]) -> Self {
        if let Some((small, u)) = p.has_small_frame(u) {
            return Projection::Small(
                small
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&u)
                            .map(|(&a, &b)| a as i128 * b as i128)
                            .sum()
                    })
                    .collect(),
            );
        }
        Projection::Big(p.levels(u))
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Projection::Small(v) => v.len(),
            Projection::Big(v) => v.len(),
        }
    }

    pub(crate) fn value(&self, i: usize) -> BigInt {
        match self {
            Projection::Small(v) => BigInt::from(v[i]),
            Projection::Big(v) => v[i].clone(),
        }
    }

    /// Sign of `value(i) - num / den` for `den > 0`.
    fn sign_against(&self, i: usize, num: &BigInt, den: &BigInt) -> i32 {
        if let (Projection::Small(v), Some(n), Some(d)) = (self, num.to_i128(), den.to_i128()) {
            if let Some(lhs) = v[i].checked_mul(d) {
                return match lhs.cmp(&n) {
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                    Ordering::Greater => 1,
                };
            }
        }
        let lhs = self.value(i) * den;
        match lhs.cmp(num) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

/// Integer direction with the same sign pattern as `u` (positive multiple).
pub(crate) fn integer_direction(u: &RVector) -> Vec<BigInt> {
    u.cleared()
}

fn check_dim(p: &VPolytope, dim: usize) -> Result<()> {
    if dim != p.dim() {
        return Err(Error::Exact(crate::ExactError::DimensionMismatch {
            expected: p.dim(),
            found: dim,
        }));
    }
    Ok(())
}

/// The offset `t` of `u . x = t` in frame units, as `num / den` with `den > 0`.
fn frame_offset(p: &VPolytope, u: &RVector, t: &Rational) -> (BigInt, BigInt) {
    let m = u.denominator_lcm();
    let scaled = t * &Rational::from_int(&p.frame().scale * m);
    (scaled.numer().clone(), scaled.denom().clone())
}

/// Classification for the direction `u` and offset `t`, in the caller's
/// orientation (`below` means `u . v < t`).
pub fn classify_direction(p: &VPolytope, u: &RVector, t: &Rational) -> Result<SlicePartition> {
    check_dim(p, u.dim())?;
    let proj = Projection::new(p, &integer_direction(u));
    let (num, den) = frame_offset(p, u, t);
    let signs: Vec<i32> = (0..proj.len())
        .map(|i| proj.sign_against(i, &num, &den))
        .collect();
    Ok(partition_from_signs(p, &signs))
}

pub(crate) fn partition_from_signs(p: &VPolytope, signs: &[i32]) -> SlicePartition {
    let mut part = SlicePartition {
        below: Vec::new(),
        on: Vec::new(),
        above: Vec::new(),
        crossed: Vec::new(),
    };
    for (i, &s) in signs.iter().enumerate() {
        match s {
            -1 => part.below.push(i),
            0 => part.on.push(i),
            _ => part.above.push(i),
        }
    }
    part.crossed = p
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j)| signs[i] * signs[j] < 0)
        .collect();
    part
}

/// Exact partition of the vertices by the sign of `normal . v - offset`.
pub fn classify(p: &VPolytope, h: &Hyperplane) -> Result<SlicePartition> {
    classify_direction(p, h.normal(), h.offset())
}

/// `cv_P(H)`, the number of vertices of `H ∩ P`.
pub fn cv(p: &VPolytope, h: &Hyperplane) -> Result<usize> {
    let part = classify(p, h)?;
    if !part.meets() {
        return Err(Error::NoIntersection);
    }
    Ok(part.cv())
}

/// Slice counts along a direction: at every vertex level and strictly
/// between consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepProfile {
    pub direction: RVector,
    pub levels: Vec<Rational>,
    pub at_level: Vec<usize>,
    pub between: Vec<usize>,
}

impl SweepProfile {
    /// Offset realizing `between[k]`: the midpoint of levels `k` and `k + 1`.
    pub fn between_offset(&self, k: usize) -> Rational {
        self.levels[k].midpoint(&self.levels[k + 1])
    }
}

/// Raw sweep in frame units: distinct sorted values and counts.
#[derive(Clone, Debug)]
pub(crate) struct RawSweep {
    pub levels: Vec<BigInt>,
    pub at_level: Vec<usize>,
    pub between: Vec<usize>,
}

fn sweep_sorted<T: Ord + Clone>(
    vals: &[T],
    edges: &[(usize, usize)],
) -> (Vec<T>, Vec<usize>, Vec<usize>) {
    let mut distinct: Vec<T> = vals.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let rank: Vec<usize> = vals
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect();
    let m = distinct.len();
    let mut at = vec![0usize; m];
    for &r in &rank {
        at[r] += 1;
    }
    // difference arrays: edge (lo, hi) crosses levels lo+1..hi-1 in their
    // interior and the gaps lo..hi-1
    let mut at_diff = vec![0isize; m + 1];
    let mut gap_diff = vec![0isize; m + 1];
    for &(i, j) in edges {
        let (lo, hi) = if rank[i] < rank[j] {
            (rank[i], rank[j])
        } else {
            (rank[j], rank[i])
        };
        if lo == hi {
            continue;
        }
        gap_diff[lo] += 1;
        gap_diff[hi] -= 1;
        if hi > lo + 1 {
            at_diff[lo + 1] += 1;
            at_diff[hi] -= 1;
        }
    }
    let mut run = 0isize;
    for (k, a) in at.iter_mut().enumerate() {
        run += at_diff[k];
        *a += run as usize;
    }
    let mut between = Vec::with_capacity(m.saturating_sub(1));
    let mut run = 0isize;
    for g in gap_diff.iter().take(m.saturating_sub(1)) {
        run += g;
        between.push(run as usize);
    }
    (distinct, at, between)
}

pub(crate) fn raw_sweep(p: &VPolytope, u: &[BigInt]) -> RawSweep {
    match Projection::new(p, u) {
        Projection::Small(v) => {
            let (levels, at_level, between) = sweep_sorted(&v, p.edges());
            RawSweep {
                levels: levels.into_iter().map(BigInt::from).collect(),
                at_level,
                between,
            }
        }
        Projection::Big(v) => {
            let (levels, at_level, between) = sweep_sorted(&v, p.edges());
            RawSweep {
                levels,
                at_level,
                between,
            }
        }
    }
}

/// Profile of `cv` along direction `u`. `cv` is constant strictly between
/// consecutive levels, so the midpoint stands for the whole open interval.
pub fn sweep(p: &VPolytope, u: &RVector) -> Result<SweepProfile> {
    check_dim(p, u.dim())?;
    if u.is_zero() {
        return Err(Error::InvalidInput(
            "sweep direction must be nonzero".into(),
        ));
    }
    let ui = integer_direction(u);
    let raw = raw_sweep(p, &ui);
    let scale = Rational::from_int(&p.frame().scale * u.denominator_lcm());
    let levels: Vec<Rational> = raw
        .levels
        .iter()
        .map(|l| &Rational::from_int(l.clone()) / &scale)
        .collect();
    let profile = SweepProfile {
        direction: u.clone(),
        levels,
        at_level: raw.at_level,
        between: raw.between,
    };
    #[cfg(debug_assertions)]
    for k in 0..profile.between.len() {
        // two interior sample points agree with the midpoint count
        let (a, b) = (&profile.levels[k], &profile.levels[k + 1]);
        let third = Rational::new(1, 3).expect("nonzero");
        let t1 = a + &(&(b - a) * &third);
        let t2 = b - &(&(b - a) * &third);
        for t in [t1, t2] {
            debug_assert_eq!(classify_direction(p, u, &t)?.cv(), profile.between[k]);
        }
    }
    Ok(profile)
}

/// A parallel hyperplane through no vertex whose slice has
/// at least as many vertices. Moves halfway to the next vertex level, toward
/// the side with more vertices (ties go above); a tangent hyperplane moves
/// toward the polytope.
pub fn nudge_off_vertices(p: &VPolytope, h: &Hyperplane) -> Result<Hyperplane> {
    let part = classify(p, h)?;
    if !part.meets() {
        return Err(Error::NoIntersection);
    }
    if part.on.is_empty() {
        return Ok(h.clone());
    }
    if part.below.is_empty() && part.above.is_empty() {
        return Err(Error::Degenerate(
            "every vertex lies on the hyperplane".into(),
        ));
    }
    let up = part.above.len() >= part.below.len();
    let side = if up { &part.above } else { &part.below };
    let values = side.iter().map(|&i| h.normal().dot(&p.vertices()[i]));
    let mut next: Option<Rational> = None;
    for v in values {
        let v = v?;
        next = Some(match next {
            None => v,
            Some(n) if (up && v < n) || (!up && v > n) => v,
            Some(n) => n,
        });
    }
    let next = next.expect("side is nonempty");
    Ok(h.with_offset(h.offset().midpoint(&next)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cyclic, gale_facets, hypercube, tetrahedron, CyclicSpec};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn plane(u: &[i64], t: Rational) -> Hyperplane {
        Hyperplane::new(RVector::from_ints(u.iter().copied()), t).unwrap()
    }

    #[test]
    fn classify_examples() {
        let q2 = hypercube(2).unwrap();
        let part = classify(&q2, &plane(&[1, 1], r(1, 2))).unwrap();
        assert_eq!(part.below, vec![0]);
        assert!(part.on.is_empty());
        assert_eq!(part.above, vec![1, 2, 3]);
        assert_eq!(part.crossed.len(), 2);

        let q3 = hypercube(3).unwrap();
        let part = classify(&q3, &plane(&[1, 1, 1], r(1, 1))).unwrap();
        assert_eq!(part.on.len(), 3);
        assert!(part.crossed.is_empty());
    }

    #[test]
    fn cv_examples() {
        let q3 = hypercube(3).unwrap();
        assert_eq!(cv(&q3, &plane(&[1, 1, 1], r(3, 2))).unwrap(), 6);
        let q4 = hypercube(4).unwrap();
        assert_eq!(cv(&q4, &plane(&[1, 0, 0, 0], r(0, 1))).unwrap(), 8);
        // one vertex cut off Q_5
        let q5 = hypercube(5).unwrap();
        assert_eq!(cv(&q5, &plane(&[1, 1, 1, 1, 1], r(1, 2))).unwrap(), 5);
        assert!(matches!(
            cv(&q3, &plane(&[1, 0, 0], r(2, 1))),
            Err(Error::NoIntersection)
        ));
    }

    /// Independent oracle: cv at an arbitrary threshold straight from the
    /// definition, with rational arithmetic on the original coordinates.
    fn brute_cv(p: &VPolytope, u: &RVector, t: &Rational) -> usize {
        let s: Vec<i32> = p
            .vertices()
            .iter()
            .map(|v| (&u.dot(v).unwrap() - t).signum())
            .collect();
        s.iter().filter(|&&x| x == 0).count()
            + p.edges().iter().filter(|&&(i, j)| s[i] * s[j] < 0).count()
    }

    #[test]
    fn sweep_examples() {
        let q3 = hypercube(3).unwrap();
        let u = RVector::from_ints([1, 1, 1]);
        let prof = sweep(&q3, &u).unwrap();
        assert_eq!(prof.at_level, vec![1, 3, 3, 1]);
        assert_eq!(prof.between, vec![3, 6, 3]);
        for (k, l) in prof.levels.iter().enumerate() {
            assert_eq!(brute_cv(&q3, &u, l), prof.at_level[k]);
        }
        for k in 0..prof.between.len() {
            assert_eq!(brute_cv(&q3, &u, &prof.between_offset(k)), prof.between[k]);
        }

        // at levels 1 and 2 the line passes one vertex and crosses the
        // opposite vertical edge, so the interior levels count 2
        let q2 = hypercube(2).unwrap();
        let u = RVector::from_ints([1, 2]);
        let prof = sweep(&q2, &u).unwrap();
        assert_eq!(prof.at_level, vec![1, 2, 2, 1]);
        for (k, l) in prof.levels.iter().enumerate() {
            assert_eq!(brute_cv(&q2, &u, l), prof.at_level[k]);
        }
        assert_eq!(prof.between, vec![2, 2, 2]);
    }

    #[test]
    fn sweep_at_cyclic_facet_is_triangle() {
        let spec = CyclicSpec::new(3, 6).unwrap();
        let c = cyclic(&spec).unwrap();
        let f = &gale_facets(&spec)[0];
        let pts: Vec<RVector> = f.iter().map(|&i| c.vertices()[i].clone()).collect();
        let h = crate::exact::hyperplane_through(&pts, 3).unwrap();
        let prof = sweep(&c, h.normal()).unwrap();
        let ends = [prof.at_level[0], *prof.at_level.last().unwrap()];
        assert!(ends.contains(&3), "{ends:?}");
    }

    #[test]
    fn rational_vertices_and_directions() {
        let v = vec![
            RVector::new(vec![r(1, 3), r(0, 1)]),
            RVector::new(vec![r(0, 1), r(1, 2)]),
            RVector::new(vec![r(-1, 5), r(-1, 7)]),
        ];
        let p = VPolytope::new("tri", 2, v, vec![(0, 1), (1, 2), (0, 2)], None).unwrap();
        let u = RVector::new(vec![r(3, 2), r(-2, 3)]);
        let prof = sweep(&p, &u).unwrap();
        for (k, l) in prof.levels.iter().enumerate() {
            assert_eq!(brute_cv(&p, &u, l), prof.at_level[k]);
        }
        for k in 0..prof.between.len() {
            assert_eq!(brute_cv(&p, &u, &prof.between_offset(k)), prof.between[k]);
        }
    }

    #[test]
    fn nudge_examples() {
        let q3 = hypercube(3).unwrap();
        let h = plane(&[1, 1, 1], r(1, 1));
        let h2 = nudge_off_vertices(&q3, &h).unwrap();
        assert_eq!(h2.offset(), &r(3, 2));
        assert_eq!(cv(&q3, &h2).unwrap(), 6);

        let t = tetrahedron().unwrap();
        // tangent at (1,1,1)
        let h = plane(&[1, 1, 1], r(3, 1));
        assert_eq!(cv(&t, &h).unwrap(), 1);
        let h2 = nudge_off_vertices(&t, &h).unwrap();
        let part = classify(&t, &h2).unwrap();
        assert!(part.on.is_empty());
        assert_eq!(part.cv(), 3);

        // already vertex-free: unchanged
        let h = plane(&[1, 1, 1], r(1, 2));
        assert_eq!(nudge_off_vertices(&q3, &h).unwrap(), h);
    }
}
