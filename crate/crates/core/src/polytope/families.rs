//! Generators for the polytope families used throughout.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::VPolytope;
use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};

/// Largest hypercube dimension the generator accepts.
pub const MAX_CUBE_DIM: usize = 16;

/// The 0/1 cube. Vertex `m` has coordinate `i` equal to bit `i` of `m`.
pub fn hypercube(d: usize) -> Result<VPolytope> {
    if !(1..=MAX_CUBE_DIM).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "hypercube dimension {d} outside 1..={MAX_CUBE_DIM}"
        )));
    }
    let n = 1usize << d;
    let vertices = (0..n)
        .map(|m| RVector::from_ints((0..d).map(|i| ((m >> i) & 1) as i64)))
        .collect();
    let mut edges = Vec::with_capacity(d * n / 2);
    for m in 0..n {
        for i in 0..d {
            let w = m | (1 << i);
            if w != m {
                edges.push((m, w));
            }
        }
    }
    let mut facets = Vec::with_capacity(2 * d);
    for i in 0..d {
        for bit in [0, 1] {
            facets.push((0..n).filter(|m| (m >> i) & 1 == bit).collect());
        }
    }
    VPolytope::new(format!("hypercube-{d}"), d, vertices, edges, Some(facets))
}

/// The standard simplex `conv(0, e_1, ..., e_d)`.
pub fn simplex(d: usize) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::InvalidInput(
            "simplex dimension must be at least 1".into(),
        ));
    }
    let mut vertices = vec![RVector::zeros(d)];
    vertices.extend((0..d).map(|i| RVector::unit(d, i)));
    let edges = (0..=d).tuple_combinations().collect();
    let facets = (0..=d).combinations(d).collect();
    VPolytope::new(format!("simplex-{d}"), d, vertices, edges, Some(facets))
}

/// `conv(±e_i)`; vertex `2i` is `e_i` and `2i + 1` is `-e_i`.
pub fn cross_polytope(d: usize) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::InvalidInput(
            "cross-polytope dimension must be at least 1".into(),
        ));
    }
    let mut vertices = Vec::with_capacity(2 * d);
    for i in 0..d {
        vertices.push(RVector::unit(d, i));
        vertices.push(RVector::unit(d, i).scale(&-Rational::one()));
    }
    let edges = (0..2 * d)
        .tuple_combinations()
        .filter(|&(a, b)| a / 2 != b / 2)
        .collect();
    let facets = (0..1usize << d)
        .map(|signs| (0..d).map(|i| 2 * i + ((signs >> i) & 1)).collect())
        .collect();
    VPolytope::new(
        format!("crosspolytope-{d}"),
        d,
        vertices,
        edges,
        Some(facets),
    )
}

fn from_points_checked(
    name: &str,
    points: Vec<RVector>,
    counts: (usize, usize, usize),
) -> Result<VPolytope> {
    let p = VPolytope::from_vertices(name, points)?;
    let found = (
        p.num_vertices(),
        p.edges().len(),
        p.facets().map_or(0, <[_]>::len),
    );
    if found != counts {
        return Err(Error::Geometry(format!(
            "{name}: expected (V, E, F) = {counts:?}, constructed {found:?}"
        )));
    }
    Ok(p)
}

/// Regular tetrahedron on alternate vertices of the `±1` cube.
pub fn tetrahedron() -> Result<VPolytope> {
    let pts = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    from_points_checked(
        "tetrahedron",
        pts.into_iter().map(RVector::from_ints).collect(),
        (4, 6, 4),
    )
}

/// The 0/1 cube in dimension 3, with cyclically ordered facets.
pub fn cube3() -> Result<VPolytope> {
    let pts = hypercube(3)?.vertices().to_vec();
    from_points_checked("cube", pts, (8, 12, 6))
}

pub fn octahedron() -> Result<VPolytope> {
    let pts = cross_polytope(3)?.vertices().to_vec();
    from_points_checked("octahedron", pts, (6, 12, 8))
}

/// Icosahedron on the cyclic permutations of `(0, ±1, ±φ)`, with φ replaced
/// by the convergent 987/610. The face lattice is checked on construction.
pub fn icosahedron_rational() -> Result<VPolytope> {
    let (a, b) = (610i64, 987i64);
    let mut pts = Vec::with_capacity(12);
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            pts.push(RVector::from_ints([0, s1 * a, s2 * b]));
            pts.push(RVector::from_ints([s1 * a, s2 * b, 0]));
            pts.push(RVector::from_ints([s2 * b, 0, s1 * a]));
        }
    }
    let p = from_points_checked("icosahedron", pts, (12, 30, 20))?;
    let facets = p.facets().expect("3d hull");
    if facets.iter().any(|f| f.len() != 3) || (0..12).any(|v| p.neighbors(v).len() != 5) {
        return Err(Error::Geometry(
            "icosahedron realization is not icosahedral".into(),
        ));
    }
    Ok(p)
}

/// Parameters of a cyclic polytope `C_d(n)`: points on the moment curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub d: usize,
    pub n: usize,
    pub params: Vec<Rational>,
}

impl CyclicSpec {
    /// Default parameters `t_i = i` for `i = 1..=n`.
    pub fn new(d: usize, n: usize) -> Result<Self> {
        CyclicSpec::with_params(d, (1..=n as i64).map(Rational::from_int).collect())
    }

    pub fn with_params(d: usize, params: Vec<Rational>) -> Result<Self> {
        let n = params.len();
        if d < 2 || n <= d {
            return Err(Error::InvalidInput(format!(
                "cyclic polytope needs d >= 2 and n > d, got d = {d}, n = {n}"
            )));
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "cyclic parameters must increase strictly".into(),
            ));
        }
        Ok(CyclicSpec { d, n, params })
    }

    /// The moment curve point `(t, t^2, ..., t^d)`.
    pub fn moment_point(&self, t: &Rational) -> RVector {
        RVector::new((1..=self.d as u32).map(|k| t.pow(k)).collect())
    }
}

/// Gale's evenness condition for a `d`-subset `s` of `0..n` (0-based): every
/// two indices outside `s` are separated by an even number of members of `s`.
pub fn gale_facet_check(s: &[usize], spec: &CyclicSpec) -> Result<bool> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != spec.d || s.len() != spec.d {
        return Err(Error::InvalidInput(format!(
            "facet candidate must have {} distinct indices, got {s:?}",
            spec.d
        )));
    }
    if sorted.last().is_some_and(|&m| m >= spec.n) {
        return Err(Error::InvalidInput(format!("index out of range in {s:?}")));
    }
    let outside: Vec<usize> = (0..spec.n).filter(|i| !sorted.contains(i)).collect();
    Ok(outside.windows(2).all(|w| {
        let between = sorted.iter().filter(|&&k| w[0] < k && k < w[1]).count();
        between % 2 == 0
    }))
}

/// All facets of `C_d(n)` predicted by Gale's evenness condition.
pub fn gale_facets(spec: &CyclicSpec) -> Vec<Vec<usize>> {
    (0..spec.n)
        .combinations(spec.d)
        .filter(|s| gale_facet_check(s, spec).expect("valid subset"))
        .collect()
}

/// The cyclic polytope for `spec`, with Gale facets.
pub fn cyclic(spec: &CyclicSpec) -> Result<VPolytope> {
    let vertices: Vec<RVector> = spec.params.iter().map(|t| spec.moment_point(t)).collect();
    let facets = gale_facets(spec);
    let n = spec.n;
    let edges: Vec<(usize, usize)> = match spec.d {
        2 => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        3 => facets
            .iter()
            .flat_map(|f| f.iter().copied().tuple_combinations::<(usize, usize)>())
            .collect(),
        _ => (0..n).tuple_combinations().collect(),
    };
    VPolytope::new(
        format!("cyclic-{}-{}", spec.d, spec.n),
        spec.d,
        vertices,
        edges,
        Some(facets),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{compute_edges, supporting_facets};

    #[test]
    fn cube_counts() {
        let q2 = hypercube(2).unwrap();
        assert_eq!((q2.num_vertices(), q2.edges().len()), (4, 4));
        let q3 = hypercube(3).unwrap();
        assert_eq!(
            (
                q3.num_vertices(),
                q3.edges().len(),
                q3.facets().unwrap().len()
            ),
            (8, 12, 6)
        );
        let q7 = hypercube(7).unwrap();
        assert_eq!((q7.num_vertices(), q7.edges().len()), (128, 7 * 64));
        assert!(hypercube(0).is_err());
        assert!(hypercube(17).is_err());
    }

    #[test]
    fn platonic_counts() {
        let o = octahedron().unwrap();
        assert_eq!(
            (o.num_vertices(), o.edges().len(), o.facets().unwrap().len()),
            (6, 12, 8)
        );
        let i = icosahedron_rational().unwrap();
        assert_eq!(
            (i.num_vertices(), i.edges().len(), i.facets().unwrap().len()),
            (12, 30, 20)
        );
        assert!((0..12).all(|v| i.neighbors(v).len() == 5));
        let c = cube3().unwrap();
        assert!(c.facets().unwrap().iter().all(|f| f.len() == 4));
        let t = tetrahedron().unwrap();
        assert_eq!(t.edges().len(), 6);
    }

    #[test]
    fn families_have_only_extreme_vertices() {
        for p in [
            hypercube(3).unwrap(),
            simplex(3).unwrap(),
            cross_polytope(4).unwrap(),
            icosahedron_rational().unwrap(),
            cyclic(&CyclicSpec::new(4, 7).unwrap()).unwrap(),
        ] {
            p.check_extreme().unwrap();
        }
    }

    #[test]
    fn cyclic_counts() {
        let c36 = cyclic(&CyclicSpec::new(3, 6).unwrap()).unwrap();
        assert_eq!(c36.num_vertices(), 6);
        assert_eq!(c36.facets().unwrap().len(), 8);
        assert_eq!(c36.edges().len(), 12);
        // Euler: V - E + F = 2
        assert_eq!(6 + 8, 12 + 2);
        let c47 = cyclic(&CyclicSpec::new(4, 7).unwrap()).unwrap();
        assert_eq!(c47.edges().len(), 21);
    }

    #[test]
    fn cyclic_edges_match_lp_oracle() {
        for (d, n) in [(2, 5), (3, 6), (3, 7), (4, 7)] {
            let c = cyclic(&CyclicSpec::new(d, n).unwrap()).unwrap();
            assert_eq!(
                compute_edges(c.vertices()).unwrap(),
                c.edges(),
                "C_{d}({n})"
            );
        }
    }

    #[test]
    fn gale_examples() {
        let spec = CyclicSpec::new(4, 6).unwrap();
        assert!(gale_facet_check(&[0, 1, 2, 3], &spec).unwrap());
        assert!(!gale_facet_check(&[0, 1, 2, 4], &spec).unwrap());
        assert!(gale_facet_check(&[0, 1, 2], &spec).is_err());
        assert!(gale_facet_check(&[0, 1, 2, 9], &spec).is_err());
    }

    #[test]
    fn gale_matches_supporting_hyperplanes_small() {
        for (d, n) in [(3, 5), (3, 6), (4, 6)] {
            let spec = CyclicSpec::new(d, n).unwrap();
            let c = cyclic(&spec).unwrap();
            assert_eq!(gale_facets(&spec), supporting_facets(c.vertices()).unwrap());
        }
    }

    #[test]
    fn custom_parameters_are_validated() {
        let bad = vec![
            Rational::from_int(1),
            Rational::from_int(1),
            Rational::from_int(2),
            Rational::from_int(3),
        ];
        assert!(CyclicSpec::with_params(3, bad).is_err());
        assert!(CyclicSpec::new(3, 3).is_err());
        let spec = CyclicSpec::with_params(
            3,
            [-2, -1, 0, 1, 3]
                .into_iter()
                .map(Rational::from_int)
                .collect(),
        )
        .unwrap();
        let c = cyclic(&spec).unwrap();
        assert_eq!(supporting_facets(c.vertices()).unwrap(), gale_facets(&spec));
    }
}
