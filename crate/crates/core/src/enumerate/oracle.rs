//! Exhaustive census of hyperplane sign patterns on small polytopes.
//!
//! A hyperplane `a . x = b` induces a sign on every vertex. Sign vectors are
//! extended one vertex at a time; a partial vector survives only if the
//! homogeneous system `σ_i (a . v_i - b) > 0` (or `= 0`) is feasible, which
//! is decided exactly by Fourier–Motzkin. Every realizable pattern is
//! reached, so the realized set is complete.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Provenance, VSSReport};
use crate::error::{Error, Result};
use crate::exact::{solve, Hyperplane, RVector, Rational, DEFAULT_ROW_CAP};
use crate::parallel::Parallelism;
use crate::polytope::{big_sign, VPolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    pub max_vertices: usize,
    pub max_dim: usize,
    /// Fourier–Motzkin intermediate row cap.
    pub row_cap: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_vertices: 20,
            max_dim: 4,
            row_cap: DEFAULT_ROW_CAP,
        }
    }
}

/// Vertex counts below, on and above a hyperplane, and its slice count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartitionCounts {
    pub below: usize,
    pub on: usize,
    pub above: usize,
    pub cv: usize,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub partitions: BTreeSet<PartitionCounts>,
    pub report: VSSReport,
}

struct Census<'a> {
    /// `(scale * v_i, -1)`: the row whose sign against `(a, b)` is vertex `i`'s side.
    rows: Vec<Vec<BigInt>>,
    edges: &'a [(usize, usize)],
    cap: usize,
}

#[derive(Default)]
struct Tally {
    partitions: BTreeSet<PartitionCounts>,
    /// First witness per count, as integer `(a, b)`.
    witnesses: BTreeMap<usize, Vec<BigInt>>,
    leaves: usize,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.partitions.extend(other.partitions);
        for (c, w) in other.witnesses {
            self.witnesses.entry(c).or_insert(w);
        }
        self.leaves += other.leaves;
    }
}

#[derive(Clone)]
struct Node {
    signs: Vec<i8>,
    witness: Vec<BigInt>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Census<'_> {
    fn dims(&self) -> usize {
        self.rows[0].len()
    }

    /// A witness `(a, b)` for the partial sign vector, if one exists.
    fn realize(&self, signs: &[i8]) -> Result<Option<Vec<BigInt>>> {
        let one = BigInt::one();
        let mut weak = Vec::new();
        let mut eqs = Vec::new();
        for (row, &s) in self.rows.iter().zip(signs) {
            match s {
                0 => eqs.push((row.clone(), BigInt::zero())),
                1 => weak.push((row.clone(), one.clone())),
                _ => weak.push((row.iter().map(|x| -x).collect(), one.clone())),
            }
        }
        let Some(y) = solve(self.dims(), &weak, &eqs, self.cap)? else {
            return Ok(None);
        };
        Ok(Some(RVector::new(y).cleared()))
    }

    /// Children of `node` in sign order `-, 0, +`. Until the first nonzero
    /// sign appears only `+` is allowed for it: `-σ` is realizable whenever
    /// `σ` is, so the other half is recovered by flipping.
    fn children(&self, node: &Node) -> Result<Vec<Node>> {
        let k = node.signs.len();
        let have_nonzero = node.signs.iter().any(|&s| s != 0);
        let current = big_sign(&dot(&self.rows[k], &node.witness)) as i8;
        let mut out = Vec::new();
        for s in [-1i8, 0, 1] {
            if s == -1 && !have_nonzero {
                continue;
            }
            let mut signs = node.signs.clone();
            signs.push(s);
            let witness = if s == current {
                Some(node.witness.clone())
            } else {
                self.realize(&signs)?
            };
            if let Some(witness) = witness {
                out.push(Node { signs, witness });
            }
        }
        Ok(out)
    }

    fn leaf(&self, node: &Node, tally: &mut Tally) {
        tally.leaves += 1;
        let count = |t: i8| node.signs.iter().filter(|&&s| s == t).count();
        let (below, on, above) = (count(-1), count(0), count(1));
        // all zeros is the trivial a = 0 solution; without a zero or both
        // strict sides the hyperplane misses P
        if on == node.signs.len() || !(on > 0 || (below > 0 && above > 0)) {
            return;
        }
        let crossed = self
            .edges
            .iter()
            .filter(|&&(i, j)| node.signs[i] * node.signs[j] < 0)
            .count();
        let cv = on + crossed;
        tally.partitions.insert(PartitionCounts {
            below,
            on,
            above,
            cv,
        });
        tally.partitions.insert(PartitionCounts {
            below: above,
            on,
            above: below,
            cv,
        });
        tally
            .witnesses
            .entry(cv)
            .or_insert_with(|| node.witness.clone());
    }

    fn explore(&self, root: Node, tally: &mut Tally) -> Result<()> {
        let n = self.rows.len();
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            if node.signs.len() == n {
                self.leaf(&node, tally);
                continue;
            }
            // reversed so the `-` child is explored first
            stack.extend(self.children(&node)?.into_iter().rev());
        }
        Ok(())
    }
}

/// All realizable `(below, on, above, cv)` of `p` and an exhaustive report.
///
/// The two top levels of the sign tree are expanded up front and their
/// subtrees explored in parallel; results are merged in tree order, so the
/// output is identical for any job count.
pub fn partition_oracle(p: &VPolytope, caps: OracleCaps, par: Parallelism) -> Result<OracleResult> {
    let n = p.num_vertices();
    let d = p.dim();
    if n > caps.max_vertices || d > caps.max_dim {
        return Err(Error::CapExceeded(format!(
            "oracle caps are {} vertices and dimension {}; {} has {n} vertices in dimension {d}",
            caps.max_vertices,
            caps.max_dim,
            p.name()
        )));
    }
    let rows: Vec<Vec<BigInt>> = p
        .frame()
        .coords
        .iter()
        .map(|v| {
            let mut r = v.clone();
            r.push(-BigInt::one());
            r
        })
        .collect();
    let census = Census {
        rows,
        edges: p.edges(),
        cap: caps.row_cap,
    };

    let mut frontier = vec![Node {
        signs: Vec::new(),
        witness: vec![BigInt::zero(); d + 1],
    }];
    for _ in 0..2.min(n) {
        let mut next = Vec::new();
        for node in &frontier {
            next.extend(census.children(node)?);
        }
        frontier = next;
    }
    let tallies = par.map(&frontier, |node| {
        let mut t = Tally::default();
        census.explore(node.clone(), &mut t).map(|_| t)
    });
    let mut tally = Tally::default();
    for t in tallies {
        tally.merge(t?);
    }

    let scale = Rational::from_int(p.frame().scale.clone());
    let witnesses = tally
        .witnesses
        .into_iter()
        .map(|(c, w)| {
            let normal = RVector::new(
                w[..d]
                    .iter()
                    .map(|x| &Rational::from_int(x.clone()) * &scale)
                    .collect(),
            );
            Ok((
                c,
                Hyperplane::new(normal, Rational::from_int(w[d].clone()))?,
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let mut prov = Provenance::new("oracle", 0);
    prov.sign_vectors = Some(tally.leaves);
    Ok(OracleResult {
        partitions: tally.partitions,
        report: VSSReport::new(p, witnesses, prov, true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube3, hypercube, simplex, stack_all_facets, tetrahedron};
    use crate::slicer::classify;

    fn run(p: &VPolytope) -> OracleResult {
        let r = partition_oracle(p, OracleCaps::default(), Parallelism::sequential()).unwrap();
        r.report.replay(p).unwrap();
        assert!(r.report.exhaustive);
        r
    }

    #[test]
    fn triangle() {
        let r = run(&simplex(2).unwrap());
        assert_eq!(r.report.realized, [1, 2].into());
        assert!(r.report.gaps.is_empty());
    }

    #[test]
    fn tetrahedron_counts() {
        let r = run(&tetrahedron().unwrap());
        assert_eq!(r.report.realized, [1, 2, 3, 4].into());
        assert_eq!(r.report.nu, 4);
    }

    /// Partitions of the square: brute force over lines through lattice
    /// offsets agrees with the oracle's partition set.
    #[test]
    fn square_partitions_against_brute_force() {
        let q = hypercube(2).unwrap();
        let r = run(&q);
        let mut brute = BTreeSet::new();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a == 0 && b == 0 {
                    continue;
                }
                for t2 in -14i64..=14 {
                    let h =
                        Hyperplane::new(RVector::from_ints([a, b]), Rational::new(t2, 2).unwrap())
                            .unwrap();
                    let part = classify(&q, &h).unwrap();
                    if part.meets() {
                        brute.insert(PartitionCounts {
                            below: part.below.len(),
                            on: part.on.len(),
                            above: part.above.len(),
                            cv: part.cv(),
                        });
                    }
                }
            }
        }
        assert_eq!(r.partitions, brute);
    }

    #[test]
    fn cube_and_stacked_tetrahedron() {
        let r = run(&cube3().unwrap());
        assert_eq!(r.report.realized, (1..=6).collect());
        let s = stack_all_facets(&tetrahedron().unwrap()).unwrap();
        let r = run(&s);
        assert!(!r.report.realized.contains(&4));
    }

    #[test]
    fn parallel_is_deterministic() {
        let c = cube3().unwrap();
        let a = partition_oracle(&c, OracleCaps::default(), Parallelism::sequential()).unwrap();
        let b = partition_oracle(&c, OracleCaps::default(), Parallelism::new(4)).unwrap();
        assert_eq!(a.partitions, b.partitions);
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn caps_enforced() {
        let q5 = hypercube(5).unwrap();
        assert!(matches!(
            partition_oracle(&q5, OracleCaps::default(), Parallelism::sequential()),
            Err(Error::CapExceeded(_))
        ));
    }
}
