//! Sweep-based slice sequences.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::directions::{
    canonical, facet_normal_directions, grid_with_top, subset_normal_directions,
};
use super::{DirectionGenerator, Provenance, VSSReport};
use crate::error::{Error, Result};
use crate::exact::{Hyperplane, Rational};
use crate::parallel::Parallelism;
use crate::polytope::{hypercube, VPolytope, MAX_CUBE_DIM};
use crate::slicer::raw_sweep;

/// Largest grid bound tried when stabilizing.
pub const DEFAULT_MAX_BOUND: usize = 40;

/// First offset (frame units) realizing each count along one direction.
fn direction_hits(p: &VPolytope, u: &[BigInt]) -> BTreeMap<usize, Rational> {
    let raw = raw_sweep(p, u);
    let mut hits = BTreeMap::new();
    for (k, &c) in raw.at_level.iter().enumerate() {
        hits.entry(c)
            .or_insert_with(|| Rational::from_int(raw.levels[k].clone()));
    }
    for (k, &c) in raw.between.iter().enumerate() {
        hits.entry(c).or_insert_with(|| {
            Rational::from_int(&raw.levels[k] + &raw.levels[k + 1]) / Rational::from_int(2)
        });
    }
    hits
}

type Hits = BTreeMap<usize, (Vec<BigInt>, Rational)>;

/// Sweeps every direction; the witness for a count comes from the earliest
/// direction realizing it, so the result does not depend on scheduling.
fn sweep_all(p: &VPolytope, dirs: &[Vec<BigInt>], par: Parallelism, into: &mut Hits) {
    let hits = par.map(dirs, |u| direction_hits(p, u));
    for (u, h) in dirs.iter().zip(hits) {
        for (c, off) in h {
            into.entry(c).or_insert_with(|| (u.clone(), off));
        }
    }
}

/// Sweeps `u_i + u_j` and `u_i - u_j` for `i < j`, visiting at most `budget`
/// directions. These land inside cones of the sweep arrangement whose rays
/// are the base normals: generic directions (a pentagonal cut of the cube)
/// and directions exposing lower-dimensional faces (the ridge between two
/// facets). Returns the number swept and whether the budget cut it short.
fn sweep_pairs(
    p: &VPolytope,
    base: &[Vec<BigInt>],
    budget: usize,
    par: Parallelism,
    into: &mut Hits,
) -> (usize, bool) {
    let n = base.len();
    let mut rows = 0;
    let mut swept = 0;
    while rows < n && swept + 2 * (n - 1 - rows) <= budget {
        swept += 2 * (n - 1 - rows);
        rows += 1;
    }
    let per_row = par.map_range(rows, |i| {
        let mut hits = Hits::new();
        for j in i + 1..n {
            for sign in [1, -1] {
                let u: Vec<BigInt> = base[i]
                    .iter()
                    .zip(&base[j])
                    .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                    .collect();
                if u.iter().all(Zero::is_zero) {
                    continue;
                }
                for (c, off) in direction_hits(p, &u) {
                    hits.entry(c).or_insert_with(|| (u.clone(), off));
                }
            }
        }
        hits
    });
    for h in per_row {
        for (c, w) in h {
            into.entry(c).or_insert(w);
        }
    }
    (swept, rows < n.saturating_sub(1))
}

fn into_witnesses(p: &VPolytope, hits: Hits) -> Result<BTreeMap<usize, Hyperplane>> {
    let scale = Rational::from_int(p.frame().scale.clone());
    hits.into_iter()
        .map(|(c, (u, off))| Ok((c, Hyperplane::from_direction(&u, &off / &scale)?)))
        .collect()
}

/// Union of sweep counts over the generator's directions. Never exhaustive.
pub fn vss_by_sweep(
    p: &VPolytope,
    gen: &DirectionGenerator,
    par: Parallelism,
) -> Result<VSSReport> {
    let (dirs, mut prov) = match gen {
        DirectionGenerator::SubsetNormals { budget, pairs } => {
            let set = subset_normal_directions(p, *budget, par)?;
            let mut hits = Hits::new();
            sweep_all(p, &set.directions, par, &mut hits);
            let mut prov = Provenance::new(gen.kind(), set.len());
            prov.truncated = set.truncated;
            prov.budget = Some(*budget);
            if *pairs {
                let (swept, cut) = sweep_pairs(p, &set.directions, *budget, par, &mut hits);
                prov.directions += swept;
                prov.truncated |= cut;
            }
            return Ok(VSSReport::new(p, into_witnesses(p, hits)?, prov, false));
        }
        DirectionGenerator::FacetNormals => {
            let set = facet_normal_directions(p);
            if set.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "{} carries no facets",
                    p.name()
                )));
            }
            let prov = Provenance::new(gen.kind(), set.len());
            (set.directions, prov)
        }
        DirectionGenerator::ExplicitList { directions } => {
            let mut set = BTreeSet::new();
            for u in directions {
                if u.dim() != p.dim() {
                    return Err(Error::InvalidInput(format!(
                        "direction {u:?} has dimension {}, polytope has {}",
                        u.dim(),
                        p.dim()
                    )));
                }
                if u.is_zero() {
                    return Err(Error::InvalidInput("zero direction".into()));
                }
                set.insert(canonical(u.cleared()));
            }
            let prov = Provenance::new(gen.kind(), set.len());
            (set.into_iter().collect(), prov)
        }
        DirectionGenerator::PositiveGrid { bound, max_bound } => {
            let g = hypercube_grid_sweep(p, *bound, *max_bound, par)?;
            let mut prov = Provenance::new(gen.kind(), g.directions);
            prov.bound = Some(g.bound);
            prov.stabilized = bound.is_none().then_some(g.stabilized);
            return Ok(VSSReport::new(p, g.witnesses, prov, false));
        }
    };
    let mut hits = Hits::new();
    sweep_all(p, &dirs, par, &mut hits);
    prov.directions = dirs.len();
    Ok(VSSReport::new(p, into_witnesses(p, hits)?, prov, false))
}

/// Result of a positive-grid sweep of a hypercube.
#[derive(Clone, Debug)]
pub struct GridSweep {
    pub witnesses: BTreeMap<usize, Hyperplane>,
    pub bound: usize,
    pub stabilized: bool,
    pub directions: usize,
}

fn is_unit_cube(p: &VPolytope) -> bool {
    let d = p.dim();
    if d > MAX_CUBE_DIM || p.num_vertices() != 1 << d {
        return false;
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let masks: BTreeSet<usize> = p
        .vertices()
        .iter()
        .filter_map(|v| {
            v.coords().iter().enumerate().try_fold(0usize, |m, (i, c)| {
                if *c == one {
                    Some(m | 1 << i)
                } else if *c == zero {
                    Some(m)
                } else {
                    None
                }
            })
        })
        .collect();
    masks.len() == 1 << d
}

/// Counts of one sub-cube `Q_k` under a growing positive grid.
struct SubCube {
    cube: VPolytope,
    hits: BTreeMap<usize, (Vec<usize>, Rational)>,
    swept: usize,
}

impl SubCube {
    fn grow(&mut self, top: usize, par: Parallelism) {
        let dirs = grid_with_top(self.cube.dim(), top);
        let big: Vec<Vec<BigInt>> = dirs
            .iter()
            .map(|u| u.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let hits = par.map(&big, |u| direction_hits(&self.cube, u));
        for (u, h) in dirs.into_iter().zip(hits) {
            for (c, off) in h {
                self.hits.entry(c).or_insert_with(|| (u.clone(), off));
            }
        }
        self.swept += big.len();
    }
}

/// Slice counts of `Q_d` from monotone positive grid directions of every
/// sub-cube `Q_k`, `k <= d`. A direction with `d - k` zero entries slices
/// `Q_d` into `2^(d-k)` copies of the `Q_k` slice, and coordinate
/// reflections and permutations reduce any other direction to a monotone
/// positive one.
pub fn hypercube_grid_sweep(
    p: &VPolytope,
    bound: Option<usize>,
    max_bound: usize,
    par: Parallelism,
) -> Result<GridSweep> {
    if !is_unit_cube(p) {
        return Err(Error::InvalidInput(format!(
            "positive-grid directions apply to the 0/1 hypercube, not {}",
            p.name()
        )));
    }
    let d = p.dim();
    let mut subs = (1..=d)
        .map(|k| {
            Ok(SubCube {
                cube: hypercube(k)?,
                hits: BTreeMap::new(),
                swept: 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let realized = |subs: &[SubCube]| -> BTreeSet<usize> {
        subs.iter()
            .enumerate()
            .flat_map(|(i, s)| s.hits.keys().map(move |&c| c << (d - 1 - i)))
            .collect()
    };
    let grow = |subs: &mut [SubCube], top: usize| {
        for s in subs.iter_mut() {
            s.grow(top, par);
        }
    };

    let (used, stabilized) = match bound {
        Some(b) => {
            if b == 0 {
                return Err(Error::InvalidInput("grid bound must be at least 1".into()));
            }
            for top in 1..=b {
                grow(&mut subs, top);
            }
            (b, true)
        }
        None => {
            grow(&mut subs, 1);
            let mut prev = realized(&subs);
            let mut found = None;
            for b in 1..max_bound {
                grow(&mut subs, b + 1);
                let next = realized(&subs);
                if next == prev {
                    found = Some(b);
                    break;
                }
                prev = next;
            }
            match found {
                Some(b) => (b, true),
                None => (max_bound, false),
            }
        }
    };

    // full-dimensional directions first
    let mut witnesses = BTreeMap::new();
    for (i, s) in subs.iter().enumerate().rev() {
        let mult = 1usize << (d - 1 - i);
        for (&c, (u, off)) in &s.hits {
            if let std::collections::btree_map::Entry::Vacant(e) = witnesses.entry(c * mult) {
                let mut dir: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
                dir.resize(d, BigInt::from(0));
                e.insert(Hyperplane::from_direction(&dir, off.clone())?);
            }
        }
    }
    Ok(GridSweep {
        witnesses,
        bound: used,
        stabilized,
        directions: subs.iter().map(|s| s.swept).sum(),
    })
}
