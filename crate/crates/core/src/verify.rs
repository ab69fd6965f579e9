//! Reproduction harness: one check per acceptance criterion plus the seeded
//! fuzzers behind the slicer properties.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::{
    gap_certificate, hypercube_grid_sweep, partition_oracle, vss_by_sweep, DirectionGenerator,
    OracleCaps, DEFAULT_MAX_BOUND,
};
use crate::error::{Error, Result};
use crate::exact::{hyperplane_through, Hyperplane, RVector, Rational};
use crate::parallel::Parallelism;
use crate::polytope::{
    cross_polytope, cube3, cyclic, gale_facets, hypercube, icosahedron_rational, octahedron,
    simplex, stack_all_facets, stack_times, supporting_facets, tetrahedron, CyclicSpec, VPolytope,
};
use crate::poset::{build_slicing_poset, oneil_poset, poset_isomorphic, slice_elements};
use crate::slicer::{classify, cv, nudge_off_vertices, sweep, SlicePartition};
use crate::theory::{
    cyclic_vss, gale_sign_pattern, golden_table, hypercube_first_gaps, hypercube_penultimate_gap,
    hypercube_width, GaleSide,
};

pub const SEED: u64 = 0x5eed_2025;
pub const FUZZ_CASES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Full,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(Error::InvalidInput(format!(
                "unknown suite {s:?} (expected fast or full)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

pub const CRITERIA: [&str; 11] = [
    "cyclic formula vs oracle",
    "C_4(10) by subset-normal sweep",
    "hypercube rows d <= 4 by oracle",
    "hypercube row d = 5 by grid sweep",
    "hypercube row d = 6 by sweep and theory",
    "slices are maximal antichains",
    "slicer fuzz properties",
    "O'Neil poset equivalence",
    "stacked polytope gaps by oracle",
    "gap certificates and persistence",
    "Gale evenness",
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, suite: Suite, par: Parallelism) -> CriterionReport {
    let start = Instant::now();
    let outcome = match id {
        1 => c1_cyclic_oracle(par),
        2 => c2_cyclic_sweep(par),
        3 => c3_small_cubes(par),
        4 => c4_q5(par),
        5 => c5_q6(suite, par),
        6 => c6_antichains(),
        7 => c7_fuzz(if suite == Suite::Full {
            10 * FUZZ_CASES
        } else {
            FUZZ_CASES
        }),
        8 => c8_oneil(),
        9 => c9_stacked(suite, par),
        10 => c10_certificates(par),
        11 => c11_gale(),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport {
        id,
        name: CRITERIA
            .get(id.wrapping_sub(1))
            .unwrap_or(&"unknown")
            .to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// All criteria in order; `progress` sees each report as it completes.
pub fn run_suite(
    suite: Suite,
    par: Parallelism,
    mut progress: impl FnMut(&CriterionReport),
) -> Vec<CriterionReport> {
    (1..=CRITERIA.len())
        .map(|id| {
            let r = run_criterion(id, suite, par);
            progress(&r);
            r
        })
        .collect()
}

type Check = std::result::Result<String, String>;

fn e2s(e: Error) -> String {
    e.to_string()
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    format!("{s:?}")
}

fn c1_cyclic_oracle(par: Parallelism) -> Check {
    let mut out = Vec::new();
    for (d, n) in [(3, 5), (3, 6), (3, 7), (4, 6), (4, 7)] {
        let p = cyclic(&CyclicSpec::new(d, n).map_err(e2s)?).map_err(e2s)?;
        let r = partition_oracle(&p, OracleCaps::default(), par).map_err(e2s)?;
        r.report.replay(&p).map_err(e2s)?;
        let want = cyclic_vss(d, n).map_err(e2s)?;
        if r.report.realized != want {
            return Err(format!(
                "C_{d}({n}): oracle {} vs formula {}",
                fmt_set(&r.report.realized),
                fmt_set(&want)
            ));
        }
        out.push(format!("C_{d}({n}) nu={}", r.report.nu));
    }
    Ok(out.join(", "))
}

fn c2_cyclic_sweep(par: Parallelism) -> Check {
    let p = cyclic(&CyclicSpec::new(4, 10).map_err(e2s)?).map_err(e2s)?;
    let r = vss_by_sweep(&p, &DirectionGenerator::subset_normals(), par).map_err(e2s)?;
    r.replay(&p).map_err(e2s)?;
    let want: BTreeSet<usize> = [1, 2, 3, 4, 9, 12, 13, 14, 15, 16, 17, 18, 19, 21, 24, 25].into();
    if r.realized != want {
        return Err(format!(
            "sweep {} vs {}",
            fmt_set(&r.realized),
            fmt_set(&want)
        ));
    }
    Ok(format!(
        "{} directions, realized {}",
        r.generator.directions,
        fmt_set(&r.realized)
    ))
}

fn c3_small_cubes(par: Parallelism) -> Check {
    let mut out = Vec::new();
    for d in 2..=4 {
        let q = hypercube(d).map_err(e2s)?;
        let r = partition_oracle(&q, OracleCaps::default(), par).map_err(e2s)?;
        r.report.replay(&q).map_err(e2s)?;
        let g = golden_table(d).map_err(e2s)?;
        if r.report.nu != g.nu || r.report.gaps != g.gaps {
            return Err(format!(
                "Q_{d}: nu={} gaps={}",
                r.report.nu,
                fmt_set(&r.report.gaps)
            ));
        }
        // even-d parity: every vertex-free cut is even
        if d % 2 == 0 {
            if let Some(bad) = r.partitions.iter().find(|c| c.on == 0 && c.cv % 2 == 1) {
                return Err(format!("Q_{d}: odd vertex-free cut {bad:?}"));
            }
        }
        out.push(format!("Q_{d} nu={} gaps={}", g.nu, fmt_set(&g.gaps)));
    }
    Ok(out.join(", "))
}

fn c4_q5(par: Parallelism) -> Check {
    let q = hypercube(5).map_err(e2s)?;
    let g = hypercube_grid_sweep(&q, None, DEFAULT_MAX_BOUND, par).map_err(e2s)?;
    if !g.stabilized {
        return Err(format!("grid did not stabilize by bound {}", g.bound));
    }
    let realized: BTreeSet<usize> = g.witnesses.keys().copied().collect();
    let row = golden_table(5).map_err(e2s)?;
    if realized != row.realized() {
        return Err(format!(
            "sweep {} vs table {}",
            fmt_set(&realized),
            fmt_set(&row.realized())
        ));
    }
    let first = hypercube_first_gaps(5).map_err(e2s)?;
    if first != row.gaps {
        return Err(format!(
            "first gaps {} vs table {}",
            fmt_set(&first),
            fmt_set(&row.gaps)
        ));
    }
    for (&c, h) in &g.witnesses {
        if cv(&q, h).map_err(e2s)? != c {
            return Err(format!("witness for {c} does not replay"));
        }
    }
    Ok(format!(
        "stabilized at B={} over {} directions; gaps {}",
        g.bound,
        g.directions,
        fmt_set(&first)
    ))
}

fn hypercube_row_by_sweep(
    d: usize,
    par: Parallelism,
) -> std::result::Result<(BTreeSet<usize>, usize), String> {
    let q = hypercube(d).map_err(e2s)?;
    let g = hypercube_grid_sweep(&q, None, DEFAULT_MAX_BOUND, par).map_err(e2s)?;
    for (&c, h) in &g.witnesses {
        if cv(&q, h).map_err(e2s)? != c {
            return Err(format!("Q_{d} witness for {c} does not replay"));
        }
    }
    Ok((g.witnesses.keys().copied().collect(), g.bound))
}

fn c5_q6(suite: Suite, par: Parallelism) -> Check {
    let row = golden_table(6).map_err(e2s)?;
    let (realized, bound) = hypercube_row_by_sweep(6, par)?;
    let mut theory = hypercube_first_gaps(6).map_err(e2s)?;
    theory.insert(hypercube_penultimate_gap(6).map_err(e2s)? as usize);
    if theory != row.gaps {
        return Err(format!(
            "theory gaps {} vs table {}",
            fmt_set(&theory),
            fmt_set(&row.gaps)
        ));
    }
    if realized != row.realized() {
        return Err(format!(
            "Q_6 sweep {} vs table {}",
            fmt_set(&realized),
            fmt_set(&row.realized())
        ));
    }
    let r7 = golden_table(7).map_err(e2s)?;
    if hypercube_width(7).map_err(e2s)? != 140 || hypercube_first_gaps(7).map_err(e2s)? != r7.gaps {
        return Err("Q_7 formula check failed".into());
    }
    let mut detail = format!(
        "Q_6 sweep stabilized at B={bound}; theory gaps {}; Q_7 formulas match",
        fmt_set(&theory)
    );
    if suite == Suite::Full {
        let (r, b) = hypercube_row_by_sweep(7, par)?;
        if r != r7.realized() {
            return Err(format!("Q_7 sweep {} vs table", fmt_set(&r)));
        }
        detail.push_str(&format!("; Q_7 sweep reproduces the row at B={b}"));
    }
    Ok(detail)
}

fn family() -> Result<Vec<VPolytope>> {
    Ok(vec![
        hypercube(3)?,
        hypercube(4)?,
        octahedron()?,
        icosahedron_rational()?,
        cyclic(&CyclicSpec::new(3, 7)?)?,
        stack_all_facets(&tetrahedron()?)?,
    ])
}

fn random_direction(rng: &mut ChaCha8Rng, d: usize, range: i64) -> RVector {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-range..=range)).collect();
        if v.iter().any(|&x| x != 0) {
            return RVector::from_ints(v);
        }
    }
}

/// Thresholds of a sweep: every level and a point inside every gap.
fn thresholds(p: &VPolytope, u: &RVector) -> Result<Vec<Rational>> {
    let prof = sweep(p, u)?;
    let mut ts = prof.levels.clone();
    ts.extend((0..prof.between.len()).map(|k| prof.between_offset(k)));
    Ok(ts)
}

fn c6_antichains() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut checked = 0;
    for p in family().map_err(e2s)? {
        for _ in 0..200 {
            let u = random_direction(&mut rng, p.dim(), 9);
            let poset = build_slicing_poset(&p, &u).map_err(e2s)?;
            for t in thresholds(&p, &u).map_err(e2s)? {
                let s = slice_elements(&poset, &p, &t).map_err(e2s)?;
                if !poset.is_maximal_antichain(&s) {
                    return Err(format!(
                        "{} u={u:?} t={t}: slice is not a maximal antichain",
                        p.name()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} slices over 6 polytopes x 200 directions"
    ))
}

/// A hyperplane orthogonal to `u` meeting `p`: at a vertex level or strictly
/// inside a gap between levels.
fn random_slice(
    rng: &mut ChaCha8Rng,
    p: &VPolytope,
    u: &RVector,
    vertex_free: bool,
) -> Result<Hyperplane> {
    let t = random_offset(rng, p, u, vertex_free)?;
    Ok(Hyperplane::new(u.clone(), t)?)
}

/// Offset `t` of `u . x = t` (caller's orientation and scale).
fn random_offset(
    rng: &mut ChaCha8Rng,
    p: &VPolytope,
    u: &RVector,
    vertex_free: bool,
) -> Result<Rational> {
    let prof = sweep(p, u)?;
    let m = prof.levels.len();
    Ok(if m == 1 || (!vertex_free && rng.gen_bool(0.3)) {
        prof.levels[rng.gen_range(0..m)].clone()
    } else {
        let k = rng.gen_range(0..m - 1);
        let w = Rational::new(rng.gen_range(1..=9), 10).expect("nonzero");
        let (a, b) = (&prof.levels[k], &prof.levels[k + 1]);
        a + &(&(b - a) * &w)
    })
}

fn induced_connected(p: &VPolytope, side: &[usize]) -> bool {
    let inside: BTreeSet<usize> = side.iter().copied().collect();
    let Some(&start) = side.first() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in p.neighbors(v) {
            if inside.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == inside.len()
}

fn check_partition(
    p: &VPolytope,
    h: &Hyperplane,
    part: &SlicePartition,
) -> std::result::Result<(), String> {
    let mut all: Vec<usize> = part
        .below
        .iter()
        .chain(&part.on)
        .chain(&part.above)
        .copied()
        .collect();
    all.sort_unstable();
    if all != (0..p.num_vertices()).collect::<Vec<_>>() {
        return Err(format!(
            "{} {h:?}: sides do not partition the vertices",
            p.name()
        ));
    }
    let below: BTreeSet<usize> = part.below.iter().copied().collect();
    let above: BTreeSet<usize> = part.above.iter().copied().collect();
    let crossing = p
        .edges()
        .iter()
        .filter(|(i, j)| {
            (below.contains(i) && above.contains(j)) || (below.contains(j) && above.contains(i))
        })
        .count();
    if crossing != part.crossed.len() {
        return Err(format!("{} {h:?}: crossed edges miscounted", p.name()));
    }
    Ok(())
}

/// Partition invariants, connectivity of both sides and the vertex nudge on
/// family polytopes.
pub fn fuzz_general(cases: usize, seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys = family().map_err(e2s)?;
    polys.push(cyclic(&CyclicSpec::new(4, 8).map_err(e2s)?).map_err(e2s)?);
    polys.push(cross_polytope(4).map_err(e2s)?);
    polys.push(simplex(3).map_err(e2s)?);
    let (mut split, mut nudged) = (0, 0);
    for _ in 0..cases {
        let p = polys.choose(&mut rng).expect("nonempty");
        let u = random_direction(&mut rng, p.dim(), 7);
        let h = random_slice(&mut rng, p, &u, false).map_err(e2s)?;
        let part = classify(p, &h).map_err(e2s)?;
        check_partition(p, &h, &part)?;
        if !part.below.is_empty() && !part.above.is_empty() {
            split += 1;
            if !induced_connected(p, &part.below) || !induced_connected(p, &part.above) {
                return Err(format!(
                    "{} {h:?}: a side induces a disconnected subgraph",
                    p.name()
                ));
            }
        }
        if !part.on.is_empty() {
            nudged += 1;
            let n = nudge_off_vertices(p, &h).map_err(e2s)?;
            let after = classify(p, &n).map_err(e2s)?;
            if !after.on.is_empty() || after.cv() < part.cv() {
                return Err(format!(
                    "{} {h:?}: nudge gave {} < {}",
                    p.name(),
                    after.cv(),
                    part.cv()
                ));
            }
        }
    }
    Ok(format!(
        "partition {cases}, connectivity {split}, nudge {nudged}"
    ))
}

/// Vertex-free cuts of even-dimensional cubes are even.
pub fn fuzz_parity(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubes: Vec<VPolytope> = [2, 4, 6]
        .iter()
        .map(|&d| hypercube(d))
        .collect::<Result<_>>()
        .map_err(e2s)?;
    for _ in 0..cases {
        let q = cubes.choose(&mut rng).expect("nonempty");
        let u = random_direction(&mut rng, q.dim(), 9);
        let h = random_slice(&mut rng, q, &u, true).map_err(e2s)?;
        let part = classify(q, &h).map_err(e2s)?;
        if part.on.is_empty() && part.cv() % 2 == 1 {
            return Err(format!("Q_{} {h:?}: odd cut {}", q.dim(), part.cv()));
        }
    }
    Ok(format!("parity {cases}"))
}

/// `i` zero entries multiply every count by `2^i`.
pub fn fuzz_zero_entries(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = rng.gen_range(2..=6);
        let i = rng.gen_range(1..=3usize.min(d - 1));
        let mut zero: Vec<usize> = (0..d).collect();
        zero.shuffle(&mut rng);
        zero.truncate(i);
        let small = random_nonzero(&mut rng, d - i, 7);
        let mut full = Vec::with_capacity(d);
        let mut it = small.iter();
        for k in 0..d {
            full.push(if zero.contains(&k) {
                0
            } else {
                *it.next().expect("enough")
            });
        }
        let qs = hypercube(d - i).map_err(e2s)?;
        let qd = hypercube(d).map_err(e2s)?;
        let us = RVector::from_ints(small.clone());
        let t = random_offset(&mut rng, &qs, &us, false).map_err(e2s)?;
        let hs = Hyperplane::new(us, t.clone()).map_err(|e| e.to_string())?;
        let hd = Hyperplane::new(RVector::from_ints(full.clone()), t).map_err(|e| e.to_string())?;
        let (ps, pd) = (
            classify(&qs, &hs).map_err(e2s)?,
            classify(&qd, &hd).map_err(e2s)?,
        );
        let m = 1 << i;
        let ok = pd.cv() == m * ps.cv()
            && (pd.below.len() == m * ps.below.len() && pd.above.len() == m * ps.above.len()
                || pd.below.len() == m * ps.above.len() && pd.above.len() == m * ps.below.len());
        if !ok {
            return Err(format!(
                "Q_{d} u={full:?}: cv {} vs 2^{i} * {}",
                pd.cv(),
                ps.cv()
            ));
        }
    }
    Ok(format!("zero-entry {cases}"))
}

fn random_nonzero(rng: &mut ChaCha8Rng, d: usize, range: i64) -> Vec<i64> {
    (0..d)
        .map(|_| loop {
            let x = rng.gen_range(-range..=range);
            if x != 0 {
                break x;
            }
        })
        .collect()
}

/// Lifting a `Q_d` slice through `(p_i, 0)` and `(p_1, t)` doubles its count.
pub fn fuzz_doubling(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = rng.gen_range(2..=5);
        let q = hypercube(d).map_err(e2s)?;
        let q1 = hypercube(d + 1).map_err(e2s)?;
        let u = random_direction(&mut rng, d, 7);
        let h = random_slice(&mut rng, &q, &u, false).map_err(e2s)?;
        let k = cv(&q, &h).map_err(e2s)?;
        let pts = spanning_points(&h);
        let mut lifted: Vec<RVector> = pts.iter().map(|p| p.extended(Rational::zero())).collect();
        let t = loop {
            let t = rng.gen_range(-5i64..=5);
            if t != 0 {
                break t;
            }
        };
        lifted.push(pts[0].extended(Rational::from_int(t)));
        let lift = hyperplane_through(&lifted, d + 1).map_err(|e| e.to_string())?;
        let got = cv(&q1, &lift).map_err(e2s)?;
        if got != 2 * k {
            return Err(format!("Q_{d} {h:?}: lift has {got}, expected {}", 2 * k));
        }
    }
    Ok(format!("doubling {cases}"))
}

/// `d` affinely independent points spanning `h`.
fn spanning_points(h: &Hyperplane) -> Vec<RVector> {
    let a = h.normal();
    let d = a.dim();
    let j = (0..d).find(|&j| !a[j].is_zero()).expect("nonzero normal");
    let mut p0 = vec![Rational::zero(); d];
    p0[j] = h.offset() / &a[j];
    let p0 = RVector::new(p0);
    let mut pts = vec![p0.clone()];
    for i in (0..d).filter(|&i| i != j) {
        let mut w = vec![Rational::zero(); d];
        w[i] = Rational::one();
        w[j] = -(&a[i] / &a[j]);
        pts.push(p0.add(&RVector::new(w)).expect("same dim"));
    }
    pts
}

/// The lighter side's antipodes all lie strictly on the heavier side.
pub fn fuzz_antipodal(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = rng.gen_range(2..=6);
        let q = hypercube(d).map_err(e2s)?;
        let u = random_direction(&mut rng, d, 9);
        let h = random_slice(&mut rng, &q, &u, false).map_err(e2s)?;
        let part = classify(&q, &h).map_err(e2s)?;
        let (light, heavy) = if part.below.len() <= part.above.len() {
            (&part.below, &part.above)
        } else {
            (&part.above, &part.below)
        };
        let all = (1usize << d) - 1;
        if let Some(v) = light.iter().find(|&&v| !heavy.contains(&(v ^ all))) {
            return Err(format!("Q_{d} {h:?}: antipode of {v:b} is not across"));
        }
    }
    Ok(format!("antipodal {cases}"))
}

/// With at least four vertices strictly on each side, `cv >= 4d - 9`.
pub fn fuzz_lower_bound(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < cases {
        attempts += 1;
        if attempts > 50 * cases {
            return Err(format!(
                "only {done} qualifying hyperplanes in {attempts} attempts"
            ));
        }
        let d = rng.gen_range(4..=7);
        let q = hypercube(d).map_err(e2s)?;
        let u = random_direction(&mut rng, d, 9);
        let h = random_slice(&mut rng, &q, &u, false).map_err(e2s)?;
        let part = classify(&q, &h).map_err(e2s)?;
        if part.below.len() < 4 || part.above.len() < 4 {
            continue;
        }
        done += 1;
        if part.cv() < 4 * d - 9 {
            return Err(format!("Q_{d} {h:?}: cv {} < {}", part.cv(), 4 * d - 9));
        }
    }
    Ok(format!("4d-9 {cases}"))
}

fn c7_fuzz(cases: usize) -> Check {
    type Fuzzer = fn(usize, u64) -> Check;
    let runs: [(&str, Fuzzer); 6] = [
        ("general", fuzz_general),
        ("parity", fuzz_parity),
        ("zero-entry", fuzz_zero_entries),
        ("doubling", fuzz_doubling),
        ("antipodal", fuzz_antipodal),
        ("lower-bound", fuzz_lower_bound),
    ];
    let mut out = Vec::new();
    for (k, (name, f)) in runs.iter().enumerate() {
        out.push(f(cases, SEED + k as u64).map_err(|e| format!("{name}: {e}"))?);
    }
    Ok(out.join("; "))
}

fn c8_oneil() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for d in 2..=5 {
        let q = hypercube(d).map_err(e2s)?;
        let o = oneil_poset(d).map_err(e2s)?;
        for mixed in [false, true] {
            for _ in 0..50 {
                let u: Vec<i64> = if mixed {
                    random_nonzero(&mut rng, d, 9)
                } else {
                    (0..d).map(|_| rng.gen_range(1..=9)).collect()
                };
                let poset = build_slicing_poset(&q, &RVector::from_ints(u.clone())).map_err(e2s)?;
                let iso = poset_isomorphic(&poset, &o);
                if !iso.isomorphic {
                    return Err(format!(
                        "Q_{d} u={u:?}: {}",
                        iso.diagnostic.unwrap_or_default()
                    ));
                }
            }
        }
        let w = o.width().map_err(e2s)? as u128;
        if w != hypercube_width(d).map_err(e2s)? {
            return Err(format!("width of O'Neil poset for d={d} is {w}"));
        }
    }
    Ok("400 directions isomorphic; widths 2, 6, 12, 30".into())
}

fn c9_stacked(suite: Suite, par: Parallelism) -> Check {
    let mut out = Vec::new();
    for (base, missing) in [(tetrahedron(), 4), (cube3(), 5), (octahedron(), 5)] {
        let s = stack_all_facets(&base.map_err(e2s)?).map_err(e2s)?;
        let r = partition_oracle(&s, OracleCaps::default(), par).map_err(e2s)?;
        r.report.replay(&s).map_err(e2s)?;
        if r.report.realized.contains(&missing) {
            return Err(format!("{} realizes {missing}", s.name()));
        }
        out.push(format!("{}: gaps {}", s.name(), fmt_set(&r.report.gaps)));
    }
    // beyond oracle caps: sweep evidence only, never exhaustive
    let si = stack_all_facets(&icosahedron_rational().map_err(e2s)?).map_err(e2s)?;
    if partition_oracle(&si, OracleCaps::default(), par).is_ok() {
        return Err("oracle accepted a 32-vertex polytope".into());
    }
    let budget = if suite == Suite::Full {
        20_000_000
    } else {
        1_000_000
    };
    let gen = DirectionGenerator::SubsetNormals {
        budget,
        pairs: true,
    };
    let r = vss_by_sweep(&si, &gen, par).map_err(e2s)?;
    r.replay(&si).map_err(e2s)?;
    if r.exhaustive {
        return Err("sweep report for stacked icosahedron claims exhaustiveness".into());
    }
    if let Some(c) = [4, 6].into_iter().find(|c| r.realized.contains(c)) {
        return Err(format!("{} realizes {c}", si.name()));
    }
    out.push(format!(
        "{} (sweep, not exhaustive, {} directions): unrealized {}",
        si.name(),
        r.generator.directions,
        fmt_set(&r.gaps)
    ));
    Ok(out.join("; "))
}

fn c10_certificates(par: Parallelism) -> Check {
    let ico = icosahedron_rational().map_err(e2s)?;
    let out = gap_certificate(&ico, 4, 5).map_err(e2s)?;
    let cert = out
        .certificate()
        .ok_or_else(|| format!("icosahedron refused: {out:?}"))?;
    cert.check(&ico).map_err(e2s)?;
    let ss = stack_times(&tetrahedron().map_err(e2s)?, 2).map_err(e2s)?;
    let r = partition_oracle(&ss, OracleCaps::default(), par).map_err(e2s)?;
    r.report.replay(&ss).map_err(e2s)?;
    if r.report.realized.contains(&4) {
        return Err("4 is realized on the double stack of the tetrahedron".into());
    }
    Ok(format!(
        "icosahedron certified ({} pairs x 5 paths); double-stacked tetrahedron gaps {}",
        cert.paths.len(),
        fmt_set(&r.report.gaps)
    ))
}

fn c11_gale() -> Check {
    for (d, n) in [(3, 6), (4, 7), (4, 8)] {
        let spec = CyclicSpec::new(d, n).map_err(e2s)?;
        let p = cyclic(&spec).map_err(e2s)?;
        let lp = supporting_facets(p.vertices()).map_err(e2s)?;
        if gale_facets(&spec) != lp {
            return Err(format!("C_{d}({n}): Gale facets differ from LP facets"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    for _ in 0..100 {
        let d = rng.gen_range(2..=5);
        let mut ps = BTreeSet::new();
        while ps.len() < d {
            ps.insert(rng.gen_range(-20i64..=20));
        }
        let params: Vec<Rational> = ps.iter().map(|&x| Rational::from_int(x)).collect();
        let gamma = |t: &Rational| RVector::new((1..=d as u32).map(|k| t.pow(k)).collect());
        let pts: Vec<RVector> = params.iter().map(gamma).collect();
        let h = hyperplane_through(&pts, d).map_err(|e| e.to_string())?;
        let reference = &params[0] - &Rational::one();
        let flip = h.side(&gamma(&reference)).map_err(|e| e.to_string())?;
        let t = Rational::new(rng.gen_range(-90i64..=90), rng.gen_range(1i64..=4))
            .map_err(|e| e.to_string())?;
        let side = h.side(&gamma(&t)).map_err(|e| e.to_string())? * flip;
        let want = match gale_sign_pattern(&params, &t).map_err(e2s)? {
            GaleSide::Plus => 1,
            GaleSide::Minus => -1,
            GaleSide::On => 0,
        };
        if side != want {
            return Err(format!(
                "params {params:?}, t={t}: geometry {side}, rule {want}"
            ));
        }
    }
    Ok("facets match for (3,6), (4,7), (4,8); 100 sign cases".into())
}
