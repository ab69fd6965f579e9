//! Gap certificates from skeleton connectivity.
//!
//! If the skeleton is `k`-connected, a hyperplane separating two vertices
//! meets each of `k` internally disjoint paths between them, so non-tangent
//! slices have at least `k` vertices. Tangent slices are faces. Hence any
//! `r < k` that is not a face size is a gap.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::PolytopeRef;
use crate::error::{Error, Result};
use crate::polytope::VPolytope;

/// `k` internally disjoint `s`–`t` paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPaths {
    pub s: usize,
    pub t: usize,
    pub paths: Vec<Vec<usize>>,
}

/// Machine-checkable evidence that `r` is a gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub polytope: PolytopeRef,
    pub r: usize,
    pub k: usize,
    /// Vertex counts of all nonempty faces.
    pub face_sizes: BTreeSet<usize>,
    /// One entry per non-adjacent vertex pair.
    pub paths: Vec<PairPaths>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum CertificateOutcome {
    Certified(GapCertificate),
    Refused { reason: String },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&GapCertificate> {
        match self {
            CertificateOutcome::Certified(c) => Some(c),
            CertificateOutcome::Refused { .. } => None,
        }
    }
}

fn face_sizes(p: &VPolytope) -> Result<BTreeSet<usize>> {
    let n = p.num_vertices();
    match p.dim() {
        2 => Ok([1, 2, n].into()),
        3 => {
            let facets = p.facets().ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{} has no facet list; face sizes are unknown",
                    p.name()
                ))
            })?;
            let mut s: BTreeSet<usize> = facets.iter().map(Vec::len).collect();
            s.extend([1, 2, n]);
            Ok(s)
        }
        d => Err(Error::InvalidInput(format!(
            "face-size audit is implemented for dimension 2 and 3, not {d}"
        ))),
    }
}

/// Certifies that `r` is a gap of `p` using `k`-connectivity, or explains
/// why the connectivity route does not apply.
pub fn gap_certificate(p: &VPolytope, r: usize, k: usize) -> Result<CertificateOutcome> {
    let refuse = |reason: String| Ok(CertificateOutcome::Refused { reason });
    let sizes = face_sizes(p)?;
    if r >= k {
        return refuse(format!("r = {r} is not below the connectivity k = {k}"));
    }
    if k < p.dim() {
        return refuse(format!("k = {k} is below the dimension {}", p.dim()));
    }
    if sizes.contains(&r) {
        return refuse(format!("{} has faces with {r} vertices", p.name()));
    }
    let n = p.num_vertices();
    if n <= k {
        return refuse(format!(
            "a {k}-connected graph needs more than {k} vertices, have {n}"
        ));
    }
    let mut paths = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if p.neighbors(s).contains(&t) {
                continue;
            }
            let found = disjoint_paths(p, s, t, k);
            if found.len() < k {
                return refuse(format!(
                    "vertices {s} and {t} are joined by only {} disjoint paths",
                    found.len()
                ));
            }
            paths.push(PairPaths { s, t, paths: found });
        }
    }
    Ok(CertificateOutcome::Certified(GapCertificate {
        polytope: PolytopeRef::of(p),
        r,
        k,
        face_sizes: sizes,
        paths,
    }))
}

impl GapCertificate {
    /// Re-verifies the certificate against `p` without trusting its producer.
    pub fn check(&self, p: &VPolytope) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidInput(m));
        if self.polytope.hash != p.content_hash() {
            return fail("certificate belongs to a different polytope".into());
        }
        if self.r >= self.k || self.k < p.dim() || p.num_vertices() <= self.k {
            return fail("r < k, k >= d and n > k must hold".into());
        }
        if face_sizes(p)? != self.face_sizes || self.face_sizes.contains(&self.r) {
            return fail("face-size audit does not hold".into());
        }
        let n = p.num_vertices();
        let mut pairs = BTreeSet::new();
        for pp in &self.paths {
            if pp.paths.len() < self.k {
                return fail(format!("pair ({}, {}) has too few paths", pp.s, pp.t));
            }
            let mut used = BTreeSet::new();
            for path in &pp.paths {
                if path.first() != Some(&pp.s) || path.last() != Some(&pp.t) {
                    return fail(format!("path {path:?} does not join {} and {}", pp.s, pp.t));
                }
                if path.windows(2).any(|w| !p.neighbors(w[0]).contains(&w[1])) {
                    return fail(format!("path {path:?} uses a non-edge"));
                }
                for &v in &path[1..path.len() - 1] {
                    if !used.insert(v) {
                        return fail(format!("paths between {} and {} share {v}", pp.s, pp.t));
                    }
                }
            }
            pairs.insert((pp.s.min(pp.t), pp.s.max(pp.t)));
        }
        for s in 0..n {
            for t in s + 1..n {
                if !p.neighbors(s).contains(&t) && !pairs.contains(&(s, t)) {
                    return fail(format!("pair ({s}, {t}) is not covered"));
                }
            }
        }
        Ok(())
    }
}

/// Up to `limit` internally vertex-disjoint `s`–`t` paths by augmenting
/// paths in the vertex-split network (unit capacity on every inner vertex).
fn disjoint_paths(p: &VPolytope, s: usize, t: usize, limit: usize) -> Vec<Vec<usize>> {
    let n = p.num_vertices();
    // node 2v = v_in, 2v+1 = v_out
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { limit as i32 } else { 1 };
        net.add(2 * v, 2 * v + 1, cap);
    }
    for v in 0..n {
        for &w in p.neighbors(v) {
            if w != s && v != t {
                net.add(2 * v + 1, 2 * w, 1);
            }
        }
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit && net.augment(src, sink) {
        flow += 1;
    }
    // with unit capacities every inner vertex carries at most one path, so
    // following saturated arcs from s traces the paths
    let mut paths = Vec::with_capacity(flow);
    for _ in 0..flow {
        let mut path = vec![s];
        let mut at = src;
        while at != sink {
            let e = net.adj[at]
                .iter()
                .copied()
                .find(|&e| {
                    net.arcs[e].forward && net.arcs[e].flow > 0 && net.arcs[e].to.is_multiple_of(2)
                })
                .expect("flow is conserved");
            net.arcs[e].flow -= 1;
            let v = net.arcs[e].to / 2;
            path.push(v);
            at = if v == t { sink } else { 2 * v + 1 };
        }
        paths.push(path);
    }
    paths
}

struct Arc {
    to: usize,
    cap: i32,
    flow: i32,
    forward: bool,
}

struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i32) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc {
            to,
            cap,
            flow: 0,
            forward: true,
        });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            flow: 0,
            forward: false,
        });
    }

    /// One BFS augmenting path of one unit.
    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([src]);
        let mut seen = vec![false; self.adj.len()];
        seen[src] = true;
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &e in &self.adj[u] {
                let a = &self.arcs[e];
                if !seen[a.to] && a.flow < a.cap {
                    seen[a.to] = true;
                    prev[a.to] = e;
                    queue.push_back(a.to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != src {
            let e = prev[v];
            self.arcs[e].flow += 1;
            self.arcs[e ^ 1].flow -= 1;
            v = self.arcs[e ^ 1].to;
        }
        true
    }
}
