//! Slicing posets: the order induced on vertices and edges by a direction,
//! the extended O'Neil poset of the cube, antichain tests and width.

mod matching;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};
use crate::polytope::VPolytope;
use crate::slicer::{classify_direction, integer_direction, Projection};

/// Largest poset on which width and antichain queries are attempted.
pub const WIDTH_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Vertex,
    Edge,
}

/// A vertex `(i, i)` or an edge `(i, j)` oriented so that `u . v_i < u . v_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PosetElement {
    pub kind: ElementKind,
    pub i: usize,
    pub j: usize,
}

impl PosetElement {
    pub fn vertex(i: usize) -> Self {
        PosetElement {
            kind: ElementKind::Vertex,
            i,
            j: i,
        }
    }

    pub fn edge(i: usize, j: usize) -> Self {
        PosetElement {
            kind: ElementKind::Edge,
            i,
            j,
        }
    }
}

/// A finite poset on vertex and edge elements, stored as its strict order
/// relation (`less[a]` holds every `b` with `a < b`).
#[derive(Clone, Debug)]
pub struct SlicingPoset {
    pub direction: RVector,
    elements: Vec<PosetElement>,
    index: HashMap<PosetElement, usize>,
    less: Vec<FixedBitSet>,
    /// Level rank of each vertex (0 = lowest) for drawing.
    vertex_rank: Vec<usize>,
}

impl SlicingPoset {
    fn from_parts(
        direction: RVector,
        elements: Vec<PosetElement>,
        less: Vec<FixedBitSet>,
        vertex_rank: Vec<usize>,
    ) -> Self {
        let index = elements.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        SlicingPoset {
            direction,
            elements,
            index,
            less,
            vertex_rank,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &PosetElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Strict order `a < b` on element indices.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn is_antichain(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(x, &a)| s[x + 1..].iter().all(|&b| a != b && !self.comparable(a, b)))
    }

    /// No two members comparable, and every other element comparable to a member.
    pub fn is_maximal_antichain(&self, s: &[usize]) -> bool {
        if !self.is_antichain(s) {
            return false;
        }
        let mut covered = FixedBitSet::with_capacity(self.len());
        for &a in s {
            covered.insert(a);
            covered.union_with(&self.less[a]);
        }
        // elements below some member
        for x in 0..self.len() {
            if !covered.contains(x) && s.iter().any(|&a| self.less(x, a)) {
                covered.insert(x);
            }
        }
        covered.count_ones(..) == self.len()
    }

    /// Covering pairs `a ⋖ b`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut beyond = FixedBitSet::with_capacity(self.len());
            for c in self.less[a].ones() {
                beyond.union_with(&self.less[c]);
            }
            let mut direct = self.less[a].clone();
            direct.difference_with(&beyond);
            out.extend(direct.ones().map(|b| (a, b)));
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| !(0..self.len()).any(|a| self.less(a, b)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.less[a].is_clear())
            .collect()
    }

    /// Irreflexive, antisymmetric and transitive.
    pub fn is_strict_order(&self) -> bool {
        for a in 0..self.len() {
            if self.less(a, a) {
                return false;
            }
            for b in self.less[a].ones() {
                if self.less(b, a) || !self.less[b].is_subset(&self.less[a]) {
                    return false;
                }
            }
        }
        true
    }

    /// Size of a largest antichain (Dilworth: `n` minus a maximum matching
    /// in the comparability bipartite graph).
    pub fn width(&self) -> Result<usize> {
        if self.len() > WIDTH_CAP {
            return Err(Error::CapExceeded(format!(
                "poset has {} elements, width cap is {WIDTH_CAP}",
                self.len()
            )));
        }
        Ok(self.len() - matching::max_matching(&self.less))
    }

    /// Width of the subposet on `keep`.
    fn width_of(&self, keep: &FixedBitSet) -> usize {
        let idx: Vec<usize> = keep.ones().collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let adj: Vec<FixedBitSet> = idx
            .iter()
            .map(|&a| {
                let mut s = FixedBitSet::with_capacity(idx.len());
                for b in self.less[a].ones() {
                    if let Some(&k) = pos.get(&b) {
                        s.insert(k);
                    }
                }
                s
            })
            .collect();
        idx.len() - matching::max_matching(&adj)
    }

    /// Largest antichain containing element `x`.
    pub fn width_through(&self, x: usize) -> usize {
        let mut keep = FixedBitSet::with_capacity(self.len());
        keep.insert_range(..);
        keep.difference_with(&self.less[x]);
        for a in 0..self.len() {
            if self.less(a, x) || a == x {
                keep.set(a, false);
            }
        }
        1 + self.width_of(&keep)
    }

    /// Graphviz rendering of the covering relation, ranked by the level of
    /// each element's lower vertex.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph slicing_poset {\n  rankdir=BT;\n");
        let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, e) in self.elements.iter().enumerate() {
            let (label, shape) = match e.kind {
                ElementKind::Vertex => (format!("v{}", e.i), "box"),
                ElementKind::Edge => (format!("v{}-v{}", e.i, e.j), "ellipse"),
            };
            let _ = writeln!(s, "  e{k} [label=\"{label}\", shape={shape}];");
            ranks.entry(self.vertex_rank[e.i]).or_default().push(k);
        }
        for members in ranks.values() {
            let names: Vec<String> = members.iter().map(|k| format!("e{k}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  e{a} -> e{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Sorted distinct values and the rank of each input.
fn level_ranks(values: &[BigInt]) -> Vec<usize> {
    let mut distinct = values.to_vec();
    distinct.sort();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect()
}

/// The slicing poset `(P_u, <=)`: vertices and non-orthogonal edges, with
/// `(i1, j1) < (i2, j2)` iff `j1 = i2` or a path of strictly ascending
/// edges runs from `v_j1` to `v_i2`.
pub fn build_slicing_poset(p: &VPolytope, u: &RVector) -> Result<SlicingPoset> {
    if u.dim() != p.dim() || u.is_zero() {
        return Err(Error::InvalidInput(
            "direction must be nonzero and match the dimension".into(),
        ));
    }
    let proj = Projection::new(p, &integer_direction(u));
    let values: Vec<BigInt> = (0..p.num_vertices()).map(|i| proj.value(i)).collect();
    let rank = level_ranks(&values);
    let n = p.num_vertices();

    let mut elements: Vec<PosetElement> = (0..n).map(PosetElement::vertex).collect();
    for &(a, b) in p.edges() {
        match values[a].cmp(&values[b]) {
            std::cmp::Ordering::Less => elements.push(PosetElement::edge(a, b)),
            std::cmp::Ordering::Greater => elements.push(PosetElement::edge(b, a)),
            std::cmp::Ordering::Equal => {}
        }
    }

    // reach[v]: vertices reachable from v by ascending paths, v included
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| rank[b].cmp(&rank[a]));
    let mut reach = vec![FixedBitSet::with_capacity(n); n];
    for &v in &order {
        let mut r = FixedBitSet::with_capacity(n);
        r.insert(v);
        for &w in p.neighbors(v) {
            if rank[w] > rank[v] {
                r.union_with(&reach[w]);
            }
        }
        reach[v] = r;
    }

    let m = elements.len();
    let mut starting = vec![FixedBitSet::with_capacity(m); n];
    for (k, e) in elements.iter().enumerate() {
        starting[e.i].insert(k);
    }
    let less: Vec<FixedBitSet> = elements
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut s = FixedBitSet::with_capacity(m);
            for v in reach[e.j].ones() {
                s.union_with(&starting[v]);
            }
            s.set(k, false);
            s
        })
        .collect();
    Ok(SlicingPoset::from_parts(u.clone(), elements, less, rank))
}

/// Elements of `P_u` met by `u . x = t`: vertices on it and edges it crosses.
/// Returned as element indices of `poset`.
pub fn slice_elements(poset: &SlicingPoset, p: &VPolytope, t: &Rational) -> Result<Vec<usize>> {
    let part = classify_direction(p, &poset.direction, t)?;
    if !part.meets() {
        return Err(Error::NoIntersection);
    }
    let mut out = Vec::with_capacity(part.cv());
    for v in part.on {
        out.push(
            poset
                .index_of(&PosetElement::vertex(v))
                .expect("vertex element"),
        );
    }
    for (a, b) in part.crossed {
        let e = poset
            .index_of(&PosetElement::edge(a, b))
            .or_else(|| poset.index_of(&PosetElement::edge(b, a)))
            .expect("crossed edges are not orthogonal to u");
        out.push(e);
    }
    Ok(out)
}

/// The extended O'Neil poset of `Q_d`: vertices `(v, v)` and edges `(v, w)`
/// with `w = v + e_i`, and `(a, b) < (c, d)` iff they differ and `c`
/// contains every one of `b`. Built from bit masks alone.
pub fn oneil_poset(d: usize) -> Result<SlicingPoset> {
    if !(1..=crate::polytope::MAX_CUBE_DIM).contains(&d) {
        return Err(Error::InvalidInput(format!(
            "O'Neil poset dimension {d} out of range"
        )));
    }
    let n = 1usize << d;
    let mut elements: Vec<PosetElement> = (0..n).map(PosetElement::vertex).collect();
    for v in 0..n {
        for i in 0..d {
            if v >> i & 1 == 0 {
                elements.push(PosetElement::edge(v, v | 1 << i));
            }
        }
    }
    let m = elements.len();
    let less = elements
        .iter()
        .enumerate()
        .map(|(k, ab)| {
            let mut s = FixedBitSet::with_capacity(m);
            for (l, cd) in elements.iter().enumerate() {
                if l != k && cd.i & ab.j == ab.j {
                    s.insert(l);
                }
            }
            s
        })
        .collect();
    let rank = (0..n).map(|v: usize| v.count_ones() as usize).collect();
    Ok(SlicingPoset::from_parts(
        RVector::from_ints(std::iter::repeat_n(1, d)),
        elements,
        less,
        rank,
    ))
}

/// Outcome of a relabeled comparison of two hypercube posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub isomorphic: bool,
    pub diagnostic: Option<String>,
}

/// Compares two posets over hypercube vertices (vertex `m` = bit mask `m`)
/// through the coordinate reflection that flips every bit where the
/// directions disagree in sign: `v -> v xor mask`.
pub fn poset_isomorphic(a: &SlicingPoset, b: &SlicingPoset) -> IsoCheck {
    let fail = |msg: String| IsoCheck {
        isomorphic: false,
        diagnostic: Some(msg),
    };
    if a.direction.dim() != b.direction.dim() {
        return fail("directions have different dimensions".into());
    }
    let mut mask = 0usize;
    for k in 0..a.direction.dim() {
        let (sa, sb) = (a.direction[k].signum(), b.direction[k].signum());
        if sa * sb < 0 {
            mask |= 1 << k;
        }
    }
    if a.len() != b.len() {
        return fail(format!("element counts differ: {} vs {}", a.len(), b.len()));
    }
    let mut image = Vec::with_capacity(a.len());
    for e in a.elements() {
        let mapped = PosetElement {
            kind: e.kind,
            i: e.i ^ mask,
            j: e.j ^ mask,
        };
        match b.index_of(&mapped) {
            Some(k) => image.push(k),
            None => return fail(format!("element {e:?} has no image {mapped:?}")),
        }
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            if a.less(x, y) != b.less(image[x], image[y]) {
                return fail(format!(
                    "relation differs on {:?}, {:?}",
                    a.elements()[x],
                    a.elements()[y]
                ));
            }
        }
    }
    IsoCheck {
        isomorphic: true,
        diagnostic: None,
    }
}

/// Whether edge `(v, w)` of `Q_d` (`|w| = |v| + 1`) lies on a central level:
/// `|w| = (d + 1) / 2` for odd `d`, `|w|` in `{d/2, d/2 + 1}` for even `d`.
/// These are the edge levels through which the fewest monotone paths from
/// `0` to `1` pass.
pub fn is_central_edge(d: usize, e: &PosetElement) -> bool {
    if e.kind != ElementKind::Edge {
        return false;
    }
    let top = e.j.count_ones() as usize;
    if d % 2 == 1 {
        top == d.div_ceil(2)
    } else {
        top == d / 2 || top == d / 2 + 1
    }
}

/// For the O'Neil poset of `Q_d`: a non-central element lying in some
/// maximum antichain, or `None` if every maximum antichain is made of
/// central edges only.
pub fn noncentral_in_max_antichain(d: usize) -> Result<Option<PosetElement>> {
    if d > 6 {
        return Err(Error::CapExceeded(format!(
            "antichain audit capped at d = 6, got {d}"
        )));
    }
    let p = oneil_poset(d)?;
    let w = p.width()?;
    for (k, e) in p.elements().iter().enumerate() {
        if !is_central_edge(d, e) && p.width_through(k) == w {
            return Ok(Some(*e));
        }
    }
    Ok(None)
}

/// True iff every maximum-size antichain of the O'Neil poset of `Q_d`
/// consists of central-level edges.
pub fn max_antichains_central(d: usize) -> Result<bool> {
    Ok(noncentral_in_max_antichain(d)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{hypercube, octahedron};

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn square_poset() {
        let q2 = hypercube(2).unwrap();
        let p = build_slicing_poset(&q2, &RVector::from_ints([1, 2])).unwrap();
        assert_eq!(p.len(), 8);
        // vertex 00 is below everything else
        let bottom = p.index_of(&PosetElement::vertex(0)).unwrap();
        assert!((0..8).filter(|&k| k != bottom).all(|k| p.less(bottom, k)));
        // 00 -> 10 -> 11 ascends: (00,10) < (10,11)
        let a = p.index_of(&PosetElement::edge(0, 1)).unwrap();
        let b = p.index_of(&PosetElement::edge(1, 3)).unwrap();
        assert!(p.less(a, b));
        assert!(p.is_strict_order());
    }

    /// Hand enumeration of the 8-element relation for Q_2, u = (1, 2):
    /// levels 00:0, 10:1, 01:2, 11:3.
    #[test]
    fn square_poset_full_relation() {
        let q2 = hypercube(2).unwrap();
        let p = build_slicing_poset(&q2, &RVector::from_ints([1, 2])).unwrap();
        let el = |e: PosetElement| p.index_of(&e).unwrap();
        let (v0, v1, v2, v3) = (
            el(PosetElement::vertex(0)),
            el(PosetElement::vertex(1)),
            el(PosetElement::vertex(2)),
            el(PosetElement::vertex(3)),
        );
        let (e01, e02, e13, e23) = (
            el(PosetElement::edge(0, 1)),
            el(PosetElement::edge(0, 2)),
            el(PosetElement::edge(1, 3)),
            el(PosetElement::edge(2, 3)),
        );
        let expected = [
            (v0, vec![v1, v2, v3, e01, e02, e13, e23]),
            (e01, vec![v1, v3, e13]),
            (e02, vec![v2, v3, e23]),
            (v1, vec![v3, e13]),
            (v2, vec![v3, e23]),
            (e13, vec![v3]),
            (e23, vec![v3]),
            (v3, vec![]),
        ];
        for (a, mut above) in expected {
            above.sort_unstable();
            let got: Vec<usize> = (0..8).filter(|&b| p.less(a, b)).collect();
            assert_eq!(got, above, "element {:?}", p.elements()[a]);
        }
        assert_eq!(p.width().unwrap(), 2);
    }

    #[test]
    fn middle_edges_of_cube_are_incomparable() {
        let q3 = hypercube(3).unwrap();
        let p = build_slicing_poset(&q3, &RVector::from_ints([1, 1, 1])).unwrap();
        let mid: Vec<usize> = (0..p.len())
            .filter(|&k| {
                let e = p.elements()[k];
                e.kind == ElementKind::Edge && e.i.count_ones() == 1
            })
            .collect();
        assert_eq!(mid.len(), 6);
        assert!(p.is_antichain(&mid));
    }

    #[test]
    fn antichain_examples() {
        let q2 = hypercube(2).unwrap();
        let p = build_slicing_poset(&q2, &RVector::from_ints([1, 2])).unwrap();
        let bottom = p.index_of(&PosetElement::vertex(0)).unwrap();
        // the bottom vertex is below every other element, so on its own it is
        // a maximal antichain: the tangent slice at 00
        assert!(p.is_maximal_antichain(&[bottom]));
        let v1 = p.index_of(&PosetElement::vertex(1)).unwrap();
        assert!(!p.is_maximal_antichain(&[v1]));

        let q3 = hypercube(3).unwrap();
        let p = build_slicing_poset(&q3, &RVector::from_ints([1, 1, 1])).unwrap();
        let s = slice_elements(&p, &q3, &Rational::new(3, 2).unwrap()).unwrap();
        assert_eq!(s.len(), 6);
        assert!(p.is_maximal_antichain(&s));
    }

    #[test]
    fn extremes_are_vertices() {
        let o = octahedron().unwrap();
        for u in [[1, 2, 3], [1, 1, 0], [0, 0, 1], [-2, 5, 1]] {
            let p = build_slicing_poset(&o, &RVector::from_ints(u)).unwrap();
            assert!(p.is_strict_order());
            for k in p.minimal_elements().into_iter().chain(p.maximal_elements()) {
                assert_eq!(p.elements()[k].kind, ElementKind::Vertex);
            }
        }
    }

    #[test]
    fn octahedron_directions_give_different_posets() {
        let o = octahedron().unwrap();
        // a generic direction orders all six vertices; a coordinate direction
        // leaves a square of four vertices on one level
        let u = build_slicing_poset(&o, &RVector::from_ints([1, 2, 4])).unwrap();
        let w = build_slicing_poset(&o, &RVector::from_ints([0, 0, 1])).unwrap();
        assert_ne!(u.len(), w.len());
        assert_eq!(u.len(), 6 + 12);
        assert_eq!(w.len(), 6 + 8);
        assert_ne!(u.width().unwrap(), 0);
    }

    #[test]
    fn oneil_widths() {
        for (d, w) in [(2, 2), (3, 6), (4, 12), (5, 30)] {
            assert_eq!(oneil_poset(d).unwrap().width().unwrap(), w, "d = {d}");
        }
        assert!(oneil_poset(3).unwrap().is_strict_order());
    }

    #[test]
    fn chain_width_is_one() {
        let p = oneil_poset(1).unwrap();
        // elements 0 < (0,1) < 1
        assert_eq!(p.len(), 3);
        assert_eq!(p.width().unwrap(), 1);
        let q = build_slicing_poset(&hypercube(1).unwrap(), &RVector::from_ints([1])).unwrap();
        assert_eq!(q.width().unwrap(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let q3 = hypercube(3).unwrap();
        let o = oneil_poset(3).unwrap();
        for u in [[1, 2, 4], [-1, 2, 4], [1, 1, 1], [3, -1, -7]] {
            let p = build_slicing_poset(&q3, &RVector::from_ints(u)).unwrap();
            let iso = poset_isomorphic(&p, &o);
            assert!(iso.isomorphic, "{u:?}: {:?}", iso.diagnostic);
        }
        let p = build_slicing_poset(&q3, &RVector::from_ints([1, 0, 2])).unwrap();
        let iso = poset_isomorphic(&p, &o);
        assert!(!iso.isomorphic);
        assert!(iso.diagnostic.is_some());
    }

    #[test]
    fn dot_output_lists_covers() {
        let q2 = hypercube(2).unwrap();
        let p = build_slicing_poset(&q2, &RVector::from_ints([1, 2])).unwrap();
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("shape=ellipse"));
        assert_eq!(dot.matches("->").count(), p.covers().len());
        // each vertex covers exactly its outgoing ascending edges here
        assert_eq!(p.covers().len(), 8);
    }

    #[test]
    fn central_antichains() {
        assert!(max_antichains_central(3).unwrap());
        assert!(max_antichains_central(4).unwrap());
        assert!(max_antichains_central(5).unwrap());
    }

    /// In Q_2 the two middle vertices are incomparable, so they form a
    /// maximum antichain of size 2 without any edge.
    #[test]
    fn square_has_vertex_max_antichain() {
        let p = oneil_poset(2).unwrap();
        let e = noncentral_in_max_antichain(2).unwrap().unwrap();
        assert_eq!(e.kind, ElementKind::Vertex);
        let pair = [
            p.index_of(&PosetElement::vertex(1)).unwrap(),
            p.index_of(&PosetElement::vertex(2)).unwrap(),
        ];
        assert!(p.is_antichain(&pair));
        assert_eq!(pair.len(), p.width().unwrap());
    }

    #[test]
    fn slice_elements_require_meeting_plane() {
        let q2 = hypercube(2).unwrap();
        let p = build_slicing_poset(&q2, &RVector::from_ints([1, 1])).unwrap();
        assert!(slice_elements(&p, &q2, &q(5)).is_err());
    }
}
