//! Knödel graphs `KG(n, k)`: vertices `0..n`, with `x ~ y` whenever
//! `x + y ≡ 2^t - 1 (mod n)` for some `1 <= t <= k`. The default degree is
//! `⌊log₂ n⌋`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numtheory::floor_log2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("n must be even, got {0}")]
    OddOrder(usize),
    #[error("n must be at least 6, got {0}")]
    TooSmall(usize),
    #[error("degree must lie in 1..={max} for n = {n}, got {degree}")]
    DegreeOutOfRange { n: usize, degree: u32, max: u32 },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex {x} collides with itself or repeats a neighbour at t = {t}")]
    Collision { x: usize, t: u32 },
    #[error("vertex spaces differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// Subset of `0..n` stored as a bitmask with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            words: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        if n % 64 != 0 {
            if let Some(last) = s.words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        s.len = n;
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Result<Self, GraphError> {
        let mut s = Self::new(n);
        for v in it {
            s.try_insert(v)?;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns whether `v` was newly added.
    ///
    /// Panics if `v >= n`.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        let (w, b) = (v / 64, 1u64 << (v % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        self.len += fresh as usize;
        fresh
    }

    pub fn try_insert(&mut self, v: usize) -> Result<bool, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.insert(v))
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, 1u64 << (v % 64));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        self.len -= present as usize;
        present
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out.recount();
        out
    }

    /// Number of even members.
    pub fn even_count(&self) -> usize {
        const EVEN: u64 = 0x5555_5555_5555_5555;
        self.words.iter().map(|w| (w & EVEN).count_ones() as usize).sum()
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct VertexSetRepr {
    n: usize,
    vertices: Vec<usize>,
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VertexSetRepr {
            n: self.n,
            vertices: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = VertexSetRepr::deserialize(d)?;
        VertexSet::from_vertices(repr.n, repr.vertices).map_err(serde::de::Error::custom)
    }
}

/// Graphs up to this order keep one bitmask row per vertex; larger graphs
/// answer neighbourhood queries from the closed form.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
pub struct KnodelGraph {
    n: usize,
    degree: u32,
    rows: Option<Vec<VertexSet>>,
}

impl KnodelGraph {
    /// Builds `KG(n, degree)`; `None` selects the full degree `⌊log₂ n⌋`.
    pub fn build(n: usize, degree: Option<u32>) -> Result<Self, GraphError> {
        if n % 2 != 0 {
            return Err(GraphError::OddOrder(n));
        }
        if n < 6 {
            return Err(GraphError::TooSmall(n));
        }
        let max = floor_log2(n as u64);
        let degree = degree.unwrap_or(max);
        if degree == 0 || degree > max {
            return Err(GraphError::DegreeOutOfRange { n, degree, max });
        }
        let mut g = Self {
            n,
            degree,
            rows: None,
        };
        // 2^t - 1 is odd and n is even, so x + y is odd: no self-loops, and
        // distinct t give distinct offsets below n. Checked anyway.
        for x in 0..n {
            let mut seen = [usize::MAX; 64];
            for t in 1..=degree {
                let y = g.neighbor(x, t);
                if y == x || seen[..t as usize].contains(&y) {
                    return Err(GraphError::Collision { x, t });
                }
                seen[t as usize] = y;
            }
        }
        if n <= DENSE_LIMIT {
            let rows = (0..n)
                .map(|x| VertexSet::from_vertices(n, g.neighbor_iter(x)).expect("in range"))
                .collect();
            g.rows = Some(rows);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The neighbour of `x` through `t`: `(2^t - 1 - x) mod n`.
    #[inline]
    pub fn neighbor(&self, x: usize, t: u32) -> usize {
        let c = (1usize << t) - 1;
        (c + self.n - x) % self.n
    }

    /// Neighbours of `x` in order of `t = 1..=degree`.
    pub fn neighbor_iter(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.degree).map(move |t| self.neighbor(x, t))
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        Ok(match &self.rows {
            Some(rows) => rows[v].clone(),
            None => self.neighbors_closed_form(v),
        })
    }

    pub(crate) fn neighbors_closed_form(&self, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n, self.neighbor_iter(v)).expect("in range")
    }

    pub fn has_dense_rows(&self) -> bool {
        self.rows.is_some()
    }

    #[inline]
    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[x].contains(y),
            None => self.neighbor_iter(x).any(|z| z == y),
        }
    }

    /// `(evens, odds)`.
    pub fn parity_bipartition(&self) -> (VertexSet, VertexSet) {
        let evens = VertexSet::from_vertices(self.n, (0..self.n).step_by(2)).expect("in range");
        let odds = VertexSet::from_vertices(self.n, (1..self.n).step_by(2)).expect("in range");
        (evens, odds)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * self.degree as usize / 2);
        for u in 0..self.n {
            let mut nbrs: Vec<usize> = self.neighbor_iter(u).filter(|&v| v > u).collect();
            nbrs.sort_unstable();
            out.extend(nbrs.into_iter().map(|v| (u, v)));
        }
        out
    }

    /// Exhaustive structural check of regularity, symmetry, irreflexivity
    /// and the parity bipartition.
    pub fn structure_report(&self) -> StructureReport {
        let mut report = StructureReport {
            n: self.n,
            degree: self.degree,
            ..Default::default()
        };
        for x in 0..self.n {
            let row = match &self.rows {
                Some(rows) => rows[x].clone(),
                None => self.neighbors_closed_form(x),
            };
            if row.len() != self.degree as usize {
                report.irregular_vertices += 1;
            }
            if row.contains(x) {
                report.loops += 1;
            }
            for y in row.iter() {
                if !self.is_edge(y, x) {
                    report.asymmetric_pairs += 1;
                }
                if (x + y) % 2 == 0 {
                    report.same_parity_edges += 1;
                }
            }
        }
        report
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub degree: u32,
    pub irregular_vertices: usize,
    pub loops: usize,
    pub asymmetric_pairs: usize,
    pub same_parity_edges: usize,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.irregular_vertices == 0
            && self.loops == 0
            && self.asymmetric_pairs == 0
            && self.same_parity_edges == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn kg6_edges() {
        let g = KnodelGraph::build(6, None).unwrap();
        let mut expected = vec![(0, 1), (2, 5), (3, 4), (0, 3), (1, 2), (4, 5)];
        expected.sort_unstable();
        assert_eq!(g.edges(), expected);
    }

    #[test]
    fn neighbor_examples() {
        let g6 = KnodelGraph::build(6, None).unwrap();
        assert_eq!(g6.neighbors(0).unwrap(), set(6, &[1, 3]));
        let g8 = KnodelGraph::build(8, None).unwrap();
        assert_eq!(g8.neighbors(0).unwrap(), set(8, &[1, 3, 7]));
        assert_eq!(g8.neighbors(5).unwrap(), set(8, &[4, 6, 2]));
        let g20 = KnodelGraph::build(20, None).unwrap();
        assert_eq!(g20.degree(), 4);
        assert_eq!(g20.neighbors(19).unwrap(), set(20, &[2, 4, 8, 16]));
        assert_eq!(
            g20.neighbors(20),
            Err(GraphError::VertexOutOfRange { v: 20, n: 20 })
        );
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(KnodelGraph::build(7, None).unwrap_err(), GraphError::OddOrder(7));
        assert_eq!(KnodelGraph::build(4, None).unwrap_err(), GraphError::TooSmall(4));
        assert!(matches!(
            KnodelGraph::build(20, Some(5)),
            Err(GraphError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            KnodelGraph::build(20, Some(0)),
            Err(GraphError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn bipartition() {
        let g = KnodelGraph::build(6, None).unwrap();
        let (e, o) = g.parity_bipartition();
        assert_eq!(e, set(6, &[0, 2, 4]));
        assert_eq!(o, set(6, &[1, 3, 5]));
        let (e, o) = KnodelGraph::build(8, None).unwrap().parity_bipartition();
        assert_eq!((e.len(), o.len()), (4, 4));
        let g20 = KnodelGraph::build(20, None).unwrap();
        assert_eq!(g20.structure_report().same_parity_edges, 0);
        let (e, o) = g20.parity_bipartition();
        for (u, v) in g20.edges() {
            assert!(e.contains(u) != e.contains(v));
            assert!(o.contains(u) != o.contains(v));
        }
    }

    #[test]
    fn dense_and_closed_form_agree() {
        for n in [6, 64, 130, 1000, DENSE_LIMIT] {
            let g = KnodelGraph::build(n, None).unwrap();
            assert!(g.has_dense_rows());
            for v in (0..n).step_by(7) {
                assert_eq!(g.neighbors(v).unwrap(), g.neighbors_closed_form(v));
            }
        }
        let big = KnodelGraph::build(DENSE_LIMIT + 2, None).unwrap();
        assert!(!big.has_dense_rows());
        assert!(big.structure_report().is_clean());
    }

    #[test]
    fn generalized_degree_is_nested() {
        for n in (6..200).step_by(2) {
            let max = floor_log2(n as u64);
            for k in 1..max {
                let small = KnodelGraph::build(n, Some(k)).unwrap();
                let large = KnodelGraph::build(n, Some(k + 1)).unwrap();
                assert!(small.structure_report().is_clean());
                for v in 0..n {
                    assert!(small.neighbors(v).unwrap().is_subset(&large.neighbors(v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn neighbor_map_is_involution() {
        let g = KnodelGraph::build(1000, None).unwrap();
        for t in 1..=g.degree() {
            for x in 0..1000 {
                assert_eq!(g.neighbor(g.neighbor(x, t), t), x);
            }
        }
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert!(s.insert(0));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
        assert_eq!(s.even_count(), 1);
        assert!(s.remove(0));
        assert_eq!(s.len(), 1);
        assert_eq!(
            s.try_insert(130),
            Err(GraphError::VertexOutOfRange { v: 130, n: 130 })
        );
        let full = VertexSet::full(130);
        assert_eq!(full.len(), 130);
        assert_eq!(full.iter().last(), Some(129));
        assert_eq!(full.difference(&s).len(), 129);
        assert_eq!(s.to_string(), "{129}");
    }

    #[test]
    fn vertex_set_serde_rejects_out_of_range() {
        let s = set(10, &[1, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":10,"vertices":[1,4]}"#);
        assert_eq!(serde_json::from_str::<VertexSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<VertexSet>(r#"{"n":10,"vertices":[10]}"#).is_err());
    }
}
