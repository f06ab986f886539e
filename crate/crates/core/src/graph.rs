//! Vertex sets as bitmasks, simple graphs, and chordality.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex count; every vertex set fits in a `u32`.
pub const MAX_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

/// A subset of `{1, ..., 24}` stored as a bitmask; vertex `v` is bit `v - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        VertexSet(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// `{1, ..., m}`
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        VertexSet(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        vs.into_iter().fold(Self::EMPTY, |s, v| s.with(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: usize) -> Self {
        self | Self::singleton(v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VertexSet(cur))
        })
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// Simple undirected graph on vertices `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    m: usize,
    adj: Vec<VertexSet>,
}

/// Outcome of a chordality test, with a certificate either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// Every vertex's neighbours that come earlier in `ordering` form a clique.
    Chordal { ordering: Vec<usize> },
    /// An induced cycle on at least four vertices, in cyclic order.
    NotChordal { cycle: Vec<usize> },
}

impl Graph {
    pub fn empty(m: usize) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&m) {
            return Err(GraphError::VertexCount(m));
        }
        Ok(Graph { m, adj: vec![VertexSet::EMPTY; m] })
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(m)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(m: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(m)?;
        for v in 1..=m {
            g.adj[v - 1] = VertexSet::full(m).without(v);
        }
        Ok(g)
    }

    /// The cycle `1 - 2 - ... - m - 1`; needs `m >= 3`.
    pub fn cycle(m: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=m).map(|v| (v, v % m + 1)).collect();
        Self::from_edges(m, &edges)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for v in [a, b] {
            if !(1..=self.m).contains(&v) {
                return Err(GraphError::VertexOutOfRange { vertex: v, m: self.m });
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        self.adj[a - 1] = self.adj[a - 1].with(b);
        self.adj[b - 1] = self.adj[b - 1].with(a);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (1..=self.m).contains(&a) && self.adj[a - 1].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.m)
            .flat_map(|a| self.adj[a - 1].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s.without(v)).is_subset(self.adj[v - 1]))
    }

    /// Maximum cardinality search order; ties go to the smallest vertex.
    pub fn maximum_cardinality_search(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.m];
        let mut visited = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            let v = (1..=self.m)
                .filter(|&v| !visited.contains(v))
                .max_by(|&a, &b| weight[a - 1].cmp(&weight[b - 1]).then(b.cmp(&a)))
                .expect("unvisited vertex remains");
            visited = visited.with(v);
            order.push(v);
            for w in self.adj[v - 1].iter() {
                weight[w - 1] += 1;
            }
        }
        order
    }

    /// First vertex, in `ordering`, whose earlier neighbours are not a clique,
    /// together with two non-adjacent earlier neighbours.
    pub fn elimination_violation(&self, ordering: &[usize]) -> Option<(usize, usize, usize)> {
        let mut earlier = VertexSet::EMPTY;
        for &v in ordering {
            let back = self.adj[v - 1] & earlier;
            for x in back.iter() {
                let missing = back.without(x) - self.adj[x - 1];
                if let Some(y) = missing.min() {
                    return Some((v, x, y));
                }
            }
            earlier = earlier.with(v);
        }
        None
    }

    pub fn chordality(&self) -> Chordality {
        let ordering = self.maximum_cardinality_search();
        match self.elimination_violation(&ordering) {
            None => Chordality::Chordal { ordering },
            Some((v, x, y)) => {
                let cycle = self
                    .chordless_cycle_through(v, x, y)
                    .or_else(|| self.any_chordless_cycle())
                    .expect("a graph without a perfect elimination ordering has a chordless cycle");
                Chordality::NotChordal { cycle }
            }
        }
    }

    pub fn is_chordal(&self) -> bool {
        matches!(self.chordality(), Chordality::Chordal { .. })
    }

    /// Shortest path from `x` to `y` avoiding `v` and its other neighbours,
    /// closed up through `v`. Chordless because the path is shortest and its
    /// interior misses the neighbourhood of `v`.
    fn chordless_cycle_through(&self, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
        let allowed = (VertexSet::full(self.m) - self.adj[v - 1].with(v)) | VertexSet::from_vertices([x, y]);
        let mut parent = vec![0usize; self.m + 1];
        let mut seen = VertexSet::singleton(x);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if u == y {
                let mut path = vec![y];
                let mut cur = y;
                while cur != x {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.push(v);
                path.reverse();
                return Some(path);
            }
            for w in (self.adj[u - 1] & (allowed - seen)).iter() {
                seen = seen.with(w);
                parent[w] = u;
                queue.push_back(w);
            }
        }
        None
    }

    fn any_chordless_cycle(&self) -> Option<Vec<usize>> {
        for v in 1..=self.m {
            let n = self.adj[v - 1];
            for x in n.iter() {
                for y in n.iter().filter(|&y| y > x && !self.has_edge(x, y)) {
                    if let Some(c) = self.chordless_cycle_through(v, x, y) {
                        return Some(c);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(m={}, edges={:?})", self.m, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
        let n = cycle.len();
        let set = VertexSet::from_vertices(cycle.iter().copied());
        set.len() == n
            && n >= 4
            && (0..n).all(|k| {
                let v = cycle[k];
                let expected = VertexSet::from_vertices([cycle[(k + 1) % n], cycle[(k + n - 1) % n]]);
                g.neighbours(v) & set == expected
            })
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::from_vertices([3, 1, 5]);
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(5));
        assert_eq!(s.without(3).to_string(), "{1,5}");
        assert_eq!(s.subsets().count(), 8);
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
        assert_eq!(VertexSet::full(24).len(), 24);
    }

    #[test]
    fn four_cycle_is_not_chordal() {
        let g = Graph::cycle(4).unwrap();
        match g.chordality() {
            Chordality::NotChordal { cycle } => {
                assert_eq!(cycle.len(), 4);
                assert!(is_induced_cycle(&g, &cycle));
            }
            c => panic!("expected a witness, got {c:?}"),
        }
    }

    #[test]
    fn trees_and_paths_are_chordal() {
        let tree = Graph::from_edges(6, &[(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert!(tree.is_chordal());
        let g = Graph::from_edges(4, &[(1, 2), (2, 3)]).unwrap();
        match g.chordality() {
            Chordality::Chordal { ordering } => {
                assert_eq!(ordering.len(), 4);
                assert_eq!(g.elimination_violation(&ordering), None);
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn long_cycle_with_pendant_gives_induced_witness() {
        let mut g = Graph::cycle(6).unwrap();
        g.add_edge(1, 3).unwrap();
        let Chordality::NotChordal { cycle } = g.chordality() else { panic!() };
        assert!(is_induced_cycle(&g, &cycle), "{cycle:?}");
        assert_eq!(cycle.len(), 5);
    }

    #[test]
    fn edge_errors() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::Loop(1)));
        assert_eq!(g.add_edge(1, 4), Err(GraphError::VertexOutOfRange { vertex: 4, m: 3 }));
        assert_eq!(Graph::empty(25), Err(GraphError::VertexCount(25)));
    }
}
