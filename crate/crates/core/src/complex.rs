//! Finite simplicial complexes on vertex labels `1..=m`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::linalg::{chain_homology, HomologyGroup, IntegerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
}

impl From<GraphError> for ComplexError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::VertexCount(m) => ComplexError::VertexCount(m),
            GraphError::VertexOutOfRange { vertex, m } => ComplexError::VertexOutOfRange { vertex, m },
            GraphError::Loop(v) => unreachable!("complexes never produce loops (vertex {v})"),
        }
    }
}

/// A downward-closed family of faces over a vertex set `V ⊆ {1..m}`, which
/// always contains the empty face and every singleton of `V`.
///
/// Full subcomplexes keep the ambient labels, so `K_J` has vertex set `J`
/// and faces are still reported in the numbering of `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    vertices: VertexSet,
    /// Sorted by mask.
    faces: Vec<VertexSet>,
}

/// Reduced homology, stored from degree −1 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    groups: Vec<HomologyGroup>,
}

impl ReducedHomology {
    /// `H̃_k`, trivial above the top degree.
    pub fn degree(&self, k: isize) -> HomologyGroup {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.groups.get(i).cloned())
            .unwrap_or_default()
    }

    pub fn betti(&self, k: isize) -> usize {
        self.degree(k).betti
    }

    /// Groups for degrees −1, 0, 1, ... in order.
    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }
}

impl SimplicialComplex {
    fn from_face_set(m: usize, vertices: VertexSet, faces: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut set: BTreeSet<VertexSet> = faces.into_iter().collect();
        set.insert(VertexSet::EMPTY);
        set.extend(vertices.iter().map(VertexSet::singleton));
        SimplicialComplex { m, vertices, faces: set.into_iter().collect() }
    }

    /// Downward closure of `maximal` over vertex set `{1..m}`.
    pub fn from_maximal_faces<F: AsRef<[usize]>>(m: usize, maximal: &[F]) -> Result<Self, ComplexError> {
        if !(1..=MAX_VERTICES).contains(&m) {
            return Err(ComplexError::VertexCount(m));
        }
        let mut faces = BTreeSet::new();
        for face in maximal {
            let mut s = VertexSet::EMPTY;
            for &v in face.as_ref() {
                if !(1..=m).contains(&v) {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, m });
                }
                s = s.with(v);
            }
            if faces.contains(&s) {
                continue;
            }
            faces.extend(s.subsets());
        }
        Ok(Self::from_face_set(m, VertexSet::full(m), faces))
    }

    /// Closure of an arbitrary face list given as masks over `{1..m}`.
    pub fn from_faces(m: usize, faces: &[VertexSet]) -> Result<Self, ComplexError> {
        let lists: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
        Self::from_maximal_faces(m, &lists)
    }

    /// `m` isolated points.
    pub fn discrete(m: usize) -> Result<Self, ComplexError> {
        Self::from_maximal_faces::<[usize; 0]>(m, &[])
    }

    /// The full simplex on `{1..m}`.
    pub fn simplex(m: usize) -> Result<Self, ComplexError> {
        Self::from_maximal_faces(m, &[(1..=m).collect::<Vec<_>>()])
    }

    /// All proper subsets of `{1..m}`.
    pub fn simplex_boundary(m: usize) -> Result<Self, ComplexError> {
        let facets: Vec<Vec<usize>> = (1..=m).map(|v| (1..=m).filter(|&w| w != v).collect()).collect();
        Self::from_maximal_faces(m, &facets)
    }

    /// The cycle `1 - 2 - ... - m - 1` as a 1-dimensional complex.
    pub fn cycle(m: usize) -> Result<Self, ComplexError> {
        Ok(Self::clique_complex(&Graph::cycle(m)?))
    }

    /// Faces are the cliques of `g`.
    pub fn clique_complex(g: &Graph) -> Self {
        let m = g.vertex_count();
        let mut faces = Vec::new();
        // grow cliques by vertices larger than the current maximum
        let mut stack = vec![(VertexSet::EMPTY, VertexSet::full(m))];
        while let Some((clique, candidates)) = stack.pop() {
            faces.push(clique);
            for v in candidates.iter() {
                let later = VertexSet::from_mask(candidates.mask() & !((1u32 << v) - 1));
                stack.push((clique.with(v), later & g.neighbours(v)));
            }
        }
        Self::from_face_set(m, VertexSet::full(m), faces)
    }

    /// Ambient label range `{1..m}`.
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// −1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Faces with `k` vertices, in mask order.
    pub fn faces_of_size(&self, k: usize) -> Vec<VertexSet> {
        self.faces.iter().copied().filter(|f| f.len() == k).collect()
    }

    pub fn maximal_faces(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| (self.vertices - f).iter().all(|v| !self.contains(f.with(v))))
            .filter(|f| !f.is_empty())
            .collect();
        out.sort_by_key(|f| (std::cmp::Reverse(f.len()), f.mask()));
        out
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::empty(self.m).expect("vertex count already validated");
        for e in self.faces_of_size(2) {
            let vs = e.to_vec();
            g.add_edge(vs[0], vs[1]).expect("edge vertices are in range");
        }
        g
    }

    /// `K_J = { I ∈ K : I ⊆ J }`, on vertex set `J ∩ V`.
    pub fn full_subcomplex(&self, j: VertexSet) -> SimplicialComplex {
        let vertices = self.vertices & j;
        SimplicialComplex {
            m: self.m,
            vertices,
            faces: self.faces.iter().copied().filter(|f| f.is_subset(j)).collect(),
        }
    }

    /// Minimal non-faces, in mask order.
    pub fn missing_faces(&self) -> Vec<VertexSet> {
        let mut out = BTreeSet::new();
        for &f in &self.faces {
            for v in (self.vertices - f).iter() {
                let s = f.with(v);
                if !self.contains(s) && s.iter().all(|w| self.contains(s.without(w))) {
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }

    /// A missing face with at least three vertices, if any.
    pub fn flag_witness(&self) -> Option<VertexSet> {
        self.missing_faces().into_iter().find(|f| f.len() >= 3)
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// Components of the 1-skeleton, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let g = self.one_skeleton();
        components_within(&g, self.vertices)
    }

    /// Augmented simplicial chain complex, degree −1 first.
    pub fn augmented_boundaries(&self) -> Vec<IntegerMatrix> {
        let top = (self.dimension() + 1) as usize;
        let by_size: Vec<Vec<VertexSet>> = (0..=top).map(|k| self.faces_of_size(k)).collect();
        let index: Vec<HashMap<VertexSet, usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
            .collect();
        let mut out = vec![IntegerMatrix::zeros(0, 1)];
        for k in 1..=top {
            let mut d = IntegerMatrix::zeros(by_size[k - 1].len(), by_size[k].len());
            for (c, &face) in by_size[k].iter().enumerate() {
                for (t, v) in face.iter().enumerate() {
                    let r = index[k - 1][&face.without(v)];
                    d.set(r, c, BigInt::from(if t % 2 == 0 { 1 } else { -1 }));
                }
            }
            out.push(d);
        }
        out
    }

    pub fn reduced_homology(&self) -> ReducedHomology {
        let groups = chain_homology(&self.augmented_boundaries())
            .expect("simplicial boundary maps always form a chain complex");
        ReducedHomology { groups }
    }
}

/// Connected components of `g` restricted to `within`, by smallest vertex.
pub fn components_within(g: &Graph, within: VertexSet) -> Vec<VertexSet> {
    let mut left = within;
    let mut out = Vec::new();
    while let Some(start) = left.min() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | g.neighbours(v);
            }
            frontier = (next & within) - comp;
            comp = comp | frontier;
        }
        left = left - comp;
        out.push(comp);
    }
    out
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(m={}, vertices={}, maximal={:?})", self.m, self.vertices, self.maximal_faces())
    }
}
