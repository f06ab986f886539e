//! The real moment-angle complex of `K` as a cubical subcomplex of
//! `[-1, 1]^m`.
//!
//! A cell is a face `I ∈ K` of free coordinates together with a sign for
//! every coordinate outside `I`. The basepoint is the vertex `(1, ..., 1)`.
//! The 1-skeleton is always the full 1-skeleton of the `m`-cube, and a
//! letter `g_i` of a word is read as the step along axis `i`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::basis::{enumerate_generators, generator_words};
use crate::complex::SimplicialComplex;
use crate::graph::VertexSet;
use crate::group::{GroupError, Word};
use crate::linalg::{chain_homology, smith_form, smith_normal_form, HomologyGroup, IntegerMatrix, LinalgError};

/// Cell counts grow like `3^m`; larger complexes are refused.
pub const MAX_CUBE_VERTICES: usize = 12;
/// The splitting check runs `2^m` simplicial homology computations.
pub const MAX_SPLITTING_VERTICES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("{m} vertices is too many, at most {max} are supported here")]
    TooManyVertices { m: usize, max: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("word does not close up: generator g{0} occurs an odd number of times")]
    NotClosed(usize),
    #[error("the 1-skeleton is disconnected")]
    Disconnected,
    #[error("first homology has torsion, classes cannot be coordinatized")]
    TorsionInH1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalCell {
    /// Free coordinates; a face of `K`.
    pub free: VertexSet,
    /// Pinned coordinates with sign −1; disjoint from `free`. Every other
    /// pinned coordinate is +1.
    pub negative: VertexSet,
}

impl CubicalCell {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// +1, −1, or 0 for a free coordinate.
    pub fn coordinate(&self, v: usize) -> i8 {
        if self.free.contains(v) {
            0
        } else if self.negative.contains(v) {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    m: usize,
    cells: Vec<Vec<CubicalCell>>,
    index: Vec<HashMap<CubicalCell, usize>>,
    boundaries: Vec<IntegerMatrix>,
}

pub fn build(k: &SimplicialComplex) -> Result<CubeComplex, CubeError> {
    let m = k.ambient_dim();
    if m > MAX_CUBE_VERTICES {
        return Err(CubeError::TooManyVertices { m, max: MAX_CUBE_VERTICES });
    }
    let all = VertexSet::full(m);
    let top = (k.dimension() + 1).max(0) as usize;
    let mut cells = vec![Vec::new(); top + 1];
    for &face in k.faces() {
        for negative in (all - face).subsets() {
            cells[face.len()].push(CubicalCell { free: face, negative });
        }
    }
    let index: Vec<HashMap<CubicalCell, usize>> = cells
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, &c)| (c, i)).collect())
        .collect();

    let mut boundaries = vec![IntegerMatrix::zeros(0, cells[0].len())];
    for d in 1..=top {
        let mut b = IntegerMatrix::zeros(cells[d - 1].len(), cells[d].len());
        for (col, cell) in cells[d].iter().enumerate() {
            for (t, v) in cell.free.iter().enumerate() {
                let sign: i64 = if t % 2 == 0 { 1 } else { -1 };
                let free = cell.free.without(v);
                let plus = CubicalCell { free, negative: cell.negative };
                let minus = CubicalCell { free, negative: cell.negative.with(v) };
                b.set(index[d - 1][&plus], col, BigInt::from(sign));
                b.set(index[d - 1][&minus], col, BigInt::from(-sign));
            }
        }
        boundaries.push(b);
    }
    Ok(CubeComplex { m, cells, index, boundaries })
}

impl CubeComplex {
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, d: usize) -> &[CubicalCell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn cell_index(&self, cell: &CubicalCell) -> Option<usize> {
        self.index.get(cell.dimension())?.get(cell).copied()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// `boundaries()[d]` maps `d`-chains to `(d−1)`-chains; the degree-0
    /// map has no rows.
    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| if d % 2 == 0 { cs.len() as i64 } else { -(cs.len() as i64) })
            .sum()
    }

    pub fn homology(&self) -> Result<Vec<HomologyGroup>, CubeError> {
        Ok(chain_homology(&self.boundaries)?)
    }

    /// Index of the edge along `axis` leaving the vertex with negative set
    /// `at`.
    fn edge_along(&self, at: VertexSet, axis: usize) -> Option<usize> {
        let edge = CubicalCell { free: VertexSet::singleton(axis), negative: at.without(axis) };
        self.cell_index(&edge)
    }

    /// Breadth-first spanning tree from the basepoint, axes in increasing
    /// order. Returns the tree flag of every edge.
    fn spanning_tree(&self) -> Result<Vec<bool>, CubeError> {
        let vertex_index = |c: VertexSet| self.index[0][&CubicalCell { free: VertexSet::EMPTY, negative: c }];
        let mut in_tree = vec![false; self.cells(1).len()];
        let mut seen = vec![false; self.cells(0).len()];
        let base = VertexSet::EMPTY;
        seen[vertex_index(base)] = true;
        let mut queue = VecDeque::from([base]);
        let mut reached = 1;
        while let Some(at) = queue.pop_front() {
            for axis in 1..=self.m {
                let Some(e) = self.edge_along(at, axis) else { continue };
                let next = if at.contains(axis) { at.without(axis) } else { at.with(axis) };
                let vi = vertex_index(next);
                if !seen[vi] {
                    seen[vi] = true;
                    in_tree[e] = true;
                    reached += 1;
                    queue.push_back(next);
                }
            }
        }
        if reached != self.cells(0).len() {
            return Err(CubeError::Disconnected);
        }
        Ok(in_tree)
    }
}

/// Raw presentation of the fundamental group: one generator per edge off a
/// spanning tree, one relator per square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Presentation {
    /// Edge index of each generator.
    pub generators: Vec<usize>,
    /// Boundary loops of the squares with tree edges deleted, as
    /// `(generator, ±1)` sequences.
    pub relators: Vec<Vec<(usize, i8)>>,
}

impl Pi1Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Relation matrix of the abelianization: one column per relator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut r = IntegerMatrix::zeros(self.generators.len(), self.relators.len());
        for (c, rel) in self.relators.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(g, s) in rel {
                *acc.entry(g).or_insert(0) += i64::from(s);
            }
            for (g, x) in acc {
                r.set(g, c, BigInt::from(x));
            }
        }
        r
    }

    /// The abelianized group, `Z^g / relations`.
    pub fn abelianization(&self) -> HomologyGroup {
        let factors = smith_normal_form(&self.relation_matrix());
        HomologyGroup {
            betti: self.generators.len() - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}

pub fn fundamental_group_presentation(r: &CubeComplex) -> Result<Pi1Presentation, CubeError> {
    let in_tree = r.spanning_tree()?;
    let mut gen_of_edge = vec![None; in_tree.len()];
    let mut generators = Vec::new();
    for (e, &t) in in_tree.iter().enumerate() {
        if !t {
            gen_of_edge[e] = Some(generators.len());
            generators.push(e);
        }
    }
    let mut relators = Vec::new();
    for square in r.cells(2) {
        let vs = square.free.to_vec();
        let (a, b) = (vs[0], vs[1]);
        let n = square.negative;
        let edge = |axis: usize, other_negative: bool| {
            let other = if axis == a { b } else { a };
            let neg = if other_negative { n.with(other) } else { n };
            r.cell_index(&CubicalCell { free: VertexSet::singleton(axis), negative: neg })
                .expect("square edges are cells")
        };
        // counterclockwise from the corner with both free coordinates at −1
        let loop_edges = [(edge(a, true), 1i8), (edge(b, false), 1), (edge(a, false), -1), (edge(b, true), -1)];
        relators.push(
            loop_edges
                .iter()
                .filter_map(|&(e, s)| gen_of_edge[e].map(|g| (g, s)))
                .collect(),
        );
    }
    Ok(Pi1Presentation { generators, relators })
}

/// Closed edge path from the basepoint, as `(edge, ±1)` steps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeLoop {
    pub steps: Vec<(usize, i8)>,
}

impl EdgeLoop {
    /// The loop as a cellular 1-chain.
    pub fn chain(&self, edge_count: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); edge_count];
        for &(e, s) in &self.steps {
            c[e] += s as i64;
        }
        c
    }
}

/// Reads `w` as an edge path: each letter with odd exponent flips the sign
/// of its coordinate. The path must return to the basepoint.
pub fn word_to_loop(r: &CubeComplex, w: &Word) -> Result<EdgeLoop, CubeError> {
    let mut at = VertexSet::EMPTY;
    let mut steps = Vec::new();
    for l in w.letters() {
        if !(1..=r.m).contains(&l.vertex) {
            return Err(GroupError::InvalidVertex { vertex: l.vertex, m: r.m }.into());
        }
        if l.exponent.is_even() {
            continue;
        }
        let e = r.edge_along(at, l.vertex).ok_or(GroupError::InvalidVertex { vertex: l.vertex, m: r.m })?;
        // edges run from the −1 end to the +1 end
        if at.contains(l.vertex) {
            steps.push((e, 1));
            at = at.without(l.vertex);
        } else {
            steps.push((e, -1));
            at = at.with(l.vertex);
        }
    }
    match at.min() {
        Some(v) => Err(CubeError::NotClosed(v)),
        None => Ok(EdgeLoop { steps }),
    }
}

/// Coordinates on `H_1` of the cube complex, a free abelian group.
///
/// Cycles are first written in the fundamental-cycle basis of the spanning
/// tree (their values on non-tree edges); a Smith form `U·R·V = D` of the
/// square relations `R` in that basis then splits off the boundaries, and
/// the rows of `U` past the rank give the class.
#[derive(Clone, Debug)]
pub struct H1Coordinates {
    presentation: Pi1Presentation,
    edge_count: usize,
    projection: IntegerMatrix,
}

impl H1Coordinates {
    pub fn new(r: &CubeComplex) -> Result<Self, CubeError> {
        let presentation = fundamental_group_presentation(r)?;
        let smith = smith_form(&presentation.relation_matrix());
        if smith.pivots.iter().any(|p| !p.magnitude().is_one()) {
            return Err(CubeError::TorsionInH1);
        }
        let g = presentation.generator_count();
        let rank = smith.rank();
        let mut entries = Vec::with_capacity((g - rank) * g);
        for row in rank..g {
            entries.extend(smith.left.row(row).iter().cloned());
        }
        let projection = IntegerMatrix::from_entries(g - rank, g, entries)?;
        Ok(H1Coordinates { presentation, edge_count: r.cells(1).len(), projection })
    }

    pub fn rank(&self) -> usize {
        self.projection.rows()
    }

    pub fn presentation(&self) -> &Pi1Presentation {
        &self.presentation
    }

    /// Class of a 1-cycle given on all edges.
    pub fn class_of_cycle(&self, chain: &[BigInt]) -> Vec<BigInt> {
        let restricted: Vec<&BigInt> = self.presentation.generators.iter().map(|&e| &chain[e]).collect();
        (0..self.projection.rows())
            .map(|row| {
                self.projection
                    .row(row)
                    .iter()
                    .zip(&restricted)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * *b)
                    .sum()
            })
            .collect()
    }

    pub fn loop_class(&self, l: &EdgeLoop) -> Vec<BigInt> {
        self.class_of_cycle(&l.chain(self.edge_count))
    }
}

/// Both sides of `H_k(R_K) ≅ ⊕_J H̃_{k−1}(K_J)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingDegree {
    pub degree: usize,
    pub cellular: HomologyGroup,
    pub summed: HomologyGroup,
    /// Nontrivial summands `(J, H̃_{k−1}(K_J))`.
    pub contributions: Vec<(VertexSet, HomologyGroup)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub degrees: Vec<SplittingDegree>,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.cellular == d.summed)
    }
}

pub fn homology_splitting_check(k: &SimplicialComplex) -> Result<SplittingReport, CubeError> {
    let m = k.ambient_dim();
    if m > MAX_SPLITTING_VERTICES {
        return Err(CubeError::TooManyVertices { m, max: MAX_SPLITTING_VERTICES });
    }
    let cellular = build(k)?.homology()?;
    let subcomplexes: Vec<(VertexSet, Vec<HomologyGroup>)> = VertexSet::full(m)
        .subsets()
        .map(|j| (j, k.full_subcomplex(j).reduced_homology().groups().to_vec()))
        .collect();
    let top = subcomplexes.iter().map(|(_, h)| h.len()).max().unwrap_or(0).max(cellular.len());
    let degrees = (0..top)
        .map(|d| {
            // reduced degree d − 1 sits at index d
            let contributions: Vec<(VertexSet, HomologyGroup)> = subcomplexes
                .iter()
                .filter_map(|(j, h)| h.get(d).filter(|g| !g.is_trivial()).map(|g| (*j, g.clone())))
                .collect();
            SplittingDegree {
                degree: d,
                cellular: cellular.get(d).cloned().unwrap_or_default(),
                summed: HomologyGroup::direct_sum(contributions.iter().map(|(_, g)| g)),
                contributions,
            }
        })
        .collect();
    Ok(SplittingReport { degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCertificate {
    pub generator_count: usize,
    pub h1_rank: usize,
    /// Invariant factors of the matrix of generator classes.
    pub invariant_factors: Vec<BigInt>,
}

impl BasisCertificate {
    /// The generator classes form a basis of `H_1`.
    pub fn holds(&self) -> bool {
        self.generator_count == self.h1_rank
            && self.invariant_factors.len() == self.generator_count
            && self.invariant_factors.iter().all(One::is_one)
    }
}

/// Maps every nested-commutator generator to `H_1(R_K)` and checks that the
/// classes form a `Z`-basis.
pub fn basis_certificate(k: &SimplicialComplex) -> Result<BasisCertificate, CubeError> {
    let m = k.ambient_dim();
    if m > MAX_SPLITTING_VERTICES {
        return Err(CubeError::TooManyVertices { m, max: MAX_SPLITTING_VERTICES });
    }
    let r = build(k)?;
    let coords = H1Coordinates::new(&r)?;
    let words = generator_words(k);
    debug_assert_eq!(words.len(), enumerate_generators(k).len());
    let mut entries = Vec::with_capacity(words.len() * coords.rank());
    for w in &words {
        entries.extend(coords.loop_class(&word_to_loop(&r, w)?));
    }
    let classes = IntegerMatrix::from_entries(words.len(), coords.rank(), entries)?;
    Ok(BasisCertificate {
        generator_count: words.len(),
        h1_rank: coords.rank(),
        invariant_factors: smith_normal_form(&classes),
    })
}
