//! Exact computations around right-angled Coxeter groups and real
//! moment-angle complexes.
//!
//! * [`linalg`]: integer matrices, Smith normal form, chain homology.
//! * [`graph`], [`complex`]: vertex sets, graphs, chordality and simplicial
//!   complexes with their reduced homology.
//! * [`group`]: graph products of cyclic groups and commutator calculus.
//! * [`basis`]: the nested-commutator generating set of the commutator
//!   subgroup of a right-angled Coxeter group.
//! * [`cube`]: the real moment-angle complex as a cubical complex, its
//!   homology, fundamental group presentation and first homology classes of
//!   words.
//! * [`document`]: the JSON complex document used by the command line and
//!   browser front ends.

pub mod basis;
pub mod complex;
pub mod cube;
pub mod document;
pub mod graph;
pub mod group;
pub mod linalg;

pub use complex::{ComplexError, ReducedHomology, SimplicialComplex};
pub use graph::{Chordality, Graph, VertexSet, MAX_VERTICES};
pub use group::{CommutatorExpr, GroupError, GroupSpec, Letter, Order, Word};
pub use linalg::{chain_homology, smith_normal_form, HomologyGroup, IntegerMatrix};
