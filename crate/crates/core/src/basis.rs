//! Nested-commutator generators of the commutator subgroup of the
//! right-angled Coxeter group of a complex.
//!
//! For every vertex set `S` with at least two elements, let `j = max S`.
//! Each connected component of the full subcomplex `K_S` that misses `j`
//! contributes one generator `(g_{k1},(g_{k2},...(g_{kr},(g_j,g_i))...))`,
//! where `i` is the smallest vertex of that component and `k1 < ... < kr`
//! lists the rest of `S`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::complex::{components_within, SimplicialComplex};
use crate::graph::VertexSet;
use crate::group::{CommutatorExpr, GroupSpec, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("the complex is not flag: {witness} is a missing face")]
    NotFlag { witness: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutatorGenerator {
    support: VertexSet,
    j: usize,
    i: usize,
    ks: Vec<usize>,
}

impl CommutatorGenerator {
    /// Generator on `support` whose innermost commutator is `(g_j, g_i)`
    /// with `j = max support`. Returns `None` unless `i` is a smaller
    /// vertex of the support.
    pub fn new(support: VertexSet, i: usize) -> Option<Self> {
        let j = support.max()?;
        if support.len() < 2 || !support.contains(i) || i >= j {
            return None;
        }
        let ks = support.without(i).without(j).to_vec();
        Some(CommutatorGenerator { support, j, i, ks })
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn i(&self) -> usize {
        self.i
    }

    /// Outer generators, increasing; the outermost comes first.
    pub fn ks(&self) -> &[usize] {
        &self.ks
    }

    pub fn length(&self) -> usize {
        self.support.len()
    }

    pub fn expr(&self) -> CommutatorExpr {
        let inner = CommutatorExpr::Commutator(
            Box::new(CommutatorExpr::Generator(self.j)),
            Box::new(CommutatorExpr::Generator(self.i)),
        );
        CommutatorExpr::left_nested(&self.ks, inner)
    }

    pub fn to_json(&self) -> Value {
        self.expr().to_json()
    }
}

impl fmt::Display for CommutatorGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr())
    }
}

/// The right-angled Coxeter group whose commutation graph is the 1-skeleton.
pub fn coxeter_group(k: &SimplicialComplex) -> GroupSpec {
    GroupSpec::right_angled_coxeter(k.one_skeleton())
}

/// All generators, ordered by length, then support mask, then `i`.
pub fn enumerate_generators(k: &SimplicialComplex) -> Vec<CommutatorGenerator> {
    let g = k.one_skeleton();
    let mut out = Vec::new();
    for s in k.vertices().subsets().filter(|s| s.len() >= 2) {
        let j = s.max().expect("nonempty");
        for comp in components_within(&g, s) {
            if comp.contains(j) {
                continue;
            }
            let i = comp.min().expect("components are nonempty");
            out.push(CommutatorGenerator::new(s, i).expect("i < j = max S"));
        }
    }
    out.sort_by_key(|c| (c.length(), c.support.mask(), c.i));
    out
}

/// `Σ_J (#components(K_J) − 1)` over nonempty `J`, computed from full
/// subcomplexes without enumerating generators.
pub fn generator_count(k: &SimplicialComplex) -> usize {
    k.vertices()
        .subsets()
        .filter(|j| !j.is_empty())
        .map(|j| k.full_subcomplex(j).connected_components().len() - 1)
        .sum()
}

pub fn per_length_counts(gens: &[CommutatorGenerator]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for g in gens {
        *counts.entry(g.length()).or_insert(0) += 1;
    }
    counts
}

/// For flag `K`: the commutator subgroup is free iff the 1-skeleton is chordal.
pub fn commutator_subgroup_is_free(k: &SimplicialComplex) -> Result<bool, BasisError> {
    if let Some(witness) = k.flag_witness() {
        return Err(BasisError::NotFlag { witness });
    }
    Ok(k.one_skeleton().is_chordal())
}

/// Each generator expanded in the Coxeter group of `K` and normalized.
pub fn generator_words(k: &SimplicialComplex) -> Vec<Word> {
    let spec = coxeter_group(k);
    enumerate_generators(k)
        .iter()
        .map(|c| spec.evaluate(&c.expr()).expect("generator vertices lie in the complex"))
        .collect()
}
