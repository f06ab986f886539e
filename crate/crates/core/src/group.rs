//! Graph products of cyclic groups: words, normal forms and commutators.
//!
//! A [`GroupSpec`] fixes a commutation graph on generators `g_1..g_m` and an
//! order for every generator. All orders 2 gives the right-angled Coxeter
//! group of the graph, all orders infinite the right-angled Artin group.
//!
//! Normal forms are computed in two passes. The first cancels and merges
//! letters: a new letter is merged into the last letter with the same
//! generator provided every letter after it commutes with that generator,
//! which keeps the word reduced. Reduced representatives of one element
//! differ only by commuting swaps, so the second pass picks the
//! lexicographically least arrangement of the resulting partially
//! commutative word by repeatedly emitting the smallest generator that can
//! be moved to the front.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::linalg::IntegerMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator g{vertex} does not exist, the group has {m} generators")]
    InvalidVertex { vertex: usize, m: usize },
    #[error("{found} orders given for {m} generators")]
    OrderCount { m: usize, found: usize },
    #[error("generator g{0} has order {1}, orders must be at least 2")]
    InvalidOrder(usize, u32),
    #[error("the geometric representation needs every generator to have order 2")]
    NotCoxeter,
    #[error("a commutator of two commutators is not a nested commutator")]
    NotNested,
}

/// Order of a vertex group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index.
    pub vertex: usize,
    pub exponent: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Word {
            letters: pairs
                .iter()
                .map(|&(vertex, e)| Letter { vertex, exponent: BigInt::from(e) })
                .collect(),
        }
    }

    /// Generators with exponent one, e.g. `&[2, 1, 2, 1]`.
    pub fn from_generators(gens: &[usize]) -> Self {
        Word::from_pairs(&gens.iter().map(|&v| (v, 1)).collect::<Vec<_>>())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Juxtaposition without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    /// Formal inverse without reduction.
    pub fn reversed_inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { vertex: l.vertex, exponent: -&l.exponent })
                .collect(),
        }
    }

    /// `[[vertex, exponent], ...]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.letters
                .iter()
                .map(|l| {
                    // exponents beyond i64 are written as decimal strings
                    let e = i64::try_from(&l.exponent)
                        .map(Value::from)
                        .unwrap_or_else(|_| Value::String(l.exponent.to_string()));
                    Value::Array(vec![Value::from(l.vertex), e])
                })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exponent.is_one() {
                    format!("g{}", l.vertex)
                } else {
                    format!("g{}^{}", l.vertex, l.exponent)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Iterated commutator of generators, `(a, b) = a⁻¹b⁻¹ab`.
///
/// Only nested expressions can be built: no commutator has two commutator
/// arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorExpr {
    Generator(usize),
    Commutator(Box<CommutatorExpr>, Box<CommutatorExpr>),
}

impl CommutatorExpr {
    pub fn generator(v: usize) -> Self {
        CommutatorExpr::Generator(v)
    }

    pub fn commutator(a: CommutatorExpr, b: CommutatorExpr) -> Result<Self, GroupError> {
        if a.is_commutator() && b.is_commutator() {
            return Err(GroupError::NotNested);
        }
        Ok(CommutatorExpr::Commutator(Box::new(a), Box::new(b)))
    }

    /// `(g_{outer[0]}, (g_{outer[1]}, ... (g_{outer[n-1]}, inner)...))`
    pub fn left_nested(outer: &[usize], inner: CommutatorExpr) -> Self {
        outer.iter().rev().fold(inner, |acc, &k| {
            CommutatorExpr::Commutator(Box::new(CommutatorExpr::Generator(k)), Box::new(acc))
        })
    }

    pub fn is_commutator(&self) -> bool {
        matches!(self, CommutatorExpr::Commutator(..))
    }

    /// Number of generator leaves.
    pub fn length(&self) -> usize {
        match self {
            CommutatorExpr::Generator(_) => 1,
            CommutatorExpr::Commutator(a, b) => a.length() + b.length(),
        }
    }

    /// Nested arrays, innermost pair last: `(g2,(g4,g1))` is `[2,[4,1]]`.
    pub fn to_json(&self) -> Value {
        match self {
            CommutatorExpr::Generator(v) => Value::from(*v),
            CommutatorExpr::Commutator(a, b) => Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => Some(CommutatorExpr::Generator(n.as_u64()? as usize)),
            Value::Array(xs) if xs.len() == 2 => {
                CommutatorExpr::commutator(Self::from_json(&xs[0])?, Self::from_json(&xs[1])?).ok()
            }
            _ => None,
        }
    }
}

impl fmt::Display for CommutatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorExpr::Generator(v) => write!(f, "g{v}"),
            CommutatorExpr::Commutator(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Graph product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    commuting: Graph,
    orders: Vec<Order>,
}

impl GroupSpec {
    pub fn new(commuting: Graph, orders: Vec<Order>) -> Result<Self, GroupError> {
        let m = commuting.vertex_count();
        if orders.len() != m {
            return Err(GroupError::OrderCount { m, found: orders.len() });
        }
        for (i, o) in orders.iter().enumerate() {
            if let Order::Finite(n) = *o {
                if n < 2 {
                    return Err(GroupError::InvalidOrder(i + 1, n));
                }
            }
        }
        Ok(GroupSpec { commuting, orders })
    }

    pub fn right_angled_coxeter(commuting: Graph) -> Self {
        let m = commuting.vertex_count();
        GroupSpec { commuting, orders: vec![Order::Finite(2); m] }
    }

    pub fn right_angled_artin(commuting: Graph) -> Self {
        let m = commuting.vertex_count();
        GroupSpec { commuting, orders: vec![Order::Infinite; m] }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn commuting_graph(&self) -> &Graph {
        &self.commuting
    }

    pub fn order(&self, v: usize) -> Order {
        self.orders[v - 1]
    }

    pub fn is_coxeter(&self) -> bool {
        self.orders.iter().all(|&o| o == Order::Finite(2))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commuting.has_edge(a, b)
    }

    pub fn generator(&self, v: usize) -> Word {
        Word::from_pairs(&[(v, 1)])
    }

    fn check(&self, w: &Word) -> Result<(), GroupError> {
        let m = self.rank();
        match w.letters.iter().find(|l| !(1..=m).contains(&l.vertex)) {
            Some(l) => Err(GroupError::InvalidVertex { vertex: l.vertex, m }),
            None => Ok(()),
        }
    }

    /// Exponent reduced into `1..o` for finite order `o`; `None` if trivial.
    fn reduce_exponent(&self, v: usize, e: BigInt) -> Option<BigInt> {
        let e = match self.order(v) {
            Order::Finite(o) => e.mod_floor(&BigInt::from(o)),
            Order::Infinite => e,
        };
        (!e.is_zero()).then_some(e)
    }

    /// Cancels and merges letters until the word is reduced.
    fn reduce(&self, w: &Word) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        'letters: for l in &w.letters {
            let Some(exponent) = self.reduce_exponent(l.vertex, l.exponent.clone()) else {
                continue;
            };
            for idx in (0..out.len()).rev() {
                let v = out[idx].vertex;
                if v == l.vertex {
                    match self.reduce_exponent(v, &out[idx].exponent + &exponent) {
                        Some(e) => out[idx].exponent = e,
                        None => {
                            out.remove(idx);
                        }
                    }
                    continue 'letters;
                }
                if !self.commutes(v, l.vertex) {
                    break;
                }
            }
            out.push(Letter { vertex: l.vertex, exponent });
        }
        out
    }

    /// Lexicographically least rearrangement of a reduced word under
    /// commuting swaps.
    fn sort_reduced(&self, mut rest: Vec<Letter>) -> Vec<Letter> {
        let all = VertexSet::full(self.rank());
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut blocked = VertexSet::EMPTY;
            let mut best: Option<usize> = None;
            for (p, l) in rest.iter().enumerate() {
                if !blocked.contains(l.vertex) && best.is_none_or(|b| l.vertex < rest[b].vertex) {
                    best = Some(p);
                }
                blocked = blocked | (all - self.commuting.neighbours(l.vertex));
                if blocked == all {
                    break;
                }
            }
            out.push(rest.remove(best.expect("the first letter is always movable")));
        }
        out
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.check(w)?;
        Ok(Word { letters: self.sort_reduced(self.reduce(w)) })
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, GroupError> {
        self.normal_form(&u.concat(v))
    }

    pub fn inverse(&self, u: &Word) -> Result<Word, GroupError> {
        self.normal_form(&u.reversed_inverse())
    }

    pub fn is_identity(&self, u: &Word) -> Result<bool, GroupError> {
        Ok(self.normal_form(u)?.is_empty())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, GroupError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Image in the product of the vertex groups; entry `i` is reduced mod
    /// the order of `g_{i+1}` when that is finite.
    pub fn abelianization(&self, w: &Word) -> Result<Vec<BigInt>, GroupError> {
        self.check(w)?;
        let mut acc = vec![BigInt::zero(); self.rank()];
        for l in &w.letters {
            acc[l.vertex - 1] += &l.exponent;
        }
        for (i, a) in acc.iter_mut().enumerate() {
            if let Order::Finite(o) = self.orders[i] {
                *a = a.mod_floor(&BigInt::from(o));
            }
        }
        Ok(acc)
    }

    /// Normal form of `u⁻¹v⁻¹uv`.
    pub fn commutator(&self, u: &Word, v: &Word) -> Result<Word, GroupError> {
        let raw = u.reversed_inverse().concat(&v.reversed_inverse()).concat(u).concat(v);
        self.normal_form(&raw)
    }

    pub fn evaluate(&self, expr: &CommutatorExpr) -> Result<Word, GroupError> {
        match expr {
            CommutatorExpr::Generator(v) => self.normal_form(&self.generator(*v)),
            CommutatorExpr::Commutator(a, b) => self.commutator(&self.evaluate(a)?, &self.evaluate(b)?),
        }
    }

    fn product(&self, ws: &[Word]) -> Result<Word, GroupError> {
        let raw = ws.iter().fold(Word::new(), |acc, w| acc.concat(w));
        self.normal_form(&raw)
    }

    /// Checks `(a,bc) = (a,c)(a,b)((a,b),c)` and `(ab,c) = (a,c)((a,c),b)(b,c)`.
    pub fn verify_hall(&self, a: &Word, b: &Word, c: &Word) -> Result<bool, GroupError> {
        let ab = self.commutator(a, b)?;
        let ac = self.commutator(a, c)?;
        let bc = self.commutator(b, c)?;
        let first = self.commutator(a, &b.concat(c))?
            == self.product(&[ac.clone(), ab.clone(), self.commutator(&ab, c)?])?;
        let second =
            self.commutator(&a.concat(b), c)? == self.product(&[ac.clone(), self.commutator(&ac, b)?, bc])?;
        Ok(first && second)
    }

    /// Checks the swap identity
    /// `(g_q,(g_p,x)) = (g_q,x)(x,(g_p,g_q))(g_q,g_p)(x,g_p)(g_p,(g_q,x))(x,g_q)(g_p,g_q)(g_p,x)`.
    pub fn verify_swap(&self, p: usize, q: usize, x: &Word) -> Result<bool, GroupError> {
        let (gp, gq) = (self.generator(p), self.generator(q));
        self.check(&gp.concat(&gq))?;
        let c = |a: &Word, b: &Word| self.commutator(a, b);
        let lhs = c(&gq, &c(&gp, x)?)?;
        let rhs = self.product(&[
            c(&gq, x)?,
            c(x, &c(&gp, &gq)?)?,
            c(&gq, &gp)?,
            c(x, &gp)?,
            c(&gp, &c(&gq, x)?)?,
            c(x, &gq)?,
            c(&gp, &gq)?,
            c(&gp, x)?,
        ])?;
        Ok(lhs == rhs)
    }

    /// Image of `w` under the reflection representation on `Z^m`:
    /// `g_i(α_j) = α_j − B(i,j)·α_i` with `B(i,i) = 2`, `B(i,j) = 0` for
    /// commuting pairs and `−2` otherwise. Letters are applied to the raw
    /// word, without reducing it first.
    pub fn geometric_representation(&self, w: &Word) -> Result<IntegerMatrix, GroupError> {
        if !self.is_coxeter() {
            return Err(GroupError::NotCoxeter);
        }
        self.check(w)?;
        let m = self.rank();
        let bilinear = |i: usize, j: usize| -> i64 {
            if i == j {
                2
            } else if self.commutes(i, j) {
                0
            } else {
                -2
            }
        };
        let mut rows: Vec<Vec<BigInt>> = (0..m)
            .map(|r| (0..m).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        for l in &w.letters {
            if l.exponent.is_even() {
                continue;
            }
            let i = l.vertex;
            // right multiplication: M[r][j] -= M[r][i] * B(i, j)
            for row in rows.iter_mut() {
                let mi = row[i - 1].clone();
                if mi.is_zero() {
                    continue;
                }
                for j in 1..=m {
                    let b = bilinear(i, j);
                    if b != 0 {
                        row[j - 1] -= &mi * b;
                    }
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(IntegerMatrix::from_entries(m, m, entries).expect("square matrix"))
    }
}

/// Uniform random word of the given length. Finite-order letters get an
/// exponent uniform in `1..o`; infinite-order letters one of `±1, ±2`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, spec: &GroupSpec, len: usize) -> Word {
    let m = spec.rank();
    let letters = (0..len)
        .map(|_| {
            let vertex = rng.gen_range(1..=m);
            let e: i64 = match spec.order(vertex) {
                Order::Finite(o) => rng.gen_range(1..o as i64),
                Order::Infinite => {
                    let mag = rng.gen_range(1..=2);
                    if rng.gen_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                }
            };
            Letter { vertex, exponent: BigInt::from(e) }
        })
        .collect();
    Word { letters }
}
