//! Exact integer matrices, Smith normal form and homology of finite chain
//! complexes of free abelian groups.
//!
//! Everything here is exact. Elimination first runs over `i64` with checked
//! arithmetic and restarts over [`BigInt`] if any intermediate value leaves
//! the machine range, so results never depend on the fast path.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("{rows}x{cols} matrix needs {expected} entries, got {found}")]
    EntryCount { rows: usize, cols: usize, expected: usize, found: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("boundary in degree {degree} has {found} rows but degree {prev} has {expected} cells")]
    DimensionMismatch { degree: usize, prev: usize, expected: usize, found: usize },
    #[error("composite of boundaries in degrees {lower} and {upper} is not zero")]
    NotAComplex { lower: usize, upper: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of machine integers. An empty slice gives a
    /// `0 x 0` matrix.
    pub fn from_rows<R: AsRef<[i64]>>(data: &[R]) -> Result<Self, LinalgError> {
        let cols = data.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(data.len() * cols);
        for (i, row) in data.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinalgError::RaggedRows { row: i, expected: cols, found: row.len() });
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntegerMatrix { rows: data.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.iter().enumerate().all(|(k, x)| {
                if k / self.cols == k % self.cols {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries of every column, as `(row, value)` pairs.
    pub fn column_support(&self) -> Vec<Vec<(usize, &BigInt)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, x) in self.row(r).iter().enumerate() {
                if !x.is_zero() {
                    cols[c].push((r, x));
                }
            }
        }
        cols
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).len()
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Checks that `lower * upper` vanishes, walking only nonzero entries.
fn composite_is_zero(lower: &IntegerMatrix, upper: &IntegerMatrix) -> bool {
    let lower_cols = lower.column_support();
    let mut acc = vec![BigInt::zero(); lower.rows()];
    for col in upper.column_support() {
        let mut touched = Vec::new();
        for (k, b) in col {
            for &(r, a) in &lower_cols[k] {
                acc[r] += a * b;
                touched.push(r);
            }
        }
        for r in touched {
            if !acc[r].is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Elimination engine

trait Scalar: Clone + fmt::Debug + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Euclidean quotient and remainder, `0 <= r < |b|`.
    fn div_rem(a: &Self, b: &Self) -> Option<(Self, Self)>;
    /// `a - q * b`
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn div_rem(a: &Self, b: &Self) -> Option<(Self, Self)> {
        Some((a.checked_div_euclid(*b)?, a.checked_rem_euclid(*b)?))
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn div_rem(a: &Self, b: &Self) -> Option<(Self, Self)> {
        let (q, r) = a.div_mod_floor(b);
        // floor division leaves the sign of b on r; shift to 0 <= r < |b|
        if r.is_negative() {
            Some((q + 1, r - b))
        } else {
            Some((q, r))
        }
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

struct Eliminator<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    left: Option<Vec<T>>,
    right: Option<Vec<T>>,
}

fn identity_vec<T: Scalar>(n: usize) -> Vec<T> {
    let mut v = vec![T::nil(); n * n];
    for i in 0..n {
        v[i * n + i] = T::unit();
    }
    v
}

impl<T: Scalar> Eliminator<T> {
    fn new(rows: usize, cols: usize, a: Vec<T>, track: bool) -> Self {
        let (left, right) = if track {
            (Some(identity_vec(rows)), Some(identity_vec(cols)))
        } else {
            (None, None)
        };
        Eliminator { rows, cols, a, left, right }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    /// Smallest nonzero entry of the trailing block, stopping early at a unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = self.at(r, c);
                if x.is_nil() {
                    continue;
                }
                if x.is_unit() {
                    return Some((r, c));
                }
                match best {
                    Some((br, bc)) if !x.abs_lt(self.at(br, bc)) => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        if let Some(u) = self.left.as_mut() {
            for c in 0..self.rows {
                u.swap(i * self.rows + c, j * self.rows + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        if let Some(v) = self.right.as_mut() {
            for r in 0..self.cols {
                v.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_op(&mut self, i: usize, t: usize, q: &T, support: &[usize]) -> Result<(), Overflow> {
        for &c in support {
            let k = i * self.cols + c;
            self.a[k] = T::sub_mul(&self.a[k], q, &self.a[t * self.cols + c]).ok_or(Overflow)?;
        }
        if let Some(u) = self.left.as_mut() {
            let n = self.rows;
            for c in 0..n {
                let src = &u[t * n + c];
                if !src.is_nil() {
                    u[i * n + c] = T::sub_mul(&u[i * n + c], q, src).ok_or(Overflow)?;
                }
            }
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_op(&mut self, j: usize, t: usize, q: &T, support: &[usize]) -> Result<(), Overflow> {
        for &r in support {
            let k = r * self.cols + j;
            self.a[k] = T::sub_mul(&self.a[k], q, &self.a[r * self.cols + t]).ok_or(Overflow)?;
        }
        if let Some(v) = self.right.as_mut() {
            let n = self.cols;
            for r in 0..n {
                let src = &v[r * n + t];
                if !src.is_nil() {
                    v[r * n + j] = T::sub_mul(&v[r * n + j], q, src).ok_or(Overflow)?;
                }
            }
        }
        Ok(())
    }

    /// Reduces to diagonal form; returns the nonzero diagonal (unnormalized).
    fn diagonalize(&mut self) -> Result<Vec<T>, Overflow> {
        let mut pivots = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let mut dirty = false;
                let row_support: Vec<usize> =
                    (t..self.cols).filter(|&c| !self.at(t, c).is_nil()).collect();
                for i in t + 1..self.rows {
                    if self.at(i, t).is_nil() {
                        continue;
                    }
                    let (q, r) = T::div_rem(self.at(i, t), self.at(t, t)).ok_or(Overflow)?;
                    self.row_op(i, t, &q, &row_support)?;
                    dirty |= !r.is_nil();
                }
                let col_support: Vec<usize> =
                    (t..self.rows).filter(|&r| !self.at(r, t).is_nil()).collect();
                for j in t + 1..self.cols {
                    if self.at(t, j).is_nil() {
                        continue;
                    }
                    let (q, r) = T::div_rem(self.at(t, j), self.at(t, t)).ok_or(Overflow)?;
                    self.col_op(j, t, &q, &col_support)?;
                    dirty |= !r.is_nil();
                }
                if !dirty {
                    break;
                }
                // a remainder survived: it is smaller than the pivot, promote it
                let mut best: Option<(usize, usize)> = None;
                for i in t + 1..self.rows {
                    let x = self.at(i, t);
                    if !x.is_nil() && best.is_none_or(|(br, bc)| x.abs_lt(self.at(br, bc))) {
                        best = Some((i, t));
                    }
                }
                for j in t + 1..self.cols {
                    let x = self.at(t, j);
                    if !x.is_nil() && best.is_none_or(|(br, bc)| x.abs_lt(self.at(br, bc))) {
                        best = Some((t, j));
                    }
                }
                if let Some((br, bc)) = best {
                    if self.at(br, bc).abs_lt(self.at(t, t)) {
                        self.swap_rows(t, br);
                        self.swap_cols(t, bc);
                    }
                }
            }
            pivots.push(self.at(t, t).clone());
            t += 1;
        }
        Ok(pivots)
    }
}

fn to_machine(m: &IntegerMatrix) -> Option<Vec<i64>> {
    m.entries.iter().map(ToPrimitive::to_i64).collect()
}

fn to_matrix<T: Scalar>(n_rows: usize, n_cols: usize, v: &[T]) -> IntegerMatrix {
    IntegerMatrix { rows: n_rows, cols: n_cols, entries: v.iter().map(Scalar::to_big).collect() }
}

/// Turns a list of nonzero diagonal entries into invariant factors
/// `d1 | d2 | ...`, all positive.
pub fn normalize_diagonal(diag: &[BigInt]) -> Vec<BigInt> {
    let mut units = 0;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        debug_assert!(!d.is_zero());
        if d.magnitude().is_one() {
            units += 1;
        } else {
            rest.push(d.abs());
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if !(&rest[j] % &rest[i]).is_zero() {
                let g = rest[i].gcd(&rest[j]);
                let l = rest[i].lcm(&rest[j]);
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut out = vec![BigInt::one(); units];
    for d in rest {
        if d.is_one() {
            out.insert(0, d);
        } else {
            out.push(d);
        }
    }
    out
}

/// Invariant factors `d1 | d2 | ... | dr` of `m`; `r` is its rank.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    if let Some(small) = to_machine(m) {
        let mut e = Eliminator::new(m.rows, m.cols, small, false);
        if let Ok(piv) = e.diagonalize() {
            let piv: Vec<BigInt> = piv.iter().map(Scalar::to_big).collect();
            return normalize_diagonal(&piv);
        }
    }
    let mut e = Eliminator::new(m.rows, m.cols, m.entries.clone(), false);
    let piv = e.diagonalize().unwrap_or_else(|_| unreachable!("big integers do not overflow"));
    normalize_diagonal(&piv)
}

/// A diagonalization `left * M * right = D` by unimodular matrices, where
/// `D` has `pivots[t]` at `(t, t)` and zeros elsewhere. The pivots are not
/// normalized into divisibility order.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    pub pivots: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        normalize_diagonal(&self.pivots)
    }

    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.left.rows, self.right.rows);
        for (t, p) in self.pivots.iter().enumerate() {
            d.set(t, t, p.clone());
        }
        d
    }
}

pub fn smith_form(m: &IntegerMatrix) -> SmithForm {
    fn finish<T: Scalar>(m: &IntegerMatrix, e: Eliminator<T>, piv: Vec<T>) -> SmithForm {
        SmithForm {
            left: to_matrix(m.rows, m.rows, e.left.as_deref().unwrap_or_default()),
            right: to_matrix(m.cols, m.cols, e.right.as_deref().unwrap_or_default()),
            pivots: piv.iter().map(Scalar::to_big).collect(),
        }
    }
    if let Some(small) = to_machine(m) {
        let mut e = Eliminator::new(m.rows, m.cols, small, true);
        if let Ok(piv) = e.diagonalize() {
            return finish(m, e, piv);
        }
    }
    let mut e = Eliminator::new(m.rows, m.cols, m.entries.clone(), true);
    let piv = e.diagonalize().unwrap_or_else(|_| unreachable!("big integers do not overflow"));
    finish(m, e, piv)
}

// ---------------------------------------------------------------------------
// Homology

/// A finitely generated abelian group `Z^betti + Z/t1 + Z/t2 + ...` with
/// `2 <= t1 | t2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum, with torsion brought back into invariant-factor form.
    pub fn direct_sum<'a, I: IntoIterator<Item = &'a HomologyGroup>>(groups: I) -> HomologyGroup {
        let mut betti = 0;
        let mut torsion = Vec::new();
        for g in groups {
            betti += g.betti;
            torsion.extend(g.torsion.iter().cloned());
        }
        let torsion = normalize_diagonal(&torsion).into_iter().filter(|t| !t.is_one()).collect();
        HomologyGroup { betti, torsion }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of the chain complex whose `k`-th boundary `boundaries[k]` maps
/// degree-`k` chains to degree-`(k-1)` chains.
///
/// The number of rows of `boundaries[0]` is unconstrained; every other
/// boundary must have as many rows as the previous one has columns, and
/// consecutive boundaries must compose to zero.
pub fn chain_homology(boundaries: &[IntegerMatrix]) -> Result<Vec<HomologyGroup>, LinalgError> {
    for k in 1..boundaries.len() {
        let (lower, upper) = (&boundaries[k - 1], &boundaries[k]);
        if upper.rows() != lower.cols() {
            return Err(LinalgError::DimensionMismatch {
                degree: k,
                prev: k - 1,
                expected: lower.cols(),
                found: upper.rows(),
            });
        }
        if !composite_is_zero(lower, upper) {
            return Err(LinalgError::NotAComplex { lower: k - 1, upper: k });
        }
    }
    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(smith_normal_form).collect();
    let groups = (0..boundaries.len())
        .map(|k| {
            let dim = boundaries[k].cols();
            let rank_out = factors[k].len();
            let (rank_in, torsion) = match factors.get(k + 1) {
                Some(f) => (f.len(), f.iter().filter(|d| !d.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            HomologyGroup { betti: dim - rank_out - rank_in, torsion }
        })
        .collect();
    Ok(groups)
}
