//! Finite boolean relations: composition, transpose, complement and the two
//! residuals.
//!
//! A [`Relation`] from a source index set `0..rows` to a destination index
//! set `0..cols` is stored as a row-major bit matrix, one run of 64-bit words
//! per row. Composition ORs destination rows together; left residuation ANDs
//! them; right residuation is a row-subset test. Every kernel works a word at
//! a time.
//!
//! Composition is written diagrammatically: `r.compose(&s)` relates `a` to `c`
//! when `a r b` and `b s c` for some `b`. The residuals are the two right
//! adjoints of composition:
//!
//! * `r.left_residual(&t)` (`r\t`) is the largest `s` with `r ∘ s ⊆ t`;
//! * `t.right_residual(&s)` (`t/s`) is the largest `r` with `r ∘ s ⊆ t`.
//!
//! Empty index sets are legal. A residual whose quantifier ranges over an
//! empty set is full.

use std::fmt;

use crate::bitset::{tail_mask, words_for, words_subset, BitSet, WORD};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Relation {
    /// The empty relation of the given shape.
    pub fn empty(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Relation {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut r = Relation::empty(rows, cols);
        for w in r.bits.iter_mut() {
            *w = u64::MAX;
        }
        r.trim();
        r
    }

    pub fn identity(n: usize) -> Self {
        Relation::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    r.set(i, j, true);
                }
            }
        }
        r
    }

    /// Builds a relation from nested rows of booleans. All rows must have
    /// length `cols`.
    pub fn from_rows<R: AsRef<[bool]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut r = Relation::empty(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    left: (rows.len(), cols),
                    right: (i, row.len()),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                if b {
                    r.set(i, j, true);
                }
            }
        }
        Ok(r)
    }

    /// Builds a relation from a row-major 0/1 matrix literal, e.g.
    /// `Relation::from_matrix(&[[1, 0], [1, 1]])`.
    pub fn from_matrix<const C: usize>(rows: &[[u8; C]]) -> Self {
        Relation::from_fn(rows.len(), C, |i, j| rows[i][j] != 0)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        rows: usize,
        cols: usize,
        pairs: I,
    ) -> Result<Self> {
        let mut r = Relation::empty(rows, cols);
        for (i, j) in pairs {
            if i >= rows {
                return Err(Error::IndexOutOfRange { what: "row", index: i, len: rows });
            }
            if j >= cols {
                return Err(Error::IndexOutOfRange { what: "column", index: j, len: cols });
            }
            r.set(i, j, true);
        }
        Ok(r)
    }

    /// Relation `1 × n` whose single row is `set`.
    pub fn from_row(set: &BitSet) -> Self {
        let mut r = Relation::empty(1, set.len());
        r.bits.copy_from_slice(set.words());
        r
    }

    /// Relation `n × 1` whose single column is `set`.
    pub fn from_column(set: &BitSet) -> Self {
        Relation::from_row(set).transpose()
    }

    /// Relation whose rows are the given sets, all of length `cols`.
    pub fn from_row_sets(cols: usize, rows: &[BitSet]) -> Self {
        let mut r = Relation::empty(rows.len(), cols);
        for (i, s) in rows.iter().enumerate() {
            assert_eq!(s.len(), cols, "row set length");
            r.row_words_mut(i).copy_from_slice(s.words());
        }
        r
    }

    fn trim(&mut self) {
        if self.stride == 0 {
            return;
        }
        let mask = tail_mask(self.cols);
        for i in 0..self.rows {
            self.bits[i * self.stride + self.stride - 1] &= mask;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of {:?}", self.shape());
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of {:?}", self.shape());
        let w = &mut self.bits[i * self.stride + j / WORD];
        if value {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a subset of the destination.
    pub fn row(&self, i: usize) -> BitSet {
        BitSet::from_words(self.cols, self.row_words(i).to_vec())
    }

    /// Column `j` as a subset of the source.
    pub fn col(&self, j: usize) -> BitSet {
        BitSet::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.rows * self.cols
    }

    /// All `(i, j)` pairs in the relation, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).to_vec().into_iter().map(move |j| (i, j)))
    }

    fn check_same_shape(&self, other: &Relation, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// Inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_same_shape(other, "is_subset")?;
        Ok(words_subset(&self.bits, &other.bits))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same_shape(other, "union")?;
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(r)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_same_shape(other, "intersection")?;
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        Ok(r)
    }

    /// Boolean matrix product, `self ∘ other` in diagrammatic order.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "compose",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Relation::empty(self.rows, other.cols);
        for a in 0..self.rows {
            let (lo, hi) = (a * out.stride, (a + 1) * out.stride);
            for b in self.row(a).iter() {
                for (o, w) in out.bits[lo..hi].iter_mut().zip(other.row_words(b)) {
                    *o |= w;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Relation {
        let mut out = Relation::empty(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter() {
                out.set(j, i, true);
            }
        }
        out
    }

    pub fn complement(&self) -> Relation {
        let mut r = self.clone();
        for w in r.bits.iter_mut() {
            *w = !*w;
        }
        r.trim();
        r
    }

    /// Left residual `self \ t`: relates `b` to `c` when every `a` with
    /// `a self b` also has `a t c`.
    pub fn left_residual(&self, t: &Relation) -> Result<Relation> {
        if self.rows != t.rows {
            return Err(Error::ShapeMismatch {
                op: "left_residual",
                left: self.shape(),
                right: t.shape(),
            });
        }
        let by_col = self.transpose();
        let mut out = Relation::full(self.cols, t.cols);
        for b in 0..self.cols {
            let (lo, hi) = (b * out.stride, (b + 1) * out.stride);
            for a in by_col.row(b).iter() {
                for (o, w) in out.bits[lo..hi].iter_mut().zip(t.row_words(a)) {
                    *o &= w;
                }
            }
        }
        Ok(out)
    }

    /// Right residual `self / s`: relates `a` to `b` when every `c` with
    /// `b s c` also has `a self c`.
    pub fn right_residual(&self, s: &Relation) -> Result<Relation> {
        if self.cols != s.cols {
            return Err(Error::ShapeMismatch {
                op: "right_residual",
                left: self.shape(),
                right: s.shape(),
            });
        }
        let mut out = Relation::empty(self.rows, s.rows);
        for a in 0..self.rows {
            let ta = self.row_words(a);
            for b in 0..s.rows {
                if words_subset(s.row_words(b), ta) {
                    out.set(a, b, true);
                }
            }
        }
        Ok(out)
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| self.get(i, i))
    }

    /// Checks reflexivity and transitivity, returning the first failing pair.
    pub fn preorder_violation(&self) -> Option<Error> {
        if self.rows != self.cols {
            return Some(Error::NotAPreorder { reason: "non-square", a: self.rows, b: self.cols });
        }
        if let Some(i) = (0..self.rows).find(|&i| !self.get(i, i)) {
            return Some(Error::NotAPreorder { reason: "not reflexive", a: i, b: i });
        }
        // Transitive iff r ∘ r ⊆ r; any extra pair is a witness.
        let rr = self.compose(self).expect("square");
        let witness = rr.pairs().find(|&(i, j)| !self.get(i, j));
        witness.map(|(a, b)| Error::NotAPreorder { reason: "not transitive", a, b })
    }

    pub fn is_preorder(&self) -> bool {
        self.preorder_violation().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| !(self.get(i, j) && self.get(j, i))))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(row_of[i], col_of[j])` of `self`.
    pub fn reindex(&self, row_of: &[usize], col_of: &[usize]) -> Relation {
        Relation::from_fn(row_of.len(), col_of.len(), |i, j| self.get(row_of[i], col_of[j]))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        write!(f, "]")
    }
}

/// The graph of a total function `0..len → 0..codomain`, viewed as a relation
/// with exactly one entry per row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FunctionGraph {
    map: Vec<usize>,
    codomain: usize,
}

impl FunctionGraph {
    pub fn new(map: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain) {
            return Err(Error::IndexOutOfRange { what: "function value", index: bad, len: codomain });
        }
        Ok(FunctionGraph { map, codomain })
    }

    pub fn identity(n: usize) -> Self {
        FunctionGraph { map: (0..n).collect(), codomain: n }
    }

    /// Reads a function off a relation, failing on a row without exactly one
    /// entry.
    pub fn from_relation(r: &Relation) -> Result<Self> {
        let mut map = Vec::with_capacity(r.rows());
        for i in 0..r.rows() {
            let row = r.row(i);
            match row.count() {
                1 => map.push(row.first().unwrap()),
                count => return Err(Error::NotAFunction { row: i, count }),
            }
        }
        Ok(FunctionGraph { map, codomain: r.cols() })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn domain(&self) -> usize {
        self.map.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn to_relation(&self) -> Relation {
        let mut r = Relation::empty(self.map.len(), self.codomain);
        for (i, &j) in self.map.iter().enumerate() {
            r.set(i, j, true);
        }
        r
    }

    /// Diagrammatic composite: apply `self`, then `next`.
    pub fn then(&self, next: &FunctionGraph) -> Result<FunctionGraph> {
        if self.codomain != next.domain() {
            return Err(Error::ShapeMismatch {
                op: "function composition",
                left: (self.domain(), self.codomain),
                right: (next.domain(), next.codomain),
            });
        }
        Ok(FunctionGraph {
            map: self.map.iter().map(|&y| next.map[y]).collect(),
            codomain: next.codomain,
        })
    }

    /// Inverse image of a subset of the codomain.
    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.domain(), (0..self.domain()).filter(|&x| set.contains(self.map[x])))
    }

    /// Direct image of a subset of the domain.
    pub fn image(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.codomain, set.iter().map(|x| self.map[x]))
    }

    /// Enumerates every function `0..domain → 0..codomain` in lexicographic
    /// order of value vectors.
    pub fn enumerate(domain: usize, codomain: usize) -> impl Iterator<Item = FunctionGraph> {
        let total = if domain == 0 {
            1
        } else if codomain == 0 {
            0
        } else {
            codomain.checked_pow(domain as u32).unwrap_or(usize::MAX)
        };
        (0..total).map(move |mut code| {
            let mut map = vec![0; domain];
            for slot in map.iter_mut().rev() {
                *slot = code % codomain;
                code /= codomain;
            }
            FunctionGraph { map, codomain }
        })
    }
}
