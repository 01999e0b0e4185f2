//! Linear algebra over GF(2) on dense bit-packed rows.
//!
//! Every routine eliminates with the leftmost nonzero column as pivot and
//! processes rows in input order, so bases and ranks are reproducible
//! bit-for-bit for a given input.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix row {row} has length {found}, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A vector over GF(2), stored as packed 64-bit words.
///
/// Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// Builds a vector with the given coordinates set. Repeated indices cancel.
    pub fn from_indices<I>(len: usize, indices: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut v = Self::zeros(len);
        for index in indices {
            if index >= len {
                return Err(LinalgError::IndexOutOfRange { index, len });
            }
            v.flip(index);
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    pub fn ones_vector(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// In-place addition (XOR). Lengths must agree.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn try_xor_assign(&mut self, other: &BitVec) -> Result<(), LinalgError> {
        self.check_len(other)?;
        self.xor_assign(other);
        Ok(())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Set indices in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(k * WORD_BITS + t)
                }
            })
        })
    }

    /// True iff every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    fn check_len(&self, other: &BitVec) -> Result<(), LinalgError> {
        if self.len != other.len {
            return Err(LinalgError::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Serialized as the sorted list of set positions.
impl serde::Serialize for BitVec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ones())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A `rows × cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixF2 {
    cols: usize,
    data: Vec<BitVec>,
}

impl MatrixF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            data: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, LinalgError> {
        for (row, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(LinalgError::RaggedRow {
                    row,
                    expected: cols,
                    found: v.len(),
                });
            }
        }
        Ok(Self { cols, data: rows })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::LengthMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.ones() {
                m.data[i].set(j);
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[&[u8]]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&x| x & 1 == 1).collect::<Vec<_>>()))
            .collect();
        Self::from_rows(cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[BitVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.data[i].set(j)
        } else {
            self.data[i].clear(j)
        }
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.rows());
        for (i, row) in self.data.iter().enumerate() {
            if row.get(j) {
                c.set(i);
            }
        }
        c
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows());
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.data[j].set(i);
            }
        }
        t
    }

    /// `M·v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows());
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i);
            }
        }
        Ok(out)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &MatrixF2) -> Result<MatrixF2, LinalgError> {
        if self.cols != rhs.rows() {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: rhs.rows(),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.data[k]);
                }
                acc
            })
            .collect();
        Ok(MatrixF2 {
            cols: rhs.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        let s = self.data[src].clone();
        self.data[dst].xor_assign(&s);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis.dim()
    }

    /// A basis of `{v : M·v = 0}`, one vector per free column in
    /// increasing column order.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let (rref, pivots) = self.reduced_row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in rref.iter().zip(&pivots) {
                    if row.get(f) {
                        v.set(p);
                    }
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns,
    /// pivots increasing.
    pub fn reduced_row_echelon(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut basis = EchelonBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis.into_reduced()
    }
}

impl fmt::Debug for MatrixF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF2 {}x{}", self.rows(), self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// An incrementally built echelon basis of a subspace of GF(2)^n.
///
/// Each stored row has a distinct pivot (its lowest set bit) and is zero at
/// the pivots of all rows inserted before it.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(len: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut b = Self::new(len);
        for v in vectors {
            b.try_insert(v.clone())?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Residue of `v` after eliminating against the stored rows; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    pub fn try_insert(&mut self, v: BitVec) -> Result<bool, LinalgError> {
        if v.len() != self.len {
            return Err(LinalgError::LengthMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(self.insert(v))
    }

    fn into_reduced(self) -> (Vec<BitVec>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let mut rows: Vec<BitVec> = order.iter().map(|&k| self.rows[k].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&k| self.pivots[k]).collect();
        // back-substitution: clear every pivot column above and below
        for a in (0..rows.len()).rev() {
            let (p, pivot_row) = (pivots[a], rows[a].clone());
            for (b, row) in rows.iter_mut().enumerate() {
                if b != a && row.get(p) {
                    row.xor_assign(&pivot_row);
                }
            }
        }
        (rows, pivots)
    }
}

/// Echelon basis that remembers how each stored row was assembled from the
/// inserted generators, so membership queries can return coordinates.
#[derive(Debug, Clone)]
pub struct TrackedEchelon {
    len: usize,
    generators: usize,
    rows: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl TrackedEchelon {
    /// Builds the tracker for the given generators.
    pub fn new(len: usize, generators: &[BitVec]) -> Result<Self, LinalgError> {
        let n = generators.len();
        let mut t = Self {
            len,
            generators: n,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
        };
        for (k, g) in generators.iter().enumerate() {
            if g.len() != len {
                return Err(LinalgError::LengthMismatch {
                    expected: len,
                    found: g.len(),
                });
            }
            let (r, c) = t.reduce_tracked(g.clone(), BitVec::unit(n, k));
            if let Some(p) = r.first_one() {
                t.rows.push(r);
                t.combos.push(c);
                t.pivots.push(p);
            }
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, mut v: BitVec, mut combo: BitVec) -> (BitVec, BitVec) {
        for ((row, c), &p) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Coefficients `x` over the generators with `Σ x_k g_k = v`, if any.
    pub fn solve(&self, v: &BitVec) -> Result<Option<BitVec>, LinalgError> {
        if v.len() != self.len {
            return Err(LinalgError::LengthMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        let (r, c) = self.reduce_tracked(v.clone(), BitVec::zeros(self.generators));
        Ok(r.is_zero().then_some(c))
    }
}

/// Row-space rank.
pub fn rank(m: &MatrixF2) -> usize {
    m.rank()
}

pub fn nullspace_basis(m: &MatrixF2) -> Vec<BitVec> {
    m.nullspace_basis()
}

/// True iff `v` is a GF(2)-combination of `basis`.
pub fn in_span(v: &BitVec, basis: &[BitVec]) -> Result<bool, LinalgError> {
    let e = EchelonBasis::from_vectors(v.len(), basis)?;
    Ok(e.contains(v))
}

/// Dimension of the span of `vectors`; `len` is used when the list is empty.
pub fn span_dim(len: usize, vectors: &[BitVec]) -> Result<usize, LinalgError> {
    Ok(EchelonBasis::from_vectors(len, vectors)?.dim())
}

/// `dim(span U ∩ span V)`.
pub fn intersect_dim(u: &[BitVec], v: &[BitVec]) -> Result<usize, LinalgError> {
    let len = u.first().or(v.first()).map_or(0, BitVec::len);
    let du = span_dim(len, u)?;
    let dv = span_dim(len, v)?;
    let joint = EchelonBasis::from_vectors(len, u.iter().chain(v))?.dim();
    Ok(du + dv - joint)
}
