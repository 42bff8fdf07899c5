//! Binary matrices stored twice: row-major for row operations and
//! column-major so that column-subset row sums are word-parallel.
//!
//! Text format (read and written by every command):
//!
//! ```text
//! 4 8
//! 10001100
//! 01000110
//! 00100011
//! 00011001
//! ```
//!
//! The first line holds the row and column counts in decimal, followed by
//! one line of exactly `n` characters from `{0,1}` per row. The trailing
//! newline is optional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Sorted, duplicate-free set of column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColumnSet(Vec<usize>);

impl ColumnSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Fails if any index is `>= cols`.
    pub fn check(&self, cols: usize) -> Result<()> {
        match self.0.last() {
            Some(&j) if j >= cols => Err(Error::ColumnOutOfRange { index: j, cols }),
            _ => Ok(()),
        }
    }

    pub fn to_bits(&self, cols: usize) -> BitVector {
        BitVector::from_indices(cols, self.iter())
    }
}

impl From<&BitVector> for ColumnSet {
    fn from(v: &BitVector) -> Self {
        Self(v.ones())
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

/// Integer row sums of a column subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile(pub Vec<usize>);

impl WeightProfile {
    pub fn sums(&self) -> &[usize] {
        &self.0
    }

    pub fn is_one_free(&self) -> bool {
        self.0.iter().all(|&s| s != 1)
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&s| s % 2 == 0)
    }

    pub fn is_all_ge2(&self) -> bool {
        self.0.iter().all(|&s| s >= 2)
    }
}

/// Immutable m x n matrix over GF(2) with m, n >= 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_bits: Vec<BitVector>,
    col_bits: Vec<BitVector>,
}

impl BinaryMatrix {
    /// Builds the matrix from its rows; the column-major mirror is derived.
    pub fn from_row_vectors(cols: usize, row_bits: Vec<BitVector>) -> Result<Self> {
        let rows = row_bits.len();
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        if let Some(r) = row_bits.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        let mut col_bits = vec![BitVector::zeros(rows); cols];
        for (i, row) in row_bits.iter().enumerate() {
            for j in row.ones() {
                col_bits[j].set(i, true);
            }
        }
        Ok(Self {
            rows,
            cols,
            row_bits,
            col_bits,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let row_bits = (0..rows)
            .map(|i| BitVector::from_indices(cols, (0..cols).filter(|&j| f(i, j))))
            .collect();
        Self::from_row_vectors(cols, row_bits)
    }

    /// Rows given as 0/1 slices.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut row_bits = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            if r.iter().any(|&b| b > 1) {
                return Err(Error::InvalidArgument("entries must be 0 or 1".into()));
            }
            row_bits.push(BitVector::from_indices(
                cols,
                r.iter().enumerate().filter(|(_, &b)| b == 1).map(|(j, _)| j),
            ));
        }
        Self::from_row_vectors(cols, row_bits)
    }

    /// Rows given as strings of `0`/`1`, e.g. `["10001100", "01000110"]`.
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b.wrapping_sub(b'0')).collect())
            .collect();
        Self::from_rows(&parsed)
    }

    /// Builds from column bit-vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        Self::from_fn(rows, columns.len(), |i, j| columns[j].get(i))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| false)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_bits[i].get(j)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.row_bits[i]
    }

    pub fn col(&self, j: usize) -> &BitVector {
        &self.col_bits[j]
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_bits[i].weight()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        self.col_bits[j].weight()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_bits.iter().map(BitVector::weight).collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            row_bits: self.col_bits.clone(),
            col_bits: self.row_bits.clone(),
        }
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        for &j in columns {
            if j >= self.cols {
                return Err(Error::ColumnOutOfRange { index: j, cols: self.cols });
            }
        }
        Self::from_fn(self.rows, columns.len(), |i, c| self.get(i, columns[c]))
    }

    /// `B[i][j] = A[row_order[i]][col_order[j]]`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Self> {
        if row_order.len() != self.rows || col_order.len() != self.cols {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        Self::from_fn(self.rows, self.cols, |i, j| self.get(row_order[i], col_order[j]))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut rows = self.row_bits.clone();
        rows.extend(other.row_bits.iter().cloned());
        Self::from_row_vectors(self.cols, rows)
    }

    /// Integer row sums of the columns in `set`.
    pub fn weight_profile(&self, set: &ColumnSet) -> Result<WeightProfile> {
        if set.is_empty() {
            return Err(Error::EmptyColumnSet);
        }
        set.check(self.cols)?;
        let mut sums = vec![0usize; self.rows];
        for j in set.iter() {
            for i in self.col_bits[j].ones() {
                sums[i] += 1;
            }
        }
        Ok(WeightProfile(sums))
    }

    /// No row sum over `set` equals 1 (a stopping set).
    pub fn is_one_free(&self, set: &ColumnSet) -> Result<bool> {
        Ok(self.weight_profile(set)?.is_one_free())
    }

    /// Every row sum over `set` is even.
    pub fn is_even(&self, set: &ColumnSet) -> Result<bool> {
        Ok(self.weight_profile(set)?.is_even())
    }

    /// Every row sum over `set` is at least 2.
    pub fn is_all_ge2(&self, set: &ColumnSet) -> Result<bool> {
        Ok(self.weight_profile(set)?.is_all_ge2())
    }

    /// Rank over GF(2).
    pub fn rank_f2(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of `{x : Ax = 0}` over GF(2); one vector per free column of the
    /// reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (reduced, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    fn echelon(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut rows = self.row_bits.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    /// `Ax` over GF(2).
    pub fn syndrome(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        let mut s = BitVector::zeros(self.rows);
        for (i, row) in self.row_bits.iter().enumerate() {
            let parity = row
                .words()
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            s.set(i, parity % 2 == 1);
        }
        s
    }

    /// Repeatedly deletes a weight-1 row together with the column holding its
    /// 1 (lowest row index first) until no weight-1 row remains.
    pub fn elementary_collapse(&self) -> Collapse {
        let mut alive_rows: Vec<usize> = (0..self.rows).collect();
        let mut alive_cols: Vec<bool> = vec![true; self.cols];
        loop {
            let hit = alive_rows.iter().enumerate().find_map(|(pos, &i)| {
                let ones: Vec<usize> = self.row_bits[i].ones().into_iter().filter(|&j| alive_cols[j]).collect();
                (ones.len() == 1).then(|| (pos, ones[0]))
            });
            match hit {
                Some((pos, j)) => {
                    alive_rows.remove(pos);
                    alive_cols[j] = false;
                }
                None => break,
            }
        }
        let surviving: Vec<usize> = (0..self.cols).filter(|&j| alive_cols[j]).collect();
        let matrix = if alive_rows.is_empty() || surviving.is_empty() {
            None
        } else {
            Some(
                Self::from_fn(alive_rows.len(), surviving.len(), |i, j| {
                    self.get(alive_rows[i], surviving[j])
                })
                .expect("nonempty collapse"),
            )
        };
        Collapse { matrix, surviving }
    }

    /// `[[A, 0], [0, 1]]`.
    pub fn pad(&self) -> Self {
        Self::from_fn(self.rows + 1, self.cols + 1, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j)
            } else {
                i == self.rows && j == self.cols
            }
        })
        .expect("pad grows dimensions")
    }

    /// Column `j` packed as row-index mask words.
    pub(crate) fn col_words(&self, j: usize) -> &[u64] {
        self.col_bits[j].words()
    }

    /// Row `i` packed as column-index mask words.
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        self.row_bits[i].words()
    }

    /// Text format, newline-terminated.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Rows joined by `/`, e.g. `111/010`; used for compact one-line storage.
    pub fn to_compact(&self) -> String {
        self.row_strings().join("/")
    }

    pub fn from_compact(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split('/').collect();
        if rows.iter().any(|r| r.bytes().any(|b| b != b'0' && b != b'1')) {
            return Err(Error::Parse {
                line: 1,
                message: "compact matrix must contain only 0, 1 and /".into(),
            });
        }
        Self::from_strings(&rows)
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.row_bits
            .iter()
            .map(|r| (0..self.cols).map(|j| if r.get(j) { '1' } else { '0' }).collect())
            .collect()
    }
}

/// Fixpoint of [`BinaryMatrix::elementary_collapse`]. `matrix` is `None`
/// when every row or every column was consumed; any surviving columns are
/// then unconstrained (each one alone is 1-free and even).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub matrix: Option<BinaryMatrix>,
    /// Original indices of the surviving columns, in order.
    pub surviving: Vec<usize>,
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in self.row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{}: {})", self.rows, self.cols, self.to_compact())
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_suffix('\n').unwrap_or(s);
        let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
        let header = lines.next().unwrap_or("");
        let dims: Vec<&str> = header.split(' ').collect();
        let parse_dim = |t: &str| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("expected \"m n\", found {header:?}"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected \"m n\", found {header:?}"),
            });
        }
        let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimension { rows: m, cols: n });
        }
        let mut row_bits = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            if i >= m {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("more than {m} rows"),
                });
            }
            if line.len() != n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {n} characters, found {}", line.len()),
                });
            }
            let mut row = BitVector::zeros(n);
            for (j, b) in line.bytes().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => row.set(j, true),
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("invalid character {:?}", b as char),
                        })
                    }
                }
            }
            row_bits.push(row);
        }
        if row_bits.len() != m {
            return Err(Error::Parse {
                line: row_bits.len() + 2,
                message: format!("expected {m} rows, found {}", row_bits.len()),
            });
        }
        Self::from_row_vectors(n, row_bits)
    }
}

impl Serialize for BinaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
