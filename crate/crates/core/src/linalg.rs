//! Dense and sparse exact linear algebra: rank, kernels and linear solves.
//!
//! Every elimination goes through [`RowEchelon`], an incrementally maintained
//! reduced row echelon form over sparse rows.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Field, Scalar, ScalarError};

pub type Vector = Vec<Scalar>;

/// A sparse row: `(column, value)` pairs, sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entries from more than one field ({0} and {1})")]
    MixedField(Field, Field),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn check_field<'a>(field: Field, it: impl IntoIterator<Item = &'a Scalar>) -> Result<(), LinalgError> {
    for s in it {
        if s.field() != field {
            return Err(LinalgError::MixedField(field, s.field()));
        }
    }
    Ok(())
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer convenience constructor, mainly for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn check_field(&self) -> Result<(), LinalgError> {
        check_field(self.field, &self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if rhs.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * out.cols + c;
                    out.data[idx].add_product(a, rhs.get(k, c));
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let rows = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            field: self.field,
            cols: self.cols,
            rows,
        }
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        self.check_field()?;
        self.to_sparse().rank()
    }

    pub fn kernel_basis(&self) -> Result<Vec<Vector>, LinalgError> {
        self.check_field()?;
        self.to_sparse().kernel_basis()
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        self.check_field()?;
        check_field(self.field, b)?;
        self.to_sparse().solve(b)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[c] = self.field.one();
            match self.solve(&e)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                inv.set(r, c, v);
            }
        }
        Ok(Some(inv))
    }
}

pub fn rank(m: &Matrix) -> Result<usize, LinalgError> {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Result<Vec<Vector>, LinalgError> {
    m.kernel_basis()
}

/// Any `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    m.solve(b)
}

/// Row-compressed sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(field: Field, cols: usize, rows: Vec<SparseRow>) -> Self {
        SparseMatrix { field, cols, rows }
    }

    /// Assembles from unsorted, possibly repeated `(row, col, value)` triplets.
    pub fn from_triplets(
        field: Field,
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            if v.is_zero() {
                continue;
            }
            *acc[r].entry(c).or_insert_with(|| field.zero()) += &v;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix {
            field,
            cols: ncols,
            rows,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.rows[r][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, a) in row {
                    acc.add_product(a, &v[*c]);
                }
                acc
            })
            .collect())
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if rhs.nrows() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.nrows(),
            });
        }
        let mut acc = SparseAccumulator::new(self.field, rhs.cols);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row {
                    acc.axpy(a, &rhs.rows[*k]);
                }
                acc.drain()
            })
            .collect();
        Ok(SparseMatrix {
            field: self.field,
            cols: rhs.cols,
            rows,
        })
    }

    fn echelon(&self) -> RowEchelon {
        let mut ech = RowEchelon::new(self.field, self.cols);
        for row in &self.rows {
            ech.insert(row);
        }
        ech
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        check_field(self.field, self.rows.iter().flatten().map(|(_, v)| v))?;
        Ok(self.echelon().rank())
    }

    pub fn kernel_basis(&self) -> Result<Vec<Vector>, LinalgError> {
        check_field(self.field, self.rows.iter().flatten().map(|(_, v)| v))?;
        Ok(self.echelon().kernel_basis())
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        if b.len() != self.rows.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows.len(),
                found: b.len(),
            });
        }
        check_field(self.field, self.rows.iter().flatten().map(|(_, v)| v))?;
        check_field(self.field, b)?;
        let rhs = self.cols;
        let mut ech = RowEchelon::new(self.field, self.cols + 1);
        for (row, bi) in self.rows.iter().zip(b) {
            let mut aug = row.clone();
            if !bi.is_zero() {
                aug.push((rhs, bi.clone()));
            }
            ech.insert(&aug);
        }
        if ech.pivot_row(rhs).is_some() {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if let Some((c, v)) = row.last() {
                if *c == rhs {
                    x[p] = v.clone();
                }
            }
        }
        Ok(Some(x))
    }
}

/// Scatter/gather accumulator for sparse linear combinations.
pub(crate) struct SparseAccumulator {
    buf: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl SparseAccumulator {
    pub(crate) fn new(field: Field, len: usize) -> Self {
        SparseAccumulator {
            buf: vec![field.zero(); len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    fn touch(&mut self, c: usize) {
        if !self.mark[c] {
            self.mark[c] = true;
            self.touched.push(c);
        }
    }

    /// `self += a * row`.
    pub(crate) fn axpy(&mut self, a: &Scalar, row: &[(usize, Scalar)]) {
        for (c, v) in row {
            self.touch(*c);
            self.buf[*c].add_product(a, v);
        }
    }

    fn sub_scaled(&mut self, a: &Scalar, row: &[(usize, Scalar)]) {
        let na = -a;
        self.axpy(&na, row);
    }

    /// Collects the nonzero entries in column order and resets the buffer.
    pub(crate) fn drain(&mut self) -> SparseRow {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            self.mark[c] = false;
            let zero = self.buf[c].field().zero();
            let v = std::mem::replace(&mut self.buf[c], zero);
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Reduced row echelon form, grown one row at a time.
///
/// Invariant: every stored row has a leading 1 at its pivot column and zeros in
/// all other pivot columns.
pub struct RowEchelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
    acc: SparseAccumulator,
}

impl RowEchelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        RowEchelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![None; ncols],
            acc: SparseAccumulator::new(field, ncols.max(1)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivot_of_col[col].map(|i| &self.rows[i])
    }

    /// Reduces `row` against the current basis and stores the remainder.
    /// Returns `true` when the rank grew.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        if row.is_empty() {
            return false;
        }
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_of_col[*c].map(|i| (i, v.clone())))
            .collect();
        let one = self.field.one();
        self.acc.axpy(&one, row);
        for (i, coef) in &hits {
            self.acc.sub_scaled(coef, &self.rows[*i]);
        }
        let mut reduced = self.acc.drain();
        if reduced.is_empty() {
            return false;
        }
        let (pivot, lead) = reduced[0].clone();
        let inv = lead.inv().expect("nonzero leading entry");
        for (_, v) in reduced.iter_mut() {
            *v *= &inv;
        }
        for k in 0..self.rows.len() {
            let coef = match self.rows[k].binary_search_by_key(&pivot, |(c, _)| *c) {
                Ok(i) => self.rows[k][i].1.clone(),
                Err(_) => continue,
            };
            self.acc.axpy(&one, &self.rows[k]);
            self.acc.sub_scaled(&coef, &reduced);
            self.rows[k] = self.acc.drain();
        }
        self.pivot_of_col[pivot] = Some(self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(reduced);
        true
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&mut self, row: &[(usize, Scalar)]) -> bool {
        let one = self.field.one();
        self.acc.axpy(&one, row);
        for (c, v) in row {
            if let Some(i) = self.pivot_of_col[*c] {
                let coef = v.clone();
                self.acc.sub_scaled(&coef, &self.rows[i]);
            }
        }
        self.acc.drain().is_empty()
    }

    /// Basis of `{x : R x = 0}` read off the reduced form.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Ok(i) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[p] = -&row[i].1;
                }
            }
            out.push(v);
        }
        out
    }
}
