//! Dense matrices over a [`FieldSpec`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{parse_field_spec, FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

/// Wire format: `{"field":"P^K","rows":R,"cols":C,"entries":[[int,...],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl FFMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !field.contains(**e)) {
            return Err(Error::ElementOutOfRange {
                value: bad.0 as u64,
                order: field.order(),
            });
        }
        Ok(FFMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| FieldElement(v)).collect();
        FFMatrix::new(field.clone(), rows.len(), cols, entries)
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FFMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = FFMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn all_ones(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FFMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![FieldElement::ONE; rows * cols],
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert!(self.field.contains(v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Row-reduces the rows in index order.
    fn echelon(&self) -> (EchelonAccumulator, Vec<usize>) {
        let mut acc = EchelonAccumulator::new(&self.field, self.cols);
        let mut taken = Vec::new();
        for i in 0..self.rows {
            if acc.is_full() {
                break;
            }
            if acc.push(self.row(i).to_vec()) {
                taken.push(i);
            }
        }
        (acc, taken)
    }

    pub fn rank(&self) -> usize {
        self.echelon().0.rank()
    }

    /// Indices of the first linearly independent rows, in order.
    pub fn row_basis_indices(&self) -> Vec<usize> {
        self.echelon().1
    }

    pub fn row_basis(&self) -> FFMatrix {
        self.select_rows(&self.row_basis_indices())
    }

    pub fn select_rows(&self, idx: &[usize]) -> FFMatrix {
        let entries = idx.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        FFMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            entries,
        }
    }

    fn check_field(&self, other: &FFMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    /// Kronecker product; row `(i1, i2)` is `i1 * b.rows() + i2`.
    pub fn kron(&self, b: &FFMatrix) -> Result<FFMatrix> {
        self.check_field(b)?;
        let (rows, cols) = (self.rows * b.rows, self.cols * b.cols);
        let mut out = FFMatrix::zeros(&self.field, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        out.set(i1 * b.rows + i2, j1 * b.cols + j2, self.field.mul(a, b.get(i2, j2)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn block_diag(blocks: &[FFMatrix]) -> Result<FFMatrix> {
        let first = blocks.first().ok_or(Error::Empty("block list"))?;
        for b in blocks {
            first.check_field(b)?;
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FFMatrix::zeros(&first.field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                out.row_mut(r0 + i)[c0..c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn mat_vec(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.field.dot(self.row(i), x)).collect())
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FFMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![FieldElement::ZERO; other.cols];
            for k in 0..self.cols {
                self.field.axpy(&mut acc, self.get(i, k), other.row(k));
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field.to_string(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(|e| e.0).collect()).collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<FFMatrix> {
        let field = parse_field_spec(&j.field)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Dimension(format!(
                "declared {}x{} does not match entry grid",
                j.rows, j.cols
            )));
        }
        let entries = j.entries.iter().flatten().map(|&v| FieldElement(v)).collect();
        FFMatrix::new(field, j.rows, j.cols, entries)
    }
}

/// Incremental reduced row-echelon form.
///
/// Rows are pushed one at a time; the accumulator keeps at most `cols`
/// pivot rows, fully reduced, so a tall matrix can be ranked without being
/// materialized. Pivots are only taken among the first `pivot_limit`
/// columns; trailing columns ride along (used to track coordinates).
#[derive(Clone, Debug)]
pub struct EchelonAccumulator {
    field: FieldSpec,
    cols: usize,
    pivot_limit: usize,
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonAccumulator {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        Self::with_pivot_limit(field, cols, cols)
    }

    pub fn with_pivot_limit(field: &FieldSpec, cols: usize, pivot_limit: usize) -> Self {
        EchelonAccumulator {
            field: field.clone(),
            cols,
            pivot_limit: pivot_limit.min(cols),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.pivot_limit
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if !c.is_zero() {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w[..self.pivot_limit].iter().all(|x| x.is_zero())
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut v: Vec<FieldElement>) -> bool {
        if v.len() != self.cols {
            panic!("row of length {} pushed into {}-column accumulator", v.len(), self.cols);
        }
        self.reduce(&mut v);
        let Some(pc) = v[..self.pivot_limit].iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv_nonzero(v[pc]);
        self.field.scale(&mut v, inv);
        for row in self.basis.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                self.field.axpy(row, self.field.neg(c), &v);
            }
        }
        self.basis.push(v);
        self.pivots.push(pc);
        true
    }
}

/// Rank of a row stream, stopping early once every column carries a pivot.
pub fn streaming_rank<I>(field: &FieldSpec, cols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = Vec<FieldElement>>,
{
    let mut acc = EchelonAccumulator::new(field, cols);
    for row in rows {
        if acc.is_full() {
            break;
        }
        acc.push(row);
    }
    acc.rank()
}

/// Expresses rows of the span of `basis` in coordinates over that basis.
#[derive(Clone, Debug)]
pub struct RowSpaceSolver {
    acc: EchelonAccumulator,
    cols: usize,
    dim: usize,
}

impl RowSpaceSolver {
    /// `basis` must have linearly independent rows.
    pub fn new(basis: &FFMatrix) -> Result<Self> {
        let (dim, cols) = (basis.rows(), basis.cols());
        let mut acc = EchelonAccumulator::with_pivot_limit(basis.field(), cols + dim, cols);
        for k in 0..dim {
            let mut row = basis.row(k).to_vec();
            row.resize(cols + dim, FieldElement::ZERO);
            row[cols + k] = FieldElement::ONE;
            if !acc.push(row) {
                return Err(Error::InvalidArgument("basis rows are linearly dependent".into()));
            }
        }
        Ok(RowSpaceSolver { acc, cols, dim })
    }

    /// Coefficients `c` with `v = sum_k c[k] * basis[k]`, or `None` if `v` is
    /// outside the row space.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if !self.acc.contains(&{
            let mut w = v.to_vec();
            w.resize(self.cols + self.dim, FieldElement::ZERO);
            w
        }) {
            return None;
        }
        let f = &self.acc.field;
        let mut out = vec![FieldElement::ZERO; self.dim];
        for (row, &pc) in self.acc.basis.iter().zip(&self.acc.pivots) {
            f.axpy(&mut out, v[pc], &row[self.cols..]);
        }
        Some(out)
    }
}
