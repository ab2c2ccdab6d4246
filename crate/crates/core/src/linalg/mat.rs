use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Rows at or below this count get a dense accumulator during products.
const DENSE_ACCUMULATOR_LIMIT: usize = 1 << 20;

/// A matrix over an exact field, stored column by column in sparse form.
///
/// Tensor indices follow one global convention: the basis vector `e_i ⊗ e_j`
/// of `U ⊗ W` sits at index `i * dim W + j`. A linear map `f: X -> Y`, viewed
/// as a vector of `Hom(X, Y) ≅ X* ⊗ Y`, has coordinate `f[y][x]` at index
/// `x * dim Y + y`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows <= 16 && self.cols <= 16 {
            writeln!(
                f,
                "Mat {}x{} over {}",
                self.rows,
                self.cols,
                self.field.spec()
            )?;
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| self.field.format(x)).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
            Ok(())
        } else {
            write!(
                f,
                "Mat {}x{} over {} ({} nonzeros)",
                self.rows,
                self.cols,
                self.field.spec(),
                self.nnz()
            )
        }
    }
}

/// Sorts, merges duplicate indices and drops zeros.
pub(crate) fn normalize<F: Field>(
    field: F,
    mut terms: Vec<(usize, F::Elem)>,
) -> SparseVec<F::Elem> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = field.add(w, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

/// `a + c * b` for sparse vectors.
pub(crate) fn axpy<F: Field>(
    field: F,
    a: &[(usize, F::Elem)],
    c: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Accumulates scaled sparse vectors into one sparse result.
pub(crate) struct Accumulator<F: Field> {
    field: F,
    len: usize,
    dense: Option<(Vec<F::Elem>, Vec<bool>)>,
    touched: Vec<usize>,
    pairs: Vec<(usize, F::Elem)>,
}

impl<F: Field> Accumulator<F> {
    pub(crate) fn new(field: F, len: usize) -> Self {
        let dense =
            (len <= DENSE_ACCUMULATOR_LIMIT).then(|| (vec![field.zero(); len], vec![false; len]));
        Accumulator {
            field,
            len,
            dense,
            touched: Vec::new(),
            pairs: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, i: usize, v: F::Elem) {
        debug_assert!(i < self.len);
        match &mut self.dense {
            Some((vals, mark)) => {
                if !mark[i] {
                    mark[i] = true;
                    self.touched.push(i);
                    vals[i] = v;
                } else {
                    vals[i] = self.field.add(&vals[i], &v);
                }
            }
            None => self.pairs.push((i, v)),
        }
    }

    /// Adds `c * x`.
    pub(crate) fn add_scaled(&mut self, c: &F::Elem, x: &[(usize, F::Elem)]) {
        for (i, v) in x {
            let t = self.field.mul(c, v);
            self.add(*i, t);
        }
    }

    pub(crate) fn take(&mut self) -> SparseVec<F::Elem> {
        let field = self.field;
        match &mut self.dense {
            Some((vals, mark)) => {
                self.touched.sort_unstable();
                let mut out = Vec::with_capacity(self.touched.len());
                for &i in &self.touched {
                    mark[i] = false;
                    let v = std::mem::replace(&mut vals[i], field.zero());
                    if !field.is_zero(&v) {
                        out.push((i, v));
                    }
                }
                self.touched.clear();
                out
            }
            None => normalize(field, std::mem::take(&mut self.pairs)),
        }
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        Mat {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from sparse columns; entries are normalized.
    pub fn from_columns(
        field: F,
        rows: usize,
        columns: Vec<Vec<(usize, F::Elem)>>,
    ) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(cols);
        for col in columns {
            if let Some((i, _)) = col.iter().find(|(i, _)| *i >= rows) {
                return Err(Error::shape(format!(
                    "row index {i} out of range for {rows} rows"
                )));
            }
            data.push(normalize(field, col));
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(field: F, rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut columns: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::shape(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            columns[j].push((i, v));
        }
        Self::from_columns(field, rows, columns)
    }

    pub fn from_dense(field: F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::shape("ragged dense matrix"));
            }
            for (j, v) in row.iter().enumerate() {
                if !field.is_zero(v) {
                    triplets.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(field, rows.len(), ncols, triplets)
    }

    /// Small integer matrices, mostly for fixtures.
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_dense(field, &dense).expect("rectangular fixture")
    }

    /// A single column vector.
    pub fn column_vector(field: F, entries: &[F::Elem]) -> Self {
        let col: Vec<_> = entries.iter().cloned().enumerate().collect();
        Self::from_columns(field, entries.len(), vec![col]).expect("indices in range")
    }

    pub fn field(&self) -> F {
        self.field
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
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, F::Elem)] {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec<F::Elem>] {
        &self.data
    }

    pub fn into_columns(self) -> Vec<SparseVec<F::Elem>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.data[j].binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.data[j][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: F::Elem) -> Self {
        let mut out = self.clone();
        let col = &mut out.data[j];
        match col.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => {
                if self.field.is_zero(&v) {
                    col.remove(k);
                } else {
                    col[k].1 = v;
                }
            }
            Err(k) => {
                if !self.field.is_zero(&v) {
                    col.insert(k, (i, v));
                }
            }
        }
        out
    }

    /// Iterates over nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c[0].0 == j && self.field.is_one(&c[0].1))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        Mat {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: cols,
        }
    }

    /// Row-major view: one sparse vector per row.
    pub fn row_vectors(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().data
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let one = self.field.one();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(self.field, a, &one, b))
            .collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let m1 = self.field.neg(&self.field.one());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(self.field, a, &m1, b))
            .collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<SparseVec<F::Elem>>) -> Self {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Mat::zeros(self.field, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, v)| (*i, self.field.mul(c, v)))
                    .collect()
            })
            .collect();
        self.with_data(data)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Accumulator::new(self.field, self.rows);
        let data = other
            .data
            .iter()
            .map(|col| {
                for (k, v) in col {
                    acc.add_scaled(v, &self.data[*k]);
                }
                acc.take()
            })
            .collect();
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(self.field, self.rows);
        for (k, v) in x {
            acc.add_scaled(v, &self.data[*k]);
        }
        acc.take()
    }

    /// Kronecker product with the row-major index convention.
    pub fn kron(&self, other: &Self) -> Self {
        let field = self.field;
        let (r2, c2) = other.shape();
        let mut data = Vec::with_capacity(self.cols * c2);
        for a_col in &self.data {
            for b_col in &other.data {
                let mut col = Vec::with_capacity(a_col.len() * b_col.len());
                for (i, a) in a_col {
                    for (k, b) in b_col {
                        col.push((i * r2 + k, field.mul(a, b)));
                    }
                }
                data.push(col);
            }
        }
        Mat {
            field,
            rows: self.rows * r2,
            cols: self.cols * c2,
            data,
        }
    }

    /// Computes `(a ⊗ b) * x` without materializing the Kronecker product.
    pub fn kron_apply(a: &Self, b: &Self, x: &Self) -> Result<Self> {
        let field = x.field;
        if a.cols * b.cols != x.rows {
            return Err(Error::shape(format!(
                "({}x{} ⊗ {}x{}) applied to {}x{}",
                a.rows, a.cols, b.rows, b.cols, x.rows, x.cols
            )));
        }
        let rows = a.rows * b.rows;
        let mut acc = Accumulator::new(field, rows);
        let data = x
            .data
            .iter()
            .map(|col| {
                for (idx, v) in col {
                    let (i, j) = (idx / b.cols, idx % b.cols);
                    for (ri, av) in &a.data[i] {
                        let av = field.mul(v, av);
                        for (rj, bv) in &b.data[j] {
                            acc.add(ri * b.rows + rj, field.mul(&av, bv));
                        }
                    }
                }
                acc.take()
            })
            .collect();
        Ok(Mat {
            field,
            rows,
            cols: x.cols,
            data,
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::shape("hstack row counts differ"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::shape("vstack column counts differ"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + self.rows, v.clone())));
                c
            })
            .collect();
        Ok(Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut data = self.data.clone();
        data.extend(
            other
                .data
                .iter()
                .map(|c| c.iter().map(|(i, v)| (i + self.rows, v.clone())).collect()),
        );
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: idx.len(),
            data: idx.iter().map(|&j| self.data[j].clone()).collect(),
        }
    }

    /// Reindexes rows through `perm` (old row `i` moves to `perm[i]`).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let data = self
            .data
            .iter()
            .map(|c| {
                normalize(
                    self.field,
                    c.iter().map(|(i, v)| (perm[*i], v.clone())).collect(),
                )
            })
            .collect();
        self.with_data(data)
    }

    /// Vectorizes the matrix as an element of `Hom(X, Y) ≅ X* ⊗ Y`.
    pub fn to_hom_vector(&self) -> SparseVec<F::Elem> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, col) in self.data.iter().enumerate() {
            for (i, v) in col {
                out.push((j * self.rows + i, v.clone()));
            }
        }
        out
    }

    /// Inverse of [`Mat::to_hom_vector`] for a map `dim_x -> dim_y`.
    pub fn from_hom_vector(field: F, dim_y: usize, dim_x: usize, v: &[(usize, F::Elem)]) -> Self {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dim_x];
        for (idx, val) in v {
            data[idx / dim_y].push((idx % dim_y, val.clone()));
        }
        Mat {
            field,
            rows: dim_y,
            cols: dim_x,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        super::echelon::Echelon::from_vectors(self.field, self.rows, self.data.iter()).rank()
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> F::Elem {
        let mut t = self.field.zero();
        for j in 0..self.cols.min(self.rows) {
            t = self.field.add(&t, &self.get(j, j));
        }
        t
    }
}
