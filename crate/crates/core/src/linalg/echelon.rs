//! Incremental reduced row echelon form over sparse vectors.
//!
//! Vectors are inserted one at a time; the stored basis is kept fully
//! reduced, so every stored vector has a 1 at its own pivot and a 0 at every
//! other pivot. Reducing a new vector then needs one pass over its entries
//! that sit on pivot positions.

use super::mat::{axpy, Mat, SparseVec};
use crate::field::Field;

const NO_PIVOT: usize = usize::MAX;

pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<usize>,
    scratch: Vec<F::Elem>,
    marked: Vec<bool>,
    touched: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NO_PIVOT; dim],
            scratch: vec![field.zero(); dim],
            marked: vec![false; dim],
            touched: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(field: F, dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
        F::Elem: 'a,
    {
        let mut e = Echelon::new(field, dim);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        e
    }

    /// Rebuilds an echelon from rows already reduced against `pivots`
    /// (row `r` has a 1 at `pivots[r]` and a 0 at every other pivot).
    pub fn from_reduced(
        field: F,
        dim: usize,
        rows: Vec<SparseVec<F::Elem>>,
        pivots: Vec<usize>,
    ) -> Self {
        let mut e = Echelon::new(field, dim);
        for (r, &p) in pivots.iter().enumerate() {
            e.pivot_row[p] = r;
        }
        e.rows = rows;
        e.pivots = pivots;
        e
    }

    pub fn into_parts(self) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
        (self.rows, self.pivots)
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    fn touch(&mut self, i: usize, v: F::Elem) {
        if self.marked[i] {
            self.scratch[i] = self.field.add(&self.scratch[i], &v);
        } else {
            self.marked[i] = true;
            self.touched.push(i);
            self.scratch[i] = v;
        }
    }

    fn drain_scratch(&mut self) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.marked[i] = false;
            let v = std::mem::replace(&mut self.scratch[i], self.field.zero());
            if !self.field.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let field = self.field;
        for (i, x) in v {
            self.touch(*i, x.clone());
        }
        for (i, x) in v {
            let r = self.pivot_row[*i];
            if r == NO_PIVOT {
                continue;
            }
            let c = field.neg(x);
            // Row r has a 1 at i and zeros at every other pivot, so the
            // coefficients read from `v` stay valid for all rows.
            let row = std::mem::take(&mut self.rows[r]);
            for (j, y) in &row {
                let t = field.mul(&c, y);
                self.touch(*j, t);
            }
            self.rows[r] = row;
        }
        self.drain_scratch()
    }

    /// Inserts `v`; returns the new pivot when `v` was independent.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Option<usize> {
        if v.is_empty() || self.is_full() {
            return None;
        }
        let u = self.reduce(v);
        let (piv, lead) = u.first()?.clone();
        let field = self.field;
        let inv = field.inv(&lead).expect("nonzero lead");
        let u: SparseVec<F::Elem> = u
            .into_iter()
            .map(|(i, x)| (i, field.mul(&inv, &x)))
            .collect();
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&piv, |t| t.0) {
                let c = field.neg(&row[k].1);
                *row = axpy(field, row, &c, &u);
            }
        }
        self.pivot_row[piv] = self.rows.len();
        self.pivots.push(piv);
        self.rows.push(u);
        Some(piv)
    }

    pub fn contains(&mut self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of `{x : <row, x> = 0 for every inserted row}`, i.e. the kernel of
    /// the matrix whose rows were inserted.
    ///
    /// Each returned vector has a 1 at one non-pivot position, zeros at the
    /// other non-pivot positions, so the set is itself in reduced form with
    /// those positions as pivots.
    pub fn null_space(&self) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
        let field = self.field;
        let mut free_index = vec![NO_PIVOT; self.dim];
        let mut free = Vec::new();
        for j in 0..self.dim {
            if self.pivot_row[j] == NO_PIVOT {
                free_index[j] = free.len();
                free.push(j);
            }
        }
        let mut basis: Vec<SparseVec<F::Elem>> =
            free.iter().map(|&j| vec![(j, field.one())]).collect();
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (j, x) in row {
                if *j != p {
                    basis[free_index[*j]].push((p, field.neg(x)));
                }
            }
        }
        for b in basis.iter_mut() {
            b.sort_unstable_by_key(|t| t.0);
        }
        (basis, free)
    }

    /// Quotient of the ambient space by the current span.
    ///
    /// Returns the projection (size `(dim - rank) x dim`) onto the non-pivot
    /// coordinates after reduction, and a section picking those coordinates.
    pub fn quotient(&self) -> (Mat<F>, Mat<F>) {
        let field = self.field;
        let mut slot = vec![NO_PIVOT; self.dim];
        let mut free = Vec::new();
        for j in 0..self.dim {
            if self.pivot_row[j] == NO_PIVOT {
                slot[j] = free.len();
                free.push(j);
            }
        }
        let q = free.len();
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.dim];
        for (t, &j) in free.iter().enumerate() {
            cols[j].push((t, field.one()));
        }
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (j, x) in row {
                if *j != p {
                    cols[p].push((slot[*j], field.neg(x)));
                }
            }
        }
        let proj = Mat::from_columns(field, q, cols).expect("indices in range");
        let section = Mat::from_columns(
            field,
            self.dim,
            free.iter().map(|&j| vec![(j, field.one())]).collect(),
        )
        .expect("indices in range");
        (proj, section)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_of_dependent_rows() {
        let q = Rationals;
        let m = Mat::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn null_space_is_annihilated() {
        let f = PrimeField::new(3).unwrap();
        let m = Mat::from_i64(f, &[&[1, 2, 0, 1], &[0, 1, 1, 1]]);
        let e = Echelon::from_vectors(f, 4, m.row_vectors().iter());
        let (basis, _) = e.null_space();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(m.apply(b).is_empty());
        }
    }

    #[test]
    fn quotient_kills_span_and_is_surjective() {
        let f = PrimeField::new(5).unwrap();
        let span = vec![vec![(0, 1), (2, 3)], vec![(1, 2), (2, 1)]];
        let e = Echelon::from_vectors(f, 4, span.iter());
        let (q, s) = e.quotient();
        assert_eq!(q.shape(), (2, 4));
        for v in &span {
            assert!(q.apply(v).is_empty());
        }
        assert!(q.mul(&s).unwrap().is_identity());
    }

    #[test]
    fn rows_stay_fully_reduced() {
        let f = PrimeField::new(7).unwrap();
        let vs = vec![
            vec![(1, 3), (3, 1)],
            vec![(0, 1), (1, 1)],
            vec![(1, 2), (2, 5), (3, 4)],
        ];
        let e = Echelon::from_vectors(f, 4, vs.iter());
        for (r, row) in e.rows().iter().enumerate() {
            for (s, &p) in e.pivots().iter().enumerate() {
                let x = row.iter().find(|t| t.0 == p).map(|t| t.1).unwrap_or(0);
                assert_eq!(x, u64::from(r == s));
            }
        }
    }
}
