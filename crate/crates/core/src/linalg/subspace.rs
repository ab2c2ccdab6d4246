use super::echelon::Echelon;
use super::mat::{Accumulator, Mat, SparseVec};
use crate::error::{Error, Result};
use crate::field::Field;

/// A subspace of `F^ambient`, stored as a reduced basis.
///
/// `basis[i]` has a 1 at `pivots[i]` and a 0 at `pivots[j]` for `j != i`, so
/// the coordinates of a member are read off at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| vec![(i, field.one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a, I>(field: F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
        F::Elem: 'a,
    {
        Self::from_echelon(Echelon::from_vectors(field, ambient, vectors))
    }

    pub fn from_echelon(e: Echelon<F>) -> Self {
        let (field, ambient) = (e.field(), e.dim());
        let (basis, pivots) = e.into_parts();
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub(crate) fn from_reduced(
        field: F,
        ambient: usize,
        basis: Vec<SparseVec<F::Elem>>,
        pivots: Vec<usize>,
    ) -> Self {
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Column space of `m`.
    pub fn column_space(m: &Mat<F>) -> Self {
        Self::span(m.field(), m.rows(), m.columns().iter())
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Mat<F> {
        Mat::from_columns(self.field, self.ambient, self.basis.clone()).expect("basis in range")
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        let field = self.field;
        let mut coords = Vec::with_capacity(self.dim());
        let mut acc = Accumulator::new(field, self.ambient);
        acc.add_scaled(&field.one(), v);
        let m1 = field.neg(&field.one());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v
                .binary_search_by_key(&p, |t| t.0)
                .map(|k| v[k].1.clone())
                .unwrap_or_else(|_| field.zero());
            if !field.is_zero(&c) {
                acc.add_scaled(&field.mul(&m1, &c), b);
            }
            coords.push(c);
        }
        acc.take().is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces (independent of the chosen bases).
    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// The linear combination `sum coords[i] * basis[i]`.
    pub fn combine(&self, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(self.field, self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc.add_scaled(c, b);
        }
        acc.take()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(other.basis.iter()),
        ))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let k = super::kernel(&a.hstack(&b.neg())?);
        let vs: Vec<_> = k
            .basis
            .iter()
            .map(|x| {
                let left: Vec<_> = x.iter().filter(|t| t.0 < self.dim()).cloned().collect();
                a.apply(&left)
            })
            .collect();
        Ok(Self::span(self.field, self.ambient, vs.iter()))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Mat<F>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::shape(format!(
                "map with {} columns applied to a subspace of F^{}",
                m.cols(),
                self.ambient
            )));
        }
        let vs: Vec<_> = self.basis.iter().map(|b| m.apply(b)).collect();
        Ok(Self::span(self.field, m.rows(), vs.iter()))
    }

    /// Canonical reduced form (leftmost pivots), unique for the subspace.
    pub fn canonical(&self) -> Self {
        Self::span(self.field, self.ambient, self.basis.iter())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}
