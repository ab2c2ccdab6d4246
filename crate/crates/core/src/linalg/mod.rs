//! Exact linear algebra: sparse matrices, echelon forms, kernels and
//! cokernels.

mod echelon;
mod mat;
mod subspace;

pub use echelon::Echelon;
pub use mat::{Mat, SparseVec};
pub use subspace::Subspace;

pub(crate) use mat::{normalize, Accumulator};

use crate::error::{Error, Result};
use crate::field::Field;

/// A quotient `F^n -> F^q` together with a linear section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<F: Field> {
    /// Surjection, `q x n`.
    pub map: Mat<F>,
    /// Right inverse of `map`, `n x q`.
    pub section: Mat<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.map.rows()
    }
    pub fn ambient(&self) -> usize {
        self.map.cols()
    }
}

pub fn kron<F: Field>(f: &Mat<F>, g: &Mat<F>) -> Mat<F> {
    f.kron(g)
}

/// Null space of `f`.
pub fn kernel<F: Field>(f: &Mat<F>) -> Subspace<F> {
    let e = Echelon::from_vectors(f.field(), f.cols(), f.row_vectors().iter());
    let (basis, pivots) = e.null_space();
    Subspace::from_reduced(f.field(), f.cols(), basis, pivots)
}

pub fn image<F: Field>(f: &Mat<F>) -> Subspace<F> {
    Subspace::column_space(f)
}

fn same_shape<F: Field>(f: &Mat<F>, g: &Mat<F>) -> Result<()> {
    if f.shape() != g.shape() {
        return Err(Error::shape(format!(
            "parallel maps of shapes {}x{} and {}x{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    Ok(())
}

/// `{v : f v = g v}`.
pub fn equalizer<F: Field>(f: &Mat<F>, g: &Mat<F>) -> Result<Subspace<F>> {
    same_shape(f, g)?;
    Ok(kernel(&f.sub(g)?))
}

/// Cokernel of `f - g`.
pub fn coequalizer<F: Field>(f: &Mat<F>, g: &Mat<F>) -> Result<Quotient<F>> {
    same_shape(f, g)?;
    Ok(cokernel(&f.sub(g)?))
}

/// Quotient of the codomain of `f` by its image.
pub fn cokernel<F: Field>(f: &Mat<F>) -> Quotient<F> {
    quotient_by(f.field(), f.rows(), f.columns().iter())
}

/// Quotient of `F^n` by the span of `vectors`.
pub fn quotient_by<'a, F, I>(field: F, n: usize, vectors: I) -> Quotient<F>
where
    F: Field,
    I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
    F::Elem: 'a,
{
    let (map, section) = Echelon::from_vectors(field, n, vectors).quotient();
    Quotient { map, section }
}

/// Some `X` with `a X = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<Option<Mat<F>>> {
    if a.rows() != b.rows() {
        return Err(Error::shape(format!(
            "solve with {} equations but {} right-hand rows",
            a.rows(),
            b.rows()
        )));
    }
    let field = a.field();
    let n = a.cols();
    let aug = a.hstack(b)?;
    let e = Echelon::from_vectors(field, n + b.cols(), aug.row_vectors().iter());
    if e.pivots().iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut triplets = Vec::new();
    for (row, &p) in e.rows().iter().zip(e.pivots()) {
        for (j, v) in row {
            if *j >= n {
                triplets.push((p, j - n, v.clone()));
            }
        }
    }
    Mat::from_triplets(field, n, b.cols(), triplets).map(Some)
}
