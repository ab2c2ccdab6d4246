//! Coordinate rings `k[G_r]` of the Frobenius kernels of `SL2`.
//!
//! With `q = p^r`, `k[G_r] = k[SL2] / (a^q - 1, b^q, c^q, d^q - 1)` has basis
//! `b^i c^j a^k` (`i, j, k < q`) at index `(i*q + j)*q + k`; there
//! `d = a^{q-1} (1 + bc)`.

use std::collections::HashMap;

use super::poly::{binomial_mod, SL2Poly};
use crate::coalgebra::{Bialgebra, Coalgebra, CoalgebraMorphism, CoalgebraRef};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{Mat, SparseVec};

/// Index bookkeeping for `k[G_r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusKernel {
    field: PrimeField,
    r: u32,
    q: usize,
}

impl FrobeniusKernel {
    pub fn new(field: PrimeField, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid(
                "Frobenius kernel index must be at least 1".into(),
            ));
        }
        let q = (field.p() as usize)
            .checked_pow(r)
            .filter(|q| q.checked_pow(3).is_some_and(|n| n <= 1 << 16))
            .ok_or_else(|| {
                Error::Unsupported(format!("k[G_{r}] over F_{} is too large", field.p()))
            })?;
        Ok(FrobeniusKernel { field, r, q })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn dim(&self) -> usize {
        self.q * self.q * self.q
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.q + j) * self.q + k
    }

    #[inline]
    pub fn exponents(&self, idx: usize) -> (usize, usize, usize) {
        (
            idx / (self.q * self.q),
            (idx / self.q) % self.q,
            idx % self.q,
        )
    }

    /// Product of two basis monomials (a basis monomial or zero).
    #[inline]
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        let (i1, j1, k1) = self.exponents(x);
        let (i2, j2, k2) = self.exponents(y);
        let (i, j) = (i1 + i2, j1 + j2);
        (i < self.q && j < self.q).then(|| self.index(i, j, (k1 + k2) % self.q))
    }

    /// Image of a normal-form polynomial in `k[G_r]`.
    pub fn reduce(&self, x: &SL2Poly) -> SparseVec<u64> {
        let f = self.field;
        let q = self.q as i64;
        let mut terms = Vec::new();
        for (&(i, j, e), &v) in x.terms() {
            let (i, j) = (i as usize, j as usize);
            let k = e as i64;
            if e >= 0 {
                if i < self.q && j < self.q {
                    terms.push((self.index(i, j, k.rem_euclid(q) as usize), v));
                }
            } else {
                // d^t = a^{-t} (1 + bc)^t
                let t = (-k) as u64;
                let ka = k.rem_euclid(q) as usize;
                for l in 0..=t as usize {
                    if i + l >= self.q || j + l >= self.q {
                        break;
                    }
                    let bin = binomial_mod(f, t, l as u64);
                    if bin != 0 {
                        terms.push((self.index(i + l, j + l, ka), f.mul(&v, &bin)));
                    }
                }
            }
        }
        crate::linalg::normalize(f, terms)
    }

    fn tensor_mul(
        &self,
        x: &HashMap<(usize, usize), u64>,
        y: &[(usize, usize, u64)],
    ) -> HashMap<(usize, usize), u64> {
        let f = self.field;
        let mut out: HashMap<(usize, usize), u64> = HashMap::with_capacity(x.len() * 2);
        for (&(x1, x2), u) in x {
            for &(y1, y2, v) in y {
                if let (Some(a), Some(b)) = (self.mul_basis(x1, y1), self.mul_basis(x2, y2)) {
                    let e = out.entry((a, b)).or_insert(0);
                    *e = f.add(e, &f.mul(u, &v));
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// The coalgebra `k[G_r]`, with `Δ` computed multiplicatively from
    /// `Δa = a⊗a + b⊗c`, `Δb = a⊗b + b⊗d`, `Δc = c⊗a + d⊗c`.
    pub fn coalgebra(&self) -> Coalgebra<PrimeField> {
        let f = self.field;
        let n = self.dim();
        let q = self.q;
        let d_terms = |coef: u64| -> Vec<(usize, u64)> {
            // d = a^{q-1} + b c a^{q-1}
            vec![
                (self.index(0, 0, q - 1), coef),
                (self.index(1, 1, q - 1), coef),
            ]
        };
        let a = self.index(0, 0, 1);
        let b = self.index(1, 0, 0);
        let c = self.index(0, 1, 0);
        let da = vec![(a, a, 1), (b, c, 1)];
        let db: Vec<_> = [(a, b, 1)]
            .into_iter()
            .chain(d_terms(1).into_iter().map(|(x, v)| (b, x, v)))
            .collect();
        let dc: Vec<_> = [(c, a, 1)]
            .into_iter()
            .chain(d_terms(1).into_iter().map(|(x, v)| (x, c, v)))
            .collect();
        let mut cols: Vec<SparseVec<u64>> = vec![Vec::new(); n];
        let one = self.index(0, 0, 0);
        let mut cur_i: HashMap<(usize, usize), u64> = HashMap::from([((one, one), 1)]);
        for i in 0..q {
            let mut cur_j = cur_i.clone();
            for j in 0..q {
                let mut cur_k = cur_j.clone();
                for k in 0..q {
                    let col = self.index(i, j, k);
                    cols[col] = crate::linalg::normalize(
                        f,
                        cur_k.iter().map(|(&(x, y), &v)| (x * n + y, v)).collect(),
                    );
                    cur_k = self.tensor_mul(&cur_k, &da);
                }
                cur_j = self.tensor_mul(&cur_j, &dc);
            }
            cur_i = self.tensor_mul(&cur_i, &db);
        }
        let delta = Mat::from_columns(f, n * n, cols).expect("in range");
        let eps = Mat::from_triplets(f, 1, n, (0..q).map(|k| (0, self.index(0, 0, k), 1)))
            .expect("in range");
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// `k[G_r]` with its multiplication.
    pub fn bialgebra(&self, coalgebra: CoalgebraRef<PrimeField>) -> Result<Bialgebra<PrimeField>> {
        let n = self.dim();
        let mut t = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.mul_basis(x, y) {
                    t.push((z, x * n + y, 1));
                }
            }
        }
        let mult = Mat::from_triplets(self.field, n, n * n, t)?;
        let unit = Mat::from_triplets(self.field, n, 1, [(0, 0, 1)])?;
        Bialgebra::new_unchecked(coalgebra, mult, unit)
    }

    /// The quotient map `k[G_r] ↠ k[G_s]` for `s <= r`.
    pub fn truncation(
        &self,
        source: CoalgebraRef<PrimeField>,
        smaller: &FrobeniusKernel,
        target: CoalgebraRef<PrimeField>,
    ) -> Result<CoalgebraMorphism<PrimeField>> {
        if smaller.field != self.field || smaller.r > self.r {
            return Err(Error::Invalid(
                "truncation needs a smaller kernel over the same field".into(),
            ));
        }
        let mut t = Vec::new();
        for idx in 0..self.dim() {
            let (i, j, k) = self.exponents(idx);
            if i < smaller.q && j < smaller.q {
                t.push((smaller.index(i, j, k % smaller.q), idx, 1));
            }
        }
        let mat = Mat::from_triplets(self.field, smaller.dim(), self.dim(), t)?;
        CoalgebraMorphism::surjection(source, target, mat)
    }
}
