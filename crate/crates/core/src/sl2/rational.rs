//! Rational `SL2`-comodules given by matrix coefficients.
//!
//! The coaction is `v_j ↦ Σ_i v_i ⊗ a_{ij}`, so the axioms read
//! `Δ(a_{ij}) = Σ_k a_{ik} ⊗ a_{kj}` and `ε(a_{ij}) = δ_{ij}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::character::Character;
use super::kernel::FrobeniusKernel;
use super::poly::{Monomial, SL2Poly, TensorPoly};
use crate::coalgebra::CoalgebraRef;
use crate::comodule::{Comodule, Side};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{self, Mat, SparseVec, Subspace};
use crate::verdict::{Axiom, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalComodule {
    field: PrimeField,
    dim: usize,
    /// `entries[i][j] = a_{ij}`.
    entries: Arc<Vec<Vec<SL2Poly>>>,
}

impl RationalComodule {
    pub fn new_unchecked(field: PrimeField, entries: Vec<Vec<SL2Poly>>) -> Result<Self> {
        let dim = entries.len();
        if entries.iter().any(|row| row.len() != dim) {
            return Err(Error::shape("coaction matrix must be square"));
        }
        Ok(RationalComodule {
            field,
            dim,
            entries: Arc::new(entries),
        })
    }

    pub fn new(field: PrimeField, entries: Vec<Vec<SL2Poly>>) -> Result<Self> {
        let m = Self::new_unchecked(field, entries)?;
        let v = m.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("rational comodule axioms: {v}")));
        }
        Ok(m)
    }

    pub fn trivial(field: PrimeField) -> Self {
        Self::new_unchecked(field, vec![vec![SL2Poly::one(field)]]).expect("square")
    }

    /// The natural representation `[[a, b], [c, d]]`.
    pub fn natural(field: PrimeField) -> Self {
        let f = field;
        Self::new_unchecked(
            f,
            vec![
                vec![SL2Poly::a(f), SL2Poly::b(f)],
                vec![SL2Poly::c(f), SL2Poly::d(f)],
            ],
        )
        .expect("square")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn entry(&self, i: usize, j: usize) -> &SL2Poly {
        &self.entries[i][j]
    }
    pub fn entries(&self) -> &[Vec<SL2Poly>] {
        &self.entries
    }

    /// Exact polynomial check of both matrix-coefficient identities.
    pub fn check(&self) -> Verdict {
        let mut v = Verdict::pass();
        let n = self.dim;
        let mut assoc = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = self.entries[i][j].coproduct();
                let mut rhs = TensorPoly::zero(self.field);
                for k in 0..n {
                    rhs = rhs.add(&TensorPoly::simple(
                        &self.entries[i][k],
                        &self.entries[k][j],
                    ));
                }
                if lhs != rhs {
                    assoc = false;
                    break 'outer;
                }
            }
        }
        v.require(assoc, Axiom::CoactionAssociativity);
        let counit =
            (0..n).all(|i| (0..n).all(|j| self.entries[i][j].counit() == u64::from(i == j)));
        v.require(counit, Axiom::CoactionCounit);
        v
    }

    pub fn mutated(&self, i: usize, j: usize, x: SL2Poly) -> Self {
        let mut e = (*self.entries).clone();
        e[i][j] = x;
        RationalComodule {
            field: self.field,
            dim: self.dim,
            entries: Arc::new(e),
        }
    }

    /// Entries raised to the `p^s`-th power.
    pub fn frobenius_twist(&self, s: u32) -> Self {
        let e = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.frobenius(s)).collect())
            .collect();
        Self::new_unchecked(self.field, e).expect("square")
    }

    /// `a_{(i,i'),(j,j')} = a_{ij} b_{i'j'}`, basis `i * dim N + i'`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let mut e = vec![vec![SL2Poly::zero(self.field); m * n]; m * n];
        for i in 0..m {
            for j in 0..m {
                if self.entries[i][j].is_zero() {
                    continue;
                }
                for i2 in 0..n {
                    for j2 in 0..n {
                        e[i * n + i2][j * n + j2] = self.entries[i][j].mul(&other.entries[i2][j2]);
                    }
                }
            }
        }
        Self::new_unchecked(self.field, e).expect("square")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let mut e = vec![vec![SL2Poly::zero(self.field); m + n]; m + n];
        for i in 0..m {
            for j in 0..m {
                e[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                e[m + i][m + j] = other.entries[i][j].clone();
            }
        }
        Self::new_unchecked(self.field, e).expect("square")
    }

    /// Weight multiplicities from the torus restriction of the coaction.
    pub fn character(&self) -> Character {
        let f = self.field;
        let mut by_weight: BTreeMap<i64, Vec<(usize, usize, u64)>> = BTreeMap::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (w, v) in self.entries[i][j].torus() {
                    by_weight.entry(w).or_default().push((i, j, v));
                }
            }
        }
        let mut ch = Character::zero();
        for (w, t) in by_weight {
            let r = Mat::from_triplets(f, self.dim, self.dim, t)
                .expect("in range")
                .rank();
            ch.add(w, r as i64);
        }
        ch
    }

    /// Largest absolute weight.
    pub fn max_weight(&self) -> i64 {
        self.character().max_abs_weight()
    }

    /// Restriction to `G_r` as a left comodule over `k[G_r]`, via the
    /// antipode: `e_j ↦ Σ_i S(a_{ij}) ⊗ e_i`.
    pub fn restrict_to_kernel(
        &self,
        kernel: &FrobeniusKernel,
        coalgebra: CoalgebraRef<PrimeField>,
    ) -> Result<Comodule<PrimeField>> {
        if coalgebra.dim() != kernel.dim() || kernel.field() != self.field {
            return Err(Error::CoalgebraMismatch);
        }
        let m = self.dim;
        let mut t = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let x = &self.entries[i][j];
                if x.is_zero() {
                    continue;
                }
                for (c, v) in kernel.reduce(&x.antipode()) {
                    t.push((c * m + i, j, v));
                }
            }
        }
        let coaction = Mat::from_triplets(self.field, kernel.dim() * m, m, t)?;
        Comodule::new_unchecked(coalgebra, Side::Left, coaction)
    }
}

/// All `T: M -> N` with `(T ⊗ id) Δ_M = Δ_N T`, by comparing normal-form
/// coefficients (coordinate `T[y][x]` at `x * dim N + y`).
pub fn hom_g(m: &RationalComodule, n: &RationalComodule) -> Result<Subspace<PrimeField>> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field.spec(), n.field.spec()));
    }
    let f = m.field;
    let (a, b) = (m.dim, n.dim);
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for row in m.entries.iter().chain(n.entries.iter()) {
        for x in row {
            monos.extend(x.terms().keys().copied());
        }
    }
    let index: BTreeMap<Monomial, usize> =
        monos.iter().enumerate().map(|(i, &mo)| (mo, i)).collect();
    let nm = index.len();
    // Equation (y, j, μ) at (j * b + y) * nm + μ:
    // Σ_i T[y][i] coeff_μ(a_ij) - Σ_x T[x][j] coeff_μ(b_yx) = 0.
    let mut cols: Vec<SparseVec<u64>> = vec![Vec::new(); a * b];
    for i in 0..a {
        for j in 0..a {
            for (mo, v) in m.entries[i][j].terms() {
                for y in 0..b {
                    cols[i * b + y].push(((j * b + y) * nm + index[mo], *v));
                }
            }
        }
    }
    for y in 0..b {
        for x in 0..b {
            for (mo, v) in n.entries[y][x].terms() {
                for j in 0..a {
                    cols[j * b + x].push(((j * b + y) * nm + index[mo], f.neg(v)));
                }
            }
        }
    }
    let constraint = Mat::from_columns(f, a * b * nm, cols)?;
    Ok(linalg::kernel(&constraint))
}

/// Whether `t: M -> N` intertwines the coactions.
pub fn is_g_map(m: &RationalComodule, n: &RationalComodule, t: &Mat<PrimeField>) -> bool {
    if t.shape() != (n.dim, m.dim) {
        return false;
    }
    let f = m.field;
    for y in 0..n.dim {
        for j in 0..m.dim {
            let mut lhs = SL2Poly::zero(f);
            for i in 0..m.dim {
                lhs = lhs.add(&m.entries[i][j].scale(t.get(y, i)));
            }
            let mut rhs = SL2Poly::zero(f);
            for x in 0..n.dim {
                rhs = rhs.add(&n.entries[y][x].scale(t.get(x, j)));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::hom_comodules;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn natural_module_and_twists_pass() {
        let f = f2();
        let l1 = RationalComodule::natural(f);
        assert!(l1.check().is_ok());
        assert!(l1.frobenius_twist(1).check().is_ok());
        assert!(l1.tensor(&l1).check().is_ok());
        assert!(RationalComodule::trivial(f).frobenius_twist(2) == RationalComodule::trivial(f));
        assert_eq!(
            l1.frobenius_twist(1).frobenius_twist(1),
            l1.frobenius_twist(2)
        );
    }

    #[test]
    fn mutation_detected() {
        let f = f2();
        let l1 = RationalComodule::natural(f);
        assert!(!l1.mutated(0, 1, SL2Poly::zero(f)).check().is_ok());
        assert!(!l1.mutated(0, 0, SL2Poly::one(f)).check().is_ok());
    }

    #[test]
    fn characters() {
        let f = f2();
        let l1 = RationalComodule::natural(f);
        assert_eq!(l1.character().to_string(), "z^-1 + z");
        assert_eq!(l1.frobenius_twist(1).character().to_string(), "z^-2 + z^2");
        assert_eq!(l1.tensor(&l1).character().to_string(), "z^-2 + 2 + z^2");
    }

    #[test]
    fn hom_g_of_natural() {
        let f = f2();
        let l1 = RationalComodule::natural(f);
        let h = hom_g(&l1, &l1).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(is_g_map(&l1, &l1, &Mat::identity(f, 2)));
    }

    #[test]
    fn restriction_passes_and_twist_restricts_trivially() {
        let f = f2();
        let g1 = FrobeniusKernel::new(f, 1).unwrap();
        let c = g1.coalgebra().shared();
        let l1 = RationalComodule::natural(f);
        let r = l1.restrict_to_kernel(&g1, c.clone()).unwrap();
        assert!(r.check().is_ok());
        let tw = l1
            .frobenius_twist(1)
            .restrict_to_kernel(&g1, c.clone())
            .unwrap();
        assert!(tw.check().is_ok());
        // Every coefficient reduces to a scalar: only the unit basis element appears.
        assert!(tw.coaction().triplets().all(|(row, _, _)| row / 2 == 0));
        let triv = RationalComodule::trivial(f)
            .restrict_to_kernel(&g1, c.clone())
            .unwrap();
        assert_eq!(hom_comodules(&triv, &tw).unwrap().dim(), 2);
    }
}
