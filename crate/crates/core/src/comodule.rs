//! Comodules over a finite-dimensional coalgebra.
//!
//! A left coaction `M -> C ⊗ M` is an `(n*m) x m` matrix with row `c*m + v`;
//! a right coaction `M -> M ⊗ C` is `(m*n) x m` with row `v*n + c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coalgebra::{Bialgebra, CoalgebraMorphism, CoalgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Accumulator, Mat, Quotient, SparseVec, Subspace};
use crate::verdict::{Axiom, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

pub(crate) fn same_coalgebra<F: Field>(a: &CoalgebraRef<F>, b: &CoalgebraRef<F>) -> bool {
    std::sync::Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule<F: Field> {
    coalgebra: CoalgebraRef<F>,
    side: Side,
    dim: usize,
    coaction: Mat<F>,
}

impl<F: Field> Comodule<F> {
    pub fn new_unchecked(coalgebra: CoalgebraRef<F>, side: Side, coaction: Mat<F>) -> Result<Self> {
        let n = coalgebra.dim();
        let m = coaction.cols();
        if coaction.rows() != n * m {
            return Err(Error::shape(format!(
                "coaction of a {m}-dimensional comodule over a {n}-dimensional coalgebra must have {} rows, got {}",
                n * m,
                coaction.rows()
            )));
        }
        if coaction.field() != coalgebra.field() {
            return Err(Error::FieldMismatch(
                coaction.field().spec(),
                coalgebra.field().spec(),
            ));
        }
        Ok(Comodule {
            coalgebra,
            side,
            dim: m,
            coaction,
        })
    }

    pub fn new(coalgebra: CoalgebraRef<F>, side: Side, coaction: Mat<F>) -> Result<Self> {
        let m = Self::new_unchecked(coalgebra, side, coaction)?;
        let v = m.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("comodule axioms: {v}")));
        }
        Ok(m)
    }

    pub fn coalgebra(&self) -> &CoalgebraRef<F> {
        &self.coalgebra
    }
    pub fn field(&self) -> F {
        self.coalgebra.field()
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn coaction(&self) -> &Mat<F> {
        &self.coaction
    }

    fn n(&self) -> usize {
        self.coalgebra.dim()
    }

    /// Splits a row index of the coaction into `(coalgebra index, module index)`.
    #[inline]
    pub fn split_row(&self, row: usize) -> (usize, usize) {
        match self.side {
            Side::Left => (row / self.dim, row % self.dim),
            Side::Right => (row % self.n(), row / self.n()),
        }
    }

    #[inline]
    pub fn join_row(&self, c: usize, v: usize) -> usize {
        join(self.side, self.n(), self.dim, c, v)
    }

    pub fn check(&self) -> Verdict {
        let f = self.field();
        let c = &self.coalgebra;
        let (idn, idm) = (Mat::identity(f, c.dim()), Mat::identity(f, self.dim));
        let rho = &self.coaction;
        let mut v = Verdict::pass();
        let (assoc, counit) = match self.side {
            Side::Left => (
                Mat::kron_apply(c.delta(), &idm, rho).ok() == Mat::kron_apply(&idn, rho, rho).ok(),
                Mat::kron_apply(c.epsilon(), &idm, rho).map(|m| m.is_identity()),
            ),
            Side::Right => (
                Mat::kron_apply(rho, &idn, rho).ok() == Mat::kron_apply(&idm, c.delta(), rho).ok(),
                Mat::kron_apply(&idm, c.epsilon(), rho).map(|m| m.is_identity()),
            ),
        };
        v.require(assoc, Axiom::CoactionAssociativity);
        v.require(counit.unwrap_or(false), Axiom::CoactionCounit);
        v
    }

    pub fn zero(coalgebra: CoalgebraRef<F>, side: Side) -> Self {
        let f = coalgebra.field();
        Comodule {
            coalgebra,
            side,
            dim: 0,
            coaction: Mat::zeros(f, 0, 0),
        }
    }

    /// `C` over itself with coaction `Δ`.
    pub fn regular(coalgebra: CoalgebraRef<F>, side: Side) -> Self {
        let coaction = coalgebra.delta().clone();
        let n = coalgebra.dim();
        Comodule {
            coalgebra,
            side,
            dim: n,
            coaction,
        }
    }

    /// `C ⊗ k^d` (left) or `k^d ⊗ C` (right) with coaction from `Δ`.
    /// Carrier index is `c*d + t` on the left and `t*n + c` on the right.
    pub fn cofree(coalgebra: CoalgebraRef<F>, side: Side, d: usize) -> Self {
        let f = coalgebra.field();
        let id = Mat::identity(f, d);
        let coaction = match side {
            Side::Left => coalgebra.delta().kron(&id),
            Side::Right => id.kron(coalgebra.delta()),
        };
        Comodule {
            dim: coalgebra.dim() * d,
            coalgebra,
            side,
            coaction,
        }
    }

    /// The one-dimensional comodule `1 ↦ g ⊗ 1` for the coalgebra's first
    /// grouplike basis element `g`.
    pub fn trivial(coalgebra: CoalgebraRef<F>, side: Side) -> Result<Self> {
        let g = coalgebra.trivial_grouplike()?;
        let coaction = Mat::from_columns(coalgebra.field(), coalgebra.dim(), vec![g])?;
        Self::new_unchecked(coalgebra, side, coaction)
    }

    /// Left comodule on `M*` from a right comodule `M`, and vice versa.
    ///
    /// For a left coaction `e_v ↦ Σ_u a_{uv} ⊗ e_u` the right coaction on the
    /// dual basis is `e_u* ↦ Σ_v e_v* ⊗ a_{uv}`.
    pub fn dual(&self) -> Self {
        let (n, m) = (self.n(), self.dim);
        let other = self.side.opposite();
        let t = self.coaction.triplets().map(|(row, v, val)| {
            let (c, u) = self.split_row(row);
            (join(other, n, m, c, v), u, val.clone())
        });
        let coaction = Mat::from_triplets(self.field(), n * m, m, t).expect("in range");
        Comodule {
            coalgebra: self.coalgebra.clone(),
            side: other,
            dim: m,
            coaction,
        }
    }

    /// The same comodule viewed over `D` through `ρ: C -> D`.
    pub fn corestrict(&self, rho: &CoalgebraMorphism<F>) -> Result<Self> {
        if !same_coalgebra(&rho.source, &self.coalgebra) {
            return Err(Error::CoalgebraMismatch);
        }
        let idm = Mat::identity(self.field(), self.dim);
        let coaction = match self.side {
            Side::Left => Mat::kron_apply(&rho.matrix, &idm, &self.coaction)?,
            Side::Right => Mat::kron_apply(&idm, &rho.matrix, &self.coaction)?,
        };
        Self::new_unchecked(rho.target.clone(), self.side, coaction)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let (n, a, b) = (self.n(), self.dim, other.dim);
        let s = a + b;
        let mut t = Vec::with_capacity(self.coaction.nnz() + other.coaction.nnz());
        for (row, v, val) in self.coaction.triplets() {
            let (c, u) = self.split_row(row);
            t.push((join(self.side, n, s, c, u), v, val.clone()));
        }
        for (row, v, val) in other.coaction.triplets() {
            let (c, u) = other.split_row(row);
            t.push((join(self.side, n, s, c, a + u), a + v, val.clone()));
        }
        let coaction = Mat::from_triplets(self.field(), n * s, s, t)?;
        Self::new_unchecked(self.coalgebra.clone(), self.side, coaction)
    }

    /// Tensor product over a bialgebra: `m ⊗ w ↦ Σ m_{(-1)} w_{(-1)} ⊗ m_0 ⊗ w_0`.
    pub fn tensor(&self, other: &Self, bialgebra: &Bialgebra<F>) -> Result<Self> {
        self.compatible(other)?;
        if !same_coalgebra(bialgebra.coalgebra(), &self.coalgebra) {
            return Err(Error::CoalgebraMismatch);
        }
        let f = self.field();
        let (n, a, b) = (self.n(), self.dim, other.dim);
        let mult = bialgebra.algebra().mult();
        let mut acc = Accumulator::new(f, n * a * b);
        let mut cols = Vec::with_capacity(a * b);
        for x in 0..a {
            for y in 0..b {
                for (r1, v1) in self.coaction.column(x) {
                    let (c1, u1) = self.split_row(*r1);
                    for (r2, v2) in other.coaction.column(y) {
                        let (c2, u2) = other.split_row(*r2);
                        let s = f.mul(v1, v2);
                        for (c, w) in mult.column(c1 * n + c2) {
                            acc.add(join(self.side, n, a * b, *c, u1 * b + u2), f.mul(&s, w));
                        }
                    }
                }
                cols.push(acc.take());
            }
        }
        let coaction = Mat::from_columns(f, n * a * b, cols)?;
        Self::new_unchecked(self.coalgebra.clone(), self.side, coaction)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if !same_coalgebra(&self.coalgebra, &other.coalgebra) {
            return Err(Error::CoalgebraMismatch);
        }
        if self.side != other.side {
            return Err(Error::Side(format!("{} vs {}", self.side, other.side)));
        }
        Ok(())
    }

    /// Same comodule with one coaction entry replaced (for mutation tests).
    pub fn mutated(&self, i: usize, j: usize, v: F::Elem) -> Self {
        let mut m = self.clone();
        m.coaction = m.coaction.with_entry(i, j, v);
        m
    }

    /// Whether a linear map `f: self -> other` is a comodule map.
    pub fn is_comodule_map(&self, other: &Self, f: &Mat<F>) -> Result<bool> {
        self.compatible(other)?;
        if f.shape() != (other.dim, self.dim) {
            return Err(Error::shape("comodule map has the wrong shape"));
        }
        let lhs = other.coaction.mul(f)?;
        let id = Mat::identity(self.field(), self.n());
        let rhs = match self.side {
            Side::Left => Mat::kron_apply(&id, f, &self.coaction)?,
            Side::Right => Mat::kron_apply(f, &id, &self.coaction)?,
        };
        Ok(lhs == rhs)
    }

    /// Smallest subcomodule containing `vectors`.
    pub fn generated_subcomodule<'a, I>(&self, vectors: I) -> Subspace<F>
    where
        I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
        F::Elem: 'a,
    {
        let n = self.n();
        let mut parts: Vec<SparseVec<F::Elem>> = Vec::new();
        for v in vectors {
            let img = self.coaction.apply(v);
            let mut by_c: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); n];
            for (row, x) in img {
                let (c, u) = self.split_row(row);
                by_c[c].push((u, x));
            }
            parts.extend(by_c.into_iter().filter(|p| !p.is_empty()).map(|mut p| {
                p.sort_unstable_by_key(|t| t.0);
                p
            }));
        }
        Subspace::span(self.field(), self.dim, parts.iter())
    }

    /// Whether `s` is stable under the coaction.
    pub fn is_subcomodule(&self, s: &Subspace<F>) -> bool {
        self.generated_subcomodule(s.basis().iter()).dim() == s.dim()
    }

    /// The subcomodule carried by `s`, with the inclusion map.
    pub fn sub(&self, s: &Subspace<F>) -> Result<(Self, Mat<F>)> {
        if !self.is_subcomodule(s) {
            return Err(Error::Invalid("subspace is not a subcomodule".into()));
        }
        let f = self.field();
        let (n, k) = (self.n(), s.dim());
        let inc = s.basis_matrix();
        let mut cols = Vec::with_capacity(k);
        for b in s.basis() {
            let img = self.coaction.apply(b);
            let mut by_c: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); n];
            for (row, x) in img {
                let (c, u) = self.split_row(row);
                by_c[c].push((u, x));
            }
            let mut col = Vec::new();
            for (c, mut part) in by_c.into_iter().enumerate() {
                part.sort_unstable_by_key(|t| t.0);
                let coords = s.coordinates(&part).expect("stable subspace");
                for (t, x) in coords.into_iter().enumerate() {
                    if !f.is_zero(&x) {
                        col.push((join(self.side, n, k, c, t), x));
                    }
                }
            }
            cols.push(col);
        }
        let coaction = Mat::from_columns(f, n * k, cols)?;
        Ok((
            Self::new_unchecked(self.coalgebra.clone(), self.side, coaction)?,
            inc,
        ))
    }

    /// The quotient comodule by a subcomodule, with the projection.
    pub fn quotient(&self, s: &Subspace<F>) -> Result<(Self, Quotient<F>)> {
        if !self.is_subcomodule(s) {
            return Err(Error::Invalid("subspace is not a subcomodule".into()));
        }
        let q = linalg::quotient_by(self.field(), self.dim, s.basis().iter());
        let id = Mat::identity(self.field(), self.n());
        let lifted = self.coaction.mul(&q.section)?;
        let coaction = match self.side {
            Side::Left => Mat::kron_apply(&id, &q.map, &lifted)?,
            Side::Right => Mat::kron_apply(&q.map, &id, &lifted)?,
        };
        Ok((
            Self::new_unchecked(self.coalgebra.clone(), self.side, coaction)?,
            q,
        ))
    }
}

#[inline]
fn join(side: Side, n: usize, m: usize, c: usize, v: usize) -> usize {
    match side {
        Side::Left => c * m + v,
        Side::Right => v * n + c,
    }
}

/// All comodule maps `M -> N`, as a subspace of `Hom(M, N)` (coordinate
/// `f[y][x]` at `x * dim N + y`).
pub fn hom_comodules<F: Field>(m: &Comodule<F>, n: &Comodule<F>) -> Result<Subspace<F>> {
    m.compatible(n)?;
    let f = m.field();
    let (a, b, nc) = (m.dim, n.dim, m.n());
    let out = nc * b;
    // Column (x, y) of the constraint map sends f = e_y e_x^T to
    // Δ_N f - (id ⊗ f) Δ_M, laid out as x' * (n*b) + row.
    let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); a * b];
    for x in 0..a {
        for y in 0..b {
            cols[x * b + y].extend(
                n.coaction
                    .column(y)
                    .iter()
                    .map(|(r, v)| (x * out + r, v.clone())),
            );
        }
    }
    for (row, x, val) in m.coaction.triplets() {
        let (c, v) = m.split_row(row);
        let neg = f.neg(val);
        for y in 0..b {
            cols[v * b + y].push((x * out + n.join_row(c, y), neg.clone()));
        }
    }
    let constraint = Mat::from_columns(f, a * out, cols)?;
    Ok(linalg::kernel(&constraint))
}

/// `M □_C N` inside `M ⊗ N`, for `M` right and `N` left.
pub fn cotensor<F: Field>(m: &Comodule<F>, n: &Comodule<F>) -> Result<Subspace<F>> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Side(
            "cotensor needs a right and a left comodule".into(),
        ));
    }
    if !same_coalgebra(&m.coalgebra, &n.coalgebra) {
        return Err(Error::CoalgebraMismatch);
    }
    let f = m.field();
    let lhs = m.coaction.kron(&Mat::identity(f, n.dim));
    let rhs = Mat::identity(f, m.dim).kron(&n.coaction);
    linalg::equalizer(&lhs, &rhs)
}

/// Witness that a comodule is injective: a comodule retraction of the
/// coaction `M -> cofree(C, dim M)`.
#[derive(Clone, Debug)]
pub struct InjectivityWitness<F: Field> {
    pub retraction: Mat<F>,
}

/// Decides injectivity by looking for a comodule retraction of the canonical
/// embedding into the cofree comodule.
pub fn is_injective<F: Field>(m: &Comodule<F>) -> Result<Option<InjectivityWitness<F>>> {
    let f = m.field();
    let cof = Comodule::cofree(m.coalgebra.clone(), m.side, m.dim);
    // Right-sided coaction rows are v*n + c while the right cofree carrier is
    // t*n + c, so the coaction is the embedding on both sides.
    let embed = &m.coaction;
    let homs = hom_comodules(&cof, m)?;
    let (a, b) = (cof.dim, m.dim);
    let mut cols = Vec::with_capacity(homs.dim());
    for h in homs.basis() {
        let hm = Mat::from_hom_vector(f, b, a, h);
        cols.push(hm.mul(embed)?.to_hom_vector());
    }
    let sys = Mat::from_columns(f, b * b, cols)?;
    let target = Mat::from_columns(f, b * b, vec![Mat::identity(f, b).to_hom_vector()])?;
    let Some(t) = linalg::solve(&sys, &target)? else {
        return Ok(None);
    };
    let coords: Vec<F::Elem> = (0..homs.dim()).map(|i| t.get(i, 0)).collect();
    let r = Mat::from_hom_vector(f, b, a, &homs.combine(&coords));
    Ok(Some(InjectivityWitness { retraction: r }))
}

/// Radical and head of a comodule relative to a complete list of simples.
#[derive(Clone, Debug)]
pub struct HeadRadical<F: Field> {
    pub radical: Subspace<F>,
    /// `(label, multiplicity)` for each simple with nonzero multiplicity.
    pub head: Vec<(String, usize)>,
}

/// `rad M = ∩ ker f` over comodule maps into the supplied simples. The list
/// must be complete and irredundant; this is not checked.
pub fn head_radical<F: Field>(
    m: &Comodule<F>,
    simples: &[(String, Comodule<F>)],
) -> Result<HeadRadical<F>> {
    let f = m.field();
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut head = Vec::new();
    for (label, s) in simples {
        let homs = hom_comodules(m, s)?;
        if homs.is_zero() {
            continue;
        }
        let ends = hom_comodules(s, s)?.dim();
        if ends == 0 || homs.dim() % ends != 0 {
            return Err(Error::Inconsistent(format!(
                "hom dimension {} into `{label}` is not a multiple of its endomorphism dimension {ends}",
                homs.dim()
            )));
        }
        head.push((label.clone(), homs.dim() / ends));
        for h in homs.basis() {
            rows.extend(Mat::from_hom_vector(f, s.dim, m.dim, h).row_vectors());
        }
    }
    let stacked = Mat::from_columns(f, m.dim, rows)?.transpose();
    Ok(HeadRadical {
        radical: linalg::kernel(&stacked),
        head,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::catalog::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn regular_and_cofree_pass() {
        let q = Rationals;
        let c = divided_power_dual(q, 3).shared();
        for side in [Side::Left, Side::Right] {
            assert!(Comodule::regular(c.clone(), side).check().is_ok());
            assert!(Comodule::cofree(c.clone(), side, 2).check().is_ok());
            assert_eq!(Comodule::cofree(c.clone(), side, 0).dim(), 0);
        }
    }

    #[test]
    fn mutation_is_rejected() {
        let f = PrimeField::new(2).unwrap();
        let c = matrix_coalgebra(f, 2).shared();
        let m = Comodule::regular(c, Side::Left);
        assert!(!m.mutated(0, 0, 0).check().is_ok());
    }

    #[test]
    fn dual_round_trip() {
        let q = Rationals;
        let c = matrix_coalgebra(q, 2).shared();
        let m = Comodule::cofree(c, Side::Left, 2);
        let d = m.dual();
        assert_eq!(d.side(), Side::Right);
        assert!(d.check().is_ok());
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn hom_into_cofree_has_expected_dim() {
        let f = PrimeField::new(3).unwrap();
        let c = divided_power_dual(f, 3).shared();
        let m = Comodule::regular(c.clone(), Side::Left);
        let cof = Comodule::cofree(c, Side::Left, 2);
        assert_eq!(hom_comodules(&m, &cof).unwrap().dim(), 3 * 2);
        let end = hom_comodules(&m, &m).unwrap();
        assert!(end.contains(&Mat::identity(f, 3).to_hom_vector()));
    }

    #[test]
    fn cotensor_with_regular() {
        let q = Rationals;
        let c = matrix_coalgebra(q, 2).shared();
        let n = Comodule::cofree(c.clone(), Side::Left, 1);
        let r = Comodule::regular(c, Side::Right);
        assert_eq!(cotensor(&r, &n).unwrap().dim(), n.dim());
    }

    #[test]
    fn cofree_is_injective_and_trivial_is_not() {
        let q = Rationals;
        let c = divided_power_dual(q, 3).shared();
        let w = is_injective(&Comodule::cofree(c.clone(), Side::Left, 1)).unwrap();
        assert!(w.is_some());
        assert!(is_injective(&Comodule::trivial(c, Side::Left).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn head_of_semisimple_sum() {
        let f = PrimeField::new(2).unwrap();
        let c = grouplike(f, 2).shared();
        let s0 = Comodule::new(c.clone(), Side::Left, Mat::from_i64(f, &[&[1], &[0]])).unwrap();
        let s1 = Comodule::new(c.clone(), Side::Left, Mat::from_i64(f, &[&[0], &[1]])).unwrap();
        let m = s0.direct_sum(&s0).unwrap();
        let hr = head_radical(&m, &[("S0".into(), s0), ("S1".into(), s1)]).unwrap();
        assert_eq!(hr.radical.dim(), 0);
        assert_eq!(hr.head, vec![("S0".to_string(), 2)]);
    }

    #[test]
    fn sub_and_quotient_comodules() {
        let q = Rationals;
        let c = divided_power_dual(q, 3).shared();
        let m = Comodule::regular(c, Side::Left);
        let s = m.generated_subcomodule([vec![(1, q.one())]].iter());
        assert_eq!(s.dim(), 2);
        let (sub, inc) = m.sub(&s).unwrap();
        assert!(sub.check().is_ok());
        assert!(sub.is_comodule_map(&m, &inc).unwrap());
        let (quo, p) = m.quotient(&s).unwrap();
        assert!(quo.check().is_ok());
        assert!(m.is_comodule_map(&quo, &p.map).unwrap());
    }
}
