//! Finite-dimensional coalgebras given by structure tensors.
//!
//! `delta` is `n^2 x n`: column `k` is `Δ(e_k)` and row `i*n + j` holds the
//! coefficient of `e_i ⊗ e_j`. `epsilon` is `1 x n`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Mat, SparseVec};
use crate::verdict::{Axiom, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra<F: Field> {
    field: F,
    dim: usize,
    delta: Mat<F>,
    epsilon: Mat<F>,
}

pub type CoalgebraRef<F> = Arc<Coalgebra<F>>;

impl<F: Field> Coalgebra<F> {
    /// Wraps structure tensors after a shape check; axioms are not verified.
    pub fn new_unchecked(delta: Mat<F>, epsilon: Mat<F>) -> Result<Self> {
        let n = delta.cols();
        if delta.rows() != n * n || epsilon.shape() != (1, n) {
            return Err(Error::shape(format!(
                "coalgebra of dim {n} needs delta {}x{n} and epsilon 1x{n}, got {}x{} and {}x{}",
                n * n,
                delta.rows(),
                delta.cols(),
                epsilon.rows(),
                epsilon.cols()
            )));
        }
        Ok(Coalgebra {
            field: delta.field(),
            dim: n,
            delta,
            epsilon,
        })
    }

    /// Wraps structure tensors and rejects them unless both axioms hold.
    pub fn new(delta: Mat<F>, epsilon: Mat<F>) -> Result<Self> {
        let c = Self::new_unchecked(delta, epsilon)?;
        let v = c.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("coalgebra axioms: {v}")));
        }
        Ok(c)
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn delta(&self) -> &Mat<F> {
        &self.delta
    }
    pub fn epsilon(&self) -> &Mat<F> {
        &self.epsilon
    }

    pub fn shared(self) -> CoalgebraRef<F> {
        Arc::new(self)
    }

    pub fn check(&self) -> Verdict {
        let mut v = Verdict::pass();
        let id = Mat::identity(self.field, self.dim);
        let left = Mat::kron_apply(&self.delta, &id, &self.delta).expect("shapes");
        let right = Mat::kron_apply(&id, &self.delta, &self.delta).expect("shapes");
        v.require(left == right, Axiom::Coassociativity);
        let lc = Mat::kron_apply(&self.epsilon, &id, &self.delta).expect("shapes");
        v.require(lc.is_identity(), Axiom::LeftCounit);
        let rc = Mat::kron_apply(&id, &self.epsilon, &self.delta).expect("shapes");
        v.require(rc.is_identity(), Axiom::RightCounit);
        v
    }

    /// Whether `g` satisfies `Δg = g ⊗ g` and `ε(g) = 1`.
    pub fn is_grouplike(&self, g: &[(usize, F::Elem)]) -> bool {
        let f = self.field;
        let mut gg = Vec::new();
        for (i, a) in g {
            for (j, b) in g {
                gg.push((i * self.dim + j, f.mul(a, b)));
            }
        }
        let gg = crate::linalg::normalize(f, gg);
        let eps = self.epsilon.apply(g);
        self.delta.apply(g) == gg && eps.len() == 1 && f.is_one(&eps[0].1)
    }

    /// The first basis vector that is grouplike, if any.
    pub fn basis_grouplike(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.is_grouplike(&[(i, self.field.one())]))
    }

    /// The grouplike used for trivial (co/contra)modules.
    pub fn trivial_grouplike(&self) -> Result<SparseVec<F::Elem>> {
        self.basis_grouplike()
            .map(|i| vec![(i, self.field.one())])
            .ok_or_else(|| Error::Unsupported("coalgebra has no grouplike basis element".into()))
    }

    /// The dual algebra `C*`: multiplication is `Δ^T`, unit is `ε^T`.
    pub fn dual_algebra(&self) -> FiniteAlgebra<F> {
        FiniteAlgebra {
            field: self.field,
            dim: self.dim,
            mult: self.delta.transpose(),
            unit: self.epsilon.transpose(),
        }
    }

    /// Same structure with one entry of `Δ` or `ε` replaced (for mutation tests).
    pub fn mutated(&self, in_delta: bool, i: usize, j: usize, v: F::Elem) -> Self {
        let mut c = self.clone();
        if in_delta {
            c.delta = c.delta.with_entry(i, j, v);
        } else {
            c.epsilon = c.epsilon.with_entry(i, j, v);
        }
        c
    }
}

/// A finite-dimensional associative unital algebra; `mult` is `n x n^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra<F: Field> {
    field: F,
    dim: usize,
    mult: Mat<F>,
    unit: Mat<F>,
}

impl<F: Field> FiniteAlgebra<F> {
    pub fn new_unchecked(mult: Mat<F>, unit: Mat<F>) -> Result<Self> {
        let n = mult.rows();
        if mult.cols() != n * n || unit.shape() != (n, 1) {
            return Err(Error::shape(format!(
                "algebra of dim {n} needs mult {n}x{} and unit {n}x1",
                n * n
            )));
        }
        Ok(FiniteAlgebra {
            field: mult.field(),
            dim: n,
            mult,
            unit,
        })
    }

    pub fn new(mult: Mat<F>, unit: Mat<F>) -> Result<Self> {
        let a = Self::new_unchecked(mult, unit)?;
        let v = a.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("algebra axioms: {v}")));
        }
        Ok(a)
    }

    /// `k[t]/(t^m)` in the basis `1, t, ..., t^{m-1}`.
    pub fn truncated_polynomial(field: F, m: usize) -> Self {
        let mut t = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    t.push((i + j, i * m + j, field.one()));
                }
            }
        }
        let mult = Mat::from_triplets(field, m, m * m, t).expect("in range");
        let unit = Mat::from_triplets(field, m, 1, (m > 0).then(|| (0, 0, field.one())))
            .expect("in range");
        FiniteAlgebra {
            field,
            dim: m,
            mult,
            unit,
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mult(&self) -> &Mat<F> {
        &self.mult
    }
    pub fn unit(&self) -> &Mat<F> {
        &self.unit
    }

    /// Product of two elements.
    pub fn product(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field;
        let mut acc = Accumulator::new(f, self.dim);
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&f.mul(a, b), self.mult.column(i * self.dim + j));
            }
        }
        acc.take()
    }

    pub fn check(&self) -> Verdict {
        let mut v = Verdict::pass();
        let id = Mat::identity(self.field, self.dim);
        let l = self.mult.mul(&self.mult.kron(&id)).expect("shapes");
        let r = self.mult.mul(&id.kron(&self.mult)).expect("shapes");
        v.require(l == r, Axiom::Associativity);
        v.require(
            self.mult
                .mul(&self.unit.kron(&id))
                .expect("shapes")
                .is_identity(),
            Axiom::LeftUnit,
        );
        v.require(
            self.mult
                .mul(&id.kron(&self.unit))
                .expect("shapes")
                .is_identity(),
            Axiom::RightUnit,
        );
        v
    }

    /// The dual coalgebra: `Δ = mult^T`, `ε = unit^T`.
    pub fn dual_coalgebra(&self) -> Result<Coalgebra<F>> {
        Coalgebra::new_unchecked(self.mult.transpose(), self.unit.transpose())
    }
}

/// A coalgebra with a compatible multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra<F: Field> {
    coalgebra: CoalgebraRef<F>,
    algebra: FiniteAlgebra<F>,
}

impl<F: Field> Bialgebra<F> {
    pub fn new_unchecked(coalgebra: CoalgebraRef<F>, mult: Mat<F>, unit: Mat<F>) -> Result<Self> {
        let algebra = FiniteAlgebra::new_unchecked(mult, unit)?;
        if algebra.dim != coalgebra.dim() {
            return Err(Error::shape(
                "bialgebra multiplication and coalgebra dims differ",
            ));
        }
        Ok(Bialgebra { coalgebra, algebra })
    }

    pub fn coalgebra(&self) -> &CoalgebraRef<F> {
        &self.coalgebra
    }
    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    /// Algebra axioms plus multiplicativity of `Δ` and `ε`. Costs
    /// `O(n^2 * |Δ|^2)`; intended for small dimensions.
    pub fn check(&self) -> Verdict {
        let c = &self.coalgebra;
        let a = &self.algebra;
        let f = c.field();
        let n = c.dim();
        let mut v = c.check().merge(a.check());
        let mut delta_mult = true;
        let mut eps_mult = true;
        let eps = |x: &[(usize, F::Elem)]| -> F::Elem {
            c.epsilon()
                .apply(x)
                .first()
                .map(|t| t.1.clone())
                .unwrap_or_else(|| f.zero())
        };
        let mut acc = Accumulator::new(f, n * n);
        'outer: for x in 0..n {
            for y in 0..n {
                let xy = a.mult.column(x * n + y);
                let lhs = c.delta().apply(xy);
                for (ix, cx) in c.delta().column(x) {
                    let (x1, x2) = (ix / n, ix % n);
                    for (iy, cy) in c.delta().column(y) {
                        let (y1, y2) = (iy / n, iy % n);
                        let s = f.mul(cx, cy);
                        for (p, u) in a.mult.column(x1 * n + y1) {
                            let su = f.mul(&s, u);
                            for (q, w) in a.mult.column(x2 * n + y2) {
                                acc.add(p * n + q, f.mul(&su, w));
                            }
                        }
                    }
                }
                if acc.take() != lhs {
                    delta_mult = false;
                }
                let ex = eps(&[(x, f.one())]);
                let ey = eps(&[(y, f.one())]);
                if eps(xy) != f.mul(&ex, &ey) {
                    eps_mult = false;
                }
                if !delta_mult && !eps_mult {
                    break 'outer;
                }
            }
        }
        v.require(delta_mult, Axiom::ComultiplicationMultiplicative);
        v.require(eps_mult, Axiom::CounitMultiplicative);
        let one = a.unit.column(0).to_vec();
        let mut oo = Vec::new();
        for (i, s) in &one {
            for (j, t) in &one {
                oo.push((i * n + j, f.mul(s, t)));
            }
        }
        let unit_ok =
            c.delta().apply(&one) == crate::linalg::normalize(f, oo) && f.is_one(&eps(&one));
        v.require(unit_ok, Axiom::UnitComultiplicative);
        v
    }
}

/// A linear map `ρ: C -> D` claimed to be a coalgebra map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism<F: Field> {
    pub source: CoalgebraRef<F>,
    pub target: CoalgebraRef<F>,
    pub matrix: Mat<F>,
    pub surjective: bool,
}

impl<F: Field> CoalgebraMorphism<F> {
    pub fn new_unchecked(
        source: CoalgebraRef<F>,
        target: CoalgebraRef<F>,
        matrix: Mat<F>,
        surjective: bool,
    ) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::shape(format!(
                "morphism matrix must be {}x{}",
                target.dim(),
                source.dim()
            )));
        }
        Ok(CoalgebraMorphism {
            source,
            target,
            matrix,
            surjective,
        })
    }

    /// Builds a morphism and verifies it, including the surjectivity flag.
    pub fn new(
        source: CoalgebraRef<F>,
        target: CoalgebraRef<F>,
        matrix: Mat<F>,
        surjective: bool,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix, surjective)?;
        let v = m.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("coalgebra morphism: {v}")));
        }
        Ok(m)
    }

    /// A verified surjection, as required by induction.
    pub fn surjection(
        source: CoalgebraRef<F>,
        target: CoalgebraRef<F>,
        matrix: Mat<F>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix, true)?;
        let v = m.check();
        if v.fails(Axiom::SurjectivityFlag) {
            return Err(Error::NotSurjective);
        }
        if !v.is_ok() {
            return Err(Error::Invalid(format!("coalgebra morphism: {v}")));
        }
        Ok(m)
    }

    pub fn identity(c: CoalgebraRef<F>) -> Self {
        let id = Mat::identity(c.field(), c.dim());
        CoalgebraMorphism {
            source: c.clone(),
            target: c,
            matrix: id,
            surjective: true,
        }
    }

    pub fn check(&self) -> Verdict {
        let mut v = Verdict::pass();
        let lhs = self.target.delta().mul(&self.matrix).expect("shapes");
        let rhs = Mat::kron_apply(&self.matrix, &self.matrix, self.source.delta()).expect("shapes");
        v.require(lhs == rhs, Axiom::MorphismComultiplication);
        let e = self.target.epsilon().mul(&self.matrix).expect("shapes");
        v.require(&e == self.source.epsilon(), Axiom::MorphismCounit);
        let full = self.matrix.rank() == self.target.dim();
        v.require(full == self.surjective, Axiom::SurjectivityFlag);
        v
    }

    pub fn compose(&self, after: &Self) -> Result<Self> {
        if self.target != after.source {
            return Err(Error::CoalgebraMismatch);
        }
        Ok(CoalgebraMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: after.matrix.mul(&self.matrix)?,
            surjective: self.surjective && after.surjective,
        })
    }
}

/// Constructors for standard coalgebras, algebras and maps between them.
pub mod catalog {
    use super::*;

    /// `n` grouplike elements: `Δe_i = e_i ⊗ e_i`, `ε(e_i) = 1`.
    pub fn grouplike<F: Field>(field: F, n: usize) -> Coalgebra<F> {
        let delta =
            Mat::from_triplets(field, n * n, n, (0..n).map(|i| (i * n + i, i, field.one())))
                .expect("in range");
        let eps =
            Mat::from_triplets(field, 1, n, (0..n).map(|i| (0, i, field.one()))).expect("in range");
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// Comatrix coalgebra on `e_{ij}` (index `i*n + j`):
    /// `Δe_{ij} = Σ_k e_{ik} ⊗ e_{kj}`, `ε(e_{ij}) = δ_{ij}`.
    pub fn matrix_coalgebra<F: Field>(field: F, n: usize) -> Coalgebra<F> {
        let d = n * n;
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.push(((i * n + k) * d + (k * n + j), i * n + j, field.one()));
                }
            }
        }
        let delta = Mat::from_triplets(field, d * d, d, t).expect("in range");
        let eps = Mat::from_triplets(field, 1, d, (0..n).map(|i| (0, i * n + i, field.one())))
            .expect("in range");
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// Divided-power coalgebra `c_0..c_{m-1}` with `Δc_k = Σ_{i+j=k} c_i ⊗ c_j`.
    pub fn divided_power_dual<F: Field>(field: F, m: usize) -> Coalgebra<F> {
        let mut t = Vec::new();
        for k in 0..m {
            for i in 0..=k {
                t.push((i * m + (k - i), k, field.one()));
            }
        }
        let delta = Mat::from_triplets(field, m * m, m, t).expect("in range");
        let eps = Mat::from_triplets(field, 1, m, (m > 0).then(|| (0, 0, field.one())))
            .expect("in range");
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// The dual coalgebra of a finite-dimensional algebra.
    pub fn dual_of_algebra<F: Field>(algebra: &FiniteAlgebra<F>) -> Result<Coalgebra<F>> {
        let c = algebra.dual_coalgebra()?;
        let v = c.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("dual of a non-algebra: {v}")));
        }
        Ok(c)
    }

    pub fn direct_sum<F: Field>(c: &Coalgebra<F>, d: &Coalgebra<F>) -> Coalgebra<F> {
        let (n, m) = (c.dim(), d.dim());
        let s = n + m;
        let mut t = Vec::new();
        for (r, k, v) in c.delta().triplets() {
            t.push(((r / n) * s + r % n, k, v.clone()));
        }
        for (r, k, v) in d.delta().triplets() {
            t.push(((n + r / m) * s + n + r % m, n + k, v.clone()));
        }
        let delta = Mat::from_triplets(c.field(), s * s, s, t).expect("in range");
        let eps = c.epsilon().hstack(d.epsilon()).expect("one row each");
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// `C ⊗ D` with `Δ(x ⊗ y) = Σ (x1 ⊗ y1) ⊗ (x2 ⊗ y2)`.
    pub fn tensor<F: Field>(c: &Coalgebra<F>, d: &Coalgebra<F>) -> Coalgebra<F> {
        let (n, m) = (c.dim(), d.dim());
        let nm = n * m;
        let k = c.delta().kron(d.delta());
        let mut perm = vec![0; n * n * m * m];
        for i in 0..n {
            for j in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        perm[(i * n + j) * m * m + a * m + b] = (i * m + a) * nm + (j * m + b);
                    }
                }
            }
        }
        let delta = k.permute_rows(&perm);
        let eps = c.epsilon().kron(d.epsilon());
        Coalgebra::new_unchecked(delta, eps).expect("shapes")
    }

    /// The group algebra `k[Z/n]` as a bialgebra on `grouplike(n)`.
    pub fn cyclic_group_bialgebra<F: Field>(field: F, n: usize) -> Bialgebra<F> {
        let c = grouplike(field, n).shared();
        let mult = Mat::from_triplets(
            field,
            n,
            n * n,
            (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n, i * n + j, field.one()))),
        )
        .expect("in range");
        let unit = Mat::from_triplets(field, n, 1, (n > 0).then(|| (0, 0, field.one())))
            .expect("in range");
        Bialgebra::new_unchecked(c, mult, unit).expect("shapes")
    }

    /// `c_i ↦ d_{i/j}` when `j | i`, else 0: the dual of `s ↦ t^j` from
    /// `k[s]/(s^k)` into `k[t]/(t^m)`, where `k = ceil(m / j)`.
    pub fn divided_power_frobenius<F: Field>(
        field: F,
        m: usize,
        j: usize,
    ) -> Result<CoalgebraMorphism<F>> {
        if j == 0 {
            return Err(Error::Invalid("exponent must be positive".into()));
        }
        let k = m.div_ceil(j);
        let src = divided_power_dual(field, m).shared();
        let tgt = divided_power_dual(field, k).shared();
        let mat = Mat::from_triplets(
            field,
            k,
            m,
            (0..m)
                .filter(|i| i % j == 0)
                .map(|i| (i / j, i, field.one())),
        )?;
        CoalgebraMorphism::surjection(src, tgt, mat)
    }

    /// The counit as a surjection onto the one-dimensional coalgebra.
    pub fn counit_map<F: Field>(c: CoalgebraRef<F>) -> Result<CoalgebraMorphism<F>> {
        let k = grouplike(c.field(), 1).shared();
        let mat = c.epsilon().clone();
        CoalgebraMorphism::surjection(c, k, mat)
    }

    /// `e_i ↦ e_{i mod m}` between grouplike coalgebras.
    pub fn grouplike_quotient<F: Field>(
        field: F,
        n: usize,
        m: usize,
    ) -> Result<CoalgebraMorphism<F>> {
        if m == 0 || m > n {
            return Err(Error::Invalid(format!(
                "cannot fold {n} grouplikes onto {m}"
            )));
        }
        let mat = Mat::from_triplets(field, m, n, (0..n).map(|i| (i % m, i, field.one())))?;
        CoalgebraMorphism::surjection(
            grouplike(field, n).shared(),
            grouplike(field, m).shared(),
            mat,
        )
    }

    /// `e_{ij} ↦ δ_{ij} e_i` from the comatrix coalgebra onto `grouplike(n)`.
    pub fn matrix_diagonal<F: Field>(field: F, n: usize) -> Result<CoalgebraMorphism<F>> {
        let mat = Mat::from_triplets(field, n, n * n, (0..n).map(|i| (i, i * n + i, field.one())))?;
        CoalgebraMorphism::surjection(
            matrix_coalgebra(field, n).shared(),
            grouplike(field, n).shared(),
            mat,
        )
    }

    /// `id ⊗ ε: C ⊗ D -> C`.
    pub fn tensor_projection<F: Field>(
        c: CoalgebraRef<F>,
        d: &Coalgebra<F>,
    ) -> Result<CoalgebraMorphism<F>> {
        let src = tensor(&c, d).shared();
        let mat = Mat::identity(c.field(), c.dim()).kron(d.epsilon());
        CoalgebraMorphism::surjection(src, c, mat)
    }
}
