//! Finite-dimensional contramodules.
//!
//! `Hom(C, B)` is identified with `C* ⊗ B`; the contra-action `θ` is a
//! `b x (n*b)` matrix whose column `j*b + k` is `θ(e_j* ⊗ b_k)`.
//!
//! Axioms, with `(φ ⋆ ψ)(c) = Σ φ(c1) ψ(c2)`:
//! `θ(e_j* ⊗ θ(e_i* ⊗ x)) = θ((e_i* ⋆ e_j*) ⊗ x)` and `θ(ε ⊗ x) = x`.

use crate::coalgebra::CoalgebraRef;
use crate::comodule::{same_coalgebra, Comodule, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Accumulator, Mat, Quotient, SparseVec, Subspace};
use crate::verdict::{Axiom, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contramodule<F: Field> {
    coalgebra: CoalgebraRef<F>,
    dim: usize,
    theta: Mat<F>,
}

impl<F: Field> Contramodule<F> {
    pub fn new_unchecked(coalgebra: CoalgebraRef<F>, theta: Mat<F>) -> Result<Self> {
        let b = theta.rows();
        let n = coalgebra.dim();
        if theta.cols() != n * b {
            return Err(Error::shape(format!(
                "contra-action of a {b}-dimensional contramodule over a {n}-dimensional coalgebra must be {b}x{}, got {}x{}",
                n * b,
                theta.rows(),
                theta.cols()
            )));
        }
        if theta.field() != coalgebra.field() {
            return Err(Error::FieldMismatch(
                theta.field().spec(),
                coalgebra.field().spec(),
            ));
        }
        Ok(Contramodule {
            coalgebra,
            dim: b,
            theta,
        })
    }

    pub fn new(coalgebra: CoalgebraRef<F>, theta: Mat<F>) -> Result<Self> {
        let b = Self::new_unchecked(coalgebra, theta)?;
        let v = b.check();
        if !v.is_ok() {
            return Err(Error::Invalid(format!("contramodule axioms: {v}")));
        }
        Ok(b)
    }

    pub fn coalgebra(&self) -> &CoalgebraRef<F> {
        &self.coalgebra
    }
    pub fn field(&self) -> F {
        self.coalgebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn theta(&self) -> &Mat<F> {
        &self.theta
    }
    fn n(&self) -> usize {
        self.coalgebra.dim()
    }

    /// Exact check of contra-associativity and contra-unity. Costs
    /// `O(n^2 b)` column evaluations.
    pub fn check(&self) -> Verdict {
        let f = self.field();
        let (n, b) = (self.n(), self.dim);
        let delta_rows = self.coalgebra.delta().row_vectors();
        let mut acc = Accumulator::new(f, b);
        let mut assoc = true;
        'outer: for j in 0..n {
            for i in 0..n {
                for k in 0..b {
                    for (k2, v) in self.theta.column(i * b + k) {
                        acc.add_scaled(v, self.theta.column(j * b + k2));
                    }
                    let lhs = acc.take();
                    for (c, v) in &delta_rows[i * n + j] {
                        acc.add_scaled(v, self.theta.column(c * b + k));
                    }
                    if acc.take() != lhs {
                        assoc = false;
                        break 'outer;
                    }
                }
            }
        }
        let mut v = Verdict::pass();
        v.require(assoc, Axiom::ContraAssociativity);
        let unit = self
            .theta
            .mul(
                &self
                    .coalgebra
                    .epsilon()
                    .transpose()
                    .kron(&Mat::identity(f, b)),
            )
            .map(|m| m.is_identity())
            .unwrap_or(false);
        v.require(unit, Axiom::ContraUnity);
        v
    }

    /// Action matrices `x ↦ θ(e_j* ⊗ x)`, one per dual basis vector.
    pub fn action_matrices(&self) -> Vec<Mat<F>> {
        let b = self.dim;
        (0..self.n())
            .map(|j| {
                self.theta
                    .select_columns(&(j * b..(j + 1) * b).collect::<Vec<_>>())
            })
            .collect()
    }

    /// The same structure read as a right module over the dual algebra
    /// `C*` (product `⋆`): checks `A_j A_i = Σ_c (e_i* ⋆ e_j*)_c A_c` and that
    /// `ε` acts as the identity.
    pub fn check_as_dual_algebra_module(&self) -> bool {
        let f = self.field();
        let alg = self.coalgebra.dual_algebra();
        let acts = self.action_matrices();
        let act = |x: &[(usize, F::Elem)]| -> Mat<F> {
            let mut m = Mat::zeros(f, self.dim, self.dim);
            for (c, v) in x {
                m = m.add(&acts[*c].scale(v)).expect("square");
            }
            m
        };
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let prod = alg.product(&[(i, f.one())], &[(j, f.one())]);
                if acts[j].mul(&acts[i]).expect("square") != act(&prod) {
                    return false;
                }
            }
        }
        act(alg.unit().column(0)).is_identity()
    }

    pub fn zero(coalgebra: CoalgebraRef<F>) -> Self {
        let f = coalgebra.field();
        Contramodule {
            coalgebra,
            dim: 0,
            theta: Mat::zeros(f, 0, 0),
        }
    }

    /// `Hom(C, k^d) ≅ C* ⊗ k^d`, basis index `c*d + t`, with
    /// `θ(e_j* ⊗ (e_i* ⊗ e_t)) = (e_i* ⋆ e_j*) ⊗ e_t`.
    pub fn free(coalgebra: CoalgebraRef<F>, d: usize) -> Self {
        let f = coalgebra.field();
        let n = coalgebra.dim();
        let b = n * d;
        let mut t = Vec::new();
        for (row, c, v) in coalgebra.delta().triplets() {
            let (i, j) = (row / n, row % n);
            for s in 0..d {
                t.push((c * d + s, j * b + i * d + s, v.clone()));
            }
        }
        let theta = Mat::from_triplets(f, b, n * b, t).expect("in range");
        Contramodule {
            coalgebra,
            dim: b,
            theta,
        }
    }

    /// One-dimensional contramodule `θ(e_j* ⊗ 1) = g_j` for a grouplike `g`.
    pub fn trivial(coalgebra: CoalgebraRef<F>) -> Result<Self> {
        let g = coalgebra.trivial_grouplike()?;
        let theta = Mat::from_columns(coalgebra.field(), coalgebra.dim(), vec![g])?.transpose();
        Self::new_unchecked(coalgebra, theta)
    }

    /// The dual-algebra action on a left comodule:
    /// `θ(e_j* ⊗ w) = Σ_{w'} Δ_W[j*m + w', w] w'`.
    pub fn from_comodule(w: &Comodule<F>) -> Result<Self> {
        if w.side() != Side::Left {
            return Err(Error::Side("expected a left comodule".into()));
        }
        let m = w.dim();
        let t = w.coaction().triplets().map(|(row, x, v)| {
            let (j, y) = (row / m, row % m);
            (y, j * m + x, v.clone())
        });
        let theta = Mat::from_triplets(w.field(), m, w.coalgebra().dim() * m, t)?;
        Self::new_unchecked(w.coalgebra().clone(), theta)
    }

    /// `Hom(M, k^d)` for a right comodule `M`, basis index `m*d + t`:
    /// `θ(e_j* ⊗ α)(x) = Σ_{x'} Δ_M[x'*n + j, x] α(x')`.
    pub fn from_dual(m: &Comodule<F>, d: usize) -> Result<Self> {
        if m.side() != Side::Right {
            return Err(Error::Side("expected a right comodule".into()));
        }
        let n = m.coalgebra().dim();
        let b = m.dim() * d;
        let mut t = Vec::new();
        for (row, x, v) in m.coaction().triplets() {
            let (x2, j) = (row / n, row % n);
            for s in 0..d {
                t.push((x * d + s, j * b + x2 * d + s, v.clone()));
            }
        }
        let theta = Mat::from_triplets(m.field(), b, n * b, t)?;
        Self::new_unchecked(m.coalgebra().clone(), theta)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_coalgebra(&self.coalgebra, &other.coalgebra) {
            return Err(Error::CoalgebraMismatch);
        }
        let (n, a, b) = (self.n(), self.dim, other.dim);
        let s = a + b;
        let mut t = Vec::new();
        for (r, c, v) in self.theta.triplets() {
            t.push((r, (c / a) * s + c % a, v.clone()));
        }
        for (r, c, v) in other.theta.triplets() {
            t.push((a + r, (c / b) * s + a + c % b, v.clone()));
        }
        let theta = Mat::from_triplets(self.field(), s, n * s, t)?;
        Self::new_unchecked(self.coalgebra.clone(), theta)
    }

    pub fn mutated(&self, i: usize, j: usize, v: F::Elem) -> Self {
        let mut b = self.clone();
        b.theta = b.theta.with_entry(i, j, v);
        b
    }

    /// `f ∘ θ_B = θ_D ∘ (id ⊗ f)` for `f: self -> other`.
    pub fn is_contra_map(&self, other: &Self, f: &Mat<F>) -> Result<bool> {
        if !same_coalgebra(&self.coalgebra, &other.coalgebra) {
            return Err(Error::CoalgebraMismatch);
        }
        if f.shape() != (other.dim, self.dim) {
            return Err(Error::shape("contra map has the wrong shape"));
        }
        let lhs = f.mul(&self.theta)?;
        let id = Mat::identity(self.field(), self.n());
        let rhs = other.theta.mul(&id.kron(f))?;
        Ok(lhs == rhs)
    }

    /// Smallest subcontramodule containing `vectors`.
    pub fn generated_subcontramodule<'a, I>(&self, vectors: I) -> Subspace<F>
    where
        I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
        F::Elem: 'a,
    {
        let acts = self.action_matrices();
        let mut s = Subspace::span(self.field(), self.dim, vectors);
        loop {
            let mut more: Vec<SparseVec<F::Elem>> = s.basis().to_vec();
            for a in &acts {
                more.extend(s.basis().iter().map(|v| a.apply(v)));
            }
            let next = Subspace::span(self.field(), self.dim, more.iter());
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }

    pub fn is_subcontramodule(&self, s: &Subspace<F>) -> bool {
        self.generated_subcontramodule(s.basis().iter()).dim() == s.dim()
    }

    /// The subcontramodule on `s` with its inclusion.
    pub fn sub(&self, s: &Subspace<F>) -> Result<(Self, Mat<F>)> {
        if !self.is_subcontramodule(s) {
            return Err(Error::Invalid("subspace is not a subcontramodule".into()));
        }
        let f = self.field();
        let (n, k) = (self.n(), s.dim());
        let inc = s.basis_matrix();
        let mut cols = Vec::with_capacity(n * k);
        for j in 0..n {
            for v in s.basis() {
                let img = self.theta.apply(
                    &v.iter()
                        .map(|(i, x)| (j * self.dim + i, x.clone()))
                        .collect::<Vec<_>>(),
                );
                let coords = s.coordinates(&img).expect("stable subspace");
                cols.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !f.is_zero(x))
                        .collect(),
                );
            }
        }
        let theta = Mat::from_columns(f, k, cols)?;
        Ok((Self::new_unchecked(self.coalgebra.clone(), theta)?, inc))
    }

    /// The quotient by a subcontramodule, with the projection.
    pub fn quotient(&self, s: &Subspace<F>) -> Result<(Self, Quotient<F>)> {
        if !self.is_subcontramodule(s) {
            return Err(Error::Invalid("subspace is not a subcontramodule".into()));
        }
        let q = linalg::quotient_by(self.field(), self.dim, s.basis().iter());
        let theta = self.push_through(&q)?;
        Ok((Self::new_unchecked(self.coalgebra.clone(), theta)?, q))
    }

    /// `Q θ (id ⊗ S)` for a quotient whose kernel is stable under `θ`.
    pub(crate) fn push_through(&self, q: &Quotient<F>) -> Result<Mat<F>> {
        let id = Mat::identity(self.field(), self.n());
        q.map.mul(&self.theta.mul(&id.kron(&q.section))?)
    }
}

/// All contra-homomorphisms `B -> D` (coordinate `f[y][x]` at `x * dim D + y`).
pub fn hom_contra<F: Field>(b: &Contramodule<F>, d: &Contramodule<F>) -> Result<Subspace<F>> {
    if !same_coalgebra(&b.coalgebra, &d.coalgebra) {
        return Err(Error::CoalgebraMismatch);
    }
    let f = b.field();
    let (n, bb, dd) = (b.n(), b.dim, d.dim);
    let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); bb * dd];
    // f ∘ θ_B
    for (x, col, v) in b.theta.triplets() {
        for y in 0..dd {
            cols[x * dd + y].push((col * dd + y, v.clone()));
        }
    }
    // - θ_D ∘ (id ⊗ f)
    for k in 0..bb {
        for y in 0..dd {
            for j in 0..n {
                for (r, v) in d.theta.column(j * dd + y) {
                    cols[k * dd + y].push(((j * bb + k) * dd + r, f.neg(v)));
                }
            }
        }
    }
    let constraint = Mat::from_columns(f, n * bb * dd, cols)?;
    Ok(linalg::kernel(&constraint))
}

/// `M ⊙_C B` for a right comodule `M`, as a quotient of `M ⊗ B`.
pub fn contratensor<F: Field>(m: &Comodule<F>, b: &Contramodule<F>) -> Result<Quotient<F>> {
    if m.side() != Side::Right {
        return Err(Error::Side("contratensor needs a right comodule".into()));
    }
    if !same_coalgebra(m.coalgebra(), &b.coalgebra) {
        return Err(Error::CoalgebraMismatch);
    }
    let f = b.field();
    let (n, mm, bb) = (b.n(), m.dim(), b.dim);
    let act = Mat::identity(f, mm).kron(&b.theta);
    // (x, j, y) ↦ Σ_{x'} Δ_M[x'*n + j, x] (x', y)
    let mut t = Vec::new();
    for (row, x, v) in m.coaction().triplets() {
        let (x2, j) = (row / n, row % n);
        for y in 0..bb {
            t.push((x2 * bb + y, (x * n + j) * bb + y, v.clone()));
        }
    }
    let eval = Mat::from_triplets(f, mm * bb, mm * n * bb, t)?;
    linalg::coequalizer(&act, &eval)
}

/// The two parallel maps `Hom(C ⊗ M, B) -> Hom(M, B)` whose coequalizer is
/// `Cohom_C(M, B)`: precomposition with `Δ_M` and postcomposition with `θ_B`.
/// Domain index `(c*m + x)*b + y`, codomain index `x*b + y`.
pub fn cohom_maps<F: Field>(m: &Comodule<F>, b: &Contramodule<F>) -> Result<(Mat<F>, Mat<F>)> {
    if m.side() != Side::Left {
        return Err(Error::Side("Cohom needs a left comodule".into()));
    }
    if !same_coalgebra(m.coalgebra(), &b.coalgebra) {
        return Err(Error::CoalgebraMismatch);
    }
    let f = b.field();
    let (n, mm, bb) = (b.n(), m.dim(), b.dim);
    let mut pre = Vec::new();
    for (row, x, v) in m.coaction().triplets() {
        for y in 0..bb {
            pre.push((x * bb + y, row * bb + y, v.clone()));
        }
    }
    let pre = Mat::from_triplets(f, mm * bb, n * mm * bb, pre)?;
    let mut post = Vec::new();
    for c in 0..n {
        for x in 0..mm {
            for y in 0..bb {
                for (y2, v) in b.theta.column(c * bb + y) {
                    post.push((x * bb + y2, (c * mm + x) * bb + y, v.clone()));
                }
            }
        }
    }
    let post = Mat::from_triplets(f, mm * bb, n * mm * bb, post)?;
    Ok((pre, post))
}

/// `Cohom_C(M, B)` as a quotient of `Hom(M, B)`.
pub fn cohom<F: Field>(m: &Comodule<F>, b: &Contramodule<F>) -> Result<Quotient<F>> {
    let (pre, post) = cohom_maps(m, b)?;
    linalg::coequalizer(&pre, &post)
}

/// Witness that a contramodule is projective: a contra-homomorphism section
/// of `θ_B: free(C, dim B) -> B`.
#[derive(Clone, Debug)]
pub struct ProjectivityWitness<F: Field> {
    pub section: Mat<F>,
}

pub fn is_projective<F: Field>(b: &Contramodule<F>) -> Result<Option<ProjectivityWitness<F>>> {
    let f = b.field();
    let free = Contramodule::free(b.coalgebra.clone(), b.dim);
    let homs = hom_contra(b, &free)?;
    let (bb, fd) = (b.dim, free.dim);
    let mut cols = Vec::with_capacity(homs.dim());
    for h in homs.basis() {
        let hm = Mat::from_hom_vector(f, fd, bb, h);
        cols.push(b.theta.mul(&hm)?.to_hom_vector());
    }
    let sys = Mat::from_columns(f, bb * bb, cols)?;
    let target = Mat::from_columns(f, bb * bb, vec![Mat::identity(f, bb).to_hom_vector()])?;
    let Some(t) = linalg::solve(&sys, &target)? else {
        return Ok(None);
    };
    let coords: Vec<F::Elem> = (0..homs.dim()).map(|i| t.get(i, 0)).collect();
    let s = Mat::from_hom_vector(f, fd, bb, &homs.combine(&coords));
    Ok(Some(ProjectivityWitness { section: s }))
}

/// Outcome of comparing `Cohom_C(V, W)` with `Hom_C(W, V)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DualityReport {
    pub cohom_dim: usize,
    pub hom_dim: usize,
    pub pairing_rank: usize,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.cohom_dim == self.hom_dim && self.pairing_rank == self.hom_dim
    }
}

/// Computes `Cohom_C(V, W)` (with `W` turned into a contramodule) and
/// `Hom_C(W, V)` independently, then the rank of the trace pairing
/// `⟨h, x⟩ = tr(h ∘ x)` between them.
pub fn duality_check<F: Field>(v: &Comodule<F>, w: &Comodule<F>) -> Result<DualityReport> {
    let f = v.field();
    let q = cohom(v, &Contramodule::from_comodule(w)?)?;
    let homs = crate::comodule::hom_comodules(w, v)?;
    let (dv, dw) = (v.dim(), w.dim());
    let reps = q.section.columns();
    let mut rows = Vec::with_capacity(homs.dim());
    for h in homs.basis() {
        let mut row = Vec::new();
        for (t, x) in reps.iter().enumerate() {
            let mut s = f.zero();
            for (idx, xv) in x {
                let (vi, wi) = (idx / dw, idx % dw);
                let hv = h
                    .binary_search_by_key(&(wi * dv + vi), |e| e.0)
                    .map(|k| h[k].1.clone())
                    .unwrap_or_else(|_| f.zero());
                f.mul_add_assign(&mut s, &hv, xv);
            }
            if !f.is_zero(&s) {
                row.push((t, s));
            }
        }
        rows.push(row);
    }
    let pairing = Mat::from_columns(f, q.dim(), rows)?;
    Ok(DualityReport {
        cohom_dim: q.dim(),
        hom_dim: homs.dim(),
        pairing_rank: pairing.rank(),
    })
}

/// Induced map `Cohom(M'', B) -> Cohom(M, B)` for a comodule surjection
/// `p: M -> M''`, in the bases given by the two quotient sections.
pub fn cohom_pullback<F: Field>(
    p: &Mat<F>,
    target: &Quotient<F>,
    source: &Quotient<F>,
    dim_b: usize,
) -> Result<Mat<F>> {
    // x ∈ Hom(M'', B) ↦ x ∘ p ∈ Hom(M, B): kron(p^T, I_B) in hom-vector layout.
    let pre = p.transpose().kron(&Mat::identity(p.field(), dim_b));
    target.map.mul(&pre.mul(&source.section)?)
}

/// Samples short exact sequences `0 -> V' -> C -> C/V' -> 0` of left
/// comodules and reports whether `Cohom(C/V', B) -> Cohom(C, B)` stays
/// injective for all of them. Each `generators` entry spans one `V'`.
pub fn cohom_exact_on<F: Field>(
    b: &Contramodule<F>,
    generators: &[Vec<SparseVec<F::Elem>>],
) -> Result<bool> {
    let c = Comodule::regular(b.coalgebra.clone(), Side::Left);
    let whole = cohom(&c, b)?;
    for gens in generators {
        let sub = c.generated_subcomodule(gens.iter());
        let (quo, p) = c.quotient(&sub)?;
        let qq = cohom(&quo, b)?;
        let induced = cohom_pullback(&p.map, &whole, &qq, b.dim)?;
        if induced.rank() != qq.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}
