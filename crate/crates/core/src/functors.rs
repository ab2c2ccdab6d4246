//! Restriction and induction of contramodules along a surjective coalgebra
//! map `ρ: C -> D`, the adjunction isomorphism, and exactness probes.

use serde::Serialize;

use crate::coalgebra::CoalgebraMorphism;
use crate::comodule::{same_coalgebra, Comodule, Side};
use crate::contramodule::{cohom_maps, hom_contra, Contramodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Mat, Quotient};

fn require_surjection<F: Field>(rho: &CoalgebraMorphism<F>) -> Result<()> {
    if !rho.surjective || rho.matrix.rank() != rho.target.dim() {
        return Err(Error::NotSurjective);
    }
    Ok(())
}

/// `V|_D` with `θ = θ_V ∘ (ρ* ⊗ id)`.
pub fn restrict<F: Field>(
    rho: &CoalgebraMorphism<F>,
    v: &Contramodule<F>,
) -> Result<Contramodule<F>> {
    require_surjection(rho)?;
    if !same_coalgebra(&rho.source, v.coalgebra()) {
        return Err(Error::CoalgebraMismatch);
    }
    let theta = v.theta().mul(
        &rho.matrix
            .transpose()
            .kron(&Mat::identity(v.field(), v.dim())),
    )?;
    Contramodule::new_unchecked(rho.target.clone(), theta)
}

/// `C` as a `D`-comodule with coaction `(ρ ⊗ id) Δ` (or `(id ⊗ ρ) Δ`).
pub fn comodule_along<F: Field>(rho: &CoalgebraMorphism<F>, side: Side) -> Result<Comodule<F>> {
    require_surjection(rho)?;
    Comodule::regular(rho.source.clone(), side).corestrict(rho)
}

/// The two maps `Hom(D ⊗ C, W) -> Hom(C, W)` whose coequalizer is the
/// induced contramodule: precomposition with `(ρ ⊗ id) Δ` and
/// postcomposition with `θ_W`.
pub fn build_f_g<F: Field>(
    rho: &CoalgebraMorphism<F>,
    w: &Contramodule<F>,
) -> Result<(Mat<F>, Mat<F>)> {
    if !same_coalgebra(&rho.target, w.coalgebra()) {
        return Err(Error::CoalgebraMismatch);
    }
    cohom_maps(&comodule_along(rho, Side::Left)?, w)
}

#[derive(Clone, Debug)]
pub struct InductionResult<F: Field> {
    pub induced: Contramodule<F>,
    /// Quotient of `Hom(C, W) = free(C, dim W)` onto the induced object.
    pub presentation: Quotient<F>,
    pub f_minus_g: Mat<F>,
}

impl<F: Field> InductionResult<F> {
    pub fn dim(&self) -> usize {
        self.induced.dim()
    }
}

/// `Ind_D^C W = Hom(C, W) / Im(f - g)` with the structure inherited from the
/// free contramodule `Hom(C, W)`.
pub fn induce<F: Field>(
    rho: &CoalgebraMorphism<F>,
    w: &Contramodule<F>,
) -> Result<InductionResult<F>> {
    require_surjection(rho)?;
    let (f, g) = build_f_g(rho, w)?;
    let f_minus_g = f.sub(&g)?;
    let q = linalg::cokernel(&f_minus_g);
    let free = Contramodule::free(rho.source.clone(), w.dim());
    let rel = linalg::image(&f_minus_g);
    for a in free.action_matrices() {
        for v in rel.basis() {
            if !q.map.apply(&a.apply(v)).is_empty() {
                return Err(Error::Inconsistent(
                    "free structure does not descend to the induced quotient".into(),
                ));
            }
        }
    }
    let theta = free.push_through(&q)?;
    let induced = Contramodule::new_unchecked(rho.source.clone(), theta)?;
    Ok(InductionResult {
        induced,
        presentation: q,
        f_minus_g,
    })
}

/// `Ind(φ)` for a contra map `φ: A -> B` over `D`.
pub fn induce_map<F: Field>(
    rho: &CoalgebraMorphism<F>,
    a: &InductionResult<F>,
    b: &InductionResult<F>,
    phi: &Mat<F>,
) -> Result<Mat<F>> {
    let id = Mat::identity(phi.field(), rho.source.dim());
    b.presentation
        .map
        .mul(&id.kron(phi).mul(&a.presentation.section)?)
}

/// `Γ(φ)(w) = φ[α ↦ ε(α) w]` for `φ: Ind W -> V`.
pub fn gamma<F: Field>(
    rho: &CoalgebraMorphism<F>,
    ind: &InductionResult<F>,
    phi: &Mat<F>,
) -> Result<Mat<F>> {
    let f = phi.field();
    let w_dim = ind.presentation.ambient() / rho.source.dim();
    let unit = rho
        .source
        .epsilon()
        .transpose()
        .kron(&Mat::identity(f, w_dim));
    phi.mul(&ind.presentation.map.mul(&unit)?)
}

/// `Γ⁻¹(ψ) = θ_V ∘ Hom(C, ψ)` descended to `Ind W`, for `ψ: W -> V|_D`.
pub fn gamma_inv<F: Field>(
    ind: &InductionResult<F>,
    v: &Contramodule<F>,
    psi: &Mat<F>,
) -> Result<Mat<F>> {
    let f = psi.field();
    let lifted = v
        .theta()
        .mul(&Mat::identity(f, v.coalgebra().dim()).kron(psi))?;
    if !lifted.mul(&ind.f_minus_g)?.is_zero() {
        return Err(Error::Inconsistent(
            "Γ⁻¹(ψ) does not vanish on the relations".into(),
        ));
    }
    lifted.mul(&ind.presentation.section)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// `Γ(φ)` is a contra map over `D` for every basis `φ`.
    pub gamma_lands: bool,
    /// `Γ⁻¹(ψ)` is a contra map over `C` for every basis `ψ`.
    pub gamma_inv_lands: bool,
    /// `Γ ∘ Γ⁻¹ = id` on a basis of `Hom^D(W, V|_D)`.
    pub gamma_gamma_inv: bool,
    /// `Γ⁻¹ ∘ Γ = id` on a basis of `Hom^C(Ind W, V)`.
    pub gamma_inv_gamma: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.lhs_dim == self.rhs_dim
            && self.gamma_lands
            && self.gamma_inv_lands
            && self.gamma_gamma_inv
            && self.gamma_inv_gamma
    }
}

/// Compares `Hom^C(Ind W, V)` with `Hom^D(W, V|_D)` through `Γ` and `Γ⁻¹`.
pub fn adjunction_check<F: Field>(
    rho: &CoalgebraMorphism<F>,
    w: &Contramodule<F>,
    v: &Contramodule<F>,
) -> Result<AdjunctionReport> {
    let f = v.field();
    let ind = induce(rho, w)?;
    let res = restrict(rho, v)?;
    let lhs = hom_contra(&ind.induced, v)?;
    let rhs = hom_contra(w, &res)?;
    let mut rep = AdjunctionReport {
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        gamma_lands: true,
        gamma_inv_lands: true,
        gamma_gamma_inv: true,
        gamma_inv_gamma: true,
    };
    for h in lhs.basis() {
        let phi = Mat::from_hom_vector(f, v.dim(), ind.dim(), h);
        let psi = gamma(rho, &ind, &phi)?;
        rep.gamma_lands &= w.is_contra_map(&res, &psi)?;
        rep.gamma_inv_gamma &= gamma_inv(&ind, v, &psi)? == phi;
    }
    for h in rhs.basis() {
        let psi = Mat::from_hom_vector(f, v.dim(), w.dim(), h);
        let phi = gamma_inv(&ind, v, &psi)?;
        rep.gamma_inv_lands &= ind.induced.is_contra_map(v, &phi)?;
        rep.gamma_gamma_inv &= gamma(rho, &ind, &phi)? == psi;
    }
    Ok(rep)
}

/// `0 -> A -> B -> C -> 0` of contramodules.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<F: Field> {
    pub sub: Contramodule<F>,
    pub mid: Contramodule<F>,
    pub quo: Contramodule<F>,
    pub inc: Mat<F>,
    pub proj: Mat<F>,
}

impl<F: Field> ShortExactSequence<F> {
    /// Builds the sequence of a subcontramodule and its quotient.
    pub fn from_sub(mid: &Contramodule<F>, sub: &linalg::Subspace<F>) -> Result<Self> {
        let (a, inc) = mid.sub(sub)?;
        let (c, q) = mid.quotient(sub)?;
        Ok(ShortExactSequence {
            sub: a,
            mid: mid.clone(),
            quo: c,
            inc,
            proj: q.map,
        })
    }

    /// Contra maps, injective, surjective and exact in the middle.
    pub fn verify(&self) -> Result<bool> {
        let ok = self.sub.is_contra_map(&self.mid, &self.inc)?
            && self.mid.is_contra_map(&self.quo, &self.proj)?
            && self.inc.rank() == self.sub.dim()
            && self.proj.rank() == self.quo.dim()
            && self.proj.mul(&self.inc)?.is_zero()
            && self.sub.dim() + self.quo.dim() == self.mid.dim();
        Ok(ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Left,
    Middle,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "verdict")]
pub enum Exactness {
    Exact,
    Fails {
        position: Position,
        dims: [usize; 3],
    },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// Exactness of `0 -> A -> B -> C -> 0` given the two maps.
pub fn sequence_exactness<F: Field>(alpha: &Mat<F>, beta: &Mat<F>) -> Result<Exactness> {
    let dims = [alpha.cols(), alpha.rows(), beta.rows()];
    let (ra, rb) = (alpha.rank(), beta.rank());
    let position = if ra != dims[0] {
        Some(Position::Left)
    } else if !beta.mul(alpha)?.is_zero() || ra + rb != dims[1] {
        Some(Position::Middle)
    } else if rb != dims[2] {
        Some(Position::Right)
    } else {
        None
    };
    Ok(match position {
        Some(position) => Exactness::Fails { position, dims },
        None => Exactness::Exact,
    })
}

/// Applies induction to a short exact sequence over `D` and checks the image.
pub fn exactness_probe<F: Field>(
    rho: &CoalgebraMorphism<F>,
    ses: &ShortExactSequence<F>,
) -> Result<Exactness> {
    if !ses.verify()? {
        return Err(Error::Invalid(
            "input sequence is not a short exact sequence".into(),
        ));
    }
    let (ia, ib, ic) = (
        induce(rho, &ses.sub)?,
        induce(rho, &ses.mid)?,
        induce(rho, &ses.quo)?,
    );
    let alpha = induce_map(rho, &ia, &ib, &ses.inc)?;
    let beta = induce_map(rho, &ib, &ic, &ses.proj)?;
    sequence_exactness(&alpha, &beta)
}
