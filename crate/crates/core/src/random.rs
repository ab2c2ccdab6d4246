//! Seeded generators for randomized probes and tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::catalog;
use crate::coalgebra::{Coalgebra, CoalgebraMorphism, CoalgebraRef};
use crate::comodule::{Comodule, Side};
use crate::contramodule::Contramodule;
use crate::error::Result;
use crate::field::Field;
use crate::functors::ShortExactSequence;
use crate::linalg::{self, Mat, SparseVec, Subspace};
use crate::towers::InverseSystem;

pub const DEFAULT_SEED: u64 = 0x5eed_c0a1;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector<F: Field, R: Rng>(field: F, n: usize, rng: &mut R) -> SparseVec<F::Elem> {
    (0..n)
        .map(|i| (i, field.random(rng)))
        .filter(|(_, v)| !field.is_zero(v))
        .collect()
}

pub fn random_matrix<F: Field, R: Rng>(field: F, rows: usize, cols: usize, rng: &mut R) -> Mat<F> {
    let cols = (0..cols).map(|_| random_vector(field, rows, rng)).collect();
    Mat::from_columns(field, rows, cols).expect("in range")
}

/// A random `rows x cols` matrix of rank at most `rank`.
pub fn random_low_rank<F: Field, R: Rng>(
    field: F,
    rows: usize,
    cols: usize,
    rank: usize,
    rng: &mut R,
) -> Mat<F> {
    let a = random_matrix(field, rows, rank, rng);
    let b = random_matrix(field, rank, cols, rng);
    a.mul(&b).expect("compatible")
}

/// A random invertible matrix and its inverse.
pub fn random_invertible<F: Field, R: Rng>(field: F, n: usize, rng: &mut R) -> (Mat<F>, Mat<F>) {
    loop {
        let p = random_matrix(field, n, n, rng);
        if p.rank() == n {
            let inv = linalg::solve(&p, &Mat::identity(field, n))
                .expect("square")
                .expect("invertible");
            return (p, inv);
        }
    }
}

/// The same comodule on the basis given by the columns of `p^{-1}`.
pub fn conjugate_comodule<F: Field>(
    m: &Comodule<F>,
    p: &Mat<F>,
    p_inv: &Mat<F>,
) -> Result<Comodule<F>> {
    let id = Mat::identity(m.field(), m.coalgebra().dim());
    let lift = match m.side() {
        Side::Left => id.kron(p),
        Side::Right => p.kron(&id),
    };
    let coaction = lift.mul(m.coaction())?.mul(p_inv)?;
    Comodule::new_unchecked(m.coalgebra().clone(), m.side(), coaction)
}

pub fn conjugate_contramodule<F: Field>(
    b: &Contramodule<F>,
    p: &Mat<F>,
    p_inv: &Mat<F>,
) -> Result<Contramodule<F>> {
    let id = Mat::identity(b.field(), b.coalgebra().dim());
    let theta = p.mul(b.theta())?.mul(&id.kron(p_inv))?;
    Contramodule::new_unchecked(b.coalgebra().clone(), theta)
}

/// A small coalgebra from the catalog.
pub fn random_coalgebra<F: Field, R: Rng>(field: F, rng: &mut R) -> Coalgebra<F> {
    match rng.gen_range(0..5) {
        0 => catalog::grouplike(field, rng.gen_range(1..=3)),
        1 => catalog::divided_power_dual(field, rng.gen_range(1..=4)),
        2 => catalog::matrix_coalgebra(field, 2),
        3 => catalog::direct_sum(
            &catalog::grouplike(field, 1),
            &catalog::divided_power_dual(field, 2),
        ),
        _ => catalog::tensor(
            &catalog::grouplike(field, 2),
            &catalog::divided_power_dual(field, 2),
        ),
    }
}

/// A surjection between small catalog coalgebras.
pub fn random_surjection<F: Field, R: Rng>(field: F, rng: &mut R) -> CoalgebraMorphism<F> {
    let rho = match rng.gen_range(0..6) {
        0 => Ok(CoalgebraMorphism::identity(
            random_coalgebra(field, rng).shared(),
        )),
        1 => {
            let n = rng.gen_range(1..=4);
            catalog::grouplike_quotient(field, n, rng.gen_range(1..=n))
        }
        2 => catalog::divided_power_frobenius(field, rng.gen_range(1..=4), rng.gen_range(1..=2)),
        3 => catalog::matrix_diagonal(field, 2),
        4 => catalog::counit_map(random_coalgebra(field, rng).shared()),
        _ => catalog::tensor_projection(
            catalog::grouplike(field, 2).shared(),
            &catalog::divided_power_dual(field, 2),
        ),
    };
    rho.expect("catalog maps are surjections")
}

fn random_subspace_vectors<F: Field, R: Rng>(
    field: F,
    n: usize,
    rng: &mut R,
) -> Vec<SparseVec<F::Elem>> {
    let k = rng.gen_range(1..=2);
    (0..k).map(|_| random_vector(field, n, rng)).collect()
}

/// A random comodule of dimension `1..=max_dim` (when one is found), built
/// from sub- and quotient comodules of cofree ones, direct sums and a random
/// change of basis.
pub fn random_comodule<F: Field, R: Rng>(
    c: &CoalgebraRef<F>,
    side: Side,
    max_dim: usize,
    rng: &mut R,
) -> Comodule<F> {
    let mut m = match comodule_piece(c, side, max_dim, rng) {
        Some(m) => m,
        None => return Comodule::zero(c.clone(), side),
    };
    if rng.gen_bool(0.3) {
        if let Some(other) = comodule_piece(c, side, max_dim, rng) {
            if m.dim() + other.dim() <= max_dim {
                m = m.direct_sum(&other).expect("same coalgebra");
            }
        }
    }
    let (p, p_inv) = random_invertible(c.field(), m.dim(), rng);
    conjugate_comodule(&m, &p, &p_inv).expect("shapes")
}

fn comodule_piece<F: Field, R: Rng>(
    c: &CoalgebraRef<F>,
    side: Side,
    max_dim: usize,
    rng: &mut R,
) -> Option<Comodule<F>> {
    let field = c.field();
    for _ in 0..32 {
        let copies = rng.gen_range(1..=2);
        let base = Comodule::cofree(c.clone(), side, copies);
        let gens = random_subspace_vectors(field, base.dim(), rng);
        let s = base.generated_subcomodule(gens.iter());
        let m = if rng.gen_bool(0.5) {
            base.sub(&s).expect("subcomodule").0
        } else {
            base.quotient(&s).expect("subcomodule").0
        };
        if (1..=max_dim).contains(&m.dim()) {
            return Some(m);
        }
    }
    None
}

/// A random contramodule of dimension `1..=max_dim` (when one is found).
pub fn random_contramodule<F: Field, R: Rng>(
    c: &CoalgebraRef<F>,
    max_dim: usize,
    rng: &mut R,
) -> Contramodule<F> {
    let mut b = match contramodule_piece(c, max_dim, rng) {
        Some(b) => b,
        None => return Contramodule::zero(c.clone()),
    };
    if rng.gen_bool(0.3) {
        if let Some(other) = contramodule_piece(c, max_dim, rng) {
            if b.dim() + other.dim() <= max_dim {
                b = b.direct_sum(&other).expect("same coalgebra");
            }
        }
    }
    let (p, p_inv) = random_invertible(c.field(), b.dim(), rng);
    conjugate_contramodule(&b, &p, &p_inv).expect("shapes")
}

fn contramodule_piece<F: Field, R: Rng>(
    c: &CoalgebraRef<F>,
    max_dim: usize,
    rng: &mut R,
) -> Option<Contramodule<F>> {
    let field = c.field();
    for _ in 0..32 {
        let b = match rng.gen_range(0..3) {
            0 => {
                let base = Contramodule::free(c.clone(), rng.gen_range(1..=2));
                let gens = random_subspace_vectors(field, base.dim(), rng);
                let s = base.generated_subcontramodule(gens.iter());
                if rng.gen_bool(0.5) {
                    base.sub(&s).expect("subcontramodule").0
                } else {
                    base.quotient(&s).expect("subcontramodule").0
                }
            }
            1 => Contramodule::from_comodule(&random_comodule(c, Side::Left, max_dim, rng))
                .expect("left"),
            _ => Contramodule::from_dual(&random_comodule(c, Side::Right, max_dim, rng), 1)
                .expect("right"),
        };
        if (1..=max_dim).contains(&b.dim()) {
            return Some(b);
        }
    }
    None
}

/// `0 -> A -> B -> B/A -> 0` for a random subcontramodule `A`.
pub fn random_ses<F: Field, R: Rng>(mid: &Contramodule<F>, rng: &mut R) -> ShortExactSequence<F> {
    let gens = random_subspace_vectors(mid.field(), mid.dim(), rng);
    let s = mid.generated_subcontramodule(gens.iter());
    ShortExactSequence::from_sub(mid, &s).expect("subcontramodule")
}

/// Random subspaces of `C` used as generators in exactness sampling.
pub fn random_generator_sets<F: Field, R: Rng>(
    field: F,
    n: usize,
    count: usize,
    rng: &mut R,
) -> Vec<Vec<SparseVec<F::Elem>>> {
    (0..count)
        .map(|_| random_subspace_vectors(field, n, rng))
        .collect()
}

/// A random inverse system with stage dimensions in `0..=max_dim` and
/// transitions of random rank.
pub fn random_inverse_system<F: Field, R: Rng>(
    field: F,
    stages: usize,
    max_dim: usize,
    rng: &mut R,
) -> InverseSystem<F> {
    let dims: Vec<usize> = (0..stages.max(1))
        .map(|_| rng.gen_range(0..=max_dim))
        .collect();
    let transitions = (0..dims.len() - 1)
        .map(|k| {
            let cap = dims[k].min(dims[k + 1]);
            let rank = *[0, cap / 2, cap.saturating_sub(1), cap]
                .choose(rng)
                .expect("nonempty");
            random_low_rank(field, dims[k], dims[k + 1], rank, rng)
        })
        .collect();
    InverseSystem::new(field, 0, dims, transitions).expect("consistent shapes")
}

/// A random subspace of `F^n`.
pub fn random_subspace<F: Field, R: Rng>(field: F, n: usize, rng: &mut R) -> Subspace<F> {
    let k = rng.gen_range(0..=n);
    let vs: Vec<_> = (0..k).map(|_| random_vector(field, n, rng)).collect();
    Subspace::span(field, n, vs.iter())
}
