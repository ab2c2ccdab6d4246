#![allow(dead_code)]

use contra_core::coalgebra::catalog::*;
use contra_core::coalgebra::{Coalgebra, CoalgebraRef, FiniteAlgebra};
use contra_core::comodule::{Comodule, Side};
use contra_core::contramodule::Contramodule;
use contra_core::field::{Field, PrimeField};
use contra_core::linalg::Mat;
use contra_core::sl2::FrobeniusKernel;

pub mod f2;
pub mod oracle;

pub fn catalog_coalgebras<F: Field>(f: F) -> Vec<(String, Coalgebra<F>)> {
    let mut out = vec![
        ("grouplike(1)".to_string(), grouplike(f, 1)),
        ("grouplike(3)".to_string(), grouplike(f, 3)),
        ("matrix(2)".to_string(), matrix_coalgebra(f, 2)),
        ("divided_power(2)".to_string(), divided_power_dual(f, 2)),
        ("divided_power(4)".to_string(), divided_power_dual(f, 4)),
        (
            "grouplike(1)+divided_power(2)".to_string(),
            direct_sum(&grouplike(f, 1), &divided_power_dual(f, 2)),
        ),
        (
            "grouplike(2)*divided_power(2)".to_string(),
            tensor(&grouplike(f, 2), &divided_power_dual(f, 2)),
        ),
        (
            "dual(k[t]/t^3)".to_string(),
            dual_of_algebra(&FiniteAlgebra::truncated_polynomial(f, 3)).unwrap(),
        ),
        (
            "k[Z/3]".to_string(),
            cyclic_group_bialgebra(f, 3).coalgebra().as_ref().clone(),
        ),
    ];
    out.retain(|(_, c)| c.dim() <= 16);
    out
}

pub fn frobenius_kernel(r: u32) -> Coalgebra<PrimeField> {
    FrobeniusKernel::new(PrimeField::new(2).unwrap(), r)
        .unwrap()
        .coalgebra()
}

pub fn catalog_comodules<F: Field>(c: &CoalgebraRef<F>, side: Side) -> Vec<(String, Comodule<F>)> {
    let mut out = vec![
        ("regular".to_string(), Comodule::regular(c.clone(), side)),
        ("cofree(2)".to_string(), Comodule::cofree(c.clone(), side, 2)),
        (
            "dual of regular".to_string(),
            Comodule::regular(c.clone(), side.opposite()).dual(),
        ),
    ];
    if let Ok(t) = Comodule::trivial(c.clone(), side) {
        out.push(("trivial".to_string(), t));
    }
    out
}

pub fn catalog_contramodules<F: Field>(c: &CoalgebraRef<F>) -> Vec<(String, Contramodule<F>)> {
    let mut out = vec![
        ("free(1)".to_string(), Contramodule::free(c.clone(), 1)),
        ("free(2)".to_string(), Contramodule::free(c.clone(), 2)),
        (
            "from regular".to_string(),
            Contramodule::from_comodule(&Comodule::regular(c.clone(), Side::Left)).unwrap(),
        ),
    ];
    if let Ok(t) = Contramodule::trivial(c.clone()) {
        out.push(("trivial".to_string(), t));
    }
    out
}

/// `old + delta` for a random nonzero `delta`.
pub fn bump<F: Field, R: rand::Rng>(f: F, m: &Mat<F>, i: usize, j: usize, rng: &mut R) -> F::Elem {
    f.add(&m.get(i, j), &f.random_nonzero(rng))
}
