use contra_core::coalgebra::catalog::*;
use contra_core::coalgebra::CoalgebraMorphism;
use contra_core::comodule::{cotensor, Comodule, Side};
use contra_core::contramodule::{cohom, hom_contra, Contramodule};
use contra_core::field::{Field, PrimeField, Rationals};
use contra_core::functors::*;
use contra_core::linalg::{Mat, Subspace};
use contra_core::random::*;
use rand::Rng;

#[test]
fn cotensor_with_the_regular_comodule_recovers_n() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = seeded(21);
    for _ in 0..10 {
        let c = random_coalgebra(f, &mut rng).shared();
        let n = random_comodule(&c, Side::Left, 4, &mut rng);
        let r = Comodule::regular(c.clone(), Side::Right);
        let sub = cotensor(&r, &n).unwrap();
        assert_eq!(sub.dim(), n.dim());
        // ε ⊗ id is an isomorphism from C □ N onto N.
        let counit = c.epsilon().kron(&Mat::identity(f, n.dim()));
        assert_eq!(counit.mul(&sub.basis_matrix()).unwrap().rank(), n.dim());

        let m = random_comodule(&c, Side::Right, 4, &mut rng);
        let l = Comodule::regular(c.clone(), Side::Left);
        assert_eq!(cotensor(&m, &l).unwrap().dim(), m.dim());
    }
}

#[test]
fn cohom_from_the_regular_comodule_recovers_b() {
    let q = Rationals;
    let mut rng = seeded(22);
    for _ in 0..10 {
        let c = random_coalgebra(q, &mut rng).shared();
        let b = random_contramodule(&c, 4, &mut rng);
        assert_eq!(cohom(&Comodule::regular(c.clone(), Side::Left), &b).unwrap().dim(), b.dim());
        assert_eq!(cohom(&Comodule::zero(c.clone(), Side::Left), &b).unwrap().dim(), 0);
    }
}

#[test]
fn induction_along_the_identity() {
    let f = PrimeField::new(2).unwrap();
    let mut rng = seeded(23);
    for _ in 0..10 {
        let c = random_coalgebra(f, &mut rng).shared();
        let id = CoalgebraMorphism::identity(c.clone());
        let w = random_contramodule(&c, 4, &mut rng);
        let ind = induce(&id, &w).unwrap();
        assert_eq!(ind.dim(), w.dim());
        assert_eq!(restrict(&id, &w).unwrap(), w);
        // Γ(φ) for the isomorphism Ind W -> W is the identity of W.
        let phi = ind.presentation.map.mul(&ind.presentation.section).unwrap();
        assert!(phi.is_identity());
        let iso = gamma_inv(&ind, &w, &Mat::identity(f, w.dim())).unwrap();
        assert!(gamma(&id, &ind, &iso).unwrap().is_identity());
        assert_eq!(iso.rank(), w.dim());
        let ses = random_ses(&w, &mut rng);
        assert!(exactness_probe(&id, &ses).unwrap().is_exact());
    }
}

#[test]
fn induction_of_free_contramodules_is_free() {
    let q = Rationals;
    let mut rng = seeded(24);
    for _ in 0..10 {
        let rho = random_surjection(q, &mut rng);
        let d = rng.gen_range(1..=2);
        let ind = induce(&rho, &Contramodule::free(rho.target.clone(), d)).unwrap();
        assert_eq!(ind.dim(), rho.source.dim() * d);
        assert!(ind.induced.check().is_ok());
    }
}

#[test]
fn frobenius_surjection_fixture() {
    let q = Rationals;
    let rho = divided_power_frobenius(q, 3, 2).unwrap();
    assert!(rho.check().is_ok());
    let free = Contramodule::free(rho.source.clone(), 1);
    let res = restrict(&rho, &free).unwrap();
    assert!(res.check().is_ok());
    assert_eq!(res.dim(), 3);
    let w = Contramodule::free(rho.target.clone(), 1);
    let ind = induce(&rho, &w).unwrap();
    assert_eq!((w.dim(), ind.dim()), (2, 3));
    let triv = Contramodule::trivial(rho.target.clone()).unwrap();
    assert_eq!(induce(&rho, &triv).unwrap().dim(), 2);
    let (f, g) = build_f_g(&rho, &w).unwrap();
    assert_eq!(f.shape(), (3 * 2, 2 * 3 * 2));
    assert_eq!(g.shape(), f.shape());
}

#[test]
fn projection_killing_the_top_is_not_a_coalgebra_map() {
    let q = Rationals;
    let c3 = divided_power_dual(q, 3).shared();
    let d2 = divided_power_dual(q, 2).shared();
    let p = Mat::from_i64(q, &[&[1, 0, 0], &[0, 1, 0]]);
    let rho = CoalgebraMorphism::new_unchecked(c3, d2, p, true).unwrap();
    assert!(!rho.check().is_ok());
}

#[test]
fn restriction_to_a_point_is_the_underlying_space() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = seeded(25);
    let c = random_coalgebra(f, &mut rng).shared();
    let eps = counit_map(c.clone()).unwrap();
    let b = random_contramodule(&c, 4, &mut rng);
    let r = restrict(&eps, &b).unwrap();
    assert!(r.theta().is_identity());
    let along = comodule_along(&eps, Side::Left).unwrap();
    assert!(along.check().is_ok());
    assert_eq!(along.dim(), c.dim());
}

#[test]
fn gamma_is_natural_in_v() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = seeded(26);
    let mut squares = 0;
    for _ in 0..20 {
        let rho = random_surjection(f, &mut rng);
        let w = random_contramodule(&rho.target, 3, &mut rng);
        let v = random_contramodule(&rho.source, 3, &mut rng);
        let v2 = random_contramodule(&rho.source, 3, &mut rng);
        let ind = induce(&rho, &w).unwrap();
        let maps = hom_contra(&v, &v2).unwrap();
        let phis = hom_contra(&ind.induced, &v).unwrap();
        for (h, p) in maps.basis().iter().zip(phis.basis()) {
            let t = Mat::from_hom_vector(f, v2.dim(), v.dim(), h);
            let phi = Mat::from_hom_vector(f, v.dim(), ind.dim(), p);
            let lhs = gamma(&rho, &ind, &t.mul(&phi).unwrap()).unwrap();
            let rhs = t.mul(&gamma(&rho, &ind, &phi).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            squares += 1;
        }
    }
    assert!(squares > 0);
}

#[test]
fn exactness_over_grouplike_targets() {
    let f = PrimeField::new(2).unwrap();
    let mut rng = seeded(27);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let rho = grouplike_quotient(f, n + 1, n).unwrap();
        let mid = random_contramodule(&rho.target, 4, &mut rng);
        let ses = random_ses(&mid, &mut rng);
        assert!(exactness_probe(&rho, &ses).unwrap().is_exact());
    }
}

#[test]
fn sequence_exactness_positions() {
    let q = Rationals;
    let inc = Mat::from_i64(q, &[&[1], &[0]]);
    let proj = Mat::from_i64(q, &[&[0, 1]]);
    assert!(sequence_exactness(&inc, &proj).unwrap().is_exact());
    let zero = Mat::zeros(q, 2, 1);
    assert!(matches!(
        sequence_exactness(&zero, &proj).unwrap(),
        Exactness::Fails { position: Position::Left, .. }
    ));
    let sub = Subspace::span(q, 2, [vec![(0, q.one())]].iter());
    let mid = Contramodule::free(grouplike(q, 2).shared(), 1);
    assert!(ShortExactSequence::from_sub(&mid, &sub).unwrap().verify().unwrap());
}
