use contra_core::comodule::{Comodule, Side};
use contra_core::contramodule::{is_projective, Contramodule};
use contra_core::field::{Field, PrimeField, Rationals};
use contra_core::linalg::{self, Mat};
use contra_core::random::*;
use contra_core::sl2::{f_multiplicity, Catalog, Character, SL2Poly};
use proptest::prelude::*;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn small_matrix<F: Field>(f: F) -> impl Strategy<Value = Mat<F>> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-2i64..3, r * c).prop_map(move |v| {
            let rows: Vec<Vec<F::Elem>> = v.chunks(c).map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect();
            Mat::from_dense(f, &rows).unwrap()
        })
    })
}

fn poly(f: PrimeField, terms: &[(u64, u32, u32, u32, u32)]) -> SL2Poly {
    let (a, b, c, d) = (SL2Poly::a(f), SL2Poly::b(f), SL2Poly::c(f), SL2Poly::d(f));
    terms.iter().fold(SL2Poly::zero(f), |acc, &(k, i, j, l, m)| {
        let mono = a.pow(i).mul(&b.pow(j)).mul(&c.pow(l)).mul(&d.pow(m)).scale(k);
        acc.add(&mono)
    })
}

fn poly_terms() -> impl Strategy<Value = Vec<(u64, u32, u32, u32, u32)>> {
    proptest::collection::vec((1u64..3, 0u32..3, 0u32..3, 0u32..3, 0u32..3), 0..4)
}

fn char_sum(x: &Character, y: &Character) -> Character {
    let mut out = x.clone();
    for (w, m) in y.terms() {
        out.add(w, m);
    }
    out
}

const EXPRS: [&str; 8] = ["L0", "L1", "L2", "L3", "P0", "P1", "L1*L1", "L1^Fr1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_over_q(m in small_matrix(Rationals)) {
        prop_assert_eq!(m.rank() + linalg::kernel(&m).dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity_over_f3(m in small_matrix(f3())) {
        prop_assert_eq!(m.rank() + linalg::kernel(&m).dim(), m.cols());
        prop_assert_eq!(linalg::cokernel(&m).dim() + m.rank(), m.rows());
    }

    #[test]
    fn kron_is_functorial(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = seeded(seed);
        let (f, u) = (random_matrix(q, 2, 3, &mut rng), random_matrix(q, 3, 2, &mut rng));
        let (g, v) = (random_matrix(q, 2, 2, &mut rng), random_matrix(q, 2, 3, &mut rng));
        let lhs = f.kron(&g).mul(&u.kron(&v)).unwrap();
        let rhs = f.mul(&u).unwrap().kron(&g.mul(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_returns_solutions(seed in any::<u64>()) {
        let f = f3();
        let mut rng = seeded(seed);
        let a = random_low_rank(f, 4, 3, 2, &mut rng);
        let x = random_matrix(f, 3, 1, &mut rng);
        let b = a.mul(&x).unwrap();
        let sol = linalg::solve(&a, &b).unwrap().expect("consistent");
        prop_assert_eq!(a.mul(&sol).unwrap(), b);
    }

    #[test]
    fn subspace_dimension_formula(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = seeded(seed);
        let u = random_subspace(q, 5, &mut rng);
        let w = random_subspace(q, 5, &mut rng);
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && u.contains_subspace(&i));
    }

    #[test]
    fn sl2_ring_laws(x in poly_terms(), y in poly_terms(), z in poly_terms()) {
        let f = f3();
        let (x, y, z) = (poly(f, &x), poly(f, &y), poly(f, &z));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).frobenius(1), x.frobenius(1).mul(&y.frobenius(1)));
        prop_assert_eq!(x.mul(&y).coproduct(), x.coproduct().mul(&y.coproduct()));
        prop_assert_eq!(x.mul(&y).antipode(), x.antipode().mul(&y.antipode()));
    }

    #[test]
    fn characters_are_additive_and_multiplicative(i in 0..EXPRS.len(), j in 0..EXPRS.len()) {
        let cat = Catalog::new(2).unwrap();
        let (m, n) = (cat.parse(EXPRS[i]).unwrap(), cat.parse(EXPRS[j]).unwrap());
        prop_assert_eq!(m.direct_sum(&n).character(), char_sum(&m.character(), &n.character()));
        prop_assert_eq!(m.tensor(&n).character(), m.character().mul(&n.character()));
        prop_assert_eq!(m.tensor(&n).dim(), m.dim() * n.dim());
        for lambda in 0..4 {
            let sum = f_multiplicity(lambda, &m.direct_sum(&n)).unwrap();
            prop_assert_eq!(sum, f_multiplicity(lambda, &m).unwrap() + f_multiplicity(lambda, &n).unwrap());
        }
    }

    #[test]
    fn double_dual_is_the_original(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let c = random_coalgebra(f3(), &mut rng).shared();
        let side = if seed % 2 == 0 { Side::Left } else { Side::Right };
        let m = random_comodule(&c, side, 4, &mut rng);
        prop_assert!(m.dual().check().is_ok());
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn projectivity_of_direct_sums(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let c = random_coalgebra(Rationals, &mut rng).shared();
        let a = random_contramodule(&c, 3, &mut rng);
        let b = random_contramodule(&c, 3, &mut rng);
        let pa = is_projective(&a).unwrap().is_some();
        let pb = is_projective(&b).unwrap().is_some();
        let ps = is_projective(&a.direct_sum(&b).unwrap()).unwrap().is_some();
        prop_assert_eq!(ps, pa && pb);
    }

    #[test]
    fn comodule_maps_induce_contra_maps(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let f = f3();
        let c = random_coalgebra(f, &mut rng).shared();
        let m = random_comodule(&c, Side::Left, 4, &mut rng);
        let n = random_comodule(&c, Side::Left, 4, &mut rng);
        let homs = contra_core::comodule::hom_comodules(&m, &n).unwrap();
        let (bm, bn) = (Contramodule::from_comodule(&m).unwrap(), Contramodule::from_comodule(&n).unwrap());
        for h in homs.basis() {
            let t = Mat::from_hom_vector(f, n.dim(), m.dim(), h);
            prop_assert!(bm.is_contra_map(&bn, &t).unwrap());
        }
    }
}

#[test]
fn simple_characters_are_unitriangular() {
    for mu in 0..16u64 {
        let ch = Character::simple_char2(mu);
        assert_eq!(ch.highest_weight(), Some(mu as i64));
        assert_eq!(ch.multiplicity(mu as i64), 1);
    }
}

#[test]
fn cofree_hom_dimensions() {
    let mut rng = seeded(3);
    let f = f3();
    for _ in 0..10 {
        let c = random_coalgebra(f, &mut rng).shared();
        let w = random_comodule(&c, Side::Left, 4, &mut rng);
        let d = 2;
        let hom = contra_core::comodule::hom_comodules(&w, &Comodule::cofree(c.clone(), Side::Left, d)).unwrap();
        assert_eq!(hom.dim(), w.dim() * d);
        let free = Contramodule::free(c.clone(), d);
        let b = random_contramodule(&c, 4, &mut rng);
        assert_eq!(contra_core::contramodule::hom_contra(&free, &b).unwrap().dim(), d * b.dim());
        let r = random_comodule(&c, Side::Right, 4, &mut rng);
        assert_eq!(contra_core::contramodule::contratensor(&r, &free).unwrap().dim(), r.dim() * d);
    }
}
