//! Frozen values for the p = 2 catalog and its towers, plus cross-checks
//! against evaluation at points of SL2 and against restricted Hom spaces.

use contra_core::comodule::hom_comodules;
use contra_core::field::{Field, PrimeField};
use contra_core::sl2::{
    f_multiplicity, hom_g, Catalog, Character, KernelCache, RationalComodule, SL2Poly,
};
use contra_core::towers::weight_bound_stage;

fn cat() -> Catalog {
    Catalog::new(2).unwrap()
}

type Point = [u64; 4];

fn sl2_points(f: PrimeField) -> Vec<Point> {
    let p = f.p();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if f.sub(&f.mul(&a, &d), &f.mul(&b, &c)) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn eval(x: &SL2Poly, g: &Point) -> u64 {
    let f = x.field();
    let mut s = 0;
    for (&(i, j, e), &v) in x.terms() {
        let mut t = f.mul(&v, &f.pow(g[1], i as u64));
        t = f.mul(&t, &f.pow(g[2], j as u64));
        let ad = if e >= 0 { f.pow(g[0], e as u64) } else { f.pow(g[3], (-e) as u64) };
        s = f.add(&s, &f.mul(&t, &ad));
    }
    s
}

fn matmul(f: PrimeField, g: &Point, h: &Point) -> Point {
    let m = |x: u64, y: u64, z: u64, w: u64| f.add(&f.mul(&x, &y), &f.mul(&z, &w));
    [
        m(g[0], h[0], g[1], h[2]),
        m(g[0], h[1], g[1], h[3]),
        m(g[2], h[0], g[3], h[2]),
        m(g[2], h[1], g[3], h[3]),
    ]
}

fn rep_at(v: &RationalComodule, g: &Point) -> Vec<Vec<u64>> {
    let n = v.dim();
    (0..n).map(|i| (0..n).map(|j| eval(v.entry(i, j), g)).collect()).collect()
}

fn dense_mul(f: PrimeField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(0, |s, k| f.add(&s, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

#[test]
fn normal_form_respects_evaluation() {
    for p in [3, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c, d) = (SL2Poly::a(f), SL2Poly::b(f), SL2Poly::c(f), SL2Poly::d(f));
        let det = a.mul(&d).sub(&b.mul(&c)).sub(&SL2Poly::one(f));
        assert!(det.is_zero());
        let x = a.pow(3).add(&b.mul(&d).scale(2)).add(&c);
        let y = d.pow(2).add(&a.mul(&c)).sub(&b.pow(2));
        let xy = x.mul(&y);
        for g in sl2_points(f) {
            assert_eq!(eval(&xy, &g), f.mul(&eval(&x, &g), &eval(&y, &g)));
        }
    }
}

#[test]
fn catalog_modules_are_representations_of_sl2_f2() {
    let f = PrimeField::new(2).unwrap();
    let pts = sl2_points(f);
    assert_eq!(pts.len(), 6);
    let cat = cat();
    for name in ["L0", "L1", "L2", "L3", "L1*L1", "P0", "P1", "P0*L1^Fr1"] {
        let v = cat.parse(name).unwrap();
        for g in &pts {
            for h in &pts {
                let lhs = rep_at(&v, &matmul(f, g, h));
                let rhs = dense_mul(f, &rep_at(&v, g), &rep_at(&v, h));
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }
}

#[test]
fn dimension_table() {
    let cat = cat();
    let dims: Vec<usize> = ["L0", "L1", "L2", "L3", "P0", "P1"]
        .iter()
        .map(|n| cat.parse(n).unwrap().dim())
        .collect();
    assert_eq!(dims, [1, 2, 2, 4, 4, 2]);
}

#[test]
fn characters() {
    let cat = cat();
    let mut twisted = Character::zero();
    twisted.add(2, 1);
    twisted.add(-2, 1);
    assert_eq!(cat.parse("L1^Fr1").unwrap().character(), twisted);
    let mut square = twisted.clone();
    square.add(0, 2);
    assert_eq!(cat.parse("L1*L1").unwrap().character(), square);
    assert_eq!(cat.p0().character(), square);
    assert_eq!(square.to_string(), "z^-2 + 2 + z^2");
}

#[test]
fn multiplicities() {
    let cat = cat();
    let f = |l: u64, e: &str| f_multiplicity(l, &cat.parse(e).unwrap()).unwrap();
    for mu in 0..4 {
        assert_eq!(f(mu, &format!("L{mu}")), 1);
    }
    assert_eq!(f(0, "L1*L1"), 2);
    assert_eq!(f(1, "P0"), 0);
    assert_eq!(f(0, "P0"), 2);
}

#[test]
fn hom_g_values() {
    let cat = cat();
    assert_eq!(hom_g(&cat.simple(1), &cat.simple(1)).unwrap().dim(), 1);
    assert_eq!(hom_g(&cat.simple(0), &cat.p0()).unwrap().dim(), 1);
}

#[test]
fn q_has_three_dimensional_kernel() {
    let cat = cat();
    let q = cat.q();
    assert_eq!(q.shape(), (1, 4));
    assert_eq!(4 - q.rank(), 3);
    assert!(contra_core::sl2::is_g_map(&cat.p0(), &cat.simple(0), &q));
}

#[test]
fn tower_dimensions() {
    let cat = cat();
    for (lambda, dims) in [(0, [4, 16, 64]), (1, [2, 8, 32])] {
        let t = cat.build_tower(lambda, 3).unwrap();
        let got: Vec<usize> = t.stages.iter().map(|s| s.dim()).collect();
        assert_eq!(got, dims);
        for (k, q) in t.transitions.iter().enumerate() {
            assert_eq!(q.rank(), dims[k]);
            assert_eq!(q.cols() - q.rank(), dims[k + 1] - dims[k]);
        }
    }
}

#[test]
fn twisted_l1_restricts_trivially_to_g1() {
    let cat = cat();
    let kernels = KernelCache::new(cat.field());
    let kd = kernels.get(1).unwrap();
    let m = kd.restrict(&cat.parse("L1^Fr1").unwrap()).unwrap();
    let triv = kd.restrict(&cat.simple(0)).unwrap();
    let twice = triv.direct_sum(&triv).unwrap();
    assert_eq!(m.coaction(), twice.coaction());
}

#[test]
fn g_homs_agree_with_kernel_homs_once_weights_are_small() {
    let cat = cat();
    let kernels = KernelCache::new(cat.field());
    for lambda in 0..2 {
        let tower = cat.build_tower(lambda, 3).unwrap();
        for name in ["L0", "L1", "L2", "L3", "L1*L1"] {
            let v = cat.parse(name).unwrap();
            let bound = weight_bound_stage(v.max_weight());
            for m in bound.max(tower.m0)..=tower.m_max() {
                let p = tower.stage(m).unwrap();
                let kd = kernels.get(m).unwrap();
                let over_g = hom_g(p, &v).unwrap().dim();
                let over_gm = hom_comodules(&kd.restrict(p).unwrap(), &kd.restrict(&v).unwrap())
                    .unwrap()
                    .dim();
                assert_eq!(over_g, over_gm, "λ={lambda}, V={name}, m={m}");
                assert_eq!(over_g as u64, f_multiplicity(lambda, &v).unwrap());
            }
        }
    }
}
