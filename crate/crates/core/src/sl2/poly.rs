//! Normal forms in `k[SL2] = k[a, b, c, d] / (ad - bc - 1)` over `F_p`.
//!
//! A monomial is `b^i c^j a^e` for `e >= 0` or `b^i c^j d^{-e}` for `e < 0`;
//! `ad` never appears because it is rewritten as `1 + bc`.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, PrimeField};

/// `(i, j, e)`: `b^i c^j a^e` when `e >= 0`, `b^i c^j d^{-e}` otherwise.
pub type Monomial = (u32, u32, i32);

/// Binomial coefficient modulo `p` (Lucas).
pub fn binomial_mod(field: PrimeField, mut n: u64, mut k: u64) -> u64 {
    let p = field.p();
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..b {
            c = field.mul(&c, &((a - t) % p));
            c = field.mul(&c, &field.inv(&((t + 1) % p)).expect("t + 1 < p"));
        }
        acc = field.mul(&acc, &c);
        n /= p;
        k /= p;
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SL2Poly {
    field: PrimeField,
    terms: BTreeMap<Monomial, u64>,
}

impl fmt::Debug for SL2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SL2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(i, j, e), &v) in &self.terms {
            let mut s = String::new();
            for (name, k) in [
                ("b", i as i64),
                ("c", j as i64),
                ("a", e.max(0) as i64),
                ("d", (-e).max(0) as i64),
            ] {
                match k {
                    0 => {}
                    1 => s.push_str(name),
                    _ => s.push_str(&format!("{name}^{k}")),
                }
            }
            parts.push(match (v, s.is_empty()) {
                (_, true) => v.to_string(),
                (1, false) => s,
                _ => format!("{v}{s}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl SL2Poly {
    pub fn zero(field: PrimeField) -> Self {
        SL2Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, v: u64) -> Self {
        Self::monomial(field, (0, 0, 0), v)
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, v: u64) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, v % field.p());
        p
    }

    pub fn a(field: PrimeField) -> Self {
        Self::monomial(field, (0, 0, 1), 1)
    }
    pub fn b(field: PrimeField) -> Self {
        Self::monomial(field, (1, 0, 0), 1)
    }
    pub fn c(field: PrimeField) -> Self {
        Self::monomial(field, (0, 1, 0), 1)
    }
    pub fn d(field: PrimeField) -> Self {
        Self::monomial(field, (0, 0, -1), 1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }
    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, v: u64) {
        if v == 0 {
            return;
        }
        let f = self.field;
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(e, &v);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, &v) in &other.terms {
            out.add_term(m, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.field.neg(&1)))
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (&m, &v) in &self.terms {
            out.add_term(m, f.mul(&v, &(s % f.p())));
        }
        out
    }

    /// Adds `s * x * y` for monomials `x`, `y`, rewriting `ad = 1 + bc`.
    fn add_monomial_product(&mut self, x: Monomial, y: Monomial, s: u64) {
        let f = self.field;
        let (i, j) = (x.0 + y.0, x.1 + y.1);
        let (e1, e2) = (x.2, y.2);
        if e1 >= 0 && e2 >= 0 || e1 <= 0 && e2 <= 0 {
            self.add_term((i, j, e1 + e2), s);
            return;
        }
        // a^s d^t = a^{s-m} d^{t-m} (1 + bc)^m, m = min(s, t)
        let m = e1.unsigned_abs().min(e2.unsigned_abs());
        let e = e1 + e2;
        for l in 0..=m {
            let bin = binomial_mod(f, m as u64, l as u64);
            if bin != 0 {
                self.add_term((i + l, j + l, e), f.mul(&s, &bin));
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (&x, &u) in &self.terms {
            for (&y, &v) in &other.terms {
                out.add_monomial_product(x, y, f.mul(&u, &v));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^{p^s}`, computed monomial-wise (coefficients lie in `F_p`).
    pub fn frobenius(&self, s: u32) -> Self {
        let q = self.field.p().pow(s);
        let mut out = Self::zero(self.field);
        for (&(i, j, e), &v) in &self.terms {
            out.add_term((i * q as u32, j * q as u32, e * q as i32), v);
        }
        out
    }

    /// Counit: `a, d ↦ 1`, `b, c ↦ 0`.
    pub fn counit(&self) -> u64 {
        let f = self.field;
        self.terms
            .iter()
            .filter(|((i, j, _), _)| *i == 0 && *j == 0)
            .fold(0, |acc, (_, v)| f.add(&acc, v))
    }

    /// Antipode: `a ↔ d`, `b ↦ -b`, `c ↦ -c`.
    pub fn antipode(&self) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (&(i, j, e), &v) in &self.terms {
            let v = if (i + j) % 2 == 1 { f.neg(&v) } else { v };
            out.add_term((i, j, -e), v);
        }
        out
    }

    /// Restriction to the diagonal torus `a ↦ z`, `d ↦ z^{-1}`, `b, c ↦ 0`:
    /// weight ↦ coefficient.
    pub fn torus(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (&(i, j, e), &v) in &self.terms {
            if i == 0 && j == 0 {
                out.insert(e as i64, v);
            }
        }
        out
    }

    /// Total degree in `a, b, c, d`.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j, e)| i + j + e.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Comultiplication `Δ(x_{ij}) = Σ_k x_{ik} ⊗ x_{kj}` on the generators,
    /// extended multiplicatively.
    pub fn coproduct(&self) -> TensorPoly {
        let f = self.field;
        let gens = Generators::new(f);
        let mut out = TensorPoly::zero(f);
        for (&(i, j, e), &v) in &self.terms {
            let mut t = gens.b.pow(i).mul(&gens.c.pow(j));
            t = if e >= 0 {
                t.mul(&gens.a.pow(e as u32))
            } else {
                t.mul(&gens.d.pow((-e) as u32))
            };
            out = out.add(&t.scale(v));
        }
        out
    }
}

struct Generators {
    a: TensorPoly,
    b: TensorPoly,
    c: TensorPoly,
    d: TensorPoly,
}

impl Generators {
    fn new(f: PrimeField) -> Self {
        let t = |x: SL2Poly, y: SL2Poly| TensorPoly::simple(&x, &y);
        let (a, b, c, d) = (SL2Poly::a(f), SL2Poly::b(f), SL2Poly::c(f), SL2Poly::d(f));
        Generators {
            a: t(a.clone(), a.clone()).add(&t(b.clone(), c.clone())),
            b: t(a.clone(), b.clone()).add(&t(b.clone(), d.clone())),
            c: t(c.clone(), a.clone()).add(&t(d.clone(), c.clone())),
            d: t(c, b).add(&t(d.clone(), d)),
        }
    }
}

/// Elements of `k[SL2] ⊗ k[SL2]` in normal form on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    field: PrimeField,
    terms: BTreeMap<(Monomial, Monomial), u64>,
}

impl TensorPoly {
    pub fn zero(field: PrimeField) -> Self {
        TensorPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::simple(&SL2Poly::one(field), &SL2Poly::one(field))
    }

    /// `x ⊗ y`.
    pub fn simple(x: &SL2Poly, y: &SL2Poly) -> Self {
        let f = x.field;
        let mut out = Self::zero(f);
        for (&m, &u) in &x.terms {
            for (&n, &v) in &y.terms {
                out.add_term((m, n), f.mul(&u, &v));
            }
        }
        out
    }

    fn add_term(&mut self, k: (Monomial, Monomial), v: u64) {
        if v == 0 {
            return;
        }
        let f = self.field;
        let e = self.terms.entry(k).or_insert(0);
        *e = f.add(e, &v);
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (&k, &v) in &self.terms {
            out.add_term(k, f.mul(&v, &s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (&(x1, x2), &u) in &self.terms {
            for (&(y1, y2), &v) in &other.terms {
                let mut l = SL2Poly::zero(f);
                l.add_monomial_product(x1, y1, 1);
                let mut r = SL2Poly::zero(f);
                r.add_monomial_product(x2, y2, 1);
                let s = f.mul(&u, &v);
                for (&m, &p) in &l.terms {
                    for (&n, &q) in &r.terms {
                        out.add_term((m, n), f.mul(&s, &f.mul(&p, &q)));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn determinant_relation_reduces_to_zero() {
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            let det = SL2Poly::a(f)
                .mul(&SL2Poly::d(f))
                .sub(&SL2Poly::b(f).mul(&SL2Poly::c(f)))
                .sub(&SL2Poly::one(f));
            assert!(det.is_zero(), "{det}");
        }
    }

    #[test]
    fn frobenius_matches_power() {
        let f = f2();
        let x = SL2Poly::a(f).add(&SL2Poly::b(f).mul(&SL2Poly::d(f)));
        assert_eq!(x.frobenius(1), x.pow(2));
        assert_eq!(x.frobenius(2), x.pow(4));
        let f3 = PrimeField::new(3).unwrap();
        let y = SL2Poly::d(f3).add(&SL2Poly::c(f3).scale(2));
        assert_eq!(y.frobenius(1), y.pow(3));
    }

    #[test]
    fn antipode_inverts_generic_matrix() {
        let f = PrimeField::new(5).unwrap();
        let (a, b, c, d) = (SL2Poly::a(f), SL2Poly::b(f), SL2Poly::c(f), SL2Poly::d(f));
        // [[a,b],[c,d]] * S([[a,b],[c,d]]) = I
        assert_eq!(
            a.mul(&a.antipode()).add(&b.mul(&c.antipode())),
            SL2Poly::one(f)
        );
        assert!(a.mul(&b.antipode()).add(&b.mul(&d.antipode())).is_zero());
    }

    #[test]
    fn coproduct_of_generators() {
        let f = f2();
        let da = SL2Poly::a(f).coproduct();
        assert_eq!(da.terms.len(), 2);
        let dad = SL2Poly::a(f).mul(&SL2Poly::d(f)).coproduct();
        let rhs = SL2Poly::one(f)
            .add(&SL2Poly::b(f).mul(&SL2Poly::c(f)))
            .coproduct();
        assert_eq!(dad, rhs);
    }

    #[test]
    fn lucas_binomials() {
        let f = f2();
        assert_eq!(binomial_mod(f, 4, 2), 0);
        assert_eq!(binomial_mod(f, 5, 1), 1);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(binomial_mod(f3, 4, 2), 0);
        assert_eq!(binomial_mod(f3, 5, 2), 1);
    }
}
