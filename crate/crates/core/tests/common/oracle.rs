//! Dense, loop-by-loop axiom checks written directly from the index
//! conventions, used to tell equivalent mutants from real ones.

use contra_core::coalgebra::Coalgebra;
use contra_core::comodule::{Comodule, Side};
use contra_core::contramodule::Contramodule;
use contra_core::field::Field;

struct Dense<F: Field> {
    f: F,
    a: Vec<Vec<F::Elem>>,
}

impl<F: Field> Dense<F> {
    fn at(&self, i: usize, j: usize) -> &F::Elem {
        &self.a[i][j]
    }
}

fn dense<F: Field>(m: &contra_core::linalg::Mat<F>) -> Dense<F> {
    Dense {
        f: m.field(),
        a: m.to_dense(),
    }
}

fn sum<F: Field>(f: F, terms: impl Iterator<Item = F::Elem>) -> F::Elem {
    terms.fold(f.zero(), |s, t| f.add(&s, &t))
}

fn kron_delta<F: Field>(f: F, i: usize, j: usize) -> F::Elem {
    if i == j {
        f.one()
    } else {
        f.zero()
    }
}

pub fn coalgebra_ok<F: Field>(c: &Coalgebra<F>) -> bool {
    let n = c.dim();
    let d = dense(c.delta());
    let e = dense(c.epsilon());
    let f = d.f;
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let l = sum(f, (0..n).map(|x| f.mul(d.at(a * n + x, k), d.at(b * n + cc, x))));
                    let r = sum(f, (0..n).map(|y| f.mul(d.at(y * n + cc, k), d.at(a * n + b, y))));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        for j in 0..n {
            let l = sum(f, (0..n).map(|i| f.mul(e.at(0, i), d.at(i * n + j, k))));
            let r = sum(f, (0..n).map(|i| f.mul(e.at(0, i), d.at(j * n + i, k))));
            if l != kron_delta(f, j, k) || r != kron_delta(f, j, k) {
                return false;
            }
        }
    }
    true
}

pub fn comodule_ok<F: Field>(x: &Comodule<F>) -> bool {
    let c = x.coalgebra();
    let (n, m) = (c.dim(), x.dim());
    let d = dense(c.delta());
    let e = dense(c.epsilon());
    let r = dense(x.coaction());
    let f = d.f;
    for v in 0..m {
        for u in 0..m {
            for a in 0..n {
                for b in 0..n {
                    let (l, rr) = match x.side() {
                        Side::Left => (
                            sum(f, (0..n).map(|cc| f.mul(d.at(a * n + b, cc), r.at(cc * m + u, v)))),
                            sum(f, (0..m).map(|w| f.mul(r.at(a * m + w, v), r.at(b * m + u, w)))),
                        ),
                        Side::Right => (
                            sum(f, (0..m).map(|w| f.mul(r.at(w * n + b, v), r.at(u * n + a, w)))),
                            sum(f, (0..n).map(|cc| f.mul(r.at(u * n + cc, v), d.at(a * n + b, cc)))),
                        ),
                    };
                    if l != rr {
                        return false;
                    }
                }
            }
            let row = |cc: usize| match x.side() {
                Side::Left => cc * m + u,
                Side::Right => u * n + cc,
            };
            let eps = sum(f, (0..n).map(|cc| f.mul(e.at(0, cc), r.at(row(cc), v))));
            if eps != kron_delta(f, u, v) {
                return false;
            }
        }
    }
    true
}

pub fn contramodule_ok<F: Field>(x: &Contramodule<F>) -> bool {
    let c = x.coalgebra();
    let (n, b) = (c.dim(), x.dim());
    let d = dense(c.delta());
    let e = dense(c.epsilon());
    let t = dense(x.theta());
    let f = d.f;
    for i in 0..n {
        for j in 0..n {
            for k in 0..b {
                for l in 0..b {
                    let lhs = sum(f, (0..b).map(|k2| f.mul(t.at(k2, i * b + k), t.at(l, j * b + k2))));
                    let rhs = sum(f, (0..n).map(|cc| f.mul(d.at(i * n + j, cc), t.at(l, cc * b + k))));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    for k in 0..b {
        for l in 0..b {
            let u = sum(f, (0..n).map(|j| f.mul(e.at(0, j), t.at(l, j * b + k))));
            if u != kron_delta(f, l, k) {
                return false;
            }
        }
    }
    true
}
