//! The `p = 2` catalog: simples `L(μ)`, the structures `P(0)`, `P(1)`, the
//! projection `q: P(0) ↠ L(0)` and the towers `P_{λ,m}`.

use std::sync::{Arc, OnceLock};

use super::character::Character;
use super::kernel::FrobeniusKernel;
use super::poly::SL2Poly;
use super::rational::{is_g_map, RationalComodule};
use crate::coalgebra::CoalgebraRef;
use crate::comodule::{head_radical, Comodule};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Mat;

/// A Frobenius kernel together with its coalgebra.
#[derive(Clone, Debug)]
pub struct KernelData {
    pub kernel: FrobeniusKernel,
    pub coalgebra: CoalgebraRef<PrimeField>,
}

impl KernelData {
    pub fn new(field: PrimeField, r: u32) -> Result<Self> {
        let kernel = FrobeniusKernel::new(field, r)?;
        let coalgebra = kernel.coalgebra().shared();
        Ok(KernelData { kernel, coalgebra })
    }

    pub fn restrict(&self, m: &RationalComodule) -> Result<Comodule<PrimeField>> {
        m.restrict_to_kernel(&self.kernel, self.coalgebra.clone())
    }
}

/// Lazily built `k[G_r]` for `r = 1..=MAX_KERNEL`, shared between threads.
#[derive(Debug)]
pub struct KernelCache {
    field: PrimeField,
    slots: Vec<OnceLock<Arc<KernelData>>>,
}

pub const MAX_KERNEL: u32 = 5;

impl KernelCache {
    pub fn new(field: PrimeField) -> Self {
        KernelCache {
            field,
            slots: (0..MAX_KERNEL).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn get(&self, r: u32) -> Result<Arc<KernelData>> {
        let slot = r
            .checked_sub(1)
            .and_then(|k| self.slots.get(k as usize))
            .ok_or_else(|| Error::Unsupported(format!("k[G_{r}] is out of range")))?;
        if let Some(kd) = slot.get() {
            return Ok(kd.clone());
        }
        let kd = Arc::new(KernelData::new(self.field, r)?);
        Ok(slot.get_or_init(|| kd).clone())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Catalog {
    field: PrimeField,
}

impl Catalog {
    /// Only `p = 2` is available.
    pub fn new(p: u64) -> Result<Self> {
        if p != 2 {
            return Err(Error::Unsupported(format!(
                "the module catalog is only available for p = 2, not {p}"
            )));
        }
        Ok(Catalog {
            field: PrimeField::new(2)?,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `L(μ) = ⊗ L(1)^{Fr^i}` over the binary digits of `μ`.
    pub fn simple(&self, mu: u64) -> RationalComodule {
        let l1 = RationalComodule::natural(self.field);
        let mut out = RationalComodule::trivial(self.field);
        for i in 0..64 {
            if mu >> i & 1 == 1 {
                out = out.tensor(&l1.frobenius_twist(i));
            }
        }
        out
    }

    /// `P(0)`, written out explicitly on the basis `v_i ⊗ v_{i'}` ordered
    /// `00, 01, 10, 11`.
    pub fn p0(&self) -> RationalComodule {
        let f = self.field;
        let (a, b, c, d) = (SL2Poly::a(f), SL2Poly::b(f), SL2Poly::c(f), SL2Poly::d(f));
        let rows = [
            [a.mul(&a), a.mul(&b), b.mul(&a), b.mul(&b)],
            [a.mul(&c), a.mul(&d), b.mul(&c), b.mul(&d)],
            [c.mul(&a), c.mul(&b), d.mul(&a), d.mul(&b)],
            [c.mul(&c), c.mul(&d), d.mul(&c), d.mul(&d)],
        ];
        RationalComodule::new_unchecked(f, rows.into_iter().map(|r| r.to_vec()).collect())
            .expect("square")
    }

    /// `P(1) = L(1)`.
    pub fn p1(&self) -> RationalComodule {
        self.simple(1)
    }

    /// `P(d)` for a binary digit `d`.
    pub fn projective(&self, digit: u64) -> Result<RationalComodule> {
        match digit {
            0 => Ok(self.p0()),
            1 => Ok(self.p1()),
            _ => Err(Error::Invalid(format!(
                "P({digit}) is only defined for restricted weights 0 and 1"
            ))),
        }
    }

    /// `q: P(0) ↠ L(0)`, the determinant pairing.
    pub fn q(&self) -> Mat<PrimeField> {
        let f = self.field;
        Mat::from_triplets(f, 1, 4, [(0, 1, f.one()), (0, 2, f.neg(&f.one()))]).expect("in range")
    }

    /// Parses expressions such as `L3`, `P0`, `L1^Fr2` or `L1*L1 + L0`:
    /// `*` is the tensor product, `+` the direct sum, `^Fr<k>` a twist.
    pub fn parse(&self, expr: &str) -> Result<RationalComodule> {
        let mut sum: Option<RationalComodule> = None;
        for term in expr.split('+') {
            let mut prod: Option<RationalComodule> = None;
            for factor in term.split('*') {
                let m = self.parse_factor(factor.trim())?;
                prod = Some(match prod {
                    None => m,
                    Some(p) => p.tensor(&m),
                });
            }
            let p = prod.expect("split yields at least one piece");
            sum = Some(match sum {
                None => p,
                Some(s) => s.direct_sum(&p),
            });
        }
        Ok(sum.expect("split yields at least one piece"))
    }

    fn parse_factor(&self, s: &str) -> Result<RationalComodule> {
        let bad = || Error::Parse(format!("unknown catalog module `{s}`"));
        let (name, twist) = match s.split_once("^Fr") {
            Some((n, k)) => (
                n,
                if k.is_empty() {
                    1
                } else {
                    k.parse::<u32>().map_err(|_| bad())?
                },
            ),
            None => (s, 0),
        };
        let m = if let Some(num) = name.strip_prefix('L') {
            let mu: u64 = num.parse().map_err(|_| bad())?;
            if mu >= 1 << 16 {
                return Err(Error::Unsupported(format!("weight {mu} is too large")));
            }
            self.simple(mu)
        } else if let Some(num) = name.strip_prefix('P') {
            self.projective(num.parse().map_err(|_| bad())?)?
        } else {
            return Err(bad());
        };
        Ok(if twist > 0 {
            m.frobenius_twist(twist)
        } else {
            m
        })
    }

    /// `P_{λ,m}` for `m` up to `m_max`, starting at the first admissible `m`.
    pub fn build_tower(&self, lambda: u64, m_max: u32) -> Result<Tower> {
        let digits: Vec<u64> = (0..64).map(|i| lambda >> i & 1).collect();
        let m0 = (64 - lambda.leading_zeros()).max(1);
        if m_max < m0 {
            return Err(Error::Invalid(format!(
                "m_max = {m_max} must be at least {m0} for λ = {lambda}"
            )));
        }
        let f = self.field;
        let mut stages = Vec::new();
        let mut cur = RationalComodule::trivial(f);
        for i in 0..m0 {
            cur = cur.tensor(&self.projective(digits[i as usize])?.frobenius_twist(i));
        }
        stages.push(cur.clone());
        let p0 = self.p0();
        let mut transitions = Vec::new();
        for m in m0 + 1..=m_max {
            let prev_dim = cur.dim();
            cur = cur.tensor(&p0.frobenius_twist(m - 1));
            stages.push(cur.clone());
            transitions.push(Mat::identity(f, prev_dim).kron(&self.q()));
        }
        Ok(Tower {
            lambda,
            m0,
            stages,
            transitions,
        })
    }

    /// The simples of `G_r`: `L(μ)` for `μ < 2^r`, restricted.
    pub fn kernel_simples(&self, kd: &KernelData) -> Result<Vec<(String, Comodule<PrimeField>)>> {
        let r = kd.kernel.r();
        (0..1u64 << r)
            .map(|mu| Ok((format!("L{mu}"), kd.restrict(&self.simple(mu))?)))
            .collect()
    }

    /// Head of a rational module restricted to `G_r`, as `(label, multiplicity)`.
    pub fn head_over_kernel(
        &self,
        m: &RationalComodule,
        kd: &KernelData,
    ) -> Result<Vec<(String, usize)>> {
        let simples = self.kernel_simples(kd)?;
        Ok(head_radical(&kd.restrict(m)?, &simples)?.head)
    }
}

/// Composition multiplicity `[V : L(λ)]` from characters.
pub fn f_multiplicity(lambda: u64, v: &RationalComodule) -> Result<u64> {
    if v.field().p() != 2 {
        return Err(Error::Unsupported(
            "characters of simples are only available for p = 2".into(),
        ));
    }
    f_multiplicity_of(lambda, &v.character())
}

pub fn f_multiplicity_of(lambda: u64, ch: &Character) -> Result<u64> {
    let parts = ch.decompose_char2().ok_or_else(|| {
        Error::Inconsistent(format!("character {ch} is not a sum of simple characters"))
    })?;
    Ok(parts.get(&lambda).copied().unwrap_or(0))
}

/// Stages `P_{λ,m}` for `m = m0..=m_max` with the transitions
/// `P_{λ,m} -> P_{λ,m-1}`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub lambda: u64,
    pub m0: u32,
    pub stages: Vec<RationalComodule>,
    /// `transitions[k]` maps stage `m0 + k + 1` to stage `m0 + k`.
    pub transitions: Vec<Mat<PrimeField>>,
}

impl Tower {
    pub fn m_max(&self) -> u32 {
        self.m0 + self.stages.len() as u32 - 1
    }

    pub fn stage(&self, m: u32) -> Option<&RationalComodule> {
        m.checked_sub(self.m0)
            .and_then(|k| self.stages.get(k as usize))
    }

    /// Every transition is a surjective `G`-map with the expected kernel.
    pub fn check_transitions(&self) -> bool {
        self.transitions.iter().enumerate().all(|(k, t)| {
            let (src, dst) = (&self.stages[k + 1], &self.stages[k]);
            t.rank() == dst.dim() && is_g_map(src, dst, t)
        })
    }
}
