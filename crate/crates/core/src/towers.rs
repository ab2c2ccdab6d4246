//! Inverse systems of finite-dimensional spaces, Mittag-Leffler detection
//! inside a finite window, exactness of four-term limits, and the `Cohom`
//! towers of the `p = 2` catalog.

use rayon::prelude::*;
use serde::Serialize;

use crate::contramodule::{cohom, Contramodule};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{Mat, Subspace};
use crate::sl2::{f_multiplicity, Catalog, KernelCache, RationalComodule, Tower};

/// Stages `m0..=m_max` with transitions `stage m -> stage m - 1`.
#[derive(Clone, Debug)]
pub struct InverseSystem<F: Field> {
    field: F,
    m0: usize,
    dims: Vec<usize>,
    /// `transitions[k]` maps stage `m0 + k + 1` to stage `m0 + k`.
    transitions: Vec<Mat<F>>,
}

impl<F: Field> InverseSystem<F> {
    pub fn new(field: F, m0: usize, dims: Vec<usize>, transitions: Vec<Mat<F>>) -> Result<Self> {
        if dims.is_empty() || transitions.len() + 1 != dims.len() {
            return Err(Error::shape(format!(
                "{} stages need {} transitions, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                transitions.len()
            )));
        }
        for (k, t) in transitions.iter().enumerate() {
            if t.field() != field {
                return Err(Error::FieldMismatch(t.field().spec(), field.spec()));
            }
            if t.shape() != (dims[k], dims[k + 1]) {
                return Err(Error::shape(format!(
                    "transition from stage {} is {}x{}, expected {}x{}",
                    m0 + k + 1,
                    t.rows(),
                    t.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        Ok(InverseSystem {
            field,
            m0,
            dims,
            transitions,
        })
    }

    /// A system of contramodules; every transition must be a
    /// contra-homomorphism.
    pub fn from_contramodules(
        m0: usize,
        stages: &[Contramodule<F>],
        transitions: Vec<Mat<F>>,
    ) -> Result<Self> {
        let first = stages
            .first()
            .ok_or_else(|| Error::shape("an inverse system needs a stage"))?;
        let sys = Self::new(
            first.field(),
            m0,
            stages.iter().map(|s| s.dim()).collect(),
            transitions,
        )?;
        for (k, t) in sys.transitions.iter().enumerate() {
            if !stages[k + 1].is_contra_map(&stages[k], t)? {
                return Err(Error::Invalid(format!(
                    "transition from stage {} is not a contra-homomorphism",
                    m0 + k + 1
                )));
            }
        }
        Ok(sys)
    }

    /// `count` copies of `F^dim` joined by identities.
    pub fn constant(field: F, m0: usize, dim: usize, count: usize) -> Self {
        let t = vec![Mat::identity(field, dim); count.saturating_sub(1)];
        Self::new(field, m0, vec![dim; count.max(1)], t).expect("consistent shapes")
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn m0(&self) -> usize {
        self.m0
    }
    pub fn m_max(&self) -> usize {
        self.m0 + self.dims.len() - 1
    }
    pub fn dim(&self, m: usize) -> usize {
        self.dims[m - self.m0]
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    /// The transition `stage m -> stage m - 1`.
    pub fn transition(&self, m: usize) -> &Mat<F> {
        &self.transitions[m - self.m0 - 1]
    }

    /// `f_{i,j}: stage j -> stage i` for `i <= j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<Mat<F>> {
        let mut out = Mat::identity(self.field, self.dim(j));
        for m in (i + 1..=j).rev() {
            out = self.transition(m).mul(&out)?;
        }
        Ok(out)
    }

    /// `f_{at,j}(A_j)` for `j = at..=m_max`.
    pub fn image_chain(&self, at: usize) -> Result<Vec<Subspace<F>>> {
        let mut out = vec![Subspace::full(self.field, self.dim(at))];
        let mut f = Mat::identity(self.field, self.dim(at));
        for j in at + 1..=self.m_max() {
            f = f.mul(self.transition(j))?;
            out.push(Subspace::column_space(&f));
        }
        Ok(out)
    }

    /// Quotient system `{X_m / S_m}` for compatible subspaces `S_m`.
    pub fn quotient(&self, subs: &[Subspace<F>]) -> Result<(Self, Vec<Mat<F>>)> {
        if subs.len() != self.dims.len() {
            return Err(Error::shape("one subspace per stage is required"));
        }
        let qs: Vec<_> = subs
            .iter()
            .map(|s| crate::linalg::quotient_by(self.field, s.ambient(), s.basis().iter()))
            .collect();
        let mut transitions = Vec::new();
        for (k, t) in self.transitions.iter().enumerate() {
            let moved = subs[k + 1].image_under(t)?;
            if !subs[k].contains_subspace(&moved) {
                return Err(Error::Invalid(format!(
                    "subspaces are not compatible at stage {}",
                    self.m0 + k + 1
                )));
            }
            transitions.push(qs[k].map.mul(t)?.mul(&qs[k + 1].section)?);
        }
        let dims = qs.iter().map(|q| q.dim()).collect();
        Ok((
            Self::new(self.field, self.m0, dims, transitions)?,
            qs.into_iter().map(|q| q.map).collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MittagLeffler {
    pub holds: bool,
    /// First `j` from which the image chain is constant through the window.
    pub stabilized_at: usize,
    /// `dim f_{at,j}(A_j)` for `j = at..=m_max`.
    pub image_dims: Vec<usize>,
}

/// Image-chain stabilization at stage `at`. Holds when the chain is seen to
/// be constant on at least two consecutive stages inside the window.
pub fn is_mittag_leffler<F: Field>(sys: &InverseSystem<F>, at: usize) -> Result<MittagLeffler> {
    if at < sys.m0 || at + 2 > sys.m_max() {
        return Err(Error::Invalid(format!(
            "need two stages beyond {at}, the window is {}..={}",
            sys.m0,
            sys.m_max()
        )));
    }
    let chain = sys.image_chain(at)?;
    for w in chain.windows(2) {
        if !w[0].contains_subspace(&w[1]) {
            return Err(Error::Inconsistent("image chain is not decreasing".into()));
        }
    }
    let mut k = chain.len() - 1;
    while k > 0 && chain[k - 1].dim() == chain[k].dim() {
        k -= 1;
    }
    // The chain is nested, so equal dimensions mean equal subspaces.
    let stabilized_at = at + k.max(1);
    Ok(MittagLeffler {
        holds: stabilized_at < sys.m_max(),
        stabilized_at,
        image_dims: chain.iter().map(|s| s.dim()).collect(),
    })
}

/// Four inverse systems with stagewise exact `0 -> A -> B -> C -> D -> 0`.
#[derive(Clone, Debug)]
pub struct FourTermSystem<F: Field> {
    pub a: InverseSystem<F>,
    pub b: InverseSystem<F>,
    pub c: InverseSystem<F>,
    pub d: InverseSystem<F>,
    /// Per-stage maps, indexed from `m0`.
    pub alpha: Vec<Mat<F>>,
    pub beta: Vec<Mat<F>>,
    pub gamma: Vec<Mat<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitPosition {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum LimitVerdict {
    Exact,
    NotExact { position: LimitPosition },
    Inconclusive { reason: String },
}

impl<F: Field> FourTermSystem<F> {
    fn maps_at(&self, m: usize) -> [&Mat<F>; 3] {
        let k = m - self.a.m0;
        [&self.alpha[k], &self.beta[k], &self.gamma[k]]
    }

    /// Shapes, stagewise exactness and compatibility with the transitions.
    pub fn verify(&self) -> Result<()> {
        let m0 = self.a.m0;
        let n = self.a.dims.len();
        for s in [&self.b, &self.c, &self.d] {
            if s.m0 != m0 || s.dims.len() != n {
                return Err(Error::shape("the four systems must share their window"));
            }
        }
        if [self.alpha.len(), self.beta.len(), self.gamma.len()] != [n; 3] {
            return Err(Error::shape("one map per stage is required"));
        }
        let sys = [&self.a, &self.b, &self.c, &self.d];
        for m in m0..=self.a.m_max() {
            let maps = self.maps_at(m);
            for (i, f) in maps.iter().enumerate() {
                if f.shape() != (sys[i + 1].dim(m), sys[i].dim(m)) {
                    return Err(Error::shape(format!(
                        "map {i} at stage {m} has the wrong shape"
                    )));
                }
            }
            if four_term_failure(maps[0], maps[1], maps[2])?.is_some() {
                return Err(Error::Invalid(format!("stage {m} is not exact")));
            }
            if m > m0 {
                let prev = self.maps_at(m - 1);
                for i in 0..3 {
                    let lhs = sys[i + 1].transition(m).mul(maps[i])?;
                    let rhs = prev[i].mul(sys[i].transition(m))?;
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "map {i} does not commute with transition {m}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// First position where `0 -> A -> B -> C -> D -> 0` fails to be exact.
fn four_term_failure<F: Field>(
    alpha: &Mat<F>,
    beta: &Mat<F>,
    gamma: &Mat<F>,
) -> Result<Option<LimitPosition>> {
    let (ra, rb, rc) = (alpha.rank(), beta.rank(), gamma.rank());
    Ok(if ra != alpha.cols() {
        Some(LimitPosition::A)
    } else if !beta.mul(alpha)?.is_zero() || ra + rb != beta.cols() {
        Some(LimitPosition::B)
    } else if !gamma.mul(beta)?.is_zero() || rb + rc != gamma.cols() {
        Some(LimitPosition::C)
    } else if rc != gamma.rows() {
        Some(LimitPosition::D)
    } else {
        None
    })
}

/// Restriction of `f` to subspaces, in their reduced bases.
fn restrict_map<F: Field>(f: &Mat<F>, src: &Subspace<F>, dst: &Subspace<F>) -> Result<Mat<F>> {
    let mut cols = Vec::with_capacity(src.dim());
    for v in src.basis() {
        let w = f.apply(v);
        let c = dst
            .coordinates(&w)
            .ok_or_else(|| Error::Inconsistent("map does not preserve the stable images".into()))?;
        let field = f.field();
        cols.push(
            c.into_iter()
                .enumerate()
                .filter(|(_, x)| !field.is_zero(x))
                .collect::<Vec<_>>(),
        );
    }
    Mat::from_columns(f.field(), dst.dim(), cols)
}

/// Exactness of the limit sequence. Both Mittag-Leffler hypotheses (on `A`
/// and on `B / A`) must be detected inside the window; otherwise the verdict
/// is inconclusive. The limit is approximated by the stable images at the
/// first stage, and that sequence is checked directly.
pub fn limit_four_term<F: Field>(sys: &FourTermSystem<F>) -> Result<LimitVerdict> {
    sys.verify()?;
    let at = sys.a.m0;
    let ml_a = is_mittag_leffler(&sys.a, at)?;
    if !ml_a.holds {
        return Ok(LimitVerdict::Inconclusive {
            reason: "no Mittag-Leffler stabilization for A inside the window".into(),
        });
    }
    let images: Vec<_> = (sys.a.m0..=sys.a.m_max())
        .map(|m| Subspace::column_space(sys.maps_at(m)[0]))
        .collect();
    let (coker, _) = sys.b.quotient(&images)?;
    let ml_q = is_mittag_leffler(&coker, at)?;
    if !ml_q.holds {
        return Ok(LimitVerdict::Inconclusive {
            reason: "no Mittag-Leffler stabilization for B / A inside the window".into(),
        });
    }
    let top = sys.a.m_max();
    let stable: Vec<Subspace<F>> = [&sys.a, &sys.b, &sys.c, &sys.d]
        .iter()
        .map(|s| Ok(Subspace::column_space(&s.composite(at, top)?)))
        .collect::<Result<_>>()?;
    let maps = sys.maps_at(at);
    let restricted: Vec<Mat<F>> = (0..3)
        .map(|i| restrict_map(maps[i], &stable[i], &stable[i + 1]))
        .collect::<Result<_>>()?;
    Ok(
        match four_term_failure(&restricted[0], &restricted[1], &restricted[2])? {
            None => LimitVerdict::Exact,
            Some(position) => LimitVerdict::NotExact { position },
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStage {
    pub m: u32,
    pub dim_cohom: usize,
}

/// Dimensions of `Cohom_{k[G_m]}(V, P_{λ,m})` along a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub module: String,
    pub lambda: u64,
    pub p: u64,
    pub stages: Vec<TowerStage>,
    /// First stage from which the dimensions stay constant in the window.
    pub stabilized_at: u32,
    /// First stage with `2^{m-1}` above every weight of `V`.
    pub weight_bound_stage: u32,
    #[serde(rename = "f_V")]
    pub f_v: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Smallest `m` with `2^{m-1} > w`.
pub fn weight_bound_stage(max_weight: i64) -> u32 {
    let mut m = 1;
    while (1i64 << (m - 1)) <= max_weight {
        m += 1;
    }
    m
}

/// Checks the transitions of a tower restricted to `G_r`, as contramodules.
pub fn contra_tower(
    tower: &Tower,
    kernels: &KernelCache,
    r: u32,
) -> Result<InverseSystem<PrimeField>> {
    let kd = kernels.get(r)?;
    let stages = tower
        .stages
        .iter()
        .map(|s| Contramodule::from_comodule(&kd.restrict(s)?))
        .collect::<Result<Vec<_>>>()?;
    InverseSystem::from_contramodules(tower.m0 as usize, &stages, tower.transitions.clone())
}

/// `dim Cohom_{k[G_m]}(V, P_{λ,m})`.
pub fn cohom_dim_at(
    tower: &Tower,
    v: &RationalComodule,
    kernels: &KernelCache,
    m: u32,
) -> Result<usize> {
    let kd = kernels.get(m)?;
    let p = tower
        .stage(m)
        .ok_or_else(|| Error::Invalid(format!("stage {m} is outside the tower")))?;
    let b = Contramodule::from_comodule(&kd.restrict(p)?)?;
    Ok(cohom(&kd.restrict(v)?, &b)?.dim())
}

pub fn cohom_tower(
    catalog: &Catalog,
    kernels: &KernelCache,
    tower: &Tower,
    label: &str,
    v: &RationalComodule,
) -> Result<TowerReport> {
    let f_v = f_multiplicity(tower.lambda, v)?;
    let ms: Vec<u32> = (tower.m0..=tower.m_max()).collect();
    let dims = ms
        .par_iter()
        .map(|&m| cohom_dim_at(tower, v, kernels, m))
        .collect::<Result<Vec<_>>>()?;
    let mut k = dims.len() - 1;
    while k > 0 && dims[k - 1] == dims[k] {
        k -= 1;
    }
    let stabilized_at = ms[k];
    let bound = weight_bound_stage(v.max_weight());
    let matches = bound <= tower.m_max()
        && stabilized_at <= bound.max(tower.m0)
        && dims[dims.len() - 1] as u64 == f_v;
    Ok(TowerReport {
        module: label.to_string(),
        lambda: tower.lambda,
        p: catalog.field().p(),
        stages: ms
            .iter()
            .zip(&dims)
            .map(|(&m, &d)| TowerStage { m, dim_cohom: d })
            .collect(),
        stabilized_at,
        weight_bound_stage: bound,
        f_v,
        matches,
    })
}

/// Head of every restricted stage `P_{λ,m}` over `G_m`.
pub fn tower_heads(
    catalog: &Catalog,
    kernels: &KernelCache,
    tower: &Tower,
) -> Result<Vec<Vec<(String, usize)>>> {
    (tower.m0..=tower.m_max())
        .into_par_iter()
        .map(|m| {
            let kd = kernels.get(m)?;
            catalog.head_over_kernel(tower.stage(m).expect("in range"), &kd)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn projection(f: PrimeField, rows: usize, cols: usize) -> Mat<PrimeField> {
        Mat::from_triplets(f, rows, cols, (0..rows.min(cols)).map(|i| (i, i, 1))).unwrap()
    }

    #[test]
    fn surjective_system_stabilizes_immediately() {
        let f = f2();
        let dims = vec![1, 2, 3, 4];
        let t = (0..3)
            .map(|k| projection(f, dims[k], dims[k + 1]))
            .collect();
        let sys = InverseSystem::new(f, 0, dims, t).unwrap();
        let ml = is_mittag_leffler(&sys, 0).unwrap();
        assert!(ml.holds);
        assert_eq!(ml.stabilized_at, 1);
        let c = InverseSystem::constant(f, 1, 3, 4);
        assert!(is_mittag_leffler(&c, 1).unwrap().holds);
    }

    #[test]
    fn crafted_fixture_stabilizes_at_three() {
        // F^4 at every stage, transitions shrinking the image by one until
        // stage 3 and identities afterwards.
        let f = f2();
        let shift = Mat::from_triplets(f, 4, 4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let keep =
            Mat::from_triplets(f, 4, 4, [(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]).unwrap();
        let t = vec![shift.clone(), shift.clone(), shift, keep.clone(), keep];
        let sys = InverseSystem::new(f, 0, vec![4; 6], t).unwrap();
        let ml = is_mittag_leffler(&sys, 0).unwrap();
        assert_eq!(ml.image_dims, [4, 3, 2, 1, 1, 1]);
        assert_eq!(ml.stabilized_at, 3);
        assert!(ml.holds);
    }

    #[test]
    fn nilpotent_tower_is_not_detected() {
        let f = f2();
        let n = 6;
        let shift = Mat::from_triplets(f, n, n, (0..n - 1).map(|i| (i, i + 1, 1))).unwrap();
        let sys = InverseSystem::new(f, 0, vec![n; 4], vec![shift; 3]).unwrap();
        let ml = is_mittag_leffler(&sys, 0).unwrap();
        assert!(!ml.holds);
        assert_eq!(ml.stabilized_at, 3);
    }

    fn identity_four_term(
        f: PrimeField,
        a: InverseSystem<PrimeField>,
    ) -> FourTermSystem<PrimeField> {
        // 0 -> A -> A -> 0 -> 0 -> 0
        let n = a.dims.len();
        let zero =
            InverseSystem::new(f, a.m0, vec![0; n], vec![Mat::zeros(f, 0, 0); n - 1]).unwrap();
        FourTermSystem {
            alpha: a.dims.iter().map(|&d| Mat::identity(f, d)).collect(),
            beta: a.dims.iter().map(|&d| Mat::zeros(f, 0, d)).collect(),
            gamma: vec![Mat::zeros(f, 0, 0); n],
            b: a.clone(),
            c: zero.clone(),
            d: zero,
            a,
        }
    }

    #[test]
    fn constant_systems_have_exact_limits() {
        let f = f2();
        let sys = identity_four_term(f, InverseSystem::constant(f, 0, 3, 4));
        assert_eq!(limit_four_term(&sys).unwrap(), LimitVerdict::Exact);
    }

    #[test]
    fn adversarial_fixture_is_inconclusive() {
        // A = 0, B = C nilpotent shift, D = 0: B / A never stabilizes.
        let f = f2();
        let n = 6;
        let shift = Mat::from_triplets(f, n, n, (0..n - 1).map(|i| (i, i + 1, 1))).unwrap();
        let b = InverseSystem::new(f, 0, vec![n; 4], vec![shift; 3]).unwrap();
        let zero = InverseSystem::new(f, 0, vec![0; 4], vec![Mat::zeros(f, 0, 0); 3]).unwrap();
        let sys = FourTermSystem {
            alpha: vec![Mat::zeros(f, n, 0); 4],
            beta: vec![Mat::identity(f, n); 4],
            gamma: vec![Mat::zeros(f, 0, n); 4],
            a: zero.clone(),
            c: b.clone(),
            b,
            d: zero,
        };
        assert!(matches!(
            limit_four_term(&sys).unwrap(),
            LimitVerdict::Inconclusive { .. }
        ));
    }

    #[test]
    fn nonexact_stage_is_rejected() {
        let f = f2();
        let mut sys = identity_four_term(f, InverseSystem::constant(f, 0, 2, 3));
        sys.alpha[1] = Mat::zeros(f, 2, 2);
        assert!(limit_four_term(&sys).is_err());
    }

    #[test]
    fn weight_bounds() {
        assert_eq!(weight_bound_stage(0), 1);
        assert_eq!(weight_bound_stage(1), 2);
        assert_eq!(weight_bound_stage(2), 3);
        assert_eq!(weight_bound_stage(3), 3);
    }

    #[test]
    fn small_tower_over_g1_and_g2() {
        let cat = Catalog::new(2).unwrap();
        let kernels = KernelCache::new(cat.field());
        let tower = cat.build_tower(0, 2).unwrap();
        let sys = contra_tower(&tower, &kernels, 2).unwrap();
        assert_eq!(sys.dims(), [4, 16]);
        let r = cohom_tower(&cat, &kernels, &tower, "L0", &cat.simple(0)).unwrap();
        assert_eq!(
            r.stages.iter().map(|s| s.dim_cohom).collect::<Vec<_>>(),
            [1, 1]
        );
        assert!(r.matches);
        let r = cohom_tower(&cat, &kernels, &tower, "L1", &cat.simple(1)).unwrap();
        assert_eq!(
            r.stages.iter().map(|s| s.dim_cohom).collect::<Vec<_>>(),
            [0, 0]
        );
        assert_eq!(r.f_v, 0);
        assert!(r.matches);
        let heads = tower_heads(&cat, &kernels, &tower).unwrap();
        assert!(heads.iter().all(|h| h == &[("L0".to_string(), 1)]));
    }
}
