//! Formal characters `Σ m_w z^w` and decomposition into simple characters
//! for `p = 2`.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    mult: BTreeMap<i64, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn add(&mut self, weight: i64, m: i64) {
        let e = self.mult.entry(weight).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&weight);
        }
    }

    pub fn multiplicity(&self, weight: i64) -> i64 {
        self.mult.get(&weight).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.mult.iter().map(|(&w, &m)| (w, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.mult.keys().map(|w| w.abs()).max().unwrap_or(0)
    }

    pub fn highest_weight(&self) -> Option<i64> {
        self.mult.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Character::zero();
        for (&w1, &m1) in &self.mult {
            for (&w2, &m2) in &other.mult {
                out.add(w1 + w2, m1 * m2);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, &m) in &other.mult {
            out.add(w, -m);
        }
        out
    }

    /// Whether every multiplicity is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.mult.values().all(|&m| m > 0)
    }

    /// `ch L(μ)` in characteristic 2: `Π (z^{2^i} + z^{-2^i})` over the set
    /// bits of `μ`.
    pub fn simple_char2(mu: u64) -> Self {
        let mut ch = Character::zero();
        ch.add(0, 1);
        let mut bit = 0;
        let mut rest = mu;
        while rest > 0 {
            if rest & 1 == 1 {
                let w = 1i64 << bit;
                let mut f = Character::zero();
                f.add(w, 1);
                f.add(-w, 1);
                ch = ch.mul(&f);
            }
            rest >>= 1;
            bit += 1;
        }
        ch
    }

    /// Composition multiplicities `[V : L(μ)]` for all `μ` up to the highest
    /// weight, by peeling off the top simple character. `None` if the
    /// character is not a nonnegative combination.
    pub fn decompose_char2(&self) -> Option<BTreeMap<u64, u64>> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.highest_weight() {
            let m = rest.multiplicity(top);
            if top < 0 || m < 0 {
                return None;
            }
            let mut s = Character::zero();
            for (w, k) in Character::simple_char2(top as u64).terms() {
                s.add(w, k * m);
            }
            rest = rest.sub(&s);
            if !rest.is_effective() {
                return None;
            }
            *out.entry(top as u64).or_insert(0) += m as u64;
        }
        Some(out)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&w, &m) in &self.mult {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (w, m) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m}z")?,
                (w, 1) => write!(f, "z^{w}")?,
                (w, m) => write!(f, "{m}z^{w}")?,
            }
        }
        Ok(())
    }
}
