//! The classical incidence algebra of a finite poset: functions on weakly
//! increasing pairs with convolution, the Kronecker delta, the zeta
//! function and its convolution inverse the Mobius function, plus the
//! classical identities used for verification (Hall chain sums, Rota
//! cross-cuts on intervals, and Weisner sums).

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{Flag2, Poset};

/// Coefficient ring bound: exact, clonable, with ring operations.
pub trait Ring:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Zero
        + One
{
}

pub(crate) fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exact-valued function on the weakly increasing pairs of a poset.
/// Immutable once built; values are stored densely in flag order.
#[derive(Debug, Clone)]
pub struct IncFn2<R = BigInt> {
    poset: Arc<Poset>,
    values: Vec<R>,
}

impl<R: Ring> PartialEq for IncFn2<R> {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.values == other.values
    }
}

impl<R: Ring> IncFn2<R> {
    pub fn from_fn<F: FnMut(usize, usize) -> R>(poset: &Arc<Poset>, mut f: F) -> Self {
        let values = poset.flags2().map(|(x, y)| f(x, y)).collect();
        IncFn2 {
            poset: Arc::clone(poset),
            values,
        }
    }

    /// The Kronecker delta: 1 on the diagonal, 0 elsewhere.
    pub fn delta(poset: &Arc<Poset>) -> Self {
        IncFn2::from_fn(poset, |x, y| if x == y { R::one() } else { R::zero() })
    }

    /// The constant function 1 on all flags.
    pub fn zeta(poset: &Arc<Poset>) -> Self {
        IncFn2::from_fn(poset, |_, _| R::one())
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// Value at a flag; errors off the flag set.
    pub fn value(&self, x: usize, y: usize) -> Result<&R> {
        match self.poset.flag2_index(x, y) {
            Some(i) => Ok(&self.values[i]),
            None => Err(Error::Order(x, y)),
        }
    }

    #[inline]
    pub(crate) fn at(&self, x: usize, y: usize) -> &R {
        &self.values[self.poset.idx2(x, y)]
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// Convolution `(f * g)(x, y) = sum_{x <= a <= y} f(x, a) g(a, y)`.
    pub fn convolve(&self, g: &IncFn2<R>) -> Result<IncFn2<R>> {
        if !same_poset(&self.poset, &g.poset) {
            return Err(Error::PosetMismatch);
        }
        let p = &self.poset;
        let values = p
            .flags2()
            .map(|(x, y)| {
                let mut acc = R::zero();
                for &a in p.up_set(x) {
                    if p.leq(a, y) {
                        acc = acc + self.at(x, a).clone() * g.at(a, y).clone();
                    }
                }
                acc
            })
            .collect();
        Ok(IncFn2 {
            poset: Arc::clone(p),
            values,
        })
    }

    pub fn pointwise_add(&self, g: &IncFn2<R>) -> Result<IncFn2<R>> {
        if !same_poset(&self.poset, &g.poset) {
            return Err(Error::PosetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(IncFn2 {
            poset: Arc::clone(&self.poset),
            values,
        })
    }

    pub fn negate(&self) -> IncFn2<R> {
        IncFn2 {
            poset: Arc::clone(&self.poset),
            values: self.values.iter().map(|v| -v.clone()).collect(),
        }
    }

    /// The pair `(f_P x g_Q)((x1,x2),(y1,y2)) = f(x1,y1) g(x2,y2)` on the
    /// product poset (element `(a, b)` at index `a * |Q| + b`).
    pub fn tensor(f: &IncFn2<R>, g: &IncFn2<R>) -> IncFn2<R> {
        let prod = Arc::new(f.poset.product(&g.poset));
        let qs = g.poset.size();
        IncFn2::from_fn(&prod, |x, y| {
            f.at(x / qs, y / qs).clone() * g.at(x % qs, y % qs).clone()
        })
    }
}

/// The Mobius function: the unique two-sided convolution inverse of zeta,
/// computed by the interval recursion `mu(x,x) = 1`,
/// `mu(x,y) = -sum_{x <= a < y} mu(x,a)`.
pub fn mobius(poset: &Arc<Poset>) -> IncFn2<BigInt> {
    let p = poset.as_ref();
    let n = p.size();
    let mut topo_pos = vec![0usize; n];
    for (i, &x) in p.topo().iter().enumerate() {
        topo_pos[x] = i;
    }
    let mut values = vec![BigInt::zero(); p.flag2_count()];
    for x in 0..n {
        let mut ups: Vec<usize> = p.up_set(x).to_vec();
        ups.sort_by_key(|&y| topo_pos[y]);
        for &y in &ups {
            if y == x {
                values[p.idx2(x, x)] = BigInt::one();
                continue;
            }
            let mut acc = BigInt::zero();
            for &a in p.down_set(y) {
                if a != y && p.leq(x, a) {
                    acc += &values[p.idx2(x, a)];
                }
            }
            values[p.idx2(x, y)] = -acc;
        }
    }
    IncFn2 {
        poset: Arc::clone(poset),
        values,
    }
}

/// Hall's alternating chain-count sum `sum_i (-1)^i c_i(x, y)`, which
/// recovers `mu(x, y)` without running the Mobius recursion.
pub fn hall_sum(p: &Poset, x: usize, y: usize) -> Result<BigInt> {
    let counts = p.chain_count_vec(x, y)?;
    let mut acc = BigInt::zero();
    for (i, c) in counts.iter().enumerate() {
        if i % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    Lower,
    Upper,
}

/// A cross-cut of an interval `[x, y]`: a subset that every maximal chain
/// of the interval must pass through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCut {
    pub kind: CutKind,
    pub interval: Flag2,
    pub members: Vec<usize>,
}

impl CrossCut {
    pub fn lower(x: usize, y: usize, members: Vec<usize>) -> Self {
        CrossCut {
            kind: CutKind::Lower,
            interval: (x, y),
            members,
        }
    }

    pub fn upper(x: usize, y: usize, members: Vec<usize>) -> Self {
        CrossCut {
            kind: CutKind::Upper,
            interval: (x, y),
            members,
        }
    }

    /// Check the defining condition. For a lower cut S of `[x, y]`:
    /// `S` avoids `x`, and every `b` in `[x, y]` outside `S ∪ {x}` has some
    /// `a` in `S` with `a < b`. Upper cuts satisfy the order dual.
    pub fn validate(&self, p: &Poset) -> Result<()> {
        let (x, y) = self.interval;
        if !p.leq(x, y) {
            return Err(Error::Order(x, y));
        }
        let interval = p.interval_elements(x, y)?;
        for &m in &self.members {
            if !interval.contains(&m) {
                return Err(Error::InvalidCrossCut(format!(
                    "{m} is outside the interval [{x},{y}]"
                )));
            }
        }
        match self.kind {
            CutKind::Lower => {
                if self.members.contains(&x) {
                    return Err(Error::InvalidCrossCut(format!(
                        "lower cut contains the bottom {x}"
                    )));
                }
                for &b in &interval {
                    if b == x || self.members.contains(&b) {
                        continue;
                    }
                    if !self.members.iter().any(|&a| p.lt(a, b)) {
                        return Err(Error::InvalidCrossCut(format!(
                            "{b} is not above any cut member"
                        )));
                    }
                }
            }
            CutKind::Upper => {
                if self.members.contains(&y) {
                    return Err(Error::InvalidCrossCut(format!(
                        "upper cut contains the top {y}"
                    )));
                }
                for &a in &interval {
                    if a == y || self.members.contains(&a) {
                        continue;
                    }
                    if !self.members.iter().any(|&b| p.lt(a, b)) {
                        return Err(Error::InvalidCrossCut(format!(
                            "{a} is not below any cut member"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The atoms of `[x, y]` as a lower cross-cut.
pub fn atom_lower_cut(p: &Poset, x: usize, y: usize) -> Result<CrossCut> {
    Ok(CrossCut::lower(x, y, p.interval_atoms(x, y)?))
}

/// The coatoms of `[x, y]` as an upper cross-cut.
pub fn coatom_upper_cut(p: &Poset, x: usize, y: usize) -> Result<CrossCut> {
    Ok(CrossCut::upper(x, y, p.interval_coatoms(x, y)?))
}

const MAX_CUT_MEMBERS: usize = 25;

/// Rota's cross-cut sum over an interval of a lattice. For a lower cut `S`
/// of `[x, y]` this is `sum_{A ⊆ S, join A = y} (-1)^|A|` with the empty
/// join taken as `x`; upper cuts dually count subsets with meet `x`.
/// Equals `mu(x, y)`.
pub fn crosscut_sum(p: &Poset, cut: &CrossCut) -> Result<BigInt> {
    cut.validate(p)?;
    let (x, y) = cut.interval;
    let k = cut.members.len();
    if k > MAX_CUT_MEMBERS {
        return Err(Error::SizeBound(format!("cross-cut with {k} members")));
    }
    let mut acc = BigInt::zero();
    for mask in 0u64..(1u64 << k) {
        let subset = cut
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &m)| m);
        let hit = match cut.kind {
            CutKind::Lower => p.join_all(subset, x)? == y,
            CutKind::Upper => p.meet_all(subset, y)? == x,
        };
        if hit {
            if mask.count_ones() % 2 == 0 {
                acc += 1;
            } else {
                acc -= 1;
            }
        }
    }
    Ok(acc)
}

/// Weisner's sum `sum_{x ^ a = bottom} mu(x, top)` over a finite lattice,
/// for any `a` other than the top. Always zero when the lattice has at
/// least two elements.
pub fn weisner_sum(poset: &Arc<Poset>, a: usize) -> Result<BigInt> {
    let p = poset.as_ref();
    if !p.is_lattice() {
        return Err(Error::NotALattice("Weisner sums need a lattice".into()));
    }
    let bottom = p.bottom().ok_or(Error::NoBounds("minimum"))?;
    let top = p.top().ok_or(Error::NoBounds("maximum"))?;
    if a == top {
        return Err(Error::BadElement(
            "Weisner's sum requires a below the top".into(),
        ));
    }
    let mu = mobius(poset);
    let mut acc = BigInt::zero();
    for x in 0..p.size() {
        if p.meet(x, a)? == bottom {
            acc += mu.at(x, top);
        }
    }
    Ok(acc)
}
