//! Polynomial invariants of ranked bounded posets: the classical
//! characteristic polynomial, the J-characteristic polynomial, the
//! J-Mobius polynomial with its interval decomposition, and the
//! deletion-contraction fit machinery used to show the J-polynomials do
//! not satisfy any such recurrence.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::incidence::mobius;
use crate::poly::LaurentPoly;
use crate::poset::Poset;
use crate::trincidence::j_fast;

/// A finite ranked poset with unique bottom and top, the carrier for every
/// polynomial invariant below. Construction checks boundedness and that
/// the stored ranks grade from 0 at the bottom; operations that need
/// lattice structure check it themselves.
#[derive(Debug, Clone)]
pub struct RankedLattice {
    poset: Arc<Poset>,
    bottom: usize,
    top: usize,
    rank: u32,
}

impl PartialEq for RankedLattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl RankedLattice {
    pub fn new(poset: Arc<Poset>) -> Result<Self> {
        let ranks = poset
            .ranks()
            .ok_or_else(|| Error::Rank("polynomial invariants need a ranked poset".into()))?;
        let bottom = poset.bottom().ok_or(Error::NoBounds("minimum"))?;
        let top = poset.top().ok_or(Error::NoBounds("maximum"))?;
        if ranks[bottom] != 0 {
            return Err(Error::Rank("bottom element must have rank 0".into()));
        }
        let rank = ranks[top];
        Ok(RankedLattice {
            poset,
            bottom,
            top,
            rank,
        })
    }

    /// Grade an unranked poset first, then wrap it.
    pub fn from_unranked(poset: Poset) -> Result<Self> {
        let graded = if poset.ranks().is_some() {
            poset
        } else {
            poset.graded()?
        };
        RankedLattice::new(Arc::new(graded))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Rank of the whole poset (the rank of the top element).
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn rk(&self, x: usize) -> u32 {
        self.poset.rank(x).expect("ranked by construction")
    }

    /// Corank `rk(P) - rk(x)`.
    pub fn crk(&self, x: usize) -> u32 {
        self.rank - self.rk(x)
    }

    /// `rho(x, y, z) = 3 rk(P) - rk(x) - rk(y) - rk(z)`.
    pub fn rho(&self, x: usize, y: usize, z: usize) -> u32 {
        3 * self.rank - self.rk(x) - self.rk(y) - self.rk(z)
    }

    pub fn product(&self, other: &RankedLattice) -> RankedLattice {
        RankedLattice::new(Arc::new(self.poset.product(&other.poset)))
            .expect("product of bounded ranked posets")
    }
}

/// Classical characteristic polynomial
/// `chi(L, t) = sum_x mu(bottom, x) t^(rk(L) - rk(x))`.
pub fn char_poly(l: &RankedLattice) -> LaurentPoly {
    let mu = mobius(l.poset());
    let mut acc = LaurentPoly::zero();
    for x in 0..l.poset().size() {
        if !l.poset().leq(l.bottom(), x) {
            continue;
        }
        let c = mu.value(l.bottom(), x).expect("flag").clone();
        acc = &acc + &LaurentPoly::monomial(c, l.crk(x) as i64);
    }
    acc
}

/// J-characteristic polynomial
/// `(-1)^rk(L) sum_x J(bottom, x, top) t^(rk(L) - rk(x))`.
pub fn j_char_poly(l: &RankedLattice) -> LaurentPoly {
    let j = j_fast(l.poset());
    let mut acc = LaurentPoly::zero();
    for x in 0..l.poset().size() {
        if !(l.poset().leq(l.bottom(), x) && l.poset().leq(x, l.top())) {
            continue;
        }
        let c = j.value(l.bottom(), x, l.top()).expect("flag").clone();
        acc = &acc + &LaurentPoly::monomial(c, l.crk(x) as i64);
    }
    if l.rank() % 2 == 1 {
        acc = -acc;
    }
    acc
}

/// J-Mobius polynomial `sum_{(x,y,z)} J(x, y, z) t^(rho(x,y,z))` over all
/// weakly increasing triples.
pub fn j_mobius_poly(l: &RankedLattice) -> LaurentPoly {
    let j = j_fast(l.poset());
    let mut coeffs = vec![BigInt::zero(); 3 * l.rank() as usize + 1];
    for ((x, y, z), v) in l.poset().flags3().zip(j.values()) {
        coeffs[l.rho(x, y, z) as usize] += v;
    }
    LaurentPoly::new(0, coeffs)
}

/// The interval decomposition of the J-Mobius polynomial:
/// `t^rk(L) sum_y t^crk(y) chi(U_y, t) chi(D_y*, 1/t)` where `U_y` is the
/// upper interval at `y` and `D_y*` the order-reversed lower interval.
/// Requires a lattice; equals [`j_mobius_poly`] exactly, and the Laurent
/// intermediate always clears back to an ordinary polynomial.
pub fn m_decomposition(l: &RankedLattice) -> Result<LaurentPoly> {
    if !l.poset().is_lattice() {
        return Err(Error::NotALattice(
            "the decomposition sums over lattice intervals".into(),
        ));
    }
    let mut acc = LaurentPoly::zero();
    for y in 0..l.poset().size() {
        let (upper, _) = l.poset().upper_interval(y);
        let chi_up = char_poly(&RankedLattice::new(Arc::new(upper))?);
        let (lower, _) = l.poset().lower_interval(y);
        let flipped = lower.opposite()?;
        let chi_down = char_poly(&RankedLattice::new(Arc::new(flipped))?);
        let term = &chi_up * &chi_down.reciprocal_subst();
        acc = &acc + &term.shift(l.crk(y) as i64);
    }
    let out = acc.shift(l.rank() as i64);
    assert!(
        out.min_exp() >= 0,
        "decomposition must clear negative exponents"
    );
    Ok(out)
}

/// On a semimodular lattice the J-characteristic coefficients are
/// nonnegative, and strictly positive in every degree `0..=rk` when the
/// lattice is geometric. Errors when the lattice is not semimodular.
pub fn check_positive_coeffs(l: &RankedLattice) -> Result<bool> {
    if !l.poset().is_semimodular()? {
        return Err(Error::Hypothesis(
            "positivity is only guaranteed on semimodular lattices".into(),
        ));
    }
    let jc = j_char_poly(l);
    if l.poset().is_geometric()? {
        Ok((0..=l.rank() as i64).all(|k| jc.coeff(k).is_positive()))
    } else {
        Ok(jc.terms().all(|(_, c)| c.is_positive()))
    }
}

/// `M(L, 1) = 0` for every lattice with at least two elements.
pub fn check_root_at_one(l: &RankedLattice) -> Result<bool> {
    if l.poset().size() < 2 {
        return Err(Error::Hypothesis(
            "the root at 1 needs at least two elements".into(),
        ));
    }
    Ok(j_mobius_poly(l).eval_i64(1).is_zero())
}

/// `M(L, -1)`; zero is guaranteed only for modular geometric lattices.
pub fn eval_at_minus_one(l: &RankedLattice) -> BigInt {
    j_mobius_poly(l).eval_i64(-1)
}

// ----- deletion-contraction fit ------------------------------------------

/// One observation `f(M) = ? a f(M \ e) + b f(M / e)`.
#[derive(Debug, Clone)]
pub struct FitTriple {
    pub whole: LaurentPoly,
    pub deletion: LaurentPoly,
    pub contraction: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TutteFit {
    /// Coefficients satisfying every triple exactly.
    Fit { a: LaurentPoly, b: LaurentPoly },
    /// A certified obstruction.
    Contradiction(FitContradiction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitContradiction {
    /// Deletion and contraction values share a root where the whole value
    /// does not vanish, so no polynomial coefficients of any degree exist.
    /// `left_value` is the whole value at that point.
    CommonRoot {
        triple_index: usize,
        point: i64,
        left_value: BigInt,
    },
    /// The coefficient equations admit no solution in integer polynomials
    /// of degree at most 2.
    Inconsistent,
}

/// Decide whether constants, or failing that integer polynomials of degree
/// at most 2, satisfy `whole = a * deletion + b * contraction` across all
/// triples. Returns either the coefficients or a certified contradiction.
pub fn tutte_grothendieck_fit(triples: &[FitTriple]) -> Result<TutteFit> {
    if triples.is_empty() {
        return Err(Error::Arity(
            "need at least one deletion-contraction triple".into(),
        ));
    }
    for deg in [0usize, 2] {
        if let Some((a, b)) = solve_fit(triples, deg) {
            return Ok(TutteFit::Fit { a, b });
        }
    }
    // Certificate hunt: a common root of deletion and contraction where the
    // whole value is nonzero rules out coefficients of every degree.
    for (i, t) in triples.iter().enumerate() {
        let ordinary =
            t.whole.min_exp() >= 0 && t.deletion.min_exp() >= 0 && t.contraction.min_exp() >= 0;
        for point in [-1i64, 1, -2, 2, 0] {
            if !ordinary && point.unsigned_abs() != 1 {
                continue;
            }
            if t.deletion.eval_i64(point).is_zero()
                && t.contraction.eval_i64(point).is_zero()
                && !t.whole.eval_i64(point).is_zero()
            {
                return Ok(TutteFit::Contradiction(FitContradiction::CommonRoot {
                    triple_index: i,
                    point,
                    left_value: t.whole.eval_i64(point),
                }));
            }
        }
    }
    Ok(TutteFit::Contradiction(FitContradiction::Inconsistent))
}

/// Solve for `a`, `b` with degree bound `deg` by exact rational
/// elimination on the coefficient equations; returns integer-polynomial
/// solutions only.
fn solve_fit(triples: &[FitTriple], deg: usize) -> Option<(LaurentPoly, LaurentPoly)> {
    let unknowns = 2 * (deg + 1); // a_0..a_deg, b_0..b_deg
    let mut rows: Vec<Vec<Frac>> = Vec::new();
    for t in triples {
        let lo = t
            .whole
            .min_exp()
            .min(t.deletion.min_exp())
            .min(t.contraction.min_exp());
        let hi = t
            .whole
            .degree()
            .unwrap_or(0)
            .max(t.deletion.degree().unwrap_or(0) + deg as i64)
            .max(t.contraction.degree().unwrap_or(0) + deg as i64);
        for e in lo..=hi {
            // coefficient of t^e in a*deletion + b*contraction - whole = 0
            let mut row = vec![Frac::zero(); unknowns + 1];
            for k in 0..=deg {
                row[k] = Frac::from_bigint(t.deletion.coeff(e - k as i64));
                row[deg + 1 + k] = Frac::from_bigint(t.contraction.coeff(e - k as i64));
            }
            row[unknowns] = Frac::from_bigint(t.whole.coeff(e));
            rows.push(row);
        }
    }
    let solution = solve_rational(rows, unknowns)?;
    let mut ints = Vec::with_capacity(unknowns);
    for f in solution {
        ints.push(f.into_integer()?);
    }
    let a = LaurentPoly::new(0, ints[..=deg].to_vec());
    let b = LaurentPoly::new(0, ints[deg + 1..].to_vec());
    for t in triples {
        if &(&a * &t.deletion) + &(&b * &t.contraction) != t.whole {
            return None;
        }
    }
    Some((a, b))
}

/// Gaussian elimination over exact rationals; free variables are set to
/// zero. Returns `None` when the system is inconsistent.
#[allow(clippy::needless_range_loop)]
fn solve_rational(mut rows: Vec<Vec<Frac>>, unknowns: usize) -> Option<Vec<Frac>> {
    let mut pivot_of_col = vec![usize::MAX; unknowns];
    let mut r = 0;
    for c in 0..unknowns {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.div(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in 0..=unknowns {
                    let sub = rows[r][k].mul(&factor);
                    rows[i][k] = rows[i][k].sub(&sub);
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    for row in &rows {
        if row[..unknowns].iter().all(Frac::is_zero) && !row[unknowns].is_zero() {
            return None;
        }
    }
    let mut out = vec![Frac::zero(); unknowns];
    for c in 0..unknowns {
        if pivot_of_col[c] != usize::MAX {
            out[c] = rows[pivot_of_col[c]][unknowns].clone();
        }
    }
    Some(out)
}

/// Minimal exact rational: reduced, positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Frac {
    num: BigInt,
    den: BigInt,
}

impl Frac {
    fn zero() -> Self {
        Frac {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn from_bigint(n: BigInt) -> Self {
        Frac {
            num: n,
            den: BigInt::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(mut self) -> Self {
        if self.den.is_negative() {
            self.num = -self.num;
            self.den = -self.den.clone();
        }
        let g = gcd(self.num.abs(), self.den.clone());
        if !g.is_one() && !g.is_zero() {
            self.num /= &g;
            self.den /= &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
        self
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalize()
    }

    fn div(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
        .normalize()
    }

    fn sub(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.den - &o.num * &self.den,
            den: &self.den * &o.den,
        }
        .normalize()
    }

    fn into_integer(self) -> Option<BigInt> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            None
        }
    }
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}
