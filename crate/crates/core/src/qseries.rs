//! Exact q-series arithmetic: Gaussian (q-binomial) coefficients,
//! q-multinomials, the q-Pochhammer symbol at -1, and the bivariate
//! subspace-lattice polynomials in `t` with q-polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{deserialize_bigint_seq, serialize_bigint_seq, LaurentPoly};

/// Polynomial in `q` with integer coefficients; `coeffs[i]` is the
/// coefficient of `q^i`. Trailing zeros are stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial `q^k`.
    pub fn q_power(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPoly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPoly::new(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lp = LaurentPoly::new(0, self.coeffs.clone());
        let s = lp.to_string().replace('t', "q");
        write!(f, "{s}")
    }
}

impl Serialize for QPoly {
    /// JSON form `{"coeffs": [c0, c1, ...]}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            #[serde(serialize_with = "serialize_bigint_seq")]
            coeffs: &'a [BigInt],
        }
        Raw {
            coeffs: &self.coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(deserialize_with = "deserialize_bigint_seq")]
            coeffs: Vec<BigInt>,
        }
        Ok(QPoly::new(Raw::deserialize(d)?.coeffs))
    }
}

/// Polynomial in `t` whose coefficients are polynomials in `q`;
/// `t_coeffs[i]` is the coefficient of `t^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPoly {
    t_coeffs: Vec<QPoly>,
}

impl BiPoly {
    pub fn new(t_coeffs: Vec<QPoly>) -> Self {
        let mut p = BiPoly { t_coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        BiPoly {
            t_coeffs: Vec::new(),
        }
    }

    pub fn constant(c: QPoly) -> Self {
        BiPoly::new(vec![c])
    }

    /// The monomial `c(q) * t^k`.
    pub fn t_monomial(c: QPoly, k: usize) -> Self {
        let mut t_coeffs = vec![QPoly::zero(); k + 1];
        t_coeffs[k] = c;
        BiPoly::new(t_coeffs)
    }

    fn normalize(&mut self) {
        while self.t_coeffs.last().is_some_and(QPoly::is_zero) {
            self.t_coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.t_coeffs.len().checked_sub(1)
    }

    pub fn t_coeff(&self, i: usize) -> QPoly {
        self.t_coeffs.get(i).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn t_coeffs(&self) -> &[QPoly] {
        &self.t_coeffs
    }

    /// Substitute an exact integer for `q`, leaving a polynomial in `t`.
    pub fn specialize(&self, q_value: &BigInt) -> LaurentPoly {
        LaurentPoly::new(0, self.t_coeffs.iter().map(|c| c.eval(q_value)).collect())
    }

    /// Substitute `t = -1`, leaving a polynomial in `q`.
    pub fn eval_t_minus_one(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, c) in self.t_coeffs.iter().enumerate() {
            if i % 2 == 0 {
                acc = &acc + c;
            } else {
                acc = &acc - c;
            }
        }
        acc
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.t_coeffs.len().max(rhs.t_coeffs.len());
        let mut t_coeffs = vec![QPoly::zero(); n];
        for (i, c) in self.t_coeffs.iter().enumerate() {
            t_coeffs[i] = &t_coeffs[i] + c;
        }
        for (i, c) in rhs.t_coeffs.iter().enumerate() {
            t_coeffs[i] = &t_coeffs[i] + c;
        }
        BiPoly::new(t_coeffs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut t_coeffs = vec![QPoly::zero(); self.t_coeffs.len() + rhs.t_coeffs.len() - 1];
        for (i, a) in self.t_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.t_coeffs.iter().enumerate() {
                t_coeffs[i + j] = &t_coeffs[i + j] + &(a * b);
            }
        }
        BiPoly::new(t_coeffs)
    }
}

/// Gaussian coefficient `[n k]_q`, computed by the q-Pascal recursion
/// `[n k] = q^k [n-1 k] + [n-1 k-1]`, so no division ever occurs.
pub fn qbinom(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    // row[j] holds [m j] while m sweeps 0..=n
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for _m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(QPoly::one());
        for j in 1..row.len() {
            let shifted = &row[j] * &QPoly::q_power(j);
            next.push(&shifted + &row[j - 1]);
        }
        next.push(QPoly::one());
        row = next;
    }
    row[k].clone()
}

/// q-multinomial `[n; k1, ..., km]_q = [n k1] [n-k1 k2] ...`.
/// The parts must sum to at most `n`.
pub fn qmultinom(n: usize, parts: &[usize]) -> Result<QPoly> {
    let total: usize = parts.iter().sum();
    if total > n {
        return Err(Error::Arity(format!(
            "multinomial parts sum to {total} > {n}"
        )));
    }
    let mut rest = n;
    let mut acc = QPoly::one();
    for &k in parts {
        acc = &acc * &qbinom(rest, k);
        rest -= k;
    }
    Ok(acc)
}

/// q-Pochhammer symbol at a = -1: `(-1;q)_n = prod_{i=0}^{n-1} (1 + q^i)`.
pub fn qpoch_minus_one(n: usize) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..n {
        let factor = &QPoly::one() + &QPoly::q_power(i);
        acc = &acc * &factor;
    }
    acc
}

/// The alternating q-binomial/Pochhammer sum
/// `sum_{k=0}^{n} (-1)^k [n k] (-1;q)_{n-k} (-1;q)_k`,
/// which vanishes identically for every n > 0.
pub fn john_identity_sum(n: usize) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::Arity("the identity requires n > 0".into()));
    }
    let mut acc = QPoly::zero();
    for k in 0..=n {
        let term = &(&qbinom(n, k) * &qpoch_minus_one(n - k)) * &qpoch_minus_one(k);
        if k % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    Ok(acc)
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// The J-Mobius polynomial of the subspace lattice of F_q^n as a bivariate
/// polynomial, summed flag-by-flag over dimension triples i <= j <= k:
/// `sum (-1)^(k-i) [n; i, j-i, k-j, n-k] q^(C(j-i,2)+C(k-j,2)) t^(3n-i-j-k)`.
pub fn m_subspace_formula(n: usize) -> BiPoly {
    let mut acc = BiPoly::zero();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                let mult = qmultinom(n, &[i, j - i, k - j, n - k])
                    .expect("parts sum to n by construction");
                let mut qpart = &mult * &QPoly::q_power(choose2(j - i) + choose2(k - j));
                if (k - i) % 2 == 1 {
                    qpart = -&qpart;
                }
                acc = &acc + &BiPoly::t_monomial(qpart, 3 * n - i - j - k);
            }
        }
    }
    acc
}

/// The same polynomial through the rank-decomposition route:
/// `sum_k [n k] t^(2(n-k)) prod_{i=0}^{n-k-1} (t - q^i) prod_{j=0}^{k-1} (1 - q^j t)`.
///
/// The second product is the reciprocal-substituted characteristic
/// polynomial of a k-dimensional subspace's down-set, cleared of the
/// t^(-k) it carries; the clearing is what turns the prefactor
/// `t^n * t^(n-k)` into `t^(2(n-k))`.
pub fn m_subspace_decomposed(n: usize) -> BiPoly {
    let t = BiPoly::t_monomial(QPoly::one(), 1);
    let mut acc = BiPoly::zero();
    for k in 0..=n {
        let mut term = BiPoly::t_monomial(qbinom(n, k), 2 * (n - k));
        for i in 0..n - k {
            let factor = &t + &BiPoly::constant(-&QPoly::q_power(i));
            term = &term * &factor;
        }
        for j in 0..k {
            let factor =
                &BiPoly::constant(QPoly::one()) + &BiPoly::t_monomial(-&QPoly::q_power(j), 1);
            term = &term * &factor;
        }
        acc = &acc + &term;
    }
    acc
}
