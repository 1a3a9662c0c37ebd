//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are arbitrary-precision integers and exponents may be
//! negative. The zero polynomial is the empty coefficient vector with
//! `min_exp = 0`; every other value keeps its leading and trailing
//! coefficients nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// Build from a coefficient vector; `coeffs[i]` is the coefficient of
    /// `t^(min_exp + i)`. Normalizes by stripping zero ends.
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(BigInt::from(c))
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(BigInt::one(), 1)
    }

    /// Convenience for tests and builders: ordinary polynomial from small
    /// coefficients, `coeffs[i]` the coefficient of `t^(min_exp + i)`.
    pub fn from_ints(min_exp: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Largest exponent with nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Iterate `(exponent, coefficient)` pairs of nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute `t := t^(-1)`, mapping sum c_k t^k to sum c_k t^(-k).
    pub fn reciprocal_subst(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs: Vec<BigInt> = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            min_exp: -(self.min_exp + self.coeffs.len() as i64 - 1),
            coeffs,
        }
    }

    /// Evaluate at an exact integer point.
    ///
    /// Negative exponents are only meaningful at `t = 1` or `t = -1`
    /// (the only integers whose powers stay integral); evaluation of a
    /// polynomial with `min_exp < 0` anywhere else panics.
    pub fn eval(&self, v: &BigInt) -> BigInt {
        if self.min_exp < 0 {
            assert!(
                v.magnitude() == BigInt::one().magnitude(),
                "cannot evaluate negative exponents at t = {v}"
            );
            // v = 1 or -1: t^k only depends on the parity of k.
            let negative_base = v.is_negative();
            let mut acc = BigInt::zero();
            for (exp, c) in self.terms() {
                if negative_base && exp.rem_euclid(2) == 1 {
                    acc -= c;
                } else {
                    acc += c;
                }
            }
            return acc;
        }
        // Horner from the top term down to t^0, then multiply in t^min_exp.
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        let mut power = BigInt::one();
        for _ in 0..self.min_exp {
            power *= v;
        }
        acc * power
    }

    pub fn eval_i64(&self, v: i64) -> BigInt {
        self.eval(&BigInt::from(v))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; `None` when the remainder is nonzero or `div` is zero.
    pub fn div_exact(&self, div: &LaurentPoly) -> Option<LaurentPoly> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dn = div.coeffs.len();
        if rem.len() < dn {
            return None;
        }
        let lead = &div.coeffs[dn - 1];
        let mut quot = vec![BigInt::zero(); rem.len() - dn + 1];
        for qi in (0..quot.len()).rev() {
            let top = rem[qi + dn - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer_div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            for (k, dc) in div.coeffs.iter().enumerate() {
                let sub = dc * &q;
                rem[qi + k] -= sub;
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::new(self.min_exp - div.min_exp, quot))
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi =
            (self.min_exp + self.coeffs.len() as i64).max(rhs.min_exp + rhs.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_exp - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_exp - lo) as usize + i] += c;
        }
        LaurentPoly::new(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
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
        LaurentPoly::new(self.min_exp + rhs.min_exp, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `t^3 - t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.min_exp + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || exp == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{exp}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&v.to_string()).map_err(S::Error::custom)?;
    n.serialize(s)
}

pub(crate) fn deserialize_bigint<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<BigInt, D::Error> {
    let n = serde_json::Number::deserialize(d)?;
    BigInt::from_str(&n.to_string())
        .map_err(|_| D::Error::custom("expected an integer coefficient"))
}

pub(crate) fn serialize_bigint_seq<S: Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Wrap<'a>(#[serde(serialize_with = "serialize_bigint")] &'a BigInt);
    s.collect_seq(v.iter().map(Wrap))
}

pub(crate) fn deserialize_bigint_seq<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    struct Wrap(#[serde(deserialize_with = "deserialize_bigint")] BigInt);
    let v = Vec::<Wrap>::deserialize(d)?;
    Ok(v.into_iter().map(|w| w.0).collect())
}

impl Serialize for LaurentPoly {
    /// JSON form `{"min_exp": m, "coeffs": [c0, c1, ...]}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("min_exp", &self.min_exp)?;
        struct Coeffs<'a>(&'a [BigInt]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint_seq(self.0, s)
            }
        }
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            min_exp: i64,
            #[serde(deserialize_with = "deserialize_bigint_seq")]
            coeffs: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(LaurentPoly::new(raw.min_exp, raw.coeffs))
    }
}
