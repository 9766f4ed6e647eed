//! Exact bivariate Laurent polynomials in `q` and `t`.
//!
//! Terms are kept in a [`BTreeMap`] keyed by [`QtExp`], whose ordering is
//! ascending `(e_t, e_q)`. That ordering is also the serialized ordering, so two
//! equal polynomials always produce identical JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `t^t q^q`. Ordered by `t` first, then `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QtExp {
    pub t: i64,
    pub q: i64,
}

/// Laurent polynomial in `q, t` with arbitrary precision integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QtLaurent {
    terms: BTreeMap<QtExp, BigInt>,
}

impl QtLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `c * q^eq * t^et`.
    pub fn monomial(c: BigInt, eq: i64, et: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(QtExp { t: et, q: eq }, c);
        p
    }

    /// Polynomial in `q` alone from coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(QtExp { t: 0, q: e as i64 }, BigInt::from(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (QtExp, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: QtExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical ascending `(e_t, e_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&QtExp, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `t^et q^eq`.
    pub fn coefficient(&self, et: i64, eq: i64) -> BigInt {
        self.terms
            .get(&QtExp { t: et, q: eq })
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_univariate_q(&self) -> bool {
        self.terms.keys().all(|e| e.t == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Sum of all coefficients, i.e. the value at `q = t = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Largest `q` exponent (None for zero).
    pub fn q_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.q).max()
    }

    pub fn q_low_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.q).min()
    }

    pub fn t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.t).max()
    }

    /// Exchange the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (QtExp { t: e.q, q: e.t }, c.clone())),
        )
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: i64, dt: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (QtExp { t: e.t + dt, q: e.q + dq }, c.clone()))
                .collect(),
        }
    }

    /// Integer power. Negative exponents are only allowed for monomials.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            if !self.is_monomial() {
                return Err(Error::NonMonomialInverse);
            }
            let (e, c) = self.terms.iter().next().expect("monomial");
            if !c.abs().is_one() {
                return Err(Error::NonMonomialInverse);
            }
            let k = -exp;
            let sign = if c.is_negative() && k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            return Ok(Self::monomial(sign, -e.q * k, -e.t * k));
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Substitute `t = q^{-1}`.
    pub fn specialize_t_to_q_inverse(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (QtExp { t: 0, q: e.q - e.t }, c.clone())),
        )
    }

    /// Apply `(q d/dq)^power` to a Laurent polynomial in `q` alone.
    pub fn euler_apply(&self, power: u32) -> Result<Self> {
        if power.is_multiple_of(2) {
            return Err(Error::EvenEulerPower(power));
        }
        if !self.is_univariate_q() {
            return Err(Error::NotUnivariate);
        }
        Ok(Self::from_terms(self.terms.iter().map(|(e, c)| {
            let m = BigInt::from(e.q);
            (*e, c * Pow::pow(&m, power))
        })))
    }

    /// Exact division of univariate Laurent polynomials in `q`.
    pub fn div_exact_q(&self, divisor: &Self) -> Result<Self> {
        if !self.is_univariate_q() || !divisor.is_univariate_q() {
            return Err(Error::NotUnivariate);
        }
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d_hi = divisor.q_degree().expect("nonzero");
        let d_lo = divisor.q_low_degree().expect("nonzero");
        let d_lead = divisor.coefficient(0, d_hi);
        let floor = self.q_low_degree().expect("nonzero") - d_lo;

        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_hi) = rem.q_degree() {
            let shift = r_hi - d_hi;
            if shift < floor {
                return Err(Error::InexactDivision(format!(
                    "remainder {rem} left when dividing by {divisor}"
                )));
            }
            let lead = rem.coefficient(0, r_hi);
            let (c, r) = lead.div_rem(&d_lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "leading coefficient {lead} not divisible by {d_lead}"
                )));
            }
            let term = Self::monomial(c, shift, 0);
            rem = &rem - &(&term * divisor);
            quot += term;
        }
        Ok(quot)
    }

    /// Evaluate at rational `q`, `t`. Both must be nonzero when negative
    /// exponents are present.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let v = BigRational::from_integer(c.clone()) * rat_pow(q, e.q) * rat_pow(t, e.t);
            acc += v;
        }
        acc
    }
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        Pow::pow(x, e as u64)
    } else {
        Pow::pow(x.recip(), (-e) as u64)
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn q_integer(k: usize) -> QtLaurent {
    QtLaurent::from_q_coeffs(std::iter::repeat_n(1, k))
}

/// Gaussian binomial coefficient, via the q-Pascal recurrence
/// `[m, k] = [m-1, k-1] + q^k [m-1, k]`.
pub fn q_binomial(m: i64, k: i64) -> Result<QtLaurent> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::BinomialRange { m, k });
    }
    let (m, k) = (m as usize, k as usize);
    // row[j] = [i choose j]_q
    let mut row: Vec<QtLaurent> = vec![QtLaurent::one()];
    for i in 1..=m {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let left = if j >= 1 { row[j - 1].clone() } else { QtLaurent::zero() };
            let right = if j < i { row[j].shift(j as i64, 0) } else { QtLaurent::zero() };
            next.push(left + right);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// q-Catalan number `[2n choose n]_q / [n+1]_q`.
pub fn q_catalan(n: usize) -> Result<QtLaurent> {
    let binom = q_binomial(2 * n as i64, n as i64)?;
    binom
        .div_exact_q(&q_integer(n + 1))
        .map_err(|e| Error::Internal(format!("q-Catalan division: {e}")))
}

impl AddAssign for QtLaurent {
    fn add_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<'a> AddAssign<&'a QtLaurent> for QtLaurent {
    fn add_assign(&mut self, rhs: &'a QtLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for QtLaurent {
    type Output = QtLaurent;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a> Add<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn add(self, rhs: &'a QtLaurent) -> QtLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for QtLaurent {
    type Output = QtLaurent;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for QtLaurent {
    type Output = QtLaurent;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn sub(self, rhs: &'a QtLaurent) -> QtLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a QtLaurent> for &'a QtLaurent {
    type Output = QtLaurent;
    fn mul(self, rhs: &'a QtLaurent) -> QtLaurent {
        let mut out = QtLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(QtExp { t: ea.t + eb.t, q: ea.q + eb.q }, ca * cb);
            }
        }
        out
    }
}

impl Mul for QtLaurent {
    type Output = QtLaurent;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl std::iter::Sum for QtLaurent {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(QtLaurent::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QtLaurent {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(QtLaurent::one(), |a, b| a * b)
    }
}

impl fmt::Display for QtLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first reads more naturally.
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (name, k) in [("t", e.t), ("q", e.q)] {
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    k => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    t: i64,
    q: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct QtRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for QtLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QtRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { t: e.t, q: e.q, c: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QtLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = QtRepr::deserialize(d)?;
        let mut p = QtLaurent::zero();
        for t in repr.terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(QtExp { t: t.t, q: t.q }, c);
        }
        Ok(p)
    }
}
