//! Sparse polynomials in `x_1..x_n, y_1..y_n` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector `[x_1..x_n, y_1..y_n]`.
///
/// Ordered graded reverse lexicographically over the whole vector, x exponents
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exps: SmallVec::from_elem(0, 2 * n) }
    }

    pub fn new(x: &[u16], y: &[u16]) -> Self {
        assert_eq!(x.len(), y.len(), "x and y exponent vectors differ in length");
        let mut exps = SmallVec::with_capacity(2 * x.len());
        exps.extend_from_slice(x);
        exps.extend_from_slice(y);
        Self { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn x(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn y(&self, i: usize) -> u16 {
        self.exps[self.n() + i]
    }

    pub fn x_exps(&self) -> &[u16] {
        &self.exps[..self.n()]
    }

    pub fn y_exps(&self) -> &[u16] {
        &self.exps[self.n()..]
    }

    pub fn raw(&self) -> &[u16] {
        &self.exps
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u16] {
        &mut self.exps
    }

    pub fn exponent(&self, v: Var) -> u16 {
        match v {
            Var::X(i) => self.x(i),
            Var::Y(i) => self.y(i),
        }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree {
            a: self.x_exps().iter().map(|&e| e as usize).sum(),
            b: self.y_exps().iter().map(|&e| e as usize).sum(),
        }
    }

    /// `prod e_i!`, the value of `<m, m>`.
    pub fn factorial_weight(&self) -> BigInt {
        self.exps
            .iter()
            .map(|&e| (1..=e as u64).map(BigInt::from).product::<BigInt>())
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                // reverse lex: the last differing exponent decides, smaller is bigger
                for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(x-degree, y-degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub a: usize,
    pub b: usize,
}

impl BiDegree {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }
}

/// A variable, 0-based: `X(0)` is `x_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    Y(usize),
}

/// `e (e-1) ... (e-r+1)`; zero when `r > e`.
pub fn falling_factorial(e: u16, r: u16) -> BigInt {
    if r > e {
        return BigInt::zero();
    }
    let mut acc: u128 = 1;
    for k in 0..r {
        acc *= (e - k) as u128;
    }
    BigInt::from(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn var(n: usize, v: Var) -> Self {
        let mut m = Monomial::one(n);
        match v {
            Var::X(i) => m.exps[i] = 1,
            Var::Y(i) => m.exps[n + i] = 1,
        }
        let mut p = Self::zero(n);
        p.add_term(m, BigRational::one());
        p
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::var(n, Var::X(i))
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::var(n, Var::Y(i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.n(), self.n, "monomial has the wrong number of variables");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common bi-degree of all terms, if the polynomial is nonzero and bi-homogeneous.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.n, other.n))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.exps.iter().zip(mb.exps.iter()).map(|(a, b)| a + b).collect();
                out.add_term(Monomial { exps }, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Iterated partial derivative `d^order / d var^order`.
    pub fn partial(&self, v: Var, order: u16) -> Self {
        let idx = match v {
            Var::X(i) => i,
            Var::Y(i) => self.n + i,
        };
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exps[idx];
            if e < order {
                continue;
            }
            let mut nm = m.clone();
            nm.exps[idx] = e - order;
            out.add_term(nm, c * BigRational::from_integer(falling_factorial(e, order)));
        }
        out
    }

    /// `Pi_{p,q} P = sum_i d^p/dx_i^p d^q/dy_i^q P`.
    pub fn polarized_derivative(&self, p: u16, q: u16) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            for i in 0..n {
                let (ex, ey) = (m.exps[i], m.exps[n + i]);
                if ex < p || ey < q {
                    continue;
                }
                let mut nm = m.clone();
                nm.exps[i] = ex - p;
                nm.exps[n + i] = ey - q;
                let f = falling_factorial(ex, p) * falling_factorial(ey, q);
                out.add_term(nm, c * BigRational::from_integer(f));
            }
        }
        out
    }

    /// Diagonal action: `sigma P = P(x_{sigma_1}, ..; y_{sigma_1}, ..)`, with
    /// `sigma` a permutation of `1..=n` in one-line notation.
    pub fn diagonal_action(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        let valid = sigma.len() == n
            && sigma.iter().all(|&s| {
                let ok = (1..=n).contains(&s) && !seen[s - 1];
                if ok {
                    seen[s - 1] = true;
                }
                ok
            });
        if !valid {
            return Err(Error::InvalidPermutation(sigma.to_vec()));
        }
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(n);
            for i in 0..n {
                let j = sigma[i] - 1;
                nm.exps[j] = m.exps[i];
                nm.exps[n + j] = m.exps[n + i];
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Apolar scalar product `<P, Q>`: constant term of `P(dX; dY) Q`.
    pub fn scalar_product(&self, other: &Self) -> Result<BigRational> {
        self.check_n(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = BigRational::zero();
        for (m, c) in &small.terms {
            if let Some(d) = large.terms.get(m) {
                acc += c * d * BigRational::from_integer(m.factorial_weight());
            }
        }
        Ok(acc)
    }

    /// Whether every `Pi_{p,q}` with `1 <= p+q <= deg P` annihilates `P`.
    ///
    /// Higher `p+q` annihilate any polynomial of lower total degree, so the
    /// finite sweep is conclusive.
    pub fn is_diagonal_harmonic(&self) -> bool {
        let Some(deg) = self.total_degree() else {
            return true;
        };
        for total in 1..=deg as u16 {
            for p in 0..=total {
                if !self.polarized_derivative(p, total - p).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn bidegree_components(&self) -> BTreeMap<BiDegree, MultiPoly> {
        let mut out: BTreeMap<BiDegree, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| MultiPoly::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Whether the two polynomials are rational multiples of each other (both nonzero).
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        let (Some((m0, c0)), Some(d0)) = (self.terms.iter().next(), other.terms.values().next()) else {
            return false;
        };
        if self.len() != other.len() || other.terms.keys().next() != Some(m0) {
            return false;
        }
        let ratio = d0 / c0;
        self.terms.iter().all(|(m, c)| other.terms.get(m).is_some_and(|d| *d == c * &ratio))
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (name, exps) in [("x", m.x_exps()), ("y", m.y_exps())] {
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("{name}{}", i + 1)),
                        e => factors.push(format!("{name}{}^{e}", i + 1)),
                    }
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
    x: Vec<u16>,
    y: Vec<u16>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { x: m.x_exps().to_vec(), y: m.y_exps().to_vec(), c: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = MultiPoly::zero(repr.n);
        for t in repr.terms {
            if t.x.len() != repr.n || t.y.len() != repr.n {
                return Err(serde::de::Error::custom("exponent vector length differs from n"));
            }
            let c: BigRational = t.c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(Monomial::new(&t.x, &t.y), c);
        }
        Ok(p)
    }
}
