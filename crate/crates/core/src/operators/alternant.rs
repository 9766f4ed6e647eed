//! Alternating polynomials stored by their canonical monomials.
//!
//! An alternant is `sum_m c_m A(m)` where `A(m) = sum_sigma sign(sigma) sigma(m)`
//! and `m` runs over monomials whose exponent pairs `(x_i, y_i)` strictly
//! decrease with `i`. Distinct canonical monomials give alternants with
//! disjoint supports, so ranks can be computed on this compressed form. Every
//! operator in this module commutes with the diagonal action and is applied to
//! the canonical monomials only, then re-canonicalized.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mvpoly::{falling_factorial, BiDegree, Monomial, MultiPoly};
use crate::partitions::Partition;

use super::{OpGen, OpKind, OperatorWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Sorts the exponent pairs into strictly decreasing order. Returns the sign
/// of the sorting permutation, or `None` when two pairs coincide.
pub(crate) fn canonicalize(exps: &mut [u16]) -> Option<bool> {
    let n = exps.len() / 2;
    let mut negative = false;
    for i in 1..n {
        let mut j = i;
        while j > 0 {
            let prev = (exps[j - 1], exps[n + j - 1]);
            let cur = (exps[j], exps[n + j]);
            if prev == cur {
                return None;
            }
            if prev > cur {
                break;
            }
            exps.swap(j - 1, j);
            exps.swap(n + j - 1, n + j);
            negative = !negative;
            j -= 1;
        }
    }
    // insertion stops early, so duplicates further left are caught by the final scan
    for i in 1..n {
        if (exps[i - 1], exps[n + i - 1]) == (exps[i], exps[n + i]) {
            return None;
        }
    }
    Some(negative)
}

/// All permutations of `0..n` in one-line notation with their signs (`true` = odd).
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    out.push((perm.clone(), odd));
    let mut i = 0;
    // Heap's algorithm: each step is a single transposition.
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            out.push((perm.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl AltPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `c A(m)` for an arbitrary monomial `m`.
    pub fn from_monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(m.n());
        p.add_monomial(m, c);
        p
    }

    /// Adds `c A(m)`, canonicalizing `m`.
    pub fn add_monomial(&mut self, mut m: Monomial, c: BigInt) {
        assert_eq!(m.n(), self.n, "monomial has the wrong number of variables");
        if c.is_zero() {
            return;
        }
        match canonicalize(m.raw_mut()) {
            None => {}
            Some(neg) => self.add_canonical(m, if neg { -c } else { c }),
        }
    }

    fn add_canonical(&mut self, m: Monomial, c: BigInt) {
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

    /// The alternant `Delta_mu`: cell `j` (row-major) contributes
    /// `x^{coleg} y^{coarm}` to variable `n - j`.
    pub fn partition_alternant(mu: &Partition) -> Self {
        let n = mu.size();
        let mut m = Monomial::one(n);
        for (j, (col, row)) in mu.cells().enumerate() {
            let var = n - 1 - j;
            m.raw_mut()[var] = row as u16;
            m.raw_mut()[n + var] = col as u16;
        }
        Self::from_monomial(m, BigInt::one())
    }

    pub fn vandermonde(n: usize) -> Self {
        if n == 0 {
            return Self::zero(0);
        }
        Self::partition_alternant(&Partition::new(vec![1; n]).expect("column partition"))
    }

    /// Reads an alternating polynomial back into compressed form.
    pub fn from_alternating(p: &MultiPoly) -> Result<Self> {
        let mut out = Self::zero(p.n());
        for (m, c) in p.terms() {
            let mut probe = m.clone();
            if canonicalize(probe.raw_mut()) == Some(false) && probe == *m {
                if !c.denom().is_one() {
                    return Err(Error::Precondition("alternant coefficients must be integers".into()));
                }
                out.add_canonical(m.clone(), c.numer().clone());
            }
        }
        if out.expand() != *p {
            return Err(Error::Precondition("polynomial is not alternating".into()));
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of canonical monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_canonical(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    /// Applies `sum_i v_i d_{x_i}^r d_{y_i}^s`, with `v_i = y_i`, `x_i` or `1`.
    /// Indices are not validated, so `(0,0)` is allowed here.
    pub fn apply_raw(&self, kind: OpKind, r: u16, s: u16) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            for i in 0..n {
                let (ex, ey) = (m.x(i), m.y(i));
                if ex < r || ey < s {
                    continue;
                }
                let mut nm = m.clone();
                let raw = nm.raw_mut();
                raw[i] = ex - r;
                raw[n + i] = ey - s;
                match kind {
                    OpKind::E => raw[n + i] += 1,
                    OpKind::F => raw[i] += 1,
                    OpKind::Pi => {}
                }
                let f = falling_factorial(ex, r) * falling_factorial(ey, s);
                out.add_monomial(nm, c * f);
            }
        }
        out
    }

    pub fn apply_gen(&self, g: &OpGen) -> Self {
        self.apply_raw(g.kind, g.r, g.s)
    }

    pub fn apply_word(&self, w: &OperatorWord) -> Self {
        let mut p = self.clone();
        for g in w.gens().iter().rev() {
            if p.is_zero() {
                break;
            }
            p = p.apply_gen(g);
        }
        p
    }

    pub fn sl2_e(&self) -> Self {
        self.apply_raw(OpKind::E, 1, 0)
    }

    pub fn sl2_f(&self) -> Self {
        self.apply_raw(OpKind::F, 0, 1)
    }

    pub fn sl2_h(&self) -> Self {
        self.sl2_f().sl2_e().sub(&self.sl2_e().sl2_f()).expect("same n")
    }

    /// Divides every coefficient by their gcd and makes the leading one positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        if self.terms.values().next_back().is_some_and(|c| c < &BigInt::zero()) {
            g = -g;
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect() }
    }

    /// The full polynomial `sum_m c_m A(m)`.
    pub fn expand(&self) -> MultiPoly {
        let n = self.n;
        let perms = signed_permutations(n);
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            for (sigma, odd) in &perms {
                let mut nm = Monomial::one(n);
                let raw = nm.raw_mut();
                for i in 0..n {
                    raw[sigma[i]] = m.x(i);
                    raw[n + sigma[i]] = m.y(i);
                }
                let coef = if *odd { -c.clone() } else { c.clone() };
                out.add_term(nm, BigRational::from_integer(coef));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_raw;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_alt<R: Rng>(rng: &mut R, n: usize) -> AltPoly {
        let mut p = AltPoly::zero(n);
        for _ in 0..4 {
            let x: Vec<u16> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let y: Vec<u16> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            p.add_monomial(Monomial::new(&x, &y), BigInt::from(rng.gen_range(-3i64..=3)));
        }
        p
    }

    #[test]
    fn permutations_and_signs() {
        for n in 0..=5 {
            let perms = signed_permutations(n);
            let count: usize = (1..=n).product();
            assert_eq!(perms.len(), count);
            for (p, odd) in &perms {
                let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                assert_eq!(inversions % 2 == 1, *odd);
            }
            let mut sorted: Vec<_> = perms.iter().map(|(p, _)| p.clone()).collect();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), count);
        }
    }

    #[test]
    fn canonical_form() {
        let mut e = [0u16, 2, 1, 0, 0, 0];
        assert_eq!(canonicalize(&mut e), Some(false));
        assert_eq!(e, [2, 1, 0, 0, 0, 0]);
        let mut o = [0u16, 1, 0, 0];
        assert_eq!(canonicalize(&mut o), Some(true));
        let mut d = [1u16, 0, 1, 0, 0, 0];
        assert_eq!(canonicalize(&mut d), None);
        let mut k = [1u16, 1, 0, 1, 0, 0];
        assert_eq!(canonicalize(&mut k), Some(false));
    }

    #[test]
    fn small_alternants() {
        let v2 = AltPoly::vandermonde(2).expand();
        assert_eq!(v2, &MultiPoly::x(2, 0) - &MultiPoly::x(2, 1));
        let v3 = AltPoly::vandermonde(3).expand();
        assert_eq!(v3.len(), 6);
        let x = |i| MultiPoly::x(3, i);
        let direct = &(&(&x(0) - &x(1)) * &(&x(0) - &x(2))) * &(&x(1) - &x(2));
        assert_eq!(v3, direct);
        let row = AltPoly::partition_alternant(&Partition::new(vec![2]).unwrap()).expand();
        assert_eq!(row, &MultiPoly::y(2, 0) - &MultiPoly::y(2, 1));
        assert_eq!(AltPoly::vandermonde(1).expand(), MultiPoly::one(1));
    }

    #[test]
    fn expansion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..10 {
                let a = random_alt(&mut rng, n);
                let e = a.expand();
                assert_eq!(AltPoly::from_alternating(&e).unwrap(), a);
                for k in 1..n {
                    let mut sigma: Vec<usize> = (1..=n).collect();
                    sigma.swap(0, k);
                    assert_eq!(e.diagonal_action(&sigma).unwrap(), e.neg());
                }
            }
        }
        assert!(AltPoly::from_alternating(&MultiPoly::x(2, 0)).is_err());
    }

    #[test]
    fn operators_agree_with_full_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 2..=4 {
            for _ in 0..6 {
                let a = random_alt(&mut rng, n);
                let e = a.expand();
                for kind in [OpKind::E, OpKind::F, OpKind::Pi] {
                    for (r, s) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0)] {
                        assert_eq!(a.apply_raw(kind, r, s).expand(), apply_raw(kind, r, s, &e), "{kind:?}({r},{s}) n={n}");
                    }
                }
            }
        }
    }
}
