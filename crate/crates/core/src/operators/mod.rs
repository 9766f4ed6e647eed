//! Polarized differential operators on `Q[x_1..x_n, y_1..y_n]`.
//!
//! * `E(r,s) = sum_i y_i d_{x_i}^r d_{y_i}^s`
//! * `F(r,s) = sum_i x_i d_{x_i}^r d_{y_i}^s`
//! * `Pi(p,q) = sum_i d_{x_i}^p d_{y_i}^q`

mod alternant;
mod suites;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::mvpoly::{falling_factorial, MultiPoly};
use crate::partitions::Partition;

pub use alternant::{signed_permutations, AltPoly};
pub use suites::{commutator_suite, harmonic_test_set, harmonicity_suite, index_pairs, PropertyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpKind {
    E,
    F,
    Pi,
}

impl OpKind {
    fn name(self) -> &'static str {
        match self {
            OpKind::E => "E",
            OpKind::F => "F",
            OpKind::Pi => "Pi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OpGen {
    pub kind: OpKind,
    pub r: u16,
    pub s: u16,
}

impl OpGen {
    pub fn new(kind: OpKind, r: u16, s: u16) -> Result<Self> {
        if r + s == 0 {
            return Err(Error::InvalidGenerator { kind: kind.name(), r: r as usize, s: s as usize });
        }
        Ok(Self { kind, r, s })
    }

    pub fn e(r: u16, s: u16) -> Result<Self> {
        Self::new(OpKind::E, r, s)
    }

    pub fn f(r: u16, s: u16) -> Result<Self> {
        Self::new(OpKind::F, r, s)
    }

    pub fn pi(p: u16, q: u16) -> Result<Self> {
        Self::new(OpKind::Pi, p, q)
    }

    /// Bi-degree shift `(da, db)` of the generator.
    pub fn shift(&self) -> (i64, i64) {
        let (r, s) = (self.r as i64, self.s as i64);
        match self.kind {
            OpKind::E => (-r, 1 - s),
            OpKind::F => (1 - r, -s),
            OpKind::Pi => (-r, -s),
        }
    }
}

impl<'de> Deserialize<'de> for OpGen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: OpKind,
            r: u16,
            s: u16,
        }
        let raw = Raw::deserialize(d)?;
        OpGen::new(raw.kind, raw.r, raw.s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for OpGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.s) {
            (OpKind::E, 0) => write!(f, "E{}", self.r),
            (k, _) => write!(f, "{}({},{})", k.name(), self.r, self.s),
        }
    }
}

impl FromStr for OpGen {
    type Err = Error;
    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse operator {tok:?}"));
        match tok {
            "E" => return OpGen::e(1, 0),
            "F" => return OpGen::f(0, 1),
            _ => {}
        }
        let (kind, rest) = if let Some(rest) = tok.strip_prefix("Pi") {
            (OpKind::Pi, rest)
        } else if let Some(rest) = tok.strip_prefix('E') {
            (OpKind::E, rest)
        } else if let Some(rest) = tok.strip_prefix('F') {
            (OpKind::F, rest)
        } else {
            return Err(bad());
        };
        if let Some(inner) = rest.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let r = a.trim().parse().map_err(|_| bad())?;
            let s = b.trim().parse().map_err(|_| bad())?;
            return OpGen::new(kind, r, s);
        }
        if kind == OpKind::E {
            let r = rest.parse().map_err(|_| bad())?;
            return OpGen::e(r, 0);
        }
        Err(bad())
    }
}

/// Ordered generators, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct OperatorWord {
    gens: Vec<OpGen>,
}

impl OperatorWord {
    pub fn new(gens: Vec<OpGen>) -> Self {
        Self { gens }
    }

    /// `E(mu_1,0) E(mu_2,0) ...`; all parts must be positive.
    pub fn from_partition(mu: &Partition) -> Self {
        Self { gens: mu.parts().iter().map(|&r| OpGen { kind: OpKind::E, r: r as u16, s: 0 }).collect() }
    }

    pub fn gens(&self) -> &[OpGen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for OperatorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let gens = s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(Self { gens })
    }
}

impl<'de> Deserialize<'de> for OperatorWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            List(Vec<OpGen>),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::List(gens) => Ok(OperatorWord { gens }),
        }
    }
}

/// Applies `sum_i v_i d_{x_i}^r d_{y_i}^s` without validating the indices.
pub fn apply_raw(kind: OpKind, r: u16, s: u16, p: &MultiPoly) -> MultiPoly {
    let n = p.n();
    let mut out = MultiPoly::zero(n);
    for (m, c) in p.terms() {
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
            out.add_term(nm, c * BigRational::from_integer(f));
        }
    }
    out
}

pub fn apply_gen(g: &OpGen, p: &MultiPoly) -> MultiPoly {
    apply_raw(g.kind, g.r, g.s, p)
}

pub fn apply_word(w: &OperatorWord, p: &MultiPoly) -> MultiPoly {
    let mut out = p.clone();
    for g in w.gens.iter().rev() {
        out = apply_gen(g, &out);
    }
    out
}

pub fn sl2_e(p: &MultiPoly) -> MultiPoly {
    apply_raw(OpKind::E, 1, 0, p)
}

pub fn sl2_f(p: &MultiPoly) -> MultiPoly {
    apply_raw(OpKind::F, 0, 1, p)
}

/// `H = EF - FE`.
pub fn sl2_h(p: &MultiPoly) -> MultiPoly {
    &sl2_e(&sl2_f(p)) - &sl2_f(&sl2_e(p))
}

pub fn vandermonde(n: usize) -> MultiPoly {
    AltPoly::vandermonde(n).expand()
}

/// `Delta_mu` in `n = |mu|` variable pairs.
pub fn partition_alternant(mu: &Partition, n: usize) -> Result<MultiPoly> {
    if mu.size() != n {
        return Err(Error::SizeMismatch { expected: n, got: mu.size() });
    }
    Ok(AltPoly::partition_alternant(mu).expand())
}

/// One `c * G(r,s)` term of a commutator right-hand side.
fn rhs_term(coef: i64, kind: OpKind, r: i64, s: i64, p: &MultiPoly) -> Result<MultiPoly> {
    if coef == 0 {
        return Ok(MultiPoly::zero(p.n()));
    }
    if r < 0 || s < 0 {
        return Err(Error::NegativeIndex { kind: kind.name(), r, s });
    }
    Ok(apply_raw(kind, r as u16, s as u16, p).scale(&BigRational::from_integer(BigInt::from(coef))))
}

/// Right-hand side of `[g1, g2]` applied to `p`.
pub fn commutator_rhs(g1: &OpGen, g2: &OpGen, p: &MultiPoly) -> Result<MultiPoly> {
    let (p1, q1, r2, s2) = (g1.r as i64, g1.s as i64, g2.r as i64, g2.s as i64);
    match (g1.kind, g2.kind) {
        (OpKind::F, OpKind::F) => rhs_term(p1 - r2, OpKind::F, p1 + r2 - 1, q1 + s2, p),
        (OpKind::E, OpKind::E) => rhs_term(q1 - s2, OpKind::E, p1 + r2, q1 + s2 - 1, p),
        (OpKind::F, OpKind::E) => {
            let a = rhs_term(q1, OpKind::F, p1 + r2, q1 + s2 - 1, p)?;
            let b = rhs_term(r2, OpKind::E, p1 + r2 - 1, q1 + s2, p)?;
            Ok(&a - &b)
        }
        (OpKind::E, OpKind::F) => Ok(commutator_rhs(g2, g1, p)?.neg()),
        _ => Err(Error::UnsupportedCommutator),
    }
}

/// Whether `(g1 g2 - g2 g1) p` equals the closed-form right-hand side.
pub fn commutator_check(g1: &OpGen, g2: &OpGen, p: &MultiPoly) -> Result<bool> {
    let rhs = commutator_rhs(g1, g2, p)?;
    let lhs = &apply_gen(g1, &apply_gen(g2, p)) - &apply_gen(g2, &apply_gen(g1, p));
    Ok(lhs == rhs)
}

/// Checks that `g p` is again diagonal harmonic, and that `Pi(a,b)` passes
/// through `g` with the expected correction term on `p`.
pub fn harmonic_preservation_check(g: &OpGen, p: &MultiPoly) -> Result<bool> {
    if g.kind == OpKind::Pi {
        return Err(Error::UnsupportedCommutator);
    }
    if !p.is_diagonal_harmonic() {
        return Err(Error::Precondition("input polynomial is not diagonal harmonic".into()));
    }
    let gp = apply_gen(g, p);
    if !gp.is_diagonal_harmonic() {
        return Ok(false);
    }
    let deg = p.total_degree().unwrap_or(0) as u16 + 1;
    let (r, s) = (g.r as i64, g.s as i64);
    for total in 1..=deg {
        for a in 0..=total {
            let b = total - a;
            let lhs = p_apply(a, b, &gp);
            let swapped = apply_gen(g, &p_apply(a, b, p));
            let correction = match g.kind {
                OpKind::E => rhs_term(b as i64, OpKind::Pi, a as i64 + r, b as i64 + s - 1, p)?,
                OpKind::F => rhs_term(a as i64, OpKind::Pi, a as i64 + r - 1, b as i64 + s, p)?,
                OpKind::Pi => unreachable!(),
            };
            if lhs != &swapped + &correction {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn p_apply(a: u16, b: u16, p: &MultiPoly) -> MultiPoly {
    p.polarized_derivative(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvpoly::BiDegree;
    use crate::sampling::{random_poly, PolySampler};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::x(n, i)
    }

    fn y(n: usize, i: usize) -> MultiPoly {
        MultiPoly::y(n, i)
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn generator_validation() {
        assert!(OpGen::e(0, 0).is_err());
        assert!(OpGen::f(0, 0).is_err());
        assert!(OpGen::pi(0, 0).is_err());
        assert!(OpGen::e(0, 1).is_ok());
        assert_eq!(OpGen::e(2, 1).unwrap().shift(), (-2, 0));
        assert_eq!(OpGen::f(0, 1).unwrap().shift(), (1, -1));
    }

    #[test]
    fn basic_applications() {
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(sl2_e(&d), &y(2, 0) - &y(2, 1));
        assert_eq!(sl2_f(&(&y(2, 0) - &y(2, 1))), d);
        assert!(apply_gen(&OpGen::e(2, 0).unwrap(), &d).is_zero());
        let w: OperatorWord = "E E".parse().unwrap();
        assert!(apply_word(&w, &d).is_zero());
    }

    #[test]
    fn h_acts_by_degree_difference() {
        let m = &x(1, 0) * &(&y(1, 0) * &y(1, 0));
        assert_eq!(sl2_h(&m), m);
        let v = vandermonde(3);
        assert_eq!(sl2_h(&v), v.scale(&int(-3)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = PolySampler::new(3);
        for _ in 0..10 {
            let p = random_poly(&mut rng, &s);
            for (d, c) in p.bidegree_components() {
                let f = int(d.b as i64 - d.a as i64);
                assert_eq!(sl2_h(&c), c.scale(&f));
            }
        }
    }

    #[test]
    fn vandermonde_small() {
        assert_eq!(vandermonde(1), MultiPoly::one(1));
        assert_eq!(vandermonde(2), &x(2, 0) - &x(2, 1));
        let v3 = vandermonde(3);
        assert_eq!(v3.len(), 6);
        assert!(v3.terms().all(|(_, c)| c == &int(1) || c == &int(-1)));
        assert_eq!(vandermonde(4).len(), 24);
    }

    #[test]
    fn partition_alternant_examples() {
        assert_eq!(partition_alternant(&part(&[1, 1, 1]), 3).unwrap(), vandermonde(3));
        assert_eq!(partition_alternant(&part(&[1, 1]), 2).unwrap(), &x(2, 0) - &x(2, 1));
        // rows 1, x, y
        let d21 = partition_alternant(&part(&[2, 1]), 3).unwrap();
        let mut det = MultiPoly::zero(3);
        for (sigma, odd) in signed_permutations(3) {
            // columns 1, x, y assigned to variables sigma(0), sigma(1), sigma(2)
            let term = &x(3, sigma[1]) * &y(3, sigma[2]);
            det = if odd { &det - &term } else { &det + &term };
        }
        assert!(d21.is_proportional_to(&det));
        assert_eq!(d21.bidegree(), Some(BiDegree::new(1, 1)));
        assert!(partition_alternant(&part(&[2, 1]), 4).is_err());
    }

    #[test]
    fn partition_alternants_alternate() {
        for n in 1..=5 {
            for mu in crate::partitions::partitions_of(n, Default::default()) {
                let d = partition_alternant(&mu, n).unwrap();
                assert!(!d.is_zero());
                if n >= 2 {
                    let mut t12: Vec<usize> = (1..=n).collect();
                    t12.swap(0, 1);
                    let mut t1n: Vec<usize> = (1..=n).collect();
                    t1n.swap(0, n - 1);
                    assert_eq!(d.diagonal_action(&t12).unwrap(), d.neg());
                    assert_eq!(d.diagonal_action(&t1n).unwrap(), d.neg());
                }
                let coleg: usize = mu.cell_stats().iter().map(|c| c.coleg).sum();
                let coarm: usize = mu.cell_stats().iter().map(|c| c.coarm).sum();
                assert_eq!(d.bidegree(), Some(BiDegree::new(coleg, coarm)));
            }
        }
    }

    #[test]
    fn word_parsing() {
        let w: OperatorWord = "E3 E2".parse().unwrap();
        assert_eq!(w, OperatorWord::from_partition(&part(&[3, 2])));
        assert_eq!(w.to_string(), "E3 E2");
        let w2: OperatorWord = "E F(1,1) Pi(1,0) E(2,1)".parse().unwrap();
        assert_eq!(w2.gens()[0], OpGen::e(1, 0).unwrap());
        assert_eq!(w2.gens()[1], OpGen::f(1, 1).unwrap());
        assert_eq!(w2.gens()[2], OpGen::pi(1, 0).unwrap());
        assert_eq!(w2.to_string().parse::<OperatorWord>().unwrap(), w2);
        assert!("E0".parse::<OperatorWord>().is_err());
        assert!("G2".parse::<OperatorWord>().is_err());
        assert!("F2".parse::<OperatorWord>().is_err());
        let json: OperatorWord = serde_json::from_str(r#"[{"kind":"E","r":3,"s":0},{"kind":"E","r":2,"s":0}]"#).unwrap();
        assert_eq!(json, w);
        let text: OperatorWord = serde_json::from_str(r#""E3 E2""#).unwrap();
        assert_eq!(text, w);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"[{"kind":"E","r":3,"s":0},{"kind":"E","r":2,"s":0}]"#);
        assert!(serde_json::from_str::<OperatorWord>(r#"[{"kind":"F","r":0,"s":0}]"#).is_err());
    }

    #[test]
    fn dependent_pair_at_n5() {
        let v = vandermonde(5);
        let a = apply_word(&"E3 E2".parse().unwrap(), &v);
        let b = apply_word(&"E4 E1".parse().unwrap(), &v);
        assert!(!a.is_zero());
        assert!(a.is_proportional_to(&b));
        assert_eq!(a.bidegree(), Some(BiDegree::new(5, 2)));
    }

    #[test]
    fn e_words_commute_and_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = PolySampler::new(3);
        for _ in 0..5 {
            let p = random_poly(&mut rng, &s);
            let a = apply_word(&"E2 E3".parse().unwrap(), &p);
            let b = apply_word(&"E3 E2".parse().unwrap(), &p);
            assert_eq!(a, b);
        }
        for n in 2..=5 {
            let v = vandermonde(n);
            assert!(apply_gen(&OpGen::e(n as u16, 0).unwrap(), &v).is_zero());
            assert!(!apply_gen(&OpGen::e(n as u16 - 1, 0).unwrap(), &v).is_zero());
        }
    }

    #[test]
    fn commutator_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = PolySampler::new(3);
        let p = random_poly(&mut rng, &s);
        let f01 = OpGen::f(0, 1).unwrap();
        let e10 = OpGen::e(1, 0).unwrap();
        assert!(commutator_check(&f01, &e10, &p).unwrap());
        let lhs = &apply_gen(&f01, &apply_gen(&e10, &p)) - &apply_gen(&e10, &apply_gen(&f01, &p));
        let rhs = &apply_gen(&OpGen::f(1, 0).unwrap(), &p) - &apply_gen(&OpGen::e(0, 1).unwrap(), &p);
        assert_eq!(lhs, rhs);
        let e21 = OpGen::e(2, 1).unwrap();
        let e11 = OpGen::e(1, 1).unwrap();
        let l = &apply_gen(&e21, &apply_gen(&e11, &p)) - &apply_gen(&e11, &apply_gen(&e21, &p));
        assert!(l.is_zero());
        assert!(commutator_check(&OpGen::f(2, 0).unwrap(), &OpGen::f(1, 0).unwrap(), &p).unwrap());
        assert_eq!(
            commutator_check(&OpGen::pi(1, 0).unwrap(), &e10, &p),
            Err(Error::UnsupportedCommutator)
        );
    }

    #[test]
    fn harmonic_preservation() {
        let v3 = vandermonde(3);
        assert!(harmonic_preservation_check(&OpGen::e(1, 0).unwrap(), &v3).unwrap());
        let ev4 = sl2_e(&vandermonde(4));
        assert!(harmonic_preservation_check(&OpGen::f(1, 1).unwrap(), &ev4).unwrap());
        let p = apply_gen(&OpGen::e(2, 0).unwrap(), &vandermonde(4));
        assert!(p.polarized_derivative(1, 1).is_zero());
        assert!(harmonic_preservation_check(&OpGen::e(1, 0).unwrap(), &x(2, 0)).is_err());
        assert!(MultiPoly::zero(2).scalar_product(&MultiPoly::zero(2)).unwrap().is_zero());
    }
}
