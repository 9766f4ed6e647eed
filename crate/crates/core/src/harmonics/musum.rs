//! `sum_mu T_mu^2 M B_mu Pi_mu / w_mu` checked against `c_n(q,t)` pointwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binom2;
use crate::dyck::{qt_catalan, StatPair};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

#[derive(Debug, Clone, Serialize)]
pub struct MusumReport {
    pub n: usize,
    pub points: usize,
    pub skipped: usize,
    pub mismatches: Vec<(String, String)>,
}

impl MusumReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// One summand at the point `(q, t)`, evaluated cell by cell. `None` when
/// `w_mu` vanishes there.
pub fn musum_term_at(mu: &Partition, q: &BigRational, t: &BigRational) -> Option<BigRational> {
    let one = BigRational::one();
    let stats = mu.cell_stats();
    let t_mu = pow(t, mu.n_statistic()) * pow(q, mu.conjugate().n_statistic());
    let m = (&one - t) * (&one - q);
    let mut b = BigRational::zero();
    let mut pi = BigRational::one();
    let mut w = BigRational::one();
    for c in &stats {
        let cell = pow(t, c.coleg) * pow(q, c.coarm);
        if (c.col, c.row) != (0, 0) {
            pi *= &one - &cell;
        }
        b += cell;
        w *= (pow(q, c.arm) - pow(t, c.leg + 1)) * (pow(t, c.leg) - pow(q, c.arm + 1));
    }
    if w.is_zero() {
        return None;
    }
    Some(&t_mu * &t_mu * m * b * pi / w)
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut k = 2u64;
    while out.len() < count {
        if (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d)) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// Exact value of one summand at integer `(q, t)` from power tables, as
/// `(numerator, w_mu)`.
fn term_parts(mu: &Partition, qp: &[BigInt], tp: &[BigInt]) -> (BigInt, BigInt) {
    let one = BigInt::one();
    let t_mu = &tp[mu.n_statistic()] * &qp[mu.conjugate().n_statistic()];
    let m = (&one - &tp[1]) * (&one - &qp[1]);
    let mut b = BigInt::zero();
    let mut pi = BigInt::one();
    let mut w = BigInt::one();
    for c in mu.cell_stats() {
        let cell = &tp[c.coleg] * &qp[c.coarm];
        if (c.col, c.row) != (0, 0) {
            pi *= &one - &cell;
        }
        b += cell;
        w *= (&qp[c.arm] - &tp[c.leg + 1]) * (&tp[c.leg] - &qp[c.arm + 1]);
    }
    (&t_mu * &t_mu * m * b * pi, w)
}

fn powers(x: u64, top: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::one()];
    for k in 1..=top {
        let next = &v[k - 1] * BigInt::from(x);
        v.push(next);
    }
    v
}

/// Compares both sides on a `(C(n,2)+1) x (C(n,2)+1)` grid. `q` runs over
/// the primes of even index and `t` over those of odd index; a point where
/// some `w_mu` vanishes is skipped and the next unused `t` prime is tried.
pub fn musum_catalan(n: usize) -> Result<MusumReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let side = binom2(n) + 1;
    let pool = primes(4 * side + 8);
    let qs: Vec<u64> = pool.iter().step_by(2).copied().collect();
    let ts: Vec<u64> = pool.iter().skip(1).step_by(2).copied().collect();
    let catalan = qt_catalan(n, StatPair::AreaBounce);
    let mus = partitions_of(n, Default::default());
    let top = side + n + 1;
    let mut report = MusumReport { n, points: 0, skipped: 0, mismatches: Vec::new() };
    let mut next_t = side;
    let exhausted = || Error::Internal("ran out of evaluation points".into());
    for &q in qs.iter().take(side) {
        let qp = powers(q, top);
        for &t0 in ts.iter().take(side) {
            let mut t = t0;
            let value = loop {
                let tp = powers(t, top);
                let parts: Vec<(BigInt, BigInt)> = mus.iter().map(|mu| term_parts(mu, &qp, &tp)).collect();
                if parts.iter().all(|(_, w)| !w.is_zero()) {
                    let sum: BigRational = parts.into_iter().map(|(num, w)| BigRational::new(num, w)).sum();
                    break (sum, tp);
                }
                report.skipped += 1;
                t = *ts.get(next_t).ok_or_else(exhausted)?;
                next_t += 1;
            };
            let (sum, tp) = value;
            report.points += 1;
            let mut expected = BigInt::zero();
            for (e, c) in catalan.terms() {
                expected += c * &tp[e.t as usize] * &qp[e.q as usize];
            }
            if sum != BigRational::from_integer(expected.clone()) {
                report.mismatches.push((format!("q={q}, t={t}"), format!("{sum} != {expected}")));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn cellwise_matches_expanded_stats() {
        for n in 1..=5 {
            for mu in partitions_of(n, Default::default()) {
                let h = mu.hook_stats().unwrap();
                let (q, t) = (r(3), r(7));
                let expected =
                    (h.t_mu.clone() * h.t_mu.clone() * h.m.clone() * h.b_mu.clone() * h.pi_mu.clone()).eval(&q, &t)
                        / h.w_mu.eval(&q, &t);
                assert_eq!(musum_term_at(&mu, &q, &t), Some(expected));
            }
        }
    }

    #[test]
    fn small_cases() {
        // n = 2: q^2/(q-t) + t^2/(t-q) = q + t
        let (q, t) = (r(2), r(5));
        let s: BigRational =
            partitions_of(2, Default::default()).iter().map(|mu| musum_term_at(mu, &q, &t).unwrap()).sum();
        assert_eq!(s, r(7));
        for n in 1..=4 {
            let rep = musum_catalan(n).unwrap();
            assert!(rep.passed(), "{:?}", rep.mismatches);
            assert_eq!(rep.points, (binom2(n) + 1).pow(2));
        }
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let (qp, tp) = (powers(11, 20), powers(13, 20));
        for mu in partitions_of(6, Default::default()) {
            let (num, w) = term_parts(&mu, &qp, &tp);
            assert_eq!(Some(BigRational::new(num, w)), musum_term_at(&mu, &r(11), &r(13)));
        }
    }

    #[test]
    fn vanishing_weight_is_reported() {
        // w_[2] contains the factor (q - t)
        let mu = Partition::new(vec![2]).unwrap();
        assert_eq!(musum_term_at(&mu, &r(3), &r(3)), None);
    }
}
