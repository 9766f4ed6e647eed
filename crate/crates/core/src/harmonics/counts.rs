//! Counting string starters without building any polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::binom2;
use crate::dyck::coefficient_grid;
use crate::error::{Error, Result};
use crate::exactla::solve;
use crate::qtpoly::{QtExp, QtLaurent};

/// `b_{u,v}` for `u >= v`, the string lengths `c_r` and the total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarterGrid {
    pub b: BTreeMap<(usize, usize), u64>,
    pub c: BTreeMap<usize, u64>,
    pub total: u64,
}

/// `b_{u,v} = grid(u,v) - grid(u+1,v-1)` on the area-bounce grid.
pub fn starter_grid_from_catalan(n: usize) -> Result<StarterGrid> {
    let grid = coefficient_grid(n);
    let get = |a: usize, b: usize| grid.get(&(a, b)).copied().unwrap_or(0) as i64;
    let mut b_map = BTreeMap::new();
    let mut c_map = BTreeMap::new();
    let mut total = 0;
    for &(u, v) in grid.keys() {
        if u < v {
            continue;
        }
        let below = if v == 0 { 0 } else { get(u + 1, v - 1) };
        let diff = get(u, v) - below;
        if diff < 0 {
            return Err(Error::NegativeStringCount { u, v });
        }
        if diff > 0 {
            b_map.insert((u, v), diff as u64);
            *c_map.entry(u - v + 1).or_insert(0) += diff as u64;
            total += diff as u64;
        }
    }
    Ok(StarterGrid { b: b_map, c: c_map, total })
}

/// `q^{-C(n,2)-1} prod_{k=n+2}^{2n}(q^k - 1) / prod_{k=3}^{n}(q^k - 1)`.
pub fn qseries_laurent(n: usize) -> Result<QtLaurent> {
    if n < 2 {
        return Err(Error::Precondition("the q-series count needs n >= 2".into()));
    }
    let factor = |k: usize| QtLaurent::monomial(BigInt::one(), k as i64, 0) - QtLaurent::one();
    let num: QtLaurent = (n + 2..=2 * n).map(factor).product();
    let den: QtLaurent = (3..=n).map(factor).product();
    let quotient = num.div_exact_q(&den).map_err(|e| Error::Internal(format!("q-series for n={n}: {e}")))?;
    Ok(quotient.shift(-(binom2(n) as i64) - 1, 0))
}

/// Positive-power coefficients `c_r` of the q-series.
pub fn starter_counts_qseries(n: usize) -> Result<BTreeMap<usize, BigInt>> {
    let l = qseries_laurent(n)?;
    Ok(l.terms().filter(|(e, c)| e.q > 0 && !c.is_zero()).map(|(e, c)| (e.q as usize, c.clone())).collect())
}

pub fn starter_count_qseries(n: usize) -> Result<BigInt> {
    Ok(starter_counts_qseries(n)?.values().sum())
}

/// Recovers `c_r` from the odd moments `sum_r c_r r^{2k+1}`, each obtained
/// by applying an odd power of the Euler operator to the q-series and
/// evaluating at `q = 1`.
pub fn starter_count_moments(n: usize) -> Result<BTreeMap<usize, BigInt>> {
    let l = qseries_laurent(n)?;
    // longest string has length C(n,2)+1
    let unknowns = binom2(n) + 1;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut moments = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let d = l.euler_apply(2 * k as u32 + 1)?;
        moments.push(BigRational::from_integer(d.coefficient_sum()) * &half);
    }
    let matrix: Vec<Vec<BigRational>> = (0..unknowns)
        .map(|k| (1..=unknowns).map(|r| BigRational::from_integer(BigInt::from(r).pow(2 * k as u32 + 1))).collect())
        .collect();
    let sol = solve(matrix, moments)?;
    let mut out = BTreeMap::new();
    for (i, c) in sol.into_iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Internal(format!("moment solution c_{} = {c} is not a nonnegative integer", i + 1)));
        }
        if !c.is_zero() {
            out.insert(i + 1, c.to_integer());
        }
    }
    Ok(out)
}

/// `sum_{u,v} b_{u,v} sum_{i=0}^{u-v} t^{u-i} q^{v+i}`.
pub fn reconstruct_catalan_from_strings(n: usize) -> Result<QtLaurent> {
    let grid = starter_grid_from_catalan(n)?;
    let mut p = QtLaurent::zero();
    for (&(u, v), &count) in &grid.b {
        for i in 0..=u - v {
            p.add_term(QtExp { t: (u - i) as i64, q: (v + i) as i64 }, BigInt::from(count));
        }
    }
    Ok(p)
}
