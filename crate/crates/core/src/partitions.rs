//! Integer partitions in French convention and their hook statistics.
//!
//! Row 0 is the bottom row, so for a cell `(col, row)` the leg points North,
//! the coleg South, the arm East and the coarm West.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::qtpoly::QtLaurent;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(parts))
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..width)
                .map(|col| self.0.iter().take_while(|&&p| p > col).count())
                .collect(),
        )
    }

    /// Whether the diagram fits inside the staircase `[m, m-1, ..., 1]`.
    pub fn fits_in_staircase(&self, m: usize) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i < m && p <= m - i)
    }

    /// Cells as `(col, row)` in row-major order from `(0,0)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (col, row)))
    }

    pub fn cell_stats(&self) -> Vec<CellStats> {
        let conj = self.conjugate();
        self.cells()
            .map(|(col, row)| CellStats {
                col,
                row,
                arm: self.0[row] - col - 1,
                leg: conj.0[col] - row - 1,
                coarm: col,
                coleg: row,
            })
            .collect()
    }

    /// `n(mu) = sum of colegs = sum_i i * mu_i`.
    pub fn n_statistic(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// `z_mu = prod_i i^{a_i} a_i!` where `a_i` is the multiplicity of part `i`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut mult = 0usize;
            while i < self.0.len() && self.0[i] == part {
                mult += 1;
                i += 1;
                z *= BigInt::from(part) * BigInt::from(mult);
            }
        }
        z
    }

    pub fn hook_stats(&self) -> Result<HookStats> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let one = QtLaurent::one;
        let qt_mono = |eq: usize, et: usize| QtLaurent::monomial(BigInt::one(), eq as i64, et as i64);
        let stats = self.cell_stats();
        let n_mu = self.n_statistic();
        let n_mu_conj = self.conjugate().n_statistic();

        let b_mu: QtLaurent = stats.iter().map(|c| qt_mono(c.coarm, c.coleg)).sum();
        let pi_mu: QtLaurent = stats
            .iter()
            .filter(|c| (c.col, c.row) != (0, 0))
            .map(|c| one() - qt_mono(c.coarm, c.coleg))
            .product();
        let w_mu: QtLaurent = stats
            .iter()
            .map(|c| {
                (qt_mono(c.arm, 0) - qt_mono(0, c.leg + 1)) * (qt_mono(0, c.leg) - qt_mono(c.arm + 1, 0))
            })
            .product();
        Ok(HookStats {
            n_mu,
            n_mu_conj,
            t_mu: qt_mono(n_mu_conj, n_mu),
            b_mu,
            pi_mu,
            w_mu,
            m: (one() - QtLaurent::t()) * (one() - QtLaurent::q()),
        })
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellStats {
    pub col: usize,
    pub row: usize,
    pub arm: usize,
    pub leg: usize,
    pub coarm: usize,
    pub coleg: usize,
}

/// The q,t quantities attached to a partition by the hook-product formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookStats {
    pub n_mu: usize,
    /// `n(mu')`.
    pub n_mu_conj: usize,
    /// `t^{n(mu)} q^{n(mu')}`.
    pub t_mu: QtLaurent,
    pub b_mu: QtLaurent,
    /// Product of `(1 - t^{coleg} q^{coarm})` over cells other than `(0,0)`.
    pub pi_mu: QtLaurent,
    pub w_mu: QtLaurent,
    /// `(1-t)(1-q)`.
    pub m: QtLaurent,
}

/// Optional restrictions for [`partitions_of`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionFilter {
    pub max_part: Option<usize>,
    pub length: Option<usize>,
    /// Fit inside the staircase `[m, m-1, ..., 1]`.
    pub staircase: Option<usize>,
}

impl PartitionFilter {
    pub fn max_part(mut self, m: usize) -> Self {
        self.max_part = Some(m);
        self
    }

    pub fn length(mut self, l: usize) -> Self {
        self.length = Some(l);
        self
    }

    pub fn staircase(mut self, m: usize) -> Self {
        self.staircase = Some(m);
        self
    }
}

/// All partitions of `n` satisfying `filter`, in decreasing lexicographic order.
pub fn partitions_of(n: usize, filter: PartitionFilter) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let cap = filter.max_part.unwrap_or(n).min(n);
    gen(n, cap, &filter, &mut cur, &mut out);
    out
}

fn gen(rem: usize, cap: usize, filter: &PartitionFilter, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    let row = cur.len();
    if rem == 0 {
        if filter.length.is_none_or(|l| l == row) {
            out.push(Partition(cur.clone()));
        }
        return;
    }
    if let Some(l) = filter.length {
        // each remaining part is at most `cap`
        if row >= l || rem > cap * (l - row) {
            return;
        }
    }
    let mut cap = cap.min(rem);
    if let Some(m) = filter.staircase {
        if row >= m {
            return;
        }
        cap = cap.min(m - row);
    }
    for p in (1..=cap).rev() {
        cur.push(p);
        gen(rem - p, p, filter, cur, out);
        cur.pop();
    }
}
