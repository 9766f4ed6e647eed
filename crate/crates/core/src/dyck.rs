//! Dyck paths in the `n x n` square and the area, bounce and dinv statistics.
//!
//! A path is recorded by the abscissas `d_1..d_n` of its North steps, with
//! `d_1 = 0`, `d_i <= d_{i+1}` and `d_i <= i-1`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qtpoly::{QtExp, QtLaurent};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DyckPath {
    d: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub area: usize,
    pub bounce: usize,
    pub dinv: usize,
    /// Per-row area contributions `u_i = (i-1) - d_i`.
    pub u: Vec<usize>,
}

/// Which statistic pair builds the q,t-Catalan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StatPair {
    /// `sum t^bounce q^area`
    #[default]
    AreaBounce,
    /// `sum t^area q^dinv`
    AreaDinv,
}

impl FromStr for StatPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounce" | "area-bounce" => Ok(StatPair::AreaBounce),
            "dinv" | "area-dinv" => Ok(StatPair::AreaDinv),
            other => Err(Error::Parse(format!("unknown statistic pair {other:?}"))),
        }
    }
}

impl DyckPath {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        let valid = d.first().is_some_and(|&x| x == 0)
            && d.windows(2).all(|w| w[0] <= w[1])
            && d.iter().enumerate().all(|(i, &x)| x <= i);
        if valid {
            Ok(Self { d })
        } else {
            Err(Error::Precondition(format!("{d:?} is not a Dyck path")))
        }
    }

    pub fn abscissas(&self) -> &[usize] {
        &self.d
    }

    pub fn size(&self) -> usize {
        self.d.len()
    }

    pub fn row_areas(&self) -> Vec<usize> {
        self.d.iter().enumerate().map(|(i, &x)| i - x).collect()
    }

    pub fn area(&self) -> usize {
        self.row_areas().iter().sum()
    }

    /// The bounce path starts North from `(0,0)` and turns East only at the
    /// West end of an East step of the path. Diagonal touch points `(k,k)`
    /// carry the label `n - k`.
    pub fn bounce(&self) -> usize {
        let n = self.d.len();
        let mut total = 0;
        let mut x = 0;
        loop {
            // Height at which the path leaves column x: rows with d_i <= x.
            let y = self.d.iter().take_while(|&&di| di <= x).count();
            if y >= n {
                break;
            }
            total += n - y;
            x = y;
        }
        total
    }

    pub fn dinv(&self) -> usize {
        let u = self.row_areas();
        let mut count = 0;
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                if u[i] == u[j] || u[i] == u[j] + 1 {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn stats(&self) -> PathStats {
        PathStats { area: self.area(), bounce: self.bounce(), dinv: self.dinv(), u: self.row_areas() }
    }

    /// Nonzero abscissas in weakly decreasing order.
    pub fn copartition(&self) -> Partition {
        Partition::from_unsorted(self.d.clone())
    }
}

/// All Dyck paths of size `n`, in lexicographic order of `d`.
pub fn enumerate(n: usize) -> Vec<DyckPath> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
        let i = cur.len();
        if i == n {
            out.push(DyckPath { d: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for x in lo..=i {
            cur.push(x);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Combinatorial q,t-Catalan polynomial.
pub fn qt_catalan(n: usize, pair: StatPair) -> QtLaurent {
    let mut p = QtLaurent::zero();
    for path in enumerate(n) {
        let (et, eq) = match pair {
            StatPair::AreaBounce => (path.bounce(), path.area()),
            StatPair::AreaDinv => (path.area(), path.dinv()),
        };
        p.add_term(QtExp { t: et as i64, q: eq as i64 }, BigInt::from(1));
    }
    p
}

/// Coefficient of `t^a q^b` in the area-bounce q,t-Catalan, zero entries omitted.
pub fn coefficient_grid(n: usize) -> BTreeMap<(usize, usize), u64> {
    let mut grid = BTreeMap::new();
    for path in enumerate(n) {
        *grid.entry((path.bounce(), path.area())).or_insert(0) += 1;
    }
    grid
}

/// Grid of an arbitrary polynomial with nonnegative exponents.
pub fn grid_of(p: &QtLaurent) -> BTreeMap<(usize, usize), u64> {
    p.terms()
        .map(|(e, c)| {
            let v = u64::try_from(c).expect("grid coefficients are small nonnegative integers");
            ((e.t as usize, e.q as usize), v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridEntry {
    pub a: usize,
    pub b: usize,
    pub coef: u64,
}

pub fn grid_entries(grid: &BTreeMap<(usize, usize), u64>) -> Vec<GridEntry> {
    grid.iter().map(|(&(a, b), &coef)| GridEntry { a, b, coef }).collect()
}
