//! Exact rank, left kernels and greedy independent subsets for sparse rows.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mvpoly::{Monomial, MultiPoly};
use crate::operators::AltPoly;

type Row<K> = Vec<(K, BigInt)>;

/// `a*x - b*y` on sorted sparse rows.
fn combine<K: Ord + Clone>(a: &BigInt, x: &[(K, BigInt)], b: &BigInt, y: &[(K, BigInt)]) -> Row<K> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push((x[i].0.clone(), a * &x[i].1));
                i += 1;
            }
            Ordering::Greater => {
                out.push((y[j].0.clone(), -(b * &y[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn content<'a, I: Iterator<Item = &'a BigInt>>(it: I) -> BigInt {
    it.fold(BigInt::zero(), |g, v| g.gcd(v))
}

struct Pivot<K> {
    row: Row<K>,
    combo: Row<usize>,
}

/// Incremental row echelon form over the integers.
///
/// Rows are inserted one at a time and reduced against pivots keyed by their
/// leading column, using fraction-free elimination with gcd normalization.
/// When combinations are tracked, a row that reduces to zero yields a left
/// kernel vector expressed in the original (rational) rows.
pub struct Echelon<K> {
    pivots: BTreeMap<K, Pivot<K>>,
    scales: Vec<BigInt>,
    track: bool,
}

/// Outcome of inserting a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The row increased the rank.
    Independent,
    /// The row is dependent; with tracking on, carries the primitive kernel vector.
    Dependent(Option<Vec<BigInt>>),
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(track: bool) -> Self {
        Self { pivots: BTreeMap::new(), scales: Vec::new(), track }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.scales.len()
    }

    /// Inserts an integer row given as `(column, value)` pairs; duplicate columns are summed.
    pub fn insert_int(&mut self, entries: impl IntoIterator<Item = (K, BigInt)>) -> Insert {
        self.insert_scaled(entries, BigInt::one())
    }

    /// Inserts a rational row after clearing denominators.
    pub fn insert_rational(&mut self, entries: impl IntoIterator<Item = (K, BigRational)>) -> Insert {
        let entries: Vec<(K, BigRational)> = entries.into_iter().collect();
        let scale = entries.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let big = BigRational::from_integer(scale.clone());
        let ints: Vec<(K, BigInt)> = entries.into_iter().map(|(k, v)| (k, (v * &big).to_integer())).collect();
        self.insert_scaled(ints, scale)
    }

    fn insert_scaled(&mut self, entries: impl IntoIterator<Item = (K, BigInt)>, scale: BigInt) -> Insert {
        let idx = self.scales.len();
        self.scales.push(scale);
        let mut map: BTreeMap<K, BigInt> = BTreeMap::new();
        for (k, v) in entries {
            *map.entry(k).or_insert_with(BigInt::zero) += v;
        }
        let mut row: Row<K> = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut combo: Row<usize> = if self.track { vec![(idx, BigInt::one())] } else { Vec::new() };
        loop {
            let Some(lead) = row.first().map(|(k, _)| k.clone()) else {
                if !self.track {
                    return Insert::Dependent(None);
                }
                return Insert::Dependent(Some(self.kernel_vector(&combo)));
            };
            let Some(piv) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, Pivot { row, combo });
                return Insert::Independent;
            };
            let lp = &piv.row[0].1;
            let lr = &row[0].1;
            let g = lp.gcd(lr);
            let a = lp / &g;
            let b = lr / &g;
            row = combine(&a, &row, &b, &piv.row);
            if self.track {
                combo = combine(&a, &combo, &b, &piv.combo);
            }
            let c = content(row.iter().map(|e| &e.1).chain(combo.iter().map(|e| &e.1)));
            if !c.is_zero() && !c.is_one() {
                for e in row.iter_mut() {
                    e.1 /= &c;
                }
                for e in combo.iter_mut() {
                    e.1 /= &c;
                }
            }
        }
    }

    fn kernel_vector(&self, combo: &Row<usize>) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.scales.len()];
        for (i, c) in combo {
            v[*i] = c * &self.scales[*i];
        }
        normalize_primitive(&mut v);
        v
    }
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn normalize_primitive(v: &mut [BigInt]) {
    let mut g = content(v.iter());
    if g.is_zero() {
        return;
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

/// Rows of rational coefficients over a shared, ordered monomial column set.
#[derive(Debug, Clone)]
pub struct MonomialMatrix {
    columns: Vec<Monomial>,
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl MonomialMatrix {
    pub fn from_polys(polys: &[MultiPoly]) -> Result<Self> {
        if let Some(first) = polys.first() {
            if let Some(bad) = polys.iter().find(|p| p.n() != first.n()) {
                return Err(Error::VariableMismatch(first.n(), bad.n()));
            }
        }
        Ok(Self::build(polys.iter().map(|p| p.terms().map(|(m, c)| (m.clone(), c.clone())).collect())))
    }

    /// Rows are the canonical-monomial coefficients of each alternant.
    pub fn from_alternants(alts: &[AltPoly]) -> Result<Self> {
        if let Some(first) = alts.first() {
            if let Some(bad) = alts.iter().find(|p| p.n() != first.n()) {
                return Err(Error::VariableMismatch(first.n(), bad.n()));
            }
        }
        Ok(Self::build(alts.iter().map(|p| {
            p.terms().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))).collect()
        })))
    }

    fn build(rows: impl Iterator<Item = Vec<(Monomial, BigRational)>>) -> Self {
        let rows: Vec<Vec<(Monomial, BigRational)>> = rows.collect();
        let set: BTreeSet<&Monomial> = rows.iter().flatten().map(|(m, _)| m).collect();
        let columns: Vec<Monomial> = set.into_iter().cloned().collect();
        let index: BTreeMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows = rows
            .iter()
            .map(|r| {
                let mut v: Vec<(usize, BigRational)> = r.iter().map(|(m, c)| (index[m], c.clone())).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        Self { columns, rows }
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| (self.rows[i].len(), i));
        let mut ech = Echelon::new(false);
        for i in order {
            ech.insert_rational(self.rows[i].iter().cloned());
        }
        ech.rank()
    }

    /// Basis of the left null space, one primitive integer vector per dependent row.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let mut ech = Echelon::new(true);
        let mut out = Vec::new();
        for r in &self.rows {
            if let Insert::Dependent(Some(mut v)) = ech.insert_rational(r.iter().cloned()) {
                v.resize(self.rows.len(), BigInt::zero());
                out.push(v);
            }
        }
        out
    }

    /// Greedy left-to-right scan keeping rows that raise the rank, up to `target`.
    pub fn select_independent(&self, target: usize) -> Result<Vec<usize>> {
        let mut ech = Echelon::new(false);
        let mut kept = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if kept.len() == target {
                break;
            }
            if ech.insert_rational(r.iter().cloned()) == Insert::Independent {
                kept.push(i);
            }
        }
        if kept.len() < target {
            return Err(Error::RankDeficit { target, achieved: kept.len() });
        }
        Ok(kept)
    }
}

pub fn rank(polys: &[MultiPoly]) -> Result<usize> {
    Ok(MonomialMatrix::from_polys(polys)?.rank())
}

pub fn kernel(polys: &[MultiPoly]) -> Result<Vec<Vec<BigInt>>> {
    Ok(MonomialMatrix::from_polys(polys)?.kernel())
}

pub fn select_independent(polys: &[MultiPoly], target: usize) -> Result<Vec<usize>> {
    MonomialMatrix::from_polys(polys)?.select_independent(target)
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn dense_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..cols {
                let d = &f * &a[rank][k];
                a[r][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b` exactly.
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("solve expects a square system".into()));
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
            let d = &f * &b[c];
            b[r] -= d;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{apply_word, vandermonde};
    use crate::sampling::{random_poly, PolySampler};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::x(n, i)
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn identity_and_duplicates() {
        let id = [x(3, 0), x(3, 1), x(3, 2)];
        assert_eq!(rank(&id).unwrap(), 3);
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(rank(&[d.clone(), d.scale(&int(-2))]).unwrap(), 1);
        assert_eq!(kernel(&[x(2, 0), x(2, 0)]).unwrap(), vec![ints(&[1, -1])]);
        assert!(kernel(&id).unwrap().is_empty());
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[MultiPoly::zero(2)]).unwrap(), 0);
    }

    #[test]
    fn kernel_and_selection() {
        let p = &x(2, 0) + &MultiPoly::y(2, 1);
        let q = &x(2, 1) - &MultiPoly::y(2, 0);
        let rows = [p.clone(), p.scale(&int(2)), q];
        assert_eq!(kernel(&rows).unwrap(), vec![ints(&[2, -1, 0])]);
        assert_eq!(select_independent(&rows, 2).unwrap(), vec![0, 2]);
        assert_eq!(select_independent(&rows, 0).unwrap(), Vec::<usize>::new());
        assert_eq!(select_independent(&rows, 3), Err(Error::RankDeficit { target: 3, achieved: 2 }));
    }

    #[test]
    fn rational_rows() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let a = x(1, 0).scale(&half);
        let b = x(1, 0).scale(&third);
        // 2/3 * a... primitive: 2a - 3b = 0
        assert_eq!(kernel(&[a, b]).unwrap(), vec![ints(&[2, -3])]);
    }

    #[test]
    fn n5_pair_is_dependent() {
        let v = vandermonde(5);
        let a = apply_word(&"E3 E2".parse().unwrap(), &v);
        let b = apply_word(&"E4 E1".parse().unwrap(), &v);
        assert_eq!(rank(&[a.clone(), b.clone()]).unwrap(), 1);
        assert_eq!(select_independent(&[a, b], 1).unwrap(), vec![0]);
    }

    #[test]
    fn alternant_rows_match_expanded_rows() {
        let v = AltPoly::vandermonde(4);
        let words = ["E1", "E2", "E1 E1", "E3", "E2 E1", "E1 E1 E1", "E(1,1)", "F(1,1) E1"];
        let alts: Vec<AltPoly> = words.iter().map(|w| v.apply_word(&w.parse().unwrap())).collect();
        let full: Vec<MultiPoly> = alts.iter().map(AltPoly::expand).collect();
        let ma = MonomialMatrix::from_alternants(&alts).unwrap();
        let mf = MonomialMatrix::from_polys(&full).unwrap();
        assert_eq!(ma.rank(), mf.rank());
        assert_eq!(ma.kernel(), mf.kernel());
    }

    #[test]
    fn dense_solve() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let b = vec![int(3), int(5)];
        let s = solve(a, b).unwrap();
        assert_eq!(s, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert_eq!(solve(vec![vec![int(1), int(2)], vec![int(2), int(4)]], vec![int(1), int(1)]), Err(Error::Singular));
    }

    /// Rank via the Gram matrix of the apolar scalar product.
    fn gram_rank(rows: &[MultiPoly]) -> usize {
        let g = rows.iter().map(|a| rows.iter().map(|b| a.scalar_product(b).unwrap()).collect()).collect();
        dense_rank(g)
    }

    #[test]
    fn rank_matches_gram_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = PolySampler { n: 2, terms: 3, max_exp: 1, coef_bound: 2 };
        for trial in 0..40 {
            let k = 1 + trial % 30;
            let rows: Vec<MultiPoly> = (0..k).map(|_| random_poly(&mut rng, &s)).collect();
            let r = rank(&rows).unwrap();
            assert_eq!(r, gram_rank(&rows));
            let ker = kernel(&rows).unwrap();
            assert_eq!(ker.len() + r, rows.len());
            for v in ker {
                let mut acc = MultiPoly::zero(2);
                for (c, p) in v.iter().zip(&rows) {
                    acc = &acc + &p.scale(&BigRational::from_integer(c.clone()));
                }
                assert!(acc.is_zero());
                assert!(v.iter().find(|c| !c.is_zero()).unwrap().is_positive());
            }
        }
    }

    proptest! {
        #[test]
        fn selection_is_a_basis(seed in 0u64..500, k in 1usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = PolySampler { n: 2, terms: 2, max_exp: 1, coef_bound: 2 };
            let rows: Vec<MultiPoly> = (0..k).map(|_| random_poly(&mut rng, &s)).collect();
            let r = rank(&rows).unwrap();
            let sel = select_independent(&rows, r).unwrap();
            prop_assert_eq!(sel.len(), r);
            let chosen: Vec<MultiPoly> = sel.iter().map(|&i| rows[i].clone()).collect();
            prop_assert_eq!(rank(&chosen).unwrap(), r);
            prop_assert!(sel.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
