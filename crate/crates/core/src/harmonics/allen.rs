//! Co-partition basis: expand `s_lambda` in power sums, replace `p_r` by
//! `E_{r,0}`, and apply to the Vandermonde.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binom2;
use crate::dyck::coefficient_grid;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Insert};
use crate::mvpoly::Monomial;
use crate::operators::AltPoly;
use crate::partitions::{partitions_of, Partition, PartitionFilter};
use crate::symfunc::schur_to_power;

use super::{alt_rank, starter_grid_from_catalan, Harmonics};

/// Order in which partitions of equal size are tried at one bi-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LexOrder {
    #[default]
    DecreasingLex,
    IncreasingLex,
}

#[derive(Debug, Clone, Serialize)]
pub struct AllenElement {
    pub lambda: Partition,
    pub a: usize,
    pub b: usize,
    /// `(mu, chi^lambda_mu / z_mu)` for the words kept at this bi-degree.
    #[serde(serialize_with = "ser_terms")]
    pub terms: Vec<(Partition, BigRational)>,
    #[serde(skip)]
    pub alt: AltPoly,
    /// The element equals `alt / scale`.
    #[serde(skip)]
    pub scale: BigInt,
}

fn ser_terms<S: serde::Serializer>(terms: &[(Partition, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct T<'a> {
        mu: &'a Partition,
        coef: String,
    }
    s.collect_seq(terms.iter().map(|(mu, c)| T { mu, coef: c.to_string() }))
}

/// The part of `s_lambda`'s image with exactly `b` operators, integer-scaled.
fn component(h: &mut Harmonics, lambda: &Partition, b: usize) -> Option<AllenElement> {
    let n = h.n();
    let top = binom2(n);
    let size = lambda.size();
    let terms: Vec<(Partition, BigRational)> = schur_to_power(lambda)
        .entries
        .into_iter()
        .filter(|(mu, c)| mu.len() == b && !c.is_zero() && mu.parts().iter().all(|&p| p < n))
        .collect();
    if terms.is_empty() {
        return None;
    }
    let scale = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let mut alt = AltPoly::zero(n);
    for (mu, c) in &terms {
        let k = (c * BigRational::from_integer(scale.clone())).to_integer();
        alt = alt.add(&h.word_alternant(mu).scale(&k)).expect("same n");
    }
    if alt.is_zero() {
        return None;
    }
    Some(AllenElement { lambda: lambda.clone(), a: top - size, b, terms, alt, scale })
}

/// Walks the diagonals `a + b = i` from `i = C(n,2)` down to 0, `a` decreasing,
/// and at each bi-degree greedily keeps unused co-partitions whose component
/// raises the rank, until the q,t-Catalan coefficient is reached.
pub fn allen_basis(n: usize, order: LexOrder) -> Result<Vec<AllenElement>> {
    let mut h = Harmonics::new(n)?;
    let top = binom2(n);
    let mut used: BTreeSet<Partition> = BTreeSet::new();
    let mut out = Vec::new();
    for i in (0..=top).rev() {
        for a in (0..=i).rev() {
            let b = i - a;
            let target = h.target(a, b);
            if target == 0 {
                continue;
            }
            let mut lambdas = partitions_of(top - a, PartitionFilter::default().staircase(n - 1));
            if order == LexOrder::IncreasingLex {
                lambdas.reverse();
            }
            let mut ech: Echelon<Monomial> = Echelon::new(false);
            let mut kept = 0usize;
            for lambda in lambdas {
                if kept as u64 == target {
                    break;
                }
                if used.contains(&lambda) {
                    continue;
                }
                let Some(el) = component(&mut h, &lambda, b) else {
                    continue;
                };
                if ech.insert_int(el.alt.terms().map(|(m, c)| (m.clone(), c.clone()))) == Insert::Independent {
                    kept += 1;
                    used.insert(lambda);
                    out.push(el);
                }
            }
            if (kept as u64) < target {
                return Err(Error::AllenTargetUnreachable { n, a, b, target, achieved: kept });
            }
        }
    }
    Ok(out)
}

/// A word dropped at `(c, b)` because it is dependent on the words kept
/// before it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscardedPair {
    pub c: usize,
    pub b: usize,
    pub kept: Vec<Partition>,
    pub dropped: Partition,
}

/// Predicted non-starter: the word `E_word Delta_{1^n}` at `(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub a: usize,
    pub b: usize,
    pub r_b: usize,
    pub word: Partition,
}

/// A bi-degree where the starters cannot be built from the words left after
/// the exclusions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contradiction {
    pub a: usize,
    pub b: usize,
    pub excluded: Vec<Partition>,
    /// Dimension of `ker F` on the span of the remaining words.
    pub reachable: usize,
    pub starters: u64,
}

/// Words dropped at level `n` when the candidates at each bi-degree are tried
/// in the given order and kept while they raise the rank. With
/// [`LexOrder::DecreasingLex`] this is the selection of
/// [`Harmonics::build_span`].
pub fn discarded_pairs(n: usize, order: LexOrder) -> Result<Vec<DiscardedPair>> {
    let mut h = Harmonics::new(n)?;
    let mut out = Vec::new();
    for (c, b) in h.bidegrees() {
        let mut candidates = h.build_span(c, b)?.candidates;
        if order == LexOrder::IncreasingLex {
            candidates.reverse();
        }
        let mut ech: Echelon<Monomial> = Echelon::new(false);
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (w, p) in candidates {
            match ech.insert_int(p.terms().map(|(m, c)| (m.clone(), c.clone()))) {
                Insert::Independent => kept.push(w),
                Insert::Dependent(_) => dropped.push(w),
            }
        }
        out.extend(dropped.into_iter().map(|w| DiscardedPair { c, b, kept: kept.clone(), dropped: w }));
    }
    Ok(out)
}

/// For each word dropped at level `n-1` in bi-degree `(c, b)` and each extra
/// operator `E_{r_b,0}` with `1 <= r_b <= n-1`, the bi-degree
/// `(n-1+c-r_b, b+1)` at level `n` where the extended word is excluded. Only
/// bi-degrees whose q,t-Catalan coefficient is exactly one more than that of
/// `(c, b)` at level `n-1` qualify.
pub fn theorem21_prune(n: usize, discarded: &[DiscardedPair]) -> Vec<Exclusion> {
    if n < 2 {
        return Vec::new();
    }
    let below = coefficient_grid(n - 1);
    let here = coefficient_grid(n);
    let mut out = Vec::new();
    for d in discarded {
        let k = below.get(&(d.c, d.b)).copied().unwrap_or(0);
        for r_b in 1..n {
            let Some(a) = (n - 1 + d.c).checked_sub(r_b) else {
                continue;
            };
            if here.get(&(a, d.b + 1)).copied().unwrap_or(0) != k + 1 {
                continue;
            }
            let mut parts = d.dropped.parts().to_vec();
            parts.push(r_b);
            out.push(Exclusion { a, b: d.b + 1, r_b, word: Partition::from_unsorted(parts) });
        }
    }
    out.sort_by(|x, y| (x.a, x.b, &x.word).cmp(&(y.a, y.b, &y.word)));
    out.dedup_by(|x, y| x.a == y.a && x.b == y.b && x.word == y.word);
    out
}

/// Bi-degrees where dropping the excluded words loses a starter: the kernel
/// of `F` on the span of the remaining candidate words is smaller than the
/// number of strings starting there.
pub fn exclusion_contradictions(n: usize, exclusions: &[Exclusion]) -> Result<Vec<Contradiction>> {
    let mut h = Harmonics::new(n)?;
    let counts = starter_grid_from_catalan(n)?;
    let mut by_degree: BTreeMap<(usize, usize), Vec<Partition>> = BTreeMap::new();
    for e in exclusions {
        by_degree.entry((e.a, e.b)).or_default().push(e.word.clone());
    }
    let mut bad = Vec::new();
    for ((a, b), excluded) in by_degree {
        let starters = counts.b.get(&(a, b)).copied().unwrap_or(0);
        if starters == 0 {
            continue;
        }
        let rest: Vec<AltPoly> =
            h.build_span(a, b)?.candidates.into_iter().filter(|(w, _)| !excluded.contains(w)).map(|(_, p)| p).collect();
        let images: Vec<AltPoly> = rest.iter().map(AltPoly::sl2_f).collect();
        let reachable = alt_rank(&rest) - alt_rank(&images);
        if (reachable as u64) < starters {
            bad.push(Contradiction { a, b, excluded, reachable, starters });
        }
    }
    Ok(bad)
}
