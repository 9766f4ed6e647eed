//! Spans of `E`-words applied to the Vandermonde, sl(2) string starters and
//! the various ways of counting them.
//!
//! Everything here works on [`AltPoly`], the compressed form of alternants.
//! Bi-degree `(a,b)` means x-degree `a`, y-degree `b`; in the q,t-Catalan grid
//! it is the coefficient of `t^a q^b`.

mod allen;
mod cache;
mod counts;
mod musum;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binom2;
use crate::dyck::coefficient_grid;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Insert};
use crate::mvpoly::{BiDegree, Monomial};
use crate::operators::{AltPoly, OpKind};
use crate::partitions::{partitions_of, Partition, PartitionFilter};

pub use allen::{
    allen_basis, discarded_pairs, exclusion_contradictions, theorem21_prune, AllenElement, Contradiction, DiscardedPair,
    Exclusion, LexOrder,
};
pub use counts::{
    qseries_laurent, reconstruct_catalan_from_strings, starter_count_moments, starter_count_qseries,
    starter_counts_qseries, starter_grid_from_catalan, StarterGrid,
};
pub use musum::{musum_catalan, musum_term_at, MusumReport};

/// `E_{mu_1,0} E_{mu_2,0} ... Delta_{1^n}` candidates at one bi-degree.
#[derive(Debug, Clone)]
pub struct SpanAtBidegree {
    pub n: usize,
    pub bidegree: BiDegree,
    pub candidates: Vec<(Partition, AltPoly)>,
    pub selected: Vec<usize>,
    pub dim: usize,
}

impl SpanAtBidegree {
    pub fn selected_words(&self) -> Vec<Partition> {
        self.selected.iter().map(|&i| self.candidates[i].0.clone()).collect()
    }
}

/// The first element `v0` of an sl(2) string, as a combination of E-words.
#[derive(Debug, Clone)]
pub struct StringStarter {
    pub u: usize,
    pub v: usize,
    pub words: Vec<Partition>,
    pub coefs: Vec<BigInt>,
    pub v0: AltPoly,
}

impl StringStarter {
    /// Number of elements in the string.
    pub fn length(&self) -> usize {
        self.u - self.v + 1
    }
}

/// Serialized form of one bi-degree, also the cache file schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanRecord {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub dim: usize,
    pub selected: Vec<Partition>,
    pub starters: Vec<StarterRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarterRecord {
    #[serde(serialize_with = "crate::jsonint::serialize_vec", deserialize_with = "crate::jsonint::deserialize_vec")]
    pub coefs: Vec<BigInt>,
    pub words: Vec<Partition>,
}

/// Per-`n` working state: the Vandermonde, the target grid and a memo of
/// word images.
pub struct Harmonics {
    n: usize,
    delta: AltPoly,
    grid: BTreeMap<(usize, usize), u64>,
    memo: HashMap<Vec<usize>, AltPoly>,
    cache_dir: Option<PathBuf>,
}

impl Harmonics {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        Ok(Self { n, delta: AltPoly::vandermonde(n), grid: coefficient_grid(n), memo: HashMap::new(), cache_dir: None })
    }

    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vandermonde(&self) -> &AltPoly {
        &self.delta
    }

    /// Area-bounce grid of `c_n`, keyed by `(t-degree, q-degree)`.
    pub fn grid(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.grid
    }

    pub fn target(&self, a: usize, b: usize) -> u64 {
        self.grid.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
    }

    /// `E_mu Delta_{1^n}`, memoized on the parts of `mu`.
    pub fn word_alternant(&mut self, mu: &Partition) -> AltPoly {
        self.word_rec(mu.parts())
    }

    fn word_rec(&mut self, parts: &[usize]) -> AltPoly {
        if parts.is_empty() {
            return self.delta.clone();
        }
        if let Some(p) = self.memo.get(parts) {
            return p.clone();
        }
        let inner = self.word_rec(&parts[1..]);
        let p = if inner.is_zero() { inner } else { inner.apply_raw(OpKind::E, parts[0] as u16, 0) };
        self.memo.insert(parts.to_vec(), p.clone());
        p
    }

    /// Words `mu` with `|mu| = C(n,2) - a`, `b` parts, all parts in `1..n`,
    /// in decreasing lexicographic order.
    pub fn candidate_words(&self, a: usize, b: usize) -> Vec<Partition> {
        let top = binom2(self.n);
        if a > top || self.n < 2 && b > 0 {
            return Vec::new();
        }
        let filter = PartitionFilter::default().length(b).max_part(self.n.saturating_sub(1).max(1));
        partitions_of(top - a, filter)
    }

    fn check_bidegree(&self, a: usize, b: usize) -> Result<()> {
        if a + b > binom2(self.n) {
            return Err(Error::Precondition(format!(
                "bi-degree ({a},{b}) exceeds total degree {} for n={}",
                binom2(self.n),
                self.n
            )));
        }
        Ok(())
    }

    pub fn build_span(&mut self, a: usize, b: usize) -> Result<SpanAtBidegree> {
        self.check_bidegree(a, b)?;
        let words = self.candidate_words(a, b);
        let mut candidates = Vec::with_capacity(words.len());
        let mut ech: Echelon<Monomial> = Echelon::new(false);
        let mut selected = Vec::new();
        for (i, w) in words.into_iter().enumerate() {
            let p = self.word_alternant(&w);
            if ech.insert_int(p.terms().map(|(m, c)| (m.clone(), c.clone()))) == Insert::Independent {
                selected.push(i);
            }
            candidates.push((w, p));
        }
        let expected = self.target(a, b);
        if selected.len() as u64 != expected {
            return Err(Error::DimensionMismatch { n: self.n, a, b, span: selected.len(), expected });
        }
        Ok(SpanAtBidegree { n: self.n, bidegree: BiDegree::new(a, b), dim: selected.len(), candidates, selected })
    }

    /// Basis of `ker F` inside the span at `(u,v)`, as primitive integer
    /// combinations of the selected words.
    pub fn starters_kernel(&mut self, u: usize, v: usize) -> Result<Vec<StringStarter>> {
        if u < v {
            return Err(Error::Precondition(format!("starter bi-degree ({u},{v}) needs u >= v")));
        }
        let span = self.build_span(u, v)?;
        Ok(self.starters_from_span(&span))
    }

    fn starters_from_span(&self, span: &SpanAtBidegree) -> Vec<StringStarter> {
        let (u, v) = (span.bidegree.a, span.bidegree.b);
        let basis: Vec<&(Partition, AltPoly)> = span.selected.iter().map(|&i| &span.candidates[i]).collect();
        let mut ech: Echelon<Monomial> = Echelon::new(true);
        let mut out = Vec::new();
        for (_, p) in &basis {
            let fp = p.sl2_f();
            if let Insert::Dependent(Some(vec)) = ech.insert_int(fp.terms().map(|(m, c)| (m.clone(), c.clone()))) {
                let mut words = Vec::new();
                let mut coefs = Vec::new();
                let mut v0 = AltPoly::zero(self.n);
                for (c, (w, p)) in vec.iter().zip(&basis) {
                    if c.is_zero() {
                        continue;
                    }
                    words.push(w.clone());
                    coefs.push(c.clone());
                    v0 = v0.add(&p.scale(c)).expect("same n");
                }
                out.push(StringStarter { u, v, words, coefs, v0 });
            }
        }
        out
    }

    /// Span and starters at `(a,b)`, read from the cache directory when present.
    pub fn record(&mut self, a: usize, b: usize) -> Result<SpanRecord> {
        if let Some(dir) = self.cache_dir.clone() {
            if let Some(rec) = cache::load(&dir, self.n, a, b)? {
                return Ok(rec);
            }
            let rec = self.compute_record(a, b)?;
            cache::store(&dir, &rec)?;
            return Ok(rec);
        }
        self.compute_record(a, b)
    }

    pub fn compute_record(&mut self, a: usize, b: usize) -> Result<SpanRecord> {
        let span = self.build_span(a, b)?;
        let starters = if a >= b { self.starters_from_span(&span) } else { Vec::new() };
        Ok(SpanRecord {
            n: self.n,
            a,
            b,
            dim: span.dim,
            selected: span.selected_words(),
            starters: starters.into_iter().map(|s| StarterRecord { coefs: s.coefs, words: s.words }).collect(),
        })
    }

    /// Rebuilds a starter polynomial from its record.
    pub fn starter_from_record(&mut self, a: usize, b: usize, rec: &StarterRecord) -> StringStarter {
        let mut v0 = AltPoly::zero(self.n);
        for (c, w) in rec.coefs.iter().zip(&rec.words) {
            v0 = v0.add(&self.word_alternant(w).scale(c)).expect("same n");
        }
        StringStarter { u: a, v: b, words: rec.words.clone(), coefs: rec.coefs.clone(), v0 }
    }

    /// All bi-degrees `(a,b)` with `a + b <= C(n,2)`.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let top = binom2(self.n);
        (0..=top).flat_map(|a| (0..=top - a).map(move |b| (a, b))).collect()
    }

    /// Span dimensions at every bi-degree, zero entries omitted.
    pub fn dimension_grid(&mut self) -> Result<BTreeMap<(usize, usize), u64>> {
        let mut out = BTreeMap::new();
        for (a, b) in self.bidegrees() {
            let rec = self.record(a, b)?;
            if rec.dim > 0 {
                out.insert((a, b), rec.dim as u64);
            }
        }
        Ok(out)
    }

    /// All kernel starters, ordered by bi-degree.
    pub fn all_starters(&mut self) -> Result<Vec<StringStarter>> {
        let mut out = Vec::new();
        for (a, b) in self.bidegrees() {
            if a < b {
                continue;
            }
            let rec = self.record(a, b)?;
            for s in &rec.starters {
                out.push(self.starter_from_record(a, b, s));
            }
        }
        Ok(out)
    }

    /// Checks every string: `F v0 = 0`, the `H` eigenvalue, the string length,
    /// the joint rank of all string elements and the decomposition
    /// `dim W_{a,b} = rank E W_{a+1,b-1} + #starters(a,b)`.
    pub fn verify_sl2(&mut self) -> Result<Sl2Report> {
        let n = self.n;
        let mut failures = Vec::new();
        let mut strings = Vec::new();
        let mut by_degree: BTreeMap<(usize, usize), Vec<AltPoly>> = BTreeMap::new();
        let mut starters_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for s in self.all_starters()? {
            let label = format!("starter at ({},{}) = {}", s.u, s.v, describe(&s));
            let k = s.u - s.v;
            if !s.v0.sl2_f().is_zero() {
                failures.push(format!("{label}: F v0 != 0"));
            }
            let eig = BigInt::from(s.v as i64 - s.u as i64);
            if s.v0.sl2_h() != s.v0.scale(&eig) {
                failures.push(format!("{label}: H v0 != (v-u) v0"));
            }
            let mut cur = s.v0.clone();
            for i in 0..=k {
                if cur.is_zero() {
                    failures.push(format!("{label}: E^{i} v0 = 0 before the end of the string"));
                    break;
                }
                by_degree.entry((s.u - i, s.v + i)).or_default().push(cur.clone());
                cur = cur.sl2_e();
            }
            if !cur.is_zero() {
                failures.push(format!("{label}: E^{} v0 != 0", k + 1));
            }
            *starters_at.entry((s.u, s.v)).or_default() += 1;
            strings.push(StringSummary { u: s.u, v: s.v, length: k + 1, words: s.words.clone(), coefs: s.coefs.clone() });
        }
        let mut total_rank = 0;
        for (&(a, b), polys) in &by_degree {
            let r = alt_rank(polys);
            if r as u64 != self.target(a, b) {
                failures.push(format!("strings span rank {r} at ({a},{b}), expected {}", self.target(a, b)));
            }
            total_rank += r;
        }
        let catalan: u64 = self.grid.values().sum();
        if total_rank as u64 != catalan {
            failures.push(format!("strings span total rank {total_rank}, expected {catalan}"));
        }
        for (a, b) in self.bidegrees() {
            let dim = self.record(a, b)?.dim;
            let image = if b >= 1 && a < binom2(n) {
                let prev = self.record(a + 1, b - 1)?;
                let polys: Vec<AltPoly> = prev.selected.iter().map(|w| self.word_alternant(w).sl2_e()).collect();
                alt_rank(&polys)
            } else {
                0
            };
            let st = starters_at.get(&(a, b)).copied().unwrap_or(0);
            if dim != image + st {
                failures.push(format!("at ({a},{b}): dim {dim} != rank E-image {image} + starters {st}"));
            }
        }
        Ok(Sl2Report { n, strings, total_rank, failures })
    }
}

fn describe(s: &StringStarter) -> String {
    let parts: Vec<String> = s.coefs.iter().zip(&s.words).map(|(c, w)| format!("{c}*E{w}")).collect();
    parts.join(" + ")
}

/// Rank of a list of alternants.
pub fn alt_rank(polys: &[AltPoly]) -> usize {
    let mut order: Vec<&AltPoly> = polys.iter().collect();
    order.sort_by_key(|p| p.len());
    let mut ech: Echelon<Monomial> = Echelon::new(false);
    for p in order {
        ech.insert_int(p.terms().map(|(m, c)| (m.clone(), c.clone())));
    }
    ech.rank()
}

/// Whether two nonzero alternants are rational multiples of each other.
pub fn alt_proportional(a: &AltPoly, b: &AltPoly) -> bool {
    !a.is_zero() && !b.is_zero() && alt_rank(&[a.clone(), b.clone()]) == 1
}

#[derive(Debug, Clone, Serialize)]
pub struct StringSummary {
    pub u: usize,
    pub v: usize,
    pub length: usize,
    pub words: Vec<Partition>,
    #[serde(serialize_with = "crate::jsonint::serialize_vec")]
    pub coefs: Vec<BigInt>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub n: usize,
    pub strings: Vec<StringSummary>,
    pub total_rank: usize,
    pub failures: Vec<String>,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
