//! Property suites over whole families of generators, as used by `verify`.

use serde::Serialize;

use crate::error::Result;
use crate::mvpoly::{MultiPoly, Var};

use super::{apply_word, commutator_check, harmonic_preservation_check, sl2_e, vandermonde, OpGen};

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All `(r,s)` with `1 <= r+s <= max_total`.
pub fn index_pairs(max_total: u16) -> Vec<(u16, u16)> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        for r in 0..=total {
            out.push((r, total - r));
        }
    }
    out
}

/// `[F,F]`, `[F,E]` and `[E,E]` for every pair of index pairs, on every polynomial.
pub fn commutator_suite(max_total: u16, polys: &[MultiPoly]) -> Result<PropertyReport> {
    let pairs = index_pairs(max_total);
    let mut report = PropertyReport { checks: 0, failures: Vec::new() };
    for &(p, q) in &pairs {
        for &(r, s) in &pairs {
            let gens = [
                (OpGen::f(p, q)?, OpGen::f(r, s)?),
                (OpGen::f(p, q)?, OpGen::e(r, s)?),
                (OpGen::e(p, q)?, OpGen::e(r, s)?),
            ];
            for (g1, g2) in gens {
                for (i, poly) in polys.iter().enumerate() {
                    report.checks += 1;
                    if !commutator_check(&g1, &g2, poly)? {
                        report.failures.push(format!("[{g1},{g2}] on sample {i}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A fixed set of diagonal harmonics: the Vandermonde, a few E-words applied
/// to it, and one derivative.
pub fn harmonic_test_set(n: usize) -> Vec<MultiPoly> {
    let v = vandermonde(n);
    let mut set = vec![v.clone(), sl2_e(&v)];
    for w in ["E2", "E1 E1", "E2 E1", "E(1,1)"] {
        let p = apply_word(&w.parse().expect("fixed word"), &v);
        if !p.is_zero() {
            set.push(p);
        }
    }
    let d = v.partial(Var::X(0), 1);
    if !d.is_zero() {
        set.push(d);
    }
    set.retain(|p| !p.is_zero());
    set
}

/// Every `E(r,s)` and `F(r,s)` with `r+s <= max_total` on the test set.
pub fn harmonicity_suite(n: usize, max_total: u16) -> Result<PropertyReport> {
    let set = harmonic_test_set(n);
    let mut report = PropertyReport { checks: 0, failures: Vec::new() };
    for (r, s) in index_pairs(max_total) {
        for g in [OpGen::e(r, s)?, OpGen::f(r, s)?] {
            for (i, p) in set.iter().enumerate() {
                report.checks += 1;
                if !harmonic_preservation_check(&g, p)? {
                    report.failures.push(format!("{g} on test polynomial {i}"));
                }
            }
        }
    }
    Ok(report)
}
