//! Symmetric group characters and Schur functions in the power-sum basis.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

thread_local! {
    static MEMO: RefCell<HashMap<(Vec<usize>, Vec<usize>), i64>> = RefCell::new(HashMap::new());
}

/// `chi^lambda_mu` by the Murnaghan-Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), got: mu.size() });
    }
    Ok(mn_rec(lambda.parts(), mu.parts()))
}

fn mn_rec(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let r = mu[0];
    let len = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // rim hook height = number of beta numbers strictly between target and b
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> =
            nb.iter().enumerate().map(|(j, &c)| c - (len - 1 - j)).filter(|&p| p > 0).collect();
        let v = mn_rec(&shape, &mu[1..]);
        total += if between % 2 == 0 { v } else { -v };
    }
    MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// `s_lambda = sum_mu chi^lambda_mu / z_mu p_mu`, over every `mu` of `|lambda|`
/// in decreasing lexicographic order, zero coefficients included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerExpansion {
    pub lambda: Partition,
    pub entries: Vec<(Partition, BigRational)>,
}

impl PowerExpansion {
    pub fn coefficient(&self, mu: &Partition) -> Option<&BigRational> {
        self.entries.iter().find(|(m, _)| m == mu).map(|(_, c)| c)
    }
}

impl Serialize for PowerExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            mu: &'a Partition,
            coef: String,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (mu, c) in &self.entries {
            seq.serialize_element(&Entry { mu, coef: c.to_string() })?;
        }
        seq.end()
    }
}

pub fn schur_to_power(lambda: &Partition) -> PowerExpansion {
    let m = lambda.size();
    let entries = partitions_of(m, Default::default())
        .into_iter()
        .map(|mu| {
            let chi = mn_rec(lambda.parts(), mu.parts());
            let c = BigRational::new(BigInt::from(chi), mu.z());
            (mu, c)
        })
        .collect();
    PowerExpansion { lambda: lambda.clone(), entries }
}
