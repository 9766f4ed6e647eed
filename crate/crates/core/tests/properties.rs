use proptest::prelude::*;

use dha_core::binom2;
use dha_core::dyck::{coefficient_grid, enumerate};
use dha_core::harmonics::{alt_rank, allen_basis, Harmonics, LexOrder, SpanRecord};
use dha_core::operators::{apply_word, vandermonde, AltPoly, OperatorWord};
use dha_core::partitions::Partition;

fn word(n: usize) -> impl Strategy<Value = (usize, Partition)> {
    (2..=n).prop_flat_map(|n| (Just(n), proptest::collection::vec(1..n, 0..4)))
        .prop_map(|(n, parts)| (n, Partition::from_unsorted(parts)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn words_are_bihomogeneous((n, w) in word(5)) {
        let mut h = Harmonics::new(n).unwrap();
        let p = h.word_alternant(&w);
        if let Some(d) = p.bidegree() {
            prop_assert_eq!((d.a + w.size(), d.b), (binom2(n), w.len()));
        } else {
            prop_assert!(p.is_zero());
        }
    }

    #[test]
    fn compressed_words_match_expanded((n, w) in word(4)) {
        let mut h = Harmonics::new(n).unwrap();
        let full = apply_word(&OperatorWord::from_partition(&w), &vandermonde(n));
        prop_assert_eq!(h.word_alternant(&w).expand(), full);
    }

    #[test]
    fn ef_commutator_is_h((n, w) in word(5)) {
        let mut h = Harmonics::new(n).unwrap();
        let p = h.word_alternant(&w);
        let ef = p.sl2_f().sl2_e().sub(&p.sl2_e().sl2_f()).unwrap();
        prop_assert_eq!(ef, p.sl2_h());
    }

    #[test]
    fn span_records_survive_json((a, b) in (0usize..=6).prop_flat_map(|a| (Just(a), 0..=6 - a))) {
        let mut h = Harmonics::new(4).unwrap();
        let rec = h.compute_record(a, b).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        let back: SpanRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(rec.dim as u64, coefficient_grid(4).get(&(a, b)).copied().unwrap_or(0));
    }
}

#[test]
fn starters_sit_on_or_below_the_diagonal() {
    for n in 1..=6 {
        let mut h = Harmonics::new(n).unwrap();
        for s in h.all_starters().unwrap() {
            assert!(s.u >= s.v, "n={n}: ({},{})", s.u, s.v);
        }
    }
}

#[test]
fn large_e_annihilates_the_vandermonde() {
    for n in 1..=5 {
        let v = AltPoly::vandermonde(n);
        for r in n as u16..n as u16 + 3 {
            assert!(v.apply_raw(dha_core::operators::OpKind::E, r, 0).is_zero());
        }
    }
}

#[test]
fn copartition_basis_at_6() {
    let basis = allen_basis(6, LexOrder::DecreasingLex).unwrap();
    assert_eq!(basis.len(), enumerate(6).len());
    let mut by: std::collections::BTreeMap<(usize, usize), Vec<AltPoly>> = Default::default();
    for e in basis {
        by.entry((e.a, e.b)).or_default().push(e.alt);
    }
    let counts: std::collections::BTreeMap<(usize, usize), u64> =
        by.iter().map(|(&k, v)| (k, v.len() as u64)).collect();
    assert_eq!(counts, coefficient_grid(6));
    for polys in by.values() {
        assert_eq!(alt_rank(polys), polys.len());
    }
}
