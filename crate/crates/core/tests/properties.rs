//! Invariants of the exact layer over random words and word lists.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use tracegenus::band::{band_genus_expansion, band_index_count, BandConfig, ConstraintGraph};
use tracegenus::limits::clt_params;
use tracegenus::wick::{
    atom_free_expansion_by_inclusion_exclusion, entrywise_wick_oracle, EntryModel,
};
use tracegenus::word::trace_distinct;
use tracegenus::{
    atom_free_expansion, bi_atomic_count, brute_force_wick_oracle, enumerate_pairings, genus_expansion, glue,
    spherical_counts, Ensemble, Letter, Word,
};

const ENSEMBLES: [Ensemble; 4] = [Ensemble::GinibreComplex, Ensemble::GinibreReal, Ensemble::Gue, Ensemble::Goe];

fn arb_letter(ensembles: &'static [Ensemble]) -> impl Strategy<Value = Letter> {
    (0..ensembles.len(), 1..3u32, any::<bool>(), any::<bool>())
        .prop_map(move |(e, i, t, c)| Letter::new(ensembles[e], i, t, c))
}

fn arb_word(ensembles: &'static [Ensemble], max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(arb_letter(ensembles), 1..=max).prop_map(|v| Word::new(v).unwrap())
}

fn star_free_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..4u32, 1..=max).prop_map(|v| Word::new(v.into_iter().map(Letter::g).collect()).unwrap())
}

/// Balanced lists: letters together with their adjoints, shuffled and cut
/// into `1..=3` faces.
fn balanced_list(ensembles: &'static [Ensemble], max_pairs: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(arb_letter(ensembles), 1..=max_pairs)
        .prop_flat_map(|ls| {
            let mut all: Vec<Letter> = ls.iter().map(|l| l.adjoint()).collect();
            all.extend(ls);
            let m = all.len();
            (Just(all).prop_shuffle(), prop::collection::vec(1..m, 0..=2))
        })
        .prop_map(|(letters, mut cuts)| {
            cuts.push(0);
            cuts.push(letters.len());
            cuts.sort_unstable();
            cuts.dedup();
            cuts.windows(2)
                .map(|c| Word::new(letters[c[0]..c[1]].to_vec()).unwrap())
                .collect()
        })
}

fn concat(words: &[Word]) -> Word {
    words[1..].iter().fold(words[0].clone(), |acc, w| acc.concat(w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn oracle_equivalence(words in balanced_list(&ENSEMBLES, 4), n in 1..=3usize) {
        let poly = genus_expansion(&words).unwrap();
        prop_assert_eq!(poly.evaluate(n as i64), brute_force_wick_oracle(&words, n).unwrap());
    }

    #[test]
    fn oracle_equivalence_unbalanced(words in prop::collection::vec(arb_word(&ENSEMBLES, 3), 1..=3), n in 1..=3usize) {
        prop_assume!(words.iter().map(Word::len).sum::<usize>() <= 8);
        let poly = genus_expansion(&words).unwrap();
        prop_assert_eq!(poly.evaluate(n as i64), brute_force_wick_oracle(&words, n).unwrap());
    }

    #[test]
    fn exponent_identity_and_even_orientable_euler(words in balanced_list(&ENSEMBLES, 5)) {
        for p in enumerate_pairings(&words).unwrap() {
            let s = glue(&words, &p).unwrap();
            prop_assert_eq!(s.exponent(), s.topological_exponent());
            for c in &s.components {
                prop_assert!(!c.orientable || c.euler % 2 == 0);
            }
        }
    }

    #[test]
    fn ginibre_and_gue_words_are_orientable(
        words in balanced_list(&[Ensemble::GinibreComplex, Ensemble::Gue], 5)
    ) {
        // Only plain H letters and G, G* are allowed here.
        let words: Vec<Word> = words
            .iter()
            .map(|w| Word::new(w.letters().iter().map(|l| match l.ensemble {
                Ensemble::Gue => Letter::new(Ensemble::Gue, l.index, false, false),
                _ => Letter::new(l.ensemble, l.index, l.conjugated, l.conjugated),
            }).collect()).unwrap())
            .collect();
        for p in enumerate_pairings(&words).unwrap() {
            prop_assert!(glue(&words, &p).unwrap().components.iter().all(|c| c.orientable));
        }
    }

    #[test]
    fn unbalanced_lists_have_zero_expansion(words in prop::collection::vec(arb_word(&ENSEMBLES, 4), 1..=3)) {
        if !concat(&words).is_balanced() {
            prop_assert!(genus_expansion(&words).unwrap().is_zero());
        }
    }

    #[test]
    fn atom_free_bound_and_bi_atomic_constant(words in balanced_list(&[Ensemble::GinibreComplex, Ensemble::GinibreReal], 4)) {
        let af = atom_free_expansion(&words).unwrap();
        prop_assert!(af.degree().is_none_or(|d| d <= 0));
        prop_assert_eq!(af.clone(), atom_free_expansion_by_inclusion_exclusion(&words).unwrap());
        prop_assert_eq!(af.coeff(0), BigInt::from(bi_atomic_count(&words).unwrap()));
        if words.len() % 2 == 1 {
            prop_assert!(af.coeff(0).is_zero());
        }
    }

    #[test]
    fn spherical_counts_are_star_symmetric(w in arb_word(&ENSEMBLES, 5)) {
        let s = spherical_counts(&w).unwrap();
        prop_assert_eq!(s, spherical_counts(&w.star()).unwrap());
        prop_assert!(s.b >= s.c);
        prop_assert!(s.b >= 1);
    }

    #[test]
    fn star_stable_words_have_real_limits(w in arb_word(&[Ensemble::GinibreComplex], 5)) {
        if w.is_star_stable() {
            let p = clt_params(&w).unwrap();
            prop_assert_eq!(p.b, p.c);
            prop_assert!(p.var_im.is_zero());
        }
    }

    #[test]
    fn trace_distinct_words_factorize(w1 in star_free_word(3), w2 in star_free_word(3)) {
        prop_assume!(trace_distinct(&w1, &w2));
        let af = atom_free_expansion(&[w1.clone(), w1.star(), w2.clone(), w2.star()]).unwrap();
        let b = |w: &Word| spherical_counts(w).unwrap().b;
        prop_assert_eq!(af.coeff(0), BigInt::from(b(&w1) * b(&w2)));
    }

    #[test]
    fn full_band_is_the_dense_expansion(words in balanced_list(&[Ensemble::GinibreComplex], 4), n in 1..=5u64) {
        let cfg = BandConfig::new(n, n).unwrap();
        prop_assert_eq!(
            band_genus_expansion(&words, &cfg).unwrap(),
            genus_expansion(&words).unwrap().evaluate(n as i64)
        );
    }

    #[test]
    fn band_matches_entrywise_oracle(words in balanced_list(&[Ensemble::GinibreComplex], 3), n in 1..=6u64, b in 1..=2u64) {
        prop_assume!(words.iter().map(Word::len).sum::<usize>() <= 6);
        let cfg = BandConfig::new(n, b).unwrap();
        prop_assert_eq!(
            band_genus_expansion(&words, &cfg).unwrap(),
            entrywise_wick_oracle(&words, n as usize, EntryModel::Band { b: b as usize }).unwrap()
        );
    }

    #[test]
    fn band_counts_full_and_monotone(
        v in 1..=5usize,
        edges in prop::collection::vec((0..5usize, 0..5usize), 0..6),
        n in 3..=9u64,
    ) {
        let g = ConstraintGraph::new(v, edges.into_iter().map(|(a, b)| (a % v, b % v)));
        let mut prev = BigInt::zero();
        for b in 0..=n {
            let c = band_index_count(&g, &BandConfig::new(n, b.max(1)).unwrap()).unwrap();
            prop_assert!(c >= prev);
            prev = c;
        }
        let full = band_index_count(&g, &BandConfig::new(n, n).unwrap()).unwrap();
        prop_assert_eq!(full.to_u64().unwrap(), n.pow(v as u32));
    }
}
