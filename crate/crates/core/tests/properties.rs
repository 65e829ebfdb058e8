use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schemelab::capture::{captured, is_captured};
use schemelab::finset::FinSet;
use schemelab::gaps::{hausdorff_gap, levelwise_diff};
use schemelab::laws;
use schemelab::oracle::captured_naive;
use schemelab::posets::{compatible, is_condition, Condition, PosetView};
use schemelab::typeseq::{random_prefix, PrefixBounds, Triple};
use schemelab::verify::conditions_hold;
use schemelab::{build_scheme, make_type_prefix, Scheme, TypeSequence};

fn prefix(max_height: usize, max_domain: usize) -> impl Strategy<Value = TypeSequence> {
    (1..=max_height, any::<u64>()).prop_filter_map("domain bound", move |(height, seed)| {
        let bounds = PrefixBounds {
            height,
            max_n: 4,
            max_r: usize::MAX,
            max_domain,
        };
        random_prefix(&mut ChaCha8Rng::seed_from_u64(seed), bounds)
    })
}

fn small_scheme() -> impl Strategy<Value = Scheme> {
    prefix(4, 24).prop_map(|t| build_scheme(&t))
}

fn subset_of(domain: usize, size: usize) -> impl Strategy<Value = FinSet> {
    proptest::sample::subsequence((0..domain).collect::<Vec<_>>(), size).prop_map(FinSet::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn prefix_acceptance_matches_the_conditions(
        raw in proptest::collection::vec((0usize..12, 0usize..5, 0usize..10), 1..5)
    ) {
        let triples: Vec<Triple> = raw.iter().map(|&t| t.into()).collect();
        prop_assert_eq!(make_type_prefix(&triples).is_ok(), conditions_hold(&triples));
    }

    #[test]
    fn type_json_roundtrip(t in prefix(6, 400)) {
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<TypeSequence>(&text).unwrap(), t);
    }

    #[test]
    fn schemes_satisfy_their_axioms(t in prefix(5, 160)) {
        let s = build_scheme(&t);
        prop_assert!(s.verify_axioms().is_empty());
        prop_assert_eq!(s.level(s.height()).len(), 1);
        prop_assert_eq!(s.level(0).len(), t.domain_size());
    }

    #[test]
    fn canonical_functions_obey_their_laws(t in prefix(4, 64)) {
        let s = build_scheme(&t);
        let v = laws::all_scheme_laws(&s);
        prop_assert!(v.is_empty(), "{}", v[0]);
        let v = laws::h_ideal_laws(&s);
        prop_assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn fast_paths_agree_with_the_oracle(t in prefix(4, 64)) {
        let v = laws::oracle_agreement(&build_scheme(&t));
        prop_assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn captured_agrees_with_its_expansion(
        s in small_scheme(),
        size in 1usize..=3,
        count in 2usize..=3,
        picks in proptest::collection::vec(any::<proptest::sample::Index>(), 3),
    ) {
        let d = s.domain_size();
        prop_assume!(size <= d);
        let all: Vec<Vec<usize>> = (0..d).combinations(size).collect();
        let family: Vec<FinSet> = picks[..count].iter().map(|i| FinSet::from_unsorted(i.get(&all).iter().copied())).collect();
        for l in 0..=s.height() + 1 {
            prop_assert_eq!(captured(&s, &family, l), captured_naive(&s, &family, l), "l={} {:?}", l, family);
        }
    }

    #[test]
    fn captured_families_fill_one_member(s in small_scheme(), size in 1usize..=2, seed in any::<u64>()) {
        let d = s.domain_size();
        prop_assume!(2 * size <= d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = schemelab::verify::sample_root_tail_tail(&mut rng, d, size, 2);
        for l in 1..=s.height() {
            if let Ok(Some(_)) = is_captured(&s, &fam, l) {
                let union = fam[0].union(&fam[1]);
                prop_assert_eq!(s.rho_set(&union).unwrap(), l);
            }
        }
    }

    #[test]
    fn finset_algebra_matches_btreeset(a in subset_of(40, 12), b in subset_of(40, 9)) {
        let sa: BTreeSet<usize> = a.iter().collect();
        let sb: BTreeSet<usize> = b.iter().collect();
        prop_assert_eq!(a.union(&b).into_vec(), sa.union(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.intersection(&b).into_vec(), sa.intersection(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.difference(&b).into_vec(), sa.difference(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
        prop_assert_eq!(a.is_disjoint(&b), sa.is_disjoint(&sb));
    }

    #[test]
    fn sep_conditions_are_downward_closed(
        entries in proptest::collection::btree_map(0usize..64, 0usize..6, 0..5)
    ) {
        let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap());
        let diff = levelwise_diff(&hausdorff_gap(&s).unwrap(), &s.domain()).unwrap();
        let v = PosetView::sep(&diff);
        let map: BTreeMap<usize, usize> = entries.into_iter().filter(|(k, _)| diff.index().contains(*k)).collect();
        let c = Condition::Map(map.clone());
        if is_condition(&v, &c).unwrap() {
            prop_assert!(compatible(&v, &c, &c).unwrap());
            for k in map.keys() {
                let mut smaller = map.clone();
                smaller.remove(k);
                prop_assert!(is_condition(&v, &Condition::Map(smaller)).unwrap());
            }
        }
    }
}
