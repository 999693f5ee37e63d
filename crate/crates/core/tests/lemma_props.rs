//! Lifting, restriction, uncrossing and shore facts, checked exhaustively
//! on random matching covered graphs larger than the bundled corpus.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tightcut_core::oracle::{self, all_tight_cuts};
use tightcut_core::VertexSet;

const MAX_N: usize = 12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structures_lift_through_separation_contractions(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let (_, failures) = common::check_inheritance(&g);
        prop_assert!(failures.is_empty(), "{:?}: {:?}", g, failures);
    }

    #[test]
    fn barriers_restrict_to_shores(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let tight = all_tight_cuts(&g).unwrap();
        let (_, failures) = common::check_restriction(&g, &tight);
        prop_assert!(failures.is_empty(), "{:?}: {:?}", g, failures);
    }

    #[test]
    fn uncrossing_barrier_and_shore_facts(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let shores: BTreeSet<VertexSet> = all_tight_cuts(&g).unwrap().iter().map(|c| c.shore().clone()).collect();
        for rec in [
            oracle::check_uncrossing(&g, &shores).record(),
            oracle::check_barrier_structure(&g).record(),
            oracle::check_connected_shores(&g, &shores).record(),
            oracle::check_tightness_agreement(&g, &shores).unwrap().record(),
        ] {
            prop_assert!(rec.passed, "{:?} {}: {:?}", g, rec.name, rec.witness);
        }
    }

    #[test]
    fn verification_report_passes(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let report = oracle::verify_graph(&g, "random").unwrap();
        prop_assert!(report.matching_covered);
        let failed: Vec<_> = report.failures().collect();
        prop_assert!(failed.is_empty(), "{:?}: {:?}", g, failed);
    }
}
