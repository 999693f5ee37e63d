//! Property tests for the laminar search on random matching covered graphs
//! of order up to 14, checked against the exhaustive oracle.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tightcut_core::elp::{is_barrier, is_two_separation};
use tightcut_core::laminar::{
    certify, derived_elp_cut, find_laminar_elp_with, find_structure_avoiding_with, AvoidOutcome,
    LaminarConfig, LaminarOutcome, Policy,
};
use tightcut_core::oracle::all_tight_cuts;
use tightcut_core::tightcuts::is_tight;
use tightcut_core::{boundary, laminar, Cut, Multigraph, VertexSet};

const MAX_N: usize = 14;

fn configs() -> [LaminarConfig; 2] {
    [Policy::SeparationFirst, Policy::BarrierFirst].map(|policy| LaminarConfig {
        policy,
        ..LaminarConfig::strict()
    })
}

fn nontrivial_tight(g: &Multigraph) -> (Vec<Cut>, BTreeSet<VertexSet>) {
    let tight = all_tight_cuts(g).unwrap();
    let shores = tight.iter().map(|c| c.shore().clone()).collect();
    (
        tight.into_iter().filter(|c| !c.is_trivial()).collect(),
        shores,
    )
}

/// Each trace line reads `<indent>n=<order>: ...`; deeper lines must be on
/// strictly smaller graphs than the line that opened them.
fn orders_shrink(trace: &[String]) -> bool {
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for line in trace {
        let depth = (line.len() - line.trim_start().len()) / 2;
        let n: usize = line.trim_start()[2..]
            .split(':')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        stack.truncate(depth);
        if let Some(&(_, parent)) = stack.last() {
            if n >= parent {
                return false;
            }
        }
        if stack.len() == depth {
            stack.push((depth, n));
        } else {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn laminar_search_is_total_and_certified(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let (cuts, shores) = nontrivial_tight(&g);
        for c in &cuts {
            for cfg in configs() {
                let r = find_laminar_elp_with(&g, c, &cfg)
                    .unwrap_or_else(|e| panic!("{g:?} {}: {e}", c.shore()));
                prop_assert!(r.divergence.is_none());
                prop_assert!(r.certificate.passed());
                prop_assert_eq!(certify(&g, c, &r.outcome).unwrap(), r.certificate);
                prop_assert!(orders_shrink(&r.trace), "{:?}", r.trace);
                match &r.outcome {
                    LaminarOutcome::ShelteredBarrier { barrier, shore_side } => {
                        prop_assert!(barrier.len() >= 2);
                        prop_assert!(barrier.members().is_subset(&shore_side.shore(c)));
                        prop_assert_eq!(is_barrier(&g, barrier.members()).unwrap(), Some(barrier.clone()));
                    }
                    LaminarOutcome::LaminarSeparation { sep, cut } => {
                        let (a, b) = sep.pair();
                        prop_assert!(is_two_separation(&g, a, b).unwrap().is_some());
                        prop_assert!(!cut.is_trivial());
                        prop_assert!(laminar(cut, c).unwrap());
                        prop_assert!(shores.contains(cut.shore()));
                    }
                }
                let d = derived_elp_cut(&g, c, &r).unwrap();
                prop_assert!(!d.cut().is_trivial());
                prop_assert!(shores.contains(d.cut().shore()));
                prop_assert!(laminar(d.cut(), c).unwrap());
                let again = find_laminar_elp_with(&g, c, &cfg).unwrap();
                prop_assert_eq!(again, r);
            }
        }
    }

    #[test]
    fn avoiding_search_respects_t(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        let n = g.vertex_count();
        let (cuts, shores) = nontrivial_tight(&g);
        for c in &cuts {
            for cfg in configs() {
                for t in g.vertices() {
                    let x = if c.shore().contains(t) { c.complement() } else { c.shore().clone() };
                    let out = find_structure_avoiding_with(&g, c, t, &cfg)
                        .unwrap_or_else(|e| panic!("{g:?} {} t={t}: {e}", c.shore()));
                    match out {
                        AvoidOutcome::SepAvoidingT { sep } => {
                            let (a, b) = sep.pair();
                            prop_assert!(!sep.contains(t));
                            prop_assert_eq!(is_two_separation(&g, a, b).unwrap(), Some(sep));
                        }
                        AvoidOutcome::SepThroughT { sep, cut, shore } => {
                            let (a, b) = sep.pair();
                            prop_assert!(sep.contains(t));
                            prop_assert_eq!(is_two_separation(&g, a, b).unwrap(), Some(sep.clone()));
                            prop_assert!(shore.is_disjoint(&x));
                            prop_assert_eq!(&cut, &boundary(&g, &shore).unwrap());
                            prop_assert!(!cut.is_trivial());
                            prop_assert!(shores.contains(cut.shore()));
                            let pair = sep.pair_set();
                            prop_assert_eq!(shore.intersection(&pair).len(), 1);
                            prop_assert!(sep.is_side(&shore.difference(&pair)));
                        }
                        AvoidOutcome::ShelteredBarrier { barrier } => {
                            prop_assert!(barrier.len() >= 2);
                            prop_assert_eq!(is_barrier(&g, barrier.members()).unwrap(), Some(barrier.clone()));
                            prop_assert!(barrier.members().is_subset(&x) || barrier.members().is_disjoint(&x));
                            prop_assert!(barrier.members().len() < n);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fallback_config_agrees_with_strict(seed in any::<u64>()) {
        let g = common::random_mc(seed, MAX_N);
        for c in nontrivial_tight(&g).0 {
            let strict = find_laminar_elp_with(&g, &c, &LaminarConfig::strict()).unwrap();
            let lenient = find_laminar_elp_with(&g, &c, &LaminarConfig::default()).unwrap();
            prop_assert_eq!(strict, lenient);
            prop_assert!(is_tight(&g, &c).unwrap());
        }
    }
}

#[test]
fn trace_orders_parse() {
    let trace = [
        "n=10: a".to_string(),
        "  n=8: b".to_string(),
        "    n=6: c".to_string(),
        "  n=8: d".to_string(),
    ];
    assert!(orders_shrink(&trace));
    assert!(!orders_shrink(&[
        "n=10: a".to_string(),
        "  n=10: b".to_string()
    ]));
}
