use std::time::Duration;

use proptest::prelude::*;

use knodel_core::exact::{Budget, Decision, DomGraph, Method, Solve, SolveOptions};
use knodel_core::knodel::KnodelGraph;
use knodel_core::verify::{certify, remainder_lower, tight_set_check};

/// Smallest dominating set size by scanning every subset mask.
fn brute_gamma(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut closed: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    for &(u, v) in edges {
        closed[u] |= 1 << v;
        closed[v] |= 1 << u;
    }
    let full = (1u32 << n) - 1;
    (0..=full)
        .filter(|&m| {
            let mut union = 0;
            for (v, c) in closed.iter().enumerate() {
                if m >> v & 1 == 1 {
                    union |= c;
                }
            }
            union == full
        })
        .map(|m| m.count_ones() as u64)
        .min()
        .unwrap()
}

fn small_budget(nodes: u64) -> SolveOptions {
    SolveOptions {
        budget: Budget {
            max_nodes: nodes,
            max_time: Duration::from_secs(20),
        },
        bb_ceiling: 512,
        ..SolveOptions::default()
    }
}

fn exact(s: Solve) -> u64 {
    s.gamma().expect("solved within budget")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn branch_bound_matches_brute_force(n in 1usize..=14, raw in proptest::collection::vec((0usize..14, 0usize..14), 0..40)) {
        let mut edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = DomGraph::from_edges(n, &edges).unwrap();
        let want = brute_gamma(n, &edges);
        let bb = g.solve(&SolveOptions::default()).unwrap();
        let Solve::Exact(r) = bb else { panic!("tiny graph left inconclusive") };
        prop_assert_eq!(r.gamma, want);
        prop_assert_eq!(r.witness.len() as u64, want);
        prop_assert_eq!(g.exhaustive(24).unwrap().gamma, want);
        prop_assert!(matches!(g.decide(want as usize, &SolveOptions::default()).unwrap(), Decision::Yes(_)));
        if want > 0 {
            prop_assert_eq!(g.decide(want as usize - 1, &SolveOptions::default()).unwrap(), Decision::No);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // exercises the per-side pruning, which only fires on bipartite input
    #[test]
    fn bipartite_pruning_matches_brute_force(half in 1usize..=8, raw in proptest::collection::vec((0usize..8, 0usize..8), 0..40)) {
        let n = 2 * half;
        let mut edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(a, b)| (2 * (a % half), 2 * (b % half) + 1))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = DomGraph::from_edges(n, &edges).unwrap();
        let want = brute_gamma(n, &edges);
        prop_assert_eq!(exact(g.solve(&SolveOptions::default()).unwrap()), want);
        let off = SolveOptions { remainder_bound: false, ..SolveOptions::default() };
        prop_assert_eq!(exact(g.solve(&off).unwrap()), want);
    }
}

#[test]
fn knodel_orders_match_brute_force() {
    for n in (6..=20).step_by(2) {
        for k in 1..=KnodelGraph::build(n, None).unwrap().degree() {
            let g = KnodelGraph::build(n, Some(k)).unwrap();
            let want = brute_gamma(n, &g.edges());
            let d = DomGraph::from_knodel(&g);
            let r = d.solve(&SolveOptions::default()).unwrap().exact().unwrap();
            assert_eq!(r.gamma, want, "KG({n}, {k})");
            assert!(certify(&g, &r.witness).unwrap().dominating);
        }
    }
}

#[test]
fn exhaustive_and_branch_bound_agree_up_to_24() {
    let exhaustive = SolveOptions {
        method: Method::Exhaustive,
        ..SolveOptions::default()
    };
    for n in (6..=24).step_by(2) {
        let g = DomGraph::from_knodel(&KnodelGraph::build(n, None).unwrap());
        assert_eq!(
            exact(g.solve(&exhaustive).unwrap()),
            exact(g.solve(&SolveOptions::default()).unwrap()),
            "n = {n}"
        );
    }
}

#[test]
fn known_values() {
    for (n, gamma) in [(6, 2), (8, 2), (10, 3), (12, 4), (16, 4), (20, 4), (24, 6), (30, 6)] {
        let g = DomGraph::from_knodel(&KnodelGraph::build(n, None).unwrap());
        assert_eq!(exact(g.solve(&SolveOptions::default()).unwrap()), gamma, "n = {n}");
    }
}

#[test]
fn tight_sets_are_efficient_and_balanced() {
    let opts = small_budget(2_000_000);
    let mut found = 0;
    for n in (6..=512usize).step_by(2) {
        let g = KnodelGraph::build(n, None).unwrap();
        let k1 = g.degree() as usize + 1;
        if n % k1 != 0 {
            continue;
        }
        let decision = DomGraph::from_knodel(&g).decide(n / k1, &opts).unwrap();
        if let Decision::Yes(set) = decision {
            assert_eq!(set.len(), n / k1, "below the degree bound at n = {n}");
            assert!(tight_set_check(&g, &set).unwrap().holds(), "n = {n}");
            found += 1;
        } else if (n / k1) % 2 == 1 && n <= 128 {
            // odd tight sizes are never met, and small ones should be settled
            assert_eq!(decision, Decision::No, "n = {n}");
        }
    }
    assert!(found >= 3);
}

#[test]
fn remainder_bound_holds_without_using_it() {
    let opts = SolveOptions {
        remainder_bound: false,
        ..small_budget(u64::MAX)
    };
    for n in [24usize, 40, 52] {
        let g = KnodelGraph::build(n, None).unwrap();
        let lower = remainder_lower(n as u64, g.degree() as u64).unwrap();
        let d = DomGraph::from_knodel(&g);
        assert_eq!(d.decide(lower as usize - 1, &opts).unwrap(), Decision::No, "n = {n}");
    }
}
