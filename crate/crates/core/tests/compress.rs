use std::sync::Arc;
use std::time::Duration;

use bbcompress::branching::{generate_tree, BranchingConfig};
use bbcompress::clock::Clock;
use bbcompress::compress::heuristic::HeuristicFinder;
use bbcompress::compress::{
    compress_with, exact_compress, heuristic_compress, replay_log, CompressMode, DropOnly, HeuristicConfig, StepAction,
    SupportMode,
};
use bbcompress::fixtures::{self, random_ip, RandomIpShape};
use bbcompress::ordering::{auc, order_nodes, precompute_records, simulate, Ordering, Trajectory};
use bbcompress::ExactTree;
use proptest::prelude::*;

/// First tree with at least five nodes, starting from `seed`.
fn random_tree(seed: u64, n: usize, m: usize) -> ExactTree {
    (seed..)
        .map(|s| {
            let inst = random_ip(s, RandomIpShape::new(n, m, 4));
            generate_tree(Arc::new(inst), &BranchingConfig::fsb(), s).unwrap().0
        })
        .find(|t| t.size() >= 5)
        .unwrap()
}

#[test]
fn both_methods_reach_three_nodes_on_the_box() {
    let fx = fixtures::box_fifth();
    let clock = Clock::virtual_clock();
    let (h, hlog) = heuristic_compress(&fx.tree, &HeuristicConfig::default(), None, &clock).unwrap();
    let (e, elog) = exact_compress(&fx.tree, &CompressMode::new(SupportMode::SuppInf), None, &clock).unwrap();
    assert_eq!(h.size(), 3);
    assert_eq!(e.size(), 3);
    for log in [&hlog, &elog] {
        let summary = replay_log(&fx.tree, log).unwrap();
        assert_eq!(summary.final_size, 3);
        assert_eq!(summary.final_bound, fx.bound);
    }
}

#[test]
fn replace_on_the_half_box_is_refused() {
    let fx = fixtures::box_half();
    let (t, log) = heuristic_compress(&fx.tree, &HeuristicConfig::default(), None, &Clock::virtual_clock()).unwrap();
    replay_log(&fx.tree, &log).unwrap();
    assert!(t.bound() >= fx.bound);
    assert!(log
        .applied()
        .all(|s| !matches!(&s.action, StepAction::Replace { disjunction } if *disjunction == fx.root_replacement)));
}

#[test]
fn logs_survive_json_lines() {
    let tree = random_tree(7, 3, 3);
    let (_, log) = heuristic_compress(&tree, &HeuristicConfig::default(), None, &Clock::virtual_clock()).unwrap();
    let back = bbcompress::compress::CompressionLog::from_jsonl(&log.to_jsonl()).unwrap();
    assert_eq!(back, log);
}

#[test]
fn every_ordering_ends_at_the_same_size() {
    for seed in 0..10 {
        let tree = random_tree(100 + seed, 3, 4);
        let clock = Clock::virtual_clock();
        let mut finder = HeuristicFinder {
            config: HeuristicConfig::default(),
        };
        let records = precompute_records(&tree, &mut finder, None, &clock).unwrap();
        let finals: Vec<usize> = Ordering::all(seed)
            .into_iter()
            .map(|o| {
                let order = order_nodes(&records, &tree, o).unwrap();
                let traj = simulate(&tree, &records, &order, f64::INFINITY);
                assert!(traj.final_size() <= tree.size());
                traj.final_size()
            })
            .collect();
        assert!(finals.windows(2).all(|w| w[0] == w[1]), "seed {seed}: {finals:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn heuristic_steps_replay_soundly(seed in 0u64..10_000, n in 2usize..=4, m in 1usize..=4) {
        let tree = random_tree(seed, n, m);
        let (out, log) = heuristic_compress(&tree, &HeuristicConfig::default(), None, &Clock::virtual_clock()).unwrap();
        let summary = replay_log(&tree, &log).unwrap();
        prop_assert_eq!(summary.final_size, out.size());
        prop_assert!(out.bound() >= tree.bound());
        for s in log.applied() {
            prop_assert!(s.size_after < s.size_before);
        }
    }

    #[test]
    fn variable_splits_never_beat_dropping(seed in 0u64..10_000) {
        let tree = random_tree(seed, 3, 2);
        let clock = Clock::virtual_clock();
        let (dropped, _) = compress_with(&tree, &mut DropOnly, None, None, &clock).unwrap();
        let mode = CompressMode {
            per_node_limit: Some(Duration::from_secs(60)),
            ..CompressMode::new(SupportMode::Supp(1))
        };
        let (split, log) = exact_compress(&tree, &mode, None, &clock).unwrap();
        prop_assert!(split.size() >= dropped.size());
        for s in &log.steps {
            prop_assert_eq!(&s.bound_before, &s.bound_after);
        }
    }

    #[test]
    fn auc_stays_in_range(
        s0 in 1usize..200,
        cuts in prop::collection::vec((0.0f64..50.0, 0usize..200), 0..8),
        horizon in 1.0f64..500.0,
        terminal in any::<bool>(),
    ) {
        let mut size = s0;
        let steps = cuts
            .into_iter()
            .map(|(t, drop)| {
                size = size.saturating_sub(drop).max(1);
                (t, size)
            })
            .collect();
        let a = auc(&Trajectory { s0, horizon, steps }, terminal).unwrap();
        prop_assert!((0.0..=100.0).contains(&a));
    }
}
