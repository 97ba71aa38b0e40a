use std::sync::Arc;

use bbcompress::branching::{generate_tree, BranchingConfig, GenerationStatus};
use bbcompress::fixtures::{self, random_ip, RandomIpShape};
use bbcompress::instance::Instance;
use bbcompress::tree::{deserialize_tree, is_valid_compression_step, serialize_tree, BbTree};
use bbcompress::{ExtendedValue, Rational};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn ip_optimum(inst: &Instance<Rational>) -> ExtendedValue<Rational> {
    let bounds: Vec<(i64, i64)> = (0..inst.n())
        .map(|j| {
            let lo = inst.system.lower[j].finite().unwrap().to_i64().unwrap();
            let hi = inst.system.upper[j].finite().unwrap().to_i64().unwrap();
            (lo, hi)
        })
        .collect();
    let mut best = ExtendedValue::PosInf;
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        let xr: Vec<Rational> = x.iter().map(|v| Rational::from_integer((*v).into())).collect();
        if inst.system.contains(&xr, &Rational::from_integer(0.into())) {
            let v: Rational = inst.objective.iter().zip(&xr).map(|(c, v)| c * v).sum();
            best = best.min(ExtendedValue::Finite(v));
        }
        let mut j = 0;
        while j < x.len() && x[j] == bounds[j].1 {
            x[j] = bounds[j].0;
            j += 1;
        }
        if j == x.len() {
            return best;
        }
        x[j] += 1;
    }
}

fn check_structure(tree: &BbTree<Rational>) {
    let mut leaves = 0;
    let mut min_leaf = ExtendedValue::PosInf;
    for node in tree.nodes() {
        match node.children {
            None => {
                leaves += 1;
                min_leaf = min_leaf.min(node.lp.value.clone());
            }
            Some(kids) => {
                for k in kids {
                    let child = tree.node(k).unwrap();
                    assert_eq!(child.parent, Some(node.id));
                    assert_eq!(child.depth, node.depth + 1);
                    assert!(child.lp.value >= node.lp.value, "child below parent");
                }
            }
        }
    }
    assert_eq!(tree.size(), 2 * leaves - 1, "full binary tree");
    assert_eq!(tree.bound(), min_leaf);
    assert!(tree.revalidate().unwrap().is_empty());
}

#[test]
fn fixture_golden_values() {
    let fx = fixtures::box_fifth();
    assert_eq!(fx.tree.size(), 7);
    assert_eq!(fx.tree.subtree_size(fx.tree.root()).unwrap() - 1, 6);
    assert_eq!(fx.bound, ExtendedValue::Finite(Rational::from_integer(0.into())));
    let c = fx.tree.objective().to_vec();

    let dropped = fx.tree.drop_at(fx.right_child()).unwrap();
    assert_eq!(dropped.size(), 5);
    assert!(is_valid_compression_step(&fx.tree, &dropped, &c).unwrap());

    let replaced = fx.tree.replace_at(fx.tree.root(), fx.root_replacement.clone()).unwrap();
    assert_eq!(replaced.size(), 3);
    assert_eq!(replaced.bound(), fx.bound);
    assert!(is_valid_compression_step(&fx.tree, &replaced, &c).unwrap());

    let tri = fixtures::triangle();
    let half = ExtendedValue::Finite(Rational::new((-1).into(), 2.into()));
    assert_eq!(tri.tree.bound(), half);
    let after = tri
        .tree
        .replace_at(tri.tree.root(), tri.root_replacement.clone())
        .unwrap();
    assert_eq!(after.bound(), tri.bound_after_replace);
}

#[test]
fn serialized_trees_round_trip() {
    for fx in fixtures::all_fixtures() {
        let text = serialize_tree(&fx.tree);
        let back = deserialize_tree(&text, fx.tree.instance().clone()).unwrap();
        assert_eq!(back, fx.tree, "{}", fx.name);
    }
    let inst = Arc::new(random_ip(3, RandomIpShape::new(3, 3, 3)));
    let (tree, _) = generate_tree(inst.clone(), &BranchingConfig::fsb(), 0).unwrap();
    let back = deserialize_tree(&serialize_tree(&tree), inst).unwrap();
    assert_eq!(back, tree);
}

#[test]
fn other_instance_is_rejected() {
    let fx = fixtures::box_fifth();
    let other = fixtures::triangle();
    assert!(deserialize_tree(&serialize_tree(&fx.tree), other.tree.instance().clone()).is_err());
}

#[test]
fn node_limit_stops_generation() {
    let inst = Arc::new(random_ip(11, RandomIpShape::new(4, 5, 4)));
    let (tree, log) = generate_tree(inst, &BranchingConfig::fsb().with_node_limit(1), 0).unwrap();
    assert_eq!(tree.size(), 1);
    assert!(matches!(
        log.status,
        GenerationStatus::NodeLimit | GenerationStatus::Completed
    ));
}

#[test]
fn best_bound_selection_is_monotone() {
    for seed in 0..40 {
        let inst = random_ip(seed, RandomIpShape::new(4, 4, 5));
        let (_, log) = generate_tree(Arc::new(inst), &BranchingConfig::fsb(), seed).unwrap();
        let values: Vec<ExtendedValue<Rational>> = log
            .events
            .iter()
            .map(|e| ExtendedValue::parse_text(&e.value).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "seed {seed}: {:?}", log.events);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn completed_trees_certify_the_optimum(seed in 0u64..10_000, n in 2usize..=4, m in 0usize..=5, rb in any::<bool>()) {
        let inst = random_ip(seed, RandomIpShape::new(n, m, 4));
        let z = ip_optimum(&inst);
        let config = if rb { BranchingConfig::rb() } else { BranchingConfig::fsb() };
        let (tree, log) = generate_tree(Arc::new(inst), &config, seed).unwrap();
        prop_assert_eq!(log.status, GenerationStatus::Completed);
        check_structure(&tree);
        prop_assert_eq!(tree.bound(), z);
    }

    #[test]
    fn drop_and_replace_keep_the_tree_consistent(seed in 0u64..10_000) {
        let inst = random_ip(seed, RandomIpShape::new(3, 3, 3));
        let (tree, _) = generate_tree(Arc::new(inst), &BranchingConfig::fsb(), seed).unwrap();
        for node in tree.internal_nodes() {
            let sub = tree.subtree_size(node.id).unwrap();
            let dropped = tree.drop_at(node.id).unwrap();
            prop_assert_eq!(dropped.size(), tree.size() - sub + 1);
            check_structure(&dropped);
            let d = node.children.map(|k| tree.node(k[0]).unwrap().branch.clone().unwrap().disjunction).unwrap();
            let replaced = tree.replace_at(node.id, d).unwrap();
            prop_assert_eq!(replaced.size(), tree.size() - sub + 3);
            check_structure(&replaced);
        }
    }
}
