//! Small worked examples and seeded random instances.

use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{write_json_instance, Instance};
use crate::lp::{LinearSystem, Row};
use crate::scalar::{ratio, ExtendedValue, Rational};
use crate::tree::{serialize_tree, BbTree, Disjunction, NodeId};

/// An instance, a hand-built tree over it, and the values the tree should show.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub tree: BbTree<Rational>,
    /// `d(T, c)` of `tree`.
    pub bound: ExtendedValue<Rational>,
    /// The disjunction `(1,1), 0` used for replacing at the root.
    pub root_replacement: Disjunction,
    /// `d` after replacing at the root with `root_replacement`.
    pub bound_after_replace: ExtendedValue<Rational>,
}

impl Fixture {
    /// Right child of the root.
    pub fn right_child(&self) -> NodeId {
        self.tree
            .node(self.tree.root())
            .expect("root")
            .children
            .expect("root is split")[1]
    }
}

fn finite(num: i64, den: i64) -> ExtendedValue<Rational> {
    ExtendedValue::Finite(ratio(num, den))
}

/// The seven-node tree: split on `x1` at the root, then on `x2` below the
/// left child and on `x1` again below the (empty) right child.
fn seven_node_tree(instance: Instance<Rational>) -> BbTree<Rational> {
    let mut tree = BbTree::new(Arc::new(instance)).expect("fixture instance is valid");
    let root = tree.root();
    let [v1, v2] = tree
        .branch_leaf(root, Disjunction::variable(0, 0))
        .expect("root splits");
    tree.branch_leaf(v1, Disjunction::variable(1, 0)).expect("left splits");
    tree.branch_leaf(v2, Disjunction::variable(0, 0)).expect("right splits");
    tree
}

fn minus_ones() -> Vec<Rational> {
    vec![ratio(-1, 1), ratio(-1, 1)]
}

fn all_ones() -> Disjunction {
    Disjunction::new([(0, 1), (1, 1)], 0).expect("nonzero")
}

/// `P = [0, 1/5]^2`, `c = (-1, -1)`.
pub fn box_fifth() -> Fixture {
    let system = LinearSystem::boxed(2, ratio(0, 1), ratio(1, 5));
    Fixture {
        name: "box_fifth",
        tree: seven_node_tree(Instance::pure("box_fifth", minus_ones(), system)),
        bound: finite(0, 1),
        root_replacement: all_ones(),
        bound_after_replace: finite(0, 1),
    }
}

/// `P = [0, 1/2]^2`, where the root replacement stops being a compression.
pub fn box_half() -> Fixture {
    let system = LinearSystem::boxed(2, ratio(0, 1), ratio(1, 2));
    Fixture {
        name: "box_half",
        tree: seven_node_tree(Instance::pure("box_half", minus_ones(), system)),
        bound: finite(0, 1),
        root_replacement: all_ones(),
        bound_after_replace: finite(-1, 1),
    }
}

/// Triangle with vertices `(-1/2,-1/2), (-1/2,1), (1,-1/2)`.
pub fn triangle() -> Fixture {
    let half = ratio(1, 2);
    let system = LinearSystem::free(2)
        .with_row(Row::new([(0, ratio(-1, 1))], half.clone()))
        .with_row(Row::new([(1, ratio(-1, 1))], half.clone()))
        .with_row(Row::new([(0, ratio(1, 1)), (1, ratio(1, 1))], half));
    Fixture {
        name: "triangle",
        tree: seven_node_tree(Instance::pure("triangle", minus_ones(), system)),
        bound: finite(-1, 2),
        root_replacement: all_ones(),
        bound_after_replace: finite(0, 1),
    }
}

pub fn all_fixtures() -> Vec<Fixture> {
    vec![box_fifth(), box_half(), triangle()]
}

/// Shape of a random pure integer program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomIpShape {
    pub n: usize,
    pub m: usize,
    /// Coefficients are drawn from `-coeff_range..=coeff_range`.
    pub coeff_range: i64,
}

impl RandomIpShape {
    pub fn new(n: usize, m: usize, coeff_range: i64) -> Self {
        RandomIpShape { n, m, coeff_range }
    }
}

/// Seeded pure IP over an integer box with `m` extra rows. The region always
/// contains an integer point, and the box keeps every LP bounded.
pub fn random_ip(seed: u64, shape: RandomIpShape) -> Instance<Rational> {
    assert!(shape.n >= 1 && shape.coeff_range >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = shape.coeff_range;
    let lower: Vec<i64> = (0..shape.n).map(|_| rng.random_range(-2..=0)).collect();
    let upper: Vec<i64> = lower.iter().map(|l| l + rng.random_range(1..=3)).collect();
    let anchor: Vec<i64> = lower
        .iter()
        .zip(&upper)
        .map(|(l, u)| rng.random_range(*l..=*u))
        .collect();
    let mut system = LinearSystem::free(shape.n);
    for j in 0..shape.n {
        system.lower[j] = ExtendedValue::Finite(ratio(lower[j], 1));
        system.upper[j] = ExtendedValue::Finite(ratio(upper[j], 1));
    }
    let mut added = 0;
    while added < shape.m {
        let a: Vec<i64> = (0..shape.n).map(|_| rng.random_range(-k..=k)).collect();
        if a.iter().all(|v| *v == 0) {
            continue;
        }
        let at_anchor: i64 = a.iter().zip(&anchor).map(|(x, y)| x * y).sum();
        let rhs = at_anchor + rng.random_range(0..=k);
        system.push_row(Row::new(
            a.iter().enumerate().map(|(j, v)| (j, ratio(*v, 1))),
            ratio(rhs, 1),
        ));
        added += 1;
    }
    let objective = loop {
        let c: Vec<i64> = (0..shape.n).map(|_| rng.random_range(-k..=k)).collect();
        if c.iter().any(|v| *v != 0) {
            break c;
        }
    };
    Instance::pure(
        format!("random_{seed}"),
        objective.iter().map(|v| ratio(*v, 1)).collect(),
        system,
    )
}

/// Writes `<name>.json` and `<name>.tree.jsonl` for every worked example.
pub fn export_fixtures(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for fx in all_fixtures() {
        std::fs::write(
            dir.join(format!("{}.json", fx.name)),
            write_json_instance(fx.tree.instance()),
        )?;
        std::fs::write(dir.join(format!("{}.tree.jsonl", fx.name)), serialize_tree(&fx.tree))?;
    }
    Ok(())
}
