//! Branch-and-bound trees: node polyhedra, dual bounds, and the two editing
//! operations used by compression.
//!
//! `Q(v)` is never stored. It is rebuilt from the root system and the branch
//! rows on the path to `v` each time it is needed.

mod serialize;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::Instance;
use crate::lp::{lp_solve, LinearSystem, LpError, LpOptions, LpResult, Row};
use crate::scalar::{ExtendedValue, Scalar};

pub use serialize::{deserialize_tree, serialize_tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {0} is a leaf")]
    NodeIsLeaf(NodeId),
    #[error("node {0} is not a leaf")]
    NodeNotLeaf(NodeId),
    #[error("disjunction direction is zero")]
    ZeroDirection,
    #[error("disjunction uses continuous variable {0}")]
    ContinuousSupport(usize),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("tree was built for instance {expected}, got {found}")]
    InstanceMismatch { expected: String, found: String },
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Node identifier, assigned in creation order and never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The split `pi.x <= pi0  or  pi.x >= pi0 + 1` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DisjunctionIn", into = "DisjunctionDoc")]
pub struct Disjunction {
    pi: Vec<(usize, i64)>,
    pi0: i64,
}

#[derive(Serialize)]
struct DisjunctionDoc {
    pi: BTreeMap<usize, i64>,
    pi0: i64,
}

/// Keys are read as strings so the type also loads from inside tagged or
/// flattened enums, where integer map keys are not recognized.
#[derive(Deserialize)]
struct DisjunctionIn {
    pi: BTreeMap<String, i64>,
    pi0: i64,
}

impl TryFrom<DisjunctionIn> for Disjunction {
    type Error = TreeError;

    fn try_from(doc: DisjunctionIn) -> Result<Self, TreeError> {
        let pi = doc
            .pi
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|i| (i, v))
                    .map_err(|_| TreeError::Malformed(format!("bad index `{k}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Disjunction::new(pi, doc.pi0)
    }
}

impl From<Disjunction> for DisjunctionDoc {
    fn from(d: Disjunction) -> Self {
        DisjunctionDoc {
            pi: d.pi.into_iter().collect(),
            pi0: d.pi0,
        }
    }
}

impl Disjunction {
    pub fn new(pi: impl IntoIterator<Item = (usize, i64)>, pi0: i64) -> Result<Self, TreeError> {
        let mut pi: Vec<(usize, i64)> = pi.into_iter().filter(|(_, v)| *v != 0).collect();
        pi.sort_unstable();
        pi.dedup_by(|a, b| {
            if a.0 == b.0 {
                b.1 += a.1;
                true
            } else {
                false
            }
        });
        pi.retain(|(_, v)| *v != 0);
        if pi.is_empty() {
            return Err(TreeError::ZeroDirection);
        }
        Ok(Disjunction { pi, pi0 })
    }

    /// `x_i <= pi0  or  x_i >= pi0 + 1`.
    pub fn variable(i: usize, pi0: i64) -> Self {
        Disjunction { pi: vec![(i, 1)], pi0 }
    }

    pub fn from_dense(pi: &[i64], pi0: i64) -> Result<Self, TreeError> {
        Self::new(pi.iter().copied().enumerate(), pi0)
    }

    pub fn direction(&self) -> &[(usize, i64)] {
        &self.pi
    }

    pub fn offset(&self) -> i64 {
        self.pi0
    }

    pub fn support_size(&self) -> usize {
        self.pi.len()
    }

    pub fn dense_direction(&self, n: usize) -> Vec<i64> {
        let mut d = vec![0; n];
        for (i, v) in &self.pi {
            d[*i] = *v;
        }
        d
    }

    pub fn activity<S: Scalar>(&self, x: &[S]) -> S {
        self.pi
            .iter()
            .fold(S::zero(), |acc, (i, v)| acc + S::from_i64(*v) * x[*i].clone())
    }

    /// The row added by one side: `pi.x <= pi0` or `-pi.x <= -(pi0 + 1)`.
    pub fn row<S: Scalar>(&self, side: Side) -> Row<S> {
        match side {
            Side::Left => Row::new(
                self.pi.iter().map(|(i, v)| (*i, S::from_i64(*v))),
                S::from_i64(self.pi0),
            ),
            Side::Right => Row::new(
                self.pi.iter().map(|(i, v)| (*i, S::from_i64(-*v))),
                S::from_i64(-(self.pi0 + 1)),
            ),
        }
    }

    pub fn check_support(&self, integer: &[bool]) -> Result<(), TreeError> {
        for (i, _) in &self.pi {
            if !integer.get(*i).copied().unwrap_or(false) {
                return Err(TreeError::ContinuousSupport(*i));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Disjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .pi
            .iter()
            .map(|(i, v)| match v {
                1 => format!("x{i}"),
                -1 => format!("-x{i}"),
                v => format!("{v}*x{i}"),
            })
            .collect();
        write!(f, "{} <= {}", terms.join(" + "), self.pi0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchConstraint {
    pub disjunction: Disjunction,
    pub side: Side,
}

impl BranchConstraint {
    pub fn row<S: Scalar>(&self) -> Row<S> {
        self.disjunction.row(self.side)
    }
}

/// Cached LP outcome at a node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeLp<S> {
    pub value: ExtendedValue<S>,
    pub point: Option<Vec<S>>,
}

impl<S: Scalar> From<&LpResult<S>> for NodeLp<S> {
    fn from(r: &LpResult<S>) -> Self {
        NodeLp {
            value: r.value(),
            point: r.point().map(<[S]>::to_vec),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BbNode<S> {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub branch: Option<BranchConstraint>,
    pub children: Option<[NodeId; 2]>,
    pub lp: NodeLp<S>,
    pub depth: usize,
}

impl<S> BbNode<S> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// A rooted binary tree of polyhedra over one instance.
#[derive(Debug, Clone)]
pub struct BbTree<S> {
    instance: Arc<Instance<S>>,
    nodes: BTreeMap<NodeId, BbNode<S>>,
    root: NodeId,
    next_id: usize,
    creation_log: Vec<NodeId>,
    lp_options: LpOptions<S>,
}

impl<S: Scalar> PartialEq for BbTree<S> {
    fn eq(&self, other: &Self) -> bool {
        self.instance == other.instance
            && self.nodes == other.nodes
            && self.root == other.root
            && self.next_id == other.next_id
            && self.creation_log == other.creation_log
    }
}

impl<S: Scalar> BbTree<S> {
    /// Single-node tree with `Q(root) = P`.
    pub fn new(instance: Arc<Instance<S>>) -> Result<Self, TreeError> {
        Self::with_options(instance, LpOptions::default())
    }

    pub fn with_options(instance: Arc<Instance<S>>, lp_options: LpOptions<S>) -> Result<Self, TreeError> {
        instance.validate().map_err(|e| TreeError::Malformed(e.to_string()))?;
        let res = lp_solve(&instance.system, &instance.objective, &lp_options)?;
        let root = NodeId(0);
        let mut nodes = BTreeMap::new();
        nodes.insert(
            root,
            BbNode {
                id: root,
                parent: None,
                branch: None,
                children: None,
                lp: NodeLp::from(&res),
                depth: 0,
            },
        );
        Ok(BbTree {
            instance,
            nodes,
            root,
            next_id: 1,
            creation_log: vec![root],
            lp_options,
        })
    }

    pub(crate) fn from_parts(
        instance: Arc<Instance<S>>,
        nodes: BTreeMap<NodeId, BbNode<S>>,
        root: NodeId,
        next_id: usize,
        creation_log: Vec<NodeId>,
    ) -> Result<Self, TreeError> {
        let tree = BbTree {
            instance,
            nodes,
            root,
            next_id,
            creation_log,
            lp_options: LpOptions::default(),
        };
        tree.validate()?;
        Ok(tree)
    }

    pub fn instance(&self) -> &Arc<Instance<S>> {
        &self.instance
    }

    pub fn objective(&self) -> &[S] {
        &self.instance.objective
    }

    pub fn lp_options(&self) -> &LpOptions<S> {
        &self.lp_options
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn next_id(&self) -> usize {
        self.next_id
    }

    /// Surviving node ids in creation order.
    pub fn creation_log(&self) -> &[NodeId] {
        &self.creation_log
    }

    /// `|T|`.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn node(&self, v: NodeId) -> Result<&BbNode<S>, TreeError> {
        self.nodes.get(&v).ok_or(TreeError::UnknownNode(v))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &BbNode<S>> {
        self.nodes.values()
    }

    pub fn is_leaf(&self, v: NodeId) -> Result<bool, TreeError> {
        Ok(self.node(v)?.is_leaf())
    }

    pub fn leaves(&self) -> impl Iterator<Item = &BbNode<S>> {
        self.nodes.values().filter(|n| n.is_leaf())
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = &BbNode<S>> {
        self.nodes.values().filter(|n| !n.is_leaf())
    }

    pub fn lp_value(&self, v: NodeId) -> Result<&ExtendedValue<S>, TreeError> {
        Ok(&self.node(v)?.lp.value)
    }

    /// Preorder (left child first) starting at `v`.
    pub fn preorder_from(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let Some(node) = self.nodes.get(&u) else { continue };
            out.push(u);
            if let Some([l, r]) = node.children {
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    pub fn preorder(&self) -> Vec<NodeId> {
        self.preorder_from(self.root)
    }

    /// Number of nodes in the subtree rooted at `v`, including `v`.
    pub fn subtree_size(&self, v: NodeId) -> Result<usize, TreeError> {
        self.node(v)?;
        Ok(self.preorder_from(v).len())
    }

    /// Whether `a` is a strict ancestor of `b`.
    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        let mut cur = self.nodes.get(&b).and_then(|n| n.parent);
        while let Some(u) = cur {
            if u == a {
                return true;
            }
            cur = self.nodes.get(&u).and_then(|n| n.parent);
        }
        false
    }

    /// Branch constraints on the path root -> `v`, root side first.
    pub fn path_constraints(&self, v: NodeId) -> Result<Vec<&BranchConstraint>, TreeError> {
        let mut out = Vec::new();
        let mut cur = Some(self.node(v)?);
        while let Some(node) = cur {
            if let Some(b) = &node.branch {
                out.push(b);
            }
            cur = node.parent.and_then(|p| self.nodes.get(&p));
        }
        out.reverse();
        Ok(out)
    }

    /// `Q(v)`: the root system plus one row per ancestor branch constraint.
    pub fn node_polyhedron(&self, v: NodeId) -> Result<LinearSystem<S>, TreeError> {
        let mut sys = self.instance.system.clone();
        for b in self.path_constraints(v)? {
            sys.push_row(b.row());
        }
        Ok(sys)
    }

    /// `d(T, c)` from the cached leaf values.
    pub fn bound(&self) -> ExtendedValue<S> {
        self.leaves()
            .map(|n| n.lp.value.clone())
            .fold(ExtendedValue::PosInf, ExtendedValue::min)
    }

    /// `d(T, c)` for an arbitrary objective; leaves are re-solved when `c`
    /// differs from the tree's objective.
    pub fn dual_bound(&self, c: &[S]) -> Result<ExtendedValue<S>, TreeError> {
        if c == self.objective() {
            return Ok(self.bound());
        }
        let mut best = ExtendedValue::PosInf;
        for leaf in self.leaves() {
            let sys = self.node_polyhedron(leaf.id)?;
            let v = lp_solve(&sys, c, &self.lp_options)?.value();
            best = best.min(v);
        }
        Ok(best)
    }

    pub fn solve_system(&self, sys: &LinearSystem<S>) -> Result<LpResult<S>, TreeError> {
        Ok(lp_solve(sys, self.objective(), &self.lp_options)?)
    }

    fn fresh_id(&mut self) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        self.creation_log.push(id);
        id
    }

    /// Splits leaf `v` with `disjunction`, solving both child LPs.
    pub fn branch_leaf(&mut self, v: NodeId, disjunction: Disjunction) -> Result<[NodeId; 2], TreeError> {
        let base = self.node_polyhedron(v)?;
        let left = self.solve_system(&base.clone().with_row(disjunction.row(Side::Left)))?;
        let right = self.solve_system(&base.with_row(disjunction.row(Side::Right)))?;
        self.branch_leaf_with(v, disjunction, NodeLp::from(&left), NodeLp::from(&right))
    }

    /// Splits leaf `v` using already computed child LP outcomes.
    pub fn branch_leaf_with(
        &mut self,
        v: NodeId,
        disjunction: Disjunction,
        left: NodeLp<S>,
        right: NodeLp<S>,
    ) -> Result<[NodeId; 2], TreeError> {
        let node = self.node(v)?;
        if !node.is_leaf() {
            return Err(TreeError::NodeNotLeaf(v));
        }
        disjunction.check_support(&self.instance.integer)?;
        let depth = node.depth + 1;
        let l = self.fresh_id();
        let r = self.fresh_id();
        for (id, side, lp) in [(l, Side::Left, left), (r, Side::Right, right)] {
            self.nodes.insert(
                id,
                BbNode {
                    id,
                    parent: Some(v),
                    branch: Some(BranchConstraint {
                        disjunction: disjunction.clone(),
                        side,
                    }),
                    children: None,
                    lp,
                    depth,
                },
            );
        }
        self.nodes.get_mut(&v).expect("node exists").children = Some([l, r]);
        Ok([l, r])
    }

    /// In-place `drop(T, v)`. Returns the number of removed nodes.
    pub fn apply_drop(&mut self, v: NodeId) -> Result<usize, TreeError> {
        let children = self.node(v)?.children;
        let Some([l, r]) = children else {
            return Ok(0);
        };
        let mut removed: Vec<NodeId> = self.preorder_from(l);
        removed.extend(self.preorder_from(r));
        for id in &removed {
            self.nodes.remove(id);
        }
        self.creation_log.retain(|id| self.nodes.contains_key(id));
        self.nodes.get_mut(&v).expect("node exists").children = None;
        Ok(removed.len())
    }

    /// In-place `replace(T, v, pi, pi0)`. Returns the two new child ids.
    pub fn apply_replace(&mut self, v: NodeId, disjunction: Disjunction) -> Result<[NodeId; 2], TreeError> {
        if self.node(v)?.is_leaf() {
            return Err(TreeError::NodeIsLeaf(v));
        }
        disjunction.check_support(&self.instance.integer)?;
        self.apply_drop(v)?;
        self.branch_leaf(v, disjunction)
    }

    /// In-place replace with precomputed child LP outcomes.
    pub fn apply_replace_with(
        &mut self,
        v: NodeId,
        disjunction: Disjunction,
        left: NodeLp<S>,
        right: NodeLp<S>,
    ) -> Result<[NodeId; 2], TreeError> {
        if self.node(v)?.is_leaf() {
            return Err(TreeError::NodeIsLeaf(v));
        }
        disjunction.check_support(&self.instance.integer)?;
        self.apply_drop(v)?;
        self.branch_leaf_with(v, disjunction, left, right)
    }

    /// `drop(T, v)` as a new tree.
    pub fn drop_at(&self, v: NodeId) -> Result<BbTree<S>, TreeError> {
        let mut t = self.clone();
        t.apply_drop(v)?;
        Ok(t)
    }

    /// `replace(T, v, pi, pi0)` as a new tree.
    pub fn replace_at(&self, v: NodeId, disjunction: Disjunction) -> Result<BbTree<S>, TreeError> {
        let mut t = self.clone();
        t.apply_replace(v, disjunction)?;
        Ok(t)
    }

    /// Same shape and ids over another instance (typically the exact copy),
    /// with every node LP re-solved.
    pub fn rebuild<T: Scalar>(&self, instance: Arc<Instance<T>>) -> Result<BbTree<T>, TreeError> {
        let options = LpOptions::<T>::default();
        let mut nodes = BTreeMap::new();
        for node in self.nodes.values() {
            let mut sys = instance.system.clone();
            for b in self.path_constraints(node.id)? {
                sys.push_row(b.row());
            }
            let res = lp_solve(&sys, &instance.objective, &options)?;
            nodes.insert(
                node.id,
                BbNode {
                    id: node.id,
                    parent: node.parent,
                    branch: node.branch.clone(),
                    children: node.children,
                    lp: NodeLp::from(&res),
                    depth: node.depth,
                },
            );
        }
        Ok(BbTree {
            instance,
            nodes,
            root: self.root,
            next_id: self.next_id,
            creation_log: self.creation_log.clone(),
            lp_options: options,
        })
    }

    /// Re-solves every node LP and returns the ids whose cached value differs.
    pub fn revalidate(&self) -> Result<Vec<NodeId>, TreeError> {
        let tol = &self.lp_options.tolerances;
        let mut bad = Vec::new();
        for node in self.nodes.values() {
            let fresh = self.solve_system(&self.node_polyhedron(node.id)?)?.value();
            let same = match (&fresh, &node.lp.value) {
                (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => tol.obj_ge(a, b) && tol.obj_ge(b, a),
                (a, b) => a == b,
            };
            if !same {
                bad.push(node.id);
            }
        }
        Ok(bad)
    }

    /// Structural invariants: parent/child consistency, 0 or 2 children with
    /// opposite sides of one disjunction, connectivity.
    pub fn validate(&self) -> Result<(), TreeError> {
        let root = self.node(self.root)?;
        if root.parent.is_some() || root.branch.is_some() {
            return Err(TreeError::Malformed("root has a parent or branch".into()));
        }
        for node in self.nodes.values() {
            if let Some([l, r]) = node.children {
                let (ln, rn) = (self.node(l)?, self.node(r)?);
                if ln.parent != Some(node.id) || rn.parent != Some(node.id) {
                    return Err(TreeError::Malformed(format!(
                        "children of {} disagree on parent",
                        node.id
                    )));
                }
                match (&ln.branch, &rn.branch) {
                    (Some(a), Some(b))
                        if a.side == Side::Left && b.side == Side::Right && a.disjunction == b.disjunction => {}
                    _ => {
                        return Err(TreeError::Malformed(format!(
                            "children of {} are not the two sides of one disjunction",
                            node.id
                        )))
                    }
                }
            }
            if let Some(p) = node.parent {
                let pn = self.node(p)?;
                if !pn.children.is_some_and(|c| c.contains(&node.id)) {
                    return Err(TreeError::Malformed(format!("{} not listed by its parent", node.id)));
                }
            } else if node.id != self.root {
                return Err(TreeError::Malformed(format!("{} has no parent", node.id)));
            }
        }
        if self.preorder().len() != self.nodes.len() {
            return Err(TreeError::Malformed("tree is not connected".into()));
        }
        Ok(())
    }
}

/// Whether `after` is a valid single compression step from `before`:
/// strictly smaller and no weaker bound.
pub fn is_valid_compression_step<S: Scalar>(before: &BbTree<S>, after: &BbTree<S>, c: &[S]) -> Result<bool, TreeError> {
    if after.size() >= before.size() {
        return Ok(false);
    }
    Ok(after.dual_bound(c)? >= before.dual_bound(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{ratio, Rational};

    fn q(n: i64) -> ExtendedValue<Rational> {
        ExtendedValue::Finite(ratio(n, 1))
    }

    #[test]
    fn root_polyhedron_is_p() {
        let fx = fixtures::box_fifth();
        let sys = fx.tree.node_polyhedron(fx.tree.root()).unwrap();
        assert_eq!(sys, fx.tree.instance().system);
    }

    #[test]
    fn left_child_polyhedron() {
        let fx = fixtures::box_fifth();
        let [v1, _] = fx.tree.node(fx.tree.root()).unwrap().children.unwrap();
        let sys = fx.tree.node_polyhedron(v1).unwrap();
        assert_eq!(sys.m(), 1);
        let res = fx.tree.solve_system(&sys).unwrap();
        assert_eq!(res.value(), ExtendedValue::Finite(ratio(-1, 5)));
        assert_eq!(res.point().unwrap(), &[ratio(0, 1), ratio(1, 5)]);
    }

    #[test]
    fn repeated_disjunction_under_empty_node_is_infeasible() {
        let fx = fixtures::box_fifth();
        let [_, v2] = fx.tree.node(fx.tree.root()).unwrap().children.unwrap();
        let [v5, _] = fx.tree.node(v2).unwrap().children.unwrap();
        let res = fx.tree.solve_system(&fx.tree.node_polyhedron(v5).unwrap()).unwrap();
        assert!(res.is_infeasible());
    }

    #[test]
    fn unknown_node_errors() {
        let fx = fixtures::box_fifth();
        assert_eq!(
            fx.tree.node_polyhedron(NodeId(99)),
            Err(TreeError::UnknownNode(NodeId(99)))
        );
        assert!(matches!(fx.tree.drop_at(NodeId(99)), Err(TreeError::UnknownNode(_))));
    }

    #[test]
    fn dual_bound_conventions() {
        let fx = fixtures::box_fifth();
        assert_eq!(fx.tree.bound(), q(0));
        let single = BbTree::new(fx.tree.instance().clone()).unwrap();
        assert_eq!(single.bound(), ExtendedValue::Finite(ratio(-2, 5)));

        let mut empty = single.clone();
        let root = empty.root();
        empty.branch_leaf(root, Disjunction::variable(0, 0)).unwrap();
        let [l, _] = empty.node(root).unwrap().children.unwrap();
        // x1 <= 0 side split again by x1 >= 1 on both branches of a sum direction
        empty
            .branch_leaf(l, Disjunction::new([(0, 1), (1, 1)], -1).unwrap())
            .unwrap();
        let leaves: Vec<_> = empty.leaves().map(|n| n.lp.value.clone()).collect();
        assert!(leaves.contains(&ExtendedValue::PosInf));
    }

    #[test]
    fn all_infeasible_leaves_give_plus_infinity() {
        let inst = fixtures::box_fifth().tree.instance().clone();
        let mut t = BbTree::new(inst).unwrap();
        let root = t.root();
        let [l, r] = t.branch_leaf(root, Disjunction::variable(0, -1)).unwrap();
        // left: x1 <= -1 empty; right: x1 >= 0 is the whole box. Split right again.
        assert_eq!(t.lp_value(l).unwrap(), &ExtendedValue::PosInf);
        t.branch_leaf(r, Disjunction::variable(0, 0)).unwrap();
        let [rl, rr] = t.node(r).unwrap().children.unwrap();
        t.branch_leaf(rl, Disjunction::variable(1, -1)).unwrap();
        let _ = rr;
        t.apply_drop(rl).unwrap();
        assert!(t.bound() < ExtendedValue::PosInf);

        let mut all_empty = BbTree::new(t.instance().clone()).unwrap();
        let root = all_empty.root();
        let [_, r] = all_empty.branch_leaf(root, Disjunction::variable(0, -1)).unwrap();
        all_empty.branch_leaf(r, Disjunction::variable(0, 0)).unwrap();
        let [rl, rr] = all_empty.node(r).unwrap().children.unwrap();
        all_empty.branch_leaf(rl, Disjunction::variable(1, 0)).unwrap();
        let _ = rr;
        // leaves: x1<=-1 (empty), x1>=1 (empty), and two children of {x1 = 0}
        assert!(all_empty.leaves().count() >= 3);
    }

    #[test]
    fn drop_variants() {
        let fx = fixtures::box_fifth();
        let t = &fx.tree;
        let [_, v2] = t.node(t.root()).unwrap().children.unwrap();
        let dropped = t.drop_at(v2).unwrap();
        assert_eq!(dropped.size(), 5);
        assert!(dropped.is_leaf(v2).unwrap());
        assert_eq!(dropped.bound(), q(0));
        for id in dropped.creation_log() {
            assert_eq!(
                dropped.node(*id).unwrap().clone(),
                t.node(*id).unwrap().clone().with_children_of(&dropped, *id)
            );
        }

        let leaf = t.leaves().next().unwrap().id;
        assert_eq!(t.drop_at(leaf).unwrap().size(), t.size());
        assert_eq!(t.drop_at(t.root()).unwrap().size(), 1);
    }

    impl<S: Scalar> BbNode<S> {
        fn with_children_of(mut self, tree: &BbTree<S>, id: NodeId) -> Self {
            self.children = tree.node(id).unwrap().children;
            self
        }
    }

    #[test]
    fn replace_requires_internal_node() {
        let fx = fixtures::box_fifth();
        let leaf = fx.tree.leaves().next().unwrap().id;
        assert_eq!(
            fx.tree.replace_at(leaf, Disjunction::variable(0, 0)).unwrap_err(),
            TreeError::NodeIsLeaf(leaf)
        );
    }

    #[test]
    fn zero_direction_rejected() {
        assert_eq!(Disjunction::new([(0, 0), (1, 0)], 3), Err(TreeError::ZeroDirection));
        assert_eq!(Disjunction::new([(1, 2), (1, -2)], 0), Err(TreeError::ZeroDirection));
    }

    #[test]
    fn continuous_support_rejected() {
        let fx = fixtures::box_fifth();
        let mut inst = (**fx.tree.instance()).clone();
        inst.integer[1] = false;
        let mut t = BbTree::new(Arc::new(inst)).unwrap();
        let root = t.root();
        assert_eq!(
            t.branch_leaf(root, Disjunction::variable(1, 0)).unwrap_err(),
            TreeError::ContinuousSupport(1)
        );
    }
}
