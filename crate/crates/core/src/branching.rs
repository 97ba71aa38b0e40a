//! Tree generation: full strong branching and reliability branching with
//! best-bound node selection and optional plunging.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clock::Clock;
use crate::instance::Instance;
use crate::lp::{lp_solve, LinearSystem, LpOptions};
use crate::scalar::{ExtendedValue, Scalar, Tolerances};
use crate::tree::{BbTree, Disjunction, NodeId, NodeLp, Side, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchingError {
    #[error("root LP is unbounded")]
    RootUnbounded,
    #[error("instance has no integer variables")]
    NoIntegerVariables,
    #[error("node {0} is not a leaf")]
    NodeNotLeaf(NodeId),
    #[error("node {0} has no LP optimum")]
    NodeInfeasible(NodeId),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl From<crate::lp::LpError> for BranchingError {
    fn from(e: crate::lp::LpError) -> Self {
        BranchingError::Tree(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchRule {
    Fsb,
    Rb,
}

impl std::str::FromStr for BranchRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fsb" => Ok(BranchRule::Fsb),
            "rb" => Ok(BranchRule::Rb),
            other => Err(format!("unknown branching rule `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchingConfig {
    pub rule: BranchRule,
    pub plunging: bool,
    /// Strong-branching evaluations per direction before pseudocosts are trusted.
    pub reliability_threshold: usize,
    pub node_limit: usize,
    /// Ignored by the exact backend, which tests integrality exactly.
    pub integrality_tol: f64,
    pub prune_uses_incumbent: bool,
}

impl Default for BranchingConfig {
    fn default() -> Self {
        BranchingConfig {
            rule: BranchRule::Fsb,
            plunging: false,
            reliability_threshold: 10,
            node_limit: 10_000,
            integrality_tol: 1e-6,
            prune_uses_incumbent: true,
        }
    }
}

impl BranchingConfig {
    pub fn fsb() -> Self {
        Self::default()
    }

    pub fn rb() -> Self {
        BranchingConfig {
            rule: BranchRule::Rb,
            plunging: true,
            ..Self::default()
        }
    }

    pub fn with_node_limit(mut self, limit: usize) -> Self {
        self.node_limit = limit;
        self
    }
}

/// Per-variable objective degradation per unit change, from strong branching.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Pseudocosts {
    pub up_sum: Vec<f64>,
    pub down_sum: Vec<f64>,
    pub up_count: Vec<usize>,
    pub down_count: Vec<usize>,
}

impl Pseudocosts {
    pub fn new(n: usize) -> Self {
        Pseudocosts {
            up_sum: vec![0.0; n],
            down_sum: vec![0.0; n],
            up_count: vec![0; n],
            down_count: vec![0; n],
        }
    }

    pub fn is_reliable(&self, i: usize, threshold: usize) -> bool {
        self.up_count[i].min(self.down_count[i]) >= threshold
    }

    fn average(sum: f64, count: usize) -> f64 {
        if count == 0 {
            1.0
        } else {
            sum / count as f64
        }
    }

    /// Estimated `(down, up)` degradations for fractional part `f`.
    pub fn estimate(&self, i: usize, f: f64) -> (f64, f64) {
        (
            Self::average(self.down_sum[i], self.down_count[i]) * f,
            Self::average(self.up_sum[i], self.up_count[i]) * (1.0 - f),
        )
    }

    /// Records one strong-branching evaluation. Infeasible sides carry no
    /// per-unit information and leave their direction untouched.
    pub fn record<S: Scalar>(
        &mut self,
        i: usize,
        parent: &S,
        f: f64,
        left: &ExtendedValue<S>,
        right: &ExtendedValue<S>,
    ) {
        let parent = parent.to_f64();
        if let ExtendedValue::Finite(l) = left {
            self.down_sum[i] += ((l.to_f64() - parent) / f).max(0.0);
            self.down_count[i] += 1;
        }
        if let ExtendedValue::Finite(r) = right {
            self.up_sum[i] += ((r.to_f64() - parent) / (1.0 - f)).max(0.0);
            self.up_count[i] += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrongBranchScore<S> {
    pub var: usize,
    pub left_value: ExtendedValue<S>,
    pub right_value: ExtendedValue<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationStatus {
    Completed,
    NodeLimit,
    Stopped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeOutcome {
    Branched {
        var: usize,
        pi0: i64,
        strong_branch_evaluations: usize,
    },
    Infeasible,
    PrunedByBound,
    Integral,
    /// Integral point the observer declined as an incumbent.
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeEvent {
    pub node: NodeId,
    pub value: String,
    #[serde(flatten)]
    pub outcome: NodeOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationLog {
    pub rule: BranchRule,
    pub plunging: bool,
    /// Recorded for provenance; generation is deterministic without it.
    pub seed: u64,
    pub status: GenerationStatus,
    pub incumbent: String,
    pub lp_solves: u64,
    pub strong_branch_lps: u64,
    pub events: Vec<NodeEvent>,
}

/// What to do with an LP-integral node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralAction {
    /// Use its value as incumbent.
    Accept,
    /// Keep it as a leaf without updating the incumbent.
    Reject,
    /// Accept it and end the search.
    Stop,
}

/// Hooks into the search, used when the engine solves auxiliary MIPs.
pub trait SearchObserver<S> {
    /// Extra pruning beyond infeasibility and the incumbent.
    fn prune(&mut self, _tree: &BbTree<S>, _node: NodeId) -> bool {
        false
    }

    fn integral(&mut self, _tree: &BbTree<S>, _node: NodeId, _point: &[S]) -> IntegralAction {
        IntegralAction::Accept
    }

    /// Checked before each node, e.g. for time limits.
    fn stop(&mut self) -> bool {
        false
    }
}

pub struct NoObserver;

impl<S> SearchObserver<S> for NoObserver {}

#[derive(Clone)]
struct Evaluated<S> {
    var: usize,
    pi0: i64,
    left: NodeLp<S>,
    right: NodeLp<S>,
}

struct Solver<'a, S: Scalar> {
    options: &'a LpOptions<S>,
    clock: &'a Clock,
    lps: u64,
    sb_lps: u64,
}

impl<S: Scalar> Solver<'_, S> {
    fn side(
        &mut self,
        base: &LinearSystem<S>,
        objective: &[S],
        d: &Disjunction,
        side: Side,
    ) -> Result<NodeLp<S>, BranchingError> {
        let sys = base.clone().with_row(d.row(side));
        let res = lp_solve(&sys, objective, self.options)?;
        self.lps += 1;
        self.clock.charge_lps(1);
        Ok(NodeLp::from(&res))
    }

    fn both(
        &mut self,
        base: &LinearSystem<S>,
        objective: &[S],
        d: &Disjunction,
    ) -> Result<(NodeLp<S>, NodeLp<S>), BranchingError> {
        Ok((
            self.side(base, objective, d, Side::Left)?,
            self.side(base, objective, d, Side::Right)?,
        ))
    }
}

fn integrality<S: Scalar>(config: &BranchingConfig) -> Tolerances<S> {
    let mut tol = S::default_tolerances();
    if !S::EXACT {
        tol.integrality = S::from_rational(&config.integrality_tol.to_rational());
    }
    tol
}

/// Integer variables that are fractional at `point`, with `floor(x_i)`.
fn fractional<S: Scalar>(instance: &Instance<S>, point: &[S], tol: &Tolerances<S>) -> Vec<(usize, i64, f64)> {
    instance
        .integer_indices()
        .filter(|i| !tol.is_integral(&point[*i]))
        .filter_map(|i| {
            let fl = point[i].floor();
            let f = (point[i].clone() - fl.clone()).to_f64();
            fl.floor_i64().map(|v| (i, v, f))
        })
        .collect()
}

/// FSB score: larger `min(left, right)` first, then larger `max`, then lower index.
fn better<S: Scalar>(a: (&ExtendedValue<S>, &ExtendedValue<S>), b: (&ExtendedValue<S>, &ExtendedValue<S>)) -> bool {
    let (amin, amax) = if a.0 <= a.1 { (a.0, a.1) } else { (a.1, a.0) };
    let (bmin, bmax) = if b.0 <= b.1 { (b.0, b.1) } else { (b.1, b.0) };
    match amin.total_cmp(bmin) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => amax.total_cmp(bmax) == Ordering::Greater,
    }
}

fn leaf_point<S: Scalar>(tree: &BbTree<S>, v: NodeId) -> Result<Vec<S>, BranchingError> {
    let node = tree.node(v)?;
    if !node.is_leaf() {
        return Err(BranchingError::NodeNotLeaf(v));
    }
    node.lp.point.clone().ok_or(BranchingError::NodeInfeasible(v))
}

/// Both child LP values for every fractional integer variable at leaf `v`.
pub fn strong_branch_scores<S: Scalar>(
    tree: &BbTree<S>,
    v: NodeId,
    config: &BranchingConfig,
) -> Result<Vec<StrongBranchScore<S>>, BranchingError> {
    let point = leaf_point(tree, v)?;
    let base = tree.node_polyhedron(v)?;
    let clock = Clock::wall();
    let mut solver = Solver {
        options: tree.lp_options(),
        clock: &clock,
        lps: 0,
        sb_lps: 0,
    };
    let mut out = Vec::new();
    for (var, pi0, _) in fractional(tree.instance(), &point, &integrality(config)) {
        let (l, r) = solver.both(&base, tree.objective(), &Disjunction::variable(var, pi0))?;
        out.push(StrongBranchScore {
            var,
            left_value: l.value,
            right_value: r.value,
        });
    }
    Ok(out)
}

fn full_strong_branching<S: Scalar>(
    solver: &mut Solver<'_, S>,
    base: &LinearSystem<S>,
    objective: &[S],
    candidates: &[(usize, i64, f64)],
    parent: &S,
    mut pseudocosts: Option<&mut Pseudocosts>,
) -> Result<Option<Evaluated<S>>, BranchingError> {
    let mut best: Option<Evaluated<S>> = None;
    for &(var, pi0, f) in candidates {
        let (left, right) = solver.both(base, objective, &Disjunction::variable(var, pi0))?;
        solver.sb_lps += 2;
        if let Some(pc) = pseudocosts.as_deref_mut() {
            pc.record(var, parent, f, &left.value, &right.value);
        }
        let both_empty = left.value == ExtendedValue::PosInf && right.value == ExtendedValue::PosInf;
        let cand = Evaluated { var, pi0, left, right };
        if both_empty {
            return Ok(Some(cand));
        }
        let take = match &best {
            None => true,
            Some(b) => better((&cand.left.value, &cand.right.value), (&b.left.value, &b.right.value)),
        };
        if take {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// RB variable choice at leaf `v`. Returns the variable and, when it was strong
/// branched, both child LPs.
pub fn rb_select_variable<S: Scalar>(
    tree: &BbTree<S>,
    v: NodeId,
    pseudocosts: &mut Pseudocosts,
    config: &BranchingConfig,
) -> Result<Option<usize>, BranchingError> {
    let clock = Clock::wall();
    let mut solver = Solver {
        options: tree.lp_options(),
        clock: &clock,
        lps: 0,
        sb_lps: 0,
    };
    let base = tree.node_polyhedron(v)?;
    Ok(rb_select(&mut solver, tree, v, &base, pseudocosts, config)?.map(|(e, _)| e.var))
}

struct RbChoice<S> {
    var: usize,
    pi0: i64,
    children: Option<(NodeLp<S>, NodeLp<S>)>,
}

fn rb_select<S: Scalar>(
    solver: &mut Solver<'_, S>,
    tree: &BbTree<S>,
    v: NodeId,
    base: &LinearSystem<S>,
    pc: &mut Pseudocosts,
    config: &BranchingConfig,
) -> Result<Option<(RbChoice<S>, usize)>, BranchingError> {
    let point = leaf_point(tree, v)?;
    let parent = match &tree.node(v)?.lp.value {
        ExtendedValue::Finite(z) => z.clone(),
        _ => return Err(BranchingError::NodeInfeasible(v)),
    };
    let pf = parent.to_f64();
    let candidates = fractional(tree.instance(), &point, &integrality(config));
    let mut best: Option<(RbChoice<S>, (ExtendedValue<f64>, ExtendedValue<f64>))> = None;
    let mut evaluations = 0;
    for &(var, pi0, f) in &candidates {
        let (choice, score) = if pc.is_reliable(var, config.reliability_threshold) {
            let (down, up) = pc.estimate(var, f);
            (
                RbChoice {
                    var,
                    pi0,
                    children: None,
                },
                (ExtendedValue::Finite(pf + down), ExtendedValue::Finite(pf + up)),
            )
        } else {
            let (left, right) = solver.both(base, tree.objective(), &Disjunction::variable(var, pi0))?;
            solver.sb_lps += 2;
            evaluations += 1;
            pc.record(var, &parent, f, &left.value, &right.value);
            let score = (left.value.map(Scalar::to_f64), right.value.map(Scalar::to_f64));
            let both_empty = left.value == ExtendedValue::PosInf && right.value == ExtendedValue::PosInf;
            let choice = RbChoice {
                var,
                pi0,
                children: Some((left, right)),
            };
            if both_empty {
                return Ok(Some((choice, evaluations)));
            }
            (choice, score)
        };
        let take = match &best {
            None => true,
            Some((_, b)) => better((&score.0, &score.1), (&b.0, &b.1)),
        };
        if take {
            best = Some((choice, score));
        }
    }
    Ok(best.map(|(c, _)| (c, evaluations)))
}

struct OpenKey<S: Scalar>(ExtendedValue<S>, NodeId);

impl<S: Scalar> PartialEq for OpenKey<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for OpenKey<S> {}

impl<S: Scalar> PartialOrd for OpenKey<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for OpenKey<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Builds a tree for `instance` with the default clock and no hooks.
pub fn generate_tree<S: Scalar>(
    instance: Arc<Instance<S>>,
    config: &BranchingConfig,
    seed: u64,
) -> Result<(BbTree<S>, GenerationLog), BranchingError> {
    generate_tree_with(
        instance,
        config,
        seed,
        LpOptions::default(),
        &Clock::wall(),
        &mut NoObserver,
    )
}

/// Branch and bound with hooks. Leaves are pruned when infeasible, when
/// their LP value reaches the incumbent, or when their LP point is integral.
pub fn generate_tree_with<S: Scalar>(
    instance: Arc<Instance<S>>,
    config: &BranchingConfig,
    seed: u64,
    lp_options: LpOptions<S>,
    clock: &Clock,
    observer: &mut dyn SearchObserver<S>,
) -> Result<(BbTree<S>, GenerationLog), BranchingError> {
    if instance.integer_indices().next().is_none() {
        return Err(BranchingError::NoIntegerVariables);
    }
    let mut tree = BbTree::with_options(instance.clone(), lp_options.clone())?;
    clock.charge_lps(1);
    let root = tree.root();
    if tree.node(root)?.lp.value == ExtendedValue::NegInf {
        return Err(BranchingError::RootUnbounded);
    }
    let tol = integrality::<S>(config);
    let mut incumbent = match (&instance.known_optimal_value, config.prune_uses_incumbent) {
        (Some(v), true) => v.clone(),
        _ => ExtendedValue::PosInf,
    };
    let mut solver = Solver {
        options: &lp_options,
        clock,
        lps: 1,
        sb_lps: 0,
    };
    let mut pc = Pseudocosts::new(instance.n());
    let mut events = Vec::new();
    let mut open: BinaryHeap<Reverse<OpenKey<S>>> = BinaryHeap::new();
    let mut done: HashSet<NodeId> = HashSet::new();
    open.push(Reverse(OpenKey(tree.node(root)?.lp.value.clone(), root)));
    let mut plunge: Option<NodeId> = None;
    let mut status = GenerationStatus::Completed;

    loop {
        if observer.stop() {
            status = GenerationStatus::Stopped;
            break;
        }
        let v = match plunge.take() {
            Some(v) => v,
            None => match open.pop() {
                Some(Reverse(OpenKey(_, v))) if done.contains(&v) => continue,
                Some(Reverse(OpenKey(_, v))) => v,
                None => break,
            },
        };
        let value = tree.node(v)?.lp.value.clone();
        let text = value.to_text();
        let prunes = match (&value, &incumbent) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => S::default_tolerances().obj_ge(a, b),
            (a, b) => a >= b,
        };
        let outcome = if value == ExtendedValue::PosInf {
            Some(NodeOutcome::Infeasible)
        } else if prunes || observer.prune(&tree, v) {
            Some(NodeOutcome::PrunedByBound)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            done.insert(v);
            events.push(NodeEvent {
                node: v,
                value: text,
                outcome,
            });
            continue;
        }
        let point = tree
            .node(v)?
            .lp
            .point
            .clone()
            .ok_or(BranchingError::NodeInfeasible(v))?;
        let candidates = fractional(&instance, &point, &tol);
        if candidates.is_empty() {
            done.insert(v);
            let action = observer.integral(&tree, v, &point);
            let outcome = if action == IntegralAction::Reject {
                NodeOutcome::Rejected
            } else {
                incumbent = incumbent.min(value);
                NodeOutcome::Integral
            };
            events.push(NodeEvent {
                node: v,
                value: text,
                outcome,
            });
            if action == IntegralAction::Stop {
                status = GenerationStatus::Stopped;
                break;
            }
            continue;
        }
        if tree.size() + 2 > config.node_limit {
            status = GenerationStatus::NodeLimit;
            break;
        }
        done.insert(v);
        let base = tree.node_polyhedron(v)?;
        let parent = value.finite().cloned().ok_or(BranchingError::NodeInfeasible(v))?;
        let (var, pi0, children, evaluations) = match config.rule {
            BranchRule::Fsb => {
                let e = full_strong_branching(&mut solver, &base, tree.objective(), &candidates, &parent, None)?
                    .expect("candidates are nonempty");
                (e.var, e.pi0, Some((e.left, e.right)), candidates.len())
            }
            BranchRule::Rb => {
                let (c, evals) =
                    rb_select(&mut solver, &tree, v, &base, &mut pc, config)?.expect("candidates are nonempty");
                (c.var, c.pi0, c.children, evals)
            }
        };
        let disjunction = Disjunction::variable(var, pi0);
        let (left, right) = match children {
            Some(lr) => lr,
            None => solver.both(&base, tree.objective(), &disjunction)?,
        };
        let [l, r] = tree.branch_leaf_with(v, disjunction, left, right)?;
        events.push(NodeEvent {
            node: v,
            value: text,
            outcome: NodeOutcome::Branched {
                var,
                pi0,
                strong_branch_evaluations: evaluations,
            },
        });
        let lv = tree.node(l)?.lp.value.clone();
        let rv = tree.node(r)?.lp.value.clone();
        open.push(Reverse(OpenKey(lv.clone(), l)));
        open.push(Reverse(OpenKey(rv.clone(), r)));
        if config.plunging {
            plunge = Some(if rv < lv { r } else { l });
        }
    }
    let log = GenerationLog {
        rule: config.rule,
        plunging: config.plunging,
        seed,
        status,
        incumbent: incumbent.to_text(),
        lp_solves: solver.lps,
        strong_branch_lps: solver.sb_lps,
        events,
    };
    Ok((tree, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, random_ip, RandomIpShape};
    use crate::scalar::{ratio, Rational};

    fn box_instance() -> Arc<Instance<Rational>> {
        fixtures::box_fifth().tree.instance().clone()
    }

    #[test]
    fn strong_branching_at_box_root() {
        let tree = BbTree::new(box_instance()).unwrap();
        let scores = strong_branch_scores(&tree, tree.root(), &BranchingConfig::fsb()).unwrap();
        assert_eq!(scores.len(), 2);
        assert_eq!(scores[0].var, 0);
        assert_eq!(scores[0].left_value, ExtendedValue::Finite(ratio(-1, 5)));
        assert_eq!(scores[0].right_value, ExtendedValue::PosInf);
        assert_eq!(scores[0].left_value, scores[1].left_value);
        assert_eq!(scores[0].right_value, scores[1].right_value);
    }

    #[test]
    fn integral_point_has_no_candidates() {
        let mut inst = (*box_instance()).clone();
        inst.objective = vec![ratio(1, 1), ratio(1, 1)];
        let tree = BbTree::new(Arc::new(inst)).unwrap();
        assert!(strong_branch_scores(&tree, tree.root(), &BranchingConfig::fsb())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn fsb_on_box_with_incumbent() {
        let inst = Arc::new(
            (*box_instance())
                .clone()
                .with_optimal_value(ExtendedValue::Finite(ratio(0, 1))),
        );
        let (tree, log) = generate_tree(inst, &BranchingConfig::fsb(), 0).unwrap();
        assert_eq!(tree.size(), 5);
        assert_eq!(tree.bound(), ExtendedValue::Finite(ratio(0, 1)));
        assert_eq!(log.status, GenerationStatus::Completed);
        assert_eq!(log.strong_branch_lps, 2 * 3);
    }

    #[test]
    fn infeasible_root_gives_single_node() {
        let mut inst = (*box_instance()).clone();
        inst.system
            .push_row(crate::lp::Row::new([(0, ratio(-1, 1))], ratio(-1, 1)));
        let (tree, _) = generate_tree(Arc::new(inst), &BranchingConfig::fsb(), 0).unwrap();
        assert_eq!(tree.size(), 1);
        assert_eq!(tree.bound(), ExtendedValue::PosInf);
    }

    #[test]
    fn node_limit_one() {
        let (tree, log) = generate_tree(box_instance(), &BranchingConfig::fsb().with_node_limit(1), 0).unwrap();
        assert_eq!(tree.size(), 1);
        assert_eq!(log.status, GenerationStatus::NodeLimit);
    }

    #[test]
    fn rb_threshold_zero_never_strong_branches() {
        let inst = Arc::new(random_ip(3, RandomIpShape::new(4, 5, 3)));
        let mut config = BranchingConfig::rb();
        config.reliability_threshold = 0;
        let (_, log) = generate_tree(inst, &config, 0).unwrap();
        assert_eq!(log.strong_branch_lps, 0);
    }

    #[test]
    fn rb_with_unreliable_table_matches_fsb_choice() {
        let inst = Arc::new(random_ip(5, RandomIpShape::new(3, 4, 3)));
        let tree = BbTree::new(inst).unwrap();
        if tree.node(tree.root()).unwrap().lp.point.is_none() {
            return;
        }
        let scores = strong_branch_scores(&tree, tree.root(), &BranchingConfig::fsb()).unwrap();
        if scores.is_empty() {
            return;
        }
        let mut pc = Pseudocosts::new(3);
        let rb = rb_select_variable(&tree, tree.root(), &mut pc, &BranchingConfig::rb()).unwrap();
        let mut best = &scores[0];
        for s in &scores[1..] {
            if better((&s.left_value, &s.right_value), (&best.left_value, &best.right_value)) {
                best = s;
            }
        }
        assert_eq!(rb, Some(best.var));
    }

    #[test]
    fn float_backend_generates_same_size_on_box() {
        let inst: Arc<Instance<f64>> =
            Arc::new(box_instance().convert().with_optimal_value(ExtendedValue::Finite(0.0)));
        let (tree, _) = generate_tree(inst, &BranchingConfig::fsb(), 0).unwrap();
        assert_eq!(tree.size(), 5);
    }
}
