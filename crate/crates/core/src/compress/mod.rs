//! Post-hoc tree compression: the traversal skeleton shared by the exact
//! (disjunction MIP) and heuristic disjunction finders.

pub mod heuristic;
pub mod mr;
mod replay;

use std::time::Duration;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::clock::Clock;
use crate::lp::{lp_solve, LinearSystem, LpOptions};
use crate::scalar::{convert_vec, ExtendedValue, Rational, Scalar};
use crate::tree::{BbTree, Disjunction, NodeId, NodeLp, Side, TreeError};

pub use heuristic::{heuristic_compress, heuristic_find_disjunction, HeuristicConfig, HeuristicFinder};
pub use mr::{build_mr_model, exact_compress, solve_mr, CompressMode, MrFinder, MrModel, MrOutcome, SupportMode};
pub use replay::{replay_log, ReplaySummary, SoundnessViolation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum StepAction {
    Drop,
    Replace { disjunction: Disjunction },
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionStep {
    pub node: NodeId,
    #[serde(flatten)]
    pub action: StepAction,
    pub time_secs: f64,
    pub size_before: usize,
    pub size_after: usize,
    pub bound_before: String,
    pub bound_after: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionSummary {
    pub method: String,
    pub initial_size: usize,
    pub final_size: usize,
    pub initial_bound: String,
    pub final_bound: String,
    pub timed_out: bool,
    pub total_time_secs: f64,
    pub lp_solves: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionLog {
    pub summary: CompressionSummary,
    pub steps: Vec<CompressionStep>,
}

impl CompressionLog {
    /// Percentage of nodes removed.
    pub fn ratio_pct(&self) -> f64 {
        compression_ratio(self.summary.initial_size, self.summary.final_size)
    }

    pub fn applied(&self) -> impl Iterator<Item = &CompressionStep> {
        self.steps.iter().filter(|s| s.action != StepAction::Skip)
    }

    /// Summary line followed by one line per step.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.summary).expect("summary serializes");
        out.push('\n');
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, TreeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().ok_or_else(|| TreeError::Schema("empty log".into()))?;
        let summary = serde_json::from_str(first).map_err(|e| TreeError::Schema(e.to_string()))?;
        let steps = lines
            .map(|l| serde_json::from_str(l).map_err(|e| TreeError::Schema(e.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(CompressionLog { summary, steps })
    }
}

/// `100 (s0 - s) / s0`.
pub fn compression_ratio(initial: usize, final_size: usize) -> f64 {
    if initial == 0 {
        return 0.0;
    }
    100.0 * (initial as f64 - final_size as f64) / initial as f64
}

/// `a >= d` under the objective tolerance of `S` (exact for rationals).
pub(crate) fn reaches<S: Scalar>(a: &ExtendedValue<S>, d: &ExtendedValue<S>) -> bool {
    match (a, d) {
        (ExtendedValue::Finite(x), ExtendedValue::Finite(y)) => S::default_tolerances().obj_ge(x, y),
        (a, d) => a >= d,
    }
}

/// `drop(T, v)` when the node LP already reaches the tree bound.
pub fn try_drop<S: Scalar>(tree: &BbTree<S>, v: NodeId) -> Option<BbTree<S>> {
    let node = tree.node(v).ok()?;
    if node.is_leaf() || !reaches(&node.lp.value, &tree.bound()) {
        return None;
    }
    tree.drop_at(v).ok()
}

/// Solves both sides of `disjunction` over `system` in rational arithmetic
/// and checks each reaches `d` (both empty when `d = +inf`). Tolerances are
/// those of `S`, so the check is exact for the exact backend.
pub fn verify_disjunction<S: Scalar>(
    system: &LinearSystem<S>,
    c: &[S],
    d: &ExtendedValue<S>,
    disjunction: &Disjunction,
) -> Result<bool, TreeError> {
    let sys: LinearSystem<Rational> = system.convert();
    let c: Vec<Rational> = convert_vec(c);
    let d: ExtendedValue<Rational> = d.convert();
    let tol = S::default_tolerances();
    for side in [Side::Left, Side::Right] {
        let value = lp_solve(&sys.clone().with_row(disjunction.row(side)), &c, &LpOptions::default())?.value();
        let ok = match (&value, &d) {
            (ExtendedValue::Finite(v), ExtendedValue::Finite(dv)) => {
                let scale = dv.abs().max(Rational::from_integer(1.into()));
                *v >= dv - tol.objective_rel.to_rational() * scale
            }
            (v, d) => v >= d,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What a finder reports for one node.
#[derive(Debug, Clone, Default)]
pub struct FinderOutcome {
    pub disjunction: Option<Disjunction>,
    pub note: Option<String>,
    pub timed_out: bool,
}

/// Produces replacing disjunctions for internal nodes whose LP value is
/// below the tree bound.
pub trait DisjunctionFinder<S: Scalar> {
    fn name(&self) -> String;

    /// False when only drops are allowed.
    fn replaces(&self) -> bool {
        true
    }

    fn find(
        &mut self,
        tree: &BbTree<S>,
        v: NodeId,
        d: &ExtendedValue<S>,
        clock: &Clock,
    ) -> Result<FinderOutcome, TreeError>;
}

/// The traversal: visit `order` (default DFS preorder), drop where the node
/// LP reaches `d(T, c)`, otherwise ask `finder` for a replacement. `d` is
/// refreshed after every applied step. Nodes already removed and leaves are
/// passed over.
pub fn compress_with<S: Scalar>(
    tree: &BbTree<S>,
    finder: &mut dyn DisjunctionFinder<S>,
    order: Option<&[NodeId]>,
    global_limit: Option<Duration>,
    clock: &Clock,
) -> Result<(BbTree<S>, CompressionLog), TreeError> {
    let mut t = tree.clone();
    let queue: Vec<NodeId> = match order {
        Some(o) => o.to_vec(),
        None => t.preorder(),
    };
    let start = clock.now();
    let lps_start = clock.lp_count();
    let initial_bound = t.bound();
    let mut d = initial_bound.clone();
    let mut steps = Vec::new();
    let mut timed_out = false;
    for v in queue {
        if global_limit.is_some_and(|lim| clock.now() - start >= lim) {
            timed_out = true;
            break;
        }
        let Ok(node) = t.node(v) else { continue };
        if node.is_leaf() {
            continue;
        }
        let t0 = clock.now();
        let size_before = t.size();
        let lp = node.lp.value.clone();
        let mut note = None;
        let action = if reaches(&lp, &d) {
            t.apply_drop(v)?;
            StepAction::Drop
        } else if !finder.replaces() {
            StepAction::Skip
        } else if d == ExtendedValue::NegInf {
            note = Some("tree bound is -inf".into());
            StepAction::Skip
        } else if t.subtree_size(v)? - 1 <= 2 {
            note = Some("subtree too small to shrink".into());
            StepAction::Skip
        } else {
            let found = finder.find(&t, v, &d, clock)?;
            timed_out |= found.timed_out;
            note = found.note;
            match found.disjunction {
                Some(disj) => match checked_children(&t, v, &disj, &d, clock)? {
                    Some((l, r)) => {
                        t.apply_replace_with(v, disj.clone(), l, r)?;
                        StepAction::Replace { disjunction: disj }
                    }
                    None => {
                        note = Some("candidate failed verification".into());
                        StepAction::Skip
                    }
                },
                None => StepAction::Skip,
            }
        };
        let bound_before = d.to_text();
        if action != StepAction::Skip {
            d = t.bound();
        }
        steps.push(CompressionStep {
            node: v,
            action,
            time_secs: (clock.now() - t0).as_secs_f64(),
            size_before,
            size_after: t.size(),
            bound_before,
            bound_after: d.to_text(),
            note,
        });
    }
    let summary = CompressionSummary {
        method: finder.name(),
        initial_size: tree.size(),
        final_size: t.size(),
        initial_bound: initial_bound.to_text(),
        final_bound: t.bound().to_text(),
        timed_out,
        total_time_secs: (clock.now() - start).as_secs_f64(),
        lp_solves: clock.lp_count() - lps_start,
    };
    Ok((t, CompressionLog { summary, steps }))
}

/// Child LPs of a replacement at `v`, or `None` if either side falls below
/// `d` or the exact re-solve rejects it.
fn checked_children<S: Scalar>(
    tree: &BbTree<S>,
    v: NodeId,
    disj: &Disjunction,
    d: &ExtendedValue<S>,
    clock: &Clock,
) -> Result<Option<(NodeLp<S>, NodeLp<S>)>, TreeError> {
    if disj.check_support(&tree.instance().integer).is_err() {
        return Ok(None);
    }
    let base = tree.node_polyhedron(v)?;
    let left = NodeLp::from(&tree.solve_system(&base.clone().with_row(disj.row(Side::Left)))?);
    let right = NodeLp::from(&tree.solve_system(&base.clone().with_row(disj.row(Side::Right)))?);
    clock.charge_lps(2);
    if !reaches(&left.value, d) || !reaches(&right.value, d) {
        return Ok(None);
    }
    clock.charge_lps(2);
    if !verify_disjunction(&base, tree.objective(), d, disj)? {
        return Ok(None);
    }
    Ok(Some((left, right)))
}

/// Drops only; the finder never replaces.
pub struct DropOnly;

impl<S: Scalar> DisjunctionFinder<S> for DropOnly {
    fn name(&self) -> String {
        "drop".into()
    }

    fn replaces(&self) -> bool {
        false
    }

    fn find(&mut self, _: &BbTree<S>, _: NodeId, _: &ExtendedValue<S>, _: &Clock) -> Result<FinderOutcome, TreeError> {
        Ok(FinderOutcome::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::ratio;

    #[test]
    fn try_drop_cases() {
        let fx = fixtures::box_fifth();
        let t = &fx.tree;
        let dropped = try_drop(t, fx.right_child()).unwrap();
        assert_eq!(dropped.size(), 5);
        assert!(try_drop(t, t.root()).is_none());
        let leaf = t.leaves().next().unwrap().id;
        assert!(try_drop(t, leaf).is_none());
    }

    #[test]
    fn drop_only_reproduces_two_a() {
        let fx = fixtures::box_fifth();
        let (t, log) = compress_with(&fx.tree, &mut DropOnly, None, None, &Clock::virtual_clock()).unwrap();
        assert_eq!(t.size(), 5);
        assert_eq!(t.bound(), ExtendedValue::Finite(ratio(0, 1)));
        assert_eq!(log.applied().count(), 1);
        assert_eq!(log.summary.final_size, 5);
    }

    #[test]
    fn verification_of_box_disjunctions() {
        let fx = fixtures::box_fifth();
        let sys = fx.tree.instance().system.clone();
        let c = fx.tree.objective().to_vec();
        let d = ExtendedValue::Finite(ratio(0, 1));
        assert!(verify_disjunction(&sys, &c, &d, &fx.root_replacement).unwrap());
        assert!(!verify_disjunction(&sys, &c, &d, &Disjunction::variable(0, 0)).unwrap());
        let half = fixtures::box_half();
        assert!(!verify_disjunction(&half.tree.instance().system, &c, &d, &half.root_replacement).unwrap());
    }

    #[test]
    fn log_round_trip() {
        let fx = fixtures::box_fifth();
        let (_, log) = compress_with(&fx.tree, &mut DropOnly, None, None, &Clock::virtual_clock()).unwrap();
        assert_eq!(CompressionLog::from_jsonl(&log.to_jsonl()).unwrap(), log);
        let (_, log) =
            heuristic_compress(&fx.tree, &HeuristicConfig::default(), None, &Clock::virtual_clock()).unwrap();
        assert!(log.applied().any(|s| matches!(s.action, StepAction::Replace { .. })));
        assert_eq!(CompressionLog::from_jsonl(&log.to_jsonl()).unwrap(), log);
    }

    #[test]
    fn ratio_of_seven_to_three() {
        assert!((compression_ratio(7, 3) - 57.142857142857146).abs() < 1e-12);
    }
}
