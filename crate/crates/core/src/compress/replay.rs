//! Exact re-application of a compression log.

use thiserror::Error;

use super::{verify_disjunction, CompressionLog, StepAction};
use crate::scalar::{ExtendedValue, Rational};
use crate::tree::{BbTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step} at node {node}: {reason}")]
pub struct SoundnessViolation {
    pub step: usize,
    pub node: NodeId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplaySummary {
    pub drops: usize,
    pub replaces: usize,
    pub final_size: usize,
    pub final_bound: ExtendedValue<Rational>,
    /// Applied steps whose exact bound went up.
    pub improving_steps: usize,
}

/// Replays `log` on `original` with exact LPs and checks every applied step
/// shrinks the tree without lowering the bound, every replacement passes the
/// two-LP check, and the logged sizes match.
pub fn replay_log(original: &BbTree<Rational>, log: &CompressionLog) -> Result<ReplaySummary, SoundnessViolation> {
    let mut t = original.clone();
    let mut summary = ReplaySummary {
        drops: 0,
        replaces: 0,
        final_size: t.size(),
        final_bound: t.bound(),
        improving_steps: 0,
    };
    for (k, step) in log.steps.iter().enumerate() {
        let fail = |reason: String| SoundnessViolation {
            step: k,
            node: step.node,
            reason,
        };
        if step.size_before != t.size() {
            return Err(fail(format!(
                "logged size {} but tree has {}",
                step.size_before,
                t.size()
            )));
        }
        let before = t.bound();
        match &step.action {
            StepAction::Skip => {
                if step.size_after != step.size_before {
                    return Err(fail("skip changed the size".into()));
                }
                continue;
            }
            StepAction::Drop => {
                if t.is_leaf(step.node).map_err(|e| fail(e.to_string()))? {
                    return Err(fail("drop at a leaf".into()));
                }
                t.apply_drop(step.node).map_err(|e| fail(e.to_string()))?;
                summary.drops += 1;
            }
            StepAction::Replace { disjunction } => {
                let sys = t.node_polyhedron(step.node).map_err(|e| fail(e.to_string()))?;
                let ok =
                    verify_disjunction(&sys, t.objective(), &before, disjunction).map_err(|e| fail(e.to_string()))?;
                if !ok {
                    return Err(fail(format!("{disjunction} fails the two-LP check against {before}")));
                }
                t.apply_replace(step.node, disjunction.clone())
                    .map_err(|e| fail(e.to_string()))?;
                summary.replaces += 1;
            }
        }
        if t.size() >= step.size_before {
            return Err(fail(format!("size {} -> {}", step.size_before, t.size())));
        }
        if t.size() != step.size_after {
            return Err(fail(format!(
                "logged size after {} but tree has {}",
                step.size_after,
                t.size()
            )));
        }
        let after = t.bound();
        if after < before {
            return Err(fail(format!("bound fell from {before} to {after}")));
        }
        if after > before {
            summary.improving_steps += 1;
        }
    }
    summary.final_size = t.size();
    summary.final_bound = t.bound();
    Ok(summary)
}
