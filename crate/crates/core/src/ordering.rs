//! Replaying compression under different node orderings from precomputed
//! per-node outcomes, and the metrics used to compare orderings.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clock::Clock;
use crate::compress::{reaches, DisjunctionFinder};
use crate::scalar::{ExtendedValue, Scalar};
use crate::tree::{BbTree, Disjunction, NodeId, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("no record for node {0}")]
    MissingRecord(NodeId),
    #[error("horizon must be finite and positive")]
    ZeroHorizon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RecordAction {
    Drop,
    Replace { disjunction: Disjunction },
    None,
}

/// Outcome of processing one internal node against the original tree bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub node: NodeId,
    pub compressible: bool,
    pub action: RecordAction,
    pub time_s: f64,
    pub subtree: usize,
    pub bound: String,
    /// `|d(T, c) - bound|`; `None` when either side is infinite.
    pub gap: Option<f64>,
}

/// Records for every internal node carrying only the tree-derived fields:
/// nothing is compressible and all times are zero.
pub fn structural_records<S: Scalar>(tree: &BbTree<S>) -> Vec<NodeRecord> {
    let d = tree.bound();
    tree.preorder()
        .into_iter()
        .filter_map(|v| {
            let node = tree.node(v).ok()?;
            if node.is_leaf() {
                return None;
            }
            let gap = match (&d, &node.lp.value) {
                (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => Some((a.to_f64() - b.to_f64()).abs()),
                _ => None,
            };
            Some(NodeRecord {
                node: v,
                compressible: false,
                action: RecordAction::None,
                time_s: 0.0,
                subtree: tree.subtree_size(v).ok()?,
                bound: node.lp.value.to_text(),
                gap,
            })
        })
        .collect()
}

/// Runs `finder` on every internal node of `tree` against the original bound.
/// A node whose processing exceeds `per_node_limit` is recorded as
/// incompressible with the limit as its time.
pub fn precompute_records<S: Scalar>(
    tree: &BbTree<S>,
    finder: &mut dyn DisjunctionFinder<S>,
    per_node_limit: Option<Duration>,
    clock: &Clock,
) -> Result<Vec<NodeRecord>, TreeError> {
    let d = tree.bound();
    let mut out = Vec::new();
    for mut record in structural_records(tree) {
        let v = record.node;
        let node = tree.node(v)?;
        let subtree = record.subtree;
        if per_node_limit == Some(Duration::ZERO) {
            out.push(record);
            continue;
        }
        let t0 = clock.now();
        if reaches(&node.lp.value, &d) {
            record.action = RecordAction::Drop;
        } else if subtree > 3 && finder.replaces() && d != ExtendedValue::NegInf {
            if let Some(disj) = finder.find(tree, v, &d, clock)?.disjunction {
                record.action = RecordAction::Replace { disjunction: disj };
            }
        }
        let spent = clock.now() - t0;
        match per_node_limit {
            Some(lim) if spent > lim => {
                record.action = RecordAction::None;
                record.time_s = lim.as_secs_f64();
            }
            _ => record.time_s = spent.as_secs_f64(),
        }
        record.compressible = record.action != RecordAction::None;
        out.push(record);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering {
    Random(u64),
    Dfs,
    NodeId,
    SubtreeSize,
    Gap,
    Expert,
}

impl Ordering {
    pub fn all(seed: u64) -> [Ordering; 6] {
        [
            Ordering::Random(seed),
            Ordering::Dfs,
            Ordering::NodeId,
            Ordering::SubtreeSize,
            Ordering::Gap,
            Ordering::Expert,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ordering::Random(_) => "Random",
            Ordering::Dfs => "DFS",
            Ordering::NodeId => "NodeId",
            Ordering::SubtreeSize => "SubtreeSize",
            Ordering::Gap => "Gap",
            Ordering::Expert => "Expert",
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if let Some(seed) = lower.strip_prefix("random:") {
            return seed
                .parse()
                .map(Ordering::Random)
                .map_err(|_| format!("bad seed in `{s}`"));
        }
        match lower.as_str() {
            "random" => Ok(Ordering::Random(0)),
            "dfs" => Ok(Ordering::Dfs),
            "nodeid" => Ok(Ordering::NodeId),
            "subtreesize" => Ok(Ordering::SubtreeSize),
            "gap" => Ok(Ordering::Gap),
            "expert" => Ok(Ordering::Expert),
            _ => Err(format!("unknown ordering `{s}`")),
        }
    }
}

fn gap_key(r: &NodeRecord) -> f64 {
    r.gap.unwrap_or(f64::INFINITY)
}

/// `subtree / time`, with zero time ranking above everything.
fn expert_ratio(r: &NodeRecord) -> f64 {
    if r.time_s <= 0.0 {
        f64::INFINITY
    } else {
        r.subtree as f64 / r.time_s
    }
}

/// Permutation of the internal nodes of `tree` under `ordering`.
pub fn order_nodes<S: Scalar>(
    records: &[NodeRecord],
    tree: &BbTree<S>,
    ordering: Ordering,
) -> Result<Vec<NodeId>, SimError> {
    let by_id: HashMap<NodeId, &NodeRecord> = records.iter().map(|r| (r.node, r)).collect();
    let dfs: Vec<NodeId> = tree
        .preorder()
        .into_iter()
        .filter(|v| tree.node(*v).map(|n| !n.is_leaf()).unwrap_or(false))
        .collect();
    let mut recs = Vec::with_capacity(dfs.len());
    for v in &dfs {
        recs.push(*by_id.get(v).ok_or(SimError::MissingRecord(*v))?);
    }
    let mut ids: Vec<NodeId> = match ordering {
        Ordering::Dfs => return Ok(dfs),
        Ordering::Random(seed) => {
            let mut v = dfs;
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            return Ok(v);
        }
        _ => recs.iter().map(|r| r.node).collect(),
    };
    let key: HashMap<NodeId, &NodeRecord> = recs.iter().map(|r| (r.node, *r)).collect();
    match ordering {
        Ordering::NodeId => ids.sort_by(|a, b| b.cmp(a)),
        Ordering::SubtreeSize => ids.sort_by(|a, b| key[a].subtree.cmp(&key[b].subtree).then(a.cmp(b))),
        Ordering::Gap => ids.sort_by(|a, b| gap_key(key[a]).total_cmp(&gap_key(key[b])).then(a.cmp(b))),
        Ordering::Expert => ids.sort_by(|a, b| {
            let (ra, rb) = (key[a], key[b]);
            rb.compressible
                .cmp(&ra.compressible)
                .then(expert_ratio(rb).total_cmp(&expert_ratio(ra)))
                .then(a.cmp(b))
        }),
        Ordering::Dfs | Ordering::Random(_) => unreachable!(),
    }
    Ok(ids)
}

/// Tree sizes over time: `steps[i] = (t_i, s_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub s0: usize,
    pub horizon: f64,
    pub steps: Vec<(f64, usize)>,
}

impl Trajectory {
    pub fn final_size(&self) -> usize {
        self.steps.last().map_or(self.s0, |s| s.1)
    }

    pub fn nodes_processed(&self) -> usize {
        self.steps.len()
    }

    pub fn elapsed(&self) -> f64 {
        self.steps.iter().map(|s| s.0).sum()
    }
}

/// Children of each node, tracked while the simulation edits the tree.
struct SimTree {
    children: HashMap<NodeId, [NodeId; 2]>,
    removed: HashSet<NodeId>,
    next_fresh: usize,
}

impl SimTree {
    fn subtree(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = vec![];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            if let Some(c) = self.children.get(&u) {
                stack.extend(c);
            }
        }
        out
    }

    fn cut(&mut self, v: NodeId) -> usize {
        let sub = self.subtree(v);
        for u in &sub[1..] {
            self.removed.insert(*u);
            self.children.remove(u);
        }
        self.children.remove(&v);
        sub.len() - 1
    }
}

/// Processes `order` until the next node would overrun `horizon` seconds.
/// Nodes removed by earlier steps cost nothing and are not counted.
pub fn simulate<S: Scalar>(tree: &BbTree<S>, records: &[NodeRecord], order: &[NodeId], horizon: f64) -> Trajectory {
    let by_id: BTreeMap<NodeId, &NodeRecord> = records.iter().map(|r| (r.node, r)).collect();
    let mut sim = SimTree {
        children: tree.nodes().filter_map(|n| n.children.map(|c| (n.id, c))).collect(),
        removed: HashSet::new(),
        next_fresh: tree.next_id(),
    };
    let mut size = tree.size();
    let mut elapsed = 0.0;
    let mut steps = Vec::new();
    for v in order {
        if sim.removed.contains(v) || !sim.children.contains_key(v) {
            continue;
        }
        let Some(rec) = by_id.get(v) else { continue };
        if elapsed + rec.time_s > horizon {
            break;
        }
        elapsed += rec.time_s;
        match &rec.action {
            RecordAction::Drop => size -= sim.cut(*v),
            RecordAction::Replace { .. } => {
                let current = sim.subtree(*v).len();
                if current > 3 {
                    size = size - sim.cut(*v) + 2;
                    let l = NodeId(sim.next_fresh);
                    let r = NodeId(sim.next_fresh + 1);
                    sim.next_fresh += 2;
                    sim.children.insert(*v, [l, r]);
                }
            }
            RecordAction::None => {}
        }
        steps.push((rec.time_s, size));
    }
    Trajectory {
        s0: tree.size(),
        horizon,
        steps,
    }
}

/// `100 * sum t_i s_{i-1} / (T s_0)`. With `terminal`, the time left after
/// the last processed node is charged at the final size.
pub fn auc(trajectory: &Trajectory, terminal: bool) -> Result<f64, SimError> {
    let t = trajectory.horizon;
    if !(t.is_finite() && t > 0.0) || trajectory.s0 == 0 {
        return Err(SimError::ZeroHorizon);
    }
    let mut prev = trajectory.s0 as f64;
    let mut area = 0.0;
    for (ti, si) in &trajectory.steps {
        area += ti * prev;
        prev = *si as f64;
    }
    if terminal {
        area += (t - trajectory.elapsed()).max(0.0) * prev;
    }
    Ok((100.0 * area / (t * trajectory.s0 as f64)).clamp(0.0, 100.0))
}
