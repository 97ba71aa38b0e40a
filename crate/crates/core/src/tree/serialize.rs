//! JSON-lines tree format: one header line, then one line per node in
//! creation order.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BbNode, BbTree, BranchConstraint, Disjunction, NodeId, NodeLp, Side, TreeError};
use crate::instance::Instance;
use crate::scalar::{ExtendedValue, Scalar};

const FORMAT: &str = "bbtree-v1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    instance_hash: String,
    backend: String,
    n: usize,
    root: NodeId,
    next_id: usize,
    size: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchDoc {
    pi: BTreeMap<usize, i64>,
    pi0: i64,
    side: Side,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: NodeId,
    parent: Option<NodeId>,
    branch: Option<BranchDoc>,
    children: Option<[NodeId; 2]>,
    lp: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point: Option<Vec<String>>,
}

pub fn serialize_tree<S: Scalar>(tree: &BbTree<S>) -> String {
    let header = Header {
        format: FORMAT.into(),
        instance_hash: tree.instance.content_hash(),
        backend: S::NAME.into(),
        n: tree.instance.n(),
        root: tree.root,
        next_id: tree.next_id,
        size: tree.size(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for id in &tree.creation_log {
        let node = &tree.nodes[id];
        let doc = NodeDoc {
            id: node.id,
            parent: node.parent,
            branch: node.branch.as_ref().map(|b| BranchDoc {
                pi: b.disjunction.direction().iter().copied().collect(),
                pi0: b.disjunction.offset(),
                side: b.side,
            }),
            children: node.children,
            lp: node.lp.value.to_text(),
            point: node.lp.point.as_ref().map(|p| p.iter().map(Scalar::to_text).collect()),
        };
        out.push_str(&serde_json::to_string(&doc).expect("node serializes"));
        out.push('\n');
    }
    out
}

fn schema<E: std::fmt::Display>(line: usize) -> impl Fn(E) -> TreeError {
    move |e| TreeError::Schema(format!("line {line}: {e}"))
}

/// Reads a tree written by [`serialize_tree`] against `instance`.
pub fn deserialize_tree<S: Scalar>(text: &str, instance: Arc<Instance<S>>) -> Result<BbTree<S>, TreeError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| TreeError::Schema("empty tree file".into()))?;
    let header: Header = serde_json::from_str(first).map_err(schema(1))?;
    if header.format != FORMAT {
        return Err(TreeError::Schema(format!("unknown format `{}`", header.format)));
    }
    let found = instance.content_hash();
    if header.instance_hash != found {
        return Err(TreeError::InstanceMismatch {
            expected: header.instance_hash,
            found,
        });
    }
    if header.n != instance.n() {
        return Err(TreeError::Schema(format!(
            "header n = {} but instance has {}",
            header.n,
            instance.n()
        )));
    }
    let n = instance.n();
    let mut nodes = BTreeMap::new();
    let mut creation_log = Vec::new();
    let mut disjunctions: HashMap<NodeId, Disjunction> = HashMap::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let doc: NodeDoc = serde_json::from_str(line).map_err(schema(line_no))?;
        if doc.id.0 >= header.next_id {
            return Err(TreeError::Schema(format!("line {line_no}: id {} >= next_id", doc.id.0)));
        }
        let value = ExtendedValue::parse_text(&doc.lp)
            .ok_or_else(|| TreeError::Schema(format!("line {line_no}: bad lp value `{}`", doc.lp)))?;
        let point = match doc.point {
            Some(p) if p.len() != n => {
                return Err(TreeError::Schema(format!(
                    "line {line_no}: point has {} entries",
                    p.len()
                )))
            }
            Some(p) => Some(
                p.iter()
                    .map(|t| {
                        S::parse_text(t).ok_or_else(|| TreeError::Schema(format!("line {line_no}: bad number `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let branch = match doc.branch {
            Some(b) => {
                if let Some((i, _)) = b.pi.iter().find(|(i, _)| **i >= n) {
                    return Err(TreeError::Schema(format!("line {line_no}: variable {i} out of range")));
                }
                let disjunction = Disjunction::new(b.pi, b.pi0)?;
                disjunction.check_support(&instance.integer)?;
                disjunctions.insert(doc.id, disjunction.clone());
                Some(BranchConstraint {
                    disjunction,
                    side: b.side,
                })
            }
            None => None,
        };
        let node = BbNode {
            id: doc.id,
            parent: doc.parent,
            branch,
            children: doc.children,
            lp: NodeLp { value, point },
            depth: 0,
        };
        if nodes.insert(doc.id, node).is_some() {
            return Err(TreeError::Schema(format!("line {line_no}: duplicate id {}", doc.id.0)));
        }
        creation_log.push(doc.id);
    }
    if nodes.len() != header.size {
        return Err(TreeError::Schema(format!(
            "header size {} but {} nodes",
            header.size,
            nodes.len()
        )));
    }
    if !creation_log.windows(2).all(|w| w[0] < w[1]) {
        return Err(TreeError::Schema("nodes are not in creation order".into()));
    }
    let mut tree = BbTree::from_parts(instance, nodes, header.root, header.next_id, creation_log)?;
    for id in tree.preorder() {
        let depth = match tree.nodes[&id].parent {
            Some(p) => tree.nodes[&p].depth + 1,
            None => 0,
        };
        tree.nodes.get_mut(&id).expect("node exists").depth = depth;
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::ratio;

    #[test]
    fn round_trip_exact() {
        let fx = fixtures::box_fifth();
        let text = serialize_tree(&fx.tree);
        let back = deserialize_tree(&text, fx.tree.instance().clone()).unwrap();
        assert_eq!(back, fx.tree);
        assert_eq!(serialize_tree(&back), text);
    }

    #[test]
    fn round_trip_float() {
        let fx = fixtures::box_fifth();
        let inst: Arc<Instance<f64>> = Arc::new(fx.tree.instance().convert());
        let mut t = BbTree::new(inst.clone()).unwrap();
        let root = t.root();
        t.branch_leaf(root, Disjunction::variable(0, 0)).unwrap();
        let back = deserialize_tree(&serialize_tree(&t), inst).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn wrong_instance_rejected() {
        let fx = fixtures::box_fifth();
        let text = serialize_tree(&fx.tree);
        let mut other = (**fx.tree.instance()).clone();
        other.objective[0] = ratio(-2, 1);
        assert!(matches!(
            deserialize_tree(&text, Arc::new(other)),
            Err(TreeError::InstanceMismatch { .. })
        ));
    }

    #[test]
    fn malformed_lines_rejected() {
        let fx = fixtures::box_fifth();
        let inst = fx.tree.instance().clone();
        let text = serialize_tree(&fx.tree);
        let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(deserialize_tree(&truncated, inst.clone()).is_err());
        let garbage = text.replacen("\"lp\":", "\"lpx\":", 1);
        assert!(matches!(
            deserialize_tree(&garbage, inst.clone()),
            Err(TreeError::Schema(_))
        ));
        assert!(matches!(deserialize_tree("", inst), Err(TreeError::Schema(_))));
    }
}
