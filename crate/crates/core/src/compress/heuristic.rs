//! Heuristic compression: start from the best variable split and improve it
//! one coefficient at a time.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{compress_with, reaches, verify_disjunction, CompressionLog, DisjunctionFinder, FinderOutcome};
use crate::clock::Clock;
use crate::lp::{lp_solve, LinearSystem, LpOptions};
use crate::scalar::{ExtendedValue, Scalar};
use crate::tree::{BbTree, Disjunction, NodeId, NodeLp, Side, TreeError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    /// Improvement rounds per node; `None` means `10 n`.
    pub max_iterations: Option<usize>,
    pub global_limit: Option<Duration>,
    pub per_node_limit: Option<Duration>,
    pub coefficient_cap: i64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            max_iterations: None,
            global_limit: Some(Duration::from_secs(900)),
            per_node_limit: None,
            coefficient_cap: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicOutcome {
    pub disjunction: Option<Disjunction>,
    pub iterations: usize,
    pub timed_out: bool,
}

struct Candidate<S> {
    pi: Vec<i64>,
    pi0: i64,
    left: NodeLp<S>,
    right: NodeLp<S>,
}

impl<S: Scalar> Candidate<S> {
    fn score(&self) -> ExtendedValue<S> {
        self.left.value.clone().min(self.right.value.clone())
    }

    fn high(&self) -> ExtendedValue<S> {
        self.left.value.clone().max(self.right.value.clone())
    }

    fn disjunction(&self) -> Disjunction {
        Disjunction::from_dense(&self.pi, self.pi0).expect("nonzero direction")
    }

    /// Side with the smaller value; ties go left.
    fn weak(&self) -> &NodeLp<S> {
        if self.right.value < self.left.value {
            &self.right
        } else {
            &self.left
        }
    }
}

struct Ctx<'a, S: Scalar> {
    sys: &'a LinearSystem<S>,
    c: &'a [S],
    clock: &'a Clock,
    options: LpOptions<S>,
}

impl<S: Scalar> Ctx<'_, S> {
    fn evaluate(&self, pi: Vec<i64>, pi0: i64) -> Result<Candidate<S>, TreeError> {
        let d = Disjunction::from_dense(&pi, pi0)?;
        let solve = |side| -> Result<NodeLp<S>, TreeError> {
            Ok(NodeLp::from(&lp_solve(
                &self.sys.clone().with_row(d.row(side)),
                self.c,
                &self.options,
            )?))
        };
        let left = solve(Side::Left)?;
        let right = solve(Side::Right)?;
        self.clock.charge_lps(2);
        Ok(Candidate { pi, pi0, left, right })
    }
}

/// Integer coordinates of `x` that are fractional under `S`'s tolerance.
fn fractional_indices<S: Scalar>(x: &[S], integer: &[bool]) -> Vec<usize> {
    let tol = S::default_tolerances();
    (0..x.len())
        .filter(|&i| integer[i] && !tol.is_integral(&x[i]))
        .collect()
}

/// Searches near variable splits at the LP optimum `x_star` of `sys` for a
/// disjunction whose sides both reach `d`. A result has passed the exact
/// two-LP check.
#[allow(clippy::too_many_arguments)]
pub fn heuristic_search<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    x_star: &[S],
    d: &ExtendedValue<S>,
    config: &HeuristicConfig,
    clock: &Clock,
    deadline: Option<Duration>,
) -> Result<HeuristicOutcome, TreeError> {
    let n = sys.n;
    let ctx = Ctx {
        sys,
        c,
        clock,
        options: LpOptions::default(),
    };
    let mut outcome = HeuristicOutcome {
        disjunction: None,
        iterations: 0,
        timed_out: false,
    };
    let tol = S::default_tolerances();
    let late = || deadline.is_some_and(|dl| clock.now() >= dl);

    let mut best: Option<Candidate<S>> = None;
    for i in fractional_indices(x_star, integer) {
        let mut pi = vec![0; n];
        pi[i] = 1;
        let Some(pi0) = x_star[i].floor().floor_i64() else {
            continue;
        };
        let cand = ctx.evaluate(pi, pi0)?;
        let take = match &best {
            None => true,
            Some(b) => {
                let (s, bs) = (cand.score(), b.score());
                s > bs || (s == bs && cand.high() > b.high())
            }
        };
        if take {
            best = Some(cand);
        }
        if late() {
            outcome.timed_out = true;
            break;
        }
    }
    let Some(mut current) = best else {
        return Ok(outcome);
    };

    let max_iterations = config.max_iterations.unwrap_or(10 * n.max(1));
    while !reaches(&current.score(), d) && outcome.iterations < max_iterations && !outcome.timed_out {
        outcome.iterations += 1;
        let Some(x_bar) = current.weak().point.clone() else {
            break;
        };
        let mut improved = None;
        'neighbors: for i in fractional_indices(&x_bar, integer) {
            for step in [1i64, -1] {
                let mut pi = current.pi.clone();
                pi[i] += step;
                if pi[i].abs() > config.coefficient_cap || pi.iter().all(|v| *v == 0) {
                    continue;
                }
                let activity = pi
                    .iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (j, v)| acc + S::from_i64(*v) * x_star[j].clone());
                if tol.is_integral(&activity) {
                    continue;
                }
                let Some(pi0) = activity.floor().floor_i64() else {
                    continue;
                };
                let cand = ctx.evaluate(pi, pi0)?;
                if cand.score() > current.score() {
                    improved = Some(cand);
                    break 'neighbors;
                }
                if late() {
                    outcome.timed_out = true;
                    break 'neighbors;
                }
            }
        }
        match improved {
            Some(c) => current = c,
            None => break,
        }
    }

    if reaches(&current.score(), d) {
        let disj = current.disjunction();
        clock.charge_lps(2);
        if verify_disjunction(sys, c, d, &disj)? {
            outcome.disjunction = Some(disj);
        }
    }
    Ok(outcome)
}

/// Heuristic search at the LP optimum of `sys`.
pub fn heuristic_find_disjunction<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    d: &ExtendedValue<S>,
    config: &HeuristicConfig,
    clock: &Clock,
) -> Result<HeuristicOutcome, TreeError> {
    let res = lp_solve(sys, c, &LpOptions::default())?;
    clock.charge_lps(1);
    let Some(x) = res.point() else {
        return Ok(HeuristicOutcome {
            disjunction: None,
            iterations: 0,
            timed_out: false,
        });
    };
    let deadline = config.per_node_limit.map(|l| clock.now() + l);
    heuristic_search(sys, c, integer, x, d, config, clock, deadline)
}

pub struct HeuristicFinder {
    pub config: HeuristicConfig,
}

impl<S: Scalar> DisjunctionFinder<S> for HeuristicFinder {
    fn name(&self) -> String {
        "heuristic".into()
    }

    fn find(
        &mut self,
        tree: &BbTree<S>,
        v: NodeId,
        d: &ExtendedValue<S>,
        clock: &Clock,
    ) -> Result<FinderOutcome, TreeError> {
        let Some(x) = tree.node(v)?.lp.point.clone() else {
            return Ok(FinderOutcome::default());
        };
        let sys = tree.node_polyhedron(v)?;
        let deadline = self.config.per_node_limit.map(|l| clock.now() + l);
        let out = heuristic_search(
            &sys,
            tree.objective(),
            &tree.instance().integer,
            &x,
            d,
            &self.config,
            clock,
            deadline,
        )?;
        Ok(FinderOutcome {
            disjunction: out.disjunction,
            note: out.timed_out.then(|| "time limit".to_string()),
            timed_out: false,
        })
    }
}

pub fn heuristic_compress<S: Scalar>(
    tree: &BbTree<S>,
    config: &HeuristicConfig,
    order: Option<&[NodeId]>,
    clock: &Clock,
) -> Result<(BbTree<S>, CompressionLog), TreeError> {
    let mut finder = HeuristicFinder { config: config.clone() };
    compress_with(tree, &mut finder, order, config.global_limit, clock)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{ratio, Rational};

    fn zero() -> ExtendedValue<Rational> {
        ExtendedValue::Finite(ratio(0, 1))
    }

    #[test]
    fn small_box_reaches_sum_split() {
        let fx = fixtures::box_fifth();
        let inst = fx.tree.instance();
        let out = heuristic_find_disjunction(
            &inst.system,
            &inst.objective,
            &inst.integer,
            &zero(),
            &HeuristicConfig::default(),
            &Clock::wall(),
        )
        .unwrap();
        assert_eq!(out.disjunction, Some(fx.root_replacement.clone()));
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn half_box_fails() {
        let fx = fixtures::box_half();
        let inst = fx.tree.instance();
        let out = heuristic_find_disjunction(
            &inst.system,
            &inst.objective,
            &inst.integer,
            &zero(),
            &HeuristicConfig::default(),
            &Clock::wall(),
        )
        .unwrap();
        assert!(out.disjunction.is_none());
    }

    #[test]
    fn integral_optimum_gives_nothing() {
        let sys = LinearSystem::boxed(2, ratio(0, 1), ratio(1, 1));
        let c = vec![ratio(-1, 1), ratio(-1, 1)];
        let out = heuristic_find_disjunction(
            &sys,
            &c,
            &[true, true],
            &ExtendedValue::Finite(ratio(5, 1)),
            &HeuristicConfig::default(),
            &Clock::wall(),
        )
        .unwrap();
        assert!(out.disjunction.is_none());
    }

    #[test]
    fn compresses_seven_node_tree_to_three() {
        let fx = fixtures::box_fifth();
        let (t, log) =
            heuristic_compress(&fx.tree, &HeuristicConfig::default(), None, &Clock::virtual_clock()).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.bound(), zero());
        assert_eq!(log.summary.method, "heuristic");
    }
}
