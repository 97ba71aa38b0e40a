//! Exact compression: search for a replacing disjunction by solving a MIP
//! over split multipliers with the crate's own branch and bound.
//!
//! For `Q = {x : A x <= b}` (finite variable bounds included as rows) the
//! model has integer `pi`, `pi0` and continuous `p, q, s_L, s_R >= 0`, `delta <= 1`:
//!
//! ```text
//! A^T p + pi + s_L c = 0      -b.p - pi0     - d s_L >= 0,  (-b.p - pi0     - d s_L) + s_L >= delta
//! A^T q - pi + s_R c = 0      -b.q + pi0 + 1 - d s_R >= 0,  (-b.q + pi0 + 1 - d s_R) + s_R >= delta
//! ```
//!
//! With `delta > 0` each side either has `c.x >= d` (when its `s > 0`) or is
//! empty (when `s = 0`). For `d = +inf` both `s` are fixed to zero.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{compress_with, verify_disjunction, CompressionLog, DisjunctionFinder, FinderOutcome};
use crate::branching::{generate_tree_with, BranchingConfig, BranchingError, IntegralAction, SearchObserver};
use crate::clock::Clock;
use crate::instance::Instance;
use crate::lp::{lp_solve, LinearSystem, LpOptions, Row};
use crate::scalar::{ExtendedValue, Scalar};
use crate::tree::{BbTree, Disjunction, NodeId, Side, TreeError};

/// Which replacements are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportMode {
    DropOnly,
    /// At most `s` nonzero coefficients in `pi`.
    Supp(usize),
    SuppInf,
}

impl FromStr for SupportMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        match s.as_str() {
            "drop" | "drop-only" | "droponly" => Ok(SupportMode::DropOnly),
            "supp:inf" | "inf" => Ok(SupportMode::SuppInf),
            other => {
                let k = other.strip_prefix("supp:").unwrap_or(other);
                match k.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(SupportMode::Supp(k)),
                    _ => Err(format!("unknown support mode `{other}`")),
                }
            }
        }
    }
}

impl std::fmt::Display for SupportMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SupportMode::DropOnly => write!(f, "drop"),
            SupportMode::Supp(k) => write!(f, "supp:{k}"),
            SupportMode::SuppInf => write!(f, "supp:inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressMode {
    pub support: SupportMode,
    /// `|pi_i| <= coefficient_bound`.
    pub coefficient_bound: i64,
    pub per_node_limit: Option<Duration>,
    pub global_limit: Option<Duration>,
    /// Smallest `delta` accepted by the float backend; the exact backend
    /// accepts any positive `delta`.
    pub delta_accept: f64,
    pub node_limit: usize,
}

impl Default for CompressMode {
    fn default() -> Self {
        CompressMode {
            support: SupportMode::SuppInf,
            coefficient_bound: 100,
            per_node_limit: Some(Duration::from_secs(20 * 60)),
            global_limit: Some(Duration::from_secs(24 * 3600)),
            delta_accept: 1e-4,
            node_limit: 50_000,
        }
    }
}

impl CompressMode {
    pub fn new(support: SupportMode) -> Self {
        CompressMode {
            support,
            ..Self::default()
        }
    }

    pub fn with_coefficient_bound(mut self, m: i64) -> Self {
        self.coefficient_bound = m;
        self
    }
}

/// The disjunction MIP for one node, with its variable layout.
#[derive(Debug, Clone)]
pub struct MrModel<S> {
    pub instance: Instance<S>,
    pub n: usize,
    pub rows: usize,
    pub pi0: usize,
    pub delta: usize,
}

impl<S: Scalar> MrModel<S> {
    pub fn pi(&self, j: usize) -> usize {
        j
    }

    /// Disjunction encoded by a model point, if `pi != 0`.
    pub fn extract(&self, point: &[S]) -> Option<Disjunction> {
        let round = |v: &S| -> Option<i64> {
            let r = (v.clone() + S::from_rational(&crate::scalar::ratio(1, 2))).floor();
            r.floor_i64()
        };
        let pi: Vec<(usize, i64)> = (0..self.n)
            .map(|j| round(&point[j]).map(|v| (j, v)))
            .collect::<Option<_>>()?;
        let pi0 = round(&point[self.pi0])?;
        Disjunction::new(pi, pi0).ok()
    }
}

/// `[lo, hi]` for `pi0`: `M * sum_i max|x_i|` over `Q`, widened by one, or
/// `None` when some integer variable is unbounded over `Q`.
fn pi0_range<S: Scalar>(
    sys: &LinearSystem<S>,
    integer: &[bool],
    m: i64,
    clock: &Clock,
) -> Result<Option<(i64, i64)>, TreeError> {
    let mut total = 0f64;
    for (j, _) in integer.iter().enumerate().filter(|(_, b)| **b) {
        let mut widest = 0f64;
        for sign in [1i64, -1] {
            let mut e = vec![S::zero(); sys.n];
            e[j] = S::from_i64(sign);
            let res = lp_solve(sys, &e, &LpOptions::default())?;
            clock.charge_lps(1);
            match res.value() {
                ExtendedValue::Finite(v) => widest = widest.max(v.to_f64().abs()),
                ExtendedValue::NegInf => return Ok(None),
                ExtendedValue::PosInf => {}
            }
        }
        total += widest;
    }
    let r = (m as f64 * total).ceil() + 1.0;
    if !r.is_finite() || r > 1e15 {
        return Ok(None);
    }
    Ok(Some((-(r as i64), r as i64)))
}

/// Builds the MIP for `Q = sys`, objective `c`, target bound `d`.
pub fn build_mr_model<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    d: &ExtendedValue<S>,
    support: SupportMode,
    m: i64,
    pi0_bounds: Option<(i64, i64)>,
) -> MrModel<S> {
    let n = sys.n;
    let rows = sys.rows_with_bounds();
    let mr = rows.len();
    let pi0 = n;
    let p0 = n + 1;
    let q0 = p0 + mr;
    let sl = q0 + mr;
    let sr = sl + 1;
    let delta = sr + 1;
    let z0 = delta + 1;
    let restricted = matches!(support, SupportMode::Supp(_));
    let nv = if restricted { z0 + n } else { z0 };
    let finite_d = match d {
        ExtendedValue::Finite(v) => Some(v.clone()),
        _ => None,
    };

    let mut columns: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            columns[*j].push((r, a.clone()));
        }
    }
    let one = S::one();
    let mut out = LinearSystem::free(nv);
    let equality = |coeffs: Vec<(usize, S)>, rhs: S, out: &mut LinearSystem<S>| {
        let row = Row::new(coeffs, rhs);
        out.push_row(row.negated());
        out.push_row(row);
    };
    for j in 0..n {
        for (base, sign, s) in [(p0, S::one(), sl), (q0, -S::one(), sr)] {
            let mut coeffs: Vec<(usize, S)> = columns[j].iter().map(|(r, a)| (base + r, a.clone())).collect();
            coeffs.push((j, sign));
            if finite_d.is_some() {
                coeffs.push((s, c[j].clone()));
            }
            equality(coeffs, S::zero(), &mut out);
        }
    }
    for (base, pi0_sign, rhs, s) in [(p0, S::one(), S::zero(), sl), (q0, -S::one(), S::one(), sr)] {
        let mut coeffs: Vec<(usize, S)> = rows
            .iter()
            .enumerate()
            .map(|(r, row)| (base + r, row.rhs.clone()))
            .collect();
        coeffs.push((pi0, pi0_sign));
        if let Some(dv) = &finite_d {
            coeffs.push((s, dv.clone()));
        }
        out.push_row(Row::new(coeffs.clone(), rhs.clone()));
        coeffs.push((delta, one.clone()));
        if finite_d.is_some() {
            coeffs.push((s, -one.clone()));
        }
        out.push_row(Row::new(coeffs, rhs));
    }
    let mb = S::from_i64(m);
    if let SupportMode::Supp(k) = support {
        for j in 0..n {
            out.push_row(Row::new([(j, one.clone()), (z0 + j, -mb.clone())], S::zero()));
            out.push_row(Row::new([(j, -one.clone()), (z0 + j, -mb.clone())], S::zero()));
        }
        out.push_row(Row::new((0..n).map(|j| (z0 + j, one.clone())), S::from_i64(k as i64)));
    }

    let fin = ExtendedValue::Finite;
    let mut int_mask = vec![false; nv];
    for j in 0..n {
        if integer[j] {
            out.lower[j] = fin(-mb.clone());
            out.upper[j] = fin(mb.clone());
            int_mask[j] = true;
        } else {
            out.lower[j] = fin(S::zero());
            out.upper[j] = fin(S::zero());
        }
    }
    int_mask[pi0] = true;
    if let Some((lo, hi)) = pi0_bounds {
        out.lower[pi0] = fin(S::from_i64(lo));
        out.upper[pi0] = fin(S::from_i64(hi));
    }
    for v in p0..delta {
        out.lower[v] = fin(S::zero());
    }
    if finite_d.is_none() {
        out.upper[sl] = fin(S::zero());
        out.upper[sr] = fin(S::zero());
    }
    out.lower[delta] = fin(-one.clone());
    out.upper[delta] = fin(one.clone());
    if restricted {
        for j in 0..n {
            out.lower[z0 + j] = fin(S::zero());
            out.upper[z0 + j] = fin(if integer[j] { one.clone() } else { S::zero() });
            int_mask[z0 + j] = integer[j];
        }
    }
    let mut objective = vec![S::zero(); nv];
    objective[delta] = -one;
    MrModel {
        instance: Instance::new("disjunction", objective, out, int_mask),
        n,
        rows: mr,
        pi0,
        delta,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MrOutcome<S> {
    pub found: Option<(Disjunction, S)>,
    pub timed_out: bool,
    pub verification_failures: usize,
    pub nodes: usize,
}

struct MrObserver<'a, S: Scalar> {
    model: &'a MrModel<S>,
    sys: &'a LinearSystem<S>,
    c: &'a [S],
    d: &'a ExtendedValue<S>,
    accept: S,
    clock: &'a Clock,
    deadline: Option<Duration>,
    found: Option<(Disjunction, S)>,
    failures: usize,
    timed_out: bool,
}

impl<S: Scalar> MrObserver<'_, S> {
    /// `delta` at this LP value is too small to accept.
    fn too_small(&self, value: &ExtendedValue<S>) -> bool {
        match value {
            ExtendedValue::Finite(v) => {
                let delta = -v.clone();
                if S::EXACT {
                    delta <= S::zero()
                } else {
                    delta < self.accept
                }
            }
            ExtendedValue::PosInf => true,
            ExtendedValue::NegInf => false,
        }
    }
}

impl<S: Scalar> SearchObserver<S> for MrObserver<'_, S> {
    fn prune(&mut self, tree: &BbTree<S>, node: NodeId) -> bool {
        tree.lp_value(node).map(|v| self.too_small(v)).unwrap_or(true)
    }

    fn integral(&mut self, _: &BbTree<S>, _: NodeId, point: &[S]) -> IntegralAction {
        let Some(disj) = self.model.extract(point) else {
            return IntegralAction::Reject;
        };
        self.clock.charge_lps(2);
        match verify_disjunction(self.sys, self.c, self.d, &disj) {
            Ok(true) => {
                self.found = Some((disj, point[self.model.delta].clone()));
                IntegralAction::Stop
            }
            _ => {
                self.failures += 1;
                IntegralAction::Reject
            }
        }
    }

    fn stop(&mut self) -> bool {
        if self.deadline.is_some_and(|d| self.clock.now() >= d) {
            self.timed_out = true;
        }
        self.timed_out
    }
}

/// Support-one search. A split `k x_j <= t` or `k x_j >= t + 1` that works
/// implies `x_j <= floor(t / k)` or `x_j >= floor(t / k) + 1` works, so only
/// unit directions are tried. The left side's value falls as `t` grows and
/// the right side's rises, so the largest `t` whose left side reaches `d` is
/// the only candidate for each variable.
fn variable_split_search<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    d: &ExtendedValue<S>,
    clock: &Clock,
    deadline: Option<Duration>,
) -> Result<MrOutcome<S>, TreeError> {
    let mut out = MrOutcome {
        found: None,
        timed_out: false,
        verification_failures: 0,
        nodes: 0,
    };
    let opts = LpOptions::default();
    let tol = S::default_tolerances();
    let reaches = |v: &ExtendedValue<S>| match (v, d) {
        (_, ExtendedValue::NegInf) | (ExtendedValue::PosInf, _) => true,
        (_, ExtendedValue::PosInf) | (ExtendedValue::NegInf, _) => false,
        (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => tol.obj_ge(a, b),
    };
    let root = lp_solve(sys, c, &opts)?;
    clock.charge_lps(1);
    let Some(x_star) = root.point().map(<[S]>::to_vec) else {
        // Infeasible `Q`: any split has two empty sides.
        if let Some(j) = integer.iter().position(|b| *b) {
            out.found = Some((Disjunction::variable(j, 0), S::one()));
        }
        return Ok(out);
    };
    for j in (0..sys.n).filter(|&j| integer[j]) {
        let mut side_lps = 0u64;
        let mut solve = |t: i64, side: Side| -> Result<bool, TreeError> {
            let row = Disjunction::variable(j, t).row(side);
            side_lps += 1;
            Ok(reaches(&lp_solve(&sys.clone().with_row(row), c, &opts)?.value()))
        };
        // `left(hi)` fails: `x*` lies on the left side.
        let Some(hi) = x_star[j].ceil().floor_i64() else {
            continue;
        };
        if solve(hi, Side::Left)? {
            let disj = Disjunction::variable(j, x_star[j].floor().floor_i64().unwrap_or(hi));
            clock.charge_lps(side_lps + 2);
            if verify_disjunction(sys, c, d, &disj)? {
                out.found = Some((disj, S::one()));
                return Ok(out);
            }
            continue;
        }
        let mut lo = hi;
        let mut step = 1i64;
        let mut bracketed = false;
        while step < (1 << 40) {
            lo = hi - step;
            if solve(lo, Side::Left)? {
                bracketed = true;
                break;
            }
            step *= 2;
        }
        if !bracketed {
            clock.charge_lps(side_lps);
            continue;
        }
        // left(lo) holds, left(hi) fails.
        let (mut a, mut b) = (lo, hi);
        while b - a > 1 {
            let mid = a + (b - a) / 2;
            if solve(mid, Side::Left)? {
                a = mid;
            } else {
                b = mid;
            }
        }
        let right = solve(a, Side::Right)?;
        clock.charge_lps(side_lps);
        out.nodes += 1;
        if right {
            let disj = Disjunction::variable(j, a);
            clock.charge_lps(2);
            if verify_disjunction(sys, c, d, &disj)? {
                out.found = Some((disj, S::one()));
                return Ok(out);
            }
            out.verification_failures += 1;
        }
        if deadline.is_some_and(|dl| clock.now() >= dl) {
            out.timed_out = true;
            break;
        }
    }
    Ok(out)
}

/// Searches for `(pi, pi0)` whose two sides over `sys` both reach `d`.
/// Returned disjunctions have passed the exact two-LP check.
pub fn solve_mr<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    d: &ExtendedValue<S>,
    mode: &CompressMode,
    clock: &Clock,
) -> Result<MrOutcome<S>, TreeError> {
    let none = MrOutcome {
        found: None,
        timed_out: false,
        verification_failures: 0,
        nodes: 0,
    };
    if mode.support == SupportMode::DropOnly || *d == ExtendedValue::NegInf || !integer.iter().any(|b| *b) {
        return Ok(none);
    }
    let deadline = mode.per_node_limit.map(|l| clock.now() + l);
    if mode.support == SupportMode::Supp(1) && mode.coefficient_bound >= 1 {
        return variable_split_search(sys, c, integer, d, clock, deadline);
    }
    solve_mr_model(sys, c, integer, d, mode, clock, deadline)
}

fn solve_mr_model<S: Scalar>(
    sys: &LinearSystem<S>,
    c: &[S],
    integer: &[bool],
    d: &ExtendedValue<S>,
    mode: &CompressMode,
    clock: &Clock,
    deadline: Option<Duration>,
) -> Result<MrOutcome<S>, TreeError> {
    let range = pi0_range(sys, integer, mode.coefficient_bound, clock)?;
    let model = build_mr_model(sys, c, integer, d, mode.support, mode.coefficient_bound, range);
    let mut observer = MrObserver {
        model: &model,
        sys,
        c,
        d,
        accept: S::from_rational(&mode.delta_accept.to_rational()),
        clock,
        deadline,
        found: None,
        failures: 0,
        timed_out: false,
    };
    let mut config = BranchingConfig::rb().with_node_limit(mode.node_limit);
    config.prune_uses_incumbent = false;
    let result = generate_tree_with(
        Arc::new(model.instance.clone()),
        &config,
        0,
        LpOptions::default(),
        clock,
        &mut observer,
    );
    let nodes = match result {
        Ok((tree, _)) => tree.size(),
        Err(BranchingError::Tree(e)) => return Err(e),
        Err(e) => return Err(TreeError::Malformed(e.to_string())),
    };
    Ok(MrOutcome {
        found: observer.found,
        timed_out: observer.timed_out,
        verification_failures: observer.failures,
        nodes,
    })
}

/// Finder backed by [`solve_mr`].
pub struct MrFinder {
    pub mode: CompressMode,
}

impl<S: Scalar> DisjunctionFinder<S> for MrFinder {
    fn name(&self) -> String {
        format!("exact-{}", self.mode.support)
    }

    fn replaces(&self) -> bool {
        self.mode.support != SupportMode::DropOnly
    }

    fn find(
        &mut self,
        tree: &BbTree<S>,
        v: NodeId,
        d: &ExtendedValue<S>,
        clock: &Clock,
    ) -> Result<FinderOutcome, TreeError> {
        let sys = tree.node_polyhedron(v)?;
        let out = solve_mr(&sys, tree.objective(), &tree.instance().integer, d, &self.mode, clock)?;
        let note = match (&out.found, out.timed_out, out.verification_failures) {
            (None, true, _) => Some("time limit".to_string()),
            (_, _, k) if k > 0 => Some(format!("{k} candidates failed verification")),
            _ => None,
        };
        Ok(FinderOutcome {
            disjunction: out.found.map(|(disj, _)| disj),
            note,
            timed_out: out.timed_out,
        })
    }
}

/// Exact compression in the given mode.
pub fn exact_compress<S: Scalar>(
    tree: &BbTree<S>,
    mode: &CompressMode,
    order: Option<&[NodeId]>,
    clock: &Clock,
) -> Result<(BbTree<S>, CompressionLog), TreeError> {
    let mut finder = MrFinder { mode: mode.clone() };
    compress_with(tree, &mut finder, order, mode.global_limit, clock)
}
